#include "specsbm/laplacian.hpp"

#include <cmath>

#include "specsbm/error.hpp"

namespace specsbm {

DegreeVector degrees(const AdjacencyMatrix& a) {
  DegreeVector out;
  out.d_hat = a.matrix().rowwise().sum();
  if (a.size() > 0) {
    out.min = out.d_hat.minCoeff();
    out.max = out.d_hat.maxCoeff();
    out.mean = out.d_hat.mean();
  }
  return out;
}

namespace {

Vector inverse_roots(const Vector& denom, bool allow_zero_rows) {
  Vector s(denom.size());
  for (Index i = 0; i < denom.size(); ++i) {
    if (denom[i] > 0.0) {
      s[i] = 1.0 / std::sqrt(denom[i]);
    } else if (allow_zero_rows && denom[i] == 0.0) {
      s[i] = 0.0;
    } else {
      throw Error(ErrorCode::kSingularDegree, "node " + std::to_string(i) + " has zero degree");
    }
  }
  return s;
}

SymMatrix scale(const Matrix& m, const Vector& s) {
  const Index n = m.rows();
  Matrix l(n, n);
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < n; ++i) l(i, j) = m(i, j) * (s[i] * s[j]);
  }
  return SymMatrix(std::move(l));
}

}  // namespace

SymMatrix build_laplacian(const AdjacencyMatrix& a, Variant variant, double tau,
                          const std::optional<Vector>& theta_hat) {
  if (!(tau >= 0.0) || !std::isfinite(tau)) throw Error(ErrorCode::kInvalidArgument, "tau must be >= 0");
  const Index n = a.size();
  const double nn = static_cast<double>(n);
  switch (variant) {
    case Variant::kPlain:
      return scale(a.matrix(), inverse_roots(a.matrix().rowwise().sum(), false));
    case Variant::kTau: {
      const Matrix reg = a.matrix().array() + tau / nn;
      return scale(reg, inverse_roots(reg.rowwise().sum(), false));
    }
    case Variant::kTauPrime: {
      Vector denom = a.matrix().rowwise().sum();
      denom.array() += tau;
      return scale(a.matrix(), inverse_roots(denom, false));
    }
    case Variant::kTauDoublePrime: {
      if (!theta_hat) throw Error(ErrorCode::kMissingTheta, "tau-dprime Laplacian needs theta_hat");
      const Vector& th = *theta_hat;
      if (th.size() != n) throw Error(ErrorCode::kLengthMismatch, "theta_hat length differs from n");
      if (!th.allFinite() || (n > 0 && th.minCoeff() < 0.0)) {
        throw Error(ErrorCode::kInvalidArgument, "theta_hat entries must be finite and >= 0");
      }
      Matrix reg(n, n);
      const double w = tau / nn;
      for (Index j = 0; j < n; ++j) {
        for (Index i = 0; i < n; ++i) reg(i, j) = a(i, j) + w * (th[i] * th[j]);
      }
      return scale(reg, inverse_roots(reg.rowwise().sum(), true));
    }
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown variant");
}

}  // namespace specsbm
