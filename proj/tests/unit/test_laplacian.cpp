#include <gtest/gtest.h>

#include "specsbm/error.hpp"
#include "specsbm/laplacian.hpp"

using namespace specsbm;

namespace {

AdjacencyMatrix single_edge() {
  Matrix a(2, 2);
  a << 0, 1, 1, 0;
  return AdjacencyMatrix(a);
}

AdjacencyMatrix random_graph(Index n, double p, std::uint64_t stream) {
  return sample_adjacency(SymMatrix(Matrix::Constant(n, n, p)), RngSeed{77, stream});
}

}  // namespace

TEST(Degrees, SmallGraphs) {
  const auto d = degrees(single_edge());
  EXPECT_EQ(d.d_hat, Eigen::Vector2d(1, 1));
  EXPECT_EQ(d.mean, 1.0);
  const auto empty = degrees(AdjacencyMatrix(Matrix::Zero(4, 4)));
  EXPECT_EQ(empty.max, 0.0);
  Matrix k5 = Matrix::Ones(5, 5);
  k5.diagonal().setZero();
  const auto full = degrees(AdjacencyMatrix(k5));
  EXPECT_EQ(full.min, 4.0);
  EXPECT_EQ(full.max, 4.0);
}

TEST(BuildLaplacian, PlainSingleEdge) {
  const SymMatrix l = build_laplacian(single_edge(), Variant::kPlain, 0.0);
  EXPECT_EQ(l.matrix(), single_edge().matrix());
}

TEST(BuildLaplacian, TauHandExample) {
  const SymMatrix l = build_laplacian(single_edge(), Variant::kTau, 2.0);
  Matrix expected(2, 2);
  expected << 1.0 / 3, 2.0 / 3, 2.0 / 3, 1.0 / 3;
  EXPECT_LE((l.matrix() - expected).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(BuildLaplacian, TauPrimeEmptyGraph) {
  const SymMatrix l = build_laplacian(AdjacencyMatrix(Matrix::Zero(2, 2)), Variant::kTauPrime, 1.0);
  EXPECT_EQ(l.matrix(), Matrix::Zero(2, 2));
}

TEST(BuildLaplacian, DoublePrimeWithUnitThetaIsTau) {
  const auto a = random_graph(30, 0.2, 1);
  const SymMatrix x = build_laplacian(a, Variant::kTauDoublePrime, 3.0, Vector::Ones(30));
  const SymMatrix y = build_laplacian(a, Variant::kTau, 3.0);
  EXPECT_EQ(x.matrix(), y.matrix());
}

TEST(BuildLaplacian, Errors) {
  Matrix m = Matrix::Zero(3, 3);
  m(0, 1) = m(1, 0) = 1.0;
  const AdjacencyMatrix a(m);
  auto code = [](auto f) {
    try {
      f();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kIo;
  };
  EXPECT_EQ(code([&] { build_laplacian(a, Variant::kPlain, 0.0); }), ErrorCode::kSingularDegree);
  EXPECT_EQ(code([&] { build_laplacian(a, Variant::kTauPrime, 0.0); }), ErrorCode::kSingularDegree);
  EXPECT_EQ(code([&] { build_laplacian(a, Variant::kTauDoublePrime, 1.0); }), ErrorCode::kMissingTheta);
  EXPECT_NO_THROW(build_laplacian(a, Variant::kTau, 0.5));
}

TEST(BuildLaplacian, TauZeroEqualsPlain) {
  Matrix m = Matrix::Ones(6, 6);
  m.diagonal().setZero();
  m(0, 1) = m(1, 0) = 0.0;
  const AdjacencyMatrix a(m);
  const SymMatrix x = build_laplacian(a, Variant::kTau, 0.0);
  const SymMatrix y = build_laplacian(a, Variant::kPlain, 0.0);
  EXPECT_LE((x.matrix() - y.matrix()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(BuildLaplacian, SpectralBoundAndExactSymmetry) {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto a = random_graph(40, 0.1, s);
    Vector theta = Vector::Ones(40);
    for (Index i = 0; i < 40; ++i) theta[i] = 0.5 + (i % 3) * 0.5;
    const double taus[] = {0.0, 0.5, 4.0};
    for (double tau : taus) {
      for (Variant v : {Variant::kPlain, Variant::kTau, Variant::kTauPrime, Variant::kTauDoublePrime}) {
        const bool needs_positive = v == Variant::kPlain || tau == 0.0;
        if (needs_positive && degrees(a).min == 0.0) continue;
        const SymMatrix l = build_laplacian(a, v, tau, theta);
        EXPECT_LE(spectral_norm(l), 1.0 + 1e-10);
        EXPECT_EQ((l.matrix() - l.matrix().transpose()).cwiseAbs().maxCoeff(), 0.0);
      }
    }
  }
}
