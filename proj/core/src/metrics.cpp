#include "specsbm/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "specsbm/error.hpp"

namespace specsbm {

namespace {

constexpr int kBruteForceMaxK = 8;

void check_pair(const std::vector<int>& predicted, const std::vector<int>& truth) {
  if (predicted.size() != truth.size()) {
    throw Error(ErrorCode::kLengthMismatch, "label vectors differ in length");
  }
  if (predicted.empty()) throw Error(ErrorCode::kInvalidArgument, "label vectors are empty");
}

}  // namespace

Matrix confusion_matrix(const std::vector<int>& predicted, const std::vector<int>& truth, int k) {
  check_pair(predicted, truth);
  if (k < 1) throw Error(ErrorCode::kInvalidArgument, "K must be positive");
  Matrix counts = Matrix::Zero(k, k);
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    const int p = predicted[i];
    const int t = truth[i];
    if (p < 0 || p >= k || t < 0 || t >= k) throw Error(ErrorCode::kInvalidArgument, "label outside 0..K-1");
    counts(p, t) += 1.0;
  }
  return counts;
}

std::vector<int> max_weight_assignment(const Matrix& weights) {
  // Hungarian algorithm (potentials form) on cost = -weights, 1-based internally.
  const int n = static_cast<int>(weights.rows());
  if (weights.cols() != n) throw Error(ErrorCode::kInvalidArgument, "assignment needs a square matrix");
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0);
  std::vector<double> v(n + 1, 0.0);
  std::vector<int> match(n + 1, 0);
  std::vector<int> way(n + 1, 0);
  for (int row = 1; row <= n; ++row) {
    match[0] = row;
    int col0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<char> used(n + 1, 0);
    do {
      used[col0] = 1;
      const int r0 = match[col0];
      double delta = inf;
      int col1 = 0;
      for (int col = 1; col <= n; ++col) {
        if (used[col]) continue;
        const double cur = -weights(r0 - 1, col - 1) - u[r0] - v[col];
        if (cur < minv[col]) {
          minv[col] = cur;
          way[col] = col0;
        }
        if (minv[col] < delta) {
          delta = minv[col];
          col1 = col;
        }
      }
      for (int col = 0; col <= n; ++col) {
        if (used[col]) {
          u[match[col]] += delta;
          v[col] -= delta;
        } else {
          minv[col] -= delta;
        }
      }
      col0 = col1;
    } while (match[col0] != 0);
    do {
      const int col1 = way[col0];
      match[col0] = match[col1];
      col0 = col1;
    } while (col0 != 0);
  }
  std::vector<int> result(static_cast<std::size_t>(n), 0);
  for (int col = 1; col <= n; ++col) result[static_cast<std::size_t>(match[col] - 1)] = col - 1;
  return result;
}

double ccp_assignment(const std::vector<int>& predicted, const std::vector<int>& truth, int k) {
  const Matrix counts = confusion_matrix(predicted, truth, k);
  const std::vector<int> match = max_weight_assignment(counts);
  double hits = 0.0;
  for (int r = 0; r < k; ++r) hits += counts(r, match[static_cast<std::size_t>(r)]);
  return hits / static_cast<double>(predicted.size());
}

double ccp(const std::vector<int>& predicted, const std::vector<int>& truth, int k) {
  if (k > kBruteForceMaxK) return ccp_assignment(predicted, truth, k);
  const Matrix counts = confusion_matrix(predicted, truth, k);
  std::vector<int> perm(static_cast<std::size_t>(k));
  std::iota(perm.begin(), perm.end(), 0);
  double best = 0.0;
  do {
    double hits = 0.0;
    for (int r = 0; r < k; ++r) hits += counts(r, perm[static_cast<std::size_t>(r)]);
    best = std::max(best, hits);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best / static_cast<double>(predicted.size());
}

double nmi(const std::vector<int>& predicted, const std::vector<int>& truth) {
  check_pair(predicted, truth);
  std::map<int, double> pa;
  std::map<int, double> pb;
  std::map<std::pair<int, int>, double> joint;
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    pa[predicted[i]] += 1.0;
    pb[truth[i]] += 1.0;
    joint[{predicted[i], truth[i]}] += 1.0;
  }
  const double n = static_cast<double>(predicted.size());
  auto entropy = [n](const std::map<int, double>& counts) {
    double h = 0.0;
    for (const auto& [label, c] : counts) {
      const double p = c / n;
      h -= p * std::log(p);
    }
    return h;
  };
  const double ha = entropy(pa);
  const double hb = entropy(pb);
  if (pa.size() == 1 && pb.size() == 1) return 1.0;
  if (ha <= 0.0 || hb <= 0.0) return 0.0;
  double mi = 0.0;
  for (const auto& [key, c] : joint) {
    const double pij = c / n;
    mi += pij * std::log(pij * n * n / (pa[key.first] * pb[key.second]));
  }
  return std::clamp(mi / std::sqrt(ha * hb), 0.0, 1.0);
}

}  // namespace specsbm
