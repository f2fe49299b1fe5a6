#include "specsbm/graph.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "specsbm/error.hpp"

namespace specsbm {

AdjacencyMatrix::AdjacencyMatrix(Matrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols()) throw Error(ErrorCode::kInvalidArgument, "adjacency must be square");
  const Index n = entries_.rows();
  for (Index j = 0; j < n; ++j) {
    if (entries_(j, j) != 0.0) throw Error(ErrorCode::kInvalidArgument, "adjacency diagonal must be zero");
    for (Index i = j + 1; i < n; ++i) {
      const double v = entries_(i, j);
      if ((v != 0.0 && v != 1.0) || v != entries_(j, i)) {
        throw Error(ErrorCode::kInvalidArgument, "adjacency must be symmetric with 0/1 entries");
      }
    }
  }
}

Index AdjacencyMatrix::edge_count() const { return static_cast<Index>(entries_.sum() / 2.0); }

AdjacencyMatrix sample_adjacency(const SymMatrix& p, RngSeed seed) {
  const Index n = p.size();
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < n; ++i) {
      const double v = p(i, j);
      if (!(v >= 0.0 && v <= 1.0)) throw Error(ErrorCode::kProbOutOfRange, "edge probability outside [0,1]");
    }
  }
  Rng rng(seed);
  Matrix a = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      if (rng.bernoulli(p(i, j))) {
        a(i, j) = 1.0;
        a(j, i) = 1.0;
      }
    }
  }
  return AdjacencyMatrix(std::move(a));
}

SymMatrix clip_probabilities(const SymMatrix& p) {
  return SymMatrix(p.matrix().cwiseMax(0.0).cwiseMin(1.0));
}

Matrix dgp_block_matrix(int id, Index n) {
  const double nn = static_cast<double>(n);
  const double ln = std::log(nn);
  switch (id) {
    case 1:
    case 3: {
      Matrix b(2, 2);
      b << ln * ln, 0.2 * ln, 0.2 * ln, 0.8 * ln;
      return (2.0 / nn) * b;
    }
    case 2:
    case 4: {
      const double weak = std::pow(ln, 5.0 / 6.0);
      Matrix b(3, 3);
      b << std::sqrt(nn), 0.1 * weak, 0.1 * weak,
           0.1 * weak, std::pow(ln, 1.5), 0.1 * weak,
           0.1 * weak, 0.1 * weak, 0.8 * weak;
      return (3.0 / nn) * b;
    }
    default:
      throw Error(ErrorCode::kInvalidArgument, "DGP id must be 1, 2, 3 or 4");
  }
}

PlantedModel dgp_preset(int id, Index n_per_community, RngSeed seed) {
  if (n_per_community < 2) throw Error(ErrorCode::kInvalidArgument, "need at least 2 nodes per community");
  const int k = (id == 1 || id == 3) ? 2 : 3;
  const Index n = k * n_per_community;
  Matrix b = dgp_block_matrix(id, n);
  std::vector<Index> sizes(static_cast<std::size_t>(k), n_per_community);
  Membership z = Membership::contiguous(sizes);
  if (id == 1 || id == 2) return {BlockModel(std::move(b), sizes), std::move(z)};

  Rng rng(seed);
  Vector raw(n);
  for (Index i = 0; i < n; ++i) raw[i] = rng.uniform() < 0.5 ? 0.5 : 1.5;
  Vector theta(n);
  for (int c = 0; c < k; ++c) {
    auto block = raw.segment(c * n_per_community, n_per_community);
    theta.segment(c * n_per_community, n_per_community) = block * (static_cast<double>(n_per_community) / block.sum());
  }
  return {BlockModel(std::move(b), sizes, std::move(theta), std::move(raw)), std::move(z)};
}

PlantedModel four_param_sbm(int k, Index s, double r, double p) {
  if (k < 1 || s < 2) throw Error(ErrorCode::kInvalidArgument, "four-parameter model needs K >= 1 and s >= 2");
  if (!(r >= 0.0) || !(r + p <= 1.0) || !(r + p >= 0.0)) {
    throw Error(ErrorCode::kProbOutOfRange, "need 0 <= r and 0 <= r + p <= 1");
  }
  Matrix b = Matrix::Constant(k, k, r);
  b.diagonal().array() += p;
  std::vector<Index> sizes(static_cast<std::size_t>(k), s);
  Membership z = Membership::contiguous(sizes);
  return {BlockModel(std::move(b), sizes), std::move(z)};
}

void write_edge_list(std::ostream& out, const AdjacencyMatrix& a) {
  const Index n = a.size();
  out << "# n=" << n << '\n';
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      if (a(i, j) != 0.0) out << i << ' ' << j << '\n';
    }
  }
}

AdjacencyMatrix read_edge_list(std::istream& in) {
  std::string line;
  Index n = -1;
  Matrix a;
  Index line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '#') {
      const auto pos = line.find("n=");
      if (n < 0 && pos != std::string::npos) {
        std::istringstream is(line.substr(pos + 2));
        if (!(is >> n) || n < 0) throw Error(ErrorCode::kParse, "bad node count header");
        a = Matrix::Zero(n, n);
      }
      continue;
    }
    if (n < 0) throw Error(ErrorCode::kParse, "edge list is missing the '# n=<n>' header");
    std::istringstream is(line);
    Index i = 0;
    Index j = 0;
    std::string rest;
    if (!(is >> i >> j) || (is >> rest)) {
      throw Error(ErrorCode::kParse, "line " + std::to_string(line_no) + ": expected 'i j'");
    }
    if (i < 0 || j < 0 || i >= n || j >= n || i == j) {
      throw Error(ErrorCode::kParse, "line " + std::to_string(line_no) + ": node index out of range");
    }
    a(i, j) = 1.0;
    a(j, i) = 1.0;
  }
  if (n < 0) throw Error(ErrorCode::kParse, "edge list is missing the '# n=<n>' header");
  return AdjacencyMatrix(std::move(a));
}

}  // namespace specsbm
