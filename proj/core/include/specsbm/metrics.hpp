#pragma once

#include <vector>

#include "specsbm/linalg.hpp"

namespace specsbm {

// Labels are 0-based and lie in 0..k-1 for both arguments.
// K x K counts, rows indexed by predicted label, columns by truth.
Matrix confusion_matrix(const std::vector<int>& predicted, const std::vector<int>& truth, int k);

// Correct classification proportion, maximized over relabelings of
// `predicted`. Exhaustive over permutations for K <= 8, optimal assignment
// otherwise. LengthMismatch on unequal lengths.
double ccp(const std::vector<int>& predicted, const std::vector<int>& truth, int k);

// Same quantity, always through the assignment solver.
double ccp_assignment(const std::vector<int>& predicted, const std::vector<int>& truth, int k);

// Maximum-weight perfect matching on a square matrix; result[r] is the column
// matched to row r.
std::vector<int> max_weight_assignment(const Matrix& weights);

// I(pred; truth) / sqrt(H(pred) H(truth)) with natural logs. 1 when both
// partitions are the same single cluster, 0 when any other entropy is zero.
// Labels may be any integers.
double nmi(const std::vector<int>& predicted, const std::vector<int>& truth);

}  // namespace specsbm
