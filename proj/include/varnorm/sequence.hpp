#pragma once

#include <vector>

namespace varnorm {

/// Finitely supported element of l_{p_k}(w): entries x_k with exponents
/// p_k >= 1 and weights w_k > 0, k = 1..n.
struct WeightedSequence {
  std::vector<double> entries;
  std::vector<double> exponents;
  std::vector<double> weights;

  /// Throws DomainError on length mismatch or invalid p_k, w_k.
  void validate() const;
};

/// p_k = p and w_k = w for every entry.
WeightedSequence uniform_sequence(std::vector<double> entries, double p, double w = 1.0);

/// sum_k (|x_k| / lambda)^{p_k} w_k.
double seq_modular(const WeightedSequence& s, double lambda);

/// inf{lambda > 0 : seq_modular(s, lambda) <= 1}, solved to |modular - 1| <= 1e-10.
double seq_norm(const WeightedSequence& s);

/// sum_{k > K} |x_k|^{p_k} w_k (1-based indices, so K = 0 is the full modular).
double seq_tail(const WeightedSequence& s, int K);

}  // namespace varnorm
