#include "varnorm/sequence.hpp"

#include <cmath>

#include "varnorm/numerics.hpp"

namespace varnorm {

void WeightedSequence::validate() const {
  if (entries.size() != exponents.size() || entries.size() != weights.size()) {
    throw DomainError("sequence entries, exponents and weights must have equal length");
  }
  for (std::size_t k = 0; k < entries.size(); ++k) {
    if (!std::isfinite(entries[k])) throw DomainError("sequence entries must be finite");
    if (!(exponents[k] >= 1.0) || !std::isfinite(exponents[k])) {
      throw DomainError("sequence exponents must satisfy 1 <= p_k < inf");
    }
    if (!(weights[k] > 0.0) || !std::isfinite(weights[k])) {
      throw DomainError("sequence weights must be positive");
    }
  }
}

WeightedSequence uniform_sequence(std::vector<double> entries, double p, double w) {
  WeightedSequence s;
  s.exponents.assign(entries.size(), p);
  s.weights.assign(entries.size(), w);
  s.entries = std::move(entries);
  s.validate();
  return s;
}

double seq_modular(const WeightedSequence& s, double lambda) {
  if (!(lambda > 0.0)) throw DomainError("seq_modular needs lambda > 0");
  s.validate();
  double total = 0.0;
  for (std::size_t k = 0; k < s.entries.size(); ++k) {
    const double a = std::abs(s.entries[k]);
    if (a == 0.0) continue;
    total += std::pow(a / lambda, s.exponents[k]) * s.weights[k];
  }
  return total;
}

double seq_norm(const WeightedSequence& s) {
  s.validate();
  bool zero = true;
  for (double x : s.entries) zero = zero && x == 0.0;
  if (zero) return 0.0;
  return solve_monotone_decreasing([&](double l) { return seq_modular(s, l); }, 1.0, 1e-10);
}

double seq_tail(const WeightedSequence& s, int K) {
  s.validate();
  if (K < 0 || K > static_cast<int>(s.entries.size())) {
    throw DomainError("seq_tail needs 0 <= K <= length");
  }
  double total = 0.0;
  for (std::size_t k = static_cast<std::size_t>(K); k < s.entries.size(); ++k) {
    const double a = std::abs(s.entries[k]);
    if (a == 0.0) continue;
    total += std::pow(a, s.exponents[k]) * s.weights[k];
  }
  return total;
}

}  // namespace varnorm
