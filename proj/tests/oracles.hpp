#pragma once

// Independent reference computations used by the unit and acceptance suites.
// Nothing here calls into the code paths it checks.

#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

namespace seirah::oracle {

struct Moments {
  double mean;
  double sd;
};

inline Moments binomial(double trials, double p) { return {trials * p, std::sqrt(trials * p * (1.0 - p))}; }

/// |observed - mean| <= 3 sd / sqrt(samples).
inline bool within_3_sigma(double observed_mean, Moments m, double samples = 1.0) {
  return std::abs(observed_mean - m.mean) <= 3.0 * m.sd / std::sqrt(samples) + 1e-12;
}

/// Expected shortcuts kept by a Newman-Watts generator with `lattice` ring
/// edges on n nodes: Binomial(lattice, p) attempts, each a uniform pair of
/// distinct nodes, kept unless already present. A non-lattice pair survives
/// all attempts with probability (1 - p/C)^lattice, C = n(n-1)/2.
inline double expected_shortcuts(std::uint32_t n, std::uint64_t lattice, double p) {
  const double pairs = 0.5 * n * (n - 1.0);
  return (pairs - static_cast<double>(lattice)) * (1.0 - std::pow(1.0 - p / pairs, static_cast<double>(lattice)));
}

/// Same quantity by exhaustive enumeration of attempt patterns and pair
/// sequences. Exponential; only for n <= 6.
inline double expected_shortcuts_enumerated(std::uint32_t n, std::uint32_t k, double p) {
  const std::uint32_t half = k / 2;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  std::vector<bool> lattice_pair;
  for (std::uint32_t a = 0; a < n; ++a) {
    for (std::uint32_t b = a + 1; b < n; ++b) {
      pairs.emplace_back(a, b);
      const std::uint32_t d = b - a;
      lattice_pair.push_back(std::min(d, n - d) <= half);
    }
  }
  const std::size_t lattice = static_cast<std::size_t>(n) * half;
  const std::size_t c = pairs.size();
  double expectation = 0.0;
  for (std::size_t attempts = 0; attempts <= lattice; ++attempts) {
    const double p_attempts = std::tgamma(lattice + 1.0) / (std::tgamma(attempts + 1.0) * std::tgamma(lattice - attempts + 1.0)) *
                              std::pow(p, attempts) * std::pow(1.0 - p, lattice - attempts);
    // Average over all c^attempts pair sequences of the count of distinct new pairs.
    double total = 0.0, sequences = 0.0;
    std::vector<std::size_t> seq(attempts, 0);
    std::function<void(std::size_t)> rec = [&](std::size_t depth) {
      if (depth == attempts) {
        std::vector<bool> hit(c, false);
        std::size_t added = 0;
        for (auto s : seq) {
          if (!lattice_pair[s] && !hit[s]) ++added;
          hit[s] = true;
        }
        total += added;
        sequences += 1.0;
        return;
      }
      for (std::size_t s = 0; s < c; ++s) {
        seq[depth] = s;
        rec(depth + 1);
      }
    };
    rec(0);
    expectation += p_attempts * total / sequences;
  }
  return expectation;
}

/// Clustering coefficient of a ring lattice with k (even) neighbors:
/// 3(k - 2) / (4(k - 1)).
inline double ring_clustering(std::uint32_t k) { return 3.0 * (k - 2.0) / (4.0 * (k - 1.0)); }

}  // namespace seirah::oracle
