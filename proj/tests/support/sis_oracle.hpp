#pragma once

// Exact distribution of h(m, r) = A m + B r mod q for r with i.i.d.
// discrete Gaussian coordinates, by per-coordinate enumeration and
// convolution over Z_q^n. Written without the library's hash or sampler
// so it can check them. The sampler's norm rejection is ignored; it removes
// mass below 1e-9 at the widths used here.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

namespace too::testing {

/// Probability of each residue of x mod q for x ~ D_{Z, s} truncated at 12 s.
inline std::vector<double> gaussian_residues(double s, std::uint64_t q) {
  std::vector<double> p(q, 0.0);
  const auto cut = static_cast<long>(std::floor(12.0 * s));
  double total = 0;
  for (long x = -cut; x <= cut; ++x) {
    const double w = std::exp(-std::numbers::pi * static_cast<double>(x) * static_cast<double>(x) / (s * s));
    const long r = ((x % static_cast<long>(q)) + static_cast<long>(q)) % static_cast<long>(q);
    p[static_cast<std::size_t>(r)] += w;
    total += w;
  }
  for (auto& v : p) v /= total;
  return p;
}

/// Index of a vector in Z_q^n, first coordinate most significant.
inline std::size_t flat_index(const std::vector<std::uint64_t>& v, std::uint64_t q) {
  std::size_t idx = 0;
  for (auto e : v) idx = idx * q + e;
  return idx;
}

/// Exact law of h(m, r) over Z_q^n. `A` is n x k and `B` is n x m, row-major.
inline std::vector<double> sis_hash_distribution(std::size_t n, std::size_t k, std::size_t m, std::uint64_t q,
                                                 const std::vector<std::uint64_t>& A,
                                                 const std::vector<std::uint64_t>& B,
                                                 const std::vector<std::uint8_t>& msg, double s) {
  std::size_t states = 1;
  for (std::size_t i = 0; i < n; ++i) states *= q;
  std::vector<std::uint64_t> start(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < k; ++j) start[i] = (start[i] + A[i * k + j] * msg[j]) % q;
  }
  std::vector<double> dist(states, 0.0);
  dist[flat_index(start, q)] = 1.0;
  const auto coord = gaussian_residues(s, q);
  std::vector<std::uint64_t> cur(n), shifted(n);
  for (std::size_t j = 0; j < m; ++j) {
    std::vector<double> next(states, 0.0);
    for (std::size_t idx = 0; idx < states; ++idx) {
      if (dist[idx] == 0.0) continue;
      std::size_t t = idx;
      for (std::size_t i = n; i-- > 0;) {
        cur[i] = t % q;
        t /= q;
      }
      for (std::uint64_t a = 0; a < q; ++a) {
        for (std::size_t i = 0; i < n; ++i) shifted[i] = (cur[i] + B[i * m + j] * a) % q;
        next[flat_index(shifted, q)] += dist[idx] * coord[a];
      }
    }
    dist.swap(next);
  }
  return dist;
}

}  // namespace too::testing
