#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <span>
#include <vector>

#include "too/errors.hpp"
#include "too/rng.hpp"

namespace too::gaussian {

/// Tail cut in units of the width parameter s.
inline constexpr double kTailCut = 12.0;
inline constexpr int kMaxRejections = 1 << 20;

/// Gaussian weight rho_s(x - c) = exp(-pi (x - c)^2 / s^2).
inline double rho(double x, double s, double c = 0.0) {
  const double d = x - c;
  return std::exp(-std::numbers::pi * d * d / (s * s));
}

/// Discrete Gaussian D_{Z, s, c} by rejection from the uniform distribution
/// on the integers within kTailCut * s of c.
inline std::int64_t sample_z(Rng& rng, double s, double c = 0.0) {
  if (!(s > 0.0)) throw DomainError("Gaussian width must be positive");
  const auto lo = static_cast<std::int64_t>(std::ceil(c - kTailCut * s));
  const auto hi = static_cast<std::int64_t>(std::floor(c + kTailCut * s));
  const auto span = static_cast<std::uint64_t>(hi - lo + 1);
  for (int i = 0; i < kMaxRejections; ++i) {
    const auto x = lo + static_cast<std::int64_t>(rng.uniform(span));
    if (rng.uniform_real() < rho(static_cast<double>(x), s, c)) return x;
  }
  throw SamplingError("discrete Gaussian sampler exceeded its rejection budget");
}

inline double norm(std::span<const std::int64_t> v) {
  double acc = 0;
  for (auto x : v) acc += static_cast<double>(x) * static_cast<double>(x);
  return std::sqrt(acc);
}

/// Randomized nearest-plane (Klein) sampler for D_{L, s, c}, where L is the
/// lattice generated by the columns of an integer basis.
class KleinSampler {
 public:
  /// `columns[i]` is the i-th basis vector.
  explicit KleinSampler(std::vector<std::vector<std::int64_t>> columns) : basis_(std::move(columns)) {
    const std::size_t n = basis_.size();
    gso_.assign(n, std::vector<double>(n, 0.0));
    gso_sq_.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      if (basis_[i].size() != n) throw DimensionError("basis must be square");
      for (std::size_t r = 0; r < n; ++r) gso_[i][r] = static_cast<double>(basis_[i][r]);
      for (std::size_t j = 0; j < i; ++j) {
        double mu = dot(basis_[i], gso_[j]) / gso_sq_[j];
        for (std::size_t r = 0; r < n; ++r) gso_[i][r] -= mu * gso_[j][r];
      }
      gso_sq_[i] = dot(gso_[i], gso_[i]);
      if (gso_sq_[i] < 1e-9) throw DimensionError("basis is singular");
    }
  }

  std::size_t dimension() const { return basis_.size(); }

  double max_gso_norm() const {
    double m = 0;
    for (double v : gso_sq_) m = std::max(m, std::sqrt(v));
    return m;
  }

  /// Lattice vector distributed (close to) D_{L, s, center}.
  std::vector<std::int64_t> sample(Rng& rng, double s, std::span<const double> center) const {
    const std::size_t n = basis_.size();
    std::vector<double> c(center.begin(), center.end());
    std::vector<std::int64_t> v(n, 0);
    for (std::size_t k = n; k-- > 0;) {
      const double ck = dot(c, gso_[k]) / gso_sq_[k];
      const double sk = s / std::sqrt(gso_sq_[k]);
      const auto z = sample_z(rng, sk, ck);
      for (std::size_t r = 0; r < n; ++r) {
        c[r] -= static_cast<double>(z) * static_cast<double>(basis_[k][r]);
        v[r] += z * basis_[k][r];
      }
    }
    return v;
  }

 private:
  template <class A, class B>
  static double dot(const A& a, const B& b) {
    double acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += static_cast<double>(a[i]) * static_cast<double>(b[i]);
    return acc;
  }

  std::vector<std::vector<std::int64_t>> basis_;
  std::vector<std::vector<double>> gso_;
  std::vector<double> gso_sq_;
};

}  // namespace too::gaussian
