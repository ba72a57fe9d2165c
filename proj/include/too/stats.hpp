#pragma once

#include <boost/math/distributions/chi_squared.hpp>

#include <cmath>
#include <map>
#include <span>
#include <vector>

#include "too/errors.hpp"

namespace too::stats {

struct ChiSquare {
  double statistic = 0;
  double dof = 0;
  double p_value = 1;
};

inline double chi_square_sf(double statistic, double dof) {
  if (dof <= 0) return 1.0;
  boost::math::chi_squared dist(dof);
  return boost::math::cdf(boost::math::complement(dist, std::max(0.0, statistic)));
}

/// Goodness of fit of `observed` counts against `expected` probabilities.
inline ChiSquare goodness_of_fit(std::span<const std::uint64_t> observed, std::span<const double> expected) {
  if (observed.size() != expected.size() || observed.empty()) throw DomainError("count/probability size mismatch");
  double total = 0;
  for (auto o : observed) total += static_cast<double>(o);
  ChiSquare r;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double e = expected[i] * total;
    if (e <= 0) continue;
    const double d = static_cast<double>(observed[i]) - e;
    r.statistic += d * d / e;
    r.dof += 1;
  }
  r.dof -= 1;
  r.p_value = chi_square_sf(r.statistic, r.dof);
  return r;
}

inline ChiSquare uniformity(std::span<const std::uint64_t> observed) {
  std::vector<double> expected(observed.size(), 1.0 / static_cast<double>(observed.size()));
  return goodness_of_fit(observed, expected);
}

/// Homogeneity test of two categorical samples (2 x K contingency table).
template <class Key>
ChiSquare homogeneity(const std::map<Key, std::uint64_t>& a, const std::map<Key, std::uint64_t>& b) {
  std::map<Key, std::pair<double, double>> cells;
  double na = 0, nb = 0;
  for (const auto& [k, v] : a) {
    cells[k].first += static_cast<double>(v);
    na += static_cast<double>(v);
  }
  for (const auto& [k, v] : b) {
    cells[k].second += static_cast<double>(v);
    nb += static_cast<double>(v);
  }
  ChiSquare r;
  if (na == 0 || nb == 0) return r;
  const double n = na + nb;
  for (const auto& [k, c] : cells) {
    const double col = c.first + c.second;
    const double ea = col * na / n;
    const double eb = col * nb / n;
    r.statistic += (c.first - ea) * (c.first - ea) / ea + (c.second - eb) * (c.second - eb) / eb;
  }
  r.dof = static_cast<double>(cells.size()) - 1;
  r.p_value = chi_square_sf(r.statistic, r.dof);
  return r;
}

/// Total variation distance between two probability vectors.
inline double statistical_distance(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw DomainError("distribution size mismatch");
  double acc = 0;
  for (std::size_t i = 0; i < p.size(); ++i) acc += std::fabs(p[i] - q[i]);
  return acc / 2;
}

}  // namespace too::stats
