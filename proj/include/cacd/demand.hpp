// Copyright 2026 The cacd Authors.
// SPDX-License-Identifier: Apache-2.0

/// \file
/// Request distributions: exact probability vectors, demand matrices and
/// their marginals, entropy, and the Zipf workload generator.

#ifndef CACD_DEMAND_HPP
#define CACD_DEMAND_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "cacd/error.hpp"
#include "cacd/unit_interval.hpp"

namespace cacd {

/// A probability in (0,1], held as an exact count of 2^-kFracBits units.
class Prob {
 public:
  constexpr Prob() = default;
  constexpr explicit Prob(u128 units) : units_(units) {
    if (units == 0 || units > kOne) throw Error(Errc::InvalidDistribution, "probability outside (0,1]");
  }

  constexpr u128 units() const noexcept { return units_; }
  double value() const noexcept { return to_double(units_); }

  constexpr auto operator<=>(const Prob&) const = default;

 private:
  u128 units_ = kOne;
};

/// Adds the difference between kOne and the total to the largest entry
/// (first one on ties). Entries are grid multiples, so the result is too.
inline void absorb_residual(std::vector<u128>& units) {
  if (units.empty()) throw Error(Errc::InvalidDistribution, "empty distribution");
  u128 total = 0;
  for (u128 u : units) {
    total += u;
    if (total > 2 * kOne) throw Error(Errc::InvalidDistribution, "mass far from one");
  }
  // Prefer an entry that already carries rounding noise. A short dyadic value
  // such as 1/4 sits exactly on a code-length boundary and must stay put.
  constexpr u128 kCoarse = kOne >> 64;
  auto largest = units.end();
  for (auto it = units.begin(); it != units.end(); ++it)
    if (*it % kCoarse != 0 && (largest == units.end() || *it > *largest)) largest = it;
  if (largest == units.end()) largest = std::max_element(units.begin(), units.end());
  if (total <= kOne) {
    *largest += kOne - total;
  } else {
    u128 excess = total - kOne;
    if (*largest <= excess) throw Error(Errc::InvalidDistribution, "residual exceeds largest entry");
    *largest -= excess;
  }
}

/// A probability vector whose entries sum to exactly one.
class Distribution {
 public:
  Distribution() = default;

  /// Takes exact entries; they must be positive and sum to exactly kOne.
  explicit Distribution(std::vector<Prob> probs) : probs_(std::move(probs)) {
    if (probs_.empty()) throw Error(Errc::InvalidDistribution, "empty distribution");
    u128 total = 0;
    for (const Prob& p : probs_) {
      total += p.units();
      if (total > kOne) break;
    }
    if (total != kOne) throw Error(Errc::InvalidDistribution, "probabilities do not sum to one");
  }

  static Distribution from_units(std::vector<u128> units) {
    std::vector<Prob> probs;
    probs.reserve(units.size());
    for (u128 u : units) {
      if (u == 0) throw Error(Errc::PrecisionExceeded, "entry quantizes to zero");
      probs.emplace_back(u);
    }
    return Distribution(std::move(probs));
  }

  /// Normalizes non-negative weights, quantizes them to the grid and puts
  /// the rounding residual on the largest entry.
  static Distribution from_weights(std::span<const double> weights) {
    if (weights.empty()) throw Error(Errc::InvalidDistribution, "empty distribution");
    double sum = 0.0;
    for (double w : weights) {
      if (!(w > 0.0) || !std::isfinite(w)) throw Error(Errc::InvalidDistribution, "weights must be positive and finite");
      sum += w;
    }
    std::vector<u128> units;
    units.reserve(weights.size());
    for (double w : weights) {
      u128 u = quantize(std::min(1.0, w / sum));
      if (u == 0) throw Error(Errc::PrecisionExceeded, "entry quantizes to zero");
      units.push_back(u);
    }
    absorb_residual(units);
    return from_units(std::move(units));
  }

  static Distribution uniform(std::size_t n) {
    std::vector<double> w(n, 1.0);
    return from_weights(w);
  }

  std::size_t size() const noexcept { return probs_.size(); }
  const Prob& operator[](std::size_t i) const { return probs_[i]; }
  std::span<const Prob> probs() const noexcept { return probs_; }

  Prob min() const { return *std::min_element(probs_.begin(), probs_.end()); }
  Prob max() const { return *std::max_element(probs_.begin(), probs_.end()); }

  std::vector<double> values() const {
    std::vector<double> v;
    v.reserve(probs_.size());
    for (const Prob& p : probs_) v.push_back(p.value());
    return v;
  }

  /// Entry i of the result is entry perm[i] of this distribution.
  Distribution permuted(std::span<const std::size_t> perm) const {
    if (perm.size() != probs_.size()) throw Error(Errc::LengthMismatch, "permutation length");
    std::vector<Prob> out;
    out.reserve(perm.size());
    for (std::size_t i : perm) out.push_back(probs_.at(i));
    return Distribution(std::move(out));
  }

  bool operator==(const Distribution&) const = default;

 private:
  std::vector<Prob> probs_;
};

/// H(p) = sum p_i log2(1/p_i) in bits. Summed in sorted order so that any
/// permutation of the same vector yields a bit-identical result.
inline double entropy(const Distribution& p) {
  std::vector<double> v = p.values();
  std::sort(v.begin(), v.end());
  double h = 0.0;
  for (double x : v) h += x * std::log2(1.0 / x);
  return h;
}

/// Generalized harmonic number H_{n,s} = sum_{i=1}^n i^-s.
inline double harmonic(std::size_t n, double s) {
  double h = 0.0;
  for (std::size_t i = n; i >= 1; --i) h += std::pow(static_cast<double>(i), -s);
  return h;
}

/// Zipf's law p_i = i^-s / H_{n,s}, quantized exactly.
inline Distribution zipf(std::size_t n, double s) {
  if (n < 2) throw Error(Errc::InvalidArgument, "zipf requires n >= 2");
  if (!(s >= 0.0)) throw Error(Errc::InvalidArgument, "zipf exponent must be >= 0");
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = std::pow(static_cast<double>(i + 1), -s);
  return Distribution::from_weights(w);
}

/// Closed-form entropy of Zipf(n, s), in bits.
inline double zipf_entropy(std::size_t n, double s) {
  double hn = harmonic(n, s);
  double acc = 0.0;
  for (std::size_t i = 1; i <= n; ++i) acc += std::log2(static_cast<double>(i)) * std::pow(static_cast<double>(i), -s);
  return s / hn * acc + std::log2(hn);
}

/// Uniformly random permutation of 0..n-1.
template <class Rng>
std::vector<std::size_t> random_permutation(std::size_t n, Rng& rng) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::shuffle(perm.begin(), perm.end(), rng);
  return perm;
}

/// The n x n request distribution R. Explicit matrices are stored exactly;
/// product demands R = p_s p_d^T are stored by their factors.
class DemandMatrix {
 public:
  static DemandMatrix explicit_matrix(std::vector<std::vector<u128>> entries) {
    std::size_t n = entries.size();
    if (n < 2) throw Error(Errc::InvalidArgument, "demand matrix needs n >= 2");
    u128 total = 0;
    for (const auto& row : entries) {
      if (row.size() != n) throw Error(Errc::LengthMismatch, "demand matrix is not square");
      for (u128 e : row) {
        if (e > kOne) throw Error(Errc::InvalidDistribution, "entry > 1");
        total += e;
        if (total > kOne) throw Error(Errc::InvalidDistribution, "total mass exceeds one");
      }
    }
    if (total != kOne) throw Error(Errc::InvalidDistribution, "total mass is not one");
    DemandMatrix r;
    r.n_ = n;
    r.entries_ = std::move(entries);
    return r;
  }

  /// Quantizes arbitrary non-negative weights; the residual lands on the
  /// largest entry.
  static DemandMatrix from_weights(const std::vector<std::vector<double>>& w) {
    std::size_t n = w.size();
    double sum = 0.0;
    for (const auto& row : w) {
      if (row.size() != n) throw Error(Errc::LengthMismatch, "demand matrix is not square");
      for (double x : row) {
        if (!(x >= 0.0) || !std::isfinite(x)) throw Error(Errc::InvalidDistribution, "negative demand");
        sum += x;
      }
    }
    if (!(sum > 0.0)) throw Error(Errc::InvalidDistribution, "zero demand");
    std::vector<u128> flat;
    for (const auto& row : w)
      for (double x : row) flat.push_back(quantize(std::min(1.0, x / sum)));
    absorb_residual(flat);
    std::vector<std::vector<u128>> entries(n, std::vector<u128>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) entries[i][j] = flat[i * n + j];
    return explicit_matrix(std::move(entries));
  }

  static DemandMatrix product(Distribution ps, Distribution pd) {
    if (ps.size() != pd.size()) throw Error(Errc::LengthMismatch, "marginal lengths differ");
    if (ps.size() < 2) throw Error(Errc::InvalidArgument, "demand matrix needs n >= 2");
    DemandMatrix r;
    r.n_ = ps.size();
    r.factors_ = std::make_pair(std::move(ps), std::move(pd));
    return r;
  }

  std::size_t size() const noexcept { return n_; }
  bool is_product() const noexcept { return factors_.has_value(); }

  /// R_ij as a double (exact for explicit matrices up to double rounding).
  double operator()(std::size_t i, std::size_t j) const {
    if (factors_) return factors_->first[i].value() * factors_->second[j].value();
    return to_double(entries_[i][j]);
  }

  /// Exact entry of an explicit matrix.
  u128 exact(std::size_t i, std::size_t j) const {
    if (factors_) throw Error(Errc::InvalidArgument, "product demand has no exact entries");
    return entries_[i][j];
  }

  /// (p_s, p_d) = (row sums, column sums), exact.
  std::pair<Distribution, Distribution> marginals() const {
    if (factors_) return *factors_;
    std::vector<u128> rows(n_, 0), cols(n_, 0);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) {
        rows[i] += entries_[i][j];
        cols[j] += entries_[i][j];
      }
    auto check = [](const std::vector<u128>& v, const char* which) {
      for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] == 0) throw Error(Errc::ZeroActivityNode, std::string(which) + " marginal of node " + std::to_string(i) + " is zero");
    };
    check(rows, "source");
    check(cols, "destination");
    return {Distribution::from_units(std::move(rows)), Distribution::from_units(std::move(cols))};
  }

 private:
  DemandMatrix() = default;

  std::size_t n_ = 0;
  std::vector<std::vector<u128>> entries_;
  std::optional<std::pair<Distribution, Distribution>> factors_;
};

inline std::pair<Distribution, Distribution> marginals(const DemandMatrix& r) { return r.marginals(); }

inline DemandMatrix product_demand(Distribution ps, Distribution pd) { return DemandMatrix::product(std::move(ps), std::move(pd)); }

/// a = p_s + p_d as doubles (sums to 2).
inline std::vector<double> activity(const DemandMatrix& r) {
  auto [ps, pd] = r.marginals();
  std::vector<double> a(ps.size());
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = ps[i].value() + pd[i].value();
  return a;
}

enum class Marginal { Source, Destination };

constexpr const char* marginal_name(Marginal m) noexcept { return m == Marginal::Source ? "source" : "destination"; }

/// The lower-entropy marginal; ties go to the source.
inline std::pair<Distribution, Marginal> select_build_distribution(const Distribution& ps, const Distribution& pd) {
  if (entropy(pd) < entropy(ps)) return {pd, Marginal::Destination};
  return {ps, Marginal::Source};
}

}  // namespace cacd

#endif  // CACD_DEMAND_HPP
