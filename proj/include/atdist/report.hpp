#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "atdist/error.hpp"
#include "atdist/label_distance.hpp"
#include "atdist/multiset_distance.hpp"
#include "atdist/ops.hpp"
#include "atdist/radical_distance.hpp"
#include "atdist/similarity.hpp"
#include "atdist/ted.hpp"
#include "atdist/tree.hpp"

namespace atdist {

/// Weights for (LD, TED, RD, MSD).
class Alpha {
 public:
  Alpha() = default;
  Alpha(double ld, double ted, double rd, double msd) : w_{ld, ted, rd, msd} {
    for (double x : w_) {
      if (!(x >= 0.0) || !std::isfinite(x)) throw ConfigError("alpha weights must be finite and non-negative");
    }
    if (ld + ted + rd + msd <= 0.0) throw ConfigError("at least one alpha weight must be positive");
  }
  double operator[](std::size_t k) const { return w_[k]; }
  const std::array<double, 4>& weights() const noexcept { return w_; }

 private:
  std::array<double, 4> w_{0.5, 0.25, 0.25, 0.0};
};

inline double wsd(double ld, double ted, double rd, double msd, const Alpha& alpha) {
  return alpha[0] * ld + alpha[1] * ted + alpha[2] * rd + alpha[3] * msd;
}

enum class Measure { LD, TED, RD, MSD, WSD };

inline std::string_view to_string(Measure m) {
  switch (m) {
    case Measure::LD: return "ld";
    case Measure::TED: return "ted";
    case Measure::RD: return "rd";
    case Measure::MSD: return "msd";
    case Measure::WSD: return "wsd";
  }
  return "?";
}

inline Measure parse_measure(std::string_view s) {
  for (Measure m : {Measure::LD, Measure::TED, Measure::RD, Measure::MSD, Measure::WSD}) {
    if (s == to_string(m)) return m;
  }
  throw ConfigError("unknown measure \"" + std::string(s) + "\"");
}

/// Everything except the provider that parameterizes a comparison.
struct CompareConfig {
  Epsilon epsilon{0.7};
  CostConfig costs;
  Alpha alpha;
  ReorderMode reorder = ReorderMode::Min;
  std::size_t suite_cap = kDefaultSuiteCap;
};

struct MeasureReport {
  double absolute = 0.0;
  double normalized = 0.0;
  OpCounts ops;
};

struct DistanceReport {
  std::string source_name, target_name;
  std::size_t source_size = 0, target_size = 0;
  MeasureReport ld, ted, rd, msd;
  double wsd = 0.0;             // over absolute distances
  double wsd_normalized = 0.0;  // over normalized distances
  bool ted_reordered = false;

  // Configuration echo.
  std::string provider;
  CompareConfig config;

  // Detail for side outputs.
  NodeMapping ld_mapping;
  TedResult ted_result;
  std::vector<RadicalPair> radical_pairs;

  const MeasureReport& measure(Measure m) const {
    switch (m) {
      case Measure::LD: return ld;
      case Measure::TED: return ted;
      case Measure::RD: return rd;
      default: return msd;
    }
  }
  double normalized(Measure m) const { return m == Measure::WSD ? wsd_normalized : measure(m).normalized; }
  double absolute(Measure m) const { return m == Measure::WSD ? wsd : measure(m).absolute; }
};

/// Runs the four measures and their weighted sum. LD, TED and RD are
/// normalized by the larger tree's node count; MSD's normalized form is its
/// Jaccard distance. Engine failures are collected and rethrown together.
template <SimilarityProvider P>
DistanceReport compare_all(const P& provider, const CompareConfig& cfg, const AttackTree& t1,
                           const AttackTree& t2) {
  DistanceReport r;
  r.source_name = t1.source_name();
  r.target_name = t2.source_name();
  r.source_size = t1.size();
  r.target_size = t2.size();
  r.provider = provider.name();
  r.config = cfg;
  const double largest = static_cast<double>(std::max(t1.size(), t2.size()));

  std::vector<std::string> failures;
  std::set<std::string> missing;
  const auto guarded = [&](std::string_view measure, auto&& fn) {
    try {
      fn();
    } catch (const MissingEmbeddingError& e) {
      missing.insert(e.labels().begin(), e.labels().end());
      failures.push_back(std::string(measure) + ": " + e.what());
    } catch (const Error& e) {
      failures.push_back(std::string(measure) + ": " + e.what());
    }
  };

  guarded("ld", [&] {
    auto res = label_distance(provider, cfg.epsilon, t1, t2);
    r.ld = {res.distance, res.distance / largest, res.ops};
    r.ld_mapping = std::move(res.mapping);
  });
  guarded("ted", [&] {
    r.ted_result = ted_with_reorder(cfg.costs, provider, cfg.epsilon, t1, t2, cfg.reorder);
    r.ted = {r.ted_result.distance, r.ted_result.distance / largest, r.ted_result.ops()};
    r.ted_reordered = r.ted_result.reordered;
  });
  guarded("rd", [&] {
    auto res = radical_distance(provider, cfg.epsilon, t1, t2);
    r.rd = {res.distance, res.distance / largest, res.ops};
    r.radical_pairs = std::move(res.pairs);
  });
  guarded("msd", [&] {
    auto res = multiset_distance(provider, cfg.epsilon, t1, t2, cfg.suite_cap);
    r.msd = {res.distance, res.jaccard, res.ops};
  });

  if (!missing.empty()) throw MissingEmbeddingError({missing.begin(), missing.end()});
  if (!failures.empty()) {
    std::string msg = "comparison failed";
    for (const auto& f : failures) msg += "; " + f;
    throw Error(msg);
  }
  r.wsd = wsd(r.ld.absolute, r.ted.absolute, r.rd.absolute, r.msd.absolute, cfg.alpha);
  r.wsd_normalized = wsd(r.ld.normalized, r.ted.normalized, r.rd.normalized, r.msd.normalized, cfg.alpha);
  return r;
}

struct EpsilonGrid {
  double start = 0.0;
  double stop = 1.0;
  double step = 0.01;

  /// Grid points start, start+step, ... up to stop (inclusive when it lands
  /// on the grid). Points are computed from the index, not accumulated.
  std::vector<double> points() const {
    if (!(start >= 0.0 && start <= stop && stop <= 1.0)) {
      throw ConfigError("epsilon grid needs 0 <= start <= stop <= 1");
    }
    if (!(step > 0.0)) throw ConfigError("epsilon grid step must be positive");
    const auto n = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9));
    std::vector<double> out;
    for (std::size_t k = 0; k <= n; ++k) {
      double e = start + static_cast<double>(k) * step;
      e = std::round(e * 1e12) / 1e12;
      if (std::abs(e - stop) < 1e-9) e = stop;
      out.push_back(std::min(e, 1.0));
    }
    return out;
  }
};

/// Share of each op kind (remove, add, change, match) in percent.
inline std::array<double, 4> op_percentages(const OpCounts& c) {
  const double total = static_cast<double>(c.total());
  if (total == 0.0) return {0.0, 0.0, 0.0, 0.0};
  return {100.0 * c.remove / total, 100.0 * c.add / total, 100.0 * c.change / total, 100.0 * c.match / total};
}

struct SweepRow {
  double epsilon = 0.0;
  std::array<double, 5> normalized{};                // ld, ted, rd, msd, wsd
  std::array<std::array<double, 4>, 4> op_pct{};     // per measure: remove, add, change, match
};

template <SimilarityProvider P>
std::vector<SweepRow> epsilon_sweep(const P& provider, CompareConfig cfg, const AttackTree& t1,
                                    const AttackTree& t2, const EpsilonGrid& grid = {}) {
  std::vector<SweepRow> rows;
  for (double e : grid.points()) {
    cfg.epsilon = Epsilon(e);
    const DistanceReport r = compare_all(provider, cfg, t1, t2);
    SweepRow row;
    row.epsilon = e;
    row.normalized = {r.ld.normalized, r.ted.normalized, r.rd.normalized, r.msd.normalized, r.wsd_normalized};
    row.op_pct = {op_percentages(r.ld.ops), op_percentages(r.ted.ops), op_percentages(r.rd.ops),
                  op_percentages(r.msd.ops)};
    rows.push_back(row);
  }
  return rows;
}

using DistanceMatrix = std::vector<std::vector<double>>;

/// Normalized distances between every pair of trees; the upper triangle is
/// computed and mirrored, the diagonal is 0.
template <SimilarityProvider P>
DistanceMatrix pairwise_matrix(const P& provider, const CompareConfig& cfg, const std::vector<AttackTree>& trees,
                               Measure measure) {
  if (trees.size() < 2) throw ConfigError("pairwise matrix needs at least two trees");
  DistanceMatrix m(trees.size(), std::vector<double>(trees.size(), 0.0));
  for (std::size_t i = 0; i < trees.size(); ++i) {
    for (std::size_t j = i + 1; j < trees.size(); ++j) {
      m[i][j] = m[j][i] = compare_all(provider, cfg, trees[i], trees[j]).normalized(measure);
    }
  }
  return m;
}

struct TriangleViolation {
  std::size_t i, j, k;
  double d_ik, d_ij, d_jk;
};

/// All ordered triples with d(i,k) > d(i,j) + d(j,k) on absolute distances.
template <SimilarityProvider P>
std::vector<TriangleViolation> triangle_audit(const P& provider, const CompareConfig& cfg,
                                              const std::vector<AttackTree>& trees, Measure measure) {
  const std::size_t n = trees.size();
  DistanceMatrix d(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) d[i][j] = compare_all(provider, cfg, trees[i], trees[j]).absolute(measure);
  }
  std::vector<TriangleViolation> out;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        if (d[i][k] > d[i][j] + d[j][k] + 1e-9) out.push_back({i, j, k, d[i][k], d[i][j], d[j][k]});
      }
    }
  }
  return out;
}

}  // namespace atdist
