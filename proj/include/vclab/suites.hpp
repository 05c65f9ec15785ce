#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vclab/cache.hpp"
#include "vclab/common.hpp"
#include "vclab/graph.hpp"
#include "vclab/homcount.hpp"
#include "vclab/mixing.hpp"
#include "vclab/prng.hpp"
#include "vclab/report.hpp"
#include "vclab/spectral.hpp"
#include "vclab/thresholds.hpp"
#include "vclab/vcdim.hpp"

namespace vclab {

struct SuiteResult {
  bool pass = true;
  CsvWriter csv;
  Json records = Json::array();
  std::vector<std::string> summary;

  Json report() const {
    Json doc;
    doc["schema"] = "vclab-report-v1";
    doc["generated"] = utc_timestamp();  // header field; records below are deterministic
    doc["records"] = records;
    return doc;
  }
};

namespace detail {

inline CsvWriter::GraphColumns graph_columns(const std::string& suite, const DenseGraph& g,
                                             const SpectralProfile* profile) {
  CsvWriter::GraphColumns gc;
  gc.suite = suite;
  gc.family = g.meta().family;
  gc.q = g.meta().q;
  gc.t = g.meta().t;
  gc.n = g.n();
  if (profile && profile->d) gc.d = *profile->d;
  if (profile) gc.lambda = profile->lambda;
  return gc;
}

inline VertexSet sample_subset(const DenseGraph& g, std::size_t size, Rng& rng) {
  std::vector<std::uint32_t> all(g.n());
  std::iota(all.begin(), all.end(), 0u);
  return VertexSet(rng.sample(all, size));
}

/// sizes entries <= 1.0 are fractions of n; > 1 are absolute |U| values.
inline std::vector<std::size_t> resolve_sizes(const std::vector<double>& sizes, std::uint32_t n) {
  std::vector<std::size_t> out;
  for (double s : sizes) {
    std::size_t v;
    if (s <= 0) throw ConfigError("sizes: entries must be positive");
    if (s <= 1.0)
      v = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(s * n)));
    else
      v = static_cast<std::size_t>(std::llround(s));
    if (v > n) throw ConfigError("sizes: |U| = " + std::to_string(v) + " exceeds n = " + std::to_string(n));
    out.push_back(v);
  }
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// mixing suites

inline SuiteResult run_mixing_suite(const DenseGraph& g, const SpectralProfile& profile,
                                    std::uint64_t trials, std::uint64_t seed, double tol,
                                    bool tensor) {
  SuiteResult result;
  const std::string name = tensor ? "tensor-mixing" : "mixing";
  const MixingReport report = tensor ? tensor_mixing_check(g, profile, trials, seed, tol)
                                     : mixing_check(g, profile, trials, seed, tol);
  const auto gc = detail::graph_columns(name, g, &profile);
  for (std::uint64_t trial = 0; trial < report.ratios.size(); ++trial) {
    const double ratio = report.ratios[trial];
    result.csv.add_row(gc, g.n(), g.n(), trial, derive_seed(seed, trial), name + "_ratio", ratio, 1.0,
                       ratio <= 1.0 ? "1" : "0");
  }
  result.pass = report.passed();

  Json rec;
  rec["suite"] = name;
  rec["family"] = g.meta().family;
  rec["q"] = g.meta().q;
  rec["t"] = g.meta().t;
  rec["graph_hash"] = graph_hash(g);
  rec["n"] = g.n();
  rec["d"] = profile.d ? Json(*profile.d) : Json(nullptr);
  rec["lambda"] = fmt_g(profile.lambda);
  rec["seed"] = seed;
  rec["trials"] = report.trials;
  rec["tol"] = report.tol;
  rec["max_ratio"] = fmt_g(report.max_ratio);
  Json viols = Json::array();
  for (const auto& v : report.violations) {
    Json j;
    j["trial"] = v.trial;
    j["seed"] = v.seed;
    j["f_type"] = v.f_type;
    j["g_type"] = v.g_type;
    j["lhs"] = fmt_g(v.lhs);
    j["rhs"] = fmt_g(v.rhs);
    viols.push_back(j);
  }
  rec["violations"] = viols;
  result.records.push_back(rec);
  result.summary.push_back(name + ": " + std::to_string(report.trials) + " trials, max ratio " +
                           fmt_g(report.max_ratio) + ", violations " +
                           std::to_string(report.violations.size()));
  return result;
}

// ---------------------------------------------------------------------------
// counting theorems

struct CountsOptions {
  std::vector<double> sizes = {0.5, 0.75, 1.0};
  std::uint64_t trials = 10;
  double K = 10.0;
  std::uint64_t seed = 1;
  std::vector<std::uint32_t> cycles = {3, 4, 5, 6};
  WorkBudget budget;
};

/// Evaluates every theorem-shape count inequality on sampled subsets with
/// degree pruning; one CSV row per inequality per trial.
inline SuiteResult run_counts_suite(const DenseGraph& g, const SpectralProfile& profile,
                                    const CountsOptions& opt) {
  if (!profile.d) throw Error("counts suite: graph must be regular");
  SuiteResult result;
  const double n = g.n();
  const double d = *profile.d;
  const double lambda = profile.lambda;
  const double K = opt.K;
  const auto gc = detail::graph_columns("counts", g, &profile);
  const auto sizes = detail::resolve_sizes(opt.sizes, g.n());

  for (std::size_t si = 0; si < sizes.size(); ++si) {
    for (std::uint64_t trial = 0; trial < opt.trials; ++trial) {
      const auto t0 = std::chrono::steady_clock::now();
      const std::uint64_t cell_seed = derive_seed(opt.seed, si * 1'000'003 + trial);
      Rng rng(cell_seed);
      const VertexSet u = detail::sample_subset(g, sizes[si], rng);
      const VertexSet uprime = prune_by_degree(g, u, *profile.d, g.n());
      const double s = double(u.size());
      const double m = double(uprime.size());

      Json rec;
      rec["suite"] = "counts";
      rec["family"] = g.meta().family;
      rec["q"] = g.meta().q;
      rec["t"] = g.meta().t;
      rec["graph_hash"] = graph_hash(g);
      rec["n"] = g.n();
      rec["d"] = *profile.d;
      rec["lambda"] = fmt_g(lambda);
      rec["U_size"] = u.size();
      rec["Uprime_size"] = uprime.size();
      rec["trial"] = trial;
      rec["seed"] = cell_seed;

      std::vector<std::tuple<std::string, double, double>> rows;  // metric, value, bound
      std::string skipped_reason;
      Json census_json = Json::object();
      try {
        if (uprime.empty()) throw Error("pruned set is empty");
        const ConfigCensus census = compute_census(g, uprime, opt.budget);
        for (const auto& [key, value] : census) census_json[key] = value.str();
        const std::uint32_t gamma = uprime.size() >= 2 ? max_common_neighbors(g, uprime) : 0;
        rec["gamma"] = gamma;
        const double Lambda = std::min(double(gamma), 2.0 * s * d / n);

        const double h1 = to_double(census.at("H1"));
        const double h2 = to_double(census.at("H2"));
        const double h3 = to_double(census.at("H3"));
        const double h3p = to_double(census.at("H3plus"));
        const double h3m = to_double(census.at("H3minus"));
        const double h4 = to_double(census.at("H4"));

        rows.emplace_back("H1_dev", std::abs(h1 - std::pow(m, 5) * std::pow(d / n, 5)),
                          K * (lambda * lambda * std::pow(m, 3) * std::pow(d / n, 2) +
                               lambda * std::pow(m, 4) * std::pow(d / n, 4)));
        const double h2_dev = std::abs(h2 - std::pow(m, 5) * std::pow(d, 6) / std::pow(n, 6));
        rows.emplace_back("H2_dev", h2_dev, K * lambda * lambda * std::pow(m, 3) * std::pow(d / n, 2));
        rows.emplace_back("H2_dev_gamma", h2_dev, K * lambda * lambda * (m * m * d / n) * Lambda);
        rows.emplace_back("H4_bound", h4, K * std::pow(m, 6) * std::pow(d, 7) / std::pow(n, 7));
        rows.emplace_back("H3plus_dev", std::abs(h3p - h3 * d / n),
                          K * lambda * std::sqrt(h2 * m * d / n) *
                              std::sqrt(std::pow(m, 6) * std::pow(d, 8) / std::pow(n, 8) + lambda * h2));
        rows.emplace_back("H3minus_bound", h3m,
                          K * (std::pow(m, 6) * std::pow(d, 7) / std::pow(n, 7) +
                               lambda * lambda * std::pow(m, 4) * std::pow(d / n, 4) +
                               lambda * std::pow(m, 5) * std::pow(d / n, 5) +
                               lambda * lambda * std::pow(m, 4) * std::pow(d, 3.5) / std::pow(n, 3.5) +
                               std::pow(lambda, 3) * std::pow(m, 3) * std::pow(d, 2.5) / std::pow(n, 2.5) +
                               std::pow(lambda, 4) * m * m * d / n));
        Json cmu = Json::object();
        for (std::uint32_t mm : opt.cycles) {
          const BigInt cm = count_cycles(g, u, mm);
          cmu["C" + std::to_string(mm)] = cm.str();
          rows.emplace_back("C" + std::to_string(mm) + "_dev",
                            std::abs(to_double(cm) - std::pow(s, mm) * std::pow(d / n, mm)),
                            K * (lambda * std::pow(s, mm - 1.0) * std::pow(d / n, mm - 1.0) +
                                 std::pow(lambda, mm - 2.0) * s * s * d / n));
        }
        rec["Cm_U"] = cmu;
      } catch (const BudgetError& e) {
        skipped_reason = e.what();
      } catch (const Error& e) {
        skipped_reason = e.what();
      }
      rec["census_Uprime"] = census_json;

      Json checks = Json::array();
      if (!skipped_reason.empty()) {
        result.csv.add_row(gc, u.size(), uprime.size(), trial, cell_seed, "all", 0.0, NAN, "skipped");
        rec["skipped"] = skipped_reason;
      } else {
        for (const auto& [metric, value, bound] : rows) {
          const bool ok = value <= bound;
          if (!ok) result.pass = false;
          result.csv.add_row(gc, u.size(), uprime.size(), trial, cell_seed, metric, value, bound,
                             ok ? "1" : "0");
          Json c;
          c["metric"] = metric;
          c["value"] = fmt_g(value);
          c["bound"] = fmt_g(bound);
          c["pass"] = ok;
          checks.push_back(c);
        }
      }
      rec["checks"] = checks;
      rec["wall_ms"] =
          std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
      result.records.push_back(rec);
    }
  }
  result.summary.push_back(std::string("counts: ") + (result.pass ? "all rows pass" : "some rows FAIL") +
                           " (" + std::to_string(result.csv.row_count()) + " rows)");
  return result;
}

// ---------------------------------------------------------------------------
// geometry checks (dot-product graph)

/// (a) pairwise common neighbors <= q^{t-2}; (b) for t = 3, the count of
/// H3- homomorphisms whose x-role vertex is a non-unit vector, expected 0.
inline SuiteResult run_geometry_suite(std::uint32_t q, std::uint32_t t, const WorkBudget& budget = {}) {
  SuiteResult result;
  const DenseGraph g = dot_product_graph(q, t);
  const auto gc = detail::graph_columns("geometry", g, nullptr);
  const VertexSet all = VertexSet::full(g.n());

  const std::uint32_t max_cn = max_common_neighbors(g, all);
  double pair_bound = 1;
  for (std::uint32_t i = 0; i + 2 < t; ++i) pair_bound *= q;
  const bool pair_ok = max_cn <= pair_bound;
  if (!pair_ok) result.pass = false;
  result.csv.add_row(gc, g.n(), g.n(), 0, 0, "max_common_neighbors", max_cn, pair_bound,
                     pair_ok ? "1" : "0");

  Json rec;
  rec["suite"] = "geometry";
  rec["family"] = g.meta().family;
  rec["q"] = q;
  rec["t"] = t;
  rec["graph_hash"] = graph_hash(g);
  rec["n"] = g.n();
  rec["max_common_neighbors"] = max_cn;
  rec["pair_bound"] = pair_bound;

  if (t == 3) {
    std::vector<std::uint32_t> non_unit;
    for (std::uint32_t v = 0; v < g.n(); ++v)
      if (!g.edge(v, v)) non_unit.push_back(v);  // loop iff x.x = 1
    const Pattern pattern = h3minus_pattern();
    std::vector<VertexSet> domains(pattern.k, all);
    domains[0] = VertexSet(non_unit);
    const BigInt bad = count_pattern_bruteforce_domains(g, domains, pattern, budget);
    const bool h3m_ok = bad == 0;
    if (!h3m_ok) result.pass = false;
    result.csv.add_row(gc, g.n(), g.n(), 0, 0, "h3minus_nonunit_x", to_double(bad), 0.0,
                       h3m_ok ? "1" : "0");
    rec["h3minus_nonunit_x"] = bad.str();

    if (!h3m_ok) {
      // dump the first witness tuple in index order
      Json witness = Json::array();
      bool found = false;
      for (std::uint32_t x = 0; x < g.n() && !found; ++x) {
        if (g.edge(x, x)) continue;
        for (std::uint32_t y = 0; y < g.n() && !found; ++y) {
          if (!g.edge(x, y)) continue;
          for (std::uint32_t z = 0; z < g.n() && !found; ++z) {
            if (!g.edge(x, z) || !g.edge(y, z)) continue;
            for (std::uint32_t u = 0; u < g.n() && !found; ++u) {
              if (!g.edge(x, u) || !g.edge(z, u)) continue;
              for (std::uint32_t v = 0; v < g.n() && !found; ++v) {
                if (!g.edge(x, v) || !g.edge(v, u)) continue;
                for (std::uint32_t xp = 0; xp < g.n() && !found; ++xp) {
                  if (!g.edge(x, xp) || !g.edge(xp, y)) continue;
                  witness = Json::array({x, y, z, u, v, xp});
                  found = true;
                }
              }
            }
          }
        }
      }
      rec["h3minus_witness_xyzuvxp"] = witness;
    }
  }
  result.records.push_back(rec);
  result.summary.push_back("geometry q=" + std::to_string(q) + " t=" + std::to_string(t) + ": " +
                           (result.pass ? "pass" : "FAIL"));
  return result;
}

// ---------------------------------------------------------------------------
// quadruple shattering upper bound (dot-product graph, t = 3)

struct QuadrupleOptions {
  bool exhaustive = true;
  std::uint64_t budget = 100'000;  // exhaustive: max quadruples; randomized: samples
  std::uint64_t seed = 1;
};

inline SuiteResult run_quadruple_suite(std::uint32_t q, const QuadrupleOptions& opt) {
  SuiteResult result;
  const DenseGraph g = dot_product_graph(q, 3);
  const VertexSet all = VertexSet::full(g.n());
  const auto gc = detail::graph_columns("quadruple", g, nullptr);

  std::uint64_t checked = 0, shattered_count = 0;
  Json first_counterexample;
  const auto check = [&](const std::vector<std::uint32_t>& x) {
    ++checked;
    auto w = detail::scan_shatter(g, all, x);
    if (w) {
      ++shattered_count;
      if (first_counterexample.is_null()) first_counterexample = witness_to_json(*w);
    }
  };

  if (opt.exhaustive) {
    const std::uint64_t n = g.n();
    const std::uint64_t total = n * (n - 1) / 2 * (n - 2) / 3 * (n - 3) / 4;
    if (total > opt.budget)
      throw Error("quadruple check: " + std::to_string(total) + " quadruples exceed the budget");
    std::vector<std::uint32_t> x(4);
    for (x[0] = 0; x[0] < g.n(); ++x[0])
      for (x[1] = x[0] + 1; x[1] < g.n(); ++x[1])
        for (x[2] = x[1] + 1; x[2] < g.n(); ++x[2])
          for (x[3] = x[2] + 1; x[3] < g.n(); ++x[3]) check(x);
  } else {
    Rng rng(opt.seed);
    std::vector<std::uint32_t> pool(g.n());
    std::iota(pool.begin(), pool.end(), 0u);
    for (std::uint64_t s = 0; s < opt.budget; ++s) {
      auto x = rng.sample(pool, 4);
      std::sort(x.begin(), x.end());
      check(x);
    }
  }

  result.pass = shattered_count == 0;
  result.csv.add_row(gc, g.n(), g.n(), 0, opt.seed, "shattered_quadruples", double(shattered_count),
                     0.0, result.pass ? "1" : "0");
  result.csv.add_row(gc, g.n(), g.n(), 0, opt.seed, "quadruples_checked", double(checked), NAN, "1");

  Json rec;
  rec["suite"] = "quadruple";
  rec["family"] = g.meta().family;
  rec["q"] = q;
  rec["t"] = 3;
  rec["graph_hash"] = graph_hash(g);
  rec["n"] = g.n();
  rec["mode"] = opt.exhaustive ? "exhaustive" : "randomized";
  rec["seed"] = opt.seed;
  rec["checked"] = checked;
  rec["shattered"] = shattered_count;
  if (!first_counterexample.is_null()) rec["counterexample"] = first_counterexample;
  result.records.push_back(rec);
  result.summary.push_back("quadruple q=" + std::to_string(q) + " (" +
                           (opt.exhaustive ? "exhaustive" : "randomized") + "): checked " +
                           std::to_string(checked) + ", shattered " + std::to_string(shattered_count));
  return result;
}

// ---------------------------------------------------------------------------
// selector-triple condition

inline SuiteResult run_selector_suite(const DenseGraph& g, std::uint64_t triples, std::uint64_t seed) {
  SuiteResult result;
  if (g.n() < 3) throw Error("selector suite: need at least three vertices");
  const VertexSet all = VertexSet::full(g.n());
  const auto gc = detail::graph_columns("selector", g, nullptr);
  std::vector<std::uint32_t> pool(g.n());
  std::iota(pool.begin(), pool.end(), 0u);

  std::uint64_t successes = 0;
  Json trials_json = Json::array();
  for (std::uint64_t trial = 0; trial < triples; ++trial) {
    const std::uint64_t trial_seed = derive_seed(seed, trial);
    Rng rng(trial_seed);
    const auto v = rng.sample(pool, 3);
    const auto picked = find_selector_triple(g, all, v[0], v[1], v[2]);
    if (picked) ++successes;
    result.csv.add_row(gc, g.n(), g.n(), trial, trial_seed, "selector_found", picked ? 1.0 : 0.0, 1.0,
                       picked ? "1" : "0");
    Json tj;
    tj["trial"] = trial;
    tj["seed"] = trial_seed;
    tj["v"] = Json::array({v[0], v[1], v[2]});
    if (picked)
      tj["u"] = Json::array({(*picked)[0], (*picked)[1], (*picked)[2]});
    else
      tj["u"] = nullptr;
    trials_json.push_back(tj);
  }
  result.pass = successes == triples;

  Json rec;
  rec["suite"] = "selector";
  rec["family"] = g.meta().family;
  rec["q"] = g.meta().q;
  rec["t"] = g.meta().t;
  rec["graph_hash"] = graph_hash(g);
  rec["n"] = g.n();
  rec["seed"] = seed;
  rec["triples"] = triples;
  rec["successes"] = successes;
  rec["success_fraction"] = fmt_g(triples ? double(successes) / double(triples) : 0.0);
  rec["trials"] = trials_json;
  result.records.push_back(rec);
  result.summary.push_back("selector: " + std::to_string(successes) + "/" + std::to_string(triples) +
                           " triples admit a selector");
  return result;
}

// ---------------------------------------------------------------------------
// VC sweep

struct SweepOptions {
  std::vector<double> sizes = {0.25, 0.5, 0.75, 1.0};
  std::uint64_t trials = 3;
  std::uint32_t target_k = 3;
  std::uint64_t budget = 100'000;  // vc_at_least candidate budget per k
  std::uint64_t seed = 1;
  double threshold_C = 1.0;
  bool run_exact = false;
  std::uint64_t exact_scan_budget = 5'000'000;
};

struct SweepOutput {
  SuiteResult suite;
  std::vector<std::pair<double, double>> median_points;  // (|U|, median achieved VC)
  std::vector<ThresholdSpec> thresholds;
  std::vector<double> threshold_values;
};

inline SweepOutput run_vc_sweep(const DenseGraph& g, const SpectralProfile& profile,
                                const SweepOptions& opt) {
  SweepOutput out;
  SuiteResult& result = out.suite;
  const auto gc = detail::graph_columns("sweep", g, &profile);
  const auto sizes = detail::resolve_sizes(opt.sizes, g.n());

  out.thresholds = applicable_thresholds(g.meta().family, g.meta().t, opt.threshold_C);
  ThresholdInputs tin;
  tin.n = g.n();
  tin.d = profile.d ? double(*profile.d) : 0.0;
  tin.lambda = profile.lambda;
  tin.q = g.meta().q;
  tin.t = g.meta().t;
  for (const auto& ts : out.thresholds) out.threshold_values.push_back(threshold_eval(ts, tin));

  for (std::size_t si = 0; si < sizes.size(); ++si) {
    std::vector<double> achieved;
    for (std::uint64_t trial = 0; trial < opt.trials; ++trial) {
      const auto t0 = std::chrono::steady_clock::now();
      const std::uint64_t cell_seed = derive_seed(opt.seed, si * 1'000'003 + trial);
      Rng rng(cell_seed);
      const VertexSet u = detail::sample_subset(g, sizes[si], rng);

      Json rec;
      rec["suite"] = "sweep";
      rec["family"] = g.meta().family;
      rec["q"] = g.meta().q;
      rec["t"] = g.meta().t;
      rec["graph_hash"] = graph_hash(g);
      rec["n"] = g.n();
      rec["d"] = profile.d ? Json(*profile.d) : Json(nullptr);
      rec["lambda"] = fmt_g(profile.lambda);
      rec["U_size"] = u.size();
      rec["trial"] = trial;
      rec["seed"] = cell_seed;

      std::uint32_t best_k = 0;
      Json vc_json = Json::object();
      for (std::uint32_t k = 2; k <= opt.target_k; ++k) {
        std::optional<ShatterWitness> w;
        if ((std::uint64_t(1) << k) <= u.size())
          w = vc_at_least(g, u, k, opt.budget, derive_seed(cell_seed, k));
        if (w) {
          best_k = k;
          vc_json["at_least_" + std::to_string(k)] = witness_to_json(*w);
        }
        result.csv.add_row(gc, u.size(), u.size(), trial, cell_seed, "vc_at_least_" + std::to_string(k),
                           w ? 1.0 : 0.0, NAN, "1");
      }
      rec["vc_lower_bound"] = best_k;
      if (opt.run_exact) {
        VcSearchOptions vopts;
        vopts.max_shatter_scans = opt.exact_scan_budget;
        const VcExactResult exact = vc_dimension_exact(g, u, vopts);
        rec["vc_exact"] = exact.dimension;
        rec["vc_exact_is_exact"] = exact.exact;
        best_k = std::max(best_k, exact.dimension);
        result.csv.add_row(gc, u.size(), u.size(), trial, cell_seed, "vc_exact", exact.dimension, NAN,
                           exact.exact ? "1" : "skipped");
      }
      rec["vc"] = vc_json;

      Json thr = Json::array();
      for (std::size_t ti = 0; ti < out.thresholds.size(); ++ti) {
        Json tj;
        tj["name"] = out.thresholds[ti].name;
        tj["value"] = fmt_g(out.threshold_values[ti]);
        tj["U_at_least"] = double(u.size()) >= out.threshold_values[ti];
        thr.push_back(tj);
      }
      rec["thresholds"] = thr;
      rec["wall_ms"] =
          std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
      result.records.push_back(rec);
      achieved.push_back(best_k);
    }
    std::sort(achieved.begin(), achieved.end());
    const double median = achieved.size() % 2 ? achieved[achieved.size() / 2]
                                              : 0.5 * (achieved[achieved.size() / 2 - 1] + achieved[achieved.size() / 2]);
    out.median_points.emplace_back(double(sizes[si]), median);
  }
  result.summary.push_back("sweep: " + std::to_string(sizes.size()) + " sizes x " +
                           std::to_string(opt.trials) + " trials");
  return out;
}

}  // namespace vclab
