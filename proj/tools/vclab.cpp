// vclab CLI: build finite-field graphs, inspect spectra, count
// configurations, search VC dimension, and run the verification suites.

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "vclab/vclab.hpp"

namespace fs = std::filesystem;
using namespace vclab;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

DenseGraph build_by_family(const std::string& family, std::uint32_t q, std::uint32_t t,
                           const std::string& poly_text, bool exclude_origin) {
  if (family == "distance") return distance_graph(q, t);
  if (family == "dotproduct") return dot_product_graph(q, t);
  if (family == "polynomial") {
    if (poly_text.empty()) throw ConfigError("family=polynomial requires --poly");
    FieldGraphSpec spec;
    spec.family = FieldGraphSpec::Family::polynomial;
    spec.q = q;
    spec.t = t;
    spec.polynomial = parse_polynomial(poly_text, t);
    spec.exclude_origin = exclude_origin;
    return polynomial_graph(spec);
  }
  throw ConfigError("unknown family: " + family);
}

DenseGraph load_graph_arg(const std::string& path) {
  try {
    return load_graph(path);
  } catch (const Error& e) {
    throw ConfigError(std::string("--graph: ") + e.what());
  }
}

DenseGraph graph_from_options(const std::string& graph_file, const std::string& family,
                              std::uint32_t q, std::uint32_t t, const std::string& poly_text = "",
                              bool exclude_origin = false) {
  if (!graph_file.empty()) return load_graph_arg(graph_file);
  if (family.empty()) throw ConfigError("provide --graph FILE or --family with --q/--t");
  return build_by_family(family, q, t, poly_text, exclude_origin);
}

VertexSet subset_from_file(const std::string& path, std::uint32_t n) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read subset file " + path);
  std::vector<std::uint32_t> members;
  std::uint64_t v;
  while (in >> v) {
    if (v >= n) throw ConfigError("subset vertex " + std::to_string(v) + " out of range");
    members.push_back(static_cast<std::uint32_t>(v));
  }
  return VertexSet(std::move(members));
}

Pattern pattern_from_file(const std::string& path) {
  const Json doc = load_json(path);
  const auto pairs = [&](const char* key) {
    std::vector<IndexPair> out;
    if (!doc.contains(key)) return out;
    for (const auto& pair : doc.at(key))
      out.push_back({pair.at(0).get<std::uint8_t>(), pair.at(1).get<std::uint8_t>()});
    return out;
  };
  return Pattern(doc.at("k").get<std::uint8_t>(), pairs("required"), pairs("forbidden"), pairs("distinct"));
}

struct CountSpec {
  std::string name;
  std::function<BigInt(const DenseGraph&, const VertexSet&, const WorkBudget&)> run;
};

CountSpec resolve_counter(const std::string& config) {
  const auto fixed = [&](const char* name, auto fn) {
    return CountSpec{name, [fn](const DenseGraph& g, const VertexSet& u, const WorkBudget&) { return fn(g, u); }};
  };
  if (config == "H1") return fixed("H1", [](const DenseGraph& g, const VertexSet& u) { return count_H1(g, u); });
  if (config == "H2") return fixed("H2", [](const DenseGraph& g, const VertexSet& u) { return count_H2(g, u); });
  if (config == "H3")
    return {"H3", [](const DenseGraph& g, const VertexSet& u, const WorkBudget& b) { return count_H3(g, u, b); }};
  if (config == "H3plus")
    return {"H3plus",
            [](const DenseGraph& g, const VertexSet& u, const WorkBudget& b) { return count_H3plus(g, u, b); }};
  if (config == "H3minus")
    return fixed("H3minus", [](const DenseGraph& g, const VertexSet& u) { return count_H3minus(g, u); });
  if (config == "H4") return fixed("H4", [](const DenseGraph& g, const VertexSet& u) { return count_H4(g, u); });
  if (config.rfind("Pk:", 0) == 0) {
    const std::uint32_t k = std::stoul(config.substr(3));
    return {"P" + std::to_string(k),
            [k](const DenseGraph& g, const VertexSet& u, const WorkBudget&) { return count_paths(g, u, k); }};
  }
  if (config.rfind("Cm:", 0) == 0) {
    const std::uint32_t m = std::stoul(config.substr(3));
    return {"C" + std::to_string(m),
            [m](const DenseGraph& g, const VertexSet& u, const WorkBudget&) { return count_cycles(g, u, m); }};
  }
  if (config.rfind("pattern:", 0) == 0) {
    const Pattern pat = [&] {
      try {
        return pattern_from_file(config.substr(8));
      } catch (const Error& e) {
        throw ConfigError(std::string("--config pattern: ") + e.what());
      }
    }();
    return {"pattern", [pat](const DenseGraph& g, const VertexSet& u, const WorkBudget& b) {
              return count_pattern_bruteforce(g, u, pat, b);
            }};
  }
  throw ConfigError("unknown count config: " + config);
}

void emit_suite(const SuiteResult& result, const std::string& csv_out, const std::string& json_out) {
  for (const auto& line : result.summary) std::cout << line << "\n";
  if (!csv_out.empty()) result.csv.write(csv_out);
  if (!json_out.empty()) save_json(result.report(), json_out);
  std::cout << (result.pass ? "PASS" : "FAIL") << "\n";
}

int run_sweep_config(const std::string& config_path) {
  const Config cfg = Config::parse_file(config_path);
  DenseGraph g = [&] {
    if (cfg.has("graph", "graph")) return load_graph_arg(cfg.get("graph", "graph"));
    return build_by_family(cfg.get("graph", "family"),
                           static_cast<std::uint32_t>(cfg.get_int("graph", "q")),
                           static_cast<std::uint32_t>(cfg.get_int("graph", "t")),
                           cfg.get_or("graph", "poly", ""), cfg.get_bool_or("graph", "exclude_origin", false));
  }();
  const SpectralProfile profile = spectral_profile(g);

  SweepOptions opt;
  if (cfg.has("sweep", "sizes")) opt.sizes = cfg.get_double_list("sweep", "sizes");
  opt.trials = static_cast<std::uint64_t>(cfg.get_int_or("sweep", "trials", 3));
  opt.target_k = static_cast<std::uint32_t>(cfg.get_int_or("sweep", "target_k", 3));
  opt.budget = static_cast<std::uint64_t>(cfg.get_int_or("sweep", "budget", 100000));
  opt.seed = static_cast<std::uint64_t>(cfg.get_int_or("sweep", "seed", 1));
  opt.run_exact = cfg.get_bool_or("sweep", "exact", false);
  opt.exact_scan_budget = static_cast<std::uint64_t>(cfg.get_int_or("sweep", "exact_budget", 5000000));
  opt.threshold_C = cfg.get_double_or("thresholds", "C", 1.0);

  const std::string outdir = cfg.get_or("output", "dir", "sweep-out");
  fs::create_directories(outdir);

  SweepOutput out = run_vc_sweep(g, profile, opt);
  out.suite.csv.write(outdir + "/sweep.csv");
  save_json(out.suite.report(), outdir + "/sweep.json");
  write_plot_data(outdir + "/vc_vs_size.dat", out.median_points);

  std::vector<std::pair<std::string, std::vector<std::pair<double, double>>>> series;
  series.emplace_back("median VC", out.median_points);
  double ymax = 0;
  for (const auto& [x, y] : out.median_points) ymax = std::max(ymax, y);
  for (std::size_t i = 0; i < out.thresholds.size(); ++i) {
    const double x = out.threshold_values[i];
    if (x <= g.n())
      series.emplace_back(out.thresholds[i].name,
                          std::vector<std::pair<double, double>>{{x, 0.0}, {x, std::max(1.0, ymax)}});
  }
  write_svg_line_chart(outdir + "/vc_vs_size.svg", "empirical VC vs |U| (" + g.meta().family + ")",
                       "|U|", "median VC lower bound", series);
  for (const auto& line : out.suite.summary) std::cout << line << "\n";
  std::cout << "wrote " << outdir << "/{sweep.csv,sweep.json,vc_vs_size.dat,vc_vs_size.svg}\n";
  return kExitPass;
}

int merge_reports(const std::string& in_dir, const std::string& out_file) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(in_dir))
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  Json merged;
  merged["schema"] = "vclab-report-v1";
  merged["generated"] = utc_timestamp();
  Json records = Json::array();
  for (const auto& path : files) {
    Json doc;
    try {
      doc = load_json(path.string());
    } catch (const std::exception&) {
      continue;
    }
    if (!doc.is_object() || !doc.contains("schema") || doc["schema"] != "vclab-report-v1") continue;
    for (const auto& rec : doc.at("records")) records.push_back(rec);
  }
  merged["records"] = records;
  save_json(merged, out_file);
  std::cout << "merged " << records.size() << " records from " << files.size() << " files into " << out_file
            << "\n";
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pseudo-random graph configuration counting and VC-dimension laboratory"};
  app.require_subcommand(1);

  // ---- build
  auto* build = app.add_subcommand("build", "construct a graph and write its cache file");
  std::string build_family, build_out, build_poly;
  std::uint32_t build_q = 3, build_t = 2;
  bool build_exclude_origin = false, build_strip_loops = false;
  build->add_option("--family", build_family, "distance|dotproduct|polynomial")->required();
  build->add_option("--q", build_q, "prime field size")->required();
  build->add_option("--t", build_t, "dimension")->required();
  build->add_option("--out", build_out, "output graph cache file");
  build->add_option("--poly", build_poly, "polynomial (family=polynomial), e.g. 'x1*y1+x2*y2'");
  build->add_flag("--exclude-origin", build_exclude_origin, "drop the origin vertex (polynomial family)");
  build->add_flag("--strip-loops", build_strip_loops, "clear the diagonal after building");

  // ---- spectrum
  auto* spectrum = app.add_subcommand("spectrum", "eigenvalues, degree and lambda of a cached graph");
  std::string spectrum_graph, spectrum_out;
  spectrum->add_option("--graph", spectrum_graph, "graph cache file")->required();
  spectrum->add_option("--out", spectrum_out, "write the spectrum cache here");

  // ---- count
  auto* count = app.add_subcommand("count", "exact configuration counts");
  std::string count_graph, count_config, count_subset;
  std::uint64_t count_trials = 1, count_seed = 1, count_budget = 1'000'000'000;
  std::int64_t count_subset_size = -1;
  count->add_option("--graph", count_graph, "graph cache file")->required();
  count->add_option("--config", count_config,
                    "H1|H2|H3|H3plus|H3minus|H4|Pk:K|Cm:M|pattern:FILE")->required();
  count->add_option("--subset", count_subset, "file with whitespace-separated vertex indices");
  count->add_option("--subset-size", count_subset_size, "sample random subsets of this size");
  count->add_option("--trials", count_trials, "number of sampled subsets");
  count->add_option("--seed", count_seed, "sampling seed");
  count->add_option("--budget", count_budget, "work budget in constraint checks");

  // ---- vc
  auto* vc = app.add_subcommand("vc", "VC-dimension search");
  std::string vc_graph;
  bool vc_exact = false;
  std::int64_t vc_at_least_k = -1;
  std::uint64_t vc_budget = 100'000, vc_seed = 1;
  vc->add_option("--graph", vc_graph, "graph cache file")->required();
  auto* vc_exact_flag = vc->add_flag("--exact", vc_exact, "levelwise exact search (default)");
  vc->add_option("--at-least", vc_at_least_k, "randomized witness search for VC >= K")
      ->excludes(vc_exact_flag);
  vc->add_option("--budget", vc_budget, "candidate budget");
  vc->add_option("--seed", vc_seed, "search seed");

  // ---- verify
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  std::string verify_suite, verify_graph, verify_family, verify_csv, verify_json, verify_mode = "exhaustive";
  std::uint32_t verify_q = 5, verify_t = 2;
  std::uint64_t verify_trials = 1000, verify_seed = 1, verify_budget = 1'000'000'000, verify_triples = 100;
  double verify_tol = 1e-9, verify_K = 10.0;
  std::vector<double> verify_sizes = {0.5, 0.75, 1.0};
  std::vector<std::uint32_t> verify_cycles = {3, 4, 5, 6};
  verify->add_option("--suite", verify_suite, "mixing|tensor-mixing|counts|geometry|quadruple|selector")
      ->required();
  verify->add_option("--graph", verify_graph, "graph cache file");
  verify->add_option("--family", verify_family, "distance|dotproduct (built on the fly)");
  verify->add_option("--q", verify_q, "prime field size");
  verify->add_option("--t", verify_t, "dimension");
  verify->add_option("--trials", verify_trials, "trial count");
  verify->add_option("--seed", verify_seed, "master seed");
  verify->add_option("--tol", verify_tol, "numerical slack");
  verify->add_option("--K", verify_K, "theorem-shape constant");
  verify->add_option("--sizes", verify_sizes, "subset sizes (<=1: fraction of n)")->delimiter(',');
  verify->add_option("--cycles", verify_cycles, "cycle lengths for the C_m rows")->delimiter(',');
  verify->add_option("--budget", verify_budget, "work budget / sample count");
  verify->add_option("--triples", verify_triples, "selector suite: sampled triples");
  verify->add_option("--mode", verify_mode, "quadruple suite: exhaustive|randomized");
  verify->add_option("--out", verify_csv, "CSV output file");
  verify->add_option("--json", verify_json, "JSON report output file");

  // ---- sweep
  auto* sweep = app.add_subcommand("sweep", "VC sweep driven by a config file");
  std::string sweep_config;
  sweep->add_option("--config", sweep_config, "experiment config file")->required();

  // ---- report
  auto* report = app.add_subcommand("report", "merge JSON reports from a directory");
  std::string report_in, report_out;
  report->add_option("--in", report_in, "directory of vclab-report-v1 JSON files")->required();
  report->add_option("--out", report_out, "merged report file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (build->parsed()) {
      DenseGraph g = build_by_family(build_family, build_q, build_t, build_poly, build_exclude_origin);
      if (build_strip_loops) {
        GraphMeta meta = g.meta();
        auto labels = g.labels();
        DenseGraph stripped = g.without_loops();
        stripped.set_meta(meta);
        stripped.set_labels(labels);
        g = stripped;
      }
      Json info;
      info["family"] = g.meta().family;
      info["n"] = g.n();
      info["loops"] = g.has_loops();
      info["regular_degree"] = g.regular_degree() ? Json(*g.regular_degree()) : Json(nullptr);
      info["hash"] = graph_hash(g);
      if (!build_out.empty()) {
        save_graph(g, build_out);
        info["out"] = build_out;
      }
      std::cout << info.dump() << "\n";
      return kExitPass;
    }

    if (spectrum->parsed()) {
      const DenseGraph g = load_graph_arg(spectrum_graph);
      const SpectralProfile profile = spectral_profile(g);
      std::optional<double> lambda_noloop;
      if (g.has_loops()) lambda_noloop = spectral_profile(g.without_loops()).lambda;
      const Json doc = spectrum_to_json(profile, graph_hash(g), lambda_noloop);
      if (!spectrum_out.empty()) save_json(doc, spectrum_out);
      std::cout << doc.dump() << "\n";
      return kExitPass;
    }

    if (count->parsed()) {
      const DenseGraph g = load_graph_arg(count_graph);
      const CountSpec counter = resolve_counter(count_config);
      const WorkBudget budget{count_budget};
      const auto run_one = [&](const VertexSet& u, std::uint64_t trial, std::uint64_t seed_used) {
        Json line;
        line["config"] = counter.name;
        line["U_size"] = u.size();
        line["trial"] = trial;
        line["seed"] = seed_used;
        line["count"] = counter.run(g, u, budget).str();
        std::cout << line.dump() << "\n";
      };
      if (!count_subset.empty()) {
        run_one(subset_from_file(count_subset, g.n()), 0, 0);
      } else if (count_subset_size >= 0) {
        if (count_subset_size > g.n()) throw ConfigError("--subset-size exceeds n");
        for (std::uint64_t trial = 0; trial < count_trials; ++trial) {
          const std::uint64_t trial_seed = derive_seed(count_seed, trial);
          Rng rng(trial_seed);
          std::vector<std::uint32_t> pool(g.n());
          std::iota(pool.begin(), pool.end(), 0u);
          run_one(VertexSet(rng.sample(pool, count_subset_size)), trial, trial_seed);
        }
      } else {
        run_one(VertexSet::full(g.n()), 0, 0);
      }
      return kExitPass;
    }

    if (vc->parsed()) {
      const DenseGraph g = load_graph_arg(vc_graph);
      const VertexSet all = VertexSet::full(g.n());
      Json doc;
      if (vc_at_least_k >= 0) {
        const auto witness = vc_at_least(g, all, static_cast<std::uint32_t>(vc_at_least_k), vc_budget, vc_seed);
        doc["mode"] = "at-least";
        doc["k"] = vc_at_least_k;
        doc["found"] = witness.has_value();
        if (witness) doc["witness"] = witness_to_json(*witness);
        std::cout << doc.dump() << "\n";
        return witness ? kExitPass : kExitFail;
      }
      (void)vc_exact;  // default mode
      VcSearchOptions opts;
      opts.max_shatter_scans = vc_budget;
      const VcExactResult result = vc_dimension_exact(g, all, opts);
      doc["mode"] = "exact";
      doc["dimension"] = result.dimension;
      doc["exact"] = result.exact;
      doc["stopped_by"] = result.stopped_by == VcStop::none ? "none"
                          : result.stopped_by == VcStop::budget ? "budget" : "retention";
      doc["witness"] = witness_to_json(result.witness);
      std::cout << doc.dump() << "\n";
      return kExitPass;
    }

    if (verify->parsed()) {
      const auto need_graph = [&]() {
        DenseGraph g = graph_from_options(verify_graph, verify_family, verify_q, verify_t);
        return g;
      };
      if (verify_suite == "mixing" || verify_suite == "tensor-mixing") {
        const DenseGraph g = need_graph();
        const SpectralProfile profile = spectral_profile(g);
        const SuiteResult result =
            run_mixing_suite(g, profile, verify_trials, verify_seed, verify_tol, verify_suite == "tensor-mixing");
        emit_suite(result, verify_csv, verify_json);
        return result.pass ? kExitPass : kExitFail;
      }
      if (verify_suite == "counts") {
        const DenseGraph g = need_graph();
        const SpectralProfile profile = spectral_profile(g);
        CountsOptions opt;
        opt.sizes = verify_sizes;
        opt.trials = verify_trials;
        opt.K = verify_K;
        opt.seed = verify_seed;
        opt.cycles = verify_cycles;
        opt.budget = WorkBudget{verify_budget};
        const SuiteResult result = run_counts_suite(g, profile, opt);
        emit_suite(result, verify_csv, verify_json);
        return result.pass ? kExitPass : kExitFail;
      }
      if (verify_suite == "geometry") {
        const SuiteResult result = run_geometry_suite(verify_q, verify_t, WorkBudget{verify_budget});
        emit_suite(result, verify_csv, verify_json);
        return result.pass ? kExitPass : kExitFail;
      }
      if (verify_suite == "quadruple") {
        QuadrupleOptions opt;
        opt.exhaustive = verify_mode == "exhaustive";
        opt.budget = verify_budget;
        opt.seed = verify_seed;
        const SuiteResult result = run_quadruple_suite(verify_q, opt);
        emit_suite(result, verify_csv, verify_json);
        return result.pass ? kExitPass : kExitFail;
      }
      if (verify_suite == "selector") {
        const DenseGraph g = need_graph();
        const SuiteResult result = run_selector_suite(g, verify_triples, verify_seed);
        emit_suite(result, verify_csv, verify_json);
        return result.pass ? kExitPass : kExitFail;
      }
      throw ConfigError("unknown suite: " + verify_suite);
    }

    if (sweep->parsed()) return run_sweep_config(sweep_config);
    if (report->parsed()) return merge_reports(report_in, report_out);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
  return kExitUsage;
}
