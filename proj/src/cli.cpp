#include "sgdmds/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "sgdmds/bench.hpp"
#include "sgdmds/datasets.hpp"
#include "sgdmds/sgd.hpp"
#include "sgdmds/smacof.hpp"
#include "sgdmds/svg_plot.hpp"

namespace sgdmds::cli {

namespace fs = std::filesystem;

namespace {

struct SolverFlags {
  int epochs = 30;
  double eta0 = 0.5;
  double switch_frac = 0.4;
  double decay_ratio = 10.0;
  double early_stop = 1e-3;
  std::size_t trace_samples = 0;
  int max_iter = 300;
  double rel_tol = 1e-4;
  std::size_t dim = 2;
  std::uint64_t seed = 0;
  double init_scale = 0.0;
  std::string weights = "uniform";
};

void add_solver_flags(CLI::App* cmd, SolverFlags& f) {
  cmd->add_option("--epochs", f.epochs, "SGD epochs")->capture_default_str()->check(CLI::PositiveNumber);
  cmd->add_option("--eta0", f.eta0, "SGD base learning rate")->capture_default_str();
  cmd->add_option("--switch-frac", f.switch_frac, "fraction of epochs in the exponential phase")
      ->capture_default_str();
  cmd->add_option("--decay-ratio", f.decay_ratio, "learning-rate drop over the exponential phase")
      ->capture_default_str();
  cmd->add_option("--early-stop-tol", f.early_stop, "SGD relative stress change that stops a run (0 = off)")
      ->capture_default_str();
  cmd->add_option("--trace-samples", f.trace_samples, "trace with sampled stress using this many pairs");
  cmd->add_option("--max-iter", f.max_iter, "SMACOF iteration budget")->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd->add_option("--rel-tol", f.rel_tol, "SMACOF relative improvement tolerance")->capture_default_str();
  cmd->add_option("--dim", f.dim, "target dimension")->capture_default_str()->check(CLI::PositiveNumber);
  cmd->add_option("--seed", f.seed, "solver seed")->capture_default_str();
  cmd->add_option("--init-scale", f.init_scale, "initial box width (0 = max sampled dissimilarity)");
  cmd->add_option("--weights", f.weights, "pair weights")
      ->capture_default_str()
      ->check(CLI::IsMember({"uniform", "invsq"}));
}

WeightScheme weights_from(const SolverFlags& f) {
  return f.weights == "invsq" ? WeightScheme::inverse_square() : WeightScheme::uniform();
}

SgdConfig sgd_config_from(const SolverFlags& f) {
  SgdConfig c;
  c.n_epochs = f.epochs;
  c.eta0 = f.eta0;
  c.switch_fraction = f.switch_frac;
  c.decay_ratio = f.decay_ratio;
  c.early_stop_rel_tol = f.early_stop;
  c.dim = f.dim;
  c.rng_seed = f.seed;
  if (f.init_scale > 0.0) c.init_scale = f.init_scale;
  if (f.trace_samples > 0) c.trace_stress = TracePolicy::sampled(f.trace_samples);
  c.validate();
  return c;
}

SmacofConfig smacof_config_from(const SolverFlags& f) {
  SmacofConfig c;
  c.max_iter = f.max_iter;
  c.rel_tol = f.rel_tol;
  c.dim = f.dim;
  c.rng_seed = f.seed;
  if (f.init_scale > 0.0) c.init_scale = f.init_scale;
  c.validate();
  return c;
}

ProviderMode mode_from(const std::string& s) {
  return s == "lazy" ? ProviderMode::Lazy : ProviderMode::Precomputed;
}

/// "n,d,k,std[,box]"
BlobSpec parse_blob_spec(const std::string& text, std::uint64_t seed) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string p; std::getline(ss, p, ',');) parts.push_back(p);
  if (parts.size() < 3 || parts.size() > 5)
    throw ConfigError("--blobs expects n,d,k[,std[,box]], got '" + text + "'");
  BlobSpec spec;
  try {
    spec.n = std::stoul(parts[0]);
    spec.d = std::stoul(parts[1]);
    spec.k_clusters = std::stoul(parts[2]);
    if (parts.size() > 3) spec.cluster_std = std::stod(parts[3]);
    if (parts.size() > 4) spec.center_box = std::stod(parts[4]);
  } catch (const std::exception&) {
    throw ConfigError("--blobs expects numbers, got '" + text + "'");
  }
  spec.rng_seed = seed;
  spec.validate();
  return spec;
}

std::string sanitize(const std::string& name) {
  std::string out;
  for (char c : name) out += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.') ? c : '_';
  return out.empty() ? "dataset" : out;
}

std::string unique_name(std::string base, std::set<std::string>& used) {
  base = sanitize(base);
  std::string name = base;
  for (int k = 2; used.count(name); ++k) name = base + "_" + std::to_string(k);
  used.insert(name);
  return name;
}

template <typename Fn>
int guarded(const std::string& command, std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const ConfigError& e) {
    err << "sgdmds " << command << ": " << e.what() << '\n';
    return kUsageError;
  } catch (const DataError& e) {
    err << "sgdmds " << command << ": " << e.what() << '\n';
    return kDataError;
  } catch (const CapacityError& e) {
    err << "sgdmds " << command << ": " << e.what() << '\n';
    return kSolverFailure;
  } catch (const SolverError& e) {
    err << "sgdmds " << command << ": " << e.what() << '\n';
    return kSolverFailure;
  } catch (const std::exception& e) {
    err << "sgdmds " << command << ": " << e.what() << '\n';
    return kDataError;
  }
}

// --- embed -----------------------------------------------------------------

struct EmbedArgs {
  std::string input;
  std::string dissim;
  std::string blobs;
  std::uint64_t data_seed = 0;
  std::string solver = "sgd";
  std::string mode = "precomputed";
  SolverFlags flags;
  std::string out;
  std::string trace;
  std::string plot;
};

int cmd_embed(const EmbedArgs& a, std::ostream& out) {
  const int sources = !a.input.empty() + !a.dissim.empty() + !a.blobs.empty();
  if (sources != 1) throw ConfigError("give exactly one of --input, --dissim, --blobs");
  const ProviderMode mode = mode_from(a.mode);
  if (!a.dissim.empty() && mode == ProviderMode::Lazy)
    throw ConfigError("lazy mode needs feature input; dissimilarity matrices are inherently precomputed");
  const WeightScheme weights = weights_from(a.flags);
  const std::optional<SgdConfig> sgd_cfg =
      a.solver == "sgd" ? std::optional(sgd_config_from(a.flags)) : std::nullopt;
  const std::optional<SmacofConfig> smacof_cfg =
      a.solver == "smacof" ? std::optional(smacof_config_from(a.flags)) : std::nullopt;

  std::shared_ptr<const Dataset> dataset;
  std::optional<DissimilarityProvider> provider;
  if (!a.dissim.empty()) {
    provider = load_dissimilarity_csv(a.dissim);
  } else {
    dataset = std::make_shared<const Dataset>(
        a.blobs.empty() ? load_feature_csv_auto(a.input) : generate_blobs(parse_blob_spec(a.blobs, a.data_seed)));
    provider = mode == ProviderMode::Precomputed ? make_precomputed_provider(*dataset) : make_lazy_provider(dataset);
  }

  Embedding emb;
  SolverTrace trace;
  if (sgd_cfg) {
    SgdConfig cfg = *sgd_cfg;
    cfg.mode = mode == ProviderMode::Precomputed ? SgdMode::PairStream : SgdMode::LazySample;
    SgdResult r = fit_sgd(*provider, weights, cfg);
    emb = std::move(r.embedding);
    trace = std::move(r.trace);
  } else {
    SmacofResult r = fit_smacof(*provider, weights, *smacof_cfg);
    emb = std::move(r.embedding);
    trace = std::move(r.trace);
  }

  const std::vector<std::string> none;
  const std::vector<std::string>& labels = dataset ? dataset->labels() : none;
  if (!a.out.empty()) save_embedding_csv(emb, &labels, a.out);
  if (!a.trace.empty()) save_trace_csv(trace, a.trace);
  if (!a.plot.empty()) {
    if (emb.dim() < 2) throw ConfigError("--plot needs --dim >= 2");
    const std::string title = a.solver + " embedding" + (dataset ? " of " + dataset->name() : std::string());
    svg::write_file(a.plot, svg::scatter(emb, labels, title));
  }
  if (!trace.empty()) {
    out << a.solver << ": " << trace.back().step << " steps, normalized stress "
        << format_real(trace.back().normalized_stress) << ", " << format_real(trace.back().elapsed_seconds)
        << " s\n";
  }
  return kSuccess;
}

// --- bench -----------------------------------------------------------------

struct BenchArgs {
  std::vector<std::string> blobs;
  std::vector<std::string> inputs;
  std::vector<std::string> dissims;
  std::uint64_t data_seed = 0;
  std::size_t seeds = 10;
  std::vector<std::string> solvers = {"sgd", "smacof"};
  std::string mode = "precomputed";
  SolverFlags flags;
  std::string out_dir;
  bool parallel = false;
  bool log_time = false;
};

std::vector<bench::Solver> parse_solvers(const std::vector<std::string>& names) {
  std::vector<bench::Solver> out;
  for (const std::string& s : names) {
    if (s == "sgd")
      out.push_back(bench::Solver::Sgd);
    else if (s == "smacof")
      out.push_back(bench::Solver::Smacof);
    else
      throw ConfigError("unknown solver '" + s + "'");
  }
  if (out.empty()) throw ConfigError("no solvers selected");
  return out;
}

std::string series_group(const bench::BenchResult& r) {
  return r.solver == bench::Solver::Smacof ? std::string("smacof") : std::string("sgd-") + to_string(r.mode);
}

int cmd_bench(const BenchArgs& a, std::ostream& out) {
  if (a.blobs.empty() && a.inputs.empty() && a.dissims.empty())
    throw ConfigError("bench needs at least one --blobs, --input or --dissim dataset");
  if (a.seeds < 1) throw ConfigError("--seeds must be at least 1");
  const std::vector<bench::Solver> solvers = parse_solvers(a.solvers);
  const ProviderMode mode = mode_from(a.mode);
  const WeightScheme weights = weights_from(a.flags);
  const SgdConfig sgd_cfg = sgd_config_from(a.flags);
  const SmacofConfig smacof_cfg = smacof_config_from(a.flags);

  std::vector<bench::InputData> inputs;
  std::set<std::string> used;
  for (const std::string& b : a.blobs) {
    auto ds = std::make_shared<const Dataset>(generate_blobs(parse_blob_spec(b, a.data_seed)));
    inputs.push_back({unique_name(ds->name(), used), ds, nullptr});
  }
  for (const std::string& p : a.inputs) {
    auto ds = std::make_shared<const Dataset>(load_feature_csv_auto(p));
    inputs.push_back({unique_name(ds->name(), used), ds, nullptr});
  }
  for (const std::string& p : a.dissims) {
    auto prov = std::make_shared<const DissimilarityProvider>(load_dissimilarity_csv(p));
    inputs.push_back({unique_name(fs::path(p).stem().string(), used), nullptr, prov});
  }

  std::vector<std::pair<std::size_t, bench::CellSpec>> cells;
  for (std::size_t d = 0; d < inputs.size(); ++d) {
    for (bench::Solver solver : solvers) {
      for (std::size_t s = 0; s < a.seeds; ++s) {
        bench::CellSpec spec;
        spec.solver = solver;
        // The baseline always runs on the precomputed matrix.
        spec.mode = solver == bench::Solver::Smacof || inputs[d].dissimilarities ? ProviderMode::Precomputed : mode;
        spec.seed = a.flags.seed + s;
        spec.sgd = sgd_cfg;
        spec.smacof = smacof_cfg;
        spec.weights = weights;
        cells.emplace_back(d, spec);
      }
    }
  }

  const std::size_t threads = a.parallel ? bench::thread_cap_from_env() : 1;
  std::vector<bench::CellOutcome> outcomes = bench::run_cells(inputs, cells, threads);

  const fs::path dir(a.out_dir);
  fs::create_directories(dir / "traces");
  std::vector<bench::BenchResult> results;
  std::map<std::string, std::vector<svg::Series>> curves;
  for (const bench::CellOutcome& o : outcomes) {
    const bench::BenchResult& r = o.result;
    results.push_back(r);
    if (!r.ok()) continue;
    const std::string tag = r.dataset + "_" + bench::to_string(r.solver) + "_" + to_string(r.mode) + "_seed" +
                            std::to_string(r.seed);
    save_trace_csv(o.trace, dir / "traces" / (tag + ".csv"));
    svg::Series s;
    s.name = series_group(r) + " seed " + std::to_string(r.seed);
    s.group = series_group(r);
    for (const TraceEntry& e : o.trace.entries()) {
      s.x.push_back(r.provider_seconds + e.elapsed_seconds);
      s.y.push_back(e.normalized_stress);
    }
    curves[r.dataset].push_back(std::move(s));
  }
  bench::write_results_csv(results, dir / "results.csv");
  for (const bench::InputData& in : inputs) {
    svg::ChartOptions opt;
    opt.title = "Convergence on " + in.name;
    opt.x_label = "wall time [s]";
    opt.y_label = "normalized stress";
    opt.log_x = a.log_time;
    opt.log_y = true;
    svg::write_file(dir / ("convergence_" + in.name + ".svg"), svg::line_chart(curves[in.name], opt));
  }

  out << bench::format_summary(bench::summarize(results));
  const bool any_ok = std::any_of(results.begin(), results.end(), [](const auto& r) { return r.ok(); });
  if (threads > 1) out << "note: cells ran on " << threads << " threads; timing columns are unreliable\n";
  return any_ok ? kSuccess : kSolverFailure;
}

// --- scaling ---------------------------------------------------------------

struct ScalingArgs {
  std::vector<std::size_t> n_grid = {500, 1000, 2000, 3000, 5000};
  std::vector<std::size_t> d_list = {2, 16, 128};
  std::vector<std::string> solvers = {"smacof", "sgd-precomputed", "sgd-lazy"};
  std::size_t seeds = 3;
  std::size_t clusters = 5;
  double cluster_std = 1.0;
  std::uint64_t data_seed = 0;
  SolverFlags flags;
  std::string out_dir;
  bool parallel = false;
};

int cmd_scaling(const ScalingArgs& a, std::ostream& out) {
  if (a.seeds < 1) throw ConfigError("--seeds must be at least 1");
  if (a.n_grid.empty() || a.d_list.empty()) throw ConfigError("empty --n-grid or --d-list");
  struct Variant {
    std::string name;
    bench::Solver solver;
    ProviderMode mode;
  };
  std::vector<Variant> variants;
  for (const std::string& s : a.solvers) {
    if (s == "smacof")
      variants.push_back({s, bench::Solver::Smacof, ProviderMode::Precomputed});
    else if (s == "sgd-precomputed")
      variants.push_back({s, bench::Solver::Sgd, ProviderMode::Precomputed});
    else if (s == "sgd-lazy")
      variants.push_back({s, bench::Solver::Sgd, ProviderMode::Lazy});
    else
      throw ConfigError("unknown solver-mode '" + s + "' (use smacof, sgd-precomputed, sgd-lazy)");
  }
  const WeightScheme weights = weights_from(a.flags);
  const SgdConfig sgd_cfg = sgd_config_from(a.flags);
  const SmacofConfig smacof_cfg = smacof_config_from(a.flags);

  std::vector<bench::InputData> inputs;
  std::vector<std::pair<std::size_t, bench::CellSpec>> cells;
  for (std::size_t d : a.d_list) {
    for (std::size_t n : a.n_grid) {
      BlobSpec spec;
      spec.n = n;
      spec.d = d;
      spec.k_clusters = a.clusters;
      spec.cluster_std = a.cluster_std;
      spec.rng_seed = a.data_seed;
      auto ds = std::make_shared<const Dataset>(generate_blobs(spec));
      inputs.push_back({ds->name(), ds, nullptr});
      for (const Variant& v : variants) {
        for (std::size_t s = 0; s < a.seeds; ++s) {
          bench::CellSpec c;
          c.solver = v.solver;
          c.mode = v.mode;
          c.seed = a.flags.seed + s;
          c.sgd = sgd_cfg;
          c.smacof = smacof_cfg;
          c.weights = weights;
          cells.emplace_back(inputs.size() - 1, c);
        }
      }
    }
  }

  const std::size_t threads = a.parallel ? bench::thread_cap_from_env() : 1;
  const std::vector<bench::CellOutcome> outcomes = bench::run_cells(inputs, cells, threads);

  const fs::path dir(a.out_dir);
  fs::create_directories(dir);
  std::ofstream csv(dir / "scaling.csv", std::ios::binary | std::ios::trunc);
  if (!csv) throw std::runtime_error("cannot write " + (dir / "scaling.csv").string());
  csv << "N,D,solver,mode,seed,wall_time_to_stable,final_normalized_stress,error\n";
  std::map<std::size_t, std::map<std::string, svg::Series>> curves;
  for (std::size_t c = 0; c < outcomes.size(); ++c) {
    const bench::BenchResult& r = outcomes[c].result;
    const Dataset& ds = *inputs[cells[c].first].features;
    std::string error = r.error;
    std::replace(error.begin(), error.end(), ',', ';');
    csv << ds.size() << ',' << ds.dim() << ',' << bench::to_string(r.solver) << ',' << to_string(r.mode) << ','
        << r.seed << ',' << format_real(r.wall_time_to_stable) << ',' << format_real(r.final_normalized_stress)
        << ',' << error << '\n';
    if (!r.ok()) continue;
    const std::string key = series_group(r) + " seed " + std::to_string(r.seed);
    svg::Series& s = curves[ds.dim()][key];
    s.name = key;
    s.group = series_group(r);
    s.x.push_back(static_cast<double>(ds.size()));
    s.y.push_back(r.wall_time_to_stable);
  }
  csv.flush();
  if (!csv) throw std::runtime_error("write failed for scaling.csv");

  for (std::size_t d : a.d_list) {
    std::vector<svg::Series> series;
    for (auto& [key, s] : curves[d]) series.push_back(s);
    svg::ChartOptions opt;
    opt.title = "Time to stable vs N (D = " + std::to_string(d) + ")";
    opt.x_label = "N";
    opt.y_label = "wall time to stable [s]";
    opt.log_y = true;
    svg::write_file(dir / ("runtime_D" + std::to_string(d) + ".svg"), svg::line_chart(series, opt));
  }

  // Median time-to-stable table.
  std::map<std::tuple<std::size_t, std::size_t, std::string>, std::vector<double>> times;
  for (const bench::CellOutcome& o : outcomes) {
    if (!o.result.ok()) continue;
    times[{o.result.d, o.result.n, series_group(o.result)}].push_back(o.result.wall_time_to_stable);
  }
  out << "D      N      solver            median_time_to_stable\n";
  for (const auto& [key, values] : times) {
    const auto& [d, n, group] = key;
    out << std::left << std::setw(7) << d << std::setw(7) << n << std::setw(18) << group
        << format_real(bench::median(values)) << '\n';
  }
  return kSuccess;
}

// --- gen -------------------------------------------------------------------

struct GenArgs {
  std::string blobs;
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_gen(const GenArgs& a, std::ostream& out) {
  const Dataset ds = generate_blobs(parse_blob_spec(a.blobs, a.seed));
  save_feature_csv(ds, a.out);
  out << "wrote " << ds.size() << " rows x " << ds.dim() << " features to " << a.out << '\n';
  return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Metric MDS by per-pair stochastic gradient descent, with a SMACOF baseline", "sgdmds"};
  app.require_subcommand(1);

  EmbedArgs embed;
  auto* e = app.add_subcommand("embed", "embed one dataset with one solver");
  e->add_option("--input", embed.input, "feature CSV");
  e->add_option("--dissim", embed.dissim, "square dissimilarity matrix CSV");
  e->add_option("--blobs", embed.blobs, "synthetic blobs n,d,k[,std[,box]]");
  e->add_option("--data-seed", embed.data_seed, "seed for --blobs")->capture_default_str();
  e->add_option("--solver", embed.solver, "solver")->capture_default_str()->check(CLI::IsMember({"sgd", "smacof"}));
  e->add_option("--mode", embed.mode, "dissimilarity mode")
      ->capture_default_str()
      ->check(CLI::IsMember({"precomputed", "lazy"}));
  add_solver_flags(e, embed.flags);
  e->add_option("--out", embed.out, "embedding CSV output");
  e->add_option("--trace", embed.trace, "trace CSV output");
  e->add_option("--plot", embed.plot, "SVG scatter output");

  BenchArgs bench_args;
  auto* b = app.add_subcommand("bench", "multi-seed solver comparison");
  b->add_option("--blobs", bench_args.blobs, "synthetic blobs n,d,k[,std[,box]] (repeatable)");
  b->add_option("--input", bench_args.inputs, "feature CSV (repeatable)");
  b->add_option("--dissim", bench_args.dissims, "dissimilarity matrix CSV (repeatable)");
  b->add_option("--data-seed", bench_args.data_seed, "seed for --blobs")->capture_default_str();
  b->add_option("--seeds", bench_args.seeds, "runs per (dataset, solver)")->capture_default_str();
  b->add_option("--solvers", bench_args.solvers, "solvers to compare")->delimiter(',')->capture_default_str();
  b->add_option("--mode", bench_args.mode, "SGD dissimilarity mode")
      ->capture_default_str()
      ->check(CLI::IsMember({"precomputed", "lazy"}));
  add_solver_flags(b, bench_args.flags);
  b->add_option("--out-dir", bench_args.out_dir, "output directory")->required();
  b->add_flag("--parallel", bench_args.parallel, "run cells on STRESS_SGD_THREADS workers");
  b->add_flag("--log-time", bench_args.log_time, "log-scale time axis in convergence plots");

  ScalingArgs scaling;
  auto* s = app.add_subcommand("scaling", "runtime versus N on synthetic blobs");
  s->add_option("--n-grid", scaling.n_grid, "point counts")->delimiter(',')->capture_default_str();
  s->add_option("--d-list", scaling.d_list, "feature dimensions")->delimiter(',')->capture_default_str();
  s->add_option("--solvers", scaling.solvers, "smacof, sgd-precomputed, sgd-lazy")
      ->delimiter(',')
      ->capture_default_str();
  s->add_option("--seeds", scaling.seeds, "runs per cell")->capture_default_str();
  s->add_option("--clusters", scaling.clusters, "blob clusters")->capture_default_str();
  s->add_option("--cluster-std", scaling.cluster_std, "blob spread")->capture_default_str();
  s->add_option("--data-seed", scaling.data_seed, "seed for the blobs")->capture_default_str();
  add_solver_flags(s, scaling.flags);
  s->add_option("--out-dir", scaling.out_dir, "output directory")->required();
  s->add_flag("--parallel", scaling.parallel, "run cells on STRESS_SGD_THREADS workers");

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "write a synthetic blob dataset");
  g->add_option("--blobs", gen.blobs, "n,d,k[,std[,box]]")->required();
  g->add_option("--seed", gen.seed, "generator seed")->capture_default_str();
  g->add_option("--out", gen.out, "feature CSV output")->required();

  std::vector<const char*> argv{"sgdmds"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& ex) {
    return app.exit(ex, out, err);
  } catch (const CLI::CallForAllHelp& ex) {
    return app.exit(ex, out, err);
  } catch (const CLI::ParseError& ex) {
    err << "sgdmds: " << ex.what() << '\n';
    return kUsageError;
  }

  if (e->parsed()) return guarded("embed", err, [&] { return cmd_embed(embed, out); });
  if (b->parsed()) return guarded("bench", err, [&] { return cmd_bench(bench_args, out); });
  if (s->parsed()) return guarded("scaling", err, [&] { return cmd_scaling(scaling, out); });
  if (g->parsed()) return guarded("gen", err, [&] { return cmd_gen(gen, out); });
  err << "sgdmds: no subcommand\n";
  return kUsageError;
}

int run(int argc, const char* const* argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace sgdmds::cli
