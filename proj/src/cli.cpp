#include "twlab/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "twlab/errors.hpp"
#include "twlab/experiments.hpp"
#include "twlab/generators.hpp"
#include "twlab/graph.hpp"
#include "twlab/partitions.hpp"
#include "twlab/treewidth.hpp"
#include "twlab/verify.hpp"

namespace twlab::cli {

namespace {

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open '" + path + "' for reading");
  return in;
}

// Writes to `path`, or to `fallback` when the path is empty or "-".
void emit(const std::string& path, std::ostream& fallback, const std::function<void(std::ostream&)>& write) {
  if (path.empty() || path == "-") {
    write(fallback);
    return;
  }
  std::ofstream file(path);
  if (!file) throw std::invalid_argument("cannot open '" + path + "' for writing");
  write(file);
  if (!file) throw std::runtime_error("write to '" + path + "' failed");
}

SimpleGraph load_graph(const std::string& path) {
  auto in = open_in(path);
  // Parallel edges do not change treewidth or component structure.
  return simplify(read_edge_list(in));
}

struct GenOptions {
  std::string model;
  std::size_t n = 0;
  std::optional<std::size_t> m;
  std::optional<double> p;
  std::optional<std::size_t> k;
  std::uint64_t seed = 0;
  std::string out;
};

struct TwOptions {
  std::string in;
  std::string method;
  std::size_t l = 5;
  std::string format = "text";
  std::string decomposition;
};

struct PartitionOptions {
  std::string in;
  std::size_t l = 0;
  std::size_t d = 0;
  std::string mode;
  std::string partition;
  std::string out;
  std::string format = "text";
};

struct VerifyCliOptions {
  std::string suite;
  verify::VerifyOptions opt;
  std::string format = "text";
};

struct ExperimentOptions {
  std::string config;
  std::string out;
  std::size_t threads = 1;
  bool timings = false;
  std::string summary;
};

struct PlotOptions {
  std::string in;
  std::string x;
  std::string y;
  std::string out;
};

template <typename T>
T require(const std::optional<T>& v, const std::string& flag, const std::string& model) {
  if (!v) throw std::invalid_argument("--model " + model + " needs " + flag);
  return *v;
}

int do_gen(const GenOptions& o, std::ostream& out) {
  const Seed seed{o.seed, 0};
  if (o.model == "gnm") {
    const auto g = gen_gnm({o.n, require(o.m, "--m", o.model)}, seed);
    emit(o.out, out, [&](std::ostream& s) { write_edge_list(s, g); });
  } else if (o.model == "gnm-rep") {
    const auto g = gen_gnm_replacement({o.n, require(o.m, "--m", o.model)}, seed);
    emit(o.out, out, [&](std::ostream& s) { write_edge_list(s, g); });
  } else if (o.model == "rig") {
    const auto sample = gen_rig({o.n, require(o.m, "--m", o.model), require(o.p, "--p", o.model)}, seed);
    emit(o.out, out, [&](std::ostream& s) { write_edge_list(s, sample.graph); });
  } else if (o.model == "ba") {
    const auto g = gen_ba({o.n, require(o.m, "--m", o.model)}, seed);
    emit(o.out, out, [&](std::ostream& s) { write_edge_list(s, g); });
  } else if (o.model == "ktree") {
    const auto g = gen_ktree(require(o.k, "--k", o.model), o.n, seed);
    emit(o.out, out, [&](std::ostream& s) { write_edge_list(s, g); });
  }
  return kOk;
}

int do_tw(const TwOptions& o, std::ostream& out) {
  const SimpleGraph g = load_graph(o.in);
  const bool csv = o.format == "csv";
  if (o.method == "separator") {
    const auto cert = lower_bound_separator(g, o.l);
    if (csv) {
      out << "method,l,result\nseparator," << o.l << ',' << (cert.certifies_above() ? "above" : "inconclusive") << '\n';
    } else if (cert.certifies_above()) {
      out << "tw > " << o.l << " (no balanced " << o.l << "-partition)\n";
    } else {
      out << "inconclusive (balanced " << o.l << "-partition exists)\n";
      write_partition(out, *cert.witness);
    }
    return kOk;
  }

  std::optional<TreeDecomposition> td;
  int width = 0;
  if (o.method == "exact") {
    auto r = exact_treewidth(g);
    width = r.width;
    td = std::move(r.decomposition);
  } else if (o.method == "min-fill" || o.method == "min-degree") {
    auto r = heuristic_upper(g, o.method == "min-fill" ? EliminationRule::min_fill : EliminationRule::min_degree);
    width = r.width;
    td = std::move(r.decomposition);
  } else {
    width = lower_bound_degeneracy(g);
  }
  if (csv) {
    out << "method,width\n" << o.method << ',' << width << '\n';
  } else {
    out << width << '\n';
  }
  if (!o.decomposition.empty()) {
    if (!td) throw std::invalid_argument("--decomposition needs --method exact, min-fill or min-degree");
    emit(o.decomposition, out, [&](std::ostream& s) { write_decomposition(s, *td); });
  }
  return kOk;
}

int do_partition(const PartitionOptions& o, std::ostream& out) {
  const SimpleGraph g = load_graph(o.in);
  const bool csv = o.format == "csv";
  if (o.mode == "enumerate") {
    const auto counts = count_balanced_partitions(g, o.l, o.d);
    if (csv) {
      out << "l,d,j1,j2,total\n" << o.l << ',' << o.d << ',' << counts.j1 << ',' << counts.j2 << ','
          << counts.j1 + counts.j2 << '\n';
    } else {
      out << "j1 " << counts.j1 << "\nj2 " << counts.j2 << "\ntotal " << counts.j1 + counts.j2 << '\n';
    }
    return kOk;
  }
  if (o.partition.empty()) throw std::invalid_argument("--mode " + o.mode + " needs --partition");
  auto pin = open_in(o.partition);
  const TriPartition w = read_partition(pin, g.num_vertices());
  if (o.mode == "rigidify") {
    const TriPartition r = rigidify(g, w, o.d);
    emit(o.out, out, [&](std::ostream& s) { write_partition(s, r); });
    return kOk;
  }
  const bool balanced = w.s().size() == o.l + 1 && is_balanced(w, o.l);
  const bool separated = is_l_partition(g, w);
  const bool rigid = is_d_rigid(g, w, o.d);
  std::optional<double> i_value;
  if (o.d >= 2) i_value = weighted_count_I(g, w.b(), WeightedCountParams(o.d));
  if (csv) {
    out << "balanced,l_partition,d_rigid,I\n"
        << balanced << ',' << separated << ',' << rigid << ',' << (i_value ? std::to_string(*i_value) : "") << '\n';
  } else {
    out << "balanced " << (balanced ? "yes" : "no") << "\nl-partition " << (separated ? "yes" : "no")
        << "\nd-rigid " << (rigid ? "yes" : "no") << '\n';
    if (i_value) out << "I " << *i_value << '\n';
  }
  return kOk;
}

int do_verify(const VerifyCliOptions& o, std::ostream& out) {
  const auto claims = verify::run_suite(verify::suite_from_name(o.suite), o.opt);
  verify::write_claims(out, claims, o.format == "csv");
  return verify::all_pass(claims) ? kOk : kClaimFailed;
}

int do_experiment(const ExperimentOptions& o, std::ostream& out) {
  auto in = open_in(o.config);
  auto cfg = experiments::parse_config(in);
  cfg.record_timings = o.timings;
  const auto records = experiments::run_experiment(cfg, o.threads);
  emit(o.out, out, [&](std::ostream& s) { experiments::write_records_csv(s, records); });
  if (!o.summary.empty()) {
    emit(o.summary, out, [&](std::ostream& s) { experiments::write_summary_csv(s, experiments::summarize(records)); });
  }
  return kOk;
}

int do_plot(const PlotOptions& o, std::ostream& out) {
  auto in = open_in(o.in);
  const auto records = experiments::read_records_csv(in);
  emit(o.out, out, [&](std::ostream& s) { experiments::write_plot_svg(s, records, o.x, o.y); });
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Treewidth laboratory for random graphs", "twlab"};
  app.require_subcommand(1);
  const auto formats = CLI::IsMember({"text", "csv"});

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a random graph as an edge list");
  gen_cmd->add_option("--model", gen.model, "gnm | gnm-rep | rig | ba | ktree")
      ->required()
      ->check(CLI::IsMember({"gnm", "gnm-rep", "rig", "ba", "ktree"}));
  gen_cmd->add_option("--n", gen.n, "Vertex count")->required();
  gen_cmd->add_option("--m", gen.m, "Edges (gnm), universe size (rig) or attachment count (ba)");
  gen_cmd->add_option("--p", gen.p, "Element inclusion probability (rig)");
  gen_cmd->add_option("--k", gen.k, "Clique order (ktree)");
  gen_cmd->add_option("--seed", gen.seed, "Master seed")->capture_default_str();
  gen_cmd->add_option("--out", gen.out, "Output path (stdout when omitted)");

  TwOptions tw;
  auto* tw_cmd = app.add_subcommand("tw", "Treewidth: exact value, upper or lower bound");
  tw_cmd->add_option("--in", tw.in, "Edge-list file")->required();
  tw_cmd->add_option("--method", tw.method, "exact | min-fill | min-degree | degeneracy | separator")
      ->required()
      ->check(CLI::IsMember({"exact", "min-fill", "min-degree", "degeneracy", "separator"}));
  tw_cmd->add_option("--l", tw.l, "Separator parameter l (> 4)")->capture_default_str();
  tw_cmd->add_option("--format", tw.format)->check(formats)->capture_default_str();
  tw_cmd->add_option("--decomposition", tw.decomposition, "Also write the tree decomposition here");

  PartitionOptions part;
  auto* part_cmd = app.add_subcommand("partition", "Check, rigidify or enumerate balanced l-partitions");
  part_cmd->add_option("--in", part.in, "Edge-list file")->required();
  part_cmd->add_option("--l", part.l)->required();
  part_cmd->add_option("--d", part.d)->required();
  part_cmd->add_option("--mode", part.mode)->required()->check(CLI::IsMember({"check", "rigidify", "enumerate"}));
  part_cmd->add_option("--partition", part.partition, "Partition file (S:/A:/B: lines)");
  part_cmd->add_option("--out", part.out, "Output path for rigidify");
  part_cmd->add_option("--format", part.format)->check(formats)->capture_default_str();

  VerifyCliOptions ver;
  auto* ver_cmd = app.add_subcommand("verify", "Check the numerical claims of a suite");
  ver_cmd->add_option("--suite", ver.suite)
      ->required()
      ->check(CLI::IsMember({"constants", "monotonicity", "stochastic", "all"}));
  ver_cmd->add_option("--d-trunc", ver.opt.d_trunc)->capture_default_str()->check(CLI::Range(2, 100000));
  ver_cmd->add_option("--segments", ver.opt.segments)->capture_default_str()->check(CLI::Range(1, 100000000));
  ver_cmd->add_option("--trials", ver.opt.trials, "Samples for the stochastic suite")
      ->capture_default_str()
      ->check(CLI::Range(2, 100000000));
  ver_cmd->add_option("--seed", ver.opt.seed)->capture_default_str();
  ver_cmd->add_option("--format", ver.format)->check(formats)->capture_default_str();

  ExperimentOptions exp;
  auto* exp_cmd = app.add_subcommand("experiment", "Run a Monte Carlo experiment from a config file");
  exp_cmd->add_option("--config", exp.config)->required();
  exp_cmd->add_option("--out", exp.out, "Trial CSV")->required();
  exp_cmd->add_option("--threads", exp.threads)->capture_default_str()->check(CLI::Range(1, 1024));
  exp_cmd->add_flag("--timings", exp.timings, "Record wall-clock elapsed_ms");
  exp_cmd->add_option("--summary", exp.summary, "Grouped statistics CSV");

  PlotOptions plot;
  auto* plot_cmd = app.add_subcommand("plot", "SVG plot from an experiment CSV");
  plot_cmd->add_option("--in", plot.in)->required();
  plot_cmd->add_option("--x", plot.x)->required();
  plot_cmd->add_option("--y", plot.y, "Column or ratio col/col")->required();
  plot_cmd->add_option("--out", plot.out)->required();

  std::vector<std::string> argv_storage{"twlab"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_storage) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kOk;
    }
    app.exit(e, err, err);
    return kUsage;
  }

  try {
    if (*gen_cmd) return do_gen(gen, out);
    if (*tw_cmd) return do_tw(tw, out);
    if (*part_cmd) return do_partition(part, out);
    if (*ver_cmd) return do_verify(ver, out);
    if (*exp_cmd) return do_experiment(exp, out);
    if (*plot_cmd) return do_plot(plot, out);
  } catch (const ResourceLimitError& e) {
    err << "resource limit: " << e.what() << '\n';
    return kResourceLimit;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

int run(const std::vector<std::string>& args) { return run(args, std::cout, std::cerr); }

}  // namespace twlab::cli
