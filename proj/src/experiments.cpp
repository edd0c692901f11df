#include "twlab/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <exception>
#include <istream>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "twlab/errors.hpp"
#include "twlab/generators.hpp"
#include "twlab/graph.hpp"
#include "twlab/partitions.hpp"
#include "twlab/rng.hpp"
#include "twlab/treewidth.hpp"

namespace twlab::experiments {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  parts.push_back(cur);
  return parts;
}

template <typename T>
T parse_number(const std::string& text, const std::string& field) {
  const std::string t = trim(text);
  T value{};
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
    throw std::invalid_argument("bad value for " + field + ": '" + text + "'");
  }
  return value;
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

template <typename T>
std::string format_optional(const std::optional<T>& v) {
  if (!v) return "";
  if constexpr (std::is_floating_point_v<T>) {
    return format_double(*v);
  } else {
    return std::to_string(*v);
  }
}

std::size_t edge_count(double c, std::size_t n) {
  return static_cast<std::size_t>(std::llround(c * static_cast<double>(n)));
}

std::size_t separator_l(const ExperimentConfig& cfg, std::size_t n) {
  return std::max<std::size_t>(5, static_cast<std::size_t>(std::floor(cfg.l_fraction * static_cast<double>(n))));
}

std::string model_params(const ExperimentConfig& cfg, std::size_t n) {
  std::ostringstream out;
  switch (cfg.model) {
    case Model::gnm:
    case Model::gnm_rep:
      out << "c=" << format_double(cfg.c) << ";m=" << edge_count(cfg.c, n);
      break;
    case Model::rig:
      out << "m_universe=" << (cfg.m_universe == 0 ? n : cfg.m_universe) << ";p=" << format_double(cfg.p);
      break;
    case Model::ba:
      out << "m_attach=" << cfg.m_attach;
      break;
    case Model::conditional: {
      const auto spec = conditional_partition(cfg, n);
      out << "c=" << format_double(cfg.c) << ";m=" << edge_count(cfg.c, n) << ";d=" << cfg.d
          << ";s=" << spec.separator << ";a=" << spec.a << ";b=" << spec.b;
      break;
    }
  }
  return out.str();
}

void add_outcome(TrialRecord& r, const std::string& item) {
  r.outcome = r.outcome == "ok" ? item : r.outcome + ";" + item;
}

template <typename T>
void keep_max(std::optional<T>& slot, T value) {
  slot = slot ? std::max(*slot, value) : value;
}

template <typename T>
void keep_min(std::optional<T>& slot, T value) {
  slot = slot ? std::min(*slot, value) : value;
}

}  // namespace

std::string model_name(Model m) {
  switch (m) {
    case Model::gnm: return "gnm";
    case Model::gnm_rep: return "gnm-rep";
    case Model::rig: return "rig";
    case Model::ba: return "ba";
    case Model::conditional: return "conditional";
  }
  return "?";
}

Model model_from_name(const std::string& name) {
  for (Model m : {Model::gnm, Model::gnm_rep, Model::rig, Model::ba, Model::conditional}) {
    if (model_name(m) == name) return m;
  }
  throw std::invalid_argument("model: unknown model '" + name + "'");
}

std::string method_name(Method m) {
  switch (m) {
    case Method::exact: return "exact";
    case Method::min_fill: return "min-fill";
    case Method::min_degree: return "min-degree";
    case Method::degeneracy: return "degeneracy";
    case Method::separator: return "separator";
  }
  return "?";
}

Method method_from_name(const std::string& name) {
  for (Method m : {Method::exact, Method::min_fill, Method::min_degree, Method::degeneracy, Method::separator}) {
    if (method_name(m) == name) return m;
  }
  throw std::invalid_argument("methods: unknown method '" + name + "'");
}

void ExperimentConfig::validate() const {
  if (n_list.empty()) throw std::invalid_argument("n_list: at least one size is required");
  for (std::size_t n : n_list) {
    if (n < 2) throw std::invalid_argument("n_list: sizes must be >= 2");
  }
  if (trials < 1) throw std::invalid_argument("trials: must be >= 1");
  if (methods.empty()) throw std::invalid_argument("methods: at least one method is required");
  if (!(c >= 0.0) || !std::isfinite(c)) throw std::invalid_argument("c: must be a finite value >= 0");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p: must lie in [0,1]");
  if (!(l_fraction >= 0.0 && l_fraction < 1.0)) throw std::invalid_argument("l_fraction: must lie in [0,1)");
  if (model == Model::ba) {
    if (m_attach < 1) throw std::invalid_argument("m_attach: must be >= 1");
    for (std::size_t n : n_list) {
      if (n < m_attach + 1) throw std::invalid_argument("m_attach: n must be >= m_attach + 1");
    }
  }
  if (model == Model::conditional) {
    if (d < 2) throw std::invalid_argument("d: conditional model needs d >= 2");
    for (std::size_t n : n_list) {
      const auto spec = conditional_partition(*this, n);
      if (spec.a == 0) throw std::invalid_argument("l_fraction: leaves no room for A and B at n=" + std::to_string(n));
    }
  }
}

ExperimentConfig parse_config(std::istream& in) {
  ExperimentConfig cfg;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "model") {
      cfg.model = model_from_name(value);
    } else if (key == "n_list") {
      cfg.n_list.clear();
      for (const auto& item : split(value, ',')) cfg.n_list.push_back(parse_number<std::size_t>(item, key));
    } else if (key == "c") {
      cfg.c = parse_number<double>(value, key);
    } else if (key == "p") {
      cfg.p = parse_number<double>(value, key);
    } else if (key == "m_universe") {
      cfg.m_universe = parse_number<std::size_t>(value, key);
    } else if (key == "m_attach") {
      cfg.m_attach = parse_number<std::size_t>(value, key);
    } else if (key == "trials") {
      cfg.trials = parse_number<std::size_t>(value, key);
    } else if (key == "seed") {
      cfg.seed = parse_number<std::uint64_t>(value, key);
    } else if (key == "methods") {
      cfg.methods.clear();
      for (const auto& item : split(value, ',')) cfg.methods.push_back(method_from_name(trim(item)));
    } else if (key == "d") {
      cfg.d = parse_number<std::size_t>(value, key);
    } else if (key == "l_fraction") {
      cfg.l_fraction = parse_number<double>(value, key);
    } else {
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
  }
  cfg.validate();
  return cfg;
}

PartitionSpec conditional_partition(const ExperimentConfig& cfg, std::size_t n) {
  PartitionSpec spec;
  spec.separator = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::llround(cfg.l_fraction * static_cast<double>(n))));
  if (spec.separator > n) spec.separator = n;
  const std::size_t rest = n - spec.separator;
  spec.a = rest / 2;
  spec.b = rest - spec.a;
  return spec;
}

TrialRecord run_trial(const ExperimentConfig& cfg, std::size_t n, std::size_t trial) {
  const auto start = std::chrono::steady_clock::now();
  TrialRecord r;
  r.model = model_name(cfg.model);
  r.n = n;
  r.params = model_params(cfg, n);
  r.trial = trial;
  r.seed = cfg.seed;
  const Seed seed{cfg.seed, trial};

  SimpleGraph g;
  switch (cfg.model) {
    case Model::gnm:
      g = gen_gnm({n, edge_count(cfg.c, n)}, seed);
      break;
    case Model::gnm_rep:
      g = simplify(gen_gnm_replacement({n, edge_count(cfg.c, n)}, seed));
      break;
    case Model::rig:
      g = gen_rig({n, cfg.m_universe == 0 ? n : cfg.m_universe, cfg.p}, seed).graph;
      break;
    case Model::ba:
      g = simplify(gen_ba({n, cfg.m_attach}, seed));
      break;
    case Model::conditional: {
      const auto spec = conditional_partition(cfg, n);
      const auto w = TriPartition::contiguous(spec.separator, spec.a, spec.b);
      const auto mg = gen_conditional(n, edge_count(cfg.c, n), w, seed);
      r.i_value = weighted_count_I(mg, w.b(), WeightedCountParams(cfg.d));
      g = simplify(mg);
      break;
    }
  }

  for (Method m : cfg.methods) {
    switch (m) {
      case Method::exact:
        try {
          r.tw_exact = exact_treewidth(g).width;
        } catch (const ResourceLimitError&) {
          add_outcome(r, "resource-limit:exact");
        }
        break;
      case Method::min_fill:
        keep_min(r.tw_upper, heuristic_upper(g, EliminationRule::min_fill).width);
        break;
      case Method::min_degree:
        keep_min(r.tw_upper, heuristic_upper(g, EliminationRule::min_degree).width);
        break;
      case Method::degeneracy:
        keep_max(r.tw_lower, lower_bound_degeneracy(g));
        break;
      case Method::separator: {
        const std::size_t l = separator_l(cfg, n);
        if (l + 1 > n) break;
        try {
          if (lower_bound_separator(g, l).certifies_above()) keep_max(r.tw_lower, static_cast<int>(l) + 1);
        } catch (const ResourceLimitError&) {
          add_outcome(r, "resource-limit:separator");
        }
        break;
      }
    }
  }

  if (cfg.record_timings) {
    r.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start)
                       .count();
  }
  return r;
}

std::vector<TrialRecord> run_experiment(const ExperimentConfig& cfg, std::size_t threads) {
  cfg.validate();
  const std::size_t total = cfg.n_list.size() * cfg.trials;
  std::vector<TrialRecord> records(total);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (;;) {
      const std::size_t job = next.fetch_add(1);
      if (job >= total) return;
      try {
        records[job] = run_trial(cfg, cfg.n_list[job / cfg.trials], job % cfg.trials);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(total);
        return;
      }
    }
  };

  threads = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(total, 1));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
  return records;
}

ConditionalIStats conditional_I_stats(std::size_t n, std::size_t m, const PartitionSpec& spec, std::size_t d,
                                      std::size_t trials, std::uint64_t master_seed) {
  if (spec.separator + spec.a + spec.b != n) throw std::invalid_argument("partition sizes must add up to n");
  if (spec.b == 0) throw std::invalid_argument("partition needs |B| >= 1");
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  const WeightedCountParams params(d);
  const auto w = TriPartition::contiguous(spec.separator, spec.a, spec.b);

  ConditionalIStats st;
  st.trials = trials;
  st.lipschitz = 1.0 + params.epsilon();
  double sum = 0, sum_sq = 0;
  std::size_t zeros = 0;
  for (std::size_t i = 0; i < trials; ++i) {
    const auto mg = gen_conditional(n, m, w, Seed{master_seed, i});
    const double value = weighted_count_I(mg, w.b(), params);
    sum += value;
    sum_sq += value * value;
    if (value == 0.0) ++zeros;

    if (m > 0) {
      Rng rng(Seed{splitmix64(master_seed), i});
      const std::size_t k = rng.below(m);
      const auto swapped = mg.with_draw(k, draw_conditional_edge(w, rng));
      const double delta = std::abs(weighted_count_I(swapped, w.b(), params) - value);
      st.max_abs_delta = std::max(st.max_abs_delta, delta);
      if (delta > st.lipschitz + 1e-9) ++st.lipschitz_violations;
    }
  }
  const double t = static_cast<double>(trials);
  st.mean_I = sum / t;
  st.frac_zero = static_cast<double>(zeros) / t;
  if (trials > 1) {
    const double var = std::max(0.0, (sum_sq - t * st.mean_I * st.mean_I) / (t - 1));
    st.stderr_I = std::sqrt(var / t);
    st.stderr_zero = std::sqrt(st.frac_zero * (1 - st.frac_zero) / t);
  }
  return st;
}

std::vector<SummaryStats> summarize(const std::vector<TrialRecord>& records) {
  using Key = std::tuple<std::string, std::size_t, std::string>;
  static const char* const kColumns[] = {"tw_lower", "tw_upper", "tw_exact", "i_value", "elapsed_ms"};
  std::map<Key, std::vector<const TrialRecord*>> groups;
  for (const auto& r : records) groups[{r.model, r.n, r.params}].push_back(&r);

  std::vector<SummaryStats> out;
  for (const auto& [key, members] : groups) {
    SummaryStats s;
    std::tie(s.model, s.n, s.params) = key;
    s.count = members.size();
    for (const char* column : kColumns) {
      ColumnStats cs;
      cs.column = column;
      std::vector<double> values;
      for (const auto* r : members) {
        if (auto v = record_column(*r, column)) values.push_back(*v);
      }
      cs.count = values.size();
      if (!values.empty()) {
        double sum = 0;
        for (double v : values) sum += v;
        cs.mean = sum / static_cast<double>(values.size());
        if (values.size() > 1) {
          double ss = 0;
          for (double v : values) ss += (v - cs.mean) * (v - cs.mean);
          cs.stddev = std::sqrt(ss / static_cast<double>(values.size() - 1));
        }
        const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
        cs.min = *lo;
        cs.max = *hi;
      }
      s.columns.push_back(cs);
    }
    out.push_back(std::move(s));
  }
  return out;
}

const char* const kCsvHeader = "model,n,params,trial,seed,tw_lower,tw_upper,tw_exact,i_value,outcome,elapsed_ms";

void write_records_csv(std::ostream& out, const std::vector<TrialRecord>& records) {
  out << kCsvHeader << '\n';
  for (const auto& r : records) {
    out << r.model << ',' << r.n << ',' << r.params << ',' << r.trial << ',' << r.seed << ','
        << format_optional(r.tw_lower) << ',' << format_optional(r.tw_upper) << ',' << format_optional(r.tw_exact)
        << ',' << format_optional(r.i_value) << ',' << r.outcome << ',' << r.elapsed_ms << '\n';
  }
}

std::vector<TrialRecord> read_records_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || trim(line) != kCsvHeader) {
    throw std::invalid_argument("CSV header must be: " + std::string(kCsvHeader));
  }
  std::vector<TrialRecord> records;
  std::size_t line_no = 1;
  auto opt_int = [](const std::string& s, const std::string& field) -> std::optional<int> {
    if (s.empty()) return std::nullopt;
    return parse_number<int>(s, field);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto f = split(trim(line), ',');
    if (f.size() != 11) {
      throw std::invalid_argument("CSV line " + std::to_string(line_no) + ": expected 11 fields, got " +
                                  std::to_string(f.size()));
    }
    TrialRecord r;
    r.model = f[0];
    r.n = parse_number<std::size_t>(f[1], "n");
    r.params = f[2];
    r.trial = parse_number<std::size_t>(f[3], "trial");
    r.seed = parse_number<std::uint64_t>(f[4], "seed");
    r.tw_lower = opt_int(f[5], "tw_lower");
    r.tw_upper = opt_int(f[6], "tw_upper");
    r.tw_exact = opt_int(f[7], "tw_exact");
    if (!f[8].empty()) r.i_value = parse_number<double>(f[8], "i_value");
    r.outcome = f[9];
    r.elapsed_ms = parse_number<std::int64_t>(f[10], "elapsed_ms");
    records.push_back(std::move(r));
  }
  return records;
}

void write_summary_csv(std::ostream& out, const std::vector<SummaryStats>& stats) {
  out << "model,n,params,count,column,values,mean,stddev,min,max\n";
  for (const auto& s : stats) {
    for (const auto& c : s.columns) {
      out << s.model << ',' << s.n << ',' << s.params << ',' << s.count << ',' << c.column << ',' << c.count;
      if (c.count == 0) {
        out << ",,,,\n";
      } else {
        out << ',' << format_double(c.mean) << ',' << format_double(c.stddev) << ',' << format_double(c.min) << ','
            << format_double(c.max) << '\n';
      }
    }
  }
}

std::optional<double> record_column(const TrialRecord& r, const std::string& column) {
  auto from = [](const std::optional<int>& v) -> std::optional<double> {
    if (!v) return std::nullopt;
    return static_cast<double>(*v);
  };
  if (column == "n") return static_cast<double>(r.n);
  if (column == "trial") return static_cast<double>(r.trial);
  if (column == "seed") return static_cast<double>(r.seed);
  if (column == "tw_lower") return from(r.tw_lower);
  if (column == "tw_upper") return from(r.tw_upper);
  if (column == "tw_exact") return from(r.tw_exact);
  if (column == "i_value") return r.i_value;
  if (column == "elapsed_ms") return static_cast<double>(r.elapsed_ms);
  throw std::invalid_argument("unknown numeric column '" + column + "'");
}

}  // namespace twlab::experiments
