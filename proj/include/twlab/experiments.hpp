#pragma once

// Monte Carlo harness: generate, bound treewidth, export.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace twlab::experiments {

enum class Model { gnm, gnm_rep, rig, ba, conditional };
enum class Method { exact, min_fill, min_degree, degeneracy, separator };

std::string model_name(Model m);
Model model_from_name(const std::string& name);
std::string method_name(Method m);
Method method_from_name(const std::string& name);

struct ExperimentConfig {
  Model model = Model::gnm;
  std::vector<std::size_t> n_list;
  double c = 1.0;                // m = round(c n) for gnm, gnm-rep, conditional
  double p = 0.1;                // rig inclusion probability
  std::size_t m_universe = 0;    // rig |M|; 0 means n
  std::size_t m_attach = 1;      // ba edges per new vertex
  std::size_t trials = 1;
  std::uint64_t seed = 0;
  std::vector<Method> methods{Method::min_fill, Method::degeneracy};
  std::size_t d = 3;
  double l_fraction = 0.1;
  /// Wall-clock times go to elapsed_ms only when set; otherwise 0.
  bool record_timings = false;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

/// `key = value` lines; `#` starts a comment. Lists are comma separated.
/// Unknown keys throw std::invalid_argument.
ExperimentConfig parse_config(std::istream& in);

struct TrialRecord {
  std::string model;
  std::size_t n = 0;
  std::string params;
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  std::optional<int> tw_lower;
  std::optional<int> tw_upper;
  std::optional<int> tw_exact;
  std::optional<double> i_value;
  std::string outcome = "ok";
  std::int64_t elapsed_ms = 0;

  friend bool operator==(const TrialRecord&, const TrialRecord&) = default;
};

/// Separator size |S| and the A/B split used by the conditional model.
struct PartitionSpec {
  std::size_t separator = 1;
  std::size_t a = 0;
  std::size_t b = 0;
};
PartitionSpec conditional_partition(const ExperimentConfig& cfg, std::size_t n);

/// One record per (n, trial); trial i draws from stream i of cfg.seed, so the
/// output does not depend on `threads`.
std::vector<TrialRecord> run_experiment(const ExperimentConfig& cfg, std::size_t threads = 1);
TrialRecord run_trial(const ExperimentConfig& cfg, std::size_t n, std::size_t trial);

struct ConditionalIStats {
  std::size_t trials = 0;
  double mean_I = 0;
  double stderr_I = 0;
  double frac_zero = 0;
  double stderr_zero = 0;
  /// One draw resampled per trial; largest |I after - I before| seen.
  double max_abs_delta = 0;
  double lipschitz = 0;  // 1 + epsilon
  std::size_t lipschitz_violations = 0;
};

ConditionalIStats conditional_I_stats(std::size_t n, std::size_t m, const PartitionSpec& spec, std::size_t d,
                                      std::size_t trials, std::uint64_t master_seed);

struct ColumnStats {
  std::string column;
  std::size_t count = 0;
  double mean = 0;
  double stddev = 0;  // sample standard deviation, 0 below two values
  double min = 0;
  double max = 0;
};

struct SummaryStats {
  std::string model;
  std::size_t n = 0;
  std::string params;
  std::size_t count = 0;
  std::vector<ColumnStats> columns;  // tw_lower, tw_upper, tw_exact, i_value, elapsed_ms
};

/// Groups ordered by (model, n, params).
std::vector<SummaryStats> summarize(const std::vector<TrialRecord>& records);

extern const char* const kCsvHeader;
void write_records_csv(std::ostream& out, const std::vector<TrialRecord>& records);
std::vector<TrialRecord> read_records_csv(std::istream& in);
void write_summary_csv(std::ostream& out, const std::vector<SummaryStats>& stats);

/// Numeric column of a record by name; empty when the value is absent.
/// Throws std::invalid_argument for unknown names.
std::optional<double> record_column(const TrialRecord& r, const std::string& column);

/// Standalone SVG of y against x, one polyline per model through the mean y
/// at each x. `y` may be a ratio `col/col`.
void write_plot_svg(std::ostream& out, const std::vector<TrialRecord>& records, const std::string& x,
                    const std::string& y);

}  // namespace twlab::experiments
