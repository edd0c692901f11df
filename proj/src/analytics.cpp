#include "twlab/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace twlab::analytics {

namespace {

double log_binom(double n, double k) { return std::lgamma(n + 1) - std::lgamma(k + 1) - std::lgamma(n - k + 1); }

constexpr double kDomainSlack = 1e-12;
constexpr double kTieSlack = 1e-12;

}  // namespace

ZEvaluation evaluate_z(double beta, double epsilon, double c, std::size_t d_trunc) {
  ZEvaluation out;
  out.value = z_of<double>(beta, epsilon, c, d_trunc);
  out.extended = z_of<long double>(beta, epsilon, c, d_trunc);
  out.near_boundary = std::abs(out.value - 1.0) < 1e-3;
  return out;
}

double entropy_factor(double beta) {
  if (!(beta > 0.0 && beta < 1.0)) throw std::invalid_argument("beta must lie in (0,1)");
  return std::exp(-beta * std::log(beta) - (1.0 - beta) * std::log1p(-beta));
}

StirlingBound stirling_binom_bound(std::size_t n, double beta) {
  if (n == 0) throw std::invalid_argument("n must be positive");
  StirlingBound out;
  out.entropy_factor = entropy_factor(beta);
  out.log_bound = -0.5 * std::log(beta * (1.0 - beta) * static_cast<double>(n)) +
                  static_cast<double>(n) * std::log(out.entropy_factor);
  out.bound = std::exp(out.log_bound);
  return out;
}

double expected_I(const ExpectedIParams& p) {
  if (p.b + p.l + 1 > p.n) throw std::invalid_argument("expected_I needs b + l + 1 <= n");
  if (p.d < 1) throw std::invalid_argument("expected_I needs d >= 1");
  if (p.weighted && p.d < 2) throw std::invalid_argument("weighted expected_I needs d >= 2");
  const std::uint64_t a = p.n - p.b - p.l - 1;
  const std::uint64_t pairs = static_cast<std::uint64_t>(p.n) * (p.n - 1) / 2;
  const double s = static_cast<double>(pairs - static_cast<std::uint64_t>(p.b) * a);
  if (s <= 0.0) {
    if (p.m > 0) throw std::invalid_argument("E_W is empty");
    return static_cast<double>(p.b);
  }
  const double m = static_cast<double>(p.m);
  const double b = static_cast<double>(p.b);

  double total = 0.0;
  for (std::size_t i = 1; i <= std::min(p.d, p.b); ++i) {
    if (i - 1 > p.m) break;
    const double di = static_cast<double>(i);
    const double weight = p.weighted ? 1.0 - (di - 1.0) / static_cast<double>(p.d - 1) : 1.0;
    if (weight == 0.0) continue;
    const double blocked = di * (b - di) + di * (di - 1.0) / 2.0;
    const double free_draws = m - di + 1.0;
    double log_avoid = 0.0;
    if (free_draws > 0.0) {
      if (blocked >= s) continue;
      log_avoid = free_draws * std::log1p(-blocked / s);
    }
    const double log_term = log_binom(b, di) + log_binom(m, di - 1.0) + std::lgamma(di) +
                            (di - 2.0) * std::log(di) - (di - 1.0) * std::log(s) + log_avoid;
    total += weight * std::exp(log_term);
  }
  return total;
}

double expected_I_coefficient(double t, double c, std::size_t d, bool weighted) {
  if (!(t > 0.0 && t < 1.0) || !(c >= 0.0)) throw std::invalid_argument("need t in (0,1) and c >= 0");
  if (d < 1 || (weighted && d < 2)) throw std::invalid_argument("bad d for expected_I_coefficient");
  const double x = 2.0 * c * t / (2.0 * t * t - 2.0 * t + 1.0);
  const double y = x * std::exp(-x);
  double series = 1.0;
  for (std::size_t i = 2; i <= d; ++i) {
    const double di = static_cast<double>(i);
    const double weight = weighted ? 1.0 - (di - 1.0) / static_cast<double>(d - 1) : 1.0;
    series += weight * std::exp((di - 2.0) * std::log(di) - std::lgamma(di + 1.0)) * std::pow(y, di - 1.0);
  }
  return t * std::exp(-x) * series;
}

double azuma_zero_bound(double expected_i, double lipschitz, std::size_t m) {
  if (!(lipschitz > 0.0)) throw std::invalid_argument("lipschitz constant must be positive");
  if (m < 1) throw std::invalid_argument("m must be >= 1");
  return std::exp(-2.0 * expected_i * expected_i / (lipschitz * lipschitz * static_cast<double>(m)));
}

double rig_no_cross_prob(std::size_t a, std::size_t b, std::size_t m, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0,1]");
  const double q = 1.0 - p;
  const double qa = std::pow(q, static_cast<double>(a));
  const double qb = std::pow(q, static_cast<double>(b));
  const double per_element = qa + qb - qa * qb;
  return std::pow(per_element, static_cast<double>(m));
}

double rig_term(double t, double c) {
  if (!(t > 0.0 && t < 1.0)) throw std::invalid_argument("t must lie in (0,1)");
  if (!(c > 0.0)) throw std::invalid_argument("c must be positive");
  return std::exp(-t * c) / std::pow(t, t) / std::pow(1.0 - t, 1.0 - t);
}

double ba_f(double s, double a, double beta) {
  if (!(beta >= 0.0 && beta < 1.0)) throw std::invalid_argument("beta must lie in [0,1)");
  if (s < -kDomainSlack || s > 0.5 + kDomainSlack) throw std::invalid_argument("s must lie in [0,1/2]");
  const double a_lo = (1.0 - beta) / 3.0;
  const double a_hi = (1.0 - beta) / 2.0;
  if (a < a_lo - kDomainSlack || a > a_hi + kDomainSlack) {
    throw std::invalid_argument("a must lie in [(1-beta)/3, (1-beta)/2]");
  }
  return std::pow(1.0 - s / 2.0, s - a + (1.0 - beta) / 2.0) * std::pow(0.75 + s / 2.0, a - s);
}

double ba_segment_max(std::size_t segments, double beta) {
  if (segments < 1) throw std::invalid_argument("segments must be >= 1");
  if (!(beta >= 0.0 && beta < 1.0)) throw std::invalid_argument("beta must lie in [0,1)");
  const double a = (1.0 - beta) / 3.0;
  auto g = [a](double s) { return std::pow((1.0 - s / 2.0) / (0.75 + s / 2.0), s - a); };
  auto h = [](double s) { return std::sqrt(1.0 - s / 2.0); };
  const double width = 1.0 / (4.0 * static_cast<double>(segments));
  double best = std::sqrt(7.0 / 8.0);
  for (std::size_t i = 0; i <= segments; ++i) {
    const double s_i = static_cast<double>(i) * width;
    const double s_next = static_cast<double>(i + 1) * width;
    best = std::max(best, g(s_next) * h(s_i));
  }
  return best;
}

int ba_min_m(double f_max) {
  if (!(f_max > 0.0 && f_max < 1.0)) throw std::invalid_argument("f_max must lie in (0,1)");
  auto ok = [f_max](int m) { return 2.0 * std::pow(f_max, m) < 1.0; };
  int m = std::max(1, static_cast<int>(std::ceil(std::log(2.0) / -std::log(f_max))));
  while (!ok(m)) ++m;
  while (m > 1 && ok(m - 1)) --m;
  return m;
}

ScanFunction scan_function_from_name(const std::string& name) {
  if (name == "f0") return ScanFunction::f0;
  if (name == "r_fun") return ScanFunction::r_fun;
  if (name == "g_fun") return ScanFunction::g_fun;
  if (name == "rig_term_fun") return ScanFunction::rig_term_fun;
  throw std::invalid_argument("unknown scan function '" + name + "'");
}

std::string scan_function_name(ScanFunction f) {
  switch (f) {
    case ScanFunction::f0: return "f0";
    case ScanFunction::r_fun: return "r_fun";
    case ScanFunction::g_fun: return "g_fun";
    case ScanFunction::rig_term_fun: return "rig_term_fun";
  }
  return "?";
}

double scan_function_value(ScanFunction f, double t, double c, double beta) {
  const double entropy = std::pow(t, t) * std::pow(1.0 - t, 1.0 - t);
  switch (f) {
    case ScanFunction::f0:
      return entropy;
    case ScanFunction::r_fun:
      return 2.0 * t * t / c * std::exp(-4.0 * c * t / (1.0 - 2.0 * t * (1.0 - t)));
    case ScanFunction::g_fun:
      return std::pow(1.0 - 2.0 * t + 2.0 * t * t + 2.0 * beta * t, c) / entropy;
    case ScanFunction::rig_term_fun:
      return rig_term(t, c);
  }
  return std::numeric_limits<double>::quiet_NaN();
}

std::string direction_name(Direction d) {
  switch (d) {
    case Direction::increasing: return "increasing";
    case Direction::decreasing: return "decreasing";
    case Direction::neither: return "neither";
  }
  return "?";
}

ScanReport monotonicity_scan(ScanFunction f, double c, double beta, double lo, double hi, std::size_t grid_points) {
  if (!(lo < hi)) throw std::invalid_argument("scan interval needs lo < hi");
  if (grid_points < 3) throw std::invalid_argument("scan needs at least 3 grid points");
  ScanReport report;
  report.function = f;
  report.lo = lo;
  report.hi = hi;
  report.grid_points = grid_points;

  const double step = (hi - lo) / static_cast<double>(grid_points - 1);
  std::vector<double> ts(grid_points), values(grid_points);
  for (std::size_t k = 0; k < grid_points; ++k) {
    ts[k] = k + 1 == grid_points ? hi : lo + static_cast<double>(k) * step;
    values[k] = scan_function_value(f, ts[k], c, beta);
  }

  const auto [min_it, max_it] = std::minmax_element(values.begin(), values.end());
  report.minimum = {ts[static_cast<std::size_t>(min_it - values.begin())], *min_it};
  report.maximum = {ts[static_cast<std::size_t>(max_it - values.begin())], *max_it};

  bool any_up = false, any_down = false;
  int last_sign = 0;
  for (std::size_t k = 1; k < grid_points; ++k) {
    const double diff = values[k] - values[k - 1];
    const int sign = diff > kTieSlack ? 1 : (diff < -kTieSlack ? -1 : 0);
    if (sign == 0) continue;
    any_up |= sign > 0;
    any_down |= sign < 0;
    if (last_sign != 0 && sign != last_sign) report.turning_points.push_back(ts[k - 1]);
    last_sign = sign;
  }
  if (any_up && !any_down) report.direction = Direction::increasing;
  if (any_down && !any_up) report.direction = Direction::decreasing;
  return report;
}

}  // namespace twlab::analytics
