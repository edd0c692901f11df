#include "twlab/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "twlab/analytics.hpp"
#include "twlab/experiments.hpp"
#include "twlab/generators.hpp"
#include "twlab/rng.hpp"

namespace twlab::verify {

namespace an = twlab::analytics;

namespace {

Claim make(std::string id, std::string statement, double value, bool pass, std::string detail = "") {
  return {std::move(id), std::move(statement), value, pass, std::move(detail)};
}

std::string fmt(double v, int precision = 8) {
  std::ostringstream s;
  s << std::setprecision(precision) << v;
  return s.str();
}

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

Suite suite_from_name(const std::string& name) {
  if (name == "constants") return Suite::constants;
  if (name == "monotonicity") return Suite::monotonicity;
  if (name == "stochastic") return Suite::stochastic;
  if (name == "all") return Suite::all;
  throw std::invalid_argument("unknown suite '" + name + "' (constants, monotonicity, stochastic, all)");
}

std::vector<Claim> constants_claims(const VerifyOptions& opt) {
  std::vector<Claim> out;

  // Threshold constant for G(n, m).
  const auto z = an::evaluate_z(0.0, 0.0, 1.073, opt.d_trunc);
  out.push_back(make("z-below-one", "z(0,0,1.073) < 1", z.value, z.value < 1.0,
                     "d_trunc=" + std::to_string(opt.d_trunc) + " extended=" +
                         fmt(static_cast<double>(z.extended), 12)));
  if (z.near_boundary) {
    out.push_back(make("z-below-one-extended", "z(0,0,1.073) < 1 in long double", static_cast<double>(z.extended),
                       z.extended < 1.0L));
  }
  out.push_back(make("z-value", "z(0,0,1.073) = 0.9993 +- 1e-3", z.value, std::abs(z.value - 0.9993) <= 1e-3));
  const double z_small = an::z_of<double>(0.0, 0.0, 0.5, opt.d_trunc);
  out.push_back(make("z-small-c", "z(0,0,0.5) > 1", z_small, z_small > 1.0));
  const double z_shift = an::z_of<double>(1e-4, 1e-4, 1.073, opt.d_trunc);
  out.push_back(make("z-continuity", "|z(1e-4,1e-4,1.073) - z(0,0,1.073)| < 1e-3", std::abs(z_shift - z.value),
                     std::abs(z_shift - z.value) < 1e-3));
  {
    bool decreasing = true;
    double prev = an::z_of<double>(0.0, 0.0, 1.0, opt.d_trunc);
    for (int k = 1; k <= 20; ++k) {
      const double cur = an::z_of<double>(0.0, 0.0, 1.0 + 0.01 * k, opt.d_trunc);
      decreasing &= cur < prev;
      prev = cur;
    }
    out.push_back(make("z-decreasing-in-c", "z(0,0,c) strictly decreasing for c = 1.00..1.20", prev, decreasing));
  }
  {
    an::ErBoundParams p;
    p.t = 2.0 / 3.0;
    p.c = 1.073;
    const double x = an::er_terms(p).x;
    out.push_back(make("x-value", "x(2/3,1.073) = 2.5752 +- 1e-4", x, std::abs(x - 2.5752) <= 1e-4));
  }
  {
    double worst = 0;
    for (double c : {0.5, 1.0, 1.073, 2.0}) {
      for (double beta : {0.0, 0.001, 0.1}) {
        an::ErBoundParams p;
        p.t = 0.5;
        p.c = c;
        p.beta = beta;
        worst = std::max(worst, std::abs(an::er_terms(p).phi1 - std::pow(0.5 + beta, c)));
      }
    }
    out.push_back(make("phi1-half", "phi1(1/2,c,beta) = (1/2 + beta)^c", worst, worst < 1e-12, "max abs deviation"));
  }

  // Binomial entropy bound.
  const double ef_half = an::entropy_factor(0.5);
  out.push_back(make("entropy-factor-half", "entropy_factor(0.5) = 2", ef_half, std::abs(ef_half - 2.0) < 1e-12));
  const double ef_small = an::entropy_factor(1e-6);
  out.push_back(make("entropy-factor-limit", "entropy_factor(1e-6) <= 1.00002", ef_small, ef_small <= 1.00002));
  {
    const auto sb = an::stirling_binom_bound(100, 0.3);
    const double log_exact = std::lgamma(101.0) - std::lgamma(31.0) - std::lgamma(71.0);
    out.push_back(make("stirling-dominates", "stirling_binom_bound(100,0.3) >= C(100,30)", sb.log_bound - log_exact,
                       sb.log_bound >= log_exact, "log(bound) - log(C(100,30))"));
  }

  // Exact E[I] with d = 1.
  {
    double worst = 0;
    constexpr std::array<std::array<std::size_t, 4>, 3> kCases{{{60, 64, 28, 3}, {30, 10, 12, 2}, {20, 0, 9, 1}}};
    for (const auto& [n, m, b, l] : kCases) {
      const double a = static_cast<double>(n - b - l - 1);
      const double s = static_cast<double>(n) * (n - 1) / 2.0 - static_cast<double>(b) * a;
      const double direct = static_cast<double>(b) * std::pow(1.0 - (static_cast<double>(b) - 1.0) / s, m);
      const double formula = an::expected_I({n, m, b, l, 1, false});
      worst = std::max(worst, std::abs(formula - direct) / direct);
    }
    out.push_back(make("expected-I-isolated", "expected_I(d=1) = b (1 - (b-1)/s)^m", worst, worst < 1e-12,
                       "max relative deviation"));
  }

  // Random intersection graphs.
  const double rig = an::rig_term(1.0 / 3.0, 2.0);
  out.push_back(make("rig-term-below-one", "rig_term(1/3,2) < 1", rig, rig < 1.0));
  out.push_back(make("rig-term-value", "rig_term(1/3,2) = 0.9702 +- 1e-3", rig, std::abs(rig - 0.9702) <= 1e-3));
  {
    const auto scan = an::monotonicity_scan(an::ScanFunction::rig_term_fun, 2.0, 0.0, 1.0 / 3.0, 0.5, 1000);
    out.push_back(make("rig-term-decreasing", "rig_term(t,2) decreasing on [1/3,1/2], 1000 points",
                       scan.maximum.value, scan.direction == an::Direction::decreasing,
                       "direction=" + an::direction_name(scan.direction)));
  }

  // Preferential attachment.
  {
    double worst = 0;
    for (double a : {1.0 / 3.0, 0.4, 0.5}) worst = std::max(worst, std::abs(an::ba_f(0.25, a, 0.0) - std::sqrt(7.0 / 8.0)));
    const double f = an::ba_f(0.25, 1.0 / 3.0, 0.0);
    out.push_back(make("ba-f-quarter", "ba_f(1/4,a,0) = (7/8)^(1/2) = 0.9354 for every a", f,
                       worst < 1e-12 && std::abs(f - 0.9354) < 1e-4));
  }
  {
    const double seg = an::ba_segment_max(opt.segments, 0.0);
    out.push_back(make("ba-segment-bound", "ba_segment_max(" + std::to_string(opt.segments) + ") < 0.9425", seg,
                       seg < 0.9425, "a=1/3, max of g(s_{i+1}) h(s_i) and (7/8)^(1/2)"));
    const double fine = an::ba_segment_max(10000, 0.0);
    out.push_back(make("ba-segment-limit", "ba_segment_max(10000) = 0.9424 +- 2e-4", fine,
                       std::abs(fine - 0.9424) <= 2e-4));
  }
  {
    const int m = an::ba_min_m(0.9425);
    out.push_back(make("ba-min-m", "ba_min_m(0.9425) = 12", m, m == 12));
    const double p11 = 2.0 * std::pow(0.9425, 11);
    const double p12 = 2.0 * std::pow(0.9425, 12);
    out.push_back(make("ba-power-11", "2 * 0.9425^11 > 1", p11, p11 > 1.0));
    out.push_back(make("ba-power-12", "2 * 0.9425^12 < 1", p12, p12 < 1.0));
  }
  return out;
}

std::vector<Claim> monotonicity_claims(const VerifyOptions&) {
  std::vector<Claim> out;
  const double c = 1.073;
  const double beta = 1e-3;
  const double lo = (1.0 - beta) / 2.0;
  const double hi = 2.0 / 3.0;
  constexpr std::size_t kGrid = 10000;

  {
    const auto scan = an::monotonicity_scan(an::ScanFunction::f0, c, 0.0, 0.01, 0.99, 999);
    const bool ok = std::abs(scan.minimum.location - 0.5) < 1e-9 && std::abs(scan.minimum.value - 0.5) < 1e-12 &&
                    scan.turning_points.size() == 1;
    out.push_back(make("f0-minimum", "t^t (1-t)^(1-t) has its minimum 0.5 at t = 0.5 on [0.01,0.99]",
                       scan.minimum.value, ok, "argmin=" + fmt(scan.minimum.location)));
  }
  {
    const auto scan = an::monotonicity_scan(an::ScanFunction::r_fun, c, beta, lo, hi, kGrid);
    std::string detail = "direction=" + an::direction_name(scan.direction) + " min=" + fmt(scan.minimum.value) +
                         " at t=" + fmt(scan.minimum.location);
    for (double t : scan.turning_points) detail += " turn@" + fmt(t, 6);
    out.push_back(make("r-decreasing", "r(t) decreasing on [(1-beta)/2, 2/3], c=1.073, beta=1e-3",
                       scan.maximum.value - scan.minimum.value, scan.direction == an::Direction::decreasing,
                       detail));
  }
  {
    const auto scan = an::monotonicity_scan(an::ScanFunction::g_fun, c, beta, lo, hi, kGrid);
    out.push_back(make("g-increasing", "g(t) increasing on [(1-beta)/2, 2/3], c=1.073, beta=1e-3",
                       scan.maximum.value - scan.minimum.value, scan.direction == an::Direction::increasing,
                       "direction=" + an::direction_name(scan.direction)));
  }
  return out;
}

std::vector<Claim> stochastic_claims(const VerifyOptions& opt) {
  std::vector<Claim> out;
  const std::size_t trials = std::max<std::size_t>(opt.trials, 2);

  // Conditional space at (n, m, |B|, l, d) = (60, 64, 28, 3, 3).
  {
    const experiments::PartitionSpec spec{4, 28, 28};
    const auto st = experiments::conditional_I_stats(60, 64, spec, 3, trials, opt.seed);
    const double expected = an::expected_I({60, 64, 28, 3, 3, true});
    const double gap = std::abs(st.mean_I - expected);
    out.push_back(make("conditional-mean-I", "mean weighted I within 3 stderr of expected_I", st.mean_I,
                       gap <= 3.0 * st.stderr_I,
                       "expected=" + fmt(expected) + " stderr=" + fmt(st.stderr_I) + " trials=" +
                           std::to_string(trials)));
    const double bound = an::azuma_zero_bound(expected, st.lipschitz, 64);
    out.push_back(make("conditional-zero-bound", "P(I = 0) <= azuma_zero_bound + 3 stderr", st.frac_zero,
                       st.frac_zero <= bound + 3.0 * st.stderr_zero, "bound=" + fmt(bound)));
    out.push_back(make("conditional-lipschitz", "|delta I| <= 1 + eps under one resampled draw", st.max_abs_delta,
                       st.lipschitz_violations == 0, "violations=" + std::to_string(st.lipschitz_violations)));
  }

  // Generators.
  {
    bool exact = true;
    for (std::uint64_t i = 0; i < 200; ++i) {
      const std::size_t n = 5 + i % 40;
      const std::size_t m = (i * 7) % (n * (n - 1) / 2 + 1);
      exact &= gen_gnm({n, m}, Seed{opt.seed, i}).num_edges() == m;
    }
    out.push_back(make("gnm-edge-count", "gen_gnm emits exactly m edges (200 runs)", 200, exact));
  }
  {
    // Disjoint pairs in one sample are independent, so 100 samples x 100
    // pairs of a random matching give 10^4 independent indicators.
    const std::size_t n = 200, universe = 50, samples = 100;
    const double p = 0.1;
    std::size_t hits = 0, pairs = 0;
    for (std::uint64_t i = 0; i < samples; ++i) {
      const auto g = gen_rig({n, universe, p}, Seed{opt.seed, i}).graph;
      std::vector<Vertex> perm(n);
      std::iota(perm.begin(), perm.end(), Vertex{0});
      Rng rng(Seed{splitmix64(opt.seed ^ 0x5157u), i});
      for (std::size_t k = n - 1; k > 0; --k) std::swap(perm[k], perm[rng.below(k + 1)]);
      for (std::size_t k = 0; k + 1 < n; k += 2) {
        hits += g.has_edge(perm[k], perm[k + 1]) ? 1 : 0;
        ++pairs;
      }
    }
    const double freq = static_cast<double>(hits) / static_cast<double>(pairs);
    const double target = 1.0 - std::pow(1.0 - p * p, static_cast<double>(universe));
    const double se = std::sqrt(target * (1 - target) / static_cast<double>(pairs));
    out.push_back(make("rig-edge-frequency", "gen_rig pair frequency = 1 - (1-p^2)^m within 3 stderr", freq,
                       std::abs(freq - target) <= 3 * se, "target=" + fmt(target) + " stderr=" + fmt(se)));
  }
  {
    bool ok = true;
    for (std::uint64_t i = 0; i < 100; ++i) {
      const std::size_t m = 1 + i % 5;
      const std::size_t n = m + 1 + (i * 13) % 60;
      const auto g = gen_ba({n, m}, Seed{opt.seed, i});
      std::vector<std::size_t> deg(n, 0);
      for (const Edge& e : g.draws()) {
        ++deg[e.u];
        ++deg[e.v];
      }
      const std::size_t sum = std::accumulate(deg.begin(), deg.end(), std::size_t{0});
      ok &= sum == 2 * (m * (m + 1) / 2 + m * (n - m - 1));
    }
    out.push_back(make("ba-degree-sum", "gen_ba degree sum = 2 (C(m+1,2) + m (n-m-1)) (100 runs)", 100, ok));
  }
  return out;
}

std::vector<Claim> run_suite(Suite suite, const VerifyOptions& opt) {
  switch (suite) {
    case Suite::constants: return constants_claims(opt);
    case Suite::monotonicity: return monotonicity_claims(opt);
    case Suite::stochastic: return stochastic_claims(opt);
    case Suite::all: {
      auto out = constants_claims(opt);
      for (auto* part : {&monotonicity_claims, &stochastic_claims}) {
        auto more = (*part)(opt);
        out.insert(out.end(), more.begin(), more.end());
      }
      return out;
    }
  }
  return {};
}

void write_claims(std::ostream& out, const std::vector<Claim>& claims, bool csv) {
  if (csv) {
    out << "id,statement,value,pass,detail\n";
    for (const auto& c : claims) {
      out << c.id << ',' << csv_quote(c.statement) << ',' << fmt(c.value, 12) << ',' << (c.pass ? "PASS" : "FAIL")
          << ',' << csv_quote(c.detail) << '\n';
    }
    return;
  }
  for (const auto& c : claims) {
    out << '[' << c.id << "] " << c.statement << " : " << (c.pass ? "PASS" : "FAIL") << "  value=" << fmt(c.value);
    if (!c.detail.empty()) out << "  (" << c.detail << ')';
    out << '\n';
  }
}

bool all_pass(const std::vector<Claim>& claims) {
  return std::all_of(claims.begin(), claims.end(), [](const Claim& c) { return c.pass; });
}

}  // namespace twlab::verify
