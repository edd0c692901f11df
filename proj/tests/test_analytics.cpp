#include <doctest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "twlab/analytics.hpp"
#include "twlab/experiments.hpp"
#include "twlab/generators.hpp"
#include "twlab/partitions.hpp"

using namespace twlab;
namespace an = twlab::analytics;

namespace {

// Weighted (or plain) tree-component count of B over a draw list, by
// union-find with a draw counter per root.
double count_I(std::size_t n, const std::vector<std::pair<int, int>>& draws, const std::vector<bool>& in_b,
               std::size_t d, bool weighted) {
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[static_cast<std::size_t>(v)] != v) v = parent[static_cast<std::size_t>(v)];
    return v;
  };
  for (auto [u, v] : draws) {
    if (in_b[static_cast<std::size_t>(u)] && in_b[static_cast<std::size_t>(v)]) parent[static_cast<std::size_t>(find(u))] = find(v);
  }
  std::vector<std::size_t> size(n, 0), edges(n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    if (in_b[v]) ++size[static_cast<std::size_t>(find(static_cast<int>(v)))];
  }
  for (auto [u, v] : draws) {
    if (in_b[static_cast<std::size_t>(u)] && in_b[static_cast<std::size_t>(v)]) ++edges[static_cast<std::size_t>(find(u))];
  }
  double total = 0;
  for (std::size_t r = 0; r < n; ++r) {
    if (size[r] == 0 || size[r] > d || edges[r] + 1 != size[r]) continue;
    total += weighted ? 1.0 - static_cast<double>(size[r] - 1) / static_cast<double>(d - 1) : 1.0;
  }
  return total;
}

// E[I] by enumerating every sequence of m draws from E_W.
double enumerate_expected_I(std::size_t n, std::size_t m, std::size_t s_size, std::size_t a_size, std::size_t d,
                            bool weighted) {
  std::vector<std::pair<int, int>> pairs;
  auto side = [&](std::size_t v) { return v < s_size ? 0 : v < s_size + a_size ? 1 : 2; };
  for (std::size_t v = 1; v < n; ++v) {
    for (std::size_t u = 0; u < v; ++u) {
      const int su = side(u), sv = side(v);
      if ((su == 1 && sv == 2) || (su == 2 && sv == 1)) continue;
      pairs.emplace_back(static_cast<int>(u), static_cast<int>(v));
    }
  }
  std::vector<bool> in_b(n);
  for (std::size_t v = 0; v < n; ++v) in_b[v] = side(v) == 2;
  std::vector<std::size_t> idx(m, 0);
  double total = 0;
  std::size_t count = 0;
  for (;;) {
    std::vector<std::pair<int, int>> draws;
    for (std::size_t i : idx) draws.push_back(pairs[i]);
    total += count_I(n, draws, in_b, d, weighted);
    ++count;
    std::size_t k = 0;
    while (k < m && ++idx[k] == pairs.size()) idx[k++] = 0;
    if (k == m) break;
  }
  return total / static_cast<double>(count);
}

}  // namespace

TEST_SUITE("analytics") {
  TEST_CASE("er terms at t = 1/2, c = 1") {
    an::ErBoundParams p;
    p.t = 0.5;
    p.c = 1.0;
    p.d_trunc = 2;
    const auto terms = an::er_terms(p);
    CHECK(terms.x == doctest::Approx(2.0));
    CHECK(terms.g == doctest::Approx(std::exp(-2.0)));
    CHECK(terms.r == doctest::Approx(0.5 * std::exp(-4.0)));
    CHECK(terms.phi1 == doctest::Approx(0.5));
    CHECK(terms.phi2 > 0.0);
    CHECK(terms.phi2 <= 1.0);
  }

  TEST_CASE("x at the threshold") {
    an::ErBoundParams p;
    p.t = 2.0 / 3.0;
    p.c = 1.073;
    CHECK(std::abs(an::er_terms(p).x - 2.5752) < 1e-4);
  }

  TEST_CASE("phi1 at one half") {
    for (double c : {0.3, 1.0, 1.7}) {
      for (double beta : {0.0, 0.05, 0.2}) {
        an::ErBoundParams p;
        p.t = 0.5;
        p.c = c;
        p.beta = beta;
        CHECK(an::er_terms(p).phi1 == doctest::Approx(std::pow(0.5 + beta, c)));
      }
    }
  }

  TEST_CASE("series converges and the tail bound covers the remainder") {
    for (double t = 0.4; t <= 0.7 + 1e-9; t += 0.05) {
      for (double c = 0.5; c <= 2.0 + 1e-9; c += 0.25) {
        an::ErBoundParams p;
        p.t = t;
        p.c = c;
        p.d_trunc = 50;
        const auto short_terms = an::er_terms(p);
        p.d_trunc = 200;
        const auto long_terms = an::er_terms(p);
        CHECK(long_terms.g >= short_terms.g);
        CHECK(long_terms.g - short_terms.g <= short_terms.g_tail_bound);
      }
    }
  }

  TEST_CASE("series is converged at the threshold") {
    an::ErBoundParams p;
    p.t = 2.0 / 3.0;
    p.c = 1.073;
    p.d_trunc = 50;
    const double g50 = an::er_terms(p).g;
    p.d_trunc = 200;
    CHECK(std::abs(an::er_terms(p).g - g50) < 1e-12);
  }

  TEST_CASE("invariant ranges") {
    for (double t : {0.1, 0.5, 0.9}) {
      an::ErBoundParams p;
      p.t = t;
      p.c = 1.3;
      const auto terms = an::er_terms(p);
      CHECK(terms.x > 0);
      CHECK(terms.g >= 0);
      CHECK(terms.r > 0);
      CHECK(terms.phi1 > 0);
      CHECK(terms.phi1 <= 1);
      CHECK(terms.phi2 > 0);
      CHECK(terms.phi2 <= 1);
    }
    an::ErBoundParams bad;
    bad.t = 1.0;
    CHECK_THROWS_AS(an::er_terms(bad), std::invalid_argument);
  }

  TEST_CASE("z values") {
    const double z = an::z_of<double>(0.0, 0.0, 1.073, 50);
    CHECK(z < 1.0);
    CHECK(std::abs(z - 0.9993) < 5e-4);
    CHECK(an::z_of<double>(0.0, 0.0, 0.5, 50) > 1.0);
    CHECK(std::abs(an::z_of<double>(1e-4, 1e-4, 1.073, 50) - z) < 1e-3);
    double prev = an::z_of<double>(0.0, 0.0, 1.0, 50);
    for (int k = 1; k <= 20; ++k) {
      const double cur = an::z_of<double>(0.0, 0.0, 1.0 + 0.01 * k, 50);
      CHECK(cur < prev);
      prev = cur;
    }
    const auto ev = an::evaluate_z(0.0, 0.0, 1.073, 50);
    CHECK(ev.near_boundary);
    CHECK(std::abs(static_cast<double>(ev.extended) - ev.value) < 1e-12);
  }

  TEST_CASE("entropy factor and Stirling bound") {
    CHECK(an::entropy_factor(0.5) == doctest::Approx(2.0));
    CHECK(an::entropy_factor(1e-6) <= 1.00002);
    CHECK_THROWS_AS(an::entropy_factor(0.0), std::invalid_argument);
    CHECK_THROWS_AS(an::stirling_binom_bound(10, 1.0), std::invalid_argument);
    const auto sb = an::stirling_binom_bound(100, 0.3);
    const double log_exact = std::lgamma(101.0) - std::lgamma(31.0) - std::lgamma(71.0);
    CHECK(sb.log_bound >= log_exact);
    CHECK(sb.bound == doctest::Approx(std::exp(sb.log_bound)));
  }

  TEST_CASE("expected I closed cases") {
    const double s = 60.0 * 59.0 / 2.0 - 28.0 * 28.0;
    CHECK(an::expected_I({60, 64, 28, 3, 1, false}) == doctest::Approx(28.0 * std::pow(1.0 - 27.0 / s, 64.0)));
    CHECK(an::expected_I({60, 0, 28, 3, 3, true}) == doctest::Approx(28.0));
    CHECK(an::expected_I({60, 0, 28, 3, 3, false}) == doctest::Approx(28.0));
    CHECK(an::expected_I({60, 64, 28, 3, 3, true}) == doctest::Approx(5.11379).epsilon(1e-5));
    CHECK_THROWS_AS(an::expected_I({10, 5, 8, 2, 3, true}), std::invalid_argument);
    CHECK_THROWS_AS(an::expected_I({10, 5, 4, 2, 1, true}), std::invalid_argument);
  }

  TEST_CASE("expected I matches exhaustive enumeration of draw sequences") {
    // n = 6: S = {0}, A = {1, 2}, B = {3, 4, 5}; |E_W| = 15 - 6 = 9.
    for (std::size_t m : {1u, 2u, 3u, 4u}) {
      for (std::size_t d : {2u, 3u}) {
        for (bool weighted : {true, false}) {
          const double exact = an::expected_I({6, m, 3, 0, d, weighted});
          CHECK(exact == doctest::Approx(enumerate_expected_I(6, m, 1, 2, d, weighted)).epsilon(1e-12));
        }
      }
    }
    // n = 7 with a separator of two and a four-vertex B.
    CHECK(an::expected_I({7, 3, 4, 1, 4, true}) ==
          doctest::Approx(enumerate_expected_I(7, 3, 2, 1, 4, true)).epsilon(1e-12));
  }

  TEST_CASE("weighted expectation never exceeds the plain one") {
    for (std::size_t m : {0u, 5u, 40u, 64u, 200u}) {
      for (std::size_t d : {2u, 3u, 6u}) {
        CHECK(an::expected_I({60, m, 28, 3, d, true}) <= an::expected_I({60, m, 28, 3, d, false}) + 1e-12);
      }
    }
  }

  TEST_CASE("asymptotic coefficient approaches the finite value") {
    const std::size_t n = 20000;
    const double t = 0.45, c = 1.1;
    const auto b = static_cast<std::size_t>(t * n);
    const auto l = static_cast<std::size_t>(0.001 * n) - 1;
    const auto m = static_cast<std::size_t>(c * n);
    const double finite = an::expected_I({n, m, b, l, 4, true}) / static_cast<double>(n);
    // With beta = 0.001 the finite-n space is slightly larger, so compare loosely.
    CHECK(finite == doctest::Approx(an::expected_I_coefficient(t, c, 4, true)).epsilon(0.02));
  }

  TEST_CASE("azuma bound") {
    CHECK(an::azuma_zero_bound(0.0, 1.5, 64) == 1.0);
    const double b1 = an::azuma_zero_bound(2.0, 1.5, 64);
    const double b2 = an::azuma_zero_bound(4.0, 1.5, 64);
    CHECK(b2 == doctest::Approx(std::pow(b1, 4.0)));
    CHECK(an::azuma_zero_bound(3.0, 1.5, 64) < an::azuma_zero_bound(2.0, 1.5, 64));
    CHECK(an::azuma_zero_bound(3.0, 2.0, 64) > an::azuma_zero_bound(3.0, 1.5, 64));
    CHECK(an::azuma_zero_bound(3.0, 1.5, 100) > an::azuma_zero_bound(3.0, 1.5, 64));
    CHECK(an::azuma_zero_bound(5.11379, 1.5, 64) == doctest::Approx(0.69544).epsilon(1e-4));
    CHECK_THROWS_AS(an::azuma_zero_bound(1.0, 0.0, 64), std::invalid_argument);
  }

  TEST_CASE("rig no-cross probability") {
    CHECK(an::rig_no_cross_prob(5, 5, 10, 0.0) == 1.0);
    CHECK(an::rig_no_cross_prob(5, 5, 10, 1.0) == 0.0);
    const double base = an::rig_no_cross_prob(5, 5, 10, 0.2);
    CHECK(an::rig_no_cross_prob(6, 5, 10, 0.2) < base);
    CHECK(an::rig_no_cross_prob(5, 6, 10, 0.2) < base);
    CHECK(an::rig_no_cross_prob(5, 5, 11, 0.2) < base);
    CHECK(an::rig_no_cross_prob(5, 5, 10, 0.21) < base);
  }

  TEST_CASE("rig no-cross probability against sampling") {
    // Ten vertices, A = 0..4, B = 5..9; no cross edge means no A-B pair meets.
    const std::size_t trials = 20000;
    std::size_t none = 0;
    for (std::uint64_t s = 0; s < trials; ++s) {
      const auto g = gen_rig({10, 10, 0.2}, Seed{8, s}).graph;
      bool cross = false;
      for (Vertex u = 0; u < 5 && !cross; ++u) {
        for (Vertex v = 5; v < 10; ++v) cross |= g.has_edge(u, v);
      }
      none += cross ? 0 : 1;
    }
    const double p = an::rig_no_cross_prob(5, 5, 10, 0.2);
    const double freq = static_cast<double>(none) / trials;
    CHECK(std::abs(freq - p) <= 3 * std::sqrt(p * (1 - p) / trials));
  }

  TEST_CASE("rig term") {
    CHECK(std::abs(an::rig_term(1.0 / 3.0, 2.0) - 0.9702) < 1e-3);
    CHECK(an::rig_term(1.0 / 3.0, 2.0) < 1.0);
    CHECK(an::rig_term(0.5, 2.0) == doctest::Approx(std::exp(-1.0) / 0.5));
  }

  TEST_CASE("preferential attachment function") {
    for (double a : {1.0 / 3.0, 0.4, 0.5}) CHECK(an::ba_f(0.25, a, 0.0) == doctest::Approx(std::sqrt(7.0 / 8.0)));
    for (double s : {0.34, 0.4, 0.5}) CHECK(an::ba_f(s, s, 0.0) == doctest::Approx(std::sqrt(1.0 - s / 2.0)));
    CHECK(an::ba_f(0.0, 1.0 / 3.0, 0.0) == doctest::Approx(std::pow(0.75, 1.0 / 3.0)));
    CHECK_THROWS_AS(an::ba_f(0.6, 0.4, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(an::ba_f(0.2, 0.2, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(an::ba_f(0.2, 0.4, 1.0), std::invalid_argument);
  }

  TEST_CASE("segment maximum") {
    CHECK(an::ba_segment_max(1) >= an::ba_segment_max(10));
    CHECK(std::abs(an::ba_segment_max(10000) - 0.9424) <= 2e-4);
    const double fine = an::ba_segment_max(10000);
    for (int i = 0; i <= 100; ++i) {
      const double s = 0.5 * i / 100.0;
      for (int j = 0; j <= 20; ++j) {
        const double a = 1.0 / 3.0 + (0.5 - 1.0 / 3.0) * j / 20.0;
        CHECK(an::ba_f(s, a, 0.0) <= fine + 1e-6);
      }
    }
  }

  TEST_CASE("minimal attachment count") {
    CHECK(an::ba_min_m(0.9425) == 12);
    CHECK(2 * std::pow(0.9425, 11) > 1.0);
    CHECK(an::ba_min_m(0.5) == 2);
    CHECK(an::ba_min_m(0.99) == 69);
  }

  TEST_CASE("scans") {
    const auto f0 = an::monotonicity_scan(an::ScanFunction::f0, 1.0, 0.0, 0.01, 0.99, 999);
    CHECK(f0.minimum.location == doctest::Approx(0.5));
    CHECK(f0.minimum.value == doctest::Approx(0.5));
    CHECK(f0.direction == an::Direction::neither);
    REQUIRE(f0.turning_points.size() == 1);

    const double lo = (1.0 - 1e-3) / 2.0;
    const auto g = an::monotonicity_scan(an::ScanFunction::g_fun, 1.073, 1e-3, lo, 2.0 / 3.0, 10000);
    CHECK(g.direction == an::Direction::increasing);

    const auto rig = an::monotonicity_scan(an::ScanFunction::rig_term_fun, 2.0, 0.0, 1.0 / 3.0, 0.5, 1000);
    CHECK(rig.direction == an::Direction::decreasing);

    // r turns near t = 0.6282 at c = 1.073.
    const auto r = an::monotonicity_scan(an::ScanFunction::r_fun, 1.073, 1e-3, lo, 2.0 / 3.0, 10000);
    CHECK(r.direction == an::Direction::neither);
    REQUIRE(r.turning_points.size() == 1);
    CHECK(r.turning_points[0] == doctest::Approx(0.628239).epsilon(1e-4));

    CHECK_THROWS_AS(an::scan_function_from_name("nope"), std::invalid_argument);
    CHECK_THROWS_AS(an::monotonicity_scan(an::ScanFunction::f0, 1, 0, 0.5, 0.4, 10), std::invalid_argument);
    CHECK_THROWS_AS(an::monotonicity_scan(an::ScanFunction::f0, 1, 0, 0.1, 0.4, 2), std::invalid_argument);
  }

  TEST_CASE("conditional sampling matches the exact expectation") {
    const experiments::PartitionSpec spec{4, 28, 28};
    const auto st = experiments::conditional_I_stats(60, 64, spec, 3, 4000, 5);
    const double expected = an::expected_I({60, 64, 28, 3, 3, true});
    CHECK(std::abs(st.mean_I - expected) <= 3 * st.stderr_I);
    CHECK(st.lipschitz_violations == 0);
    CHECK(st.max_abs_delta <= 1.5);

    const auto none = experiments::conditional_I_stats(20, 0, {2, 9, 9}, 3, 5, 1);
    CHECK(none.mean_I == 9.0);
    CHECK(none.frac_zero == 0.0);
  }
}
