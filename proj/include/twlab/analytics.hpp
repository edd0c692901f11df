#pragma once

// Closed-form bound functions behind the treewidth thresholds for G(n, m),
// random intersection graphs and preferential-attachment graphs.

#include <cmath>
#include <concepts>
#include <algorithm>
#include <numbers>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace twlab::analytics {

// ---------------------------------------------------------------------------
// G(n, m): terms of the d-rigid partition count

template <std::floating_point Real>
struct BasicErBoundParams {
  Real t = Real(0.5);   // |B| / n
  Real c = Real(1);     // m / n
  Real beta = Real(0);  // |S| / n
  Real epsilon = Real(0);
  std::size_t d_trunc = 50;  // last index of the g series
};

template <std::floating_point Real>
struct BasicBoundTerms {
  Real x{};
  Real g{};
  /// Upper bound on the omitted series terms i > d_trunc.
  Real g_tail_bound{};
  Real r{};
  Real phi1{};
  Real phi2{};
};

using ErBoundParams = BasicErBoundParams<double>;
using BoundTerms = BasicBoundTerms<double>;

/// x(t,c)   = 2ct / (2t^2 - 2t + 1)
/// g(t,c)   = sum_{i=2}^{d} i^{i-2}/i! (x e^{-x})^{i-1}
/// r(t,c)   = 2t^2 / ((1+eps)^2 c) e^{-2x}
/// phi1(t)  = (1 - 2t + 2t^2 + 2t beta)^c      (O(1/n) term dropped)
/// phi2(t)  = (exp(-(1/c) r (1+g)^2))^c
template <std::floating_point Real>
BasicBoundTerms<Real> er_terms(const BasicErBoundParams<Real>& p) {
  using std::exp;
  using std::lgamma;
  using std::log;
  using std::pow;
  using std::sqrt;
  if (!(p.t > 0 && p.t < 1)) throw std::invalid_argument("t must lie in (0,1)");
  if (!(p.c > 0)) throw std::invalid_argument("c must be positive");
  if (p.beta < 0 || p.epsilon < 0) throw std::invalid_argument("beta and epsilon must be >= 0");
  if (p.d_trunc < 2) throw std::invalid_argument("d_trunc must be >= 2");

  BasicBoundTerms<Real> out;
  const Real t = p.t;
  const Real c = p.c;
  const Real denom = 2 * t * t - 2 * t + 1;
  out.x = 2 * c * t / denom;
  const Real y = out.x * exp(-out.x);  // <= 1/e
  for (std::size_t i = 2; i <= p.d_trunc; ++i) {
    const Real ri = static_cast<Real>(i);
    // i^{i-2}/i! y^{i-1}, in logs to stay finite for large i.
    out.g += exp((ri - 2) * log(ri) - lgamma(ri + 1) + (ri - 1) * log(y));
  }
  // i! >= sqrt(2 pi i)(i/e)^i gives term_i <= e (e y)^{i-1} / (sqrt(2 pi) i^{5/2}).
  const Real e = exp(Real(1));
  const Real ey = e * y;
  const Real d1 = static_cast<Real>(p.d_trunc + 1);
  const Real lead = e / sqrt(2 * std::numbers::pi_v<Real>);
  Real tail = lead * (Real(2) / 3) / pow(d1 - 1, Real(1.5));  // sum_{i>d} i^{-5/2} <= (2/3) d^{-3/2}
  if (ey < 1) tail = std::min(tail, lead * pow(ey, static_cast<Real>(p.d_trunc)) / (pow(d1, Real(2.5)) * (1 - ey)));
  out.g_tail_bound = tail;

  const Real one_eps = 1 + p.epsilon;
  out.r = 2 * t * t / (one_eps * one_eps * c) * exp(-2 * out.x);
  out.phi1 = pow(1 - 2 * t + 2 * t * t + 2 * t * p.beta, c);
  out.phi2 = pow(exp(-(1 / c) * out.r * (1 + out.g) * (1 + out.g)), c);
  return out;
}

/// z(beta, eps, c) = ((5/9 + 4 beta/3) phi2(2/3))^c / ((2/3)^{2/3} (1/3)^{1/3}).
template <std::floating_point Real>
Real z_of(Real beta, Real epsilon, Real c, std::size_t d_trunc) {
  using std::pow;
  BasicErBoundParams<Real> p;
  p.t = Real(2) / 3;
  p.c = c;
  p.beta = beta;
  p.epsilon = epsilon;
  p.d_trunc = d_trunc;
  const auto terms = er_terms(p);
  const Real entropy = pow(Real(2) / 3, Real(2) / 3) * pow(Real(1) / 3, Real(1) / 3);
  return pow((Real(5) / 9 + Real(4) / 3 * beta) * terms.phi2, c) / entropy;
}

/// z evaluated in double and long double; `near_boundary` flags values within
/// 1e-3 of 1, where both are reported.
struct ZEvaluation {
  double value = 0;
  long double extended = 0;
  bool near_boundary = false;
};
ZEvaluation evaluate_z(double beta, double epsilon, double c, std::size_t d_trunc);

// ---------------------------------------------------------------------------
// Binomial entropy bound

/// 1 / (beta^beta (1-beta)^{1-beta}).
double entropy_factor(double beta);

struct StirlingBound {
  double bound = 0;      // (theta / sqrt(beta(1-beta)n)) * entropy_factor^n, theta = 1
  double log_bound = 0;  // natural log of `bound`
  double entropy_factor = 0;
};

StirlingBound stirling_binom_bound(std::size_t n, double beta);

// ---------------------------------------------------------------------------
// Conditional space: expectation of the tree-component count

struct ExpectedIParams {
  std::size_t n = 0;
  std::size_t m = 0;  // edge draws
  std::size_t b = 0;  // |B|
  std::size_t l = 0;  // |S| = l + 1
  std::size_t d = 1;
  bool weighted = true;
};

/// Exact finite-n E[I] over m draws from E_W, s = C(n,2) - b(n - b - l - 1):
///   sum_{i=1}^{d} w_i C(b,i) C(m,i-1) (i-1)! i^{i-2} s^{-(i-1)}
///                 (1 - (i(b-i) + C(i,2))/s)^{m-i+1},
/// with w_i = 1 - (i-1)/(d-1) when weighted, else 1.
double expected_I(const ExpectedIParams& p);

/// n -> infinity coefficient of E[I]/n at t = b/n, c = m/n:
///   t e^{-x} (1 + sum_{i=2}^{d} w_i i^{i-2}/i! (x e^{-x})^{i-1}).
double expected_I_coefficient(double t, double c, std::size_t d, bool weighted);

/// exp(-2 E^2 / (L^2 m)), the bounded-differences bound on P(I = 0).
double azuma_zero_bound(double expected_i, double lipschitz, std::size_t m);

// ---------------------------------------------------------------------------
// Random intersection graphs

/// Probability that no element of M is shared across A and B:
/// ((1-p)^a + (1-p)^b - (1-p)^{a+b})^m.
double rig_no_cross_prob(std::size_t a, std::size_t b, std::size_t m, double p);

/// e^{-tc} / (t^t (1-t)^{1-t}).
double rig_term(double t, double c);

// ---------------------------------------------------------------------------
// Preferential attachment

/// (1 - s/2)^{s - a + (1-beta)/2} (3/4 + s/2)^{a - s}.
double ba_f(double s, double a, double beta);

/// max( sqrt(7/8), max_{0<=i<=segments} g(s_{i+1}) h(s_i) ), s_i = i/(4 segments),
/// g(s) = ((1 - s/2)/(3/4 + s/2))^{s-a} at a = (1-beta)/3, h(s) = (1 - s/2)^{1/2}.
double ba_segment_max(std::size_t segments, double beta = 0.0);

/// Smallest m with 2 f_max^m < 1.
int ba_min_m(double f_max);

// ---------------------------------------------------------------------------
// Grid scans of the auxiliary functions

enum class ScanFunction { f0, r_fun, g_fun, rig_term_fun };

ScanFunction scan_function_from_name(const std::string& name);
std::string scan_function_name(ScanFunction f);

/// f0(t) = t^t (1-t)^{1-t}
/// r_fun(t) = 2t^2/c e^{-4ct/(1 - 2t(1-t))}
/// g_fun(t) = (1 - 2t + 2t^2 + 2 beta t)^c / (t^t (1-t)^{1-t})
/// rig_term_fun(t) = rig_term(t, c)
double scan_function_value(ScanFunction f, double t, double c, double beta);

enum class Direction { increasing, decreasing, neither };
std::string direction_name(Direction d);

struct Extremum {
  double location = 0;
  double value = 0;
};

struct ScanReport {
  ScanFunction function = ScanFunction::f0;
  double lo = 0;
  double hi = 0;
  std::size_t grid_points = 0;
  Direction direction = Direction::neither;
  Extremum minimum;
  Extremum maximum;
  /// Where consecutive differences change sign (with the tie slack).
  std::vector<double> turning_points;
};

/// Consecutive values count as ties within 1e-12.
ScanReport monotonicity_scan(ScanFunction f, double c, double beta, double lo, double hi,
                             std::size_t grid_points);

}  // namespace twlab::analytics
