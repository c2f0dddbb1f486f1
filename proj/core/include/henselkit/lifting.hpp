#pragma once
#include <functional>
#include <optional>

#include "henselkit/linalg.hpp"
#include "henselkit/newton_polygon.hpp"
#include "henselkit/poly.hpp"

namespace henselkit {

// x with F(x) congruent to 0 modulo t^{residual}; the residual is data the
// caller asserts and the library re-measures.
struct approx_solution {
  std::vector<puiseux_series> point;
  rat residual;
};

// (N, c, s) at tower level q: every x in R_q^n with F(x) = 0 mod t^{nu/q},
// nu >= N, is supposed to admit an exact root y = x mod t^{([nu/c]-s)/q}.
struct associated_triple {
  long N = 1, c = 1, s = 0;
  long q = 1;
};

// (q0, N, c, s): for every scale factor q >= 1 the triple (qN, c, qs) is
// associated at level q*q0.
struct admissible_quadruple {
  long q0 = 1, N = 1, c = 1, s = 0;

  associated_triple triple_at_scale(long scale) const {
    return {scale * N, c, scale * s, scale * q0};
  }
};

// Uniform constants M = N/q0, gamma = c, sigma = (s+1)/q0 derived from an
// admissible quadruple, with the quadruple kept as provenance.
struct greenberg_constants {
  rat M;
  long gamma = 1;
  rat sigma;
  admissible_quadruple source;
};

greenberg_constants derive_greenberg_constants(const admissible_quadruple& quad);

// One-step combination for the smooth stratum: a quadruple for the minor
// locus plus one per residual index set.
admissible_quadruple combine_admissible_smooth(
    const admissible_quadruple& minor_quad,
    const std::vector<admissible_quadruple>& per_index_set);

// One-step combination across scheme components: u components with scaling
// data (q0', u, v, w) and one quadruple per component.
struct component_inputs {
  long q0_prime = 1;
  long u = 1, v = 0, w = 1;
  std::vector<admissible_quadruple> components;
};
admissible_quadruple combine_admissible_components(const component_inputs& in);

// --- quantitative Newton lifting -----------------------------------------

struct jacobian_minor {
  std::vector<size_t> rows, cols; // equal sizes, strictly increasing
};

// Valuation of det(dF_I/dx_J) at x; +inf marker for an exactly zero minor,
// precision_too_low when the determinant is masked by finite precision.
valuation jacobian_residual(const poly_system& F, const std::vector<puiseux_series>& x,
                            const jacobian_minor& minor);

struct lift_options {
  xrat target = xrat(16);
  std::optional<jacobian_minor> minor; // auto-selected when absent
  long max_iter = 64;
};

struct lift_result {
  std::vector<puiseux_series> point;
  rat minor_val;               // e
  rat initial_residual;        // nu
  jacobian_minor minor;
  std::vector<xrat> residual_trace; // nu - 2e at least doubles per step
};

// Requires nu > 2e for the (chosen or auto-selected) minor; lifts x until the
// full system vanishes to `target`, guaranteeing y = x mod t^{nu - e}.
lift_result smooth_lift(const poly_system& F, const std::vector<puiseux_series>& x,
                        const lift_options& opt = {});

// --- residue-level solving hooks ------------------------------------------

// Roots in the coefficient field of a univariate polynomial given by its
// coefficients c_0..c_d.  Exhaustive over F_p; over Q restricted to rational
// roots (divisor enumeration), which is the documented proxy for a residue
// field search.
using residue_root_fn = std::function<std::vector<field_elem>(
    const field_desc&, const std::vector<field_elem>&)>;
residue_root_fn default_residue_roots();

// --- certification harness -------------------------------------------------

struct certify_options {
  long samples = 50;
  unsigned long long seed = 1;
  long exponent_cap = 8;   // probe exponents up to t^{cap/q}
  xrat work_prec = xrat(48);
  residue_root_fn roots = default_residue_roots();
};

struct certify_sample {
  long index = 0;
  std::string outcome; // "lifted" | "exact" | "vacuous" | "counterexample" | "budget"
  long nu = 0;         // scaled residual level (in t^{1/q} units)
  std::string x;       // the probe, human-readable
  std::string note;
};

struct certify_report {
  std::string verdict; // "pass" | "counterexample" | "inconclusive"
  associated_triple triple;
  std::vector<certify_sample> samples;
  std::optional<certify_sample> witness; // first counterexample
};

// Searches for counterexamples to the triple on systematically + randomly
// generated approximate solutions.  Univariate systems are decided against
// the complete root list; multivariate failures degrade to "budget"
// (inconclusive), never to a refutation.
certify_report certify_triple(const poly_system& F, const associated_triple& triple,
                              const certify_options& opt = {});

// --- solving in the ramification closure -----------------------------------

struct solve_options {
  long nu_max = 16;          // schedule 1..nu_max
  long q_cap = 6;
  xrat target = xrat(16);    // certified vanishing precision of the output
  unsigned long long budget = 200000;
  std::optional<admissible_quadruple> quad; // reported as derived constants
  residue_root_fn roots = default_residue_roots();
};

struct solve_report {
  std::string verdict; // "solved" | "no-solution-mod-nu" | "inconclusive"
  long nu = 0;         // failing congruence level for the negative verdict
  long q = 1;          // ramification index of the solution
  std::vector<puiseux_series> point;
  std::optional<greenberg_constants> constants;
  unsigned long long checked = 0;
  std::string note;
};

// Truncate-solve-lift over R_infty with ramification capped at q_cap.  A
// definitive negative is only reported when the congruence search at some
// level nu was exhaustive within the stated bounds.
solve_report solve_in_R_infty(const poly_system& F, const solve_options& opt = {});

} // namespace henselkit
