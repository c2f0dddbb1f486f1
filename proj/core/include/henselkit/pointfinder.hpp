#pragma once
#include "henselkit/lifting.hpp"

namespace henselkit {

// --- residue-level forms and search ----------------------------------------

// A polynomial over the bare coefficient field (no t): what a series_poly
// looks like after reducing every coefficient at t = 0.
struct residue_form {
  field_desc fd;
  size_t n_vars = 0;
  std::map<multi_index, field_elem> terms;

  field_elem eval(const std::vector<field_elem>& x) const;
  unsigned total_degree() const;
  bool is_zero() const { return terms.empty(); }
};

residue_form residue_of(const series_poly& f);

struct cw_options {
  unsigned long long budget = 2000000; // tuples examined
  bool randomized = false;
  unsigned long long seed = 1;
};

struct cw_result {
  std::string verdict; // "found" | "none" | "budget-exceeded"
  std::vector<field_elem> point;
  unsigned long long checked = 0;
};

// Nontrivial common zero of forms over F_p by direct enumeration, the
// leftmost coordinate being the most significant digit.  When the degrees
// sum below the variable count a zero exists (Chevalley-Warning), so "none"
// after a full sweep flags a genuine contradiction.  Randomized mode never
// returns "none".
cw_result cw_search(const std::vector<residue_form>& forms, const cw_options& opt = {});

// Batch driver for the degree-vs-variables bound: every form must satisfy
// deg <= n_vars, and each gets its own full search.
struct c1_report {
  size_t total = 0;
  size_t found = 0;
  std::vector<cw_result> results;
};
c1_report verify_c1_batch(const std::vector<residue_form>& forms, const cw_options& opt = {});

// --- coefficient splitting --------------------------------------------------

// f = low + t^{level} * high, with low collecting the exactly-known terms
// below the level as an exact polynomial part.  Every coefficient must be
// known at least to `level`.
struct split_form {
  series_poly low, high;
  rat level;
};
split_form truncate_split(const series_poly& f, const rat& level);

// --- points of hypersurfaces over Laurent/Puiseux coefficients --------------

struct laurent_point_options {
  xrat target = xrat(16); // certified vanishing of the output
  long q_cap = 6;
  long depth_cap = 8;     // ramified substitution depth
  unsigned long long budget = 2000000;
  size_t residue_candidates = 32; // residue zeros tried per stage
  std::optional<std::vector<field_elem>> residue_hint; // preferred residue zero
  residue_root_fn roots = default_residue_roots();
};

struct laurent_point_report {
  std::string verdict; // "found" | "no-residue-point" | "inconclusive"
  std::vector<puiseux_series> point; // primitive: minimal coordinate valuation 0
  long q = 1;
  unsigned long long checked = 0;
  std::string note;
};

// Primitive zero of a homogeneous form with Puiseux-series coefficients:
// residue zero first, then a Newton lift at a smooth residue point, ramified
// variable substitutions t^{a/q} x_i when every residue zero is singular.
// "no-residue-point" is definitive: a primitive zero at any ramification
// reduces to a nontrivial residue zero.
laurent_point_report point_over_laurent(const series_poly& f,
                                        const laurent_point_options& opt = {});

} // namespace henselkit
