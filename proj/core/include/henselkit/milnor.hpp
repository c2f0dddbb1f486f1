#pragma once
// Mod-d symbol calculus for iterated Laurent fields k((t_1))...((t_m)) with k
// algebraically closed of characteristic zero.  In that regime constants and
// principal units are d-th powers, so the unit group mod d-th powers is the
// lattice of valuation vectors mod d, and the degree-j symbol group embeds in
// the j-th exterior power of that lattice.  Everything here is exact and
// finite: elements are symbolic monomials, classes are residue vectors.

#include <map>
#include <string>
#include <vector>

#include "henselkit/errors.hpp"

namespace henselkit {

// c * t_1^{e_1} * ... * t_m^{e_m} * (optional principal unit), c a nonzero
// constant named by an opaque tag.  The class of the element mod d-th powers
// is exps mod d; the constant and the principal unit contribute nothing.
struct monomial_elem {
  std::vector<long> exps;
  bool principal_unit = false;
  std::string constant_tag = "1";
};

std::string monomial_str(const monomial_elem& e,
                         const std::string& stem = "t_");

struct unit_class_mod_d {
  unsigned d = 2;
  std::vector<unsigned> vec; // residues in 0..d-1, one per uniformizer

  bool is_zero() const;
};

bool operator==(const unit_class_mod_d& a, const unit_class_mod_d& b);
bool operator!=(const unit_class_mod_d& a, const unit_class_mod_d& b);

unit_class_mod_d unit_class(const monomial_elem& e, unsigned d);

// Element of the j-th exterior power of (Z/d)^m, in antisymmetric normal
// form: only strictly increasing index subsets of {0..m-1} appear, and only
// with nonzero residues.
struct wedge_class {
  unsigned d = 2;
  unsigned m = 0;
  unsigned j = 1;
  std::map<std::vector<unsigned>, unsigned> coords;

  bool is_zero() const { return coords.empty(); }
};

bool operator==(const wedge_class& a, const wedge_class& b);
bool operator!=(const wedge_class& a, const wedge_class& b);

wedge_class wedge_zero(unsigned d, unsigned m, unsigned j);
wedge_class wedge(const std::vector<unit_class_mod_d>& vs);
wedge_class add(const wedge_class& a, const wedge_class& b);
wedge_class scale(const wedge_class& a, long k);

std::string wedge_str(const wedge_class& w);

// Kummer extension of the ambient field: adjoin a d-th root pi of u, where u
// lives in the base field.  A class over the extension is a wedge_class whose
// LAST axis is the pi direction; the base field owns the remaining axes.
struct kummer_ext {
  monomial_elem u;
};

// Norm down one Kummer layer.  Components not involving the pi axis are
// multiplied by the degree d and vanish; on pi-paired components the pi slot
// is replaced by the class of u (projection formula together with
// N(pi) = (-1)^{d-1} u, the sign being a d-th power here).  Throws
// trivial_extension when u is a d-th power already.
wedge_class kummer_norm_class(const kummer_ext& ext, const wedge_class& x);

// Monic polynomial X^deg + sum over lower of coeff * X^i, every coefficient a
// nonzero monomial; absent exponents are zero coefficients.
struct monic_laurent_poly {
  unsigned degree = 2;
  std::map<unsigned, monomial_elem> lower;
};

enum class ramif_verdict { certified, refuted };

struct ramif_certificate {
  ramif_verdict verdict;
  unit_class_mod_d f0_class;
  bool slope_established; // irreducibility proved here by the slope test
  std::string note;
};

// Certificate that the constant term of an irreducible monic polynomial of
// prime degree d with vanishing X^{d-1} coefficient is not a d-th power.  The
// rank-m valuation orders exponent vectors lexicographically with the
// outermost uniformizer t_m most significant.  Irreducibility is established
// internally only for single-slope (Eisenstein-type) polygons whose constant
// term has nonzero class; anything else needs assume_irreducible from the
// caller.  A refuted verdict flags a precondition breach, never a valid run.
ramif_certificate lemma51_certify(const monic_laurent_poly& f, unsigned d,
                                  bool assume_irreducible = false);

struct norm_factor {
  unsigned alpha = 0, beta = 0; // which coefficient pair the extension came from
  monomial_elem ext_u;          // the extension adjoins a d-th root of this
  wedge_class over_ext;         // class upstairs, pi axis last
  unsigned exponent = 1;        // multiplicity mod d
};

// Witness that a symbol lies in the product of norm subgroups attached to the
// coefficient-pair extensions.  Dependent case: the wedge vanishes outright
// and no factors are needed.  Independent case: pushing each factor through
// kummer_norm_class and summing with the stated exponents reproduces
// delta * target with delta invertible mod d.
struct norm_decomposition {
  enum class case_kind { dependent, independent };
  case_kind tag = case_kind::independent;
  wedge_class target;
  unsigned delta = 1;
  std::vector<norm_factor> factors;
  std::vector<unit_class_mod_d> u_inputs;
  std::vector<unsigned> witness; // dependency vector, or the intersection class
};

// Builds the witness from the two subspaces of the ambient residue lattice:
// W spanned by the symbol entries, W' spanned by the pairwise differences of
// the coefficient classes.  Linearly dependent entries give the dependent
// case; otherwise a nonzero class in the intersection of W and W' drives the
// exponent bookkeeping.  Throws duplicate_coefficient_class when two
// coefficient classes coincide and infeasible when the intersection is zero.
norm_decomposition thm54_witness(unsigned d, unsigned m_plus_1,
                                 const std::vector<unit_class_mod_d>& u_classes,
                                 const std::vector<unit_class_mod_d>& c_classes);

// Machine check of a decomposition.  Never throws; tampered data returns
// false.
bool expand_and_verify(const norm_decomposition& dec);

} // namespace henselkit
