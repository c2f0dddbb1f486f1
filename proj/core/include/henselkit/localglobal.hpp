#pragma once
// Norm-group membership for conics over the rationals, decided place by
// place.  Local solvability and local norm membership reduce to Hilbert
// symbols; only the real place can obstruct a global membership, and the
// Hasse norm theorem for quadratic extensions turns witness verification into
// finitely many symbol evaluations.

#include <optional>
#include <string>
#include <vector>

#include "henselkit/errors.hpp"
#include "henselkit/xrat.hpp"

namespace henselkit {

struct place {
  bool finite = false;
  bigint p = 0; // the prime when finite
};

place real_place();
place finite_place(const bigint& p);
bool operator==(const place& a, const place& b);
bool operator!=(const place& a, const place& b);
std::string place_str(const place& v);

// z^2 = a x^2 + b y^2 in the projective plane
struct conic {
  rat a, b;

  conic(const rat& a_, const rat& b_);
};

// the classical symbol: +1 iff z^2 = a x^2 + b y^2 has a nontrivial local
// solution
int hilbert_symbol(const rat& a, const rat& b, const place& v);

// real place plus every prime dividing 2ab (numerators and denominators);
// outside this list the symbol is +1
std::vector<place> ramified_places(const rat& a, const rat& b);

bool conic_local_solvable(const conic& C, const place& v);

// whether d generates a genuine quadratic extension of the completion at v
bool square_in_completion(const rat& d, const place& v);

// finite places never obstruct; at the real place a pointless conic only
// accepts positive numbers, since the sole extension of the reals with points
// is the complex field
bool local_norm_membership(const rat& x, const conic& C, const place& v);

// conjunction of the local memberships; everything away from the real place
// is automatic
bool global_membership_decide(const rat& x, const conic& C);

struct norm_witness {
  struct factor {
    bigint d; // squarefree, not 0 or 1: the field adjoins a square root of d
    rat y;    // a global norm from that field
  };
  rat x;
  std::vector<factor> factors; // the y values multiply to x
};

struct witness_options {
  long bound = 50; // enumeration cap on |d|
};

// Searches for a verified witness that x lies in the norm subgroup attached
// to the conic: single quadratic factors first, by |d| ascending, then
// two-factor splittings of x driven by its divisors.  Refuses outright when
// the global decision is negative; returns nullopt when the bound runs out,
// which is inconclusive rather than negative.
std::optional<norm_witness> witness_search(const rat& x, const conic& C,
                                           const witness_options& opt = {});

// Independent certificate check: exact product, splitting of every field at
// each locally insolvable place, and symbol tests at every relevant place for
// each factor.  Never throws.
bool verify_witness(const norm_witness& w, const conic& C);

} // namespace henselkit
