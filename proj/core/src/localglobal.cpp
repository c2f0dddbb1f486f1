#include "henselkit/localglobal.hpp"

#include <algorithm>
#include <set>

#include "henselkit/arith.hpp"

namespace henselkit {

place real_place() { return {false, 0}; }

place finite_place(const bigint& p) {
  if (p < 2 || mpz_probab_prime_p(p.get_mpz_t(), 32) == 0)
    throw precondition_violated("finite places are indexed by primes");
  return {true, p};
}

bool operator==(const place& a, const place& b) {
  return a.finite == b.finite && (!a.finite || a.p == b.p);
}
bool operator!=(const place& a, const place& b) { return !(a == b); }

std::string place_str(const place& v) {
  return v.finite ? v.p.get_str() : "real";
}

conic::conic(const rat& a_, const rat& b_) : a(a_), b(b_) {
  if (a == 0 || b == 0) throw precondition_violated("conic coefficients must be nonzero");
  a.canonicalize();
  b.canonicalize();
}

namespace {

// nonnegative residue mod 8 of an odd rational unit
long residue_mod8(const rat& u) {
  long n8 = static_cast<long>(mpz_fdiv_ui(u.get_num_mpz_t(), 8));
  long d8 = static_cast<long>(mpz_fdiv_ui(u.get_den_mpz_t(), 8));
  return n8 * d8 % 8;
}

int legendre_rat(const rat& u, const bigint& p) {
  return mpz_legendre(u.get_num_mpz_t(), p.get_mpz_t()) *
         mpz_legendre(u.get_den_mpz_t(), p.get_mpz_t());
}

} // namespace

int hilbert_symbol(const rat& a, const rat& b, const place& v) {
  if (a == 0 || b == 0) throw precondition_violated("hilbert symbol needs nonzero arguments");
  if (!v.finite) return (a < 0 && b < 0) ? -1 : 1;
  const bigint& p = v.p;
  long alpha = val_at(a, p), beta = val_at(b, p);
  rat u = unit_part(a, p), w = unit_part(b, p);
  if (p == 2) {
    long ru = residue_mod8(u), rw = residue_mod8(w);
    long eps_u = (ru % 4 == 3), eps_w = (rw % 4 == 3);
    long om_u = (ru == 3 || ru == 5), om_w = (rw == 3 || rw == 5);
    long e = eps_u * eps_w;
    if (alpha % 2 != 0) e += om_w;
    if (beta % 2 != 0) e += om_u;
    return e % 2 ? -1 : 1;
  }
  int r = 1;
  if (beta % 2 != 0) r *= legendre_rat(u, p);
  if (alpha % 2 != 0) r *= legendre_rat(w, p);
  if (alpha % 2 != 0 && beta % 2 != 0) {
    bigint e = (p - 1) / 2;
    if (mpz_odd_p(e.get_mpz_t())) r = -r;
  }
  return r;
}

std::vector<place> ramified_places(const rat& a, const rat& b) {
  if (a == 0 || b == 0) throw precondition_violated("ramified places of zero");
  std::set<bigint> primes{bigint(2)};
  auto absorb = [&](const bigint& v) {
    if (v == 1 || v == -1) return;
    for (const auto& [q, e] : factor_integer(v)) {
      (void)e;
      primes.insert(q);
    }
  };
  absorb(bigint(a.get_num()));
  absorb(bigint(a.get_den()));
  absorb(bigint(b.get_num()));
  absorb(bigint(b.get_den()));
  std::vector<place> out{real_place()};
  for (const bigint& q : primes) out.push_back({true, q});
  return out;
}

bool conic_local_solvable(const conic& C, const place& v) {
  return hilbert_symbol(C.a, C.b, v) == 1;
}

bool square_in_completion(const rat& d, const place& v) {
  if (d == 0) throw precondition_violated("square test on zero");
  if (!v.finite) return d > 0;
  long val = val_at(d, v.p);
  if (val % 2 != 0) return false;
  rat u = unit_part(d, v.p);
  if (v.p == 2) return residue_mod8(u) == 1;
  return legendre_rat(u, v.p) == 1;
}

bool local_norm_membership(const rat& x, const conic& C, const place& v) {
  if (x == 0) throw precondition_violated("membership of zero");
  if (v.finite) return true;
  if (conic_local_solvable(C, v)) return true;
  return x > 0;
}

bool global_membership_decide(const rat& x, const conic& C) {
  return local_norm_membership(x, C, real_place());
}

namespace {

// places where the conic itself has no local point; a splitting field must be
// a nonsplit quadratic at each of these
std::vector<place> insolvable_places(const conic& C) {
  std::vector<place> bad;
  for (const place& v : ramified_places(C.a, C.b))
    if (!conic_local_solvable(C, v)) bad.push_back(v);
  return bad;
}

bool field_splits(const bigint& d, const std::vector<place>& bad) {
  for (const place& v : bad)
    if (square_in_completion(rat(d), v)) return false;
  return true;
}

// Hasse criterion: y is a norm from the field adjoining a square root of d
// iff every local symbol is +1
bool is_global_norm(const rat& y, const bigint& d) {
  for (const place& v : ramified_places(y, rat(d)))
    if (hilbert_symbol(y, rat(d), v) != 1) return false;
  return true;
}

// squarefree d by |d| ascending, positive before negative, skipping 1
std::vector<bigint> field_candidates(long bound) {
  std::vector<bigint> out;
  for (long n = 1; n <= bound; ++n) {
    bigint bn(n);
    if (squarefree_part(bn) != bn) continue;
    if (n != 1) out.push_back(bn);
    out.push_back(-bn);
  }
  return out;
}

} // namespace

std::optional<norm_witness> witness_search(const rat& x, const conic& C,
                                           const witness_options& opt) {
  if (x == 0) throw precondition_violated("witness for zero");
  if (!global_membership_decide(x, C))
    throw refused_non_member("the real place obstructs membership: no witness can exist");

  auto bad = insolvable_places(C);
  std::vector<bigint> fields;
  for (const bigint& d : field_candidates(opt.bound))
    if (field_splits(d, bad)) fields.push_back(d);

  for (const bigint& d : fields)
    if (is_global_norm(x, d)) return norm_witness{x, {{d, x}}};

  // two-factor phase: split x across divisors of its support
  bigint support = bigint(x.get_num()) * bigint(x.get_den());
  std::vector<rat> ys;
  for (const bigint& dv : divisors_of(support)) {
    for (int s : {1, -1}) {
      ys.push_back(rat(s * dv));
      ys.push_back(frac(s, 1) / rat(dv));
    }
  }
  std::sort(ys.begin(), ys.end(), [](const rat& l, const rat& r) {
    bigint hl = abs(bigint(l.get_num()) * bigint(l.get_den()));
    bigint hr = abs(bigint(r.get_num()) * bigint(r.get_den()));
    if (hl != hr) return hl < hr;
    return l < r;
  });
  ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
  for (const rat& y1 : ys) {
    rat y2 = x / y1;
    const bigint* d1 = nullptr;
    for (const bigint& d : fields)
      if (is_global_norm(y1, d)) {
        d1 = &d;
        break;
      }
    if (!d1) continue;
    for (const bigint& d : fields)
      if (is_global_norm(y2, d)) return norm_witness{x, {{*d1, y1}, {d, y2}}};
  }
  return std::nullopt;
}

bool verify_witness(const norm_witness& w, const conic& C) {
  try {
    if (w.x == 0) return false;
    rat prod(1);
    for (const auto& f : w.factors) {
      if (f.y == 0 || f.d == 0 || f.d == 1) return false;
      if (squarefree_part(f.d) != f.d) return false;
      prod *= f.y;
    }
    if (prod != w.x) return false;
    auto bad = insolvable_places(C);
    for (const auto& f : w.factors) {
      if (!field_splits(f.d, bad)) return false;
      if (!is_global_norm(f.y, f.d)) return false;
    }
    return true;
  } catch (const error&) {
    return false;
  }
}

} // namespace henselkit
