#include "henselkit/milnor.hpp"

#include <algorithm>

#include "henselkit/arith.hpp"

namespace henselkit {

namespace {

unsigned norm_mod(long v, unsigned d) {
  long r = v % static_cast<long>(d);
  if (r < 0) r += d;
  return static_cast<unsigned>(r);
}

unsigned inv_mod(unsigned a, unsigned d) {
  for (unsigned x = 1; x < d; ++x)
    if (a * x % d == 1) return x;
  throw precondition_violated("no inverse: modulus not prime or element zero");
}

void check_prime(unsigned d) {
  if (d < 2 || !is_prime(d)) throw precondition_violated("modulus must be a prime");
}

// --- dense matrices over Z/d -----------------------------------------------

struct modmat {
  unsigned rows, cols, d;
  std::vector<unsigned> a;

  modmat(unsigned r, unsigned c, unsigned dd) : rows(r), cols(c), d(dd), a(r * c, 0) {}
  unsigned& at(unsigned r, unsigned c) { return a[r * cols + c]; }
  unsigned at(unsigned r, unsigned c) const { return a[r * cols + c]; }
};

// reduced row echelon form, first-nonzero-column pivoting; returns (row, col)
// pivot pairs in order
std::vector<std::pair<unsigned, unsigned>> rref(modmat& M) {
  std::vector<std::pair<unsigned, unsigned>> piv;
  unsigned r = 0;
  for (unsigned c = 0; c < M.cols && r < M.rows; ++c) {
    unsigned p = r;
    while (p < M.rows && M.at(p, c) == 0) ++p;
    if (p == M.rows) continue;
    for (unsigned cc = 0; cc < M.cols; ++cc) std::swap(M.at(p, cc), M.at(r, cc));
    unsigned inv = inv_mod(M.at(r, c), M.d);
    for (unsigned cc = 0; cc < M.cols; ++cc) M.at(r, cc) = M.at(r, cc) * inv % M.d;
    for (unsigned rr = 0; rr < M.rows; ++rr) {
      if (rr == r || M.at(rr, c) == 0) continue;
      unsigned f = M.d - M.at(rr, c);
      for (unsigned cc = 0; cc < M.cols; ++cc)
        M.at(rr, cc) = (M.at(rr, cc) + f * M.at(r, cc)) % M.d;
    }
    piv.push_back({r, c});
    ++r;
  }
  return piv;
}

// one basis vector per free column, free columns ascending
std::vector<std::vector<unsigned>> kernel_basis(modmat M) {
  auto piv = rref(M);
  std::vector<char> pivotal(M.cols, 0);
  for (auto& [r, c] : piv) pivotal[c] = 1;
  std::vector<std::vector<unsigned>> out;
  for (unsigned f = 0; f < M.cols; ++f) {
    if (pivotal[f]) continue;
    std::vector<unsigned> v(M.cols, 0);
    v[f] = 1;
    for (auto& [r, c] : piv) v[c] = (M.d - M.at(r, f)) % M.d;
    out.push_back(std::move(v));
  }
  return out;
}

unsigned det_mod(std::vector<std::vector<unsigned>> M, unsigned d) {
  unsigned n = static_cast<unsigned>(M.size());
  unsigned det = 1 % d;
  for (unsigned c = 0; c < n; ++c) {
    unsigned p = c;
    while (p < n && M[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(M[p], M[c]);
      det = det * (d - 1) % d;
    }
    det = det * M[c][c] % d;
    unsigned inv = inv_mod(M[c][c], d);
    for (unsigned r = c + 1; r < n; ++r) {
      if (M[r][c] == 0) continue;
      unsigned f = (d - M[r][c] * inv % d) % d;
      for (unsigned cc = c; cc < n; ++cc) M[r][cc] = (M[r][cc] + f * M[c][cc]) % d;
    }
  }
  return det;
}

} // namespace

// --- classes ---------------------------------------------------------------

std::string monomial_str(const monomial_elem& e, const std::string& stem) {
  std::vector<std::string> parts;
  if (e.constant_tag != "1") parts.push_back(e.constant_tag);
  for (size_t i = 0; i < e.exps.size(); ++i) {
    if (e.exps[i] == 0) continue;
    std::string p = stem + std::to_string(i + 1);
    if (e.exps[i] != 1) p += "^" + std::to_string(e.exps[i]);
    parts.push_back(p);
  }
  if (e.principal_unit) parts.push_back("(1+...)");
  if (parts.empty()) return "1";
  std::string out = parts[0];
  for (size_t i = 1; i < parts.size(); ++i) out += "*" + parts[i];
  return out;
}

bool unit_class_mod_d::is_zero() const {
  return std::all_of(vec.begin(), vec.end(), [](unsigned v) { return v == 0; });
}

bool operator==(const unit_class_mod_d& a, const unit_class_mod_d& b) {
  return a.d == b.d && a.vec == b.vec;
}
bool operator!=(const unit_class_mod_d& a, const unit_class_mod_d& b) { return !(a == b); }

unit_class_mod_d unit_class(const monomial_elem& e, unsigned d) {
  check_prime(d);
  unit_class_mod_d c;
  c.d = d;
  c.vec.reserve(e.exps.size());
  for (long v : e.exps) c.vec.push_back(norm_mod(v, d));
  return c;
}

bool operator==(const wedge_class& a, const wedge_class& b) {
  return a.d == b.d && a.m == b.m && a.j == b.j && a.coords == b.coords;
}
bool operator!=(const wedge_class& a, const wedge_class& b) { return !(a == b); }

wedge_class wedge_zero(unsigned d, unsigned m, unsigned j) {
  check_prime(d);
  wedge_class w;
  w.d = d;
  w.m = m;
  w.j = j;
  return w;
}

wedge_class wedge(const std::vector<unit_class_mod_d>& vs) {
  if (vs.empty()) throw precondition_violated("wedge of an empty sequence");
  unsigned d = vs[0].d;
  unsigned m = static_cast<unsigned>(vs[0].vec.size());
  for (const auto& v : vs)
    if (v.d != d || v.vec.size() != m)
      throw dimension_mismatch("wedge arguments over mismatched lattices");
  unsigned j = static_cast<unsigned>(vs.size());
  wedge_class out = wedge_zero(d, m, j);
  if (j > m) return out;
  // coefficient on a subset is the determinant of the corresponding minor
  std::vector<unsigned> S(j);
  for (unsigned i = 0; i < j; ++i) S[i] = i;
  while (true) {
    std::vector<std::vector<unsigned>> M(j, std::vector<unsigned>(j));
    for (unsigned k = 0; k < j; ++k)
      for (unsigned i = 0; i < j; ++i) M[k][i] = vs[i].vec[S[k]];
    unsigned c = det_mod(M, d);
    if (c != 0) out.coords[S] = c;
    unsigned i = j;
    while (i > 0 && S[i - 1] == m - j + i - 1) --i;
    if (i == 0) break;
    ++S[i - 1];
    for (unsigned k = i; k < j; ++k) S[k] = S[k - 1] + 1;
  }
  return out;
}

wedge_class add(const wedge_class& a, const wedge_class& b) {
  if (a.d != b.d || a.m != b.m || a.j != b.j)
    throw dimension_mismatch("wedge classes live in different exterior powers");
  wedge_class out = a;
  for (const auto& [S, c] : b.coords) {
    unsigned v = ((out.coords.count(S) ? out.coords[S] : 0) + c) % a.d;
    if (v == 0)
      out.coords.erase(S);
    else
      out.coords[S] = v;
  }
  return out;
}

wedge_class scale(const wedge_class& a, long k) {
  unsigned f = norm_mod(k, a.d);
  wedge_class out = wedge_zero(a.d, a.m, a.j);
  if (f == 0) return out;
  for (const auto& [S, c] : a.coords) out.coords[S] = c * f % a.d;
  return out;
}

std::string wedge_str(const wedge_class& w) {
  if (w.coords.empty()) return "0";
  std::string out;
  for (const auto& [S, c] : w.coords) {
    if (!out.empty()) out += " + ";
    if (c != 1) out += std::to_string(c) + "*";
    out += "e{";
    for (size_t i = 0; i < S.size(); ++i) {
      if (i) out += ",";
      out += std::to_string(S[i] + 1);
    }
    out += "}";
  }
  return out;
}

// --- Kummer norm -----------------------------------------------------------

wedge_class kummer_norm_class(const kummer_ext& ext, const wedge_class& x) {
  if (x.m == 0) throw dimension_mismatch("no pi axis to norm along");
  unsigned mb = x.m - 1;
  if (ext.u.exps.size() != mb)
    throw dimension_mismatch("extension element does not live in the base field");
  unit_class_mod_d uc = unit_class(ext.u, x.d);
  if (uc.is_zero()) throw trivial_extension("u is already a d-th power: the extension splits");
  unsigned d = x.d;
  wedge_class out = wedge_zero(d, mb, x.j);
  for (const auto& [S, c] : x.coords) {
    if (S.back() != mb) continue; // restriction from the base: killed by the degree
    std::vector<unsigned> base(S.begin(), S.end() - 1);
    for (unsigned k = 0; k < mb; ++k) {
      if (uc.vec[k] == 0) continue;
      if (std::binary_search(base.begin(), base.end(), k)) continue;
      unsigned above = 0;
      for (unsigned s : base)
        if (s > k) ++above;
      unsigned term = c * uc.vec[k] % d;
      if (above % 2) term = (d - term) % d;
      std::vector<unsigned> key = base;
      key.insert(std::upper_bound(key.begin(), key.end(), k), k);
      unsigned v = ((out.coords.count(key) ? out.coords[key] : 0) + term) % d;
      if (v == 0)
        out.coords.erase(key);
      else
        out.coords[key] = v;
    }
  }
  return out;
}

// --- ramification certificate ----------------------------------------------

namespace {

// is sa*a lexicographically below sb*b, outermost (last) entry most
// significant
bool lex_scaled_less(const std::vector<long>& a, long sa, const std::vector<long>& b, long sb) {
  for (size_t i = a.size(); i-- > 0;) {
    long long x = static_cast<long long>(sa) * a[i];
    long long y = static_cast<long long>(sb) * b[i];
    if (x != y) return x < y;
  }
  return false;
}

} // namespace

ramif_certificate lemma51_certify(const monic_laurent_poly& f, unsigned d,
                                  bool assume_irreducible) {
  check_prime(d);
  if (f.degree != d) throw precondition_violated("degree must equal the prime d");
  for (const auto& [i, ci] : f.lower) {
    (void)ci;
    if (i >= f.degree) throw precondition_violated("lower coefficients must sit below the degree");
  }
  if (f.lower.count(d - 1))
    throw precondition_violated("the X^{d-1} coefficient must vanish");
  auto it0 = f.lower.find(0);
  if (it0 == f.lower.end())
    throw precondition_violated("constant term vanishes, so X divides f");
  const monomial_elem& c0 = it0->second;
  for (const auto& [i, ci] : f.lower) {
    (void)i;
    if (ci.exps.size() != c0.exps.size())
      throw dimension_mismatch("coefficients over different uniformizer counts");
  }

  // single-slope test: every point of the polygon sits on or above the
  // segment from (0, val c_0) to (d, 0)
  bool single_slope = true;
  for (const auto& [i, ci] : f.lower) {
    if (i == 0) continue;
    if (lex_scaled_less(ci.exps, d, c0.exps, static_cast<long>(d - i))) {
      single_slope = false;
      break;
    }
  }
  unit_class_mod_d cls = unit_class(c0, d);
  bool slope_ok = single_slope && !cls.is_zero();
  if (!slope_ok && !assume_irreducible)
    throw precondition_violated(
        "newton polygon is not eisenstein-type: irreducibility must be asserted by the caller");

  if (!cls.is_zero())
    return {ramif_verdict::certified, cls, slope_ok,
            "constant term has nonzero class mod d-th powers"};
  return {ramif_verdict::refuted, cls, slope_ok,
          "constant term is a d-th-power class, so the hypotheses cannot all hold"};
}

// --- norm-decomposition witness --------------------------------------------

norm_decomposition thm54_witness(unsigned d, unsigned m_plus_1,
                                 const std::vector<unit_class_mod_d>& u_classes,
                                 const std::vector<unit_class_mod_d>& c_classes) {
  check_prime(d);
  if (u_classes.empty()) throw precondition_violated("need at least one symbol entry");
  for (const auto& u : u_classes)
    if (u.d != d || u.vec.size() != m_plus_1)
      throw dimension_mismatch("symbol entry over the wrong lattice");
  for (const auto& c : c_classes)
    if (c.d != d || c.vec.size() != m_plus_1)
      throw dimension_mismatch("coefficient class over the wrong lattice");
  for (size_t a = 0; a < c_classes.size(); ++a)
    for (size_t b = a + 1; b < c_classes.size(); ++b)
      if (c_classes[a] == c_classes[b])
        throw duplicate_coefficient_class("two coefficient classes coincide");

  unsigned j = static_cast<unsigned>(u_classes.size());
  norm_decomposition dec;
  dec.target = wedge(u_classes);
  dec.u_inputs = u_classes;

  modmat U(m_plus_1, j, d);
  for (unsigned s = 0; s < j; ++s)
    for (unsigned r = 0; r < m_plus_1; ++r) U.at(r, s) = u_classes[s].vec[r];
  auto dep = kernel_basis(U);
  if (!dep.empty()) {
    // the symbol itself is d-divisible; no norm factors needed
    dec.tag = norm_decomposition::case_kind::dependent;
    dec.delta = 1;
    dec.witness = dep.front();
    return dec;
  }

  std::vector<std::pair<unsigned, unsigned>> pairs;
  for (unsigned a = 0; a < c_classes.size(); ++a)
    for (unsigned b = a + 1; b < c_classes.size(); ++b) pairs.push_back({a, b});
  unsigned P = static_cast<unsigned>(pairs.size());

  // a kernel vector of [U | -(c_a - c_b)] splits into u-coordinates of a
  // common class w and the pair exponents writing w over the differences
  modmat A(m_plus_1, j + P, d);
  for (unsigned s = 0; s < j; ++s)
    for (unsigned r = 0; r < m_plus_1; ++r) A.at(r, s) = u_classes[s].vec[r];
  for (unsigned p = 0; p < P; ++p)
    for (unsigned r = 0; r < m_plus_1; ++r) {
      unsigned diff =
          (c_classes[pairs[p].first].vec[r] + d - c_classes[pairs[p].second].vec[r]) % d;
      A.at(r, j + p) = (d - diff) % d;
    }
  const std::vector<unsigned>* pick = nullptr;
  auto ker = kernel_basis(A);
  for (const auto& kv : ker) {
    bool hits = false;
    for (unsigned s = 0; s < j; ++s)
      if (kv[s] != 0) hits = true;
    if (hits) {
      pick = &kv;
      break;
    }
  }
  if (!pick)
    throw infeasible("the symbol span and the coefficient-difference span meet trivially");

  std::vector<unsigned> delta(pick->begin(), pick->begin() + j);
  std::vector<unsigned> eps(pick->begin() + j, pick->end());
  unsigned sstar = 0;
  for (unsigned s = 0; s < j; ++s)
    if (delta[s] != 0) sstar = s;

  std::vector<unsigned> w(m_plus_1, 0);
  for (unsigned r = 0; r < m_plus_1; ++r) {
    unsigned acc = 0;
    for (unsigned s = 0; s < j; ++s) acc = (acc + delta[s] * u_classes[s].vec[r]) % d;
    w[r] = acc;
  }

  // wedging the remaining entries against w keeps only the s* term, with the
  // parity cost of moving it back from the last slot
  unsigned eff = delta[sstar];
  if ((j - 1 - sstar) % 2) eff = (d - eff) % d;

  std::vector<unit_class_mod_d> upstairs;
  for (unsigned s = 0; s < j; ++s) {
    if (s == sstar) continue;
    unit_class_mod_d v;
    v.d = d;
    v.vec = u_classes[s].vec;
    v.vec.push_back(0);
    upstairs.push_back(std::move(v));
  }
  unit_class_mod_d pi;
  pi.d = d;
  pi.vec.assign(m_plus_1 + 1, 0);
  pi.vec[m_plus_1] = 1;
  upstairs.push_back(std::move(pi));
  wedge_class over = wedge(upstairs);

  for (unsigned p = 0; p < P; ++p) {
    if (eps[p] == 0) continue;
    norm_factor fct;
    fct.alpha = pairs[p].first;
    fct.beta = pairs[p].second;
    fct.ext_u.exps.reserve(m_plus_1);
    for (unsigned r = 0; r < m_plus_1; ++r)
      fct.ext_u.exps.push_back(static_cast<long>(
          (c_classes[fct.alpha].vec[r] + d - c_classes[fct.beta].vec[r]) % d));
    fct.over_ext = over;
    fct.exponent = eps[p];
    dec.factors.push_back(std::move(fct));
  }
  dec.tag = norm_decomposition::case_kind::independent;
  dec.delta = eff;
  dec.witness = std::move(w);
  return dec;
}

bool expand_and_verify(const norm_decomposition& dec) {
  try {
    const wedge_class& t = dec.target;
    if (!dec.u_inputs.empty() && wedge(dec.u_inputs) != t) return false;
    if (dec.tag == norm_decomposition::case_kind::dependent)
      return t.is_zero() && dec.factors.empty();
    if (dec.delta % t.d == 0) return false;
    wedge_class acc = wedge_zero(t.d, t.m, t.j);
    for (const auto& f : dec.factors) {
      wedge_class down = kummer_norm_class(kummer_ext{f.ext_u}, f.over_ext);
      acc = add(acc, scale(down, static_cast<long>(f.exponent)));
    }
    return acc == scale(t, static_cast<long>(dec.delta));
  } catch (const error&) {
    return false;
  }
}

} // namespace henselkit
