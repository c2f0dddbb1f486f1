#include "henselkit/arith.hpp"

namespace henselkit {

std::vector<std::pair<bigint, unsigned>> factor_integer(const bigint& v0) {
  bigint v = v0 < 0 ? bigint(-v0) : v0;
  if (v == 0) throw precondition_violated("cannot factor zero");
  std::vector<std::pair<bigint, unsigned>> fs;
  auto pull = [&](const bigint& p) {
    unsigned e = 0;
    while (v % p == 0) {
      v /= p;
      ++e;
    }
    if (e) fs.push_back({p, e});
  };
  pull(2);
  for (bigint p = 3; p * p <= v && p < 1000000; p += 2) pull(p);
  if (v > 1) {
    if (mpz_probab_prime_p(v.get_mpz_t(), 32) == 0)
      throw budget_exceeded("composite cofactor beyond the trial division bound");
    fs.push_back({v, 1});
  }
  return fs;
}

std::vector<bigint> divisors_of(const bigint& v) {
  auto fs = factor_integer(v);
  std::vector<bigint> ds{1};
  for (const auto& [p, e] : fs) {
    size_t base = ds.size();
    bigint pw = 1;
    for (unsigned i = 1; i <= e; ++i) {
      pw *= p;
      for (size_t j = 0; j < base; ++j) {
        ds.push_back(ds[j] * pw);
        if (ds.size() > 10000) throw budget_exceeded("divisor count cap exceeded");
      }
    }
  }
  return ds;
}

bool is_prime(unsigned long p) {
  bigint v(static_cast<long>(p));
  return p >= 2 && mpz_probab_prime_p(v.get_mpz_t(), 32) != 0;
}

long val_at(const rat& x, const bigint& p) {
  if (x == 0) throw precondition_violated("valuation of zero");
  if (p < 2) throw precondition_violated("valuation needs a prime");
  bigint tmp;
  long vn = static_cast<long>(mpz_remove(tmp.get_mpz_t(), x.get_num_mpz_t(), p.get_mpz_t()));
  long vd = static_cast<long>(mpz_remove(tmp.get_mpz_t(), x.get_den_mpz_t(), p.get_mpz_t()));
  return vn - vd;
}

rat unit_part(const rat& x, const bigint& p) {
  long v = val_at(x, p);
  rat pw(p);
  rat out = x;
  for (long i = 0; i < v; ++i) out /= pw;
  for (long i = 0; i > v; --i) out *= pw;
  return out;
}

bigint squarefree_part(const bigint& v) {
  if (v == 0) throw precondition_violated("squarefree part of zero");
  auto fs = factor_integer(v);
  bigint s = v < 0 ? -1 : 1;
  for (const auto& [p, e] : fs)
    if (e % 2) s *= p;
  return s;
}

} // namespace henselkit
