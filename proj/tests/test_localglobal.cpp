#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <vector>

#include "henselkit/arith.hpp"
#include "henselkit/localglobal.hpp"

using namespace henselkit;

namespace {

// Primitive solvability of z^2 = a x^2 + b y^2 mod p^k by raw enumeration of
// every triple with at least one unit coordinate.  Cubic in p^k, so keep the
// inputs tiny; the point is to be obviously correct, not fast.
bool brute_conic_mod(long a, long b, long p, int k) {
  long mod = 1;
  for (int i = 0; i < k; ++i) mod *= p;
  auto red = [&](long v) { return ((v % mod) + mod) % mod; };
  long ar = red(a), br = red(b);
  for (long x = 0; x < mod; ++x)
    for (long y = 0; y < mod; ++y)
      for (long z = 0; z < mod; ++z) {
        if (x % p == 0 && y % p == 0 && z % p == 0) continue;
        if (red(z * z - ar * x * x - br * y * y) == 0) return true;
      }
  return false;
}

// divide out the square part of the p-power so the valuation lands in {0, 1};
// the symbol only sees the class mod squares
long strip_square_p(long v, long p) {
  while (v % (p * p) == 0) v /= p * p;
  return v;
}

} // namespace

TEST_CASE("pinned symbols") {
  CHECK(hilbert_symbol(rat(-1), rat(-1), real_place()) == -1);
  CHECK(hilbert_symbol(rat(-1), rat(-1), finite_place(2)) == -1);
  CHECK(hilbert_symbol(rat(-1), rat(-1), finite_place(3)) == 1);
  CHECK(hilbert_symbol(rat(1), rat(-17), real_place()) == 1);
  CHECK(hilbert_symbol(rat(2), rat(7), finite_place(7)) == 1);  // 2 = 3^2 mod 7
  CHECK(hilbert_symbol(rat(3), rat(7), finite_place(7)) == -1); // 3 is not a square
  CHECK(hilbert_symbol(rat(2), rat(3), finite_place(5)) == 1);  // unramified units
}

TEST_CASE("symbols against raw enumeration at small places") {
  // after stripping even p-powers the valuations are 0 or 1, and mod p^3
  // (odd p) or 2^5 solvability decides the p-adic conic by a Hensel step
  std::vector<long> vals = {1, -1, 2, -2, 3, -3, 5, 6, -6, 7, 10, 15};
  for (long a : vals)
    for (long b : vals) {
      {
        long as = strip_square_p(a, 3), bs = strip_square_p(b, 3);
        bool want = brute_conic_mod(as, bs, 3, 3);
        CHECK((hilbert_symbol(rat(a), rat(b), finite_place(3)) == 1) == want);
      }
      {
        long as = strip_square_p(a, 2), bs = strip_square_p(b, 2);
        bool want = brute_conic_mod(as, bs, 2, 5);
        CHECK((hilbert_symbol(rat(a), rat(b), finite_place(2)) == 1) == want);
      }
      bool real_want = a > 0 || b > 0;
      CHECK((hilbert_symbol(rat(a), rat(b), real_place()) == 1) == real_want);
    }
}

TEST_CASE("bilinearity and symmetry on rationals") {
  std::vector<rat> xs = {rat(2), frac(-3, 5), rat(7), frac(1, 6), rat(-1)};
  std::vector<place> places = {real_place(), finite_place(2), finite_place(3),
                               finite_place(5), finite_place(7)};
  for (const place& v : places)
    for (const rat& a : xs)
      for (const rat& b : xs) {
        CHECK(hilbert_symbol(a, b, v) == hilbert_symbol(b, a, v));
        for (const rat& c : xs) {
          rat bc = b * c;
          CHECK(hilbert_symbol(a, bc, v) ==
                hilbert_symbol(a, b, v) * hilbert_symbol(a, c, v));
        }
        rat sq = a * a;
        CHECK(hilbert_symbol(sq, b, v) == 1);
      }
}

TEST_CASE("product formula over the ramified places") {
  std::vector<rat> xs = {rat(2), rat(-5), frac(3, 7), frac(-14, 9), rat(30),
                         frac(11, 4), rat(-1)};
  for (const rat& a : xs)
    for (const rat& b : xs) {
      int prod = 1;
      for (const place& v : ramified_places(a, b))
        prod *= hilbert_symbol(a, b, v);
      CHECK(prod == 1);
    }
}

TEST_CASE("ramified place lists") {
  std::vector<place> ps = ramified_places(frac(3, 10), rat(-7));
  auto has = [&](const place& v) {
    return std::find(ps.begin(), ps.end(), v) != ps.end();
  };
  CHECK(has(real_place()));
  CHECK(has(finite_place(2)));
  CHECK(has(finite_place(3)));
  CHECK(has(finite_place(5)));
  CHECK(has(finite_place(7)));
  CHECK(!has(finite_place(11)));
  // off the list the symbol is trivial
  CHECK(hilbert_symbol(frac(3, 10), rat(-7), finite_place(11)) == 1);
  CHECK(hilbert_symbol(frac(3, 10), rat(-7), finite_place(13)) == 1);
}

TEST_CASE("squares in completions") {
  CHECK(square_in_completion(rat(2), finite_place(7)));
  CHECK(!square_in_completion(rat(2), finite_place(5)));
  CHECK(!square_in_completion(rat(-1), real_place()));
  CHECK(square_in_completion(frac(4, 9), finite_place(5)));
  CHECK(square_in_completion(rat(17), finite_place(2))); // 17 = 1 mod 16
  CHECK(!square_in_completion(rat(5), finite_place(2)));
}

TEST_CASE("local and global membership for a pointless conic") {
  conic C{rat(-1), rat(-1)};
  CHECK(!conic_local_solvable(C, real_place()));
  CHECK(!conic_local_solvable(C, finite_place(2)));
  CHECK(local_norm_membership(rat(2), C, real_place()));
  CHECK(!local_norm_membership(rat(-2), C, real_place()));
  CHECK(local_norm_membership(rat(-2), C, finite_place(2))); // finite places never obstruct
  CHECK(global_membership_decide(rat(2), C));
  CHECK(!global_membership_decide(rat(-2), C));

  conic D{rat(1), rat(1)}; // has the point (1, 0, 1): everything is a member
  for (long x : {2, -2, 7, -30})
    CHECK(global_membership_decide(rat(x), D));
}

TEST_CASE("witness search finds verified certificates") {
  conic D{rat(1), rat(1)};
  for (rat x : {rat(7), rat(25), frac(9, 2), rat(-3)}) {
    std::optional<norm_witness> w = witness_search(x, D);
    REQUIRE(w.has_value());
    CHECK(verify_witness(*w, D));
    rat prod = 1;
    for (const auto& f : w->factors) {
      prod *= f.y;
      CHECK(f.d != 0);
      CHECK(f.d != 1);
      CHECK(f.d == squarefree_part(f.d));
    }
    CHECK(prod == x);
  }
}

TEST_CASE("witness search refuses non-members and respects bounds") {
  conic C{rat(-1), rat(-1)};
  CHECK_THROWS_AS((void)witness_search(rat(-2), C), error);

  conic D{rat(1), rat(1)};
  witness_options tight;
  tight.bound = 1;
  CHECK(!witness_search(rat(7), D, tight).has_value());
}

TEST_CASE("verification rejects tampered witnesses") {
  conic D{rat(1), rat(1)};
  std::optional<norm_witness> w = witness_search(rat(7), D);
  REQUIRE(w.has_value());
  REQUIRE(verify_witness(*w, D));

  norm_witness bad = *w;
  bad.x = bad.x + 1;
  CHECK(!verify_witness(bad, D));

  norm_witness scaled = *w;
  REQUIRE(!scaled.factors.empty());
  scaled.factors[0].y = scaled.factors[0].y * 3;
  CHECK(!verify_witness(scaled, D));
}
