#pragma once
#include <utility>
#include <vector>

#include "henselkit/xrat.hpp"

namespace henselkit {

// Trial division up to 10^6 with a primality test on the cofactor; throws
// budget_exceeded when the leftover is composite.  The sign is dropped,
// zero is rejected.
std::vector<std::pair<bigint, unsigned>> factor_integer(const bigint& v);

// All positive divisors, deterministic order, capped at 10^4.
std::vector<bigint> divisors_of(const bigint& v);

bool is_prime(unsigned long p);

// p-adic valuation and unit part of a nonzero rational.
long val_at(const rat& x, const bigint& p);
rat unit_part(const rat& x, const bigint& p);

// Largest squarefree divisor pattern: v = s * square, sign kept on s.
bigint squarefree_part(const bigint& v);

} // namespace henselkit
