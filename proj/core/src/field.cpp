#include "henselkit/field.hpp"

namespace henselkit {

rat parse_rat(const std::string& s) {
  if (s.empty()) throw parse_error("empty rational");
  try {
    rat r(s);
    // canonicalize() divides by the denominator's gcd and dies on zero, so
    // reject "n/0" before touching it
    if (mpz_sgn(r.get_den().get_mpz_t()) == 0) throw parse_error("zero denominator in '" + s + "'");
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    throw parse_error("bad rational '" + s + "'");
  }
}

std::string rat_str(const rat& x) { return x.get_str(); }

field_desc field_desc::Fp(unsigned long p) {
  bigint z(static_cast<unsigned long>(p));
  if (p < 2 || mpz_probab_prime_p(z.get_mpz_t(), 32) == 0)
    throw precondition_violated("modulus " + std::to_string(p) + " is not prime");
  field_desc fd;
  fd.kind = field_kind::prime_field;
  fd.p = p;
  return fd;
}

std::string field_desc::name() const {
  return kind == field_kind::rationals ? "Q" : "Fp:" + std::to_string(p);
}

field_desc field_desc::parse(const std::string& s) {
  if (s == "Q") return Q();
  if (s.rfind("Fp:", 0) == 0) {
    try {
      return Fp(std::stoul(s.substr(3)));
    } catch (const precondition_violated&) {
      throw;
    } catch (...) {
      throw parse_error("bad field '" + s + "'");
    }
  }
  throw parse_error("bad field '" + s + "' (want Q or Fp:<p>)");
}

namespace {

rat reduce_mod_p(const rat& value, unsigned long p) {
  bigint mod(p);
  bigint den_inv;
  if (mpz_invert(den_inv.get_mpz_t(), value.get_den_mpz_t(), mod.get_mpz_t()) == 0)
    throw precondition_violated("denominator divisible by " + std::to_string(p));
  bigint r = value.get_num() * den_inv;
  mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), mod.get_mpz_t());
  return rat(r);
}

} // namespace

field_elem::field_elem(const field_desc& fd, const rat& value) : fd_(fd), v_(value) {
  v_.canonicalize();
  if (fd_.kind == field_kind::prime_field) v_ = reduce_mod_p(v_, fd_.p);
}

void require_same_field(const field_desc& a, const field_desc& b) {
  if (!(a == b))
    throw field_mismatch(a.name() + " vs " + b.name());
}

field_elem field_elem::operator-() const { return field_elem(fd_, rat(-v_)); }

field_elem operator+(const field_elem& a, const field_elem& b) {
  require_same_field(a.fd_, b.fd_);
  return field_elem(a.fd_, rat(a.v_ + b.v_));
}

field_elem operator-(const field_elem& a, const field_elem& b) {
  require_same_field(a.fd_, b.fd_);
  return field_elem(a.fd_, rat(a.v_ - b.v_));
}

field_elem operator*(const field_elem& a, const field_elem& b) {
  require_same_field(a.fd_, b.fd_);
  return field_elem(a.fd_, rat(a.v_ * b.v_));
}

field_elem field_elem::inverse() const {
  if (is_zero()) throw zero_series("inverse of zero field element");
  if (fd_.kind == field_kind::rationals) return field_elem(fd_, rat(1 / v_));
  bigint mod(fd_.p), inv;
  mpz_invert(inv.get_mpz_t(), v_.get_num_mpz_t(), mod.get_mpz_t());
  return field_elem(fd_, rat(inv));
}

field_elem operator/(const field_elem& a, const field_elem& b) { return a * b.inverse(); }

field_elem field_elem::pow(long e) const {
  if (e == 0) return one(fd_);
  field_elem base = e < 0 ? inverse() : *this;
  unsigned long n = e < 0 ? -static_cast<unsigned long>(e) : e;
  field_elem acc = one(fd_);
  while (n) {
    if (n & 1) acc = acc * base;
    base = base * base;
    n >>= 1;
  }
  return acc;
}

std::string field_elem::str() const { return rat_str(v_); }

field_elem field_elem::parse(const field_desc& fd, const std::string& s) {
  return field_elem(fd, parse_rat(s));
}

} // namespace henselkit
