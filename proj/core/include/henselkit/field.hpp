#pragma once
#include <string>

#include "henselkit/xrat.hpp"

namespace henselkit {

enum class field_kind { rationals, prime_field };

struct field_desc {
  field_kind kind = field_kind::rationals;
  unsigned long p = 0; // prime modulus when kind == prime_field

  static field_desc Q() { return {}; }
  static field_desc Fp(unsigned long p); // verifies primality

  bool operator==(const field_desc&) const = default;

  std::string name() const; // "Q" or "Fp:<p>"
  static field_desc parse(const std::string& s);
};

// One element of Q or of F_p.  F_p elements are kept as canonical residues
// 0..p-1; constructing one from a fraction applies num * den^{-1} mod p.
class field_elem {
public:
  field_elem() = default;
  field_elem(const field_desc& fd, const rat& value);
  field_elem(const field_desc& fd, long value) : field_elem(fd, rat(value)) {}

  static field_elem zero(const field_desc& fd) { return field_elem(fd, 0); }
  static field_elem one(const field_desc& fd) { return field_elem(fd, 1); }

  const field_desc& field() const { return fd_; }
  const rat& value() const { return v_; }
  bool is_zero() const { return v_ == 0; }

  field_elem operator-() const;
  friend field_elem operator+(const field_elem& a, const field_elem& b);
  friend field_elem operator-(const field_elem& a, const field_elem& b);
  friend field_elem operator*(const field_elem& a, const field_elem& b);
  friend field_elem operator/(const field_elem& a, const field_elem& b);
  field_elem inverse() const;
  field_elem pow(long e) const;

  friend bool operator==(const field_elem& a, const field_elem& b) {
    return a.fd_ == b.fd_ && a.v_ == b.v_;
  }

  std::string str() const; // reduced fraction for Q, residue for F_p
  static field_elem parse(const field_desc& fd, const std::string& s);

private:
  field_desc fd_;
  rat v_ = 0;
};

void require_same_field(const field_desc& a, const field_desc& b);

} // namespace henselkit
