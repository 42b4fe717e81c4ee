#pragma once

// Exact ground fields.  Both field classes follow the same small interface so
// the engine can be instantiated over either:
//
//   value_type, zero(), one(), from_int(), from_ratio(),
//   add(), sub(), mul(), neg(), inv(), is_zero(), equal(), to_string()
//
// Elements are plain values; the field object carries the context (the
// modulus for prime fields).  Field objects are immutable and cheap to copy.

#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace trihoch {

/// The rationals, backed by GMP arbitrary-precision integers.
class Rationals {
 public:
  using value_type = mpq_class;

  value_type zero() const { return value_type(0); }
  value_type one() const { return value_type(1); }
  value_type from_int(long long v) const {
    mpz_class z;
    z = static_cast<long>(v);
    return value_type(z);
  }
  value_type from_ratio(const mpz_class& num, const mpz_class& den) const {
    if (den == 0) throw std::domain_error("zero denominator");
    value_type q(num, den);
    q.canonicalize();
    return q;
  }

  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type neg(const value_type& a) const { return -a; }
  value_type inv(const value_type& a) const {
    if (sgn(a) == 0) throw std::domain_error("inverse of zero");
    return 1 / a;
  }
  // a -= c * b, in place; the hot path of every elimination.
  void sub_mul(value_type& a, const value_type& c, const value_type& b) const {
    thread_local mpq_class tmp;
    mpq_mul(tmp.get_mpq_t(), c.get_mpq_t(), b.get_mpq_t());
    mpq_sub(a.get_mpq_t(), a.get_mpq_t(), tmp.get_mpq_t());
  }

  bool is_zero(const value_type& a) const { return sgn(a) == 0; }
  bool equal(const value_type& a, const value_type& b) const { return a == b; }
  std::string to_string(const value_type& a) const { return a.get_str(); }
  std::string name() const { return "QQ"; }

  bool operator==(const Rationals&) const { return true; }
};

/// Z/pZ for a prime p < 2^31, elements stored as canonical residues.
class PrimeField {
 public:
  using value_type = std::uint32_t;

  // Default object is GF(2); it exists so containers can be default-built.
  PrimeField() : p_(2) {}
  explicit PrimeField(std::uint32_t p);

  std::uint32_t modulus() const { return p_; }

  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type from_int(long long v) const {
    long long r = v % static_cast<long long>(p_);
    if (r < 0) r += p_;
    return static_cast<value_type>(r);
  }
  value_type from_ratio(const mpz_class& num, const mpz_class& den) const;

  value_type add(value_type a, value_type b) const {
    std::uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  value_type sub(value_type a, value_type b) const { return a >= b ? a - b : a + p_ - b; }
  value_type mul(value_type a, value_type b) const {
    return static_cast<value_type>(static_cast<std::uint64_t>(a) * b % p_);
  }
  value_type neg(value_type a) const { return a == 0 ? 0 : p_ - a; }
  value_type inv(value_type a) const;
  void sub_mul(value_type& a, value_type c, value_type b) const { a = sub(a, mul(c, b)); }

  bool is_zero(value_type a) const { return a == 0; }
  bool equal(value_type a, value_type b) const { return a == b; }
  std::string to_string(value_type a) const { return std::to_string(a); }
  std::string name() const { return "GF(" + std::to_string(p_) + ")"; }

  bool operator==(const PrimeField& o) const { return p_ == o.p_; }

 private:
  std::uint32_t p_;
};

bool is_prime(std::uint64_t n);

/// Parses an integer or a fraction "p/q" into the field.
template <class F>
typename F::value_type parse_scalar(const F& field, const std::string& text);

}  // namespace trihoch
