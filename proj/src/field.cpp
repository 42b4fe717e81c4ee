#include "trihoch/field.hpp"

namespace trihoch {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
  if (p >= (1u << 31)) throw std::invalid_argument("prime modulus must be below 2^31");
  if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
}

PrimeField::value_type PrimeField::from_ratio(const mpz_class& num, const mpz_class& den) const {
  mpz_class n = num % p_;
  mpz_class d = den % p_;
  if (n < 0) n += p_;
  if (d < 0) d += p_;
  if (d == 0) throw std::domain_error("denominator divisible by " + std::to_string(p_));
  return mul(static_cast<value_type>(n.get_ui()), inv(static_cast<value_type>(d.get_ui())));
}

PrimeField::value_type PrimeField::inv(value_type a) const {
  if (a == 0) throw std::domain_error("inverse of zero");
  // Fermat: a^(p-2)
  std::uint64_t result = 1, base = a, e = p_ - 2;
  while (e) {
    if (e & 1) result = result * base % p_;
    base = base * base % p_;
    e >>= 1;
  }
  return static_cast<value_type>(result);
}

template <class F>
typename F::value_type parse_scalar(const F& field, const std::string& text) {
  auto slash = text.find('/');
  mpz_class num, den(1);
  bool ok;
  if (slash == std::string::npos) {
    ok = !text.empty() && num.set_str(text, 10) == 0;
  } else {
    ok = slash > 0 && slash + 1 < text.size() && num.set_str(text.substr(0, slash), 10) == 0 &&
         den.set_str(text.substr(slash + 1), 10) == 0;
  }
  if (!ok) throw std::invalid_argument("malformed coefficient '" + text + "'");
  return field.from_ratio(num, den);
}

template Rationals::value_type parse_scalar(const Rationals&, const std::string&);
template PrimeField::value_type parse_scalar(const PrimeField&, const std::string&);

}  // namespace trihoch
