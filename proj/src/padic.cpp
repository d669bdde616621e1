#include "thetalab/padic.hpp"

#include <sstream>

namespace thetalab::padic {

Int pow_ui(unsigned long base, unsigned exp) {
  Int r;
  mpz_ui_pow_ui(r.get_mpz_t(), base, exp);
  return r;
}

PadicInt::PadicInt(unsigned long prime, unsigned precision, Int residue)
    : prime_(prime), precision_(precision), residue_(std::move(residue)),
      modulus_(pow_ui(prime, precision)) {
  if (precision_ == 0) throw computation_error("PadicInt precision must be >= 1");
  mpz_mod(residue_.get_mpz_t(), residue_.get_mpz_t(), modulus_.get_mpz_t());
}

unsigned PadicInt::valuation() const {
  if (residue_ == 0) return precision_;
  unsigned v = 0;
  Int r = residue_;
  while (mpz_divisible_ui_p(r.get_mpz_t(), prime_)) {
    mpz_divexact_ui(r.get_mpz_t(), r.get_mpz_t(), prime_);
    ++v;
  }
  return v;
}

void PadicInt::check_same(const PadicInt& o) const {
  if (prime_ != o.prime_)
    throw computation_error("PadicInt prime mismatch");
}

PadicInt PadicInt::operator+(const PadicInt& o) const {
  check_same(o);
  unsigned n = std::min(precision_, o.precision_);
  return PadicInt(prime_, n, residue_ + o.residue_);
}

PadicInt PadicInt::operator-(const PadicInt& o) const {
  check_same(o);
  unsigned n = std::min(precision_, o.precision_);
  return PadicInt(prime_, n, residue_ - o.residue_);
}

PadicInt PadicInt::operator*(const PadicInt& o) const {
  check_same(o);
  unsigned n = std::min(precision_, o.precision_);
  return PadicInt(prime_, n, residue_ * o.residue_);
}

PadicInt PadicInt::operator-() const {
  return PadicInt(prime_, precision_, -residue_);
}

bool PadicInt::operator==(const PadicInt& o) const {
  if (prime_ != o.prime_) return false;
  unsigned n = std::min(precision_, o.precision_);
  Int m = pow_ui(prime_, n);
  Int a, b;
  mpz_mod(a.get_mpz_t(), residue_.get_mpz_t(), m.get_mpz_t());
  mpz_mod(b.get_mpz_t(), o.residue_.get_mpz_t(), m.get_mpz_t());
  return a == b;
}

PadicInt PadicInt::unit_inverse() const {
  if (mpz_divisible_ui_p(residue_.get_mpz_t(), prime_))
    throw computation_error("PadicInt: inverse of a non-unit");
  Int inv;
  if (mpz_invert(inv.get_mpz_t(), residue_.get_mpz_t(), modulus_.get_mpz_t()) == 0)
    throw computation_error("PadicInt: inverse does not exist");
  return PadicInt(prime_, precision_, inv);
}

PadicInt PadicInt::pow(unsigned long e) const {
  Int r;
  mpz_powm_ui(r.get_mpz_t(), residue_.get_mpz_t(), e, modulus_.get_mpz_t());
  return PadicInt(prime_, precision_, r);
}

PadicInt PadicInt::shift_down(unsigned k) const {
  if (k == 0) return *this;
  if (valuation() < k)
    throw computation_error("PadicInt: shift_down below valuation");
  if (precision_ <= k)
    throw computation_error("PadicInt: shift_down exhausts precision");
  Int pk = pow_ui(prime_, k);
  Int r;
  mpz_divexact(r.get_mpz_t(), residue_.get_mpz_t(), pk.get_mpz_t());
  return PadicInt(prime_, precision_ - k, r);
}

PadicInt PadicInt::truncated(unsigned precision) const {
  if (precision >= precision_) return *this;
  return PadicInt(prime_, precision, residue_);
}

PadicInt PadicInt::from_rational(unsigned long prime, unsigned precision,
                                 const exactnum::Rat& q) {
  Int den = q.get_den();
  if (mpz_divisible_ui_p(den.get_mpz_t(), prime))
    throw computation_error("rational has negative p-adic valuation");
  Int mod = pow_ui(prime, precision);
  Int inv;
  Int denm;
  mpz_mod(denm.get_mpz_t(), den.get_mpz_t(), mod.get_mpz_t());
  if (mpz_invert(inv.get_mpz_t(), denm.get_mpz_t(), mod.get_mpz_t()) == 0)
    throw computation_error("rational denominator not invertible mod p^N");
  return PadicInt(prime, precision, Int(q.get_num()) * inv);
}

std::vector<unsigned> padic_digits(const PadicInt& x, unsigned count) {
  if (count > x.precision())
    throw computation_error("padic_digits: count exceeds precision");
  std::vector<unsigned> out;
  out.reserve(count);
  Int r = x.residue();
  for (unsigned i = 0; i < count; ++i) {
    out.push_back(mpz_fdiv_ui(r.get_mpz_t(), x.prime()));
    mpz_fdiv_q_ui(r.get_mpz_t(), r.get_mpz_t(), x.prime());
  }
  return out;
}

std::string digits_to_string(const std::vector<unsigned>& digits) {
  std::ostringstream os;
  for (size_t i = 0; i < digits.size(); ++i) {
    if (i) os << ",";
    os << digits[i];
  }
  return os.str();
}

}  // namespace thetalab::padic
