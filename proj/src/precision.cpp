#include "qzeros/precision.hpp"

#include <charconv>
#include <cmath>
#include <ios>
#include <system_error>

#include "qzeros/errors.hpp"

namespace qzeros {

Complex& Complex::operator*=(const Complex& o) {
  Real r = re * o.re - im * o.im;
  Real i = re * o.im + im * o.re;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

Complex& Complex::operator/=(const Complex& o) {
  const Real den = o.re * o.re + o.im * o.im;
  Real r = (re * o.re + im * o.im) / den;
  Real i = (im * o.re - re * o.im) / den;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

Complex operator+(Complex a, const Complex& b) { return a += b; }
Complex operator-(Complex a, const Complex& b) { return a -= b; }
Complex operator-(const Complex& a) { return {-a.re, -a.im}; }
Complex operator*(Complex a, const Complex& b) { return a *= b; }
Complex operator/(Complex a, const Complex& b) { return a /= b; }
Complex operator*(const Complex& a, const Real& s) { return {a.re * s, a.im * s}; }
Complex operator*(const Real& s, const Complex& a) { return {a.re * s, a.im * s}; }
Complex operator/(const Complex& a, const Real& s) { return {a.re / s, a.im / s}; }

Real abs(const Complex& z) {
  if (z.im == 0) return boost::multiprecision::abs(z.re);
  return boost::multiprecision::hypot(z.re, z.im);
}

Complex conj(const Complex& z) { return {z.re, -z.im}; }

Complex polar(const Real& r, const Real& theta) {
  return {r * boost::multiprecision::cos(theta), r * boost::multiprecision::sin(theta)};
}

Complex sqrt(const Complex& z) {
  if (z.im == 0) {
    if (z.re >= 0) return {boost::multiprecision::sqrt(z.re), Real(0)};
    return {Real(0), boost::multiprecision::sqrt(-z.re)};
  }
  const Real m = abs(z);
  Real a = boost::multiprecision::sqrt((m + z.re) / 2);
  Real b = boost::multiprecision::sqrt((m - z.re) / 2);
  if (z.im < 0) b = -b;
  return {a, b};
}

Decimal::Decimal(double v) {
  if (!std::isfinite(v)) throw DomainError("non-finite parameter");
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) throw DomainError("cannot format parameter");
  text_.assign(buf, end);
}

Decimal::Decimal(int v) : text_(std::to_string(v)) {}

Decimal::Decimal(const char* text) : Decimal(std::string(text)) {}

Decimal::Decimal(std::string text) : text_(std::move(text)) {
  if (text_.empty()) throw DomainError("empty numeric parameter");
  // Validate eagerly so malformed input fails at the boundary.
  try {
    Real probe(text_);
    if (!boost::multiprecision::isfinite(probe)) throw DomainError("non-finite parameter '" + text_ + "'");
  } catch (const std::runtime_error&) {
    throw DomainError("malformed numeric parameter '" + text_ + "'");
  }
}

Real Decimal::value() const { return Real(text_); }

double Decimal::to_double() const { return std::stod(text_); }

namespace {

unsigned digits10_for_bits(unsigned bits) { return (bits * 301u + 999u) / 1000u; }

}  // namespace

PrecisionContext PrecisionContext::with_bits(unsigned bits) {
  if (bits < 64) throw DomainError("precision must be at least 64 bits");
  PrecisionScope scope(bits);
  PrecisionContext ctx;
  ctx.bits = bits;
  ctx.eps_id = pow2(-static_cast<long>(bits / 2));
  ctx.eps_real = pow2(-static_cast<long>(bits / 4));
  return ctx;
}

PrecisionContext PrecisionContext::tightened(unsigned extra_bits) const {
  PrecisionScope scope(bits);
  PrecisionContext out = *this;
  out.eps_id = lift(eps_id) * pow2(-static_cast<long>(extra_bits));
  return out;
}

Real PrecisionContext::unit_roundoff() const {
  PrecisionScope scope(bits);
  return pow2(-static_cast<long>(bits));
}

unsigned PrecisionContext::digits10() const { return digits10_for_bits(bits) + 1; }

PrecisionScope::PrecisionScope(unsigned bits) : saved_digits10_(Real::default_precision()) {
  Real::default_precision(digits10_for_bits(bits));
}

PrecisionScope::~PrecisionScope() { Real::default_precision(saved_digits10_); }

Real lift(const Real& x) { return Real(x, Real::default_precision()); }

Complex lift(const Complex& z) { return {lift(z.re), lift(z.im)}; }

std::string to_decimal(const Real& x, unsigned digits) {
  if (digits == 0) {
    // Round-trip digits for the value's own precision.
    digits = static_cast<unsigned>(x.precision()) + 2;
  }
  // Scientific precision counts digits after the point.
  return x.str(static_cast<std::streamsize>(digits - 1), std::ios_base::scientific);
}

Real pow2(long e) { return boost::multiprecision::ldexp(Real(1), static_cast<int>(e)); }

}  // namespace qzeros
