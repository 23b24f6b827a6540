#pragma once

// Working-precision scalar types shared by every module.
//
// Real is a variable-precision MPFR number. A value keeps the precision it was
// created with, so each operation that takes a PrecisionContext opens a
// PrecisionScope and materializes its parameters inside it.

#include <boost/multiprecision/mpfr.hpp>

#include <string>
#include <string_view>

namespace qzeros {

using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                           boost::multiprecision::et_off>;

struct Complex {
  Real re;
  Real im;

  Complex() : re(0), im(0) {}
  Complex(const Real& r) : re(r), im(0) {}  // NOLINT(google-explicit-constructor)
  Complex(const Real& r, const Real& i) : re(r), im(i) {}
  Complex(int r) : re(r), im(0) {}  // NOLINT(google-explicit-constructor)
  Complex(double r, double i = 0.0) : re(r), im(i) {}  // NOLINT(google-explicit-constructor)

  Complex& operator+=(const Complex& o) { re += o.re; im += o.im; return *this; }
  Complex& operator-=(const Complex& o) { re -= o.re; im -= o.im; return *this; }
  Complex& operator*=(const Complex& o);
  Complex& operator/=(const Complex& o);
};

Complex operator+(Complex a, const Complex& b);
Complex operator-(Complex a, const Complex& b);
Complex operator-(const Complex& a);
Complex operator*(Complex a, const Complex& b);
Complex operator/(Complex a, const Complex& b);
Complex operator*(const Complex& a, const Real& s);
Complex operator*(const Real& s, const Complex& a);
Complex operator/(const Complex& a, const Real& s);

Real abs(const Complex& z);
Complex conj(const Complex& z);
Complex polar(const Real& r, const Real& theta);
Complex sqrt(const Complex& z);

/// Exact decimal text for a parameter. Materialized as a Real at whatever
/// precision is current, so one spec can be evaluated at several precisions.
class Decimal {
 public:
  Decimal() : text_("0") {}
  Decimal(double v);            // NOLINT(google-explicit-constructor)
  Decimal(int v);               // NOLINT(google-explicit-constructor)
  Decimal(const char* text);    // NOLINT(google-explicit-constructor)
  Decimal(std::string text);    // NOLINT(google-explicit-constructor)

  [[nodiscard]] const std::string& text() const { return text_; }
  [[nodiscard]] Real value() const;
  [[nodiscard]] double to_double() const;

  friend bool operator==(const Decimal& a, const Decimal& b) { return a.text_ == b.text_; }

 private:
  std::string text_;
};

struct PrecisionContext {
  unsigned bits = 256;
  Real eps_id;    // identity-residual tolerance, default 2^(-bits/2)
  Real eps_real;  // realness tolerance, default 2^(-bits/4)

  /// Default tolerances for `bits`; throws DomainError if bits < 64.
  static PrecisionContext with_bits(unsigned bits);

  /// Same bits, identity tolerance scaled by 2^(-extra_bits).
  [[nodiscard]] PrecisionContext tightened(unsigned extra_bits) const;

  /// Unit roundoff 2^(-bits).
  [[nodiscard]] Real unit_roundoff() const;

  /// Decimal digits that round-trip a value at this precision.
  [[nodiscard]] unsigned digits10() const;
};

/// Sets the process-wide default MPFR precision for its lifetime.
/// Not thread-safe: the default precision is global state in Boost.
class PrecisionScope {
 public:
  explicit PrecisionScope(unsigned bits);
  explicit PrecisionScope(const PrecisionContext& ctx) : PrecisionScope(ctx.bits) {}
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned saved_digits10_;
};

/// Copy of x rounded to the current default precision.
Real lift(const Real& x);
Complex lift(const Complex& z);

/// Decimal string with `digits` significant digits; 0 means full precision.
std::string to_decimal(const Real& x, unsigned digits = 0);

/// 2^e as a Real at the current precision.
Real pow2(long e);

inline Real rmax(const Real& a, const Real& b) { return a < b ? b : a; }
inline Real rmin(const Real& a, const Real& b) { return b < a ? b : a; }

}  // namespace qzeros
