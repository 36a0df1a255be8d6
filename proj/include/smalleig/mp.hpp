#pragma once

#include <mpfr.h>

#include <complex>
#include <string>
#include <utility>

namespace smalleig {

// Software extended-precision real: correctly rounded base operations at a
// fixed mantissa width. Used by the verify-module oracles and by tests;
// the solver itself runs at hardware doubles.
class MpReal {
 public:
  static constexpr int kDefaultBits = 240;

  MpReal() : MpReal(0.0) {}
  explicit MpReal(double v, int bits = kDefaultBits);
  explicit MpReal(long v, int bits = kDefaultBits);
  MpReal(const MpReal& o);
  MpReal(MpReal&& o) noexcept;
  MpReal& operator=(const MpReal& o);
  MpReal& operator=(MpReal&& o) noexcept;
  ~MpReal();

  int bits() const { return static_cast<int>(mpfr_get_prec(v_)); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }

  friend MpReal operator+(const MpReal& a, const MpReal& b);
  friend MpReal operator-(const MpReal& a, const MpReal& b);
  friend MpReal operator*(const MpReal& a, const MpReal& b);
  friend MpReal operator/(const MpReal& a, const MpReal& b);
  MpReal operator-() const;

  MpReal& operator+=(const MpReal& b);
  MpReal& operator-=(const MpReal& b);
  MpReal& operator*=(const MpReal& b);

  friend bool operator<(const MpReal& a, const MpReal& b);
  friend bool operator<=(const MpReal& a, const MpReal& b);
  friend bool operator>(const MpReal& a, const MpReal& b);
  friend bool operator>=(const MpReal& a, const MpReal& b);

  friend MpReal sqrt(const MpReal& a);
  friend MpReal abs(const MpReal& a);
  friend MpReal log(const MpReal& a);
  friend MpReal log2(const MpReal& a);
  friend MpReal exp(const MpReal& a);
  friend MpReal ceil(const MpReal& a);
  friend MpReal pow_si(const MpReal& a, long e);
  friend MpReal root_ui(const MpReal& a, unsigned long m);  // a^(1/m), a > 0
  friend MpReal min(const MpReal& a, const MpReal& b);
  friend MpReal max(const MpReal& a, const MpReal& b);

  long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }
  std::string str() const;

 private:
  mpfr_t v_;
  static int result_bits(const MpReal& a, const MpReal& b);
};

struct MpComplex {
  MpReal re, im;

  MpComplex() = default;
  MpComplex(MpReal r, MpReal i) : re(std::move(r)), im(std::move(i)) {}
  explicit MpComplex(double r, double i = 0.0, int bits = MpReal::kDefaultBits)
      : re(r, bits), im(i, bits) {}

  friend MpComplex operator+(const MpComplex& a, const MpComplex& b);
  friend MpComplex operator-(const MpComplex& a, const MpComplex& b);
  friend MpComplex operator*(const MpComplex& a, const MpComplex& b);
  friend MpComplex operator/(const MpComplex& a, const MpComplex& b);
  MpComplex operator-() const;
  MpComplex& operator+=(const MpComplex& b);
  MpComplex& operator-=(const MpComplex& b);

  friend MpComplex conj(const MpComplex& a);
  friend MpReal abs2(const MpComplex& a);
  friend MpReal abs(const MpComplex& a);

  std::complex<double> to_complex() const {
    return {re.to_double(), im.to_double()};
  }
};

}  // namespace smalleig
