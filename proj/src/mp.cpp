#include "smalleig/mp.hpp"

#include <algorithm>

namespace smalleig {

MpReal::MpReal(double v, int bits) {
  mpfr_init2(v_, bits);
  mpfr_set_d(v_, v, MPFR_RNDN);
}

MpReal::MpReal(long v, int bits) {
  mpfr_init2(v_, bits);
  mpfr_set_si(v_, v, MPFR_RNDN);
}

MpReal::MpReal(const MpReal& o) {
  mpfr_init2(v_, mpfr_get_prec(o.v_));
  mpfr_set(v_, o.v_, MPFR_RNDN);
}

MpReal::MpReal(MpReal&& o) noexcept {
  mpfr_init2(v_, mpfr_get_prec(o.v_));
  mpfr_swap(v_, o.v_);
}

MpReal& MpReal::operator=(const MpReal& o) {
  if (this != &o) {
    mpfr_set_prec(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  return *this;
}

MpReal& MpReal::operator=(MpReal&& o) noexcept {
  if (this != &o) mpfr_swap(v_, o.v_);
  return *this;
}

MpReal::~MpReal() { mpfr_clear(v_); }

int MpReal::result_bits(const MpReal& a, const MpReal& b) {
  return std::max(a.bits(), b.bits());
}

#define SMALLEIG_MP_BINOP(name, fn)                       \
  MpReal name(const MpReal& a, const MpReal& b) {         \
    MpReal r(0.0, MpReal::result_bits(a, b));             \
    fn(r.v_, a.v_, b.v_, MPFR_RNDN);                      \
    return r;                                             \
  }

SMALLEIG_MP_BINOP(operator+, mpfr_add)
SMALLEIG_MP_BINOP(operator-, mpfr_sub)
SMALLEIG_MP_BINOP(operator*, mpfr_mul)
SMALLEIG_MP_BINOP(operator/, mpfr_div)
#undef SMALLEIG_MP_BINOP

MpReal MpReal::operator-() const {
  MpReal r(0.0, bits());
  mpfr_neg(r.v_, v_, MPFR_RNDN);
  return r;
}

MpReal& MpReal::operator+=(const MpReal& b) { return *this = *this + b; }
MpReal& MpReal::operator-=(const MpReal& b) { return *this = *this - b; }
MpReal& MpReal::operator*=(const MpReal& b) { return *this = *this * b; }

bool operator<(const MpReal& a, const MpReal& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
bool operator<=(const MpReal& a, const MpReal& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
bool operator>(const MpReal& a, const MpReal& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
bool operator>=(const MpReal& a, const MpReal& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }

#define SMALLEIG_MP_UNOP(name, fn)        \
  MpReal name(const MpReal& a) {          \
    MpReal r(0.0, a.bits());              \
    fn(r.v_, a.v_, MPFR_RNDN);            \
    return r;                             \
  }

SMALLEIG_MP_UNOP(sqrt, mpfr_sqrt)
SMALLEIG_MP_UNOP(abs, mpfr_abs)
SMALLEIG_MP_UNOP(log, mpfr_log)
SMALLEIG_MP_UNOP(log2, mpfr_log2)
SMALLEIG_MP_UNOP(exp, mpfr_exp)
#undef SMALLEIG_MP_UNOP

MpReal ceil(const MpReal& a) {
  MpReal r(0.0, a.bits());
  mpfr_ceil(r.v_, a.v_);
  return r;
}

MpReal pow_si(const MpReal& a, long e) {
  MpReal r(0.0, a.bits());
  mpfr_pow_si(r.v_, a.v_, e, MPFR_RNDN);
  return r;
}

MpReal root_ui(const MpReal& a, unsigned long m) {
  MpReal r(0.0, a.bits());
#if MPFR_VERSION_MAJOR >= 4
  mpfr_rootn_ui(r.v_, a.v_, m, MPFR_RNDN);
#else
  mpfr_root(r.v_, a.v_, m, MPFR_RNDN);
#endif
  return r;
}

MpReal min(const MpReal& a, const MpReal& b) { return (a <= b) ? a : b; }
MpReal max(const MpReal& a, const MpReal& b) { return (a >= b) ? a : b; }

std::string MpReal::str() const {
  char* s = nullptr;
  mpfr_asprintf(&s, "%.30Rg", v_);
  std::string out(s);
  mpfr_free_str(s);
  return out;
}

MpComplex operator+(const MpComplex& a, const MpComplex& b) {
  return {a.re + b.re, a.im + b.im};
}
MpComplex operator-(const MpComplex& a, const MpComplex& b) {
  return {a.re - b.re, a.im - b.im};
}
MpComplex operator*(const MpComplex& a, const MpComplex& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
MpComplex operator/(const MpComplex& a, const MpComplex& b) {
  MpReal d = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}
MpComplex MpComplex::operator-() const { return {-re, -im}; }
MpComplex& MpComplex::operator+=(const MpComplex& b) { return *this = *this + b; }
MpComplex& MpComplex::operator-=(const MpComplex& b) { return *this = *this - b; }

MpComplex conj(const MpComplex& a) { return {a.re, -a.im}; }
MpReal abs2(const MpComplex& a) { return a.re * a.re + a.im * a.im; }
MpReal abs(const MpComplex& a) { return sqrt(abs2(a)); }

}  // namespace smalleig
