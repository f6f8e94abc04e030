#include "planestat/bigfloat.hpp"

#include "planestat/errors.hpp"

#include <cmath>
#include <cstdio>
#include <vector>

namespace planestat {

namespace {

int g_decimal_digits = 50;
// 64 guard bits absorb rounding drift in long summations.
mpfr_prec_t bits_for(int digits) {
    return static_cast<mpfr_prec_t>(std::ceil(digits * 3.3219280948873623)) + 64;
}
mpfr_prec_t g_bits = bits_for(50);

} // namespace

void BigFloat::set_decimal_precision(int digits) {
    if (digits < 10) throw std::invalid_argument("BigFloat precision must be >= 10 digits");
    g_decimal_digits = digits;
    g_bits = bits_for(digits);
}

int BigFloat::decimal_precision() { return g_decimal_digits; }
mpfr_prec_t BigFloat::precision_bits() { return g_bits; }

BigFloat::BigFloat() { mpfr_init2(v_, g_bits); mpfr_set_zero(v_, 1); }
BigFloat::BigFloat(int v) { mpfr_init2(v_, g_bits); mpfr_set_si(v_, v, MPFR_RNDN); }
BigFloat::BigFloat(long v) { mpfr_init2(v_, g_bits); mpfr_set_si(v_, v, MPFR_RNDN); }
BigFloat::BigFloat(unsigned long v) { mpfr_init2(v_, g_bits); mpfr_set_ui(v_, v, MPFR_RNDN); }
BigFloat::BigFloat(double v) { mpfr_init2(v_, g_bits); mpfr_set_d(v_, v, MPFR_RNDN); }
BigFloat::BigFloat(const mpz_class& v) { mpfr_init2(v_, g_bits); mpfr_set_z(v_, v.get_mpz_t(), MPFR_RNDN); }
BigFloat::BigFloat(const mpq_class& v) { mpfr_init2(v_, g_bits); mpfr_set_q(v_, v.get_mpq_t(), MPFR_RNDN); }

BigFloat::BigFloat(const BigFloat& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }

BigFloat::BigFloat(BigFloat&& o) noexcept {
    mpfr_init2(v_, 2);
    mpfr_swap(v_, o.v_);
}

BigFloat& BigFloat::operator=(const BigFloat& o) {
    if (this != &o) {
        mpfr_set_prec(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& o) noexcept {
    if (this != &o) mpfr_swap(v_, o.v_);
    return *this;
}

BigFloat::~BigFloat() { mpfr_clear(v_); }

BigFloat BigFloat::operator-() const {
    BigFloat r;
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
}

BigFloat& BigFloat::operator+=(const BigFloat& o) { mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
BigFloat& BigFloat::operator-=(const BigFloat& o) { mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
BigFloat& BigFloat::operator*=(const BigFloat& o) { mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
BigFloat& BigFloat::operator/=(const BigFloat& o) { mpfr_div(v_, v_, o.v_, MPFR_RNDN); return *this; }
BigFloat& BigFloat::operator*=(unsigned long v) { mpfr_mul_ui(v_, v_, v, MPFR_RNDN); return *this; }
BigFloat& BigFloat::operator/=(unsigned long v) { mpfr_div_ui(v_, v_, v, MPFR_RNDN); return *this; }

std::string BigFloat::to_string(int digits) const {
    if (digits < 2) digits = 2;
    std::vector<char> buf(static_cast<size_t>(digits) + 32);
    mpfr_snprintf(buf.data(), buf.size(), "%.*Re", digits - 1, v_);
    return std::string(buf.data());
}

BigFloat BigFloat::from_string(const std::string& s) {
    BigFloat r;
    if (mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0)
        throw std::invalid_argument("BigFloat: cannot parse '" + s + "'");
    return r;
}

#define PS_UNARY(name, fn)                          \
    BigFloat name(const BigFloat& x) {              \
        BigFloat r;                                 \
        fn(r.get(), x.get(), MPFR_RNDN);            \
        return r;                                   \
    }

PS_UNARY(abs, mpfr_abs)
PS_UNARY(exp, mpfr_exp)
PS_UNARY(expm1, mpfr_expm1)
PS_UNARY(log1p, mpfr_log1p)
PS_UNARY(sin, mpfr_sin)
PS_UNARY(cos, mpfr_cos)

#undef PS_UNARY

BigFloat sqrt(const BigFloat& x) {
    if (x.sign() < 0) throw std::invalid_argument("sqrt of negative value");
    BigFloat r;
    mpfr_sqrt(r.get(), x.get(), MPFR_RNDN);
    return r;
}

BigFloat log(const BigFloat& x) {
    if (x.sign() <= 0) throw std::invalid_argument("log of nonpositive value");
    BigFloat r;
    mpfr_log(r.get(), x.get(), MPFR_RNDN);
    return r;
}

BigFloat pow(const BigFloat& x, const BigFloat& y) {
    BigFloat r;
    mpfr_pow(r.get(), x.get(), y.get(), MPFR_RNDN);
    return r;
}

BigFloat pow(const BigFloat& x, long e) {
    BigFloat r;
    mpfr_pow_si(r.get(), x.get(), e, MPFR_RNDN);
    return r;
}

BigFloat pow_rational(const BigFloat& x, long num, long den) {
    if (x.sign() <= 0) throw std::invalid_argument("pow_rational needs positive base");
    if (den <= 0) throw std::invalid_argument("pow_rational needs positive denominator");
    BigFloat r;
    mpfr_rootn_ui(r.get(), x.get(), static_cast<unsigned long>(den), MPFR_RNDN);
    return pow(r, num);
}

BigFloat const_pi() {
    BigFloat r;
    mpfr_const_pi(r.get(), MPFR_RNDN);
    return r;
}

BigFloat const_euler_gamma() {
    BigFloat r;
    mpfr_const_euler(r.get(), MPFR_RNDN);
    return r;
}

BigFloat mpfr_zeta_oracle(const BigFloat& s) {
    BigFloat r;
    mpfr_zeta(r.get(), s.get(), MPFR_RNDN);
    return r;
}

BigFloat pow10(long k) {
    BigFloat r;
    mpfr_ui_pow_ui(r.get(), 10, static_cast<unsigned long>(k < 0 ? -k : k), MPFR_RNDN);
    if (k < 0) mpfr_ui_div(r.get(), 1, r.get(), MPFR_RNDN);
    return r;
}

} // namespace planestat
