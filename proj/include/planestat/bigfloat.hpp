#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <string>

namespace planestat {

// Extended-precision real backed by MPFR. Every value carries the working
// precision that was active when it was created; arithmetic results are
// rounded to the current working precision (round-to-nearest). The working
// precision is process-global and is intended to be set once at startup.
class BigFloat {
public:
    BigFloat();
    BigFloat(int v);
    BigFloat(long v);
    BigFloat(unsigned long v);
    explicit BigFloat(double v);
    explicit BigFloat(const mpz_class& v);
    explicit BigFloat(const mpq_class& v);

    BigFloat(const BigFloat& o);
    BigFloat(BigFloat&& o) noexcept;
    BigFloat& operator=(const BigFloat& o);
    BigFloat& operator=(BigFloat&& o) noexcept;
    ~BigFloat();

    // Working precision, in significant decimal digits (>= 10). The binary
    // precision includes guard bits on top of the requested digits.
    static void set_decimal_precision(int digits);
    static int decimal_precision();
    static mpfr_prec_t precision_bits();

    BigFloat operator-() const;
    BigFloat& operator+=(const BigFloat& o);
    BigFloat& operator-=(const BigFloat& o);
    BigFloat& operator*=(const BigFloat& o);
    BigFloat& operator/=(const BigFloat& o);
    BigFloat& operator*=(unsigned long v);
    BigFloat& operator/=(unsigned long v);

    friend BigFloat operator+(BigFloat a, const BigFloat& b) { return a += b; }
    friend BigFloat operator-(BigFloat a, const BigFloat& b) { return a -= b; }
    friend BigFloat operator*(BigFloat a, const BigFloat& b) { return a *= b; }
    friend BigFloat operator/(BigFloat a, const BigFloat& b) { return a /= b; }
    friend BigFloat operator*(BigFloat a, unsigned long b) { return a *= b; }
    friend BigFloat operator/(BigFloat a, unsigned long b) { return a /= b; }

    friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
    friend bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) > 0; }
    friend bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) <= 0; }
    friend bool operator>=(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) >= 0; }
    friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) == 0; }
    friend bool operator!=(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) != 0; }

    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }
    // Base-2 exponent of the value; only meaningful for nonzero values.
    long exponent2() const { return mpfr_get_exp(v_); }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }

    // Scientific decimal string with `digits` significant digits, e.g.
    // "1.234567890123456789012345678e+05". Deterministic for a given value.
    std::string to_string(int digits) const;
    static BigFloat from_string(const std::string& s);

    mpfr_srcptr get() const { return v_; }
    mpfr_ptr get() { return v_; }

private:
    mpfr_t v_;
};

BigFloat abs(const BigFloat& x);
BigFloat sqrt(const BigFloat& x);
BigFloat exp(const BigFloat& x);
BigFloat expm1(const BigFloat& x);
BigFloat log(const BigFloat& x);
BigFloat log1p(const BigFloat& x);
BigFloat sin(const BigFloat& x);
BigFloat cos(const BigFloat& x);
BigFloat pow(const BigFloat& x, const BigFloat& y);
BigFloat pow(const BigFloat& x, long e);
// x^(num/den) for x > 0.
BigFloat pow_rational(const BigFloat& x, long num, long den);

BigFloat const_pi();
BigFloat const_euler_gamma();
// Test oracle: MPFR's zeta at an arbitrary real argument.
BigFloat mpfr_zeta_oracle(const BigFloat& s);

// 10^-k as a BigFloat, handy for tolerance thresholds.
BigFloat pow10(long k);

} // namespace planestat
