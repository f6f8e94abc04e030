#pragma once

#include "planestat/errors.hpp"

#include <gmpxx.h>

#include <vector>

namespace planestat {

// Sieve-filled divisor-sum tables: sigma1[k] = sum of divisors of k,
// sigma2[k] = sum of squared divisors of k, for 0 <= k <= limit.
struct DivisorTable {
    long limit = -1;
    std::vector<unsigned long long> sigma1;
    std::vector<unsigned long long> sigma2;
};

DivisorTable divisor_table(long N);

// Exact-coefficient power series truncated at a fixed order N. Coefficients
// are exact rationals; arithmetic never reports anything beyond order N, and
// combining series of different orders is an error rather than an implicit
// re-truncation.
class TruncatedSeries {
public:
    explicit TruncatedSeries(long order);
    TruncatedSeries(long order, std::vector<mpq_class> coeffs);

    static TruncatedSeries one(long order);
    static TruncatedSeries from_integers(const std::vector<mpz_class>& coeffs);

    long order() const { return order_; }
    const mpq_class& coeff(long k) const;
    void set_coeff(long k, const mpq_class& v);
    const std::vector<mpq_class>& coeffs() const { return c_; }

    // All denominators equal to 1.
    bool is_integral() const;
    // Restriction to a smaller order.
    TruncatedSeries truncated(long newOrder) const;

    friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
        return a.order_ == b.order_ && a.c_ == b.c_;
    }

private:
    long order_;
    std::vector<mpq_class> c_;
};

// Plane partition counts q(0..N) as exact integers, via the divisor-sum
// recurrence n q(n) = sum_{k=1}^{n} sigma2(k) q(n-k).
std::vector<mpz_class> q_series_counts(long N);

// Same coefficients wrapped as a TruncatedSeries.
TruncatedSeries q_series(long N);

// Cauchy product truncated at the common order. Orders must match.
TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b);

// base * (1 - x^j)^e, truncated at base's order; e may be negative, in which
// case the binomial series of (1 - x^j)^{-|e|} is used.
TruncatedSeries series_binomial_factor(const TruncatedSeries& base, long j, long e);

} // namespace planestat
