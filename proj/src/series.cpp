#include "planestat/series.hpp"

namespace planestat {

DivisorTable divisor_table(long N) {
    if (N < 0) throw std::invalid_argument("divisor_table: N < 0");
    DivisorTable t;
    t.limit = N;
    t.sigma1.assign(static_cast<size_t>(N) + 1, 0);
    t.sigma2.assign(static_cast<size_t>(N) + 1, 0);
    for (long d = 1; d <= N; ++d) {
        unsigned long long dd = static_cast<unsigned long long>(d) * static_cast<unsigned long long>(d);
        for (long k = d; k <= N; k += d) {
            t.sigma1[static_cast<size_t>(k)] += static_cast<unsigned long long>(d);
            t.sigma2[static_cast<size_t>(k)] += dd;
        }
    }
    return t;
}

TruncatedSeries::TruncatedSeries(long order) : order_(order) {
    if (order < 0) throw std::invalid_argument("TruncatedSeries: negative order");
    c_.assign(static_cast<size_t>(order) + 1, mpq_class(0));
}

TruncatedSeries::TruncatedSeries(long order, std::vector<mpq_class> coeffs)
    : order_(order), c_(std::move(coeffs)) {
    if (order < 0) throw std::invalid_argument("TruncatedSeries: negative order");
    if (c_.size() != static_cast<size_t>(order) + 1)
        throw std::invalid_argument("TruncatedSeries: coefficient count must be order+1");
}

TruncatedSeries TruncatedSeries::one(long order) {
    TruncatedSeries s(order);
    s.c_[0] = 1;
    return s;
}

TruncatedSeries TruncatedSeries::from_integers(const std::vector<mpz_class>& coeffs) {
    if (coeffs.empty()) throw std::invalid_argument("from_integers: empty coefficient list");
    TruncatedSeries s(static_cast<long>(coeffs.size()) - 1);
    for (size_t i = 0; i < coeffs.size(); ++i) s.c_[i] = mpq_class(coeffs[i]);
    return s;
}

const mpq_class& TruncatedSeries::coeff(long k) const {
    if (k < 0 || k > order_) throw std::out_of_range("TruncatedSeries::coeff");
    return c_[static_cast<size_t>(k)];
}

void TruncatedSeries::set_coeff(long k, const mpq_class& v) {
    if (k < 0 || k > order_) throw std::out_of_range("TruncatedSeries::set_coeff");
    c_[static_cast<size_t>(k)] = v;
}

bool TruncatedSeries::is_integral() const {
    for (const auto& q : c_)
        if (q.get_den() != 1) return false;
    return true;
}

TruncatedSeries TruncatedSeries::truncated(long newOrder) const {
    if (newOrder < 0 || newOrder > order_)
        throw std::invalid_argument("TruncatedSeries::truncated: bad order");
    std::vector<mpq_class> c(c_.begin(), c_.begin() + newOrder + 1);
    return TruncatedSeries(newOrder, std::move(c));
}

std::vector<mpz_class> q_series_counts(long N) {
    if (N < 0) throw std::invalid_argument("q_series_counts: N < 0");
    DivisorTable t = divisor_table(N);
    std::vector<mpz_class> q(static_cast<size_t>(N) + 1);
    q[0] = 1;
    mpz_class acc;
    for (long n = 1; n <= N; ++n) {
        acc = 0;
        for (long k = 1; k <= n; ++k)
            mpz_addmul_ui(acc.get_mpz_t(), q[static_cast<size_t>(n - k)].get_mpz_t(),
                          static_cast<unsigned long>(t.sigma2[static_cast<size_t>(k)]));
        if (!mpz_divisible_ui_p(acc.get_mpz_t(), static_cast<unsigned long>(n)))
            throw InexactDivisionError("q_series recurrence produced a non-integer");
        mpz_divexact_ui(q[static_cast<size_t>(n)].get_mpz_t(), acc.get_mpz_t(),
                        static_cast<unsigned long>(n));
    }
    return q;
}

TruncatedSeries q_series(long N) {
    return TruncatedSeries::from_integers(q_series_counts(N));
}

TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b) {
    if (a.order() != b.order())
        throw OrderMismatchError("series_mul: operand orders differ");
    long N = a.order();
    TruncatedSeries r(N);
    for (long i = 0; i <= N; ++i) {
        const mpq_class& ai = a.coeff(i);
        if (ai == 0) continue;
        for (long j = 0; i + j <= N; ++j) {
            const mpq_class& bj = b.coeff(j);
            if (bj == 0) continue;
            r.set_coeff(i + j, r.coeff(i + j) + ai * bj);
        }
    }
    return r;
}

TruncatedSeries series_binomial_factor(const TruncatedSeries& base, long j, long e) {
    if (j < 1) throw std::invalid_argument("series_binomial_factor: j < 1");
    long N = base.order();
    if (e == 0) return base;
    TruncatedSeries r(N);
    mpz_class binom;
    if (e > 0) {
        // (1 - x^j)^e = sum_t (-1)^t binom(e, t) x^{jt}
        for (long t = 0; t * j <= N && t <= e; ++t) {
            mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(e), static_cast<unsigned long>(t));
            mpq_class c(binom);
            if (t % 2 == 1) c = -c;
            for (long i = 0; i + t * j <= N; ++i) {
                const mpq_class& bi = base.coeff(i);
                if (bi == 0) continue;
                r.set_coeff(i + t * j, r.coeff(i + t * j) + c * bi);
            }
        }
    } else {
        // (1 - x^j)^{-m} = sum_t binom(t + m - 1, t) x^{jt}, m = -e
        long m = -e;
        for (long t = 0; t * j <= N; ++t) {
            mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(t + m - 1), static_cast<unsigned long>(t));
            mpq_class c(binom);
            for (long i = 0; i + t * j <= N; ++i) {
                const mpq_class& bi = base.coeff(i);
                if (bi == 0) continue;
                r.set_coeff(i + t * j, r.coeff(i + t * j) + c * bi);
            }
        }
    }
    return r;
}

} // namespace planestat
