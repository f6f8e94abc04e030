#include "planestat/statistics.hpp"

#include <string>

namespace planestat {

mpq_class TraceDistribution::mean() const {
    mpq_class s = 0;
    for (const auto& [m, p] : probs) s += mpq_class(m) * p;
    return s;
}

mpq_class TraceDistribution::total() const {
    mpq_class s = 0;
    for (const auto& [m, p] : probs) s += p;
    return s;
}

mpq_class expected_trace(int n) {
    if (n < 1) throw std::invalid_argument("expected_trace: n < 1");
    DivisorTable t = divisor_table(n);
    std::vector<mpz_class> q = q_series_counts(n);
    mpz_class acc = 0;
    for (long k = 1; k <= n; ++k)
        mpz_addmul_ui(acc.get_mpz_t(), q[static_cast<size_t>(n - k)].get_mpz_t(),
                      static_cast<unsigned long>(t.sigma1[static_cast<size_t>(k)]));
    mpq_class r(acc, q[static_cast<size_t>(n)]);
    r.canonicalize();
    return r;
}

TraceDistribution trace_distribution(int n) {
    if (n < 1) throw std::invalid_argument("trace_distribution: n < 1");
    size_t N = static_cast<size_t>(n);
    // P[i][t]: coefficient of u^t x^i in the running product, u-degree
    // capped at n.
    std::vector<std::vector<mpz_class>> P(N + 1, std::vector<mpz_class>(N + 1));
    P[0][0] = 1;
    for (size_t j = 1; j <= N; ++j) {
        // multiply j times by (1 - u x^j)^{-1}; each pass is the prefix
        // recurrence P[i] += u * P[i-j]
        for (size_t rep = 0; rep < j; ++rep) {
            for (size_t i = j; i <= N; ++i) {
                const auto& src = P[i - j];
                auto& dst = P[i];
                for (size_t t = N; t >= 1; --t) {
                    if (src[t - 1] != 0) dst[t] += src[t - 1];
                }
            }
        }
    }
    mpz_class qn = 0;
    for (size_t t = 0; t <= N; ++t) qn += P[N][t];

    TraceDistribution d;
    d.n = n;
    for (size_t t = 1; t <= N; ++t) {
        if (P[N][t] == 0) continue;
        mpq_class p(P[N][t], qn);
        p.canonicalize();
        d.probs[static_cast<int>(t)] = p;
    }
    if (d.total() != 1)
        throw ComputationError("trace_distribution: probabilities do not sum to 1");
    return d;
}

TruncatedSeries restricted_q_series(long m, long N) {
    if (m < 0) throw std::invalid_argument("restricted_q_series: m < 0");
    if (N < 0) throw std::invalid_argument("restricted_q_series: N < 0");
    // prod_{j=1}^{N} (1 - x^j)^{-min(j,m)}; factors with j > N cannot touch
    // order-N coefficients.
    std::vector<mpz_class> c(static_cast<size_t>(N) + 1);
    c[0] = 1;
    mpz_class binom;
    for (long j = 1; j <= N; ++j) {
        long e = std::min(j, m);
        if (e == 0) continue;
        std::vector<mpz_class> r(static_cast<size_t>(N) + 1);
        for (long t = 0; t * j <= N; ++t) {
            mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(t + e - 1),
                         static_cast<unsigned long>(t));
            for (long i = 0; i + t * j <= N; ++i) {
                if (c[static_cast<size_t>(i)] == 0) continue;
                mpz_addmul(r[static_cast<size_t>(i + t * j)].get_mpz_t(),
                           c[static_cast<size_t>(i)].get_mpz_t(), binom.get_mpz_t());
            }
        }
        c = std::move(r);
    }
    return TruncatedSeries::from_integers(c);
}

std::vector<mpq_class> expected_dimension_table(long maxN) {
    if (maxN < 1) throw std::invalid_argument("expected_dimension_table: maxN < 1");
    size_t N = static_cast<size_t>(maxN);
    std::vector<mpz_class> q = q_series_counts(maxN);
    // R holds the coefficients of prod_j (1 - x^j)^{-min(j,m)}, advanced in m
    // by multiplying with prod_{j>=m} (1 - x^j)^{-1}.
    std::vector<mpz_class> R(N + 1);
    R[0] = 1;
    std::vector<mpz_class> acc(N + 1);
    for (size_t n = 1; n <= N; ++n) acc[n] = q[n]; // m = 0 term: r_0(n) = 0
    for (size_t m = 1; m < N; ++m) {
        for (size_t j = m; j <= N; ++j)
            for (size_t i = j; i <= N; ++i)
                R[i] += R[i - j];
        for (size_t n = m + 1; n <= N; ++n)
            acc[n] += q[n] - R[n];
    }
    std::vector<mpq_class> ew(N + 1);
    for (size_t n = 1; n <= N; ++n) {
        ew[n] = mpq_class(acc[n], q[n]);
        ew[n].canonicalize();
    }
    return ew;
}

mpq_class expected_dimension(int n) {
    if (n < 1) throw std::invalid_argument("expected_dimension: n < 1");
    return expected_dimension_table(n)[static_cast<size_t>(n)];
}

namespace {

// Divides poly by (1 - x^b) in place; throws when the division is inexact.
std::vector<mpz_class> divide_one_minus_power(const std::vector<mpz_class>& poly, long b) {
    long degD = static_cast<long>(poly.size()) - 1;
    if (b < 1 || degD < b) throw InexactDivisionError("box product: degree underflow");
    std::vector<mpz_class> quot(static_cast<size_t>(degD - b) + 1);
    for (long i = 0; i <= degD - b; ++i) {
        quot[static_cast<size_t>(i)] = poly[static_cast<size_t>(i)];
        if (i >= b) quot[static_cast<size_t>(i)] += quot[static_cast<size_t>(i - b)];
    }
    for (long i = degD - b + 1; i <= degD; ++i) {
        mpz_class chk = poly[static_cast<size_t>(i)];
        if (i - b >= 0 && i - b <= degD - b) chk += quot[static_cast<size_t>(i - b)];
        if (chk != 0) throw InexactDivisionError("box product: inexact division by 1-x^" + std::to_string(b));
    }
    return quot;
}

} // namespace

TruncatedSeries boxed_count_series(const BoxSpec& box, long N) {
    if (!box.finite()) throw std::invalid_argument("boxed_count_series: box must be finite with sides >= 1");
    if (N < 0) throw std::invalid_argument("boxed_count_series: N < 0");
    // Full polynomial arithmetic: all numerator factors (1 - x^{h+j+k-1})
    // first, then every denominator (1 - x^{h+j+k-2}) with exactness checks.
    std::vector<mpz_class> poly{mpz_class(1)};
    std::vector<long> denoms;
    for (int h = 1; h <= box.l; ++h)
        for (int j = 1; j <= box.s; ++j)
            for (int k = 1; k <= box.t; ++k) {
                long a = h + j + k - 1;
                long b = h + j + k - 2;
                size_t old = poly.size();
                poly.resize(old + static_cast<size_t>(a));
                for (size_t i = old; i-- > 0;)
                    poly[i + static_cast<size_t>(a)] -= poly[i];
                denoms.push_back(b);
            }
    for (long b : denoms) poly = divide_one_minus_power(poly, b);

    std::vector<mpz_class> c(static_cast<size_t>(N) + 1);
    for (size_t i = 0; i < c.size() && i < poly.size(); ++i) c[i] = poly[i];
    return TruncatedSeries::from_integers(c);
}

} // namespace planestat
