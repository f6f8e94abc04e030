#pragma once

#include "planestat/series.hpp"

#include <map>

namespace planestat {

// Exact distribution of the trace statistic at size n.
struct TraceDistribution {
    int n = 0;
    std::map<int, mpq_class> probs; // m -> P(T_n = m), m = 1..n
    mpq_class mean() const;
    mpq_class total() const;
};

struct BoxSpec {
    static constexpr int kUnbounded = 0;
    int l = kUnbounded;
    int s = kUnbounded;
    int t = kUnbounded;
    bool finite() const { return l >= 1 && s >= 1 && t >= 1; }
};

// E(T_n) = (1/q(n)) sum_{k=1}^{n} sigma1(k) q(n-k).
mpq_class expected_trace(int n);

// Trace distribution from the coefficients of u^m x^n in
// prod_{j<=n} (1 - u x^j)^{-j}.
TraceDistribution trace_distribution(int n);

// Coefficients of prod_j (1 - x^j)^{-min(j, m)} up to order N; the x^n
// coefficient counts plane partitions of n with largest part <= m.
TruncatedSeries restricted_q_series(long m, long N);

// E(W_n) for W = largest part / rows / columns (identically distributed),
// via the tail sum E(W_n) = sum_{m=0}^{n-1} P(W_n > m).
mpq_class expected_dimension(int n);

// E(W_n) for every n = 0..maxN in one sweep (entry 0 unused).
std::vector<mpq_class> expected_dimension_table(long maxN);

// Box generating polynomial of B(l,s,t) truncated at order N. Numerator and
// denominator factors are multiplied cell by cell with exact polynomial
// division checks.
TruncatedSeries boxed_count_series(const BoxSpec& box, long N);

} // namespace planestat
