#pragma once

#include "planestat/bigfloat.hpp"
#include "planestat/constants.hpp"
#include "planestat/series.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace planestat {

struct SaddlePoint {
    long n = 0;
    BigFloat d;        // solution of a(e^{-d}) = n
    BigFloat aValue;   // a(e^{-d})
    BigFloat bValue;   // b(e^{-d})
    BigFloat residual; // |a(e^{-d}) - n| / n
};

enum class Statistic { trace, dimension };

struct SaddleRatio {
    BigFloat exact;  // [x^n] Q F / q(n)
    BigFloat saddle; // F(e^{-d_n})
    BigFloat ratio;  // exact / saddle
};

struct ProbeInsideRow {
    BigFloat theta;
    BigFloat logRatio;    // Re log( Q(e^{-d+i theta}) / Q(e^{-d}) )
    BigFloat gaussianLog; // -theta^2 b / 2
    BigFloat deviation;   // | exp(logRatio - gaussianLog) - 1 |
};

struct ProbeOutsideRow {
    BigFloat theta;
    BigFloat logRatio;
};

struct ProbeReport {
    long n = 0;
    int gridSize = 0;
    BigFloat d;
    BigFloat delta; // d^{5/3} / log n
    BigFloat b;
    BigFloat sqrtB;
    std::vector<ProbeInsideRow> inside;   // theta = 0 .. delta inclusive
    std::vector<ProbeOutsideRow> outside; // theta in (delta, pi], uniform
    BigFloat insideMaxDeviation;
    BigFloat outsideMaxLogRatio;
    BigFloat outsideMaxRatio;
    BigFloat decayStatistic; // sqrt(b) * outsideMaxRatio
    long truncationIndex = 0;
};

// Saddle-point machinery for Q(x) = prod (1-x^j)^{-j}: the a/b functionals
// on the positive axis, the saddle solver, coefficient estimates, the F1/F2
// saddle evaluations, and circle probes. High-precision, deterministic;
// every infinite sum uses a relative tail cutoff of 10^{-(digits+5)} backed
// by a geometric tail bound, and the last summation index is recorded for
// reproducibility.
class Engine {
public:
    explicit Engine(int decimalDigits = 50);

    int digits() const { return digits_; }
    const Constants& constants() const { return constants_; }

    // a(e^{-d}) = sum_k sigma2(k) e^{-kd}; strictly decreasing in d.
    BigFloat a_eval(const BigFloat& d);
    // b(e^{-d}) = sum_k k sigma2(k) e^{-kd} = -(d/dd) a(e^{-d}).
    BigFloat b_eval(const BigFloat& d);
    // log Q(e^{-d}) = sum_k sigma2(k)/k e^{-kd}.
    BigFloat log_q_direct(const BigFloat& d);
    // Q(e^{-d})
    BigFloat q_direct_at_saddle(const BigFloat& d);

    // Bracketed bisection then Newton refinement on a(e^{-d}) = n. The
    // optional hint skips straight to Newton (warm start across a grid).
    SaddlePoint solve_saddle(long n, std::optional<BigFloat> hint = std::nullopt);

    // Two-term expansion (2 zeta(3)/n)^{1/3} - 1/(36 n).
    BigFloat dn_expansion(long n);
    // Truncated expansions of d_n^{-1}, d_n^{-2}, log d_n^{-2}.
    std::array<BigFloat, 3> dn_inverse_expansions(long n);

    // Meinardus-style approximation of Q at the saddle:
    // exp( zeta(3) d^{-2} + (1/12) log d + zeta'(-1) ).
    BigFloat q_meinardus_at_saddle(long n);

    // q(n) ~ e^{n d} Q(e^{-d}) / sqrt(2 pi b), at d = d_n.
    BigFloat hayman_q_estimate(long n);

    // Closed-form asymptotic for q(n).
    BigFloat wright_q(long n);

    // F1(e^{-d}) = sum_k sigma1(k) e^{-kd}.
    BigFloat f1_at_saddle(const BigFloat& d);

    // F2(e^{-d}) = sum_{m=0}^{M} (1 - e^{H_m}); throws TruncationError when
    // the cutoff term 1 - e^{H_M} is not below 1e-12.
    BigFloat f2_at_saddle(const BigFloat& d, long M);
    // Smallest adequate cutoff, seeded by ceil((3/d) log(1/d)) and grown
    // until the tail criterion holds.
    long f2_default_cutoff(const BigFloat& d);

    // (n/2zeta3)^{1/3} ((2/3)log n - log log n - (2/3)log(2zeta3) + log 3).
    BigFloat f2_asymptotic(long n);

    // kappa1 n^{2/3}
    BigFloat expected_trace_asymptotic(long n);
    // kappa2 n^{1/3} log n
    BigFloat expected_dimension_asymptotic(long n);
    BigFloat expected_dimension_asymptotic_value(const BigFloat& x);

    // exact = [x^n](Q F)/q(n), saddle = F(e^{-d_n}), ratio = exact/saddle;
    // F = F1 for trace, F2 for dimension.
    SaddleRatio saddle_ratio(Statistic stat, long n);

    // Circle probes of the locality/decay behavior around x = e^{-d_n}.
    ProbeReport hayman_probe(long n, int gridSize);

    // Shared exact-side caches (computed once, then read-only).
    const std::vector<mpz_class>& exact_q(long N);
    const DivisorTable& divisors(long N);
    const std::vector<mpq_class>& dimension_table(long N);
    mpq_class exact_expected_trace(long n);

    const std::map<std::string, long>& truncation_log() const { return truncationLog_; }

    static constexpr long kMaxExactN = 6000;

private:
    enum class Weight { sigma2, kSigma2, sigma1, sigma2OverK };
    BigFloat sigma_exp_sum(const BigFloat& d, Weight w, const char* logKey);
    SaddlePoint newton_refine(long n, BigFloat d, long maxIter);

    int digits_;
    Constants constants_;
    BigFloat epsRel_;   // 10^{-(digits+5)}
    DivisorTable table_;
    std::vector<mpz_class> qCache_;
    std::vector<mpq_class> dimCache_;
    std::map<long, SaddlePoint> saddleCache_;
    std::map<std::string, long> truncationLog_;
};

} // namespace planestat
