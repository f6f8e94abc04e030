#include "planestat/asymptotics.hpp"

#include "planestat/errors.hpp"
#include "planestat/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace planestat {

namespace {

void require_positive(const BigFloat& d, const char* who) {
    if (d.sign() <= 0) throw std::invalid_argument(std::string(who) + ": d must be positive");
}

} // namespace

Engine::Engine(int decimalDigits) : digits_(decimalDigits) {
    if (decimalDigits < 30) throw std::invalid_argument("Engine precision must be >= 30 digits");
    if (BigFloat::decimal_precision() != decimalDigits)
        BigFloat::set_decimal_precision(decimalDigits);
    constants_ = Constants::compute(decimalDigits);
    epsRel_ = pow10(-(decimalDigits + 5));
    table_ = divisor_table(4096);
}

const DivisorTable& Engine::divisors(long N) {
    if (table_.limit < N) {
        long grow = std::max(N, table_.limit * 2);
        table_ = divisor_table(grow);
    }
    return table_;
}

const std::vector<mpz_class>& Engine::exact_q(long N) {
    if (N > kMaxExactN) throw RangeError("exact q(n) requested beyond supported scale");
    if (static_cast<long>(qCache_.size()) <= N) qCache_ = q_series_counts(N);
    return qCache_;
}

const std::vector<mpq_class>& Engine::dimension_table(long N) {
    if (N > kMaxExactN) throw RangeError("exact E(W_n) requested beyond supported scale");
    if (static_cast<long>(dimCache_.size()) <= N) dimCache_ = expected_dimension_table(N);
    return dimCache_;
}

mpq_class Engine::exact_expected_trace(long n) {
    if (n < 1) throw std::invalid_argument("exact_expected_trace: n < 1");
    const std::vector<mpz_class>& q = exact_q(n);
    const DivisorTable& t = divisors(n);
    mpz_class acc = 0;
    for (long k = 1; k <= n; ++k)
        mpz_addmul_ui(acc.get_mpz_t(), q[static_cast<size_t>(n - k)].get_mpz_t(),
                      static_cast<unsigned long>(t.sigma1[static_cast<size_t>(k)]));
    mpq_class r(acc, q[static_cast<size_t>(n)]);
    r.canonicalize();
    return r;
}

// Shared kernel for sum_k w(k) e^{-kd} with w one of sigma2, k*sigma2,
// sigma1, sigma2/k. Terminates when a geometric tail bound drops below
// epsRel_ * total; w(i) <= 2 i^3 covers all four weights.
BigFloat Engine::sigma_exp_sum(const BigFloat& d, Weight w, const char* logKey) {
    require_positive(d, logKey);
    const BigFloat x = exp(-d);
    const BigFloat oneMinusX = -expm1(-d);
    BigFloat total = 0L;
    BigFloat xk = 1L;
    const long kCap = 50000000;
    long k = 0;
    while (true) {
        ++k;
        if (k > kCap) throw TruncationError(std::string(logKey) + ": term budget exhausted");
        const DivisorTable& t = divisors(k);
        xk *= x;
        BigFloat term = xk;
        unsigned long s2 = static_cast<unsigned long>(t.sigma2[static_cast<size_t>(k)]);
        switch (w) {
            case Weight::sigma2: term *= s2; break;
            case Weight::kSigma2: term *= s2; term *= static_cast<unsigned long>(k); break;
            case Weight::sigma1: term *= static_cast<unsigned long>(t.sigma1[static_cast<size_t>(k)]); break;
            case Weight::sigma2OverK: term *= s2; term /= static_cast<unsigned long>(k); break;
        }
        total += term;
        if (k >= 8 && (k & 7) == 0) {
            // tail <= 8 x^{k+1} ( (k+1)^3/(1-x) + 6/(1-x)^4 )
            BigFloat k1(k + 1);
            BigFloat inv = BigFloat(1L) / oneMinusX;
            BigFloat bound = (k1 * k1 * k1 * inv + inv * inv * inv * inv * 6UL) * xk * x * 8UL;
            if (bound < epsRel_ * total) break;
        }
    }
    truncationLog_[logKey] = k;
    return total;
}

BigFloat Engine::a_eval(const BigFloat& d) { return sigma_exp_sum(d, Weight::sigma2, "a_eval.k"); }
BigFloat Engine::b_eval(const BigFloat& d) { return sigma_exp_sum(d, Weight::kSigma2, "b_eval.k"); }
BigFloat Engine::log_q_direct(const BigFloat& d) { return sigma_exp_sum(d, Weight::sigma2OverK, "log_q.k"); }
BigFloat Engine::q_direct_at_saddle(const BigFloat& d) { return exp(log_q_direct(d)); }
BigFloat Engine::f1_at_saddle(const BigFloat& d) { return sigma_exp_sum(d, Weight::sigma1, "f1.k"); }

SaddlePoint Engine::newton_refine(long n, BigFloat d, long maxIter) {
    const BigFloat target(n);
    const BigFloat tol = pow10(-(digits_ - 10));
    SaddlePoint sp;
    sp.n = n;
    for (long it = 0; it < maxIter; ++it) {
        BigFloat a = a_eval(d);
        BigFloat b = b_eval(d);
        BigFloat resid = abs(a - target) / target;
        if (resid <= tol) {
            sp.d = d;
            sp.aValue = a;
            sp.bValue = b;
            sp.residual = resid;
            if (sp.d.sign() <= 0 || sp.bValue.sign() <= 0)
                throw ConvergenceError("solve_saddle: invalid solution state");
            return sp;
        }
        // a is decreasing in d with a' = -b
        d += (a - target) / b;
        if (d.sign() <= 0) throw ConvergenceError("solve_saddle: Newton step left the domain");
    }
    throw ConvergenceError("solve_saddle: no convergence for n=" + std::to_string(n));
}

SaddlePoint Engine::solve_saddle(long n, std::optional<BigFloat> hint) {
    if (n < 1) throw std::invalid_argument("solve_saddle: n < 1");
    if (!hint) {
        auto it = saddleCache_.find(n);
        if (it != saddleCache_.end()) return it->second;
    }

    if (hint) {
        SaddlePoint sp = newton_refine(n, *hint, 60);
        saddleCache_[n] = sp;
        return sp;
    }

    const BigFloat target(n);
    // seed from the leading term of the d_n expansion
    BigFloat seed = pow_rational(constants_.two_zeta3 / target, 1, 3);
    BigFloat lo = seed * BigFloat(0.9);
    BigFloat hi = seed * BigFloat(1.1);
    for (int i = 0; i < 200 && a_eval(lo) <= target; ++i) lo *= BigFloat(0.7);
    for (int i = 0; i < 200 && a_eval(hi) >= target; ++i) hi *= BigFloat(1.4);
    if (!(a_eval(lo) > target && a_eval(hi) < target))
        throw ConvergenceError("solve_saddle: failed to bracket the root");

    // bisect to a 1e-3 relative bracket, then polish with Newton
    BigFloat relGoal = BigFloat(1L) / BigFloat(1000L);
    while ((hi - lo) > relGoal * lo) {
        BigFloat mid = (lo + hi) / 2UL;
        if (a_eval(mid) > target)
            lo = mid;
        else
            hi = mid;
    }
    SaddlePoint sp = newton_refine(n, (lo + hi) / 2UL, 100);
    saddleCache_[n] = sp;
    return sp;
}

BigFloat Engine::dn_expansion(long n) {
    if (n < 1) throw std::invalid_argument("dn_expansion: n < 1");
    BigFloat nn(n);
    return pow_rational(constants_.two_zeta3 / nn, 1, 3) - BigFloat(1L) / (nn * 36UL);
}

std::array<BigFloat, 3> Engine::dn_inverse_expansions(long n) {
    if (n < 1) throw std::invalid_argument("dn_inverse_expansions: n < 1");
    BigFloat nn(n);
    BigFloat ratio = nn / constants_.two_zeta3;
    BigFloat inv1 = pow_rational(ratio, 1, 3) +
                    BigFloat(1L) / (pow_rational(constants_.two_zeta3, 2, 3) * pow_rational(nn, 1, 3) * 36UL);
    BigFloat inv2 = pow_rational(ratio, 2, 3) + BigFloat(1L) / (constants_.zeta3 * 36UL);
    BigFloat lg = (log(nn) - log(constants_.two_zeta3)) * 2UL / 3UL;
    return {inv1, inv2, lg};
}

BigFloat Engine::q_meinardus_at_saddle(long n) {
    SaddlePoint sp = solve_saddle(n);
    BigFloat logQ = constants_.zeta3 / (sp.d * sp.d) + log(sp.d) / 12UL + constants_.zeta_prime_neg1;
    return exp(logQ);
}

BigFloat Engine::hayman_q_estimate(long n) {
    SaddlePoint sp = solve_saddle(n);
    BigFloat logEst = BigFloat(n) * sp.d + log_q_direct(sp.d) -
                      log(constants_.pi * 2UL * sp.bValue) / 2UL;
    return exp(logEst);
}

BigFloat Engine::wright_q(long n) {
    if (n < 1) throw std::invalid_argument("wright_q: n < 1");
    BigFloat nn(n);
    BigFloat logW = log(constants_.zeta3) * 7UL / 36UL
                  - log(BigFloat(2L)) * 11UL / 36UL
                  - log(constants_.pi * 3UL) / 2UL
                  - log(nn) * 25UL / 36UL
                  + pow_rational(constants_.zeta3, 1, 3) * pow_rational(nn / BigFloat(2L), 2, 3) * 3UL
                  + constants_.zeta_prime_neg1;
    return exp(logW);
}

BigFloat Engine::f2_at_saddle(const BigFloat& d, long M) {
    require_positive(d, "f2_at_saddle");
    if (M < 0) throw std::invalid_argument("f2_at_saddle: M < 0");
    const BigFloat x = exp(-d);
    const BigFloat tolAbs = pow10(-(digits_ + 8));

    // H_m(e^{-d}) = -sum_{t>=1} x^{(m+1)t} / ( t (1 - x^t)^2 )
    // Precompute g[t] = 1 / ( t (1-x^t)^2 ) while x^t stays above tolAbs.
    std::vector<BigFloat> g;
    {
        BigFloat xt = 1L;
        for (long t = 1;; ++t) {
            xt *= x;
            BigFloat om = BigFloat(1L) - xt;
            g.push_back(BigFloat(1L) / (om * om * static_cast<unsigned long>(t)));
            if (xt < tolAbs && t >= 4) break;
            if (t > 20000000) throw TruncationError("f2_at_saddle: t budget exhausted");
        }
    }
    auto H_of = [&](long m) {
        BigFloat z = pow(x, m + 1);
        BigFloat zt = 1L;
        BigFloat H = 0L;
        for (size_t t = 0; t < g.size(); ++t) {
            zt *= z;
            BigFloat term = g[t] * zt;
            H -= term;
            if (term < tolAbs) break;
        }
        return H;
    };

    BigFloat sum = 0L;
    BigFloat lastTerm = 1L;
    for (long m = 0; m <= M; ++m) {
        lastTerm = -expm1(H_of(m));
        sum += lastTerm;
    }
    if (lastTerm >= pow10(-12))
        throw TruncationError("f2_at_saddle: cutoff M not reached (tail term >= 1e-12)");
    truncationLog_["f2.M"] = M;
    return sum;
}

long Engine::f2_default_cutoff(const BigFloat& d) {
    require_positive(d, "f2_default_cutoff");
    // seeded by ceil((3/d) log(1/d)); the tail criterion is what decides
    double dd = d.to_double();
    long M = static_cast<long>(std::max(8.0, std::ceil((3.0 / dd) * std::log(1.0 / dd))));
    const BigFloat x = exp(-d);
    const BigFloat tolAbs = pow10(-(digits_ + 8));
    auto tail_term = [&](long m) {
        // 1 - e^{H_m} with the same H evaluation as f2_at_saddle
        BigFloat z = pow(x, m + 1);
        BigFloat zt = 1L;
        BigFloat H = 0L;
        for (long t = 1;; ++t) {
            zt *= z;
            BigFloat om = BigFloat(1L) - pow(x, t);
            BigFloat term = zt / (om * om * static_cast<unsigned long>(t));
            H -= term;
            if (term < tolAbs) break;
            if (t > 1000000) throw TruncationError("f2_default_cutoff: t budget exhausted");
        }
        return -expm1(H);
    };
    const BigFloat goal = pow10(-12) / 2UL;
    for (int rounds = 0; rounds < 64; ++rounds) {
        if (tail_term(M) < goal) return M;
        M = std::max(M + 16, (M * 5) / 4);
    }
    throw TruncationError("f2_default_cutoff: tail criterion unreachable");
}

BigFloat Engine::f2_asymptotic(long n) {
    if (n < 3) throw std::invalid_argument("f2_asymptotic: n < 3");
    BigFloat nn(n);
    BigFloat lead = pow_rational(nn / constants_.two_zeta3, 1, 3);
    BigFloat lg = log(nn);
    BigFloat paren = lg * 2UL / 3UL - log(lg) - log(constants_.two_zeta3) * 2UL / 3UL + log(BigFloat(3L));
    return lead * paren;
}

BigFloat Engine::expected_trace_asymptotic(long n) {
    if (n < 1) throw std::invalid_argument("expected_trace_asymptotic: n < 1");
    return constants_.kappa1 * pow_rational(BigFloat(n), 2, 3);
}

BigFloat Engine::expected_dimension_asymptotic_value(const BigFloat& x) {
    if (x.sign() <= 0) throw std::invalid_argument("expected_dimension_asymptotic: x <= 0");
    return constants_.kappa2 * pow_rational(x, 1, 3) * log(x);
}

BigFloat Engine::expected_dimension_asymptotic(long n) {
    if (n < 2) throw std::invalid_argument("expected_dimension_asymptotic: n < 2");
    return expected_dimension_asymptotic_value(BigFloat(n));
}

SaddleRatio Engine::saddle_ratio(Statistic stat, long n) {
    if (n < 1) throw std::invalid_argument("saddle_ratio: n < 1");
    if (n > kMaxExactN) throw RangeError("saddle_ratio: n beyond exact-series feasibility");
    SaddleRatio r;
    SaddlePoint sp = solve_saddle(n);
    if (stat == Statistic::trace) {
        r.exact = BigFloat(exact_expected_trace(n));
        r.saddle = f1_at_saddle(sp.d);
    } else {
        r.exact = BigFloat(dimension_table(n)[static_cast<size_t>(n)]);
        r.saddle = f2_at_saddle(sp.d, f2_default_cutoff(sp.d));
    }
    r.ratio = r.exact / r.saddle;
    return r;
}

namespace {

struct ComplexBF {
    BigFloat re, im;
    void mul(const ComplexBF& o) {
        BigFloat nr = re * o.re - im * o.im;
        BigFloat ni = re * o.im + im * o.re;
        re = nr;
        im = ni;
    }
};

} // namespace

ProbeReport Engine::hayman_probe(long n, int gridSize) {
    if (n < 10) throw std::invalid_argument("hayman_probe: n must be >= 10");
    if (gridSize < 16) throw std::invalid_argument("hayman_probe: gridSize must be >= 16");

    ProbeReport rep;
    rep.n = n;
    rep.gridSize = gridSize;
    SaddlePoint sp = solve_saddle(n);
    rep.d = sp.d;
    rep.b = sp.bValue;
    rep.sqrtB = sqrt(sp.bValue);
    rep.delta = pow_rational(sp.d, 5, 3) / log(BigFloat(n));

    const BigFloat x = exp(-sp.d);
    const BigFloat pi = constants_.pi;
    const BigFloat tol = epsRel_ * (constants_.zeta3 / (sp.d * sp.d)); // ~ eps * logQ scale
    const long tolExp = tol.exponent2();
    const long jCap = 20000000;
    long maxIndex = 0;

    // Re log Q(e^{-d} e^{i theta}) = sum_j j sum_t Re( (x e^{i theta})^j )^t / t
    auto re_log = [&](const BigFloat& theta) {
        ComplexBF u{x * cos(theta), x * sin(theta)};
        ComplexBF wj{BigFloat(1L), BigFloat(0L)};
        BigFloat xj = 1L;
        BigFloat acc = 0L;
        long lowStreak = 0;
        for (long j = 1;; ++j) {
            if (j > jCap) throw TruncationError("hayman_probe: double sum budget exhausted");
            wj.mul(u);
            xj *= x;
            // magnitude of the leading (t=1) term is x^j * j
            long lead = xj.is_zero() ? -(1L << 40) : xj.exponent2();
            long jBits = 0;
            while ((1L << jBits) <= j) ++jBits;
            if (lead + jBits < tolExp - 2) {
                if (++lowStreak >= 5) break;
            } else {
                lowStreak = 0;
            }
            ComplexBF v = wj;
            BigFloat xt = xj;
            for (long t = 1;; ++t) {
                acc += v.re * static_cast<unsigned long>(j) / static_cast<unsigned long>(t);
                v.mul(wj);
                xt *= xj;
                long mag = xt.is_zero() ? -(1L << 40) : xt.exponent2();
                if (mag + jBits < tolExp - 2) break;
                if (t > jCap) throw TruncationError("hayman_probe: inner sum budget exhausted");
            }
            maxIndex = std::max(maxIndex, j);
        }
        return acc;
    };

    const BigFloat L0 = re_log(BigFloat(0L));
    rep.insideMaxDeviation = 0L;
    for (int i = 0; i <= gridSize; ++i) {
        ProbeInsideRow row;
        row.theta = rep.delta * static_cast<unsigned long>(i) / static_cast<unsigned long>(gridSize);
        row.logRatio = re_log(row.theta) - L0;
        row.gaussianLog = -(row.theta * row.theta * sp.bValue / 2UL);
        row.deviation = abs(expm1(row.logRatio - row.gaussianLog));
        if (row.deviation > rep.insideMaxDeviation) rep.insideMaxDeviation = row.deviation;
        rep.inside.push_back(std::move(row));
    }
    bool first = true;
    for (int i = 1; i <= gridSize; ++i) {
        ProbeOutsideRow row;
        row.theta = rep.delta + (pi - rep.delta) * static_cast<unsigned long>(i) / static_cast<unsigned long>(gridSize);
        row.logRatio = re_log(row.theta) - L0;
        if (first || row.logRatio > rep.outsideMaxLogRatio) rep.outsideMaxLogRatio = row.logRatio;
        first = false;
        rep.outside.push_back(std::move(row));
    }
    rep.outsideMaxRatio = exp(rep.outsideMaxLogRatio);
    rep.decayStatistic = rep.sqrtB * rep.outsideMaxRatio;
    rep.truncationIndex = maxIndex;
    truncationLog_["probe.jmax"] = maxIndex;
    return rep;
}

} // namespace planestat
