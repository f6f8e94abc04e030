#pragma once

#include "planestat/bigfloat.hpp"

#include <gmpxx.h>

#include <vector>

namespace planestat {

// Exact even-index Bernoulli numbers B_0, B_2, ..., B_{2*count}.
std::vector<mpq_class> bernoulli_even(int count);

// Apery-type accelerated series for zeta(3):
//   zeta(3) = (5/2) * sum_{k>=1} (-1)^{k-1} / (k^3 binom(2k,k)).
BigFloat zeta3_series();

// Euler-Maclaurin tail sum_{n=N}^inf (alpha*ln n + beta) / n^q, q >= 2.
BigFloat euler_maclaurin_log_tail(long alpha, long beta, long q, long N);

// zeta(s) for integer s >= 2 via direct sum plus Euler-Maclaurin tail.
BigFloat zeta_euler_maclaurin(long s);

// zeta'(2) = -sum_{n>=2} ln(n)/n^2, via Euler-Maclaurin.
BigFloat zeta_prime_2();

// The constants the asymptotic machinery is built on. All values are
// computed at the current working precision from convergent series or
// closed forms; nothing is read from decimal literals.
struct Constants {
    int digits;
    BigFloat pi;
    BigFloat zeta2;            // pi^2/6
    BigFloat zeta3;
    BigFloat two_zeta3;        // 2*zeta(3)
    BigFloat euler_gamma;      // Euler-Mascheroni
    BigFloat zeta_prime_two;   // zeta'(2)
    BigFloat zeta_prime_neg1;  // zeta'(-1), via the functional equation
    BigFloat gamma;            // zeta'(-1)/2
    BigFloat kappa1;           // (2 zeta(3))^{-2/3} * pi^2/6
    BigFloat kappa2;           // (2/3) * (2 zeta(3))^{-1/3}

    static Constants compute(int digits);
    // Cached instance for the current global precision.
    static const Constants& get();
};

} // namespace planestat
