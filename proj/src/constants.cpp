#include "planestat/constants.hpp"

#include "planestat/errors.hpp"

#include <map>
#include <mutex>

namespace planestat {

namespace {

// Growing cache of all Bernoulli numbers B_0, B_1, B_2, ... from
// sum_{j=0}^{m} binom(m+1, j) B_j = 0, m >= 1.
const mpq_class& bernoulli(int m) {
    static std::vector<mpq_class> cache{mpq_class(1)};
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    while (static_cast<int>(cache.size()) <= m) {
        int k = static_cast<int>(cache.size());
        if (k > 1 && k % 2 == 1) {
            cache.emplace_back(0);
            continue;
        }
        mpq_class acc = 0;
        mpz_class binom;
        for (int j = 0; j < k; ++j) {
            if (cache[static_cast<size_t>(j)] == 0) continue;
            mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(k) + 1, static_cast<unsigned long>(j));
            acc += mpq_class(binom) * cache[static_cast<size_t>(j)];
        }
        acc /= -(k + 1);
        acc.canonicalize();
        cache.push_back(acc);
    }
    return cache[static_cast<size_t>(m)];
}

} // namespace

std::vector<mpq_class> bernoulli_even(int count) {
    if (count < 0) throw std::invalid_argument("bernoulli_even: count < 0");
    std::vector<mpq_class> even(static_cast<size_t>(count) + 1);
    for (int k = 0; k <= count; ++k) even[static_cast<size_t>(k)] = bernoulli(2 * k);
    return even;
}

BigFloat zeta3_series() {
    BigFloat eps = pow10(-(BigFloat::decimal_precision() + 8));
    BigFloat sum = 0L;
    mpz_class binom;
    for (unsigned long k = 1; k < 4000; ++k) {
        mpz_bin_uiui(binom.get_mpz_t(), 2 * k, k);
        mpz_class den = binom * mpz_class(k) * k * k;
        BigFloat term = BigFloat(1L) / BigFloat(den);
        if (k % 2 == 0) term = -term;
        sum += term;
        if (abs(term) < eps) {
            BigFloat r = sum * 5UL;
            r /= 2UL;
            return r;
        }
    }
    throw ConvergenceError("zeta3_series did not converge");
}

BigFloat euler_maclaurin_log_tail(long alpha, long beta, long q, long N) {
    if (q < 2) throw std::invalid_argument("euler_maclaurin_log_tail: q < 2");
    if (N < 2) throw std::invalid_argument("euler_maclaurin_log_tail: N < 2");
    const BigFloat eps = pow10(-(BigFloat::decimal_precision() + 8));
    BigFloat lnN = log(BigFloat(N));
    BigFloat a(alpha), b(beta);

    // integral_N^inf (a ln x + b) x^{-q} dx
    BigFloat qm1(q - 1);
    BigFloat integral = (a * (lnN / qm1 + BigFloat(1L) / (qm1 * qm1)) + b / qm1) / pow(BigFloat(N), q - 1);
    // f(N)/2
    BigFloat half = (a * lnN + b) / pow(BigFloat(N), q) / 2UL;
    BigFloat total = integral + half;

    // - sum_k B_{2k}/(2k)! f^{(2k-1)}(N), derivatives tracked exactly as
    // f^{(j)}(x) = (A ln x + B) / x^{q+j}.
    mpz_class A(alpha), B(beta);
    mpz_class fact = 1; // j! for the current derivative order j
    long p = q;         // current power q + j
    const int maxK = 400;
    BigFloat prevMag;
    bool havePrev = false;
    for (int k = 1; k <= maxK; ++k) {
        int steps = (k == 1) ? 1 : 2;
        for (int s = 0; s < steps; ++s) {
            mpz_class A2 = -p * A;
            mpz_class B2 = A - p * B;
            A = A2;
            B = B2;
            ++p;
            fact *= (p - q);
        }
        // term = B_{2k}/(2k)! f^{(2k-1)}(N); (2k)! = (2k-1)! * 2k = fact * 2k
        BigFloat deriv = (BigFloat(A) * lnN + BigFloat(B)) / pow(BigFloat(N), p);
        mpz_class fullFact = fact * (2 * k);
        BigFloat term = BigFloat(bernoulli(2 * k)) * deriv / BigFloat(fullFact);
        BigFloat mag = abs(term);
        if (havePrev && mag > prevMag)
            throw ConvergenceError("euler_maclaurin_log_tail: increase N for this precision");
        prevMag = mag;
        havePrev = true;
        total -= term;
        if (mag < eps * abs(total)) return total;
    }
    throw ConvergenceError("euler_maclaurin_log_tail did not converge");
}

namespace {

long em_cut_for_precision() {
    // N = 64 reaches ~1e-130 before the asymptotic terms turn; double it
    // for higher precision.
    int d = BigFloat::decimal_precision();
    long N = 64;
    while (d > 110) {
        N *= 2;
        d /= 2;
    }
    return N;
}

} // namespace

BigFloat zeta_euler_maclaurin(long s) {
    if (s < 2) throw std::invalid_argument("zeta_euler_maclaurin: s < 2");
    long N = em_cut_for_precision();
    BigFloat sum = 0L;
    for (long n = 1; n < N; ++n) sum += BigFloat(1L) / pow(BigFloat(n), s);
    return sum + euler_maclaurin_log_tail(0, 1, s, N);
}

BigFloat zeta_prime_2() {
    long N = em_cut_for_precision();
    BigFloat sum = 0L;
    for (long n = 2; n < N; ++n) sum += log(BigFloat(n)) / BigFloat(n * n);
    sum += euler_maclaurin_log_tail(1, 0, 2, N);
    return -sum;
}

Constants Constants::compute(int digits) {
    Constants c;
    c.digits = digits;
    c.pi = const_pi();
    c.zeta2 = c.pi * c.pi / 6UL;
    c.zeta3 = zeta3_series();
    c.two_zeta3 = c.zeta3 * 2UL;
    c.euler_gamma = const_euler_gamma();
    c.zeta_prime_two = zeta_prime_2();
    // Functional equation of zeta, differentiated at s = -1:
    //   zeta'(-1) = -(1/12) (ln(2 pi) - 1 + gamma_E - zeta'(2)/zeta(2))
    BigFloat bracket = log(c.pi * 2UL) - BigFloat(1L) + c.euler_gamma - c.zeta_prime_two / c.zeta2;
    c.zeta_prime_neg1 = -(bracket / 12UL);
    c.gamma = c.zeta_prime_neg1 / 2UL;
    c.kappa1 = c.zeta2 * pow_rational(c.two_zeta3, -2, 3);
    c.kappa2 = BigFloat(2L) / BigFloat(3L) * pow_rational(c.two_zeta3, -1, 3);
    return c;
}

const Constants& Constants::get() {
    static std::map<int, Constants> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    int d = BigFloat::decimal_precision();
    auto it = cache.find(d);
    if (it == cache.end()) it = cache.emplace(d, Constants::compute(d)).first;
    return it->second;
}

} // namespace planestat
