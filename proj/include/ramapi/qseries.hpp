// q-expansions: Eisenstein series P, Q, R, lattice invariants g2*/g3*,
// cubic theta functions a(q), c(q), and hyperbolic divisor-type sums.
#pragma once

#include "ramapi/mpcore.hpp"
#include "ramapi/precision.hpp"

#include <cmath>
#include <stdexcept>

namespace ramapi {

/// Nome bundle for a rational r > 0.
///
/// q       = e^(-pi sqrt(r))        classical nome
/// q_cubic = e^(-2 pi sqrt(r/3))    cubic-base nome
/// Both exponentials come straight from r; q_cubic is never derived from q.
struct Nome {
    Rational r;
    BigReal log_q;       // -pi sqrt(r)
    BigReal log_q_cubic; // -2 pi sqrt(r/3)
    BigReal q;
    BigReal q_cubic;
};

inline Nome make_nome(const Rational& r, const PrecisionContext& ctx)
{
    if (r <= 0) throw std::domain_error("make_nome: r must be positive");
    ScopedPrecision scope(ctx.working());
    Nome n;
    n.r = r;
    n.log_q = -pi_value(ctx) * sqrt_rational(r, ctx);
    n.log_q_cubic = -2 * pi_value(ctx) * sqrt_rational(r / 3, ctx);
    n.q = exp(n.log_q);
    n.q_cubic = exp(n.log_q_cubic);
    return n;
}

namespace detail {

/// sum_{n>=1} n^s x^n / (1 - x^n), 0 <= x < 1. Powers go through
/// mpfr's binary exponentiation so the error stays at one rounding per term.
inline BigReal weighted_lambert_sum(int s, const BigReal& x, const PrecisionContext& ctx)
{
    if (x < 0 || x >= 1) throw std::domain_error("weighted_lambert_sum: need 0 <= x < 1");
    if (x == 0) return BigReal(0);
    const BigReal eps = working_eps(ctx);
    BigReal sum(0);
    for (long n = 1; n <= ctx.max_terms(); ++n) {
        BigReal xn = pow(x, n);
        BigReal term = pow(BigReal(n), s) * xn / (1 - xn);
        sum += term;
        if (term < eps) return sum;
    }
    throw std::runtime_error("weighted_lambert_sum: did not converge within max_terms");
}

} // namespace detail

/// Weight-2 Eisenstein value P(q^2) = 1 - 24 sum n q^(2n)/(1-q^(2n)).
inline BigReal eis_P(const BigReal& q0, const PrecisionContext& ctx)
{
    ScopedPrecision scope(ctx.working());
    BigReal q = at_working(q0, ctx);
    if (q < 0 || q >= 1) throw std::domain_error("eis_P: need 0 <= q < 1");
    return 1 - 24 * detail::weighted_lambert_sum(1, q * q, ctx);
}

/// Weight-4 value Q(q^2) = 1 + 240 sum n^3 q^(2n)/(1-q^(2n)).
inline BigReal eis_Q(const BigReal& q0, const PrecisionContext& ctx)
{
    ScopedPrecision scope(ctx.working());
    BigReal q = at_working(q0, ctx);
    if (q < 0 || q >= 1) throw std::domain_error("eis_Q: need 0 <= q < 1");
    return 1 + 240 * detail::weighted_lambert_sum(3, q * q, ctx);
}

/// Weight-6 value R(q^2) = 1 - 504 sum n^5 q^(2n)/(1-q^(2n)).
inline BigReal eis_R(const BigReal& q0, const PrecisionContext& ctx)
{
    ScopedPrecision scope(ctx.working());
    BigReal q = at_working(q0, ctx);
    if (q < 0 || q >= 1) throw std::domain_error("eis_R: need 0 <= q < 1");
    return 1 - 504 * detail::weighted_lambert_sum(5, q * q, ctx);
}

struct EisensteinTriple {
    BigReal P, Q, R;
};

inline EisensteinTriple eisenstein_triple(const BigReal& q, const PrecisionContext& ctx)
{
    return {eis_P(q, ctx), eis_Q(q, ctx), eis_R(q, ctx)};
}

/// sum_{n>=1} n^s / (e^(2 pi n sqrt(r)) - 1) for odd s.
inline BigReal hyperbolic_sum(int s, const Rational& r, const PrecisionContext& ctx)
{
    if (s < 1 || s % 2 == 0) throw std::domain_error("hyperbolic_sum: s must be odd and positive");
    if (r <= 0) throw std::domain_error("hyperbolic_sum: r must be positive");
    ScopedPrecision scope(ctx.working());
    BigReal x = exp(-2 * pi_value(ctx) * sqrt_rational(r, ctx));
    return detail::weighted_lambert_sum(s, x, ctx);
}

namespace detail {

inline Rational bernoulli_2nu(int nu)
{
    switch (nu) {
        case 2: return Rational(-1, 30);
        case 3: return Rational(1, 42);
        case 4: return Rational(-1, 30);
        case 5: return Rational(5, 66);
        default: throw std::domain_error("bernoulli_2nu: nu out of supported range");
    }
}

/// zeta(2 nu) = (2 pi)^(2 nu) |B_(2 nu)| / (2 (2 nu)!).
inline BigReal zeta_even(int nu, const PrecisionContext& ctx)
{
    Rational B = bernoulli_2nu(nu);
    BigReal absB = abs(to_big(B));
    long fact = 1;
    for (long i = 2; i <= 2 * nu; ++i) fact *= i;
    return pow(2 * pi_value(ctx), 2 * nu) * absB / (2 * fact);
}

} // namespace detail

/// Normalized lattice invariant g_nu(r) = 2 zeta(2nu)
/// - (8 nu zeta(2nu)/B_(2nu)) sum n^(2nu-1) x^n/(1-x^n), x = e^(-2 pi sqrt(r)).
inline BigReal eis_g(int nu, const Rational& r, const PrecisionContext& ctx)
{
    if (nu < 2) throw std::domain_error("eis_g: nu must be >= 2");
    if (r <= 0) throw std::domain_error("eis_g: r must be positive");
    ScopedPrecision scope(ctx.working());
    BigReal z = detail::zeta_even(nu, ctx);
    BigReal S = hyperbolic_sum(2 * nu - 1, r, ctx);
    return 2 * z - 8 * nu * z / to_big(detail::bernoulli_2nu(nu)) * S;
}

/// Purely imaginary lattice parameter tau = i * im.
struct ImaginaryTau {
    BigReal im;
};

namespace detail {

/// Truncated sum over (m,n) != (0,0), |m|,|n| <= M of Re (m tau + n)^(-2k),
/// tau = i t. Imaginary parts cancel pairwise under (m,n) -> (-m,-n);
/// the summation order is fixed for determinism.
inline BigReal lattice_sum_even(const BigReal& t, int M, int k, const PrecisionContext& ctx)
{
    ScopedPrecision scope(ctx.working());
    BigReal sum(0);
    for (int m = -M; m <= M; ++m) {
        for (int n = -M; n <= M; ++n) {
            if (m == 0 && n == 0) continue;
            // z = n + i m t; form z^(2k) by repeated complex squaring/multiplication.
            BigReal re(n), im = m * t;
            BigReal pr(1), pi_(0);
            for (int j = 0; j < k; ++j) {
                // multiply (pr + i pi) by z^2 where z^2 is computed once
                BigReal zr = re * re - im * im;
                BigReal zi = 2 * re * im;
                BigReal npr = pr * zr - pi_ * zi;
                pi_ = pr * zi + pi_ * zr;
                pr = npr;
            }
            BigReal den = pr * pr + pi_ * pi_;
            sum += pr / den;
        }
    }
    return sum;
}

} // namespace detail

/// g2*(tau) = 60 sum' (m tau + n)^-4 truncated at |m|,|n| <= M.
/// Tail is O(M^-2); intended as the low-precision oracle for eis_g.
inline BigReal lattice_g2(const ImaginaryTau& tau, int M, const PrecisionContext& ctx)
{
    if (M < 10) throw std::domain_error("lattice_g2: M >= 10 required");
    return 60 * detail::lattice_sum_even(tau.im, M, 2, ctx);
}

/// g3*(tau) = 140 sum' (m tau + n)^-6 truncated at |m|,|n| <= M; tail O(M^-4).
inline BigReal lattice_g3(const ImaginaryTau& tau, int M, const PrecisionContext& ctx)
{
    if (M < 10) throw std::domain_error("lattice_g3: M >= 10 required");
    return 140 * detail::lattice_sum_even(tau.im, M, 3, ctx);
}

namespace detail {

/// Truncation radius for the cubic theta double sums. The quadratic form
/// m^2 + mn + n^2 has least eigenvalue 1/2, so |q|^(M^2/2) bounds the tail row.
inline int cubic_theta_radius(const BigReal& q, const PrecisionContext& ctx)
{
    double L = -static_cast<double>(log(q));
    double D = (ctx.working() + 5) * std::log(10.0);
    int M = static_cast<int>(std::ceil(std::sqrt(D / (0.5 * L)))) + 2;
    return M;
}

} // namespace detail

/// Cubic theta a(q) = sum_{m,n} q^(m^2+mn+n^2).
inline BigReal cubic_theta_a(const BigReal& q0, const PrecisionContext& ctx)
{
    ScopedPrecision scope(ctx.working());
    BigReal q = at_working(q0, ctx);
    if (q < 0 || q >= 1) throw std::domain_error("cubic_theta_a: need 0 <= q < 1");
    if (q == 0) return BigReal(1);
    const int M = detail::cubic_theta_radius(q, ctx);
    BigReal sum(0);
    for (int m = -M; m <= M; ++m)
        for (int n = -M; n <= M; ++n) {
            long e = static_cast<long>(m) * m + static_cast<long>(m) * n + static_cast<long>(n) * n;
            sum += pow(q, e);
        }
    return sum;
}

/// Cubic theta c(q) = sum_{m,n} q^((m+1/3)^2+(m+1/3)(n+1/3)+(n+1/3)^2)
///                  = q^(1/3) sum_{m,n} q^(m^2+mn+n^2+m+n).
inline BigReal cubic_theta_c(const BigReal& q0, const PrecisionContext& ctx)
{
    ScopedPrecision scope(ctx.working());
    BigReal q = at_working(q0, ctx);
    if (q < 0 || q >= 1) throw std::domain_error("cubic_theta_c: need 0 <= q < 1");
    if (q == 0) return BigReal(0);
    const int M = detail::cubic_theta_radius(q, ctx);
    BigReal sum(0);
    for (int m = -M; m <= M; ++m)
        for (int n = -M; n <= M; ++n) {
            long e = static_cast<long>(m) * m + static_cast<long>(m) * n + static_cast<long>(n) * n
                     + m + n;
            sum += pow(q, e);
        }
    return cbrt(q) * sum;
}

} // namespace ramapi
