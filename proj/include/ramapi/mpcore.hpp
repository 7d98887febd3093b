// Complete elliptic integrals via the AGM, Gauss 2F1, Legendre functions, Gamma.
//
// Conventions: K and E take the PARAMETER m = k^2, as in Mathematica and
// mpmath. All special-function series truncate at 10^-(digits+guard).
#pragma once

#include "ramapi/precision.hpp"

#include <stdexcept>
#include <utility>

namespace ramapi {

/// Arithmetic-geometric mean of a, b >= 0. agm(a, 0) == 0.
inline BigReal agm(const BigReal& a0, const BigReal& b0, const PrecisionContext& ctx)
{
    ScopedPrecision scope(ctx.working());
    BigReal a = at_working(a0, ctx);
    BigReal b = at_working(b0, ctx);
    if (a < 0 || b < 0) throw std::domain_error("agm: negative argument");
    if (a < b) swap(a, b);
    if (b == 0) return BigReal(0);

    const BigReal eps = working_eps(ctx) * a;
    // Quadratic convergence: the gap squares each round.
    while (a - b > eps) {
        BigReal an = (a + b) / 2;
        b = sqrt(a * b);
        a = an;
    }
    return (a + b) / 2;
}

/// pi by the Gauss-Brent-Salamin iteration. Serves as the independent
/// reference everywhere a series result is checked against pi.
inline BigReal pi_agm(const PrecisionContext& ctx)
{
    ScopedPrecision scope(ctx.working());
    BigReal a(1);
    BigReal b = sqrt(BigReal(1) / 2);
    BigReal t = BigReal(1) / 4;
    BigReal p(1);
    const BigReal stop = pow(BigReal(10), -(ctx.working() / 2 + 4));
    while (a - b > stop) {
        BigReal an = (a + b) / 2;
        b = sqrt(a * b);
        BigReal d = a - an;
        t -= p * d * d;
        p *= 2;
        a = an;
    }
    BigReal s = a + b;
    return s * s / (4 * t);
}

/// Complete elliptic integral of the first kind at parameter m:
/// K(m) = pi / (2 agm(1, sqrt(1-m))).
inline BigReal ellip_K(const BigReal& m0, const PrecisionContext& ctx)
{
    ScopedPrecision scope(ctx.working());
    BigReal m = at_working(m0, ctx);
    if (m < 0) throw std::domain_error("ellip_K: m < 0 unsupported");
    if (m >= 1) throw std::domain_error("ellip_K: logarithmic pole at m = 1");
    return pi_value(ctx) / (2 * agm(BigReal(1), sqrt(1 - m), ctx));
}

/// m = k_r^2, with the first- and second-kind integrals at that parameter.
struct EllipticPair {
    BigReal m;
    BigReal K;
    BigReal E;
};

/// K and E from one AGM run: E = K (1 - sum 2^(n-1) c_n^2), c_0 = sqrt(m).
inline EllipticPair ellip_pair(const BigReal& m0, const PrecisionContext& ctx)
{
    ScopedPrecision scope(ctx.working());
    BigReal m = at_working(m0, ctx);
    if (m < 0) throw std::domain_error("ellip_pair: m < 0 unsupported");
    if (m > 1) throw std::domain_error("ellip_pair: m > 1 unsupported");
    if (m == 1) return {m, BigReal(0), BigReal(1)}; // K diverges; E(1) = 1

    BigReal a(1);
    BigReal b = sqrt(1 - m);
    BigReal csum = m / 2; // 2^(-1) c_0^2
    BigReal p(1);
    const BigReal eps = working_eps(ctx);
    long iters = 0;
    while (a - b > eps * a) {
        BigReal an = (a + b) / 2;
        BigReal c = (a - b) / 2;
        csum += p * c * c;
        p *= 2;
        b = sqrt(a * b);
        a = an;
        if (++iters > 1000) throw std::runtime_error("ellip_pair: AGM failed to converge");
    }
    BigReal K = pi_value(ctx) / (2 * ((a + b) / 2));
    return {m, K, K * (1 - csum)};
}

/// Complete elliptic integral of the second kind at parameter m.
inline BigReal ellip_E(const BigReal& m, const PrecisionContext& ctx)
{
    return ellip_pair(m, ctx).E;
}

namespace detail {

inline bool is_nonpositive_integer(const Rational& x)
{
    return x.denominator() == 1 && x.numerator() <= 0;
}

/// Direct series sum of 2F1(a,b;c;w), |w| < 1.
inline BigReal hyp2f1_series(const Rational& a, const Rational& b, const Rational& c,
                             const BigReal& w, const PrecisionContext& ctx)
{
    ScopedPrecision scope(ctx.working());
    const BigReal eps = working_eps(ctx);
    BigReal term(1), sum(1);
    BigReal aa = to_big(a), bb = to_big(b), cc = to_big(c);
    BigReal prev_mag = abs(term);
    for (long n = 0; n < ctx.max_terms(); ++n) {
        term *= (aa + n) * (bb + n) / ((cc + n) * (n + 1)) * w;
        sum += term;
        BigReal mag = abs(term);
        if (mag < eps && mag <= prev_mag) return sum;
        prev_mag = mag;
    }
    throw std::runtime_error("hyp2f1_series: did not converge within max_terms");
}

/// 2F1(a,b;a+b;w) by the logarithmic connection at 1-w, taking v = 1-w
/// directly so callers with tiny v lose nothing to cancellation:
///   2F1 = G sum_n p_n [2 psi(n+1) - psi(a+n) - psi(b+n) - ln v] v^n,
/// G = Gamma(a+b)/(Gamma(a)Gamma(b)), p_n = (a)_n (b)_n / (n!)^2.
inline BigReal hyp2f1_log_connection_v(const Rational& a, const Rational& b,
                                       const BigReal& v0, const PrecisionContext& ctx)
{
    ScopedPrecision scope(ctx.working());
    BigReal v = at_working(v0, ctx);
    if (v <= 0 || v > 1) throw std::domain_error("hyp2f1_log_connection: need 0 < 1-w <= 1");

    auto gamma_of = [&](const Rational& x) {
        BigReal g;
        g.precision(ctx.working());
        BigReal xb = to_big(x);
        mpfr_gamma(g.backend().data(), xb.backend().data(), MPFR_RNDN);
        return g;
    };
    auto digamma_of = [&](const Rational& x) {
        BigReal d;
        d.precision(ctx.working());
        BigReal xb = to_big(x);
        mpfr_digamma(d.backend().data(), xb.backend().data(), MPFR_RNDN);
        return d;
    };

    const BigReal G = gamma_of(a + b) / (gamma_of(a) * gamma_of(b));
    const BigReal L = -log(v);
    BigReal aa = to_big(a), bb = to_big(b);
    BigReal p(1);
    BigReal D = -2 * euler_gamma(ctx) - digamma_of(a) - digamma_of(b);
    BigReal vn(1);
    BigReal sum(0);
    const BigReal eps = working_eps(ctx);
    for (long n = 0; n < ctx.max_terms(); ++n) {
        BigReal term = p * (D + L) * vn;
        sum += term;
        if (n > 0 && abs(term) < eps * (1 + abs(sum))) return G * sum;
        D += 2 / BigReal(n + 1) - 1 / (aa + n) - 1 / (bb + n);
        p *= (aa + n) * (bb + n) / ((n + 1) * BigReal(n + 1));
        vn *= v;
    }
    throw std::runtime_error("hyp2f1_log_connection: did not converge within max_terms");
}

} // namespace detail

/// Gauss hypergeometric 2F1(a,b;c;w) for rational parameters, -1 < w < 1.
/// For w >= 1/2 with c = a+b the 1-w connection series (log term included)
/// replaces the direct sum. w = 1 with c = a+b returns +infinity.
inline BigReal gauss_2f1(const Rational& a, const Rational& b, const Rational& c,
                         const BigReal& w0, const PrecisionContext& ctx)
{
    ScopedPrecision scope(ctx.working());
    BigReal w = at_working(w0, ctx);
    if (detail::is_nonpositive_integer(c))
        throw std::domain_error("gauss_2f1: c is a non-positive integer");
    if (w == 1) {
        if (c == a + b) return std::numeric_limits<BigReal>::infinity();
        throw std::domain_error("gauss_2f1: w = 1 outside the c = a+b case");
    }
    if (abs(w) >= 1) throw std::domain_error("gauss_2f1: |w| >= 1");
    if (c == a + b && w >= BigReal(1) / 2)
        return detail::hyp2f1_log_connection_v(a, b, 1 - w, ctx);
    return detail::hyp2f1_series(a, b, c, w, ctx);
}

/// Legendre function P_nu(w) for mu = 0, w in (-1, 1]:
/// P_nu(w) = 2F1(-nu, nu+1; 1; (1-w)/2).
inline BigReal legendre_P(const Rational& nu, const BigReal& w0, const PrecisionContext& ctx)
{
    ScopedPrecision scope(ctx.working());
    BigReal w = at_working(w0, ctx);
    if (w <= -1) throw std::domain_error("legendre_P: w <= -1");
    if (w == 1) return BigReal(1);
    return gauss_2f1(-nu, nu + 1, Rational(1), (1 - w) / 2, ctx);
}

/// Gamma function; poles at non-positive integers raise.
inline BigReal gamma_fn(const BigReal& x0, const PrecisionContext& ctx)
{
    ScopedPrecision scope(ctx.working());
    BigReal x = at_working(x0, ctx);
    if (x <= 0 && x == floor(x)) throw std::domain_error("gamma_fn: pole at non-positive integer");
    BigReal g;
    g.precision(ctx.working());
    mpfr_gamma(g.backend().data(), x.backend().data(), MPFR_RNDN);
    return g;
}

/// 2F1(1/4,7/4;1;w) through E and K at the parameter 2 - 2/(1+sqrt(w)),
///   -2 [E(s) - 2(sqrt(w)-1) K(s)] / (3 pi (sqrt(w)-1) sqrt(1+sqrt(w))).
/// w = 0 falls back to the direct series (the quotient is 0/0 there).
inline BigReal hyp2f1_quarter_seven(const BigReal& w0, const PrecisionContext& ctx)
{
    ScopedPrecision scope(ctx.working());
    BigReal w = at_working(w0, ctx);
    if (w < 0 || w >= 1) throw std::domain_error("hyp2f1_quarter_seven: need 0 <= w < 1");
    if (w == 0) return detail::hyp2f1_series(Rational(1, 4), Rational(7, 4), Rational(1), w, ctx);
    BigReal sw = sqrt(w);
    EllipticPair ek = ellip_pair(2 - 2 / (1 + sw), ctx);
    return -2 * (ek.E - 2 * (sw - 1) * ek.K) / (3 * pi_value(ctx) * (sw - 1) * sqrt(1 + sw));
}

namespace detail {
// Exposed series/connection entry points for the overlap-band agreement tests.
inline BigReal hyp2f1_direct_path(const Rational& a, const Rational& b, const Rational& c,
                                  const BigReal& w, const PrecisionContext& ctx)
{
    return hyp2f1_series(a, b, c, w, ctx);
}
inline BigReal hyp2f1_connection_path(const Rational& a, const Rational& b,
                                      const BigReal& w, const PrecisionContext& ctx)
{
    return hyp2f1_log_connection_v(a, b, 1 - w, ctx);
}
} // namespace detail

} // namespace ramapi
