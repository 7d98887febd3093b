// Singular-modulus solvers and transformations: m_r, alpha_r, beta_r, the
// elliptic alpha function, multipliers, duplication/triplication and the
// degree-2 modular equation.
#pragma once

#include "ramapi/mpcore.hpp"
#include "ramapi/qseries.hpp"

#include <functional>
#include <stdexcept>
#include <utility>

namespace ramapi {

namespace detail {

/// Root of a strictly monotone f on (lo, hi): bisection (in log x when
/// log_domain, so roots arbitrarily close to 0 cost only O(log digits)
/// steps) down to ~12 relative digits, then safeguarded Newton with a
/// central-difference derivative to full working precision.
template <typename F>
BigReal solve_monotone(F&& f, BigReal lo, BigReal hi, const PrecisionContext& ctx,
                       bool log_domain = true)
{
    ScopedPrecision scope(ctx.working());
    BigReal flo = f(lo), fhi = f(hi);
    if (flo == 0) return lo;
    if (fhi == 0) return hi;
    if ((flo > 0) == (fhi > 0))
        throw std::runtime_error("solve_monotone: root not bracketed");
    const bool decreasing = flo > 0;

    auto side = [&](const BigReal& v) { return decreasing ? v > 0 : v < 0; }; // true: root above

    BigReal x;
    if (log_domain) {
        BigReal ulo = log(lo), uhi = log(hi);
        while (uhi - ulo > BigReal(1) / 100000000000LL) {
            BigReal um = (ulo + uhi) / 2;
            BigReal xm = exp(um);
            if (side(f(xm)))
                ulo = um;
            else
                uhi = um;
        }
        x = exp((ulo + uhi) / 2);
        lo = exp(ulo);
        hi = exp(uhi);
    } else {
        while ((hi - lo) > abs(lo + hi) / 200000000000LL + working_eps(ctx)) {
            BigReal xm = (lo + hi) / 2;
            if (side(f(xm)))
                lo = xm;
            else
                hi = xm;
        }
        x = (lo + hi) / 2;
    }

    // Newton polish. The numeric derivative is good to ~2/3 of working
    // precision, which keeps the iteration quadratic until the last step.
    const BigReal target = pow(BigReal(10), -(ctx.working() - 2));
    const int hshift = std::max(12, ctx.working() / 3);
    for (int it = 0; it < 120; ++it) {
        BigReal fx = f(x);
        if (fx == 0) return x;
        BigReal h = abs(x) * pow(BigReal(10), -hshift);
        BigReal der = (f(x + h) - f(x - h)) / (2 * h);
        BigReal xn;
        bool ok = der != 0;
        if (ok) {
            xn = x - fx / der;
            ok = xn > lo && xn < hi;
        }
        if (!ok) xn = side(fx) ? (x + hi) / 2 : (x + lo) / 2;
        if (side(fx))
            lo = x;
        else
            hi = x;
        BigReal step = abs(xn - x);
        x = xn;
        if (step <= abs(x) * target) return x;
    }
    throw std::runtime_error("solve_monotone: Newton failed to converge");
}

/// Lower bracket endpoint for solvers whose roots approach 0 as r grows.
inline BigReal bracket_floor(const PrecisionContext& ctx)
{
    return pow(BigReal(10), -(ctx.working() - 2));
}

/// Solve K(1-m)/K(m) = target for m in (0,1).
inline BigReal solve_m_for_ratio(const BigReal& target, const PrecisionContext& ctx)
{
    ScopedPrecision scope(ctx.working());
    auto f = [&](const BigReal& m) { return ellip_K(1 - m, ctx) / ellip_K(m, ctx) - target; };
    BigReal lo = bracket_floor(ctx);
    BigReal hi = 1 - lo;
    return solve_monotone(f, lo, hi, ctx);
}

} // namespace detail

/// Singular modulus parameter m_r: the unique m in (0,1) with
/// K(1-m)/K(m) = sqrt(r). Precision must comfortably exceed ~1.4 sqrt(r)
/// digits or the root falls below the bracket floor.
inline BigReal solve_m(const Rational& r, const PrecisionContext& ctx)
{
    if (r <= 0) throw std::domain_error("solve_m: r must be positive");
    if (r == 1) return at_working(BigReal(1) / 2, ctx);
    return detail::solve_m_for_ratio(sqrt_rational(r, ctx), ctx);
}

/// Cubic singular modulus alpha_r = (c/a)^3 at the cubic nome.
inline BigReal alpha_from_theta(const Rational& r, const PrecisionContext& ctx)
{
    if (r <= 0) throw std::domain_error("alpha_from_theta: r must be positive");
    ScopedPrecision scope(ctx.working());
    Nome nm = make_nome(r, ctx);
    BigReal ratio = cubic_theta_c(nm.q_cubic, ctx) / cubic_theta_a(nm.q_cubic, ctx);
    return ratio * ratio * ratio;
}

/// alpha_r as the root of 2F1(1/3,2/3;1;1-a)/2F1(1/3,2/3;1;a) = sqrt(r).
inline BigReal alpha_solve(const Rational& r, const PrecisionContext& ctx)
{
    if (r <= 0) throw std::domain_error("alpha_solve: r must be positive");
    if (r == 1) return at_working(BigReal(1) / 2, ctx);
    ScopedPrecision scope(ctx.working());
    const Rational a(1, 3), b(2, 3);
    BigReal target = sqrt_rational(r, ctx);
    auto f = [&](const BigReal& x) {
        // numerator argument 1-x is passed as its complement to keep tiny x exact
        return detail::hyp2f1_log_connection_v(a, b, x, ctx)
               / detail::hyp2f1_series(a, b, Rational(1), x, ctx) - target;
    };
    BigReal lo = detail::bracket_floor(ctx);
    return detail::solve_monotone(f, lo, 1 - lo, ctx);
}

/// Sextic modulus beta_r from the 2F1(1/6,5/6;1;.) ratio equation.
inline BigReal beta_solve(const Rational& r, const PrecisionContext& ctx)
{
    if (r <= 0) throw std::domain_error("beta_solve: r must be positive");
    if (r == 1) return at_working(BigReal(1) / 2, ctx);
    ScopedPrecision scope(ctx.working());
    const Rational a(1, 6), b(5, 6);
    BigReal target = sqrt_rational(r, ctx);
    auto f = [&](const BigReal& x) {
        return detail::hyp2f1_log_connection_v(a, b, x, ctx)
               / detail::hyp2f1_series(a, b, Rational(1), x, ctx) - target;
    };
    BigReal lo = detail::bracket_floor(ctx);
    return detail::solve_monotone(f, lo, 1 - lo, ctx);
}

/// Degree-3 descent: beta_r = 1/2 - (1 - 20 a - 8 a^2) / (2 (1+8a)^(3/2))
/// at a = alpha_(3r).
inline BigReal beta_from_alpha3r(const BigReal& alpha_3r)
{
    if (alpha_3r < 0 || alpha_3r > 1) throw std::domain_error("beta_from_alpha3r: alpha out of (0,1)");
    BigReal t = 1 + 8 * alpha_3r;
    return BigReal(1) / 2 - (1 - 20 * alpha_3r - 8 * alpha_3r * alpha_3r) / (2 * t * sqrt(t));
}

/// beta_(3r) from alpha_r in closed form,
///   beta_(3r) = 1/2 - (27 - 36 a + 8 a^2) / (2 (9 - 8a)^(3/2)),
/// algebraically identical to beta_from_alpha3r(triplicate_alpha(a)): with
/// s = (1-a)^(1/3), (1+2s)(1-2s+4s^2) = 9-8a collapses the nested radicals.
inline BigReal beta_3r_from_alpha(const BigReal& alpha_r)
{
    if (alpha_r < 0 || alpha_r > 1) throw std::domain_error("beta_3r_from_alpha: alpha out of (0,1)");
    BigReal t = 9 - 8 * alpha_r;
    return BigReal(1) / 2 - (27 - 36 * alpha_r + 8 * alpha_r * alpha_r) / (2 * t * sqrt(t));
}

/// Triplication alpha_(9r) = ((1 - (1-a)^(1/3)) / (1 + 2 (1-a)^(1/3)))^3.
inline BigReal triplicate_alpha(const BigReal& alpha_r)
{
    if (alpha_r < 0 || alpha_r > 1) throw std::domain_error("triplicate_alpha: alpha out of [0,1]");
    BigReal s = cbrt(1 - alpha_r);
    BigReal q = (1 - s) / (1 + 2 * s);
    return q * q * q;
}

/// Degree-2 modular equation (a_r A)^(1/3) + ((1-a_r)(1-A))^(1/3) = 1,
/// solved for A = alpha_(4r) on the increasing branch A < sqrt(a)/(sqrt(a)+sqrt(1-a)).
inline BigReal modular2_alpha(const BigReal& alpha_r0, const PrecisionContext& ctx)
{
    ScopedPrecision scope(ctx.working());
    BigReal a = at_working(alpha_r0, ctx);
    if (a <= 0 || a >= 1) throw std::domain_error("modular2_alpha: alpha out of (0,1)");
    BigReal ap = 1 - a;
    auto f = [&](const BigReal& A) { return cbrt(a * A) + cbrt(ap * (1 - A)) - 1; };
    BigReal crest = sqrt(a) / (sqrt(a) + sqrt(ap)); // maximum of the left side
    BigReal lo = detail::bracket_floor(ctx);
    if (!(f(lo) < 0 && f(crest) > 0))
        throw std::runtime_error("modular2_alpha: no root below the branch crest");
    return detail::solve_monotone(f, lo, crest, ctx);
}

/// Duplication m_(4r) = ((1 - k')/(1 + k'))^2, k' = sqrt(1 - m_r).
inline BigReal duplicate_k(const BigReal& m_r)
{
    if (m_r <= 0 || m_r >= 1) throw std::domain_error("duplicate_k: m out of (0,1)");
    BigReal kp = sqrt(1 - m_r);
    BigReal k4 = (1 - kp) / (1 + kp);
    return k4 * k4;
}

/// Degree-n multiplier value m_n = K[n^2 r]/K[r].
struct MultiplierValue {
    int n;
    BigReal value;
};

/// Degree-3 multiplier: the root of 27 y^4 - 18 y^2 - 8(1-2m) y - 1 near the
/// K-ratio K[9r]/K[r]. Root selection is by that independent numeric oracle,
/// never by index; the oracle seed is then polished on the polynomial.
inline MultiplierValue multiplier_m3(const BigReal& m_r0, const PrecisionContext& ctx)
{
    ScopedPrecision scope(ctx.working());
    BigReal m = at_working(m_r0, ctx);
    if (m <= 0 || m >= 1) throw std::domain_error("multiplier_m3: m out of (0,1)");
    BigReal K_r = ellip_K(m, ctx);
    BigReal sqrt_r = ellip_K(1 - m, ctx) / K_r;
    BigReal m9 = detail::solve_m_for_ratio(3 * sqrt_r, ctx);
    BigReal y = ellip_K(m9, ctx) / K_r;

    BigReal c1 = -8 * (1 - 2 * m);
    auto p = [&](const BigReal& t) { return 27 * pow(t, 4) - 18 * t * t + c1 * t - 1; };
    auto dp = [&](const BigReal& t) { return 108 * pow(t, 3) - 36 * t + c1; };
    for (int it = 0; it < 64; ++it) {
        BigReal d = dp(y);
        if (d == 0) throw std::runtime_error("multiplier_m3: stationary point at iterate");
        BigReal step = p(y) / d;
        y -= step;
        if (abs(step) <= abs(y) * pow(BigReal(10), -(ctx.working() - 2))) break;
    }
    if (abs(p(y)) > tolerance(ctx, 5))
        throw std::runtime_error("multiplier_m3: no polynomial root near the K-ratio");
    return {3, y};
}

/// Elliptic alpha function
///   a(r) = (sqrt(r)/3) (1 + m - s_r),
///   s_r  = 3 E/K - 2 + m - 3 pi / (4 sqrt(r) K^2),  m = m_r.
inline BigReal elliptic_alpha(const Rational& r, const PrecisionContext& ctx)
{
    if (r <= 0) throw std::domain_error("elliptic_alpha: r must be positive");
    ScopedPrecision scope(ctx.working());
    BigReal sr_ = sqrt_rational(r, ctx);
    EllipticPair ek = ellip_pair(solve_m(r, ctx), ctx);
    BigReal s = 3 * ek.E / ek.K - 2 + ek.m - 3 * pi_value(ctx) / (4 * sr_ * ek.K * ek.K);
    return sr_ / 3 * (1 + ek.m - s);
}

/// Residual of the degree-9 elliptic-alpha identity
///   a(9r)/sqrt(r) - k_(9r)^2 = 1 - (k9 k + k9' k' + 1)/(3 m3) - 1/(3 m3^2)
///                              + (a(r)/sqrt(r) - k^2/3)/m3^2 .
inline BigReal verify_a1(const Rational& r, const PrecisionContext& ctx)
{
    ScopedPrecision scope(ctx.working());
    BigReal sr_ = sqrt_rational(r, ctx);
    BigReal m = solve_m(r, ctx);
    BigReal m9 = solve_m(9 * r, ctx);
    BigReal k = sqrt(m), k9 = sqrt(m9);
    BigReal kp = sqrt(1 - m), k9p = sqrt(1 - m9);
    BigReal m3 = multiplier_m3(m, ctx).value;
    BigReal lhs = elliptic_alpha(9 * r, ctx) / sr_ - m9;
    BigReal rhs = 1 - k9 * k / (3 * m3) - k9p * kp / (3 * m3) - 1 / (3 * m3)
                  - 1 / (3 * m3 * m3) + (elliptic_alpha(r, ctx) / sr_ - m / 3) / (m3 * m3);
    return abs(lhs - rhs);
}

/// Residual of the degree-81 identity; the degree-9 multiplier
/// m9 = K[81r]/K[r] is taken directly as a K-ratio.
inline BigReal verify_a2(const Rational& r, const PrecisionContext& ctx)
{
    ScopedPrecision scope(ctx.working());
    BigReal sr_ = sqrt_rational(r, ctx);
    BigReal m = solve_m(r, ctx);
    BigReal m81 = solve_m(81 * r, ctx);
    BigReal K_r = ellip_K(m, ctx);
    BigReal mult3 = multiplier_m3(m, ctx).value;
    BigReal mult9 = ellip_K(m81, ctx) / K_r;
    BigReal lhs = elliptic_alpha(81 * r, ctx) / sr_ - 3 * m81;
    BigReal rhs = 3 - pow(mult3, 5) / (6 * pow(mult9, 3) * sqrt(mult9))
                  - pow(mult3, 3) / (pow(mult9, 2) * sqrt(mult9))
                  - 1 / (3 * mult9 * mult9)
                  - 3 * mult3 / (2 * mult9 * sqrt(mult9))
                  + (elliptic_alpha(r, ctx) / sr_ - m / 3) / (mult9 * mult9);
    return abs(lhs - rhs);
}

/// 2F1(1/3,2/3;1;alpha_r) = (2/pi) ((1 - m + m^2)/(1 + 8 alpha_r))^(1/4) K(m),
/// with m = m_(r/3).
inline BigReal thm1_eval(const Rational& r, const PrecisionContext& ctx)
{
    if (r <= 0) throw std::domain_error("thm1_eval: r must be positive");
    ScopedPrecision scope(ctx.working());
    BigReal m = solve_m(r / 3, ctx);
    BigReal a = alpha_from_theta(r, ctx);
    BigReal ratio = (1 - m + m * m) / (1 + 8 * a);
    return 2 / pi_value(ctx) * sqrt(sqrt(ratio)) * ellip_K(m, ctx);
}

/// 2F1(1/6,5/6;1;beta_r) = (2/pi) (1 - m + m^2)^(1/4) K(m), m = m_r.
inline BigReal thm3_eval(const Rational& r, const PrecisionContext& ctx)
{
    if (r <= 0) throw std::domain_error("thm3_eval: r must be positive");
    ScopedPrecision scope(ctx.working());
    BigReal m = solve_m(r, ctx);
    return 2 / pi_value(ctx) * sqrt(sqrt(1 - m + m * m)) * ellip_K(m, ctx);
}

/// Numeric solution (alpha, z) of
///   (1 + 8 alpha) z^4 = t1,   (1 - 20 alpha - 8 alpha^2) z^6 = t2.
/// Eliminating z leaves a strictly decreasing scalar equation in alpha.
inline std::pair<BigReal, BigReal> solve_thm2_system(const BigReal& t1_0, const BigReal& t2_0,
                                                     const PrecisionContext& ctx)
{
    ScopedPrecision scope(ctx.working());
    BigReal t1 = at_working(t1_0, ctx);
    BigReal t2 = at_working(t2_0, ctx);
    if (t1 <= 0) throw std::domain_error("solve_thm2_system: t1 must be positive");
    BigReal target = t2 / (t1 * sqrt(t1));
    auto f = [&](const BigReal& a) {
        BigReal u = 1 + 8 * a;
        return (1 - 20 * a - 8 * a * a) / (u * sqrt(u)) - target;
    };
    BigReal lo = detail::bracket_floor(ctx);
    BigReal alpha = detail::solve_monotone(f, lo, 1 - lo, ctx);
    BigReal z = sqrt(sqrt(t1 / (1 + 8 * alpha)));
    BigReal res1 = abs((1 + 8 * alpha) * pow(z, 4) - t1);
    BigReal res2 = abs((1 - 20 * alpha - 8 * alpha * alpha) * pow(z, 6) - t2);
    BigReal tol = tolerance(ctx, 5) * (1 + abs(t1) + abs(t2));
    if (res1 > tol || res2 > tol)
        throw std::runtime_error("solve_thm2_system: residuals exceed tolerance");
    return {alpha, z};
}

enum class Provenance { solved, transformed, corpus };

/// The full modulus bundle for one r.
struct ModulusRecord {
    Rational r;
    BigReal m;
    BigReal k;
    BigReal alpha;
    BigReal beta;
    BigReal a_elliptic;
    Provenance m_from = Provenance::solved;
    Provenance alpha_from = Provenance::solved;
    Provenance beta_from = Provenance::transformed;
    Provenance a_from = Provenance::solved;
};

/// Compute the bundle: m by the K-ratio equation, alpha by the theta
/// quotient, beta by the degree-3 descent from alpha_(3r), a(r) analytically.
inline ModulusRecord compute_record(const Rational& r, const PrecisionContext& ctx)
{
    ScopedPrecision scope(ctx.working());
    ModulusRecord rec;
    rec.r = r;
    rec.m = solve_m(r, ctx);
    rec.k = sqrt(rec.m);
    rec.alpha = alpha_from_theta(r, ctx);
    rec.beta = beta_from_alpha3r(alpha_from_theta(3 * r, ctx));
    rec.a_elliptic = elliptic_alpha(r, ctx);
    return rec;
}

} // namespace ramapi
