// Ramanujan-type 1/pi series engine: J_r, T_r, the j-invariant, the
// weight-(1/6,5/6,1/2) hypergeometric sum, and pi extraction.
#pragma once

#include "ramapi/moduli.hpp"
#include "ramapi/mpcore.hpp"

#include <cmath>
#include <stdexcept>

namespace ramapi {

/// Modular j-invariant from the sextic modulus: j = 432 / (beta (1 - beta)).
inline BigReal j_invariant(const BigReal& beta)
{
    if (beta <= 0 || beta >= 1) throw std::domain_error("j_invariant: pole at beta in {0,1}");
    return 432 / (beta * (1 - beta));
}

/// J_r = 4 beta_r (1 - beta_r), beta by the degree-3 descent (solver fallback).
inline BigReal series_J(const Rational& r, const PrecisionContext& ctx)
{
    if (r < 1) throw std::domain_error("series_J: r >= 1 required");
    ScopedPrecision scope(ctx.working());
    BigReal beta;
    try {
        beta = beta_from_alpha3r(alpha_from_theta(3 * r, ctx));
    } catch (const std::exception&) {
        beta = beta_solve(r, ctx);
    }
    return 4 * beta * (1 - beta);
}

/// T_r = (1 + m_r - (3/sqrt(r)) a(r)) / (sqrt(1 - m_r + m_r^2) (1 - 2 beta_r)).
/// Pole at r = 1 where beta_1 = 1/2.
inline BigReal series_T(const Rational& r, const PrecisionContext& ctx)
{
    if (r < 1) throw std::domain_error("series_T: r >= 1 required");
    if (r == 1) throw std::domain_error("series_T: pole at r = 1 (beta_1 = 1/2)");
    ScopedPrecision scope(ctx.working());
    BigReal m = solve_m(r, ctx);
    BigReal a = elliptic_alpha(r, ctx);
    BigReal beta = beta_from_alpha3r(alpha_from_theta(3 * r, ctx));
    return (1 + m - 3 / sqrt_rational(r, ctx) * a) / (sqrt(1 - m + m * m) * (1 - 2 * beta));
}

/// The quarter-level display
///   t_r = (1 + k_(r/4)^2 - (6/sqrt(r)) a(r/4))
///         / (sqrt(1 - k_(r/4)^2 + k_(r/4)^4) (1 - 2 beta_(r/4))),
/// evaluated literally; equal to series_T(r/4) since 6/sqrt(r) = 3/sqrt(r/4).
inline BigReal t_lower(const Rational& r, const PrecisionContext& ctx)
{
    if (r <= 4) throw std::domain_error("t_lower: r > 4 required");
    ScopedPrecision scope(ctx.working());
    Rational r4 = r / 4;
    BigReal m = solve_m(r4, ctx);
    BigReal a = elliptic_alpha(r4, ctx);
    BigReal beta = beta_from_alpha3r(alpha_from_theta(3 * r4, ctx));
    return (1 + m - 6 / sqrt_rational(r, ctx) * a) / (sqrt(1 - m + m * m) * (1 - 2 * beta));
}

/// Parameter bundle for one series instance.
struct SeriesParams {
    Rational r;
    BigReal J;               // |J| < 1
    BigReal T;
    BigReal lhs;             // 3 / (pi sqrt(r) sqrt(1-J)), pi by the AGM
    BigReal digits_per_term; // -log10 |J|
};

inline BigReal digits_per_term(const BigReal& J)
{
    if (J == 0) throw std::domain_error("digits_per_term: J = 0");
    if (abs(J) >= 1) throw std::domain_error("digits_per_term: |J| >= 1");
    return -log10(abs(J));
}

inline SeriesParams make_series_params(const Rational& r, const PrecisionContext& ctx)
{
    ScopedPrecision scope(ctx.working());
    SeriesParams p;
    p.r = r;
    p.J = series_J(r, ctx);
    p.T = series_T(r, ctx);
    p.lhs = 3 / (pi_agm(ctx) * sqrt_rational(r, ctx) * sqrt(1 - p.J));
    p.digits_per_term = digits_per_term(p.J);
    return p;
}

/// sum_{n=0}^{N-1} [(1/6)_n (5/6)_n (1/2)_n / (1)_n^3] J^n (6n + 1 - T).
/// The Pochhammer quotient advances by the exact rational factor
/// (6n+1)(6n+5)(2n+1) / (72 (n+1)^3).
inline BigReal ramanujan_sum(const SeriesParams& p, long n_terms, const PrecisionContext& ctx)
{
    if (abs(p.J) >= 1) throw std::domain_error("ramanujan_sum: |J| >= 1 diverges");
    if (n_terms < 1) throw std::domain_error("ramanujan_sum: need at least one term");
    ScopedPrecision scope(ctx.working());
    BigReal J = at_working(p.J, ctx);
    BigReal T = at_working(p.T, ctx);
    BigReal term(1), sum(0);
    for (long n = 0; n < n_terms; ++n) {
        sum += term * (6 * n + 1 - T);
        term *= J * ((6 * n + 1) * (6 * n + 5)) * (2 * n + 1);
        term /= 72 * BigReal(n + 1) * (n + 1) * (n + 1);
    }
    return sum;
}

/// pi to target_digits by inverting the series: pi = 3/(sqrt(r) sqrt(1-J) S),
/// with N = ceil(target/digits_per_term) + 2 terms.
inline BigReal compute_pi(const Rational& r, int target_digits, const PrecisionContext& ctx)
{
    if (ctx.digits() < target_digits)
        throw std::domain_error("compute_pi: context digits below target");
    ScopedPrecision scope(ctx.working());
    SeriesParams p;
    p.r = r;
    p.J = series_J(r, ctx);
    p.T = series_T(r, ctx);
    p.digits_per_term = digits_per_term(p.J);
    long N = static_cast<long>(std::ceil(target_digits / static_cast<double>(p.digits_per_term))) + 2;
    BigReal S = ramanujan_sum(p, N, ctx);
    return 3 / (sqrt_rational(r, ctx) * sqrt(1 - p.J) * S);
}

/// Term count compute_pi would use for this r and target.
inline long pi_terms_needed(const Rational& r, int target_digits, const PrecisionContext& ctx)
{
    BigReal dpt = digits_per_term(series_J(r, ctx));
    return static_cast<long>(std::ceil(target_digits / static_cast<double>(dpt))) + 2;
}

} // namespace ramapi
