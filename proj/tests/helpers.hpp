// Shared test utilities and the independent oracles the suites check against.
// Everything here stays out of the library on purpose: oracle code must not
// share a path with the implementation it certifies.
#pragma once

#include <ramapi/precision.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <functional>
#include <random>

namespace testutil {

using ramapi::BigReal;
using ramapi::PrecisionContext;
using ramapi::Rational;
using ramapi::ScopedPrecision;

inline void require_close(const BigReal& a, const BigReal& b, const BigReal& tol)
{
    BigReal d = abs(a - b);
    INFO("a   = " << a.str(30, std::ios_base::scientific));
    INFO("b   = " << b.str(30, std::ios_base::scientific));
    INFO("|d| = " << d.str(8, std::ios_base::scientific) << ", tol = "
                  << tol.str(8, std::ios_base::scientific));
    REQUIRE(d <= tol);
}

inline BigReal tol10(int exponent)
{
    return pow(BigReal(10), exponent);
}

/// Self-certifying tanh-sinh quadrature of f over (a,b): levels are refined
/// until two consecutive levels agree to the requested tolerance.
inline BigReal tanh_sinh_integrate(const std::function<BigReal(const BigReal&)>& f,
                                   const BigReal& a, const BigReal& b,
                                   const PrecisionContext& ctx)
{
    ScopedPrecision scope(ctx.working() + 10);
    BigReal half = (b - a) / 2, mid = (a + b) / 2;
    BigReal pi_half = ramapi::pi_value(ctx) / 2;
    const BigReal eps = pow(BigReal(10), -(ctx.working()));
    BigReal prev(0);
    for (int level = 4; level <= 11; ++level) {
        BigReal h = pow(BigReal(2), -level);
        BigReal sum(0);
        // k = 0 term plus symmetric pairs until the weight underflows
        for (long k = 0;; ++k) {
            BigReal u = k * h;
            BigReal esh = pi_half * sinh(u);
            BigReal ch = cosh(esh);
            BigReal w = pi_half * cosh(u) / (ch * ch);
            BigReal x = tanh(esh);
            BigReal term = w * (k == 0 ? f(mid)
                                       : f(mid + half * x) + f(mid - half * x));
            sum += term;
            if (k > 8 / static_cast<double>(h) || (k > 0 && abs(term) < eps * abs(sum))) break;
        }
        BigReal integral = half * h * sum;
        if (level > 4 && abs(integral - prev) <= eps * abs(integral) * 1000) return integral;
        prev = integral;
    }
    return prev;
}

/// Brute-force 2F1 partial sum with per-term Pochhammer products, no
/// recurrence shared with the library path.
inline BigReal hyp2f1_brute(const Rational& a, const Rational& b, const Rational& c,
                            const BigReal& w, long terms, const PrecisionContext& ctx)
{
    ScopedPrecision scope(ctx.working() + 10);
    BigReal sum(0);
    for (long n = 0; n < terms; ++n) {
        BigReal poch_a(1), poch_b(1), poch_c(1), fact(1);
        for (long j = 0; j < n; ++j) {
            poch_a *= ramapi::to_big(a) + j;
            poch_b *= ramapi::to_big(b) + j;
            poch_c *= ramapi::to_big(c) + j;
            fact *= j + 1;
        }
        sum += poch_a * poch_b / (poch_c * fact) * pow(w, n);
    }
    return sum;
}

/// Deterministic stream of BigReal values in (lo, hi).
class RandomReals {
  public:
    explicit RandomReals(unsigned seed) : gen_(seed) {}
    BigReal next(const BigReal& lo, const BigReal& hi)
    {
        std::uniform_int_distribution<long> d(1, 999999999L);
        return lo + (hi - lo) * d(gen_) / 1000000000L;
    }

  private:
    std::mt19937 gen_;
};

} // namespace testutil
