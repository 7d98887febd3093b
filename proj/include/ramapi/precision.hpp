// Arbitrary-precision foundation: BigReal, precision contexts, small rationals.
#pragma once

#include <boost/multiprecision/mpfr.hpp>
#include <boost/rational.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ramapi {

/// Arbitrary-precision real. Values carry their own precision; operations
/// performed under a ScopedPrecision produce results at that precision.
using BigReal = boost::multiprecision::mpfr_float;

/// Exact rational with machine-word components. Holds every exact scalar in
/// the API surface: r-values, hypergeometric parameters, exponents.
using Rational = boost::rational<long long>;

/// Decimal working precision shared by a family of computations.
///
/// Every operation truncates series when a term drops below
/// 10^-(digits+guard) and refuses to sum more than max_terms terms.
class PrecisionContext {
  public:
    explicit PrecisionContext(int digits, int guard = 10, long max_terms = 1000000)
        : digits_(digits), guard_(guard), max_terms_(max_terms)
    {
        if (digits < 15) throw std::invalid_argument("PrecisionContext: digits must be >= 15");
        if (guard < 0) throw std::invalid_argument("PrecisionContext: guard must be >= 0");
        if (max_terms < 1) throw std::invalid_argument("PrecisionContext: max_terms must be >= 1");
    }

    int digits() const { return digits_; }
    int guard() const { return guard_; }
    long max_terms() const { return max_terms_; }

    /// digits + guard: the precision all internal arithmetic runs at.
    int working() const { return digits_ + guard_; }

    PrecisionContext with_digits(int d) const { return PrecisionContext(d, guard_, max_terms_); }

  private:
    int digits_;
    int guard_;
    long max_terms_;
};

/// RAII guard setting the ambient (thread-default) BigReal precision.
class ScopedPrecision {
  public:
    explicit ScopedPrecision(int digits10) : saved_(BigReal::default_precision())
    {
        BigReal::default_precision(static_cast<unsigned>(digits10));
    }
    ~ScopedPrecision() { BigReal::default_precision(saved_); }

    ScopedPrecision(const ScopedPrecision&) = delete;
    ScopedPrecision& operator=(const ScopedPrecision&) = delete;

  private:
    unsigned saved_;
};

/// Value-preserving re-precision of x to the context's working precision.
inline BigReal at_working(const BigReal& x, const PrecisionContext& ctx)
{
    BigReal y = x;
    y.precision(ctx.working());
    return y;
}

inline BigReal to_big(const Rational& r)
{
    return BigReal(r.numerator()) / BigReal(r.denominator());
}

inline BigReal sqrt_rational(const Rational& r, const PrecisionContext& ctx)
{
    ScopedPrecision scope(ctx.working());
    if (r < 0) throw std::domain_error("sqrt_rational: negative argument");
    return sqrt(to_big(r));
}

/// pi at working precision (MPFR's internally cached constant).
inline BigReal pi_value(const PrecisionContext& ctx)
{
    BigReal p;
    p.precision(ctx.working());
    mpfr_const_pi(p.backend().data(), MPFR_RNDN);
    return p;
}

/// Euler-Mascheroni constant at working precision.
inline BigReal euler_gamma(const PrecisionContext& ctx)
{
    BigReal g;
    g.precision(ctx.working());
    mpfr_const_euler(g.backend().data(), MPFR_RNDN);
    return g;
}

/// 10^-(digits+guard): the absolute series-truncation threshold.
inline BigReal working_eps(const PrecisionContext& ctx)
{
    ScopedPrecision scope(ctx.working());
    return pow(BigReal(10), -ctx.working());
}

/// 10^-(digits-slack), the usual residual tolerance shape.
inline BigReal tolerance(const PrecisionContext& ctx, int slack)
{
    ScopedPrecision scope(ctx.working());
    return pow(BigReal(10), -(ctx.digits() - slack));
}

/// Parse "17", "27/125" or "0.5" into an exact rational.
inline Rational parse_rational(const std::string& s)
{
    if (s.empty()) throw std::invalid_argument("parse_rational: empty string");
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        long long n = std::stoll(s.substr(0, slash));
        long long d = std::stoll(s.substr(slash + 1));
        if (d == 0) throw std::invalid_argument("parse_rational: zero denominator");
        return Rational(n, d);
    }
    auto dot = s.find('.');
    if (dot != std::string::npos) {
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        long long scale = 1;
        for (size_t i = dot + 1; i < s.size(); ++i) {
            if (scale > 1000000000000000000LL / 10) throw std::invalid_argument("parse_rational: too many decimals");
            scale *= 10;
        }
        return Rational(std::stoll(digits), scale);
    }
    return Rational(std::stoll(s));
}

inline std::string rational_to_string(const Rational& r)
{
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

/// Decimal string with the given number of significant digits.
inline std::string decimal_string(const BigReal& x, int digits)
{
    return x.str(digits, std::ios_base::scientific);
}

} // namespace ramapi
