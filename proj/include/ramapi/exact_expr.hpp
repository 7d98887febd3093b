// Exact nested-radical expression trees with a small prefix-notation
// grammar, plus polynomial-root forms. See data/corpus.txt for the grammar.
#pragma once

#include "ramapi/precision.hpp"

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ramapi {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Expression tree over integers and rationals under +, -, *, / and rational
/// powers. `reference` nodes are loader placeholders which must be spliced
/// away (corpus does this) before evaluation.
class ExactExpr {
  public:
    enum class Kind { integer, rational, sum, difference, product, quotient, power, reference };

    ExactExpr() : kind_(Kind::integer), value_(0) {}

    static ExactExpr integer(long long v)
    {
        ExactExpr e;
        e.kind_ = Kind::integer;
        e.value_ = Rational(v);
        return e;
    }
    static ExactExpr rational(const Rational& v)
    {
        ExactExpr e;
        e.kind_ = v.denominator() == 1 ? Kind::integer : Kind::rational;
        e.value_ = v;
        return e;
    }
    static ExactExpr node(Kind k, std::vector<ExactExpr> children)
    {
        ExactExpr e;
        e.kind_ = k;
        e.children_ = std::move(children);
        switch (k) {
            case Kind::sum:
            case Kind::product:
                if (e.children_.size() < 2) throw ParseError("n-ary node needs >= 2 children");
                break;
            case Kind::difference:
            case Kind::quotient:
                if (e.children_.size() != 2) throw ParseError("binary node needs 2 children");
                break;
            default:
                throw ParseError("node(): not an operator kind");
        }
        return e;
    }
    static ExactExpr power(ExactExpr base, const Rational& exponent)
    {
        ExactExpr e;
        e.kind_ = Kind::power;
        e.children_.push_back(std::move(base));
        e.value_ = exponent;
        return e;
    }
    static ExactExpr reference(std::string id)
    {
        ExactExpr e;
        e.kind_ = Kind::reference;
        e.ref_ = std::move(id);
        return e;
    }

    Kind kind() const { return kind_; }
    const Rational& value() const { return value_; }     // leaf value or power exponent
    const std::string& ref() const { return ref_; }
    const std::vector<ExactExpr>& children() const { return children_; }

    bool operator==(const ExactExpr& o) const
    {
        return kind_ == o.kind_ && value_ == o.value_ && ref_ == o.ref_ && children_ == o.children_;
    }

    /// Replace every reference node using the resolver (splice).
    template <typename Resolver>
    void resolve_references(Resolver&& lookup)
    {
        if (kind_ == Kind::reference) {
            *this = lookup(ref_);
            resolve_references(lookup); // spliced tree may itself hold references
            return;
        }
        for (auto& c : children_) c.resolve_references(lookup);
    }

    bool has_references() const
    {
        if (kind_ == Kind::reference) return true;
        for (const auto& c : children_)
            if (c.has_references()) return true;
        return false;
    }

    static ExactExpr parse(std::string_view text);
    std::string print() const;

  private:
    Kind kind_;
    Rational value_{0};
    std::string ref_;
    std::vector<ExactExpr> children_;
};

namespace detail {

inline std::vector<std::string> tokenize_expr(std::string_view text)
{
    std::vector<std::string> out;
    std::string cur;
    for (char ch : text) {
        if (ch == '(' || ch == ')') {
            if (!cur.empty()) {
                out.push_back(cur);
                cur.clear();
            }
            out.push_back(std::string(1, ch));
        } else if (ch == ' ' || ch == '\t' || ch == '\n' || ch == '\r') {
            if (!cur.empty()) {
                out.push_back(cur);
                cur.clear();
            }
        } else {
            cur.push_back(ch);
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

inline ExactExpr parse_tokens(const std::vector<std::string>& toks, size_t& pos)
{
    if (pos >= toks.size()) throw ParseError("unexpected end of expression");
    const std::string& t = toks[pos];
    if (t == "(") {
        ++pos;
        if (pos >= toks.size()) throw ParseError("dangling '('");
        std::string op = toks[pos++];
        std::vector<ExactExpr> args;
        while (pos < toks.size() && toks[pos] != ")") args.push_back(parse_tokens(toks, pos));
        if (pos >= toks.size()) throw ParseError("missing ')'");
        ++pos;
        if (op == "+") return ExactExpr::node(ExactExpr::Kind::sum, std::move(args));
        if (op == "-") return ExactExpr::node(ExactExpr::Kind::difference, std::move(args));
        if (op == "*") return ExactExpr::node(ExactExpr::Kind::product, std::move(args));
        if (op == "/") return ExactExpr::node(ExactExpr::Kind::quotient, std::move(args));
        if (op == "^") {
            if (args.size() != 2) throw ParseError("'^' needs base and exponent");
            if (args[1].kind() != ExactExpr::Kind::integer && args[1].kind() != ExactExpr::Kind::rational)
                throw ParseError("'^' exponent must be a rational literal");
            return ExactExpr::power(std::move(args[0]), args[1].value());
        }
        throw ParseError("unknown operator '" + op + "'");
    }
    if (t == ")") throw ParseError("unexpected ')'");
    ++pos;
    if (t[0] == '@') {
        if (t.size() < 2) throw ParseError("empty reference");
        return ExactExpr::reference(t.substr(1));
    }
    try {
        return ExactExpr::rational(parse_rational(t));
    } catch (const std::exception&) {
        throw ParseError("bad literal '" + t + "'");
    }
}

} // namespace detail

inline ExactExpr ExactExpr::parse(std::string_view text)
{
    auto toks = detail::tokenize_expr(text);
    size_t pos = 0;
    ExactExpr e = detail::parse_tokens(toks, pos);
    if (pos != toks.size()) throw ParseError("trailing tokens after expression");
    return e;
}

inline std::string ExactExpr::print() const
{
    switch (kind_) {
        case Kind::integer:
        case Kind::rational:
            return rational_to_string(value_);
        case Kind::reference:
            return "@" + ref_;
        case Kind::power:
            return "(^ " + children_[0].print() + " " + rational_to_string(value_) + ")";
        default: {
            const char* op = kind_ == Kind::sum        ? "+"
                             : kind_ == Kind::difference ? "-"
                             : kind_ == Kind::product    ? "*"
                                                         : "/";
            std::string s = "(";
            s += op;
            for (const auto& c : children_) {
                s += ' ';
                s += c.print();
            }
            s += ')';
            return s;
        }
    }
}

namespace detail {

/// x^(p/q) with integer p and odd-q support for negative bases.
inline BigReal rational_pow(const BigReal& x, const Rational& e)
{
    long long p = e.numerator(), q = e.denominator();
    if (x == 0) {
        if (p < 0) throw std::domain_error("rational_pow: 0 to a negative power");
        return p == 0 ? BigReal(1) : BigReal(0);
    }
    BigReal root;
    if (q == 1) {
        root = x;
    } else if (x > 0 || q % 2 == 1) {
        root.precision(x.precision());
        mpfr_rootn_ui(root.backend().data(), x.backend().data(), static_cast<unsigned long>(q),
                      MPFR_RNDN);
    } else {
        throw std::domain_error("rational_pow: even root of a negative base");
    }
    if (p == 1) return root;
    return pow(root, static_cast<long>(p));
}

inline BigReal eval_expr_raw(const ExactExpr& e, const PrecisionContext& ctx)
{
    ScopedPrecision scope(ctx.working());
    using K = ExactExpr::Kind;
    switch (e.kind()) {
        case K::integer:
        case K::rational:
            return to_big(e.value());
        case K::reference:
            throw std::domain_error("eval_exact: unresolved reference @" + e.ref());
        case K::sum: {
            BigReal s(0);
            for (const auto& c : e.children()) s += eval_expr_raw(c, ctx);
            return s;
        }
        case K::difference:
            return eval_expr_raw(e.children()[0], ctx) - eval_expr_raw(e.children()[1], ctx);
        case K::product: {
            BigReal p(1);
            for (const auto& c : e.children()) p *= eval_expr_raw(c, ctx);
            return p;
        }
        case K::quotient: {
            BigReal den = eval_expr_raw(e.children()[1], ctx);
            if (den == 0) throw std::domain_error("eval_exact: division by zero");
            return eval_expr_raw(e.children()[0], ctx) / den;
        }
        case K::power:
            return rational_pow(eval_expr_raw(e.children()[0], ctx), e.value());
    }
    throw std::logic_error("eval_expr_raw: unreachable");
}

} // namespace detail

/// Evaluate at working precision; result certified to ctx.digits() by
/// re-evaluation at doubled precision (the nested surds here can cancel
/// dozens of digits, so the two passes escalate together until they agree).
inline BigReal eval_exact(const ExactExpr& e, const PrecisionContext& ctx)
{
    int w = ctx.working();
    BigReal prev = detail::eval_expr_raw(e, ctx.with_digits(w));
    for (int round = 0; round < 8; ++round) {
        w *= 2;
        BigReal cur = detail::eval_expr_raw(e, ctx.with_digits(w));
        if (abs(cur - prev) <= tolerance(ctx, 0) * (abs(cur) + 1) / 2
            && abs(cur - prev) <= abs(cur) * tolerance(ctx, 0) + working_eps(ctx.with_digits(w / 2)))
            return at_working(cur, ctx);
        prev = cur;
    }
    throw std::runtime_error("eval_exact: value did not certify under precision doubling");
}

/// A polynomial c0 + c1 x + ... + cn x^n whose selected root is pinned by an
/// independently computed hint.
struct PolyRootForm {
    int printed_index = 0;              // root label carried by the source table
    std::vector<long long> coeffs;      // ascending degree
};

namespace detail {

inline BigReal poly_eval(const std::vector<long long>& c, const BigReal& x)
{
    BigReal v(0);
    for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * x + *it;
    return v;
}

inline BigReal poly_deriv_eval(const std::vector<long long>& c, const BigReal& x)
{
    BigReal v(0);
    for (size_t i = c.size(); i-- > 1;) v = v * x + BigReal(c[i]) * static_cast<long>(i);
    return v;
}

} // namespace detail

/// Newton-refine the real root nearest the hint to full working precision.
/// Fails if the converged root strays more than 1e-6 from the hint.
inline BigReal select_poly_root(const PolyRootForm& form, const BigReal& hint,
                                const PrecisionContext& ctx)
{
    ScopedPrecision scope(ctx.working());
    if (form.coeffs.size() < 2) throw std::domain_error("select_poly_root: degree must be >= 1");
    BigReal x = at_working(hint, ctx);
    const BigReal target = pow(BigReal(10), -(ctx.working() - 2));
    for (int it = 0; it < 200; ++it) {
        BigReal d = detail::poly_deriv_eval(form.coeffs, x);
        if (d == 0) throw std::runtime_error("select_poly_root: zero derivative");
        BigReal step = detail::poly_eval(form.coeffs, x) / d;
        x -= step;
        if (abs(step) <= abs(x) * target) break;
    }
    if (abs(x - hint) > BigReal(1) / 1000000)
        throw std::runtime_error("select_poly_root: no real root within 1e-6 of the hint");
    return x;
}

/// Ascending index (1-based) of `root` among the polynomial's real roots in
/// (0,1), located by sign changes on a fine grid. Reporting aid only.
inline int poly_root_index(const PolyRootForm& form, const BigReal& root,
                           const PrecisionContext& ctx)
{
    ScopedPrecision scope(ctx.working());
    const int grid = 4096;
    int index = 0, count = 0;
    BigReal lo = working_eps(ctx);
    BigReal prev = detail::poly_eval(form.coeffs, lo);
    for (int i = 1; i <= grid; ++i) {
        BigReal x = BigReal(i) / grid;
        BigReal cur = detail::poly_eval(form.coeffs, x);
        if ((prev < 0 && cur > 0) || (prev > 0 && cur < 0)) {
            ++count;
            if (root > BigReal(i - 1) / grid - lo && root <= x + lo) index = count;
        }
        prev = cur;
    }
    return index;
}

} // namespace ramapi
