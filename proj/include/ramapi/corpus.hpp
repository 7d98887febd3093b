// Closed-form corpus loader and verification engine. Compares each record's
// exact expression against an independently computed oracle, escalating
// precision until both sides certify, and quarantines confirmed errata.
#pragma once

#include "ramapi/exact_expr.hpp"
#include "ramapi/moduli.hpp"
#include "ramapi/piseries.hpp"
#include "ramapi/precision.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

namespace ramapi {

struct CorpusEntry {
    std::string id;
    std::variant<ExactExpr, PolyRootForm> expr;
    std::string oracle;
    std::optional<std::string> erratum; // expected mismatch when set
    double erratum_min = 1e-3;          // mismatch confirmation threshold
    std::string note;
};

enum class VerifyStatus { pass, fail, known_erratum_confirmed };

inline const char* to_string(VerifyStatus s)
{
    switch (s) {
        case VerifyStatus::pass: return "pass";
        case VerifyStatus::fail: return "fail";
        case VerifyStatus::known_erratum_confirmed: return "known-erratum-confirmed";
    }
    return "?";
}

struct VerificationReport {
    std::string id;
    BigReal lhs;           // corpus expression value
    BigReal rhs;           // oracle value
    BigReal abs_residual;
    BigReal rel_residual;
    int precision = 0;     // requested digits certified
    VerifyStatus status = VerifyStatus::fail;
    std::string erratum_note;
    int poly_root_index = 0; // ascending (0,1)-root index for polyroot entries
};

namespace detail {

inline std::string trim(const std::string& s)
{
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

/// Simple '*' glob match.
inline bool glob_match(const std::string& pattern, const std::string& text)
{
    size_t p = 0, t = 0, star = std::string::npos, mark = 0;
    while (t < text.size()) {
        if (p < pattern.size() && (pattern[p] == text[t])) {
            ++p;
            ++t;
        } else if (p < pattern.size() && pattern[p] == '*') {
            star = p++;
            mark = t;
        } else if (star != std::string::npos) {
            p = star + 1;
            t = ++mark;
        } else {
            return false;
        }
    }
    while (p < pattern.size() && pattern[p] == '*') ++p;
    return p == pattern.size();
}

inline std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(item);
    return out;
}

} // namespace detail

/// Oracle dispatch: "name:arg[:arg...]" with rational arguments.
inline BigReal corpus_oracle_value(const std::string& name, const PrecisionContext& ctx)
{
    auto parts = detail::split(name, ':');
    const std::string& kind = parts.at(0);
    auto rat = [&](size_t i) { return parse_rational(parts.at(i)); };

    if (kind == "theta") return alpha_from_theta(rat(1), ctx);
    if (kind == "asolve") return alpha_solve(rat(1), ctx);
    if (kind == "m") return solve_m(rat(1), ctx);
    if (kind == "k") return sqrt(solve_m(rat(1), ctx));
    if (kind == "dupm" || kind == "dupk") {
        ScopedPrecision scope(ctx.working());
        BigReal m = solve_m(rat(1), ctx);
        long n = boost::rational_cast<long>(rat(2));
        for (long i = 0; i < n; ++i) m = duplicate_k(m);
        return kind == "dupk" ? BigReal(sqrt(m)) : m;
    }
    if (kind == "beta") return beta_from_alpha3r(alpha_from_theta(3 * rat(1), ctx));
    if (kind == "bsolve") return beta_solve(rat(1), ctx);
    if (kind == "a") return elliptic_alpha(rat(1), ctx);
    if (kind == "J") return series_J(rat(1), ctx);
    if (kind == "T") return series_T(rat(1), ctx);
    if (kind == "hyp") return hyperbolic_sum(boost::rational_cast<int>(rat(1)), rat(2), ctx);
    if (kind == "pisum" || kind == "pisumJT") {
        ScopedPrecision scope(ctx.working());
        SeriesParams p;
        Rational c;
        if (kind == "pisum") {
            p.r = rat(1);
            p.J = series_J(p.r, ctx);
            p.T = series_T(p.r, ctx);
            c = rat(2);
        } else {
            p.J = to_big(rat(1));
            p.T = to_big(rat(2));
            c = rat(3);
        }
        long N = static_cast<long>(ctx.working() / static_cast<double>(digits_per_term(p.J))) + 5;
        return pi_agm(ctx) * to_big(c) * ramanujan_sum(p, N, ctx);
    }
    throw std::domain_error("corpus_oracle_value: unknown oracle '" + name + "'");
}

class Corpus {
  public:
    static Corpus load(const std::string& path)
    {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("corpus: cannot open " + path);
        Corpus c;
        std::string line;
        while (std::getline(in, line)) {
            line = detail::trim(line);
            if (line.empty() || line[0] == '#') continue;
            auto fields = detail::split(line, '|');
            if (fields.size() < 3) throw ParseError("corpus: record needs id | expr | oracle");
            CorpusEntry e;
            e.id = detail::trim(fields[0]);
            std::string expr_text = detail::trim(fields[1]);
            e.oracle = detail::trim(fields[2]);
            if (fields.size() > 3) {
                for (auto& opt : detail::split(detail::trim(fields[3]), ';')) {
                    opt = detail::trim(opt);
                    if (opt.rfind("erratum=", 0) == 0)
                        e.erratum = opt.substr(8);
                    else if (opt.rfind("erratum_min=", 0) == 0)
                        e.erratum_min = std::stod(opt.substr(12));
                    else if (opt.rfind("note=", 0) == 0)
                        e.note = opt.substr(5);
                }
            }
            if (expr_text.rfind("(polyroot", 0) == 0) {
                e.expr = parse_polyroot(expr_text);
            } else {
                e.expr = ExactExpr::parse(expr_text);
            }
            if (c.index_.count(e.id)) throw ParseError("corpus: duplicate id " + e.id);
            c.index_[e.id] = c.entries_.size();
            c.entries_.push_back(std::move(e));
        }
        c.splice_references();
        return c;
    }

    /// Resolve the corpus file: explicit argument, RAMAPI_CORPUS, then the
    /// build-time default.
    static std::string default_path()
    {
        if (const char* env = std::getenv("RAMAPI_CORPUS")) return env;
#ifdef RAMAPI_CORPUS_DEFAULT
        return RAMAPI_CORPUS_DEFAULT;
#else
        return "data/corpus.txt";
#endif
    }

    const CorpusEntry* find(const std::string& id) const
    {
        auto it = index_.find(id);
        return it == index_.end() ? nullptr : &entries_[it->second];
    }

    std::vector<std::string> ids() const
    {
        std::vector<std::string> out;
        for (const auto& e : entries_)
            if (e.oracle != "none") out.push_back(e.id);
        return out;
    }

    size_t size() const { return entries_.size(); }

    VerificationReport verify_entry(const std::string& id, const PrecisionContext& ctx) const
    {
        const CorpusEntry* e = find(id);
        if (!e) throw std::domain_error("verify_entry: unknown id " + id);
        if (e->oracle == "none") throw std::domain_error("verify_entry: auxiliary entry " + id);
        return verify(*e, ctx);
    }

    /// Run every verifiable entry whose id matches the glob, in file order.
    std::vector<VerificationReport> verify_all(const PrecisionContext& ctx,
                                               const std::string& filter = "*") const
    {
        std::vector<VerificationReport> out;
        for (const auto& e : entries_) {
            if (e.oracle == "none") continue;
            if (!detail::glob_match(filter, e.id)) continue;
            out.push_back(verify(e, ctx));
        }
        std::sort(out.begin(), out.end(),
                  [](const VerificationReport& a, const VerificationReport& b) { return a.id < b.id; });
        return out;
    }

  private:
    static PolyRootForm parse_polyroot(const std::string& text)
    {
        auto toks = detail::tokenize_expr(text);
        if (toks.size() < 5 || toks.front() != "(" || toks[1] != "polyroot" || toks.back() != ")")
            throw ParseError("bad polyroot form");
        PolyRootForm f;
        f.printed_index = std::stoi(toks[2]);
        for (size_t i = 3; i + 1 < toks.size(); ++i) f.coeffs.push_back(std::stoll(toks[i]));
        if (f.coeffs.size() < 2) throw ParseError("polyroot needs degree >= 1");
        return f;
    }

    void splice_references()
    {
        for (auto& e : entries_) {
            if (!std::holds_alternative<ExactExpr>(e.expr)) continue;
            auto& expr = std::get<ExactExpr>(e.expr);
            int depth = 0;
            while (expr.has_references()) {
                if (++depth > 16) throw ParseError("corpus: reference cycle at " + e.id);
                expr.resolve_references([&](const std::string& id) -> ExactExpr {
                    const CorpusEntry* t = find(id);
                    if (!t) throw ParseError("corpus: unresolved reference @" + id);
                    if (!std::holds_alternative<ExactExpr>(t->expr))
                        throw ParseError("corpus: reference to non-expression @" + id);
                    return std::get<ExactExpr>(t->expr);
                });
            }
        }
    }

    /// Both sides are evaluated at working precision W and re-evaluated at 2W
    /// until each is stable to the requested digits; heavy surd cancellation
    /// (or a tiny target value) simply drives W up until it is absorbed.
    VerificationReport verify(const CorpusEntry& e, const PrecisionContext& ctx) const
    {
        VerificationReport rep;
        rep.id = e.id;
        rep.precision = ctx.digits();
        const BigReal stable_tol = tolerance(ctx, 0);

        int w = ctx.working();
        BigReal lhs_prev, rhs_prev;
        bool have_prev = false;
        for (int round = 0;; ++round) {
            PrecisionContext cw = ctx.with_digits(w);
            BigReal rhs = corpus_oracle_value(e.oracle, cw);
            BigReal lhs;
            if (std::holds_alternative<ExactExpr>(e.expr)) {
                lhs = detail::eval_expr_raw(std::get<ExactExpr>(e.expr), cw);
            } else {
                const auto& form = std::get<PolyRootForm>(e.expr);
                lhs = select_poly_root(form, rhs, cw);
                rep.poly_root_index = poly_root_index(form, lhs, cw);
            }
            if (have_prev) {
                BigReal scale_l = std::max(abs(lhs), working_eps(cw));
                BigReal scale_r = std::max(abs(rhs), working_eps(cw));
                if (abs(lhs - lhs_prev) <= scale_l * stable_tol
                    && abs(rhs - rhs_prev) <= scale_r * stable_tol) {
                    rep.lhs = lhs;
                    rep.rhs = rhs;
                    break;
                }
            }
            if (round >= 7) throw std::runtime_error("verify: " + e.id + " did not certify");
            lhs_prev = lhs;
            rhs_prev = rhs;
            have_prev = true;
            w *= 2;
        }

        rep.abs_residual = abs(rep.lhs - rep.rhs);
        BigReal scale = std::max(abs(rep.lhs), abs(rep.rhs));
        rep.rel_residual = scale > 0 ? BigReal(rep.abs_residual / scale) : rep.abs_residual;

        if (e.erratum) {
            rep.erratum_note = *e.erratum;
            rep.status = rep.rel_residual > e.erratum_min ? VerifyStatus::known_erratum_confirmed
                                                          : VerifyStatus::fail;
        } else {
            rep.status = rep.rel_residual < tolerance(ctx, 10) ? VerifyStatus::pass
                                                               : VerifyStatus::fail;
        }
        return rep;
    }

    std::vector<CorpusEntry> entries_;
    std::map<std::string, size_t> index_;
};

} // namespace ramapi
