// Command-line surface: compute pi, query modulus records, emit series
// parameters, run the corpus verification suite, print the alpha table.
//
// Exit codes: 0 success, 1 usage error, 2 numeric/convergence failure.
// All numbers are emitted as decimal strings; nothing round-trips through
// binary doubles.

#include <ramapi/ramapi.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <iostream>
#include <string>

using nlohmann::json;
using namespace ramapi;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitNumeric = 2;

int default_digits()
{
    if (const char* env = std::getenv("RAMAPI_PRECISION")) {
        try {
            int d = std::stoi(env);
            if (d >= 15 && d <= 1000000) return d;
        } catch (const std::exception&) {
        }
        std::cerr << "warning: ignoring invalid RAMAPI_PRECISION\n";
    }
    return 60;
}

std::string dec(const BigReal& x, int digits)
{
    return x.str(digits, std::ios_base::scientific);
}

json report_json(const VerificationReport& rep, int digits)
{
    json j{{"id", rep.id},
           {"lhs", dec(rep.lhs, digits)},
           {"rhs", dec(rep.rhs, digits)},
           {"abs_residual", dec(rep.abs_residual, 6)},
           {"rel_residual", dec(rep.rel_residual, 6)},
           {"precision", rep.precision},
           {"status", to_string(rep.status)}};
    if (!rep.erratum_note.empty()) j["erratum"] = rep.erratum_note;
    if (rep.poly_root_index > 0) j["poly_root_index"] = rep.poly_root_index;
    return j;
}

int cmd_pi(const Rational& r, int digits, bool json_out)
{
    if (r < 1) {
        std::cerr << "error: pi series require r >= 1\n";
        return kExitNumeric;
    }
    try {
        PrecisionContext ctx(digits + 15 + 8); // + ceil(log10 N) headroom
        BigReal value = compute_pi(r, digits, ctx);
        long terms = pi_terms_needed(r, digits, ctx);
        std::cerr << "terms: " << terms << "\n";

        PrecisionContext check_ctx(digits + 10);
        BigReal reference = pi_agm(check_ctx);
        bool ok = abs(value - reference) < pow(BigReal(10), -(digits - 2));
        std::string text = value.str(digits, std::ios_base::fixed);
        if (json_out) {
            json j{{"r", rational_to_string(r)},
                   {"digits", digits},
                   {"terms", terms},
                   {"pi", text},
                   {"self_check", ok ? "pass" : "fail"}};
            std::cout << j.dump() << "\n";
        } else {
            std::cout << text << "\n";
        }
        if (!ok) {
            std::cerr << "error: self-check against AGM pi failed\n";
            return kExitNumeric;
        }
        return 0;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitNumeric;
    }
}

int cmd_modulus(const Rational& r, int digits, bool json_out)
{
    try {
        PrecisionContext ctx(digits);
        ModulusRecord rec = compute_record(r, ctx);
        BigReal ratio_resid = abs(ellip_K(1 - rec.m, ctx) / ellip_K(rec.m, ctx) - sqrt_rational(r, ctx));
        json j{{"r", rational_to_string(r)},
               {"precision", digits},
               {"m", dec(rec.m, digits)},
               {"k", dec(rec.k, digits)},
               {"alpha", dec(rec.alpha, digits)},
               {"beta", dec(rec.beta, digits)},
               {"a_elliptic", dec(rec.a_elliptic, digits)},
               {"k_ratio_residual", dec(ratio_resid, 6)}};
        if (json_out) {
            std::cout << j.dump() << "\n";
        } else {
            for (auto& [key, val] : j.items())
                std::cout << key << " = " << (val.is_string() ? val.get<std::string>() : val.dump())
                          << "\n";
        }
        return 0;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitNumeric;
    }
}

int cmd_params(const Rational& r, int digits, bool json_out)
{
    try {
        PrecisionContext ctx(digits);
        SeriesParams p = make_series_params(r, ctx);
        json j{{"r", rational_to_string(r)},
               {"precision", digits},
               {"J", dec(p.J, digits)},
               {"T", dec(p.T, digits)},
               {"lhs", dec(p.lhs, digits)},
               {"digits_per_term", dec(p.digits_per_term, 10)},
               {"j_invariant", dec(1728 / p.J, digits)}};
        if (json_out) {
            std::cout << j.dump() << "\n";
        } else {
            for (auto& [key, val] : j.items())
                std::cout << key << " = " << (val.is_string() ? val.get<std::string>() : val.dump())
                          << "\n";
        }
        return 0;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitNumeric;
    }
}

int cmd_verify(const std::string& corpus_path, const std::string& filter, int digits, bool json_out)
{
    try {
        Corpus corpus = Corpus::load(corpus_path);
        PrecisionContext ctx(digits);
        auto reports = corpus.verify_all(ctx, filter);
        long pass = 0, fail = 0, errata = 0;
        for (const auto& rep : reports) {
            switch (rep.status) {
                case VerifyStatus::pass: ++pass; break;
                case VerifyStatus::fail: ++fail; break;
                case VerifyStatus::known_erratum_confirmed: ++errata; break;
            }
            if (json_out)
                std::cout << report_json(rep, digits).dump() << "\n";
            else
                std::cout << "[" << to_string(rep.status) << "] " << rep.id
                          << " rel_residual=" << dec(rep.rel_residual, 4) << "\n";
        }
        std::cerr << "verified " << reports.size() << " entries: " << pass << " pass, " << errata
                  << " known errata, " << fail << " fail\n";
        return fail == 0 ? 0 : kExitNumeric;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitNumeric;
    }
}

int cmd_table(const std::string& corpus_path, int digits, bool json_out)
{
    try {
        Corpus corpus = Corpus::load(corpus_path);
        PrecisionContext ctx(digits);
        for (const auto& id : corpus.ids()) {
            if (id.rfind("alpha_", 0) != 0 || id.find("printed") != std::string::npos) continue;
            VerificationReport rep = corpus.verify_entry(id, ctx);
            if (json_out)
                std::cout << report_json(rep, digits).dump() << "\n";
            else
                std::cout << id << " = " << dec(rep.lhs, digits) << "  [" << to_string(rep.status)
                          << "]\n";
        }
        return 0;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitNumeric;
    }
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Ramanujan-type 1/pi series and singular-moduli toolkit"};
    app.require_subcommand(1);

    int digits = default_digits();
    std::string output = "text";
    std::string corpus_path = Corpus::default_path();
    app.add_option("--digits", digits, "working decimal precision")->check(CLI::Range(15, 1000000));
    app.add_option("--output", output, "text or json")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--corpus", corpus_path, "path to the closed-form corpus file");

    std::string r_text = "2";
    auto* pi_cmd = app.add_subcommand("pi", "compute pi from the series at r");
    pi_cmd->add_option("--r", r_text, "series level r (rational)")->required();

    std::string rm_text;
    auto* mod_cmd = app.add_subcommand("modulus", "singular moduli bundle at r");
    mod_cmd->add_option("--r", rm_text, "level r (rational)")->required();

    std::string rp_text;
    auto* par_cmd = app.add_subcommand("params", "series parameters J_r, T_r at r");
    par_cmd->add_option("--r", rp_text, "level r (rational)")->required();

    std::string filter = "*";
    auto* ver_cmd = app.add_subcommand("verify", "verify corpus closed forms");
    ver_cmd->add_option("--filter", filter, "id glob, e.g. 'alpha_*'");

    auto* tab_cmd = app.add_subcommand("table", "print the alpha_r table");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    bool json_out = output == "json";
    try {
        if (pi_cmd->parsed()) return cmd_pi(parse_rational(r_text), digits, json_out);
        if (mod_cmd->parsed()) return cmd_modulus(parse_rational(rm_text), digits, json_out);
        if (par_cmd->parsed()) return cmd_params(parse_rational(rp_text), digits, json_out);
        if (ver_cmd->parsed()) return cmd_verify(corpus_path, filter, digits, json_out);
        if (tab_cmd->parsed()) return cmd_table(corpus_path, digits, json_out);
    } catch (const std::invalid_argument& ex) {
        std::cerr << "usage error: " << ex.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
