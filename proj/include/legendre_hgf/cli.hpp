#pragma once

#include <legendre_hgf/characters.hpp>
#include <legendre_hgf/classical.hpp>
#include <legendre_hgf/congruence.hpp>
#include <legendre_hgf/curves.hpp>
#include <legendre_hgf/error.hpp>
#include <legendre_hgf/ffhyper.hpp>
#include <legendre_hgf/field.hpp>
#include <legendre_hgf/survey.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <gmp.h>

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

namespace legendre_hgf::cli {

/// Exit status contract for scripting.
enum exit_code : int { ok = 0, invariant_failure = 1, usage_error = 2 };

inline std::uint64_t max_prime_from_env() {
    const char* raw = std::getenv("LEGENDRE_HGF_MAX_P");
    if (raw == nullptr || *raw == '\0') return kDefaultMaxPrime;
    try {
        std::size_t used = 0;
        const unsigned long long v = std::stoull(raw, &used);
        if (used != std::string(raw).size()) throw std::invalid_argument(raw);
        return v;
    } catch (const std::logic_error&) {
        throw error(errc::precondition_violation, std::string("LEGENDRE_HGF_MAX_P is not an integer: ") + raw);
    }
}

inline std::string decimal(const Rational& r, int digits = 25) {
    mpf_class f(r, 256);
    std::vector<char> buf(static_cast<std::size_t>(digits) + 32);
    gmp_snprintf(buf.data(), buf.size(), "%.*Fg", digits, f.get_mpf_t());
    return buf.data();
}

inline std::string complex_string(ComplexValue v) {
    return format_real(v.real()) + (v.imag() < 0 ? " - " : " + ") + format_real(std::abs(v.imag())) + "i";
}

struct Options {
    // shared
    std::uint64_t p = 0;
    std::int64_t lambda = 2;
    bool json = false;
    std::optional<double> tolerance;
    // count
    std::string method = "both";
    // periods
    std::string lambda_rational;
    std::uint64_t terms = 20;
    // survey
    std::uint64_t pmax = 0;
    std::string out;
    std::string format = "csv";
    unsigned jobs = 0;
    bool corrupt_check = false;
    // congruence
    std::uint64_t m = 1;
    std::uint64_t d = 2;
    std::int64_t x = 1;
    bool all_x = false;
    // transform
    std::int64_t a_exp = 0;
    std::int64_t b_exp = 0;
    std::int64_t c_exp = 0;
};

inline int cmd_count(const Options& o, std::ostream& out) {
    const FieldHandle f = make_field(o.p, max_prime_from_env());
    const LegendreCurve curve = make_curve(f, o.lambda);
    const bool brute = o.method != "formula";
    const bool formula = o.method != "brute";

    std::optional<std::int64_t> brute_value;
    std::optional<FormulaCountResult> formula_value;
    if (brute) brute_value = brute_force_count(curve);
    if (formula) formula_value = formula_count_detailed(curve, o.tolerance);
    const bool agree = !(brute && formula) || *brute_value == formula_value->count;

    if (o.json) {
        nlohmann::json j{{"p", o.p}, {"lambda", curve.lambda.value}, {"method", o.method}};
        if (brute_value) j["brute_force_count"] = *brute_value;
        if (formula_value) {
            j["formula_count"] = formula_value->count;
            j["rounding_residual"] = format_real(formula_value->rounding_residual);
            j["imag_residual"] = format_real(formula_value->imag_residual);
        }
        if (brute && formula) j["difference"] = *brute_value - formula_value->count;
        j["agree"] = agree;
        out << j.dump(2) << '\n';
    } else {
        out << "curve: y^4 = x(x-1)(x-" << curve.lambda.value << ") over F_" << o.p << '\n';
        if (brute_value) out << "brute_force_count: " << *brute_value << '\n';
        if (formula_value) {
            out << "formula_count: " << formula_value->count << " (rounding residual "
                << format_real(formula_value->rounding_residual) << ")\n";
        }
        if (brute && formula) out << "difference: " << (*brute_value - formula_value->count) << '\n';
    }
    return agree ? ok : invariant_failure;
}

inline int cmd_periods(const Options& o, std::ostream& out, std::ostream& err) {
    const Rational lambda = parse_rational(o.lambda_rational);
    if (o.terms < 1) throw error(errc::precondition_violation, "--terms must be at least 1");
    if (abs(lambda) >= 1) err << "warning: |lambda| >= 1, partial sums need not approximate the periods\n";

    bool all_ok = true;
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 1; i <= 3; ++i) {
        const ClassicalParams params = period_params(i);
        const Rational value = classical_2f1_partial(params, lambda, o.terms - 1);
        const bool recurrence_ok = ode_recurrence_check(params, o.terms);
        all_ok = all_ok && recurrence_ok;
        const std::string label = "2F1(" + to_string(params.a) + ", " + to_string(params.b) + "; " +
                                  to_string(params.c) + " | " + to_string(lambda) + ")";
        if (o.json) {
            rows.push_back({{"period", "pi_" + std::to_string(i)},
                            {"a", to_string(params.a)},
                            {"b", to_string(params.b)},
                            {"c", to_string(params.c)},
                            {"terms", o.terms},
                            {"exact", to_string(value)},
                            {"decimal", decimal(value)},
                            {"recurrence", recurrence_ok ? "ok" : "failed"}});
        } else {
            out << "pi_" << i << " = " << label << " [" << o.terms << " terms]\n"
                << "    exact   = " << to_string(value) << '\n'
                << "    decimal = " << decimal(value) << '\n'
                << "    recurrence check: " << (recurrence_ok ? "ok" : "FAILED") << '\n';
        }
    }
    if (o.json) out << nlohmann::json{{"lambda", to_string(lambda)}, {"periods", rows}}.dump(2) << '\n';
    return all_ok ? ok : invariant_failure;
}

inline int cmd_survey(const Options& o, std::ostream& out, std::ostream& err) {
    if (o.pmax < 5) throw error(errc::precondition_violation, "--pmax must be at least 5");
    SurveyOptions so;
    so.pmax = o.pmax;
    so.jobs = o.jobs == 0 ? std::max(1U, std::thread::hardware_concurrency()) : o.jobs;
    so.tolerance = o.tolerance;
    so.max_prime = max_prime_from_env();
    so.corrupt_first_row = o.corrupt_check;
    const std::vector<SurveyRow> rows = run_survey(so);

    auto write = [&](std::ostream& sink) {
        if (o.format == "json") {
            sink << survey_json(rows).dump(2) << '\n';
        } else {
            write_survey_csv(sink, rows);
        }
    };
    if (o.out.empty() || o.out == "-") {
        write(out);
    } else {
        std::ofstream file(o.out, std::ios::binary);
        if (!file) throw error(errc::precondition_violation, "cannot open " + o.out + " for writing");
        write(file);
    }

    for (const auto& row : rows) {
        const auto violations = row_violations(row);
        if (!violations.empty()) {
            err << "invariant failure at p = " << row.p << ", lambda = " << row.lambda << ": " << violations.front()
                << '\n';
            return invariant_failure;
        }
    }
    err << rows.size() << " curves, all invariants hold\n";
    return ok;
}

inline int cmd_congruence(const Options& o, std::ostream& out) {
    const FieldHandle f = make_field(o.p, max_prime_from_env());
    std::vector<std::int64_t> xs;
    if (o.all_x) {
        for (std::uint64_t x = 1; x < o.p; ++x) xs.push_back(static_cast<std::int64_t>(x));
    } else {
        xs.push_back(o.x);
    }

    std::size_t held = 0;
    nlohmann::json rows = nlohmann::json::array();
    for (auto x : xs) {
        const CongruenceReport r = check_thm_congruence(o.m, o.d, f->element(x), o.tolerance);
        held += r.holds ? 1 : 0;
        if (o.json) {
            rows.push_back({{"x", r.x},
                            {"lhs_residue", r.lhs_residue},
                            {"rhs_residue", r.rhs_residue},
                            {"holds", r.holds},
                            {"rounding_residual", format_real(r.rounding_residual)}});
        } else {
            out << "x = " << std::setw(6) << r.x << "  lhs = " << std::setw(6) << r.lhs_residue
                << "  rhs = " << std::setw(6) << r.rhs_residue << "  " << (r.holds ? "holds" : "FAILS") << '\n';
        }
    }
    if (o.json) {
        out << nlohmann::json{{"m", o.m}, {"d", o.d}, {"p", o.p}, {"held", held}, {"total", xs.size()}, {"rows", rows}}
                   .dump(2)
            << '\n';
    } else {
        out << held << "/" << xs.size() << " hold\n";
    }
    return held == xs.size() ? ok : invariant_failure;
}

inline int cmd_hasse_witt(const Options& o, std::ostream& out) {
    const FieldHandle f = make_field(o.p, max_prime_from_env());
    const LegendreCurve curve = make_curve(f, o.lambda);
    const HasseWittMatrix hw = hasse_witt(curve);
    const std::int64_t a_p = trace_frobenius(curve);
    const auto a_mod_p = f->reduce(a_p);
    const bool trace_ok = hw.trace_mod_p() == a_mod_p;
    const bool block_ok = hw.off_block_zero();

    if (o.json) {
        nlohmann::json m = nlohmann::json::array();
        for (const auto& row : hw.entries) m.push_back(row);
        out << nlohmann::json{{"p", o.p},
                              {"lambda", curve.lambda.value},
                              {"basis", {"x dx/y^3", "dx/y^2", "dx/y^3"}},
                              {"matrix", m},
                              {"trace_mod_p", hw.trace_mod_p()},
                              {"trace_of_frobenius", a_p},
                              {"trace_congruence", trace_ok},
                              {"off_block_zero", block_ok}}
                   .dump(2)
            << '\n';
    } else {
        out << "Hasse-Witt matrix (basis x dx/y^3, dx/y^2, dx/y^3; rows = source):\n";
        for (const auto& row : hw.entries) {
            out << "  [";
            for (std::size_t j = 0; j < 3; ++j) out << (j ? " " : "") << std::setw(4) << row[j];
            out << " ]\n";
        }
        out << "trace " << hw.trace_mod_p() << '\n'
            << "a_p = " << a_p << " = " << a_mod_p << " mod " << o.p << '\n'
            << "trace ≡ a_p mod p: " << (trace_ok ? "ok" : "FAILED") << '\n'
            << "off-block entries zero: " << (block_ok ? "ok" : "FAILED") << '\n';
    }
    return trace_ok && block_ok ? ok : invariant_failure;
}

inline int cmd_transform(const Options& o, std::ostream& out) {
    const FieldHandle f = make_field(o.p, max_prime_from_env());
    const FF2F1Spec spec = make_spec(*f, o.a_exp, o.b_exp, o.c_exp, o.x);
    const double residual = inversion_transform_residual(spec);
    const double tol = definition_tolerance(o.p);
    const bool passed = residual < tol;
    if (o.json) {
        out << nlohmann::json{{"p", o.p},
                              {"a", spec.A.k},
                              {"b", spec.B.k},
                              {"c", spec.C.k},
                              {"x", spec.x.value},
                              {"value", complex_string(ff_2f1_pointsum(spec))},
                              {"residual", format_real(residual)},
                              {"tolerance", format_real(tol)},
                              {"ok", passed}}
                   .dump(2)
            << '\n';
    } else {
        out << "2F1(T^" << spec.A.k << ", T^" << spec.B.k << "; T^" << spec.C.k << " | " << spec.x.value
            << ") over F_" << o.p << " = " << complex_string(ff_2f1_pointsum(spec)) << '\n'
            << "inversion residual: " << format_real(residual) << (passed ? " (ok)" : " (FAILED)") << '\n';
    }
    return passed ? ok : invariant_failure;
}

inline int cmd_match(const Options& o, std::ostream& out) {
    const FieldHandle f = make_field(o.p, max_prime_from_env());
    const LegendreCurve curve = make_curve(f, o.lambda);
    const auto rows = match_table(curve, o.tolerance);
    auto residue = [](const std::optional<std::uint64_t>& v) -> nlohmann::json {
        return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
    };
    if (o.json) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& r : rows) {
            arr.push_back({{"period", "pi_" + std::to_string(r.period_index)},
                           {"params", {to_string(r.params.a), to_string(r.params.b), to_string(r.params.c)}},
                           {"characters", r.character_exponents},
                           {"lhs_residue", residue(r.lhs_residue)},
                           {"rhs_residue", residue(r.rhs_residue)},
                           {"status", to_string(r.status)},
                           {"asserted", r.period_index == 2},
                           {"scaled_value", complex_string(r.scaled_value)},
                           {"rounding_residual", format_real(r.rounding_residual)},
                           {"note", r.note}});
        }
        out << nlohmann::json{{"p", o.p}, {"lambda", curve.lambda.value}, {"rows", arr}}.dump(2) << '\n';
    } else {
        for (const auto& r : rows) {
            out << "pi_" << r.period_index << "  2F1(" << to_string(r.params.a) << ", " << to_string(r.params.b)
                << "; " << to_string(r.params.c) << ")  <->  (T^" << r.character_exponents[0] << ", T^"
                << r.character_exponents[1] << "; T^" << r.character_exponents[2] << ")  lhs = "
                << (r.lhs_residue ? std::to_string(*r.lhs_residue) : "-")
                << "  rhs = " << (r.rhs_residue ? std::to_string(*r.rhs_residue) : "-") << "  "
                << to_string(r.status) << (r.period_index == 2 ? "" : " (exploratory)");
            if (!r.note.empty()) out << "  [" << r.note << "]";
            out << '\n';
        }
    }
    return rows[1].status == MatchStatus::holds ? ok : invariant_failure;
}

inline int status_for(const error& e) noexcept {
    return e.code() == errc::rounding_failure ? invariant_failure : usage_error;
}

/// Entry point shared by the executable and the tests.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Periods, point counts and Hasse-Witt data for y^4 = x(x-1)(x-lambda)", "legendre_hgf"};
    app.require_subcommand(1);
    Options o;

    auto add_json = [&](CLI::App* sub) { sub->add_flag("--json", o.json, "Machine-readable JSON output"); };
    auto add_tolerance = [&](CLI::App* sub) {
        sub->add_option("--tolerance", o.tolerance, "Absolute rounding bound (default 1e-6 * p)")
            ->check(CLI::PositiveNumber);
    };

    auto* count = app.add_subcommand("count", "Count points by brute force and/or the character-sum formula");
    count->add_option("--p", o.p, "Prime")->required();
    count->add_option("--lambda", o.lambda, "Curve parameter as a residue mod p")->capture_default_str();
    count->add_option("--method", o.method, "brute, formula or both")
        ->check(CLI::IsMember({"brute", "formula", "both"}))
        ->capture_default_str();
    add_json(count);
    add_tolerance(count);

    auto* periods = app.add_subcommand("periods", "Partial sums of the three period series");
    periods->add_option("--lambda", o.lambda_rational, "Exact rational such as 1/4")->required();
    periods->add_option("--terms", o.terms, "Number of series terms")->capture_default_str();
    add_json(periods);

    auto* survey = app.add_subcommand(
        "survey", "Sweep every p = 1 mod 4 up to --pmax and every lambda != 0, 1.\n"
                  "CSV columns: p,lambda,brute_count,formula_count,trace,hw_trace_mod_p,hw_block_ok,"
                  "pi1_match,pi2_match,pi3_match,formula_residual,pi2_residual");
    survey->add_option("--pmax", o.pmax, "Largest prime to include")->required();
    survey->add_option("--out", o.out, "Output file (default stdout)");
    survey->add_option("--format", o.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    survey->add_option("--jobs", o.jobs, "Worker threads (default: hardware concurrency)");
    survey->add_flag("--corrupt-check", o.corrupt_check)->group("");
    add_tolerance(survey);

    auto* congruence = app.add_subcommand("congruence", "Truncated classical vs finite-field 2F1 mod p");
    congruence->add_option("--m", o.m, "Numerator m")->required();
    congruence->add_option("--d", o.d, "Denominator d")->required();
    congruence->add_option("--p", o.p, "Prime with p = 1 mod d")->required();
    auto* x_opt = congruence->add_option("--x", o.x, "Argument x (nonzero residue)");
    auto* all_x = congruence->add_flag("--all-x", o.all_x, "Check every nonzero x");
    x_opt->excludes(all_x);
    add_json(congruence);
    add_tolerance(congruence);

    auto* hw = app.add_subcommand("hasse-witt", "Hasse-Witt matrix and its trace congruence");
    hw->add_option("--p", o.p, "Prime with p = 1 mod 4")->required();
    hw->add_option("--lambda", o.lambda, "Curve parameter as a residue mod p")->capture_default_str();
    add_json(hw);

    auto* transform = app.add_subcommand("transform", "Residual of the inversion transformation x -> 1/x");
    transform->add_option("--p", o.p, "Prime")->required();
    transform->add_option("--a", o.a_exp, "Exponent of A = T^a")->required();
    transform->add_option("--b", o.b_exp, "Exponent of B = T^b")->required();
    transform->add_option("--c", o.c_exp, "Exponent of C = T^c")->required();
    transform->add_option("--x", o.x, "Argument x (nonzero residue)")->required();
    add_json(transform);

    auto* match = app.add_subcommand("match", "Period / point-count matching table");
    match->add_option("--p", o.p, "Prime with p = 1 mod 4")->required();
    match->add_option("--lambda", o.lambda, "Curve parameter as a residue mod p")->capture_default_str();
    add_json(match);
    add_tolerance(match);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ok : usage_error;
    }

    try {
        if (count->parsed()) return cmd_count(o, out);
        if (periods->parsed()) return cmd_periods(o, out, err);
        if (survey->parsed()) return cmd_survey(o, out, err);
        if (congruence->parsed()) return cmd_congruence(o, out);
        if (hw->parsed()) return cmd_hasse_witt(o, out);
        if (transform->parsed()) return cmd_transform(o, out);
        if (match->parsed()) return cmd_match(o, out);
    } catch (const error& e) {
        err << "error: " << e.what() << '\n';
        return status_for(e);
    }
    return usage_error;
}

} // namespace legendre_hgf::cli
