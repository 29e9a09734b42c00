#pragma once

#include <legendre_hgf/congruence.hpp>
#include <legendre_hgf/curves.hpp>
#include <legendre_hgf/error.hpp>
#include <legendre_hgf/field.hpp>

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace legendre_hgf {

/// One curve of a (p, lambda) sweep.
struct SurveyRow {
    std::uint64_t p = 0;
    std::uint64_t lambda = 0;
    std::int64_t brute_count = 0;
    std::int64_t formula_count = 0;
    std::int64_t trace = 0;
    std::uint64_t hw_trace_mod_p = 0;
    bool hw_block_ok = false;
    MatchStatus pi1_match = MatchStatus::undefined;
    MatchStatus pi2_match = MatchStatus::undefined;
    MatchStatus pi3_match = MatchStatus::undefined;
    double formula_residual = 0.0;
    double pi2_residual = 0.0;

    friend bool operator==(const SurveyRow&, const SurveyRow&) = default;
};

inline constexpr const char* kSurveyCsvHeader =
    "p,lambda,brute_count,formula_count,trace,hw_trace_mod_p,hw_block_ok,"
    "pi1_match,pi2_match,pi3_match,formula_residual,pi2_residual";

inline SurveyRow compute_survey_row(const FieldHandle& f, std::uint64_t lambda, std::optional<double> tolerance = {}) {
    const LegendreCurve curve = make_curve(f, static_cast<std::int64_t>(lambda));
    SurveyRow row;
    row.p = f->order();
    row.lambda = curve.lambda.value;
    row.brute_count = brute_force_count(curve);
    const FormulaCountResult formula = formula_count_detailed(curve, tolerance);
    row.formula_count = formula.count;
    row.formula_residual = std::max(formula.rounding_residual, formula.imag_residual);
    row.trace = static_cast<std::int64_t>(row.p) + 1 - row.brute_count;

    const HasseWittMatrix hw = hasse_witt(curve);
    row.hw_trace_mod_p = hw.trace_mod_p();
    row.hw_block_ok = hw.off_block_zero();

    const auto matches = match_table(curve, tolerance);
    row.pi1_match = matches[0].status;
    row.pi2_match = matches[1].status;
    row.pi3_match = matches[2].status;
    row.pi2_residual = matches[1].rounding_residual;
    return row;
}

/// Every asserted invariant a row violates; empty when the row is sound.
inline std::vector<std::string> row_violations(const SurveyRow& row) {
    std::vector<std::string> out;
    const auto p = static_cast<std::int64_t>(row.p);
    if (row.brute_count != row.formula_count) out.emplace_back("brute_count != formula_count");
    if (row.trace != p + 1 - row.brute_count) out.emplace_back("trace != p + 1 - brute_count");
    if ((((p + 1 - row.brute_count) % p) + p) % p != static_cast<std::int64_t>(row.hw_trace_mod_p)) {
        out.emplace_back("Hasse-Witt trace not congruent to p + 1 - brute_count");
    }
    if (!row.hw_block_ok) out.emplace_back("Hasse-Witt off-block entries nonzero");
    if (!within_weil_bound(row.trace, row.p)) out.emplace_back("trace violates the Weil bound");
    if (row.pi2_match != MatchStatus::holds) out.emplace_back("pi_2 congruence does not hold");
    return out;
}

struct SurveyOptions {
    std::uint64_t pmax = 0;
    unsigned jobs = 1;
    std::optional<double> tolerance;
    std::uint64_t max_prime = kDefaultMaxPrime;
    /// Test hook: perturbs the first row so the invariant checker must fire.
    bool corrupt_first_row = false;
};

/// Primes p = 1 mod 4 with 5 <= p <= pmax, ascending.
inline std::vector<std::uint64_t> survey_primes(std::uint64_t pmax) {
    std::vector<std::uint64_t> primes;
    for (std::uint64_t p = 5; p <= pmax; p += 4) {
        if (is_prime(p)) primes.push_back(p);
    }
    return primes;
}

/// Rows for every prime p = 1 mod 4 up to pmax and every lambda in
/// F_p \ {0, 1}, ordered by (p, lambda) whatever the worker count.
inline std::vector<SurveyRow> run_survey(const SurveyOptions& options) {
    if (options.pmax < 5) throw error(errc::precondition_violation, "pmax must be at least 5");
    const auto primes = survey_primes(options.pmax);
    std::vector<std::vector<SurveyRow>> per_prime(primes.size());
    std::vector<std::exception_ptr> failures(primes.size());
    std::atomic<std::size_t> next{0};

    auto worker = [&] {
        for (std::size_t i = next++; i < primes.size(); i = next++) {
            try {
                const FieldHandle f = make_field(primes[i], options.max_prime);
                auto& rows = per_prime[i];
                rows.reserve(primes[i] - 2);
                for (std::uint64_t lambda = 2; lambda < primes[i]; ++lambda) {
                    rows.push_back(compute_survey_row(f, lambda, options.tolerance));
                }
            } catch (...) {
                failures[i] = std::current_exception();
            }
        }
    };

    const unsigned jobs = std::max(1U, std::min<unsigned>(options.jobs, static_cast<unsigned>(primes.size())));
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
    }
    for (const auto& failure : failures) {
        if (failure) std::rethrow_exception(failure);
    }

    std::vector<SurveyRow> rows;
    for (auto& block : per_prime) rows.insert(rows.end(), block.begin(), block.end());
    if (options.corrupt_first_row && !rows.empty()) rows.front().brute_count += 1;
    return rows;
}

inline std::string format_real(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline void write_survey_csv(std::ostream& out, const std::vector<SurveyRow>& rows) {
    out << kSurveyCsvHeader << '\n';
    for (const auto& r : rows) {
        out << r.p << ',' << r.lambda << ',' << r.brute_count << ',' << r.formula_count << ',' << r.trace << ','
            << r.hw_trace_mod_p << ',' << (r.hw_block_ok ? "true" : "false") << ',' << to_string(r.pi1_match) << ','
            << to_string(r.pi2_match) << ',' << to_string(r.pi3_match) << ',' << format_real(r.formula_residual)
            << ',' << format_real(r.pi2_residual) << '\n';
    }
}

inline std::vector<SurveyRow> read_survey_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != kSurveyCsvHeader) {
        throw error(errc::precondition_violation, "survey CSV header mismatch");
    }
    std::vector<SurveyRow> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        for (std::string cell; std::getline(ss, cell, ',');) cells.push_back(cell);
        auto bad = [&](const std::string& why) {
            return error(errc::precondition_violation, "survey CSV line " + std::to_string(line_no) + ": " + why);
        };
        if (cells.size() != 12) throw bad("expected 12 columns");
        auto status = [&](const std::string& s) {
            const auto v = parse_match_status(s);
            if (!v) throw bad("bad match status '" + s + "'");
            return *v;
        };
        try {
            SurveyRow r;
            r.p = std::stoull(cells[0]);
            r.lambda = std::stoull(cells[1]);
            r.brute_count = std::stoll(cells[2]);
            r.formula_count = std::stoll(cells[3]);
            r.trace = std::stoll(cells[4]);
            r.hw_trace_mod_p = std::stoull(cells[5]);
            if (cells[6] != "true" && cells[6] != "false") throw bad("bad boolean '" + cells[6] + "'");
            r.hw_block_ok = cells[6] == "true";
            r.pi1_match = status(cells[7]);
            r.pi2_match = status(cells[8]);
            r.pi3_match = status(cells[9]);
            r.formula_residual = std::stod(cells[10]);
            r.pi2_residual = std::stod(cells[11]);
            rows.push_back(r);
        } catch (const std::logic_error&) {
            throw bad("unparsable number");
        }
    }
    return rows;
}

inline nlohmann::json survey_json(const std::vector<SurveyRow>& rows) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& r : rows) {
        out.push_back({
            {"p", r.p},
            {"lambda", r.lambda},
            {"brute_count", r.brute_count},
            {"formula_count", r.formula_count},
            {"trace", r.trace},
            {"hw_trace_mod_p", r.hw_trace_mod_p},
            {"hw_block_ok", r.hw_block_ok},
            {"pi1_match", to_string(r.pi1_match)},
            {"pi2_match", to_string(r.pi2_match)},
            {"pi3_match", to_string(r.pi3_match)},
            {"formula_residual", format_real(r.formula_residual)},
            {"pi2_residual", format_real(r.pi2_residual)},
        });
    }
    return out;
}

} // namespace legendre_hgf
