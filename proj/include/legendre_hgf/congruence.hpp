#pragma once

#include <legendre_hgf/characters.hpp>
#include <legendre_hgf/classical.hpp>
#include <legendre_hgf/curves.hpp>
#include <legendre_hgf/error.hpp>
#include <legendre_hgf/ffhyper.hpp>
#include <legendre_hgf/field.hpp>

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace legendre_hgf {

/// Truncated classical side against the rounded -p * finite-field side.
struct CongruenceReport {
    std::uint64_t p = 0;
    std::uint64_t x = 0;
    std::uint64_t lhs_residue = 0;
    std::uint64_t rhs_residue = 0;
    bool holds = false;
    double rounding_residual = 0.0;
    /// -p * 2F1 before rounding.
    ComplexValue scaled_value{0.0, 0.0};
};

/// A complex number snapped to the nearest Gaussian integer, with the
/// larger of the two per-coordinate distances.
struct GaussianRounding {
    std::int64_t re = 0;
    std::int64_t im = 0;
    double residual = 0.0;
};

inline GaussianRounding round_gaussian(ComplexValue v) noexcept {
    const double re = std::round(v.real());
    const double im = std::round(v.imag());
    return {static_cast<std::int64_t>(re), static_cast<std::int64_t>(im),
            std::max(std::abs(v.real() - re), std::abs(v.imag() - im))};
}

/// Compares 2F1(m/d, (d-m)/d; 1 | x)_tr(p) with -p 2F1(T^mt, conj T^mt; eps | x)_p
/// mod p, where t = (p-1)/d.
inline CongruenceReport check_thm_congruence(std::uint64_t m, std::uint64_t d, const FieldElement& x,
                                             std::optional<double> tolerance = {}) {
    if (x.field == nullptr) throw error(errc::precondition_violation, "element without a field");
    const PrimeField& f = *x.field;
    const std::uint64_t p = f.order();
    if (m < 1 || m >= d) throw error(errc::precondition_violation, "need 1 <= m < d");
    if ((p - 1) % d != 0) {
        throw error(errc::precondition_violation,
                    "p = " + std::to_string(p) + " is not 1 mod " + std::to_string(d));
    }
    if (x.is_zero()) throw error(errc::precondition_violation, "x must be nonzero");

    const std::uint64_t t = (p - 1) / d;
    const ClassicalParams params{make_rational(static_cast<long>(m), static_cast<long>(d)),
                                 make_rational(static_cast<long>(d - m), static_cast<long>(d)), make_rational(1)};
    const MultChar A = character(f, static_cast<std::int64_t>(m * t));
    const FF2F1Spec spec{A, A.conj(), trivial_character(f), x};

    CongruenceReport report;
    report.p = p;
    report.x = x.value;
    report.lhs_residue = truncated_2f1_mod_p(params, x).value;
    report.scaled_value = -static_cast<double>(p) * ff_2f1_pointsum(spec);

    const GaussianRounding r = round_gaussian(report.scaled_value);
    report.rounding_residual = std::max(r.residual, std::abs(report.scaled_value.imag()));
    const double tau = tolerance.value_or(default_rounding_tolerance(p));
    if (report.rounding_residual >= tau) {
        throw error(errc::rounding_failure, "-p * 2F1 at x = " + std::to_string(x.value) + " over F_" +
                                                std::to_string(p) + " is not within " + std::to_string(tau) +
                                                " of an integer");
    }
    report.rhs_residue = f.reduce(r.re);
    report.holds = report.lhs_residue == report.rhs_residue;
    return report;
}

enum class MatchStatus { holds, fails, undefined };

inline std::string_view to_string(MatchStatus s) noexcept {
    switch (s) {
    case MatchStatus::holds: return "holds";
    case MatchStatus::fails: return "fails";
    case MatchStatus::undefined: return "undefined";
    }
    return "undefined";
}

inline std::optional<MatchStatus> parse_match_status(std::string_view s) noexcept {
    if (s == "holds") return MatchStatus::holds;
    if (s == "fails") return MatchStatus::fails;
    if (s == "undefined") return MatchStatus::undefined;
    return std::nullopt;
}

/// One period paired with the finite-field summand obtained by sending each
/// fraction a/b (reduced mod 1) to (order-b character)^a.
struct MatchRow {
    int period_index = 0;
    ClassicalParams params;
    std::array<std::uint64_t, 3> character_exponents{};  // A, B, C as powers of T
    std::optional<std::uint64_t> lhs_residue;
    std::optional<std::uint64_t> rhs_residue;
    MatchStatus status = MatchStatus::undefined;
    ComplexValue scaled_value{0.0, 0.0};  // -p * 2F1
    double rounding_residual = 0.0;
    std::string note;
};

/// Image of i under the reduction Z[zeta_{p-1}] -> F_p sending zeta_{p-1}
/// to the primitive root g, i.e. g^((p-1)/4).
inline std::uint64_t reduced_imaginary_unit(const PrimeField& f) { return f.exp(f.group_order() / 4); }

/// Residue of a Gaussian integer under reduced_imaginary_unit.
inline std::uint64_t reduce_gaussian(const PrimeField& f, std::int64_t re, std::int64_t im) {
    return f.add(f.reduce(re), f.mul(f.reduce(im), reduced_imaginary_unit(f)));
}

/// Rows for pi_1, pi_2, pi_3 against the m = 1, 2, 3 summands of the point
/// count. Only the pi_2 row is covered by a theorem; the other two are data.
/// Per-row failures (vanishing denominators, rounding) are recorded in the
/// row rather than thrown.
inline std::vector<MatchRow> match_table(const LegendreCurve& curve, std::optional<double> tolerance = {}) {
    const PrimeField& f = *curve.field;
    const std::uint64_t p = f.order();
    const MultChar psi = quartic_character(f);
    const double tau = tolerance.value_or(default_rounding_tolerance(p));

    std::vector<MatchRow> rows;
    for (int m = 1; m <= 3; ++m) {
        MatchRow row;
        row.period_index = m;
        row.params = period_params(m);
        const FF2F1Spec spec{psi.pow(-m), psi.pow(m), psi.pow(2 * m), curve.lambda};
        row.character_exponents = {spec.A.k, spec.B.k, spec.C.k};

        row.scaled_value = -static_cast<double>(p) * ff_2f1_pointsum(spec);
        const GaussianRounding r = round_gaussian(row.scaled_value);
        row.rounding_residual = r.residual;
        if (r.residual < tau) {
            row.rhs_residue = reduce_gaussian(f, r.re, r.im);
        } else {
            row.note = "rounding residual " + std::to_string(r.residual) + " exceeds tolerance";
        }

        try {
            row.lhs_residue = truncated_2f1_mod_p(row.params, curve.lambda).value;
        } catch (const error& e) {
            if (e.code() != errc::denominator_vanishes) throw;
            row.note = e.what();
        }

        if (row.lhs_residue && row.rhs_residue) {
            row.status = *row.lhs_residue == *row.rhs_residue ? MatchStatus::holds : MatchStatus::fails;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace legendre_hgf
