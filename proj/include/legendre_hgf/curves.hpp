#pragma once

#include <legendre_hgf/characters.hpp>
#include <legendre_hgf/error.hpp>
#include <legendre_hgf/ffhyper.hpp>
#include <legendre_hgf/field.hpp>

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace legendre_hgf {

/// y^4 = x(x-1)(x-lambda) over F_p with lambda outside {0, 1}; genus 3.
/// The curve shares ownership of its field.
struct LegendreCurve {
    FieldHandle field;
    FieldElement lambda;

    std::uint64_t p() const noexcept { return field->order(); }
};

inline LegendreCurve make_curve(FieldHandle f, std::int64_t lambda) {
    if (!f) throw error(errc::precondition_violation, "curve needs a field");
    const FieldElement l = f->element(lambda);
    if (l.value == 0 || l.value == 1) {
        throw error(errc::singular_curve, "lambda = " + std::to_string(l.value) + " gives a singular curve");
    }
    return {std::move(f), l};
}

/// The default rounding bound 1e-6 * p used when a character sum is snapped
/// to an integer.
inline double default_rounding_tolerance(std::uint64_t p) noexcept { return 1e-6 * static_cast<double>(p); }

/// 1 + sum_x #{y : y^4 = x(x-1)(x-lambda)}, counting the single point at
/// infinity. O(p) using a table of fourth-power multiplicities.
inline std::int64_t brute_force_count(const LegendreCurve& curve) {
    const PrimeField& f = *curve.field;
    const std::uint64_t p = f.order();
    std::vector<std::uint32_t> fourth_roots(p, 0);
    for (std::uint64_t y = 0; y < p; ++y) {
        const std::uint64_t y2 = y * y % p;
        ++fourth_roots[y2 * y2 % p];
    }
    const std::uint64_t lam = curve.lambda.value;
    std::int64_t count = 1;
    for (std::uint64_t x = 0; x < p; ++x) {
        const std::uint64_t v = x * ((x + p - 1) % p) % p * ((x + p - lam) % p) % p;
        count += fourth_roots[v];
    }
    return count;
}

struct FormulaCountResult {
    std::int64_t count = 0;
    /// |p S - round(p S)| for the real part of the character-sum total.
    double rounding_residual = 0.0;
    /// |Im S|, which must vanish.
    double imag_residual = 0.0;
};

/// p + 1 + p eps(lambda) sum_{m=1}^{3} psi^m(-1) 2F1(psi^-m, psi^m; psi^2m | lambda),
/// with psi the quartic character. Only valid for p = 1 mod 4.
inline FormulaCountResult formula_count_detailed(const LegendreCurve& curve, std::optional<double> tolerance = {}) {
    const PrimeField& f = *curve.field;
    const std::uint64_t p = f.order();
    const MultChar psi = quartic_character(f);
    const double tau = tolerance.value_or(default_rounding_tolerance(p));

    ComplexValue total{0.0, 0.0};
    for (int m = 1; m <= 3; ++m) {
        const FF2F1Spec spec{psi.pow(-m), psi.pow(m), psi.pow(2 * m), curve.lambda};
        total += static_cast<double>(char_sign_at_minus_one(psi.pow(m))) * ff_2f1_pointsum(spec);
    }
    // eps(lambda) = 1 since lambda != 0.
    const double scaled = static_cast<double>(p) * total.real();
    const double rounded = std::round(scaled);

    FormulaCountResult result;
    result.rounding_residual = std::abs(scaled - rounded);
    result.imag_residual = std::abs(total.imag());
    if (result.imag_residual >= tau || result.rounding_residual >= tau) {
        throw error(errc::rounding_failure, "character sum for p = " + std::to_string(p) + ", lambda = " +
                                                std::to_string(curve.lambda.value) + " is not within " +
                                                std::to_string(tau) + " of an integer");
    }
    result.count = static_cast<std::int64_t>(p) + 1 + static_cast<std::int64_t>(rounded);
    return result;
}

inline std::int64_t formula_count(const LegendreCurve& curve, std::optional<double> tolerance = {}) {
    return formula_count_detailed(curve, tolerance).count;
}

/// a_p = p + 1 - #C.
inline std::int64_t trace_frobenius(const LegendreCurve& curve) {
    return static_cast<std::int64_t>(curve.p()) + 1 - brute_force_count(curve);
}

/// |a| <= 2 g sqrt(p) with g = 3.
inline bool within_weil_bound(std::int64_t trace, std::uint64_t p) noexcept {
    const double t = static_cast<double>(trace);
    return t * t <= 36.0 * static_cast<double>(p);
}

/// Basis order used for rows and columns: omega_1 = x dx/y^3,
/// omega_2 = dx/y^2, omega_3 = dx/y^3.
enum class Differential : std::size_t { omega1 = 0, omega2 = 1, omega3 = 2 };

/// Cartier-Manin matrix over F_p. entries[s][t] is the coefficient carrying
/// source differential s to target differential t.
struct HasseWittMatrix {
    std::uint64_t p = 0;
    std::array<std::array<std::uint64_t, 3>, 3> entries{};

    std::uint64_t at(Differential source, Differential target) const noexcept {
        return entries[static_cast<std::size_t>(source)][static_cast<std::size_t>(target)];
    }
    std::uint64_t trace_mod_p() const noexcept { return (entries[0][0] + entries[1][1] + entries[2][2]) % p; }
    /// The four entries linking omega_2 with omega_1 or omega_3.
    bool off_block_zero() const noexcept {
        return entries[1][0] == 0 && entries[1][2] == 0 && entries[0][1] == 0 && entries[2][1] == 0;
    }
};

namespace detail {

/// Dense polynomial over F_p, coefficients by ascending degree.
using PolyModP = std::vector<std::uint64_t>;

inline PolyModP multiply(const PolyModP& a, const PolyModP& b, std::uint64_t p) {
    PolyModP out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = (out[i + j] + a[i] * b[j]) % p;
    }
    return out;
}

inline std::uint64_t coefficient(const PolyModP& poly, std::uint64_t degree) noexcept {
    return degree < poly.size() ? poly[degree] : 0;
}

} // namespace detail

/// Coefficient extraction for the Cartier operator on y^4 = f(x):
///   omega_2 entry: [x^(p-1)] f^((p-1)/2);
///   {omega_1, omega_3} block, source exponent a to target a' (omega_3 has
///   a = 1, omega_1 has a = 2): [x^(p a' - a)] f^(3(p-1)/4).
inline HasseWittMatrix hasse_witt(const LegendreCurve& curve) {
    const PrimeField& f = *curve.field;
    const std::uint64_t p = f.order();
    if (p % 4 != 1) throw error(errc::bad_field_residue, "p = " + std::to_string(p) + " is not 1 mod 4");

    const std::uint64_t lam = curve.lambda.value;
    // x(x-1)(x-lambda) = x^3 - (1+lambda) x^2 + lambda x
    const detail::PolyModP cubic{0, lam, f.neg((1 + lam) % p), 1};

    const std::uint64_t half = (p - 1) / 2;
    const std::uint64_t three_quarters = 3 * (p - 1) / 4;
    detail::PolyModP power{1};
    detail::PolyModP power_half;
    for (std::uint64_t e = 1; e <= three_quarters; ++e) {
        power = detail::multiply(power, cubic, p);
        if (e == half) power_half = power;
    }

    HasseWittMatrix hw;
    hw.p = p;
    hw.entries[1][1] = detail::coefficient(power_half, p - 1);

    constexpr std::array<std::size_t, 2> slot{2, 0};  // a = 1 -> omega_3, a = 2 -> omega_1
    for (std::uint64_t a = 1; a <= 2; ++a) {
        for (std::uint64_t a_target = 1; a_target <= 2; ++a_target) {
            hw.entries[slot[a - 1]][slot[a_target - 1]] = detail::coefficient(power, p * a_target - a);
        }
    }
    return hw;
}

} // namespace legendre_hgf
