#pragma once

#include <legendre_hgf/characters.hpp>
#include <legendre_hgf/error.hpp>
#include <legendre_hgf/field.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>

namespace legendre_hgf {

/// Arguments of a finite-field 2F1(A, B; C | x) over a single prime field.
struct FF2F1Spec {
    MultChar A;
    MultChar B;
    MultChar C;
    FieldElement x;

    const PrimeField& field() const noexcept { return *x.field; }
};

inline FF2F1Spec make_spec(const PrimeField& f, std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t x) {
    return {character(f, a), character(f, b), character(f, c), f.element(x)};
}

namespace detail {

inline void check_same_field(const FF2F1Spec& s) {
    if (s.x.field == nullptr || s.A.field != s.x.field || s.B.field != s.x.field || s.C.field != s.x.field) {
        throw error(errc::field_mismatch, "2F1 arguments must share one field");
    }
}

} // namespace detail

/// Optional instrumentation for the cost contracts of the two kernels.
struct KernelStats {
    std::uint64_t char_terms = 0;
    std::uint64_t binom_lookups = 0;
};

/// Greene's point-sum definition:
///   eps(x) BC(-1)/p * sum_y B(y) conj(B)C(1-y) conj(A)(1-xy).
/// Theta(p) terms; each term is one exact exponent sum and one root lookup.
inline ComplexValue ff_2f1_pointsum(const FF2F1Spec& s, KernelStats* stats = nullptr) {
    detail::check_same_field(s);
    const PrimeField& f = s.field();
    if (s.x.is_zero()) return {0.0, 0.0};

    const std::uint64_t p = f.order();
    const std::uint64_t n = f.group_order();
    const std::uint64_t eb = s.B.k;
    const std::uint64_t ebc = (s.C.k + n - s.B.k) % n;  // conj(B) C
    const std::uint64_t ea = (n - s.A.k) % n;            // conj(A)
    const std::uint64_t x = s.x.value;

    ComplexValue sum{0.0, 0.0};
    for (std::uint64_t y = 2; y < p; ++y) {
        const std::uint64_t w = (p + 1 - x * y % p) % p;  // 1 - xy
        if (w == 0) continue;
        const std::uint64_t e = (eb * f.dlog(y) + ebc * f.dlog(p + 1 - y) + ea * f.dlog(w)) % n;
        sum += f.root(e);
    }
    if (stats != nullptr) stats->char_terms += p;

    const int sign = char_sign_at_minus_one(s.B * s.C);
    return static_cast<double>(sign) / static_cast<double>(p) * sum;
}

/// Greene's character-sum definition:
///   p/(p-1) * sum_chi binom(A chi; chi) binom(B chi; C chi) chi(x).
/// Theta(p) binomial lookups; pass a cache to amortise the Jacobi sums.
inline ComplexValue ff_2f1_charsum(const FF2F1Spec& s, const JacobiCache* cache = nullptr, KernelStats* stats = nullptr) {
    detail::check_same_field(s);
    const PrimeField& f = s.field();
    if (s.x.is_zero()) return {0.0, 0.0};

    const std::uint64_t n = f.group_order();
    const std::uint64_t dx = f.dlog(s.x.value);
    ComplexValue sum{0.0, 0.0};
    for (std::uint64_t j = 0; j < n; ++j) {
        const MultChar chi{&f, j};
        const ComplexValue term = norm_binom(s.A * chi, chi, cache) * norm_binom(s.B * chi, s.C * chi, cache);
        sum += term * f.root(j * dx % n);
    }
    if (stats != nullptr) stats->binom_lookups += 2 * n;
    return static_cast<double>(f.order()) / static_cast<double>(n) * sum;
}

/// Agreement threshold between two evaluations of the same character sum:
/// 1e-8 up to p = 10^4, growing linearly with p beyond that.
inline double definition_tolerance(std::uint64_t p) noexcept {
    return 1e-8 * std::max(1.0, static_cast<double>(p) / 1e4);
}

/// |LHS - RHS| for 2F1(A,B;C|x) = ABC(-1) conj(A)(x) 2F1(A, A conj(C); A conj(B) | 1/x).
inline double inversion_transform_residual(const FF2F1Spec& s) {
    detail::check_same_field(s);
    if (s.x.is_zero()) throw error(errc::zero_argument, "inversion transform needs x != 0");
    const PrimeField& f = s.field();

    const ComplexValue lhs = ff_2f1_pointsum(s);
    const FF2F1Spec inverted{s.A, s.A * s.C.conj(), s.A * s.B.conj(), FieldElement{&f, f.inv(s.x.value)}};
    const double sign = char_sign_at_minus_one(s.A * s.B * s.C);
    const ComplexValue rhs = sign * char_eval(s.A.conj(), s.x) * ff_2f1_pointsum(inverted);
    return std::abs(lhs - rhs);
}

} // namespace legendre_hgf
