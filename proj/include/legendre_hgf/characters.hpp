#pragma once

#include <legendre_hgf/error.hpp>
#include <legendre_hgf/field.hpp>

#include <complex>
#include <cstdint>
#include <mutex>
#include <numeric>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>

namespace legendre_hgf {

using ComplexValue = std::complex<double>;

/// The character T^k of F_p^x, where T(g) = exp(2 pi i / (p-1)) for the
/// field's primitive root g. Extended to 0 by chi(0) = 0, including k = 0.
struct MultChar {
    const PrimeField* field = nullptr;
    std::uint64_t k = 0;

    bool is_trivial() const noexcept { return k == 0; }
    std::uint64_t order() const noexcept {
        const std::uint64_t n = field->group_order();
        return n / std::gcd(k, n);
    }
    MultChar conj() const noexcept { return {field, (field->group_order() - k) % field->group_order()}; }
    MultChar pow(std::int64_t e) const noexcept {
        const auto n = static_cast<std::int64_t>(field->group_order());
        const auto ke = static_cast<std::int64_t>(static_cast<__int128>(k) * (e % n) % n);
        return {field, static_cast<std::uint64_t>((ke + n) % n)};
    }

    friend MultChar operator*(const MultChar& a, const MultChar& b) {
        if (a.field != b.field) throw error(errc::field_mismatch, "characters over different fields");
        return {a.field, (a.k + b.k) % a.field->group_order()};
    }
    friend bool operator==(const MultChar& a, const MultChar& b) noexcept {
        return a.field == b.field && a.k == b.k;
    }
};

/// T^k with k reduced into [0, p-2]; negative exponents denote conjugates.
inline MultChar character(const PrimeField& f, std::int64_t k) noexcept {
    const auto n = static_cast<std::int64_t>(f.group_order());
    return {&f, static_cast<std::uint64_t>(((k % n) + n) % n)};
}

inline MultChar trivial_character(const PrimeField& f) noexcept { return {&f, 0}; }

/// phi = T^((p-1)/2).
inline MultChar quadratic_character(const PrimeField& f) noexcept { return {&f, f.group_order() / 2}; }

/// psi = T^((p-1)/4); needs p = 1 mod 4.
inline MultChar quartic_character(const PrimeField& f) {
    if (f.order() % 4 != 1) {
        throw error(errc::bad_field_residue, "p = " + std::to_string(f.order()) + " is not 1 mod 4");
    }
    return {&f, f.group_order() / 4};
}

/// Exponent e with chi(x) = exp(2 pi i e / (p-1)), or nullopt when x = 0.
inline std::optional<std::uint64_t> char_exponent(const MultChar& chi, std::uint64_t x) noexcept {
    const PrimeField& f = *chi.field;
    x %= f.order();
    if (x == 0) return std::nullopt;
    return chi.k * f.dlog(x) % f.group_order();
}

inline ComplexValue char_eval(const MultChar& chi, const FieldElement& x) {
    if (chi.field != x.field) throw error(errc::field_mismatch, "character and element over different fields");
    const auto e = char_exponent(chi, x.value);
    return e ? chi.field->root(*e) : ComplexValue{0.0, 0.0};
}

/// chi(-1), always +1 or -1.
inline int char_sign_at_minus_one(const MultChar& chi) noexcept {
    return (chi.k % 2 == 0) ? 1 : -1;
}

/// J(T^a, T^b) = sum_x T^a(x) T^b(1-x) by direct O(p) summation. The
/// exponents are accumulated exactly mod p-1 so each term costs one lookup.
inline ComplexValue jacobi_sum_exponents(const PrimeField& f, std::uint64_t a, std::uint64_t b) {
    const std::uint64_t p = f.order();
    const std::uint64_t n = f.group_order();
    a %= n;
    b %= n;
    ComplexValue sum{0.0, 0.0};
    for (std::uint64_t x = 2; x < p; ++x) {
        const std::uint64_t e = (a * f.dlog(x) + b * f.dlog(p + 1 - x)) % n;
        sum += f.root(e);
    }
    return sum;
}

inline ComplexValue jacobi_sum(const MultChar& A, const MultChar& B) {
    if (A.field != B.field) throw error(errc::field_mismatch, "characters over different fields");
    return jacobi_sum_exponents(*A.field, A.k, B.k);
}

/// Memo of Jacobi sums keyed by the unordered exponent pair. Entries are
/// only published once fully computed, so concurrent readers are safe.
class JacobiCache {
public:
    explicit JacobiCache(const PrimeField& f) : field_(&f) {}

    const PrimeField& field() const noexcept { return *field_; }

    ComplexValue get(std::uint64_t a, std::uint64_t b) const {
        const std::uint64_t n = field_->group_order();
        a %= n;
        b %= n;
        if (a > b) std::swap(a, b);
        const std::uint64_t key = a * n + b;
        {
            std::shared_lock lock(mutex_);
            if (auto it = table_.find(key); it != table_.end()) return it->second;
        }
        const ComplexValue value = jacobi_sum_exponents(*field_, a, b);
        std::unique_lock lock(mutex_);
        table_.emplace(key, value);
        return value;
    }

    std::size_t size() const {
        std::shared_lock lock(mutex_);
        return table_.size();
    }

private:
    const PrimeField* field_;
    mutable std::shared_mutex mutex_;
    mutable std::unordered_map<std::uint64_t, ComplexValue> table_;
};

/// Greene's normalized binomial B(-1)/p * J(A, conj B).
inline ComplexValue norm_binom(const MultChar& A, const MultChar& B, const JacobiCache* cache = nullptr) {
    if (A.field != B.field) throw error(errc::field_mismatch, "characters over different fields");
    const PrimeField& f = *A.field;
    if (cache != nullptr && &cache->field() != &f) throw error(errc::field_mismatch, "cache built for another field");
    const MultChar Bbar = B.conj();
    const ComplexValue j = cache ? cache->get(A.k, Bbar.k) : jacobi_sum_exponents(f, A.k, Bbar.k);
    return static_cast<double>(char_sign_at_minus_one(B)) / static_cast<double>(f.order()) * j;
}

} // namespace legendre_hgf
