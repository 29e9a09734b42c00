#pragma once

#include <legendre_hgf/error.hpp>

#include <cmath>
#include <complex>
#include <cstdint>
#include <memory>
#include <numbers>
#include <string>
#include <vector>

namespace legendre_hgf {

inline constexpr std::uint64_t kDefaultMaxPrime = 100003;

inline bool is_prime(std::uint64_t n) noexcept {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t d = 3; d * d <= n; d += 2) {
        if (n % d == 0) return false;
    }
    return true;
}

/// Distinct prime divisors of n, ascending.
inline std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

inline std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) noexcept {
    std::uint64_t result = 1 % mod;
    base %= mod;
    while (exp > 0) {
        if (exp & 1U) result = result * base % mod;
        base = base * base % mod;
        exp >>= 1U;
    }
    return result;
}

class PrimeField;

/// A residue in [0, p) tagged with its owning field. The field pointer is
/// non-owning; keep the PrimeField handle alive while elements are in use.
struct FieldElement {
    const PrimeField* field = nullptr;
    std::uint64_t value = 0;

    bool is_zero() const noexcept { return value == 0; }
    friend bool operator==(const FieldElement& a, const FieldElement& b) noexcept {
        return a.field == b.field && a.value == b.value;
    }
};

/// F_p together with its smallest primitive root and a dense discrete-log
/// table. Immutable once built, so one instance may be shared by any number
/// of concurrent readers.
class PrimeField {
public:
    std::uint64_t order() const noexcept { return p_; }
    std::uint64_t group_order() const noexcept { return p_ - 1; }
    std::uint64_t generator() const noexcept { return g_; }

    /// Exponent e in [0, p-2] with g^e = x. Requires x != 0 mod p.
    std::uint64_t dlog(std::uint64_t x) const noexcept { return dlog_[x % p_]; }
    /// g^e mod p for any e (reduced mod p-1).
    std::uint64_t exp(std::uint64_t e) const noexcept { return powers_[e % (p_ - 1)]; }
    /// exp(2 pi i e / (p-1)).
    const std::complex<double>& root(std::uint64_t e) const noexcept { return roots_[e % (p_ - 1)]; }

    std::uint64_t reduce(std::int64_t v) const noexcept {
        const auto m = static_cast<std::int64_t>(p_);
        const std::int64_t r = v % m;
        return static_cast<std::uint64_t>(r < 0 ? r + m : r);
    }

    std::uint64_t add(std::uint64_t a, std::uint64_t b) const noexcept { return (a + b) % p_; }
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const noexcept { return (a + p_ - b % p_) % p_; }
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const noexcept { return (a % p_) * (b % p_) % p_; }
    std::uint64_t neg(std::uint64_t a) const noexcept { return (p_ - a % p_) % p_; }
    std::uint64_t pow(std::uint64_t a, std::uint64_t e) const noexcept { return pow_mod(a, e, p_); }
    std::uint64_t inv(std::uint64_t a) const {
        if (a % p_ == 0) throw error(errc::division_by_zero, "inverse of 0 in F_" + std::to_string(p_));
        return powers_[(p_ - 1 - dlog_[a % p_]) % (p_ - 1)];
    }

    FieldElement element(std::int64_t v) const noexcept { return FieldElement{this, reduce(v)}; }

    const std::vector<std::uint64_t>& dlog_table() const noexcept { return dlog_; }

private:
    friend std::shared_ptr<const PrimeField> make_field(std::uint64_t p, std::uint64_t max_prime);

    PrimeField(std::uint64_t p, std::uint64_t g) : p_(p), g_(g), dlog_(p, 0), powers_(p - 1), roots_(p - 1) {
        std::uint64_t x = 1;
        const double step = 2.0 * std::numbers::pi / static_cast<double>(p - 1);
        for (std::uint64_t e = 0; e < p - 1; ++e) {
            powers_[e] = x;
            dlog_[x] = e;
            roots_[e] = std::polar(1.0, step * static_cast<double>(e));
            x = x * g % p;
        }
    }

    std::uint64_t p_;
    std::uint64_t g_;
    std::vector<std::uint64_t> dlog_;  // dlog_[0] unused
    std::vector<std::uint64_t> powers_;
    std::vector<std::complex<double>> roots_;
};

using FieldHandle = std::shared_ptr<const PrimeField>;

inline std::uint64_t smallest_primitive_root(std::uint64_t p) {
    const auto divisors = prime_divisors(p - 1);
    for (std::uint64_t g = 2; g < p; ++g) {
        bool generates = true;
        for (auto l : divisors) {
            if (pow_mod(g, (p - 1) / l, p) == 1) {
                generates = false;
                break;
            }
        }
        if (generates) return g;
    }
    throw error(errc::not_prime, "no primitive root mod " + std::to_string(p));
}

/// Builds F_p in O(p) time and memory.
inline FieldHandle make_field(std::uint64_t p, std::uint64_t max_prime = kDefaultMaxPrime) {
    if (p < 3 || !is_prime(p)) throw error(errc::not_prime, std::to_string(p) + " is not an odd prime");
    if (p > max_prime) {
        throw error(errc::too_large, std::to_string(p) + " exceeds the configured maximum " + std::to_string(max_prime));
    }
    return FieldHandle(new PrimeField(p, smallest_primitive_root(p)));
}

enum class field_op { add, sub, mul, inv, pow };

/// Generic arithmetic entry point. For `pow`, b.value is the exponent.
inline FieldElement field_arith(const FieldElement& a, const FieldElement& b, field_op op) {
    if (a.field == nullptr) throw error(errc::precondition_violation, "element without a field");
    if (op != field_op::inv && op != field_op::pow && a.field != b.field) {
        throw error(errc::field_mismatch, "operands belong to different fields");
    }
    const PrimeField& f = *a.field;
    switch (op) {
    case field_op::add: return {&f, f.add(a.value, b.value)};
    case field_op::sub: return {&f, f.sub(a.value, b.value)};
    case field_op::mul: return {&f, f.mul(a.value, b.value)};
    case field_op::inv: return {&f, f.inv(a.value)};
    case field_op::pow: return {&f, f.pow(a.value, b.value)};
    }
    return a;
}

inline FieldElement operator+(const FieldElement& a, const FieldElement& b) { return field_arith(a, b, field_op::add); }
inline FieldElement operator-(const FieldElement& a, const FieldElement& b) { return field_arith(a, b, field_op::sub); }
inline FieldElement operator*(const FieldElement& a, const FieldElement& b) { return field_arith(a, b, field_op::mul); }
inline FieldElement inverse(const FieldElement& a) { return field_arith(a, a, field_op::inv); }
inline FieldElement power(const FieldElement& a, std::uint64_t e) {
    if (a.field == nullptr) throw error(errc::precondition_violation, "element without a field");
    return {a.field, a.field->pow(a.value, e)};
}

} // namespace legendre_hgf
