#pragma once

#include <legendre_hgf/error.hpp>
#include <legendre_hgf/field.hpp>

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace legendre_hgf {

/// Exact rational, always kept in canonical form (gcd 1, positive denominator).
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
    if (den == 0) throw error(errc::division_by_zero, "zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

/// Parses "3", "-3", "1/4" or "-5/12". Rejects anything else.
inline Rational parse_rational(const std::string& text) {
    if (text.empty()) throw error(errc::precondition_violation, "empty rational");
    std::size_t slash = text.find('/');
    auto valid_int = [](const std::string& s, bool allow_sign) {
        std::size_t i = 0;
        if (allow_sign && !s.empty() && (s[0] == '-' || s[0] == '+')) i = 1;
        if (i >= s.size()) return false;
        for (; i < s.size(); ++i) {
            if (s[i] < '0' || s[i] > '9') return false;
        }
        return true;
    };
    const std::string num = text.substr(0, slash);
    const std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
    if (!valid_int(num, true) || !valid_int(den, false)) {
        throw error(errc::precondition_violation, "not a rational: '" + text + "'");
    }
    mpz_class n(num[0] == '+' ? num.substr(1) : num, 10);
    mpz_class d(den, 10);
    if (d == 0) throw error(errc::division_by_zero, "zero denominator in '" + text + "'");
    Rational r(n, d);
    r.canonicalize();
    return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

/// Parameters (a, b; c) of a classical 2F1.
struct ClassicalParams {
    Rational a;
    Rational b;
    Rational c;

    friend bool operator==(const ClassicalParams& l, const ClassicalParams& r) {
        return l.a == r.a && l.b == r.b && l.c == r.c;
    }
};

inline void check_well_defined(const ClassicalParams& params) {
    if (params.c <= 0 && params.c.get_den() == 1) {
        throw error(errc::precondition_violation, "c = " + to_string(params.c) + " is a nonpositive integer");
    }
}

/// Rising factorial (alpha)_k = alpha (alpha+1) ... (alpha+k-1); (alpha)_0 = 1.
inline Rational pochhammer(const Rational& alpha, std::uint64_t k) {
    Rational result = 1;
    Rational factor = alpha;
    for (std::uint64_t j = 0; j < k; ++j) {
        result *= factor;
        factor += 1;
    }
    return result;
}

/// Coefficients t_k = (a)_k (b)_k / ((c)_k k!) for k = 0..N.
struct SeriesTermTable {
    std::vector<Rational> coeffs;
};

/// Builds each t_k from its four running Pochhammer products; the
/// two-term recurrence is deliberately not used here so that
/// ode_recurrence_check tests something.
inline SeriesTermTable series_terms(const ClassicalParams& params, std::uint64_t N) {
    check_well_defined(params);
    SeriesTermTable table;
    table.coeffs.reserve(N + 1);
    Rational pa = 1, pb = 1, pc = 1;
    mpz_class fact = 1;
    for (std::uint64_t k = 0; k <= N; ++k) {
        if (k > 0) {
            pa *= params.a + (k - 1);
            pb *= params.b + (k - 1);
            pc *= params.c + (k - 1);
            fact *= k;
        }
        Rational t = pa * pb / (pc * Rational(fact));
        t.canonicalize();
        table.coeffs.push_back(std::move(t));
    }
    return table;
}

/// Exact partial sum sum_{k=0}^{N} t_k x^k.
inline Rational classical_2f1_partial(const ClassicalParams& params, const Rational& x, std::uint64_t N) {
    const SeriesTermTable table = series_terms(params, N);
    Rational sum = 0;
    Rational xk = 1;
    for (const auto& t : table.coeffs) {
        sum += t * xk;
        xk *= x;
    }
    sum.canonicalize();
    return sum;
}

/// True iff (k+1)(c+k) t_{k+1} = (a+k)(b+k) t_k for every k < table size - 1.
/// This recurrence is the hypergeometric ODE applied term by term.
inline bool ode_recurrence_check(const ClassicalParams& params, const SeriesTermTable& table) {
    if (table.coeffs.empty() || table.coeffs.front() != 1) return false;
    for (std::size_t k = 0; k + 1 < table.coeffs.size(); ++k) {
        const Rational lhs = Rational(static_cast<unsigned long>(k + 1)) * (params.c + k) * table.coeffs[k + 1];
        const Rational rhs = (params.a + k) * (params.b + k) * table.coeffs[k];
        if (lhs != rhs) return false;
    }
    return true;
}

inline bool ode_recurrence_check(const ClassicalParams& params, std::uint64_t N) {
    if (N < 1) throw error(errc::precondition_violation, "recurrence check needs N >= 1");
    return ode_recurrence_check(params, series_terms(params, N));
}

/// A second-order operator  constant + (d_constant + d_linear * l) d/dl + l(1-l) d^2/dl^2.
struct HypergeometricOperator {
    Rational constant;
    Rational d_constant;
    Rational d_linear;
};

/// Reads (a, b; c) off an operator by matching it to
///   -ab F + (c - (a+b+1) x) F' + x(1-x) F'' = 0,
/// returning a <= b. Fails if a, b are not rational.
inline ClassicalParams params_from_operator(const HypergeometricOperator& op) {
    const Rational product = -op.constant;      // ab
    const Rational sum = -op.d_linear - 1;      // a + b
    Rational disc = sum * sum - 4 * product;
    disc.canonicalize();
    if (disc < 0 || mpz_perfect_square_p(disc.get_num_mpz_t()) == 0 ||
        mpz_perfect_square_p(disc.get_den_mpz_t()) == 0) {
        throw error(errc::precondition_violation, "operator exponents are not rational");
    }
    const Rational root(mpz_class(sqrt(disc.get_num())), mpz_class(sqrt(disc.get_den())));
    Rational a = (sum - root) / 2;
    Rational b = (sum + root) / 2;
    a.canonicalize();
    b.canonicalize();
    Rational c = op.d_constant;
    c.canonicalize();
    return {a, b, c};
}

/// The three period operators of y^4 = x(x-1)(x-l), for i = 1, 2, 3.
inline HypergeometricOperator period_operator(int i) {
    switch (i) {
    case 1: return {make_rational(-3, 16), make_rational(1, 2), make_rational(-2)};
    case 2: return {make_rational(-1, 4), make_rational(1), make_rational(-2)};
    case 3: return {make_rational(-15, 16), make_rational(3, 2), make_rational(-3)};
    default: throw error(errc::precondition_violation, "period index must be 1, 2 or 3");
    }
}

/// (a, b; c) of the periods pi_1, pi_2, pi_3 of y^4 = x(x-1)(x-l).
inline ClassicalParams period_params(int i) {
    switch (i) {
    case 1: return {make_rational(1, 4), make_rational(3, 4), make_rational(1, 2)};
    case 2: return {make_rational(1, 2), make_rational(1, 2), make_rational(1)};
    case 3: return {make_rational(3, 4), make_rational(5, 4), make_rational(3, 2)};
    default: throw error(errc::precondition_violation, "period index must be 1, 2 or 3");
    }
}

/// u/v mod p. Requires p not dividing v.
inline std::uint64_t reduce_mod_p(const Rational& r, const PrimeField& f) {
    const std::uint64_t p = f.order();
    const mpz_class pz(static_cast<unsigned long>(p));
    mpz_class num = r.get_num() % pz;
    if (num < 0) num += pz;
    const mpz_class den = r.get_den() % pz;
    if (den == 0) {
        throw error(errc::precondition_violation, "denominator of " + to_string(r) + " divisible by " + std::to_string(p));
    }
    return f.mul(num.get_ui(), f.inv(den.get_ui()));
}

/// sum_{k=0}^{terms-1} [t_k mod p] x^k mod p, with each t_k reduced by its
/// running factors. Once a numerator factor (a+j) or (b+j) vanishes mod p
/// the remaining terms are zero. A vanishing (c+j) or (1+j) before that is
/// an error. `terms` defaults to p, i.e. tr(p).
inline FieldElement truncated_2f1_mod_p(const ClassicalParams& params, const FieldElement& x,
                                        std::uint64_t terms = 0) {
    if (x.field == nullptr) throw error(errc::precondition_violation, "element without a field");
    check_well_defined(params);
    const PrimeField& f = *x.field;
    if (terms == 0) terms = f.order();
    const std::uint64_t ra = reduce_mod_p(params.a, f);
    const std::uint64_t rb = reduce_mod_p(params.b, f);
    const std::uint64_t rc = reduce_mod_p(params.c, f);

    std::uint64_t sum = 0;
    std::uint64_t term = 1;  // t_k mod p
    std::uint64_t xk = 1;
    for (std::uint64_t k = 0; k < terms; ++k) {
        sum = f.add(sum, f.mul(term, xk));
        if (k + 1 == terms) break;
        const std::uint64_t na = f.add(ra, k % f.order());
        const std::uint64_t nb = f.add(rb, k % f.order());
        if (na == 0 || nb == 0) break;
        const std::uint64_t dc = f.add(rc, k % f.order());
        const std::uint64_t dk = (k + 1) % f.order();
        if (dc == 0 || dk == 0) {
            throw error(errc::denominator_vanishes,
                        "denominator factor vanishes mod " + std::to_string(f.order()) + " at j = " + std::to_string(k));
        }
        term = f.mul(term, f.mul(f.mul(na, nb), f.inv(f.mul(dc, dk))));
        xk = f.mul(xk, x.value);
    }
    return {&f, sum};
}

} // namespace legendre_hgf
