#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace legendre_hgf {

enum class errc {
    not_prime,
    too_large,
    division_by_zero,
    zero_argument,
    denominator_vanishes,
    bad_field_residue,
    rounding_failure,
    precondition_violation,
    singular_curve,
    field_mismatch,
};

constexpr std::string_view to_string(errc code) noexcept {
    switch (code) {
    case errc::not_prime: return "NotPrime";
    case errc::too_large: return "TooLarge";
    case errc::division_by_zero: return "DivisionByZero";
    case errc::zero_argument: return "ZeroArgument";
    case errc::denominator_vanishes: return "DenominatorVanishes";
    case errc::bad_field_residue: return "BadFieldResidue";
    case errc::rounding_failure: return "RoundingFailure";
    case errc::precondition_violation: return "PreconditionViolation";
    case errc::singular_curve: return "SingularCurve";
    case errc::field_mismatch: return "FieldMismatch";
    }
    return "Unknown";
}

/// Every failure raised by the library carries one of the codes above so
/// callers (the CLI in particular) can map it onto an exit status.
class error : public std::runtime_error {
public:
    error(errc code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

} // namespace legendre_hgf
