#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace operlab {

enum class Errc {
    NotPrime,
    PrimeMismatch,
    ZeroInverse,
    DivisionByZeroPoly,
    GaugeMismatch,
    ZeroDivisor,
    ZeroTwist,
    NotMonic,
    NotDormant,
    NotRegularSingular,
    NoOrdinaryPoint,
    DegreeBoundTooSmall,
    IndicialNotSplit,
    MultipleRoots,
    FullSet,
    NotSelfDual,
    InvalidSpec,
    BudgetExceeded,
    InconsistentRadiiFilter,
    ArityMismatch,
    IncompleteTable,
    AsymmetricTable,
    AssociativityFailure,
    DegenerateEigenproblem,
    NonIntegralResult,
    InvalidArgument,
    Parse,
    Internal,
};

inline std::string_view errc_name(Errc c) noexcept {
    switch (c) {
        case Errc::NotPrime: return "NotPrime";
        case Errc::PrimeMismatch: return "PrimeMismatch";
        case Errc::ZeroInverse: return "ZeroInverse";
        case Errc::DivisionByZeroPoly: return "DivisionByZeroPoly";
        case Errc::GaugeMismatch: return "GaugeMismatch";
        case Errc::ZeroDivisor: return "ZeroDivisor";
        case Errc::ZeroTwist: return "ZeroTwist";
        case Errc::NotMonic: return "NotMonic";
        case Errc::NotDormant: return "NotDormant";
        case Errc::NotRegularSingular: return "NotRegularSingular";
        case Errc::NoOrdinaryPoint: return "NoOrdinaryPoint";
        case Errc::DegreeBoundTooSmall: return "DegreeBoundTooSmall";
        case Errc::IndicialNotSplit: return "IndicialNotSplit";
        case Errc::MultipleRoots: return "MultipleRoots";
        case Errc::FullSet: return "FullSet";
        case Errc::NotSelfDual: return "NotSelfDual";
        case Errc::InvalidSpec: return "InvalidSpec";
        case Errc::BudgetExceeded: return "BudgetExceeded";
        case Errc::InconsistentRadiiFilter: return "InconsistentRadiiFilter";
        case Errc::ArityMismatch: return "ArityMismatch";
        case Errc::IncompleteTable: return "IncompleteTable";
        case Errc::AsymmetricTable: return "AsymmetricTable";
        case Errc::AssociativityFailure: return "AssociativityFailure";
        case Errc::DegenerateEigenproblem: return "DegenerateEigenproblem";
        case Errc::NonIntegralResult: return "NonIntegralResult";
        case Errc::InvalidArgument: return "InvalidArgument";
        case Errc::Parse: return "Parse";
        case Errc::Internal: return "Internal";
    }
    return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
   public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }

   private:
    Errc code_;
};

}  // namespace operlab
