#pragma once

#include <stdexcept>
#include <string>

namespace grf {

enum class Errc {
    NotPrime,
    FieldTooLarge,
    DivisionByZero,
    DimensionMismatch,
    TruncationExceeded,
    KindMismatch,
    NotComposable,
    SiteMismatch,
    InsufficientRange,
    RangeMismatch,
    NonFunctorialData,
    UnsupportedSiteDuality,
    SubcategoryNotComplete,
    BudgetExceeded,
    NotNatural,
    HypothesisViolated,
    UnknownSuite,
    ConfigError,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
public:
    Error(Errc c, const std::string& what)
        : std::runtime_error(std::string(errc_name(c)) + ": " + what), code_(c) {}
    Errc code() const { return code_; }

private:
    Errc code_;
};

}  // namespace grf
