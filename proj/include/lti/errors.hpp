#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace lti {

/// Broad failure category, used by callers (e.g. the CLI) to map errors
/// to exit codes: Input covers malformed data and violated preconditions,
/// Numerical covers conditions detected during computation.
enum class ErrorCategory { Input, Numerical };

/// Base of every error thrown by the toolkit. Carries a stable short name
/// suitable for machine-readable reports.
class Error : public std::runtime_error {
public:
    Error(std::string name, ErrorCategory category, const std::string& what)
        : std::runtime_error(what), name_(std::move(name)), category_(category) {}

    const std::string& name() const noexcept { return name_; }
    ErrorCategory category() const noexcept { return category_; }

private:
    std::string   name_;
    ErrorCategory category_;
};

struct SingularMatrix : Error {
    explicit SingularMatrix(const std::string& what)
        : Error("SingularMatrix", ErrorCategory::Numerical, what) {}
};

struct ConvergenceFailure : Error {
    explicit ConvergenceFailure(const std::string& what)
        : Error("ConvergenceFailure", ErrorCategory::Numerical, what) {}
};

struct SingularGramian : Error {
    explicit SingularGramian(const std::string& what)
        : Error("SingularGramian", ErrorCategory::Numerical, what) {}
};

struct Uncontrollable : Error {
    explicit Uncontrollable(const std::string& what)
        : Error("Uncontrollable", ErrorCategory::Numerical, what) {}
};

struct MultiInput : Error {
    explicit MultiInput(const std::string& what)
        : Error("MultiInput", ErrorCategory::Numerical, what) {}
};

struct NotPositiveDefinite : Error {
    explicit NotPositiveDefinite(const std::string& what)
        : Error("NotPositiveDefinite", ErrorCategory::Numerical, what) {}
};

struct IndefiniteWeight : Error {
    explicit IndefiniteWeight(const std::string& what)
        : Error("IndefiniteWeight", ErrorCategory::Numerical, what) {}
};

struct DimensionMismatch : Error {
    explicit DimensionMismatch(const std::string& what)
        : Error("DimensionMismatch", ErrorCategory::Input, what) {}
};

struct DimensionError : Error {
    explicit DimensionError(const std::string& what)
        : Error("DimensionError", ErrorCategory::Input, what) {}
};

struct ParseError : Error {
    explicit ParseError(const std::string& what)
        : Error("ParseError", ErrorCategory::Input, what) {}
};

struct InvalidTime : Error {
    explicit InvalidTime(const std::string& what)
        : Error("InvalidTime", ErrorCategory::Input, what) {}
};

struct InvalidGrid : Error {
    explicit InvalidGrid(const std::string& what)
        : Error("InvalidGrid", ErrorCategory::Input, what) {}
};

struct InvalidHorizon : Error {
    explicit InvalidHorizon(const std::string& what)
        : Error("InvalidHorizon", ErrorCategory::Input, what) {}
};

struct GridMismatch : Error {
    explicit GridMismatch(const std::string& what)
        : Error("GridMismatch", ErrorCategory::Input, what) {}
};

struct NonSymmetricWeight : Error {
    explicit NonSymmetricWeight(const std::string& what)
        : Error("NonSymmetricWeight", ErrorCategory::Input, what) {}
};

struct TimeDomainMismatch : Error {
    explicit TimeDomainMismatch(const std::string& what)
        : Error("TimeDomainMismatch", ErrorCategory::Input, what) {}
};

struct NonFiniteValue : Error {
    explicit NonFiniteValue(const std::string& what)
        : Error("NonFiniteValue", ErrorCategory::Input, what) {}
};

} // namespace lti
