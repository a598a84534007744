#ifndef ALGINT_ERRORS_HPP
#define ALGINT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace algint {

// Base class for all library errors.  Anything escaping the public API that
// is not an Error indicates a bug (the CLI maps those to exit code 4).
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct DegenerateInput : Error {
    explicit DegenerateInput(const std::string& m) : Error("degenerate input: " + m) {}
};

struct SingularModel : Error {
    explicit SingularModel(const std::string& m) : Error("singular model: " + m) {}
};

struct UnsupportedCurveClass : Error {
    explicit UnsupportedCurveClass(const std::string& m) : Error("unsupported curve class: " + m) {}
};

struct UnsupportedBaseField : Error {
    explicit UnsupportedBaseField(const std::string& m) : Error("unsupported base field: " + m) {}
};

struct UnsupportedJacobian : Error {
    explicit UnsupportedJacobian(const std::string& m) : Error("unsupported jacobian: " + m) {}
};

struct FibralComponent : Error {
    explicit FibralComponent(const std::string& m) : Error("fibral component: " + m) {}
};

struct PrecisionExhausted : Error {
    explicit PrecisionExhausted(const std::string& m) : Error("precision exhausted: " + m) {}
};

struct PrecisionTooLow : Error {
    explicit PrecisionTooLow(const std::string& m) : Error("precision too low: " + m) {}
};

struct PathTooCloseToSingularity : Error {
    explicit PathTooCloseToSingularity(const std::string& m)
        : Error("path too close to singularity: " + m) {}
};

struct BudgetExhausted : Error {
    explicit BudgetExhausted(const std::string& m) : Error("budget exhausted: " + m) {}
};

// A verified certificate failed an independent re-check, or an asserted-complete
// refutation was contradicted.  Never recoverable; CLI exit code 4.
struct InternalInconsistency : Error {
    explicit InternalInconsistency(const std::string& m) : Error("internal inconsistency: " + m) {}
};

// Problem-file syntax or semantics error with source position.
struct ParseError : Error {
    int line;
    int col;
    ParseError(int line_, int col_, const std::string& m)
        : Error("parse error at " + std::to_string(line_) + ":" + std::to_string(col_) + ": " + m),
          line(line_), col(col_) {}
};

} // namespace algint

#endif
