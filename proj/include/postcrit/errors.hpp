#pragma once

#include <stdexcept>
#include <string>

namespace pcs {

// Base for every failure the library reports on purpose. kind() is the
// short machine-readable tag the CLI puts in its error object.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(what), kind_(std::move(kind)) {}
    const std::string& kind() const { return kind_; }

private:
    std::string kind_;
};

// A value was requested beyond what the data can answer: past the end of a
// table, past the level cap of a lazily built sequence, past a window.
struct HorizonError : Error {
    explicit HorizonError(const std::string& w) : Error("horizon", w) {}
};

// Precondition failure on the mathematical input.
struct DomainError : Error {
    explicit DomainError(const std::string& w) : Error("domain", w) {}
};

// A truncated word or path prefix does not determine the answer.
struct UnresolvedError : Error {
    explicit UnresolvedError(const std::string& w) : Error("unresolved", w) {}
};

// Floating point results stopped being trustworthy.
struct PrecisionError : Error {
    explicit PrecisionError(const std::string& w) : Error("precision", w) {}
};

// Extracted data contradicts itself (e.g. a cutting-time gap that is not a
// cutting time).
struct InconsistencyError : Error {
    explicit InconsistencyError(const std::string& w) : Error("inconsistent", w) {}
};

struct NotFoundError : Error {
    explicit NotFoundError(const std::string& w) : Error("not-found", w) {}
};

// Malformed user input (JSON, word strings, ...). The CLI maps this to exit 1.
struct ParseError : Error {
    explicit ParseError(const std::string& w) : Error("parse", w) {}
};

}  // namespace pcs
