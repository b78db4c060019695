#pragma once

#include <stdexcept>
#include <string>

namespace taco {

/// Base class for all typed analysis errors. `name()` is the stable
/// machine-readable identifier the CLI prints on stderr.
class Error : public std::runtime_error {
public:
    Error(const char* name, const std::string& message)
        : std::runtime_error(message), name_(name) {}

    const char* name() const noexcept { return name_; }

private:
    const char* name_;
};

struct UnknownChannel : Error {
    explicit UnknownChannel(const std::string& msg) : Error("UnknownChannel", msg) {}
};

struct NonPositiveQuantity : Error {
    explicit NonPositiveQuantity(const std::string& msg) : Error("NonPositiveQuantity", msg) {}
};

struct NonFiniteValue : Error {
    explicit NonFiniteValue(const std::string& msg) : Error("NonFiniteValue", msg) {}
};

struct EmptyOperation : Error {
    explicit EmptyOperation(const std::string& msg) : Error("EmptyOperation", msg) {}
};

struct NonEffectiveOperation : Error {
    explicit NonEffectiveOperation(const std::string& msg) : Error("NonEffectiveOperation", msg) {}
};

struct NotReducedOperation : Error {
    explicit NotReducedOperation(const std::string& msg) : Error("NotReducedOperation", msg) {}
};

struct ParseError : Error {
    explicit ParseError(const std::string& msg) : Error("ParseError", msg) {}
};

struct ValidationError : Error {
    explicit ValidationError(const std::string& msg) : Error("ValidationError", msg) {}
};

struct NonUniformGrid : Error {
    explicit NonUniformGrid(const std::string& msg) : Error("NonUniformGrid", msg) {}
};

struct IoError : Error {
    explicit IoError(const std::string& msg) : Error("IoError", msg) {}
};

} // namespace taco
