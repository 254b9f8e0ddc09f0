#pragma once

#include <stdexcept>
#include <string>

namespace biaxial {

struct DegenerateInput : std::runtime_error {
    explicit DegenerateInput(const std::string& what) : std::runtime_error(what) {}
};

struct ConstraintViolated : std::runtime_error {
    explicit ConstraintViolated(const std::string& what) : std::runtime_error(what) {}
};

struct StepRejectedRepeatedly : std::runtime_error {
    explicit StepRejectedRepeatedly(const std::string& what) : std::runtime_error(what) {}
};

struct NotConverged : std::runtime_error {
    explicit NotConverged(const std::string& what) : std::runtime_error(what) {}
};

struct CFLViolated : std::runtime_error {
    explicit CFLViolated(const std::string& what) : std::runtime_error(what) {}
};

struct PoissonNotConverged : std::runtime_error {
    explicit PoissonNotConverged(const std::string& what) : std::runtime_error(what) {}
};

struct WindowTooShort : std::runtime_error {
    explicit WindowTooShort(const std::string& what) : std::runtime_error(what) {}
};

struct UnknownRecipe : std::runtime_error {
    explicit UnknownRecipe(const std::string& what) : std::runtime_error(what) {}
};

struct ParseError : std::runtime_error {
    int line;
    ParseError(int line_, const std::string& what) : std::runtime_error(what), line(line_) {}
};

struct ValidationError : std::runtime_error {
    std::string field;
    ValidationError(std::string field_, const std::string& what)
        : std::runtime_error(what), field(std::move(field_)) {}
};

struct FormatError : std::runtime_error {
    explicit FormatError(const std::string& what) : std::runtime_error(what) {}
};

struct TruncatedFile : std::runtime_error {
    explicit TruncatedFile(const std::string& what) : std::runtime_error(what) {}
};

struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace biaxial
