#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nhm {

enum class ErrorKind {
    NonFinite,
    StepSizeUnderflow,
    NegativeDensity,
    DimensionMismatch,
    SteeringOutOfRange,
    DomainExceeded,
    SingularGram,
    UnknownColumn,
    InvalidArgument,
    Config,
};

constexpr std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::StepSizeUnderflow: return "StepSizeUnderflow";
    case ErrorKind::NegativeDensity: return "NegativeDensity";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::SteeringOutOfRange: return "SteeringOutOfRange";
    case ErrorKind::DomainExceeded: return "DomainExceeded";
    case ErrorKind::SingularGram: return "SingularGram";
    case ErrorKind::UnknownColumn: return "UnknownColumn";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Config: return "Config";
    }
    return "Unknown";
}

/// True for failures of the numerics themselves (as opposed to bad input).
constexpr bool is_numerical_failure(ErrorKind kind) {
    return kind == ErrorKind::NonFinite || kind == ErrorKind::StepSizeUnderflow ||
           kind == ErrorKind::NegativeDensity;
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace nhm
