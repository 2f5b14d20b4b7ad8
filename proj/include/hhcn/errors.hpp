#pragma once

#include <stdexcept>
#include <string>

namespace hhcn {

// Root of the library error hierarchy. kind() is a stable machine-readable
// name surfaced in CLI reports.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& message)
        : std::runtime_error(message), kind_(std::move(kind)) {}
    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

// Malformed or out-of-contract inputs (CLI exit code 2).
class InputError : public Error {
    using Error::Error;
};

// Well-formed inputs on which the requested computation has no answer
// (CLI exit code 3).
class ComputeError : public Error {
    using Error::Error;
};

struct InvalidArgument : InputError {
    explicit InvalidArgument(const std::string& m) : InputError("InvalidArgument", m) {}
};
struct DepthOutOfRange : InputError {
    explicit DepthOutOfRange(const std::string& m) : InputError("DepthOutOfRange", m) {}
};
struct CountExceedsLevel : InputError {
    explicit CountExceedsLevel(const std::string& m) : InputError("CountExceedsLevel", m) {}
};
struct IdMismatch : InputError {
    explicit IdMismatch(const std::string& m) : InputError("IdMismatch", m) {}
};
struct RootNotInGraph : InputError {
    explicit RootNotInGraph(const std::string& m) : InputError("RootNotInGraph", m) {}
};
struct ConfigTooShort : InputError {
    explicit ConfigTooShort(const std::string& m) : InputError("ConfigTooShort", m) {}
};
struct NodeAtBaseStation : InputError {
    explicit NodeAtBaseStation(const std::string& m) : InputError("NodeAtBaseStation", m) {}
};

struct KraftViolated : ComputeError {
    explicit KraftViolated(const std::string& m) : ComputeError("KraftViolated", m) {}
};
struct Disconnected : ComputeError {
    explicit Disconnected(const std::string& m) : ComputeError("Disconnected", m) {}
};
struct Infeasible : ComputeError {
    explicit Infeasible(const std::string& m) : ComputeError("Infeasible", m) {}
};
struct NoAgreement : ComputeError {
    explicit NoAgreement(const std::string& m) : ComputeError("NoAgreement", m) {}
};
struct InconsistentInputs : ComputeError {
    explicit InconsistentInputs(const std::string& m) : ComputeError("InconsistentInputs", m) {}
};
struct Unreachable : ComputeError {
    explicit Unreachable(const std::string& m) : ComputeError("Unreachable", m) {}
};

}  // namespace hhcn
