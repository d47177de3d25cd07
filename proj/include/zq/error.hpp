#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace zq {

/// Error with a stable machine-readable kind and the process exit code the
/// CLI maps it to (2 input, 3 precondition, 4 internal invariant breach).
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& msg, int exit_code)
        : std::runtime_error(msg), kind_(std::move(kind)), exit_code_(exit_code) {}

    const std::string& kind() const { return kind_; }
    int exit_code() const { return exit_code_; }

private:
    std::string kind_;
    int exit_code_;
};

inline Error input_error(const std::string& msg) { return Error("invalid_input", msg, 2); }

inline Error precondition_error(const std::string& kind, const std::string& msg) {
    return Error(kind, msg, 3);
}

inline Error internal_error(const std::string& kind, const std::string& msg) {
    return Error(kind, msg, 4);
}

}  // namespace zq
