#pragma once

#include <stdexcept>
#include <string>

namespace cpsim {

// Machine-readable error categories. The CLI maps these to exit codes and a
// JSON error object on stderr.
enum class ErrorCategory {
    config,      // invalid or unreadable configuration
    capacity,    // scenario does not fit the map
    lookup,      // unknown entity or object id
    io,          // filesystem failures
    checkpoint,  // model file unreadable or shape mismatch
    invalid_argument,
    internal,
};

inline const char* to_string(ErrorCategory c) {
    switch (c) {
        case ErrorCategory::config: return "config";
        case ErrorCategory::capacity: return "capacity";
        case ErrorCategory::lookup: return "lookup";
        case ErrorCategory::io: return "io";
        case ErrorCategory::checkpoint: return "checkpoint";
        case ErrorCategory::invalid_argument: return "invalid_argument";
        case ErrorCategory::internal: return "internal";
    }
    return "internal";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCategory category, const std::string& message)
        : std::runtime_error(message), category_(category) {}

    ErrorCategory category() const { return category_; }

    int exit_code() const {
        switch (category_) {
            case ErrorCategory::config: return 2;
            case ErrorCategory::capacity: return 3;
            case ErrorCategory::lookup: return 4;
            case ErrorCategory::io: return 5;
            case ErrorCategory::checkpoint: return 6;
            case ErrorCategory::invalid_argument: return 7;
            case ErrorCategory::internal: return 10;
        }
        return 10;
    }

private:
    ErrorCategory category_;
};

}  // namespace cpsim
