#pragma once

#include <stdexcept>
#include <string>

namespace bredon {

/// Error with a stable machine-readable code ("NOT_ADMISSIBLE", ...) plus a
/// human-readable witness message.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(code + ": " + what), code_(std::move(code)) {}

    const std::string& code() const { return code_; }

private:
    std::string code_;
};

} // namespace bredon
