#pragma once

#include <stdexcept>
#include <string>

namespace curate {

// Fatal errors carry a stable machine-readable code ("corrupt_model",
// "no_thresholds_for_lang", ...) next to the human message.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

    const std::string& code() const { return code_; }

private:
    std::string code_;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace curate
