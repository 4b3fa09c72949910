#ifndef BILOPS_ERRORS_HPP
#define BILOPS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace bilops {

// Invalid request / argument domain violation.  CLI exit code 2.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// A fiber basis index past the truncation bound was touched.  The message
// names the bound that would have sufficed.  CLI exit code 3.
struct TruncationError : std::runtime_error {
    int needed_bound;
    explicit TruncationError(const std::string& what, int needed = -1)
        : std::runtime_error(what), needed_bound(needed) {}
};

// Operator applied to fields that do not match its signature.
struct SignatureError : ConfigError {
    explicit SignatureError(const std::string& what) : ConfigError(what) {}
};

}  // namespace bilops

#endif
