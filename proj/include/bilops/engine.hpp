#ifndef BILOPS_ENGINE_HPP
#define BILOPS_ENGINE_HPP

#include <string>

namespace bilops {

struct EngineOptions {
    int parallelism = 1;
};

/// Execute one request (JSON text with a "command" field) and return the
/// report in the requested format.  Throws ConfigError for malformed
/// requests and TruncationError when a fiber bound is exceeded.
std::string run_command(const std::string& request_json, const EngineOptions& opts);

}  // namespace bilops

#endif
