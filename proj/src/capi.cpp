#include "bilops.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "bilops/engine.hpp"
#include "bilops/errors.hpp"

struct bilops_engine {
    bilops::EngineOptions options;
    std::string last_error;
};

extern "C" {

int bilops_abi_version(void) { return 1; }

bilops_engine* bilops_engine_create(int parallelism) {
    auto* engine = new (std::nothrow) bilops_engine;
    if (!engine) return nullptr;
    if (parallelism <= 0) {
        parallelism = 1;
        if (const char* env = std::getenv("BILOPS_JOBS")) {
            char* end = nullptr;
            long v = std::strtol(env, &end, 10);
            if (end && *end == '\0' && v >= 1 && v <= 1024) parallelism = static_cast<int>(v);
        }
    }
    engine->options.parallelism = parallelism;
    return engine;
}

void bilops_engine_destroy(bilops_engine* engine) { delete engine; }

bilops_status bilops_run(bilops_engine* engine, const char* request_json,
                         char** result_out) {
    if (result_out) *result_out = nullptr;
    if (!engine) return BILOPS_ERR_BAD_HANDLE;
    if (!request_json || !result_out) {
        engine->last_error = "null argument";
        return BILOPS_ERR_INVALID_REQUEST;
    }
    try {
        std::string report = bilops::run_command(request_json, engine->options);
        char* buf = static_cast<char*>(std::malloc(report.size() + 1));
        if (!buf) {
            engine->last_error = "out of memory";
            return BILOPS_ERR_INTERNAL;
        }
        std::memcpy(buf, report.c_str(), report.size() + 1);
        *result_out = buf;
        engine->last_error.clear();
        return BILOPS_OK;
    } catch (const bilops::TruncationError& e) {
        engine->last_error = e.what();
        return BILOPS_ERR_TRUNCATION;
    } catch (const bilops::ConfigError& e) {
        engine->last_error = e.what();
        return BILOPS_ERR_INVALID_REQUEST;
    } catch (const std::exception& e) {
        engine->last_error = e.what();
        return BILOPS_ERR_INTERNAL;
    }
}

const char* bilops_last_error(const bilops_engine* engine) {
    return engine ? engine->last_error.c_str() : "bad handle";
}

void bilops_string_free(char* s) { std::free(s); }

}  // extern "C"
