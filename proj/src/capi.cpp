#include "bhlab.h"

#include <filesystem>
#include <fstream>
#include <string>

#include "bhlab/error.hpp"
#include "bhlab/experiments.hpp"
#include "bhlab/io.hpp"
#include "bhlab/version.hpp"

struct bhl_config {
    bhlab::kv_map kv;
};

struct bhl_result {
    bhlab::run_result rr;
};

namespace {

thread_local std::string last_error;
thread_local int last_code = BHL_OK;

int code_of(bhlab::errc c) {
    switch (c) {
        case bhlab::errc::invalid_argument: return BHL_ERR_INVALID_ARGUMENT;
        case bhlab::errc::config: return BHL_ERR_CONFIG;
        case bhlab::errc::precondition: return BHL_ERR_PRECONDITION;
        case bhlab::errc::regime: return BHL_ERR_REGIME;
        case bhlab::errc::numeric: return BHL_ERR_NUMERIC;
        case bhlab::errc::io: return BHL_ERR_IO;
        case bhlab::errc::internal: return BHL_ERR_INTERNAL;
    }
    return BHL_ERR_INTERNAL;
}

// run fn, translating exceptions into codes + last_error
template <typename Fn>
int guarded(Fn&& fn) {
    try {
        last_error.clear();
        last_code = BHL_OK;
        fn();
        return BHL_OK;
    } catch (const bhlab::error& e) {
        last_error = e.what();
        last_code = code_of(e.category());
    } catch (const std::exception& e) {
        last_error = e.what();
        last_code = BHL_ERR_INTERNAL;
    } catch (...) {
        last_error = "unknown exception";
        last_code = BHL_ERR_INTERNAL;
    }
    return last_code;
}

int bad_argument(const std::string& msg) {
    last_error = msg;
    last_code = BHL_ERR_INVALID_ARGUMENT;
    return last_code;
}

}  // namespace

extern "C" {

const char* bhl_version(void) { return bhlab::version_string; }

const char* bhl_errc_name(int code) {
    switch (code) {
        case BHL_OK: return "ok";
        case BHL_ERR_INVALID_ARGUMENT: return "invalid_argument";
        case BHL_ERR_CONFIG: return "config";
        case BHL_ERR_PRECONDITION: return "precondition";
        case BHL_ERR_REGIME: return "regime";
        case BHL_ERR_NUMERIC: return "numeric";
        case BHL_ERR_IO: return "io";
        case BHL_ERR_INTERNAL: return "internal";
    }
    return "unknown";
}

const char* bhl_last_error(void) { return last_error.c_str(); }

int bhl_last_error_code(void) { return last_code; }

bhl_config* bhl_config_new(void) { return new (std::nothrow) bhl_config; }

void bhl_config_free(bhl_config* cfg) { delete cfg; }

int bhl_config_set(bhl_config* cfg, const char* key, const char* value) {
    if (!cfg || !key || !value) return bad_argument("bhl_config_set: NULL argument");
    return guarded([&] { cfg->kv[key] = value; });
}

int bhl_config_load(bhl_config* cfg, const char* path) {
    if (!cfg || !path) return bad_argument("bhl_config_load: NULL argument");
    return guarded([&] {
        for (const auto& [k, v] : bhlab::parse_config_file(path)) cfg->kv[k] = v;
    });
}

bhl_result* bhl_run(const bhl_config* cfg) {
    if (!cfg) {
        bad_argument("bhl_run: NULL config");
        return nullptr;
    }
    bhl_result* res = nullptr;
    const int rc = guarded([&] {
        auto out = std::make_unique<bhl_result>();
        out->rr = bhlab::run_experiment(cfg->kv);
        res = out.release();
    });
    return rc == BHL_OK ? res : nullptr;
}

void bhl_result_free(bhl_result* res) { delete res; }

int bhl_result_scalar(const bhl_result* res, const char* name, double* out) {
    if (!res || !name || !out) return bad_argument("bhl_result_scalar: NULL argument");
    const auto it = res->rr.scalars.find(name);
    if (it == res->rr.scalars.end())
        return bad_argument(std::string("no scalar named '") + name + "'");
    *out = it->second;
    return BHL_OK;
}

const char* bhl_result_text(const bhl_result* res) {
    return res ? res->rr.text.c_str() : "";
}

size_t bhl_result_artifact_count(const bhl_result* res) {
    return res ? res->rr.artifacts.size() : 0;
}

const char* bhl_result_artifact_name(const bhl_result* res, size_t index) {
    if (!res || index >= res->rr.artifacts.size()) return nullptr;
    return res->rr.artifacts[index].name.c_str();
}

int bhl_result_write(const bhl_result* res, const char* dir) {
    if (!res || !dir) return bad_argument("bhl_result_write: NULL argument");
    return guarded([&] {
        std::error_code ec;
        std::filesystem::create_directories(dir, ec);
        if (ec) bhlab::fail(bhlab::errc::io, std::string("cannot create ") + dir);
        for (const auto& a : res->rr.artifacts)
            bhlab::write_text_file((std::filesystem::path(dir) / a.name).string(), a.content);
    });
}

}  // extern "C"
