// Command-line front end.  Talks to the library exclusively through the
// C interface in bhlab.h.
#include <cstdio>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "bhlab.h"

namespace {

struct config_deleter {
    void operator()(bhl_config* c) const { bhl_config_free(c); }
};
struct result_deleter {
    void operator()(bhl_result* r) const { bhl_result_free(r); }
};

// print the failure with its category name; exit code = category
int fail_with(const char* stage) {
    const int code = bhl_last_error_code();
    std::fprintf(stderr, "error (%s, %s): %s\n", stage, bhl_errc_name(code),
                 bhl_last_error());
    return code != 0 ? code : BHL_ERR_INTERNAL;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for a nonlocal wave model and its "
                 "slow-time coordinate transform"};
    app.set_version_flag("--version", bhl_version());
    app.require_subcommand(1);

    std::string config_path, out_dir = "out";
    std::vector<std::string> overrides;
    bool quiet = false;

    // keys collected per subcommand; converted to --set pairs below
    std::map<std::string, std::string> kv;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "key = value config file");
        sub->add_option("-o,--out", out_dir, "output directory")
            ->capture_default_str();
        sub->add_option("--set", overrides, "extra config override key=value")
            ->expected(-1);
        sub->add_flag("-q,--quiet", quiet, "suppress the summary printout");
    };
    auto add_key = [&](CLI::App* sub, const char* flag, const char* key, const char* help) {
        sub->add_option_function<std::string>(
            flag, [&kv, key](const std::string& v) { kv[key] = v; }, help);
    };

    CLI::App* sim = app.add_subcommand("simulate", "integrate one initial condition");
    add_common(sim);
    add_key(sim, "--mode", "simulate.mode", "bh | burgers | linear | g");
    add_key(sim, "--eps", "eps", "nonlinearity strength");
    add_key(sim, "--n", "grid.n", "grid points");
    add_key(sim, "--profile", "data.profile", "initial profile name");
    add_key(sim, "--amplitude", "data.amplitude", "initial amplitude");
    add_key(sim, "--t-end", "time.t_end", "integration horizon");
    add_key(sim, "--dt", "time.dt", "fixed step (with --policy fixed)");
    add_key(sim, "--policy", "time.policy", "fixed | cfl");

    CLI::App* sweep = app.add_subcommand("sweep", "breaking-time scan over eps");
    add_common(sweep);
    add_key(sweep, "--eps-list", "eps_list", "comma-separated eps values, decreasing");
    add_key(sweep, "--mode", "sweep.mode", "bh | burgers | both");
    add_key(sweep, "--n", "grid.n", "grid points");
    add_key(sweep, "--profile", "data.profile", "initial profile name");

    CLI::App* cross = app.add_subcommand(
        "crosscheck", "evolve the same data in both coordinate systems");
    add_common(cross);
    add_key(cross, "--eps", "eps", "nonlinearity strength");
    add_key(cross, "--n-list", "cross.n_list", "resolutions, comma separated");
    add_key(cross, "--dt-list", "cross.dt_list", "matching steps, comma separated");
    add_key(cross, "--t-end", "cross.t_end", "comparison horizon");

    CLI::App* conv = app.add_subcommand("convergence", "discretization order studies");
    add_common(conv);
    add_key(conv, "--study", "conv.study", "rotation | spatial | quadrature | all");
    add_key(conv, "--eps", "eps", "nonlinearity strength");

    CLI::App* consts = app.add_subcommand("constants", "print the estimate constants");
    add_common(consts);
    add_key(consts, "--E0", "E0", "amplitude functional (computed from data if absent)");
    add_key(consts, "--profile", "data.profile", "initial profile name");

    CLI::App* demo = app.add_subcommand("transform-demo",
                                        "solve the coordinate change for one profile");
    add_common(demo);
    add_key(demo, "--eps", "eps", "nonlinearity strength");
    add_key(demo, "--n", "grid.n", "grid points");
    add_key(demo, "--profile", "data.profile", "initial profile name");
    add_key(demo, "--amplitude", "data.amplitude", "initial amplitude");

    CLI11_PARSE(app, argc, argv);

    std::unique_ptr<bhl_config, config_deleter> cfg(bhl_config_new());
    if (!cfg) {
        std::fprintf(stderr, "error (internal): out of memory\n");
        return BHL_ERR_INTERNAL;
    }
    if (!config_path.empty() && bhl_config_load(cfg.get(), config_path.c_str()) != 0)
        return fail_with("config");
    const std::string exp = app.get_subcommands().front()->get_name();
    bhl_config_set(cfg.get(), "experiment", exp.c_str());
    for (const auto& [k, v] : kv) bhl_config_set(cfg.get(), k.c_str(), v.c_str());
    for (const std::string& ov : overrides) {
        const auto pos = ov.find('=');
        if (pos == std::string::npos) {
            std::fprintf(stderr, "error (config): --set expects key=value, got '%s'\n",
                         ov.c_str());
            return BHL_ERR_CONFIG;
        }
        bhl_config_set(cfg.get(), ov.substr(0, pos).c_str(), ov.substr(pos + 1).c_str());
    }

    std::unique_ptr<bhl_result, result_deleter> res(bhl_run(cfg.get()));
    if (!res) return fail_with(exp.c_str());

    if (const int rc = bhl_result_write(res.get(), out_dir.c_str()); rc != 0)
        return fail_with("write");
    if (!quiet) {
        std::fputs(bhl_result_text(res.get()), stdout);
        for (size_t i = 0; i < bhl_result_artifact_count(res.get()); ++i)
            std::printf("wrote %s/%s\n", out_dir.c_str(),
                        bhl_result_artifact_name(res.get(), i));
    }
    return 0;
}
