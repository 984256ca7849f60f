#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "qmac/config.hpp"
#include "qmac/errors.hpp"
#include "qmac/runner.hpp"
#include "qmac/validate.hpp"
#include "qmac/version.hpp"

namespace {

int run_command(const std::string& config_path, const std::string& out_dir, int workers) {
    qmac::RunConfig cfg = qmac::parse_config_file(config_path);
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (workers > 0) cfg.workers = workers;
    const qmac::RunResult result = qmac::run_tasks(cfg);
    for (const auto& file : result.files_written) std::printf("wrote %s\n", file.c_str());
    return 0;
}

int validate_command(bool fast) {
    const auto checks = qmac::run_validation(fast);
    std::printf("%-45s %-6s %-12s %-12s\n", "check", "status", "measured", "threshold");
    for (const auto& c : checks)
        std::printf("%-45s %-6s %-12.3e %-12.3e %s\n", c.name.c_str(),
                    c.passed ? "pass" : "FAIL", c.measured, c.threshold, c.detail.c_str());
    return qmac::all_passed(checks) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"capacity regions and receiver simulation for thermal-loss "
                 "multiple-access channels"};
    app.require_subcommand(1);

    std::string config_path, out_dir;
    int workers = 0;
    CLI::App* run = app.add_subcommand("run", "execute a JSON config and write artifacts");
    run->add_option("config", config_path, "path to the run configuration")->required();
    run->add_option("--out", out_dir, "output directory (overrides the config)");
    run->add_option("--workers", workers, "worker threads for sweeps");

    bool fast = false;
    CLI::App* validate =
        app.add_subcommand("validate", "run the oracle and invariant cross-checks");
    validate->add_flag("--fast", fast, "skip the slower Fock-basis comparisons");

    CLI::App* version = app.add_subcommand("version", "print the tool version");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return run_command(config_path, out_dir, workers);
        if (validate->parsed()) return validate_command(fast);
        if (version->parsed()) {
            std::printf("qmac %s\n", qmac::kVersion);
            return 0;
        }
    } catch (const qmac::physicality_error& err) {
        std::fprintf(stderr, "physicality error: %s\n", err.what());
        return 3;
    } catch (const qmac::validation_error& err) {
        std::fprintf(stderr, "validation error: %s\n", err.what());
        return 2;
    } catch (const qmac::resource_error& err) {
        std::fprintf(stderr, "resource error: %s\n", err.what());
        return 2;
    } catch (const std::exception& err) {
        std::fprintf(stderr, "error: %s\n", err.what());
        return 1;
    }
    return 0;
}
