#include "catgen/errors.hpp"
#include "catgen/scenario.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <string>

int main(int argc, char** argv) {
    CLI::App app{"conditional photon addition and subtraction toolkit"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    double tolerance = -1.0;
    bool force_numeric = false;
    bool force_analytic = false;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "scenario config file")
            ->required();
        sub->add_option("--out", out_dir, "output directory");
        sub->add_option("--tolerance", tolerance,
                        "override compare.tolerance");
        sub->add_flag("--numeric", force_numeric,
                      "force the numeric pipeline route");
        sub->add_flag("--analytic", force_analytic,
                      "force the closed-form route");
    };
    for (const char* name :
         {"generate", "probability", "grid", "detector", "compare"})
        add_common(app.add_subcommand(
            name, std::string("run the ") + name + " command"));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    if (force_numeric && force_analytic) {
        std::fprintf(stderr,
                     "error: --numeric and --analytic are exclusive\n");
        return 1;
    }

    catgen::RunOptions opts;
    opts.command = app.get_subcommands().front()->get_name();
    opts.out_dir = out_dir;
    opts.route_override =
        force_numeric ? "numeric" : (force_analytic ? "analytic" : "");
    opts.tolerance_override = tolerance;

    try {
        catgen::ScenarioConfig cfg = catgen::load_config(config_path);
        return catgen::run_scenario(cfg, opts);
    } catch (const catgen::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 1;
    } catch (const catgen::ImprobableOutcomeError& e) {
        std::fprintf(stderr, "improbable outcome: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
