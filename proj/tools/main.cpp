// Command-line front end: scenario-driven field evaluation, Green tensors,
// angular-spectrum propagation and the validation suite.

#include <CLI11.hpp>

#include "elhs/scenario.hpp"

int main(int argc, char** argv) {
    CLI::App app{"elhs - elastic half-space scattering toolkit"};
    app.require_subcommand(1);

    std::string scenario_path, out_dir;
    elhs::RunOptions options;
    double tolerance = -1.0;
    long long seed = -1;

    const std::vector<std::string> names = {"reflect", "propagate", "greens", "beam", "validate"};
    const std::vector<std::string> descriptions = {
        "evaluate incident + reflected plane-wave fields on a grid",
        "angular-spectrum propagation of a reflected trace",
        "half-space Green tensor for a point source",
        "spectral beam incidence (incident + reflected)",
        "run the validation suite and write report.json"};
    for (size_t i = 0; i < names.size(); ++i) {
        CLI::App* sub = app.add_subcommand(names[i], descriptions[i]);
        sub->add_option("--scenario", scenario_path, "scenario file path")->required();
        sub->add_option("--out", out_dir, "output directory")->required();
        sub->add_option("--format", options.format, "field file format")
            ->check(CLI::IsMember({"text", "binary"}))
            ->capture_default_str();
        sub->add_option("--threads", options.threads, "worker threads for grid evaluation")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        sub->add_option("--tolerance", tolerance, "quadrature tolerance override");
        sub->add_option("--seed", seed, "seed override");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : elhs::kParseError;
    }

    if (tolerance > 0.0) options.tolerance = tolerance;
    if (seed >= 0) options.seed = static_cast<std::uint64_t>(seed);

    const std::string sub = app.get_subcommands().front()->get_name();
    return elhs::run_scenario(sub, scenario_path, options, out_dir);
}
