// mvfph: command-line front end for the Morse-set persistence pipeline.
//
// Exit codes: 0 success, 1 usage error, 2 input validation error,
// 3 property or stability violation detected.

#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "mvfph/complex.hpp"
#include "mvfph/error.hpp"
#include "mvfph/harness.hpp"
#include "mvfph/io.hpp"
#include "mvfph/markov.hpp"
#include "mvfph/persistence.hpp"

namespace {

using namespace mvfph;

constexpr int kUsage = 1;
constexpr int kInvalid = 2;
constexpr int kViolation = 3;

std::string read_source(const std::string& path) {
    if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open '" + path + "'");
    return {std::istreambuf_iterator<char>(in), {}};
}

markov::MatrixFormat pick_format(const std::string& choice, const std::string& text) {
    if (choice == "csv") return markov::MatrixFormat::csv;
    if (choice == "json") return markov::MatrixFormat::json;
    return markov::sniff_format(text);
}

markov::TransitionMatrix load_matrix(const std::string& path, const std::string& format) {
    const auto text = read_source(path);
    return markov::parse_matrix(text, pick_format(format, text));
}

// Diagram JSON is recognized by its "points" member; anything else is a matrix.
persistence::PersistenceDiagram load_diagram(const std::string& path, const std::string& format) {
    const auto text = read_source(path);
    if (markov::sniff_format(text) == markov::MatrixFormat::json && format != "csv") {
        const auto doc = io::Json::parse(text, nullptr, false);
        if (doc.is_object() && doc.contains("points")) return io::diagram_from_json(text);
    }
    return persistence::diagram_of(markov::parse_matrix(text, pick_format(format, text)));
}

void emit(const io::Json& doc) { std::cout << doc.dump(2) << '\n'; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Persistent homology of Morse decompositions of finite Markov chains"};
    app.require_subcommand(1);

    std::string format = "auto";
    app.add_option("--format", format, "Matrix input format")
        ->check(CLI::IsMember({"auto", "csv", "json"}))
        ->capture_default_str();

    std::string matrix_path;
    double gamma = 0.0;

    auto* thresholds = app.add_subcommand("thresholds", "Print the threshold grid of a matrix");
    thresholds->add_option("matrix", matrix_path, "Matrix file (CSV or JSON, '-' for stdin)")->required();

    auto* mvf_cmd = app.add_subcommand("mvf", "Print the multivector field at a threshold");
    mvf_cmd->add_option("matrix", matrix_path, "Matrix file")->required();
    mvf_cmd->add_option("--gamma", gamma, "Threshold")->required()->check(CLI::NonNegativeNumber);

    auto* morse_cmd = app.add_subcommand("morse", "Print Morse sets, indices and their order at a threshold");
    morse_cmd->add_option("matrix", matrix_path, "Matrix file")->required();
    morse_cmd->add_option("--gamma", gamma, "Threshold")->required()->check(CLI::NonNegativeNumber);

    std::string svg_path;
    auto* diagram_cmd = app.add_subcommand("diagram", "Print the persistence diagram");
    diagram_cmd->add_option("matrix", matrix_path, "Matrix file")->required();
    diagram_cmd->add_option("--svg", svg_path, "Also render the diagram to this SVG file");

    std::string left_path, right_path;
    auto* bottleneck_cmd = app.add_subcommand("bottleneck", "Bottleneck distance between two matrices or diagrams");
    bottleneck_cmd->add_option("a", left_path, "Matrix or diagram JSON")->required();
    bottleneck_cmd->add_option("b", right_path, "Matrix or diagram JSON")->required();

    std::string random_spec;
    std::size_t trials = 100;
    std::size_t multi = 0;
    std::uint64_t seed = 0;
    double delta = 0.05;
    bool positive_only = false;
    bool allow_ties = false;

    auto* stability_cmd = app.add_subcommand("stability", "Randomized perturbation stability trials");
    stability_cmd->add_option("matrix", matrix_path, "Matrix file to perturb");
    auto* stab_random = stability_cmd->add_option("--random", random_spec, "Random chains, e.g. n=5,density=0.5");
    stability_cmd->add_option("--trials", trials, "Number of trials")->capture_default_str();
    stability_cmd->add_option("--multi", multi, "Perturb l off-diagonal entries per trial");
    stability_cmd->add_option("--delta", delta, "Perturbation magnitude bound")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    stability_cmd->add_option("--seed", seed, "Base seed")->capture_default_str();
    stability_cmd->add_flag("--positive-only", positive_only, "Only increase entries");
    stability_cmd->add_flag("--allow-ties", allow_ties, "Allow perturbed values to tie other entries");
    stab_random->excludes(stability_cmd->get_option("matrix"));

    auto* properties_cmd = app.add_subcommand("properties", "Randomized filtration property checks");
    properties_cmd->add_option("--random", random_spec, "Random chains, e.g. n=5,density=0.5")->required();
    properties_cmd->add_option("--trials", trials, "Number of trials")->capture_default_str();
    properties_cmd->add_option("--seed", seed, "Base seed")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*thresholds) {
            const auto grid = markov::threshold_grid(load_matrix(matrix_path, format));
            emit(io::Json{{"grid", grid.values}});
        } else if (*mvf_cmd) {
            const auto m = load_matrix(matrix_path, format);
            const auto cx = complex::build_complex(m);
            emit(io::field_to_json(mvf::build_mvf(cx, m, gamma), cx));
        } else if (*morse_cmd) {
            const auto m = load_matrix(matrix_path, format);
            const auto cx = complex::build_complex(m);
            emit(io::morse_to_json(persistence::compute_stage(cx, m, gamma), cx));
        } else if (*diagram_cmd) {
            const auto d = persistence::diagram_of(load_matrix(matrix_path, format));
            emit(io::diagram_to_json(d));
            if (!svg_path.empty()) {
                std::ofstream out(svg_path);
                if (!out) throw ValidationError("cannot write '" + svg_path + "'");
                out << io::diagram_to_svg(d);
            }
        } else if (*bottleneck_cmd) {
            const auto a = load_diagram(left_path, format);
            const auto b = load_diagram(right_path, format);
            emit(io::bottleneck_to_json(persistence::bottleneck(a, b)));
        } else if (*stability_cmd) {
            if (matrix_path.empty() == random_spec.empty()) {
                std::cerr << "stability: give either a matrix file or --random\n";
                return kUsage;
            }
            if (trials == 0) {
                std::cerr << "stability: --trials must be positive\n";
                return kUsage;
            }
            harness::StabilityOptions options;
            options.mode = multi > 0 ? harness::StabilityMode::multi : harness::StabilityMode::single;
            options.entries = multi > 0 ? multi : 1;
            options.delta_max = delta;
            options.allow_negative = !positive_only;
            options.avoid_ties = !allow_ties;
            harness::StabilityReport report;
            if (!random_spec.empty()) {
                auto spec = harness::parse_chain_spec(random_spec);
                if (stab_random->count() && random_spec.find("seed=") == std::string::npos) spec.seed = seed;
                report = harness::stability_trials(spec, trials, options);
            } else {
                report = harness::stability_trials(load_matrix(matrix_path, format), trials, options, seed);
            }
            emit(io::stability_to_json(report));
            if (report.violations > 0) {
                std::cerr << report.violations << " stability violation(s)\n";
                return kViolation;
            }
        } else if (*properties_cmd) {
            if (trials == 0) {
                std::cerr << "properties: --trials must be positive\n";
                return kUsage;
            }
            auto spec = harness::parse_chain_spec(random_spec);
            if (random_spec.find("seed=") == std::string::npos) spec.seed = seed;
            const auto report = harness::property_trials(spec, trials);
            emit(io::properties_to_json(report));
            if (report.failures > 0) {
                std::cerr << report.failures << " property failure(s)\n";
                return kViolation;
            }
        }
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kInvalid;
    } catch (const ValidationError& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return kInvalid;
    } catch (const InvariantError& e) {
        std::cerr << "invariant violated: " << e.what() << '\n';
        return kViolation;
    }
    return 0;
}
