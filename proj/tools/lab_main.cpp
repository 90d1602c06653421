#include <exception>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "lab/config.hpp"
#include "lab/runner.hpp"
#include "lab/svg.hpp"
#include "zetalab/errors.hpp"

namespace {

using nlohmann::json;

// Machine-readable failure channel: one JSON object on stdout, exit code 1.
int fail(const std::string& code, const std::string& message) {
    std::cout << json{{"ok", false}, {"error", code}, {"message", message}}.dump() << "\n";
    return 1;
}

template <typename Fn>
int guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const zetalab::ConfigError& e) {
        return fail("config-error", e.what());
    } catch (const zetalab::PoleAtOne& e) {
        return fail("pole-at-one", e.what());
    } catch (const zetalab::PoleInRegion& e) {
        return fail("pole-in-region", e.what());
    } catch (const zetalab::AccuracyUnreachable& e) {
        return fail("accuracy-unreachable", e.what());
    } catch (const zetalab::BranchObstruction& e) {
        return fail("branch-obstruction", e.what());
    } catch (const zetalab::ContourThroughZero& e) {
        return fail("contour-through-zero", e.what());
    } catch (const zetalab::SigmaOutOfRange& e) {
        return fail("sigma-out-of-range", e.what());
    } catch (const zetalab::SetOutsideStrip& e) {
        return fail("set-outside-strip", e.what());
    } catch (const zetalab::DegenerateShift& e) {
        return fail("degenerate-shift", e.what());
    } catch (const zetalab::DivisionNearZero& e) {
        return fail("division-near-zero", e.what());
    } catch (const zetalab::MalformedResult& e) {
        return fail("malformed-result", e.what());
    } catch (const std::exception& e) {
        return fail("error", e.what());
    }
}

std::string stem_of(const std::string& path) {
    const auto slash = path.find_last_of('/');
    std::string name = slash == std::string::npos ? path : path.substr(slash + 1);
    const auto dot = name.find_last_of('.');
    if (dot != std::string::npos && dot > 0) name = name.substr(0, dot);
    return name.empty() ? "result" : name;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical experiments on shifted self-approximation of the zeta function"};
    app.require_subcommand(1);

    // run: config in, result/CSV/timings artifacts out
    std::string config_path;
    lab::RunOptions options;
    bool no_cache = false;
    auto* run = app.add_subcommand("run", "execute an experiment config");
    run->add_option("config", config_path, "experiment config (JSON)")->required();
    run->add_option("--out", options.out_dir, "artifact directory (default: .)");
    run->add_option("--workers", options.workers, "worker threads (0 = hardware)");
    run->add_option("--stem", options.stem, "artifact basename (default: config stem)");
    run->add_flag("--no-cache", no_cache, "skip the point-evaluation cache");

    // plot: result JSON in, SVG out
    std::string result_path;
    std::string svg_path;
    auto* plot = app.add_subcommand("plot", "render a result document to SVG");
    plot->add_option("result", result_path, "result document (JSON)")->required();
    plot->add_option("--out", svg_path, "output SVG path (default: result stem + .svg)");

    CLI11_PARSE(app, argc, argv);

    if (run->parsed()) {
        return guarded([&] {
            options.use_cache = !no_cache;
            if (options.stem == "result") options.stem = stem_of(config_path);
            const lab::ExperimentConfig config = lab::load_config_file(config_path);
            const lab::RunArtifacts artifacts = lab::run_experiment(config, options);
            std::cout << json{{"ok", true},
                              {"kind", lab::kind_name(config.kind)},
                              {"json", artifacts.json_path},
                              {"csv", artifacts.csv_path},
                              {"timings", artifacts.timings_path}}
                             .dump()
                      << "\n";
            return 0;
        });
    }

    return guarded([&] {
        std::ifstream in(result_path, std::ios::binary);
        if (!in.good())
            throw zetalab::MalformedResult("cannot open result file \"" + result_path + "\"");
        json result;
        try {
            result = json::parse(in);
        } catch (const json::parse_error& e) {
            throw zetalab::MalformedResult("result file \"" + result_path +
                                           "\" is not valid JSON: " + e.what());
        }
        const std::string svg = lab::svg_for_result(result);
        if (svg_path.empty()) {
            const auto dot = result_path.find_last_of('.');
            svg_path = (dot == std::string::npos ? result_path : result_path.substr(0, dot)) +
                       ".svg";
        }
        std::ofstream out(svg_path, std::ios::binary);
        if (!out.good())
            throw std::runtime_error("cannot write SVG to \"" + svg_path + "\"");
        out << svg;
        std::cout << json{{"ok", true}, {"svg", svg_path}}.dump() << "\n";
        return 0;
    });
}
