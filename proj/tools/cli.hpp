// Copyright 2026 The dmtele Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: `point`, `sweep` and `figure` subcommands.
//
// Exit codes: 0 success, 2 bad arguments, 3 I/O error.

#ifndef DMTELE_TOOLS_CLI_HPP
#define DMTELE_TOOLS_CLI_HPP

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "dmtele/dmtele.hpp"

namespace dmtele::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitBadArgs = 2;
inline constexpr int kExitIo = 3;

namespace detail {

struct OutputFlags {
    std::string out_path;
    std::string format = "csv";
    unsigned threads = 0;
    bool classify = false;
    CLI::Option* threads_opt = nullptr;

    void attach(CLI::App* cmd, bool with_threads) {
        cmd->add_option("--out", out_path, "Output file (default: standard output)");
        cmd->add_option("--format", format, "csv or json (JSON lines)")
            ->check(CLI::IsMember({"csv", "json"}))
            ->capture_default_str();
        cmd->add_flag("--classify", classify, "Append a channel classification column");
        if (with_threads) threads_opt = cmd->add_option("--threads", threads, "Worker threads (0 = auto)");
    }

    RunOptions options() const {
        RunOptions opt;
        opt.format = format == "json" ? Format::JsonLines : Format::Csv;
        opt.classify = classify;
        opt.threads = threads;
        if (threads_opt != nullptr && threads_opt->count() == 0) {
            if (const char* env = std::getenv("THREADS"); env != nullptr && *env != '\0') {
                char* end = nullptr;
                const unsigned long v = std::strtoul(env, &end, 10);
                if (*end != '\0') throw ParameterError("THREADS", std::string("not a thread count: '") + env + "'");
                opt.threads = static_cast<unsigned>(v);
            }
        }
        return opt;
    }
};

// Runs `emit` against either `fallback` or the file at `path`.
template <class Emit>
void with_sink(const std::string& path, std::ostream& fallback, Emit&& emit) {
    if (path.empty()) {
        try {
            emit(fallback);
        } catch (const OutputError& e) {
            throw OutputError(std::string("writing standard output: ") + e.what());
        }
        return;
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw OutputError("cannot open '" + path + "' for writing");
    try {
        emit(file);
    } catch (const OutputError& e) {
        throw OutputError("writing '" + path + "': " + e.what());
    }
    file.close();
    if (!file) throw OutputError("writing '" + path + "': close failed");
}

}  // namespace detail

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    CLI::App app{"Thermal entanglement teleportation through a two-qubit Heisenberg XXX chain "
                 "with x-component Dzyaloshinskii-Moriya coupling.",
                 "dmtele"};
    app.require_subcommand(1);

    // point
    auto* point = app.add_subcommand("point", "Evaluate one parameter point");
    double j = 1.0, dx = 1.0, t = 1.0, cin = 1.0;
    std::string outputs = "Cout,F,h1,h2,Z";
    detail::OutputFlags point_flags;
    point->add_option("--j", j, "Spin coupling J")->capture_default_str();
    point->add_option("--dx", dx, "DM coupling Dx")->capture_default_str();
    point->add_option("--t", t, "Temperature T (k_B = 1); 0 allowed")->capture_default_str();
    point->add_option("--cin", cin, "Input-state concurrence in [0, 1]")->capture_default_str();
    point->add_option("--outputs", outputs, "Subset of Cout,F,h1,h2,Z,lambdas")->capture_default_str();
    point_flags.attach(point, false);

    // sweep
    auto* sweep = app.add_subcommand("sweep", "Run a 1D or 2D parameter sweep");
    std::string axis1_text, axis2_text;
    bool t0 = false;
    detail::OutputFlags sweep_flags;
    sweep->add_option("--j", j, "Fixed J")->capture_default_str();
    sweep->add_option("--dx", dx, "Fixed Dx")->capture_default_str();
    sweep->add_option("--t", t, "Fixed T")->capture_default_str();
    sweep->add_option("--cin", cin, "Fixed Cin")->capture_default_str();
    sweep->add_option("--axis1", axis1_text, "Outer axis name:min:max:steps (name in J, Dx, T, Cin)")->required();
    sweep->add_option("--axis2", axis2_text, "Inner axis name:min:max:steps");
    sweep->add_flag("--t0", t0, "Prepend the T = 0 endpoint to the T axis");
    sweep->add_option("--outputs", outputs, "Subset of Cout,F,h1,h2,Z,lambdas")->capture_default_str();
    sweep_flags.attach(sweep, true);

    // figure
    auto* figure = app.add_subcommand("figure", "Emit a named figure grid (fig1a..fig4c)");
    std::string figure_name;
    bool all = false;
    std::string out_dir;
    std::size_t steps = kDefaultFigureSteps;
    detail::OutputFlags figure_flags;
    figure->add_option("name", figure_name, "Preset: fig1a..fig4c");
    figure->add_flag("--all", all, "Write every preset into --out-dir");
    figure->add_option("--out-dir", out_dir, "Directory for --all");
    figure->add_option("--steps", steps, "Grid points per axis")->capture_default_str();
    figure_flags.attach(figure, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitBadArgs;
    }

    try {
        if (point->parsed()) {
            const OutputSet set = OutputSet::parse(outputs);
            const RunOptions opt = point_flags.options();
            const SweepRow row = run_point(ChannelParams{j, dx, t}, cin);
            detail::with_sink(point_flags.out_path, out, [&](std::ostream& os) {
                os << header_line(set, opt) << format_row(row, set, opt);
                os.flush();
                if (!os) throw OutputError("write failed");
            });
        } else if (sweep->parsed()) {
            SweepSpec spec;
            spec.fixed = SweepPoint{ChannelParams{j, dx, t}, cin};
            spec.axis1 = parse_axis(axis1_text, "--axis1");
            if (!axis2_text.empty()) spec.axis2 = parse_axis(axis2_text, "--axis2");
            if (t0) {
                if (spec.axis1.variable == Variable::T) spec.axis1.zero_endpoint = true;
                else if (spec.axis2 && spec.axis2->variable == Variable::T) spec.axis2->zero_endpoint = true;
                else throw ParameterError("--t0", "requires a T axis");
            }
            spec.outputs = OutputSet::parse(outputs);
            const RunOptions opt = sweep_flags.options();
            spec.validate();
            detail::with_sink(sweep_flags.out_path, out, [&](std::ostream& os) { run_sweep(spec, os, opt); });
        } else if (figure->parsed()) {
            const RunOptions opt = figure_flags.options();
            if (steps < 2 || steps > kMaxAxisSteps) throw ParameterError("--steps", "must be in [2, 1000000]");
            if (all) {
                if (out_dir.empty()) throw ParameterError("--out-dir", "required with --all");
                if (!figure_name.empty()) throw ParameterError("--all", "cannot be combined with a preset name");
                std::error_code ec;
                std::filesystem::create_directories(out_dir, ec);
                if (ec) throw OutputError("cannot create directory '" + out_dir + "': " + ec.message());
                const char* ext = opt.format == Format::JsonLines ? ".jsonl" : ".csv";
                for (std::string_view name : kFigureNames) {
                    const SweepSpec spec = figure_preset(name, steps);
                    const auto path = (std::filesystem::path(out_dir) / (std::string(name) + ext)).string();
                    detail::with_sink(path, out, [&](std::ostream& os) { run_sweep(spec, os, opt); });
                }
            } else {
                if (figure_name.empty()) throw ParameterError("figure", "give a preset name or --all");
                const SweepSpec spec = figure_preset(figure_name, steps);
                detail::with_sink(figure_flags.out_path, out, [&](std::ostream& os) { run_sweep(spec, os, opt); });
            }
        }
    } catch (const OutputError& e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitBadArgs;
    }
    return kExitOk;
}

}  // namespace dmtele::cli

#endif  // DMTELE_TOOLS_CLI_HPP
