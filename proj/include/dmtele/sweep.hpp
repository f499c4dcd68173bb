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

// Parameter sweeps over (J, Dx, T, Cin) and their CSV / JSON-lines encoding.
//
// Output is a pure function of the spec: rows are evaluated independently
// (optionally on several threads) and written strictly in grid order, so
// the bytes never depend on the thread count.

#ifndef DMTELE_SWEEP_HPP
#define DMTELE_SWEEP_HPP

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "json.hpp"

#include "dmtele/model.hpp"
#include "dmtele/teleport.hpp"

namespace dmtele {

/// Invalid user-supplied parameter; `flag()` names the CLI flag it came from.
class ParameterError : public std::invalid_argument {
public:
    ParameterError(std::string flag, const std::string& what)
        : std::invalid_argument(flag + ": " + what), flag_(std::move(flag)) {}

    const std::string& flag() const { return flag_; }

private:
    std::string flag_;
};

/// Failure writing sweep output.
class OutputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Variable { J, Dx, T, Cin };

inline std::string_view variable_name(Variable v) {
    switch (v) {
        case Variable::J: return "J";
        case Variable::Dx: return "Dx";
        case Variable::T: return "T";
        case Variable::Cin: return "Cin";
    }
    return "?";
}

inline std::optional<Variable> parse_variable(std::string_view s) {
    if (s == "J" || s == "j") return Variable::J;
    if (s == "Dx" || s == "dx" || s == "DX") return Variable::Dx;
    if (s == "T" || s == "t") return Variable::T;
    if (s == "Cin" || s == "cin" || s == "CIN") return Variable::Cin;
    return std::nullopt;
}

/// Evenly spaced grid over [min, max]; with `zero_endpoint` (T only) an
/// extra T = 0 value is prepended.
struct Axis {
    Variable variable = Variable::J;
    double min = 0.0;
    double max = 1.0;
    std::size_t steps = 2;
    bool zero_endpoint = false;

    std::size_t size() const { return steps + (zero_endpoint ? 1 : 0); }

    // Written so that a symmetric range gives exactly mirrored values.
    double value(std::size_t k) const {
        if (zero_endpoint) {
            if (k == 0) return 0.0;
            --k;
        }
        if (k == 0) return min;
        if (k + 1 == steps) return max;
        const double n = static_cast<double>(steps - 1);
        return (min * static_cast<double>(steps - 1 - k) + max * static_cast<double>(k)) / n;
    }
};

inline constexpr std::size_t kMaxAxisSteps = 1'000'000;

namespace detail {

inline double parse_real(std::string_view s, const std::string& flag) {
    // strtod accepts forms from_chars rejects on some toolchains (leading '+').
    const std::string buf(s);
    char* end = nullptr;
    const double v = std::strtod(buf.c_str(), &end);
    if (buf.empty() || end != buf.c_str() + buf.size())
        throw ParameterError(flag, "cannot parse '" + buf + "' as a number");
    return v;
}

}  // namespace detail

/// Parses "name:min:max:steps".
inline Axis parse_axis(std::string_view text, const std::string& flag = "--axis") {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t colon = text.find(':', start);
        parts.push_back(text.substr(start, colon - start));
        if (colon == std::string_view::npos) break;
        start = colon + 1;
    }
    if (parts.size() != 4) throw ParameterError(flag, "expected name:min:max:steps, got '" + std::string(text) + "'");

    Axis axis;
    const auto var = parse_variable(parts[0]);
    if (!var) throw ParameterError(flag, "unknown variable '" + std::string(parts[0]) + "' (use J, Dx, T or Cin)");
    axis.variable = *var;
    axis.min = detail::parse_real(parts[1], flag);
    axis.max = detail::parse_real(parts[2], flag);
    std::size_t steps = 0;
    const auto res = std::from_chars(parts[3].data(), parts[3].data() + parts[3].size(), steps);
    if (res.ec != std::errc{} || res.ptr != parts[3].data() + parts[3].size())
        throw ParameterError(flag, "cannot parse step count '" + std::string(parts[3]) + "'");
    axis.steps = steps;
    return axis;
}

/// Which derived columns to emit. Grid coordinates are always emitted.
struct OutputSet {
    bool c_out = true;
    bool fidelity = true;
    bool h1 = true;
    bool h2 = true;
    bool z = true;
    bool lambdas = false;

    static OutputSet none() { return {false, false, false, false, false, false}; }

    /// Comma-separated subset of {Cout, F, h1, h2, Z, lambdas}.
    static OutputSet parse(std::string_view list, const std::string& flag = "--outputs") {
        OutputSet o = none();
        std::size_t start = 0;
        while (start <= list.size()) {
            const std::size_t comma = std::min(list.find(',', start), list.size());
            const std::string_view name = list.substr(start, comma - start);
            if (name == "Cout") o.c_out = true;
            else if (name == "F" || name == "fidelity") o.fidelity = true;
            else if (name == "h1") o.h1 = true;
            else if (name == "h2") o.h2 = true;
            else if (name == "Z") o.z = true;
            else if (name == "lambdas") o.lambdas = true;
            else throw ParameterError(flag, "unknown output '" + std::string(name) + "' (use Cout, F, h1, h2, Z, lambdas)");
            start = comma + 1;
        }
        return o;
    }

    friend bool operator==(const OutputSet&, const OutputSet&) = default;
};

struct SweepPoint {
    ChannelParams params;
    double c_in = 1.0;
};

struct SweepSpec {
    SweepPoint fixed;
    Axis axis1;
    std::optional<Axis> axis2;
    OutputSet outputs;

    std::size_t row_count() const { return axis1.size() * (axis2 ? axis2->size() : 1); }

    /// Grid point for a row index; axis1 is the outer loop.
    SweepPoint point(std::size_t row) const {
        SweepPoint pt = fixed;
        const std::size_t inner = axis2 ? axis2->size() : 1;
        assign(pt, axis1.variable, axis1.value(row / inner));
        if (axis2) assign(pt, axis2->variable, axis2->value(row % inner));
        return pt;
    }

    void validate() const {
        check_axis(axis1, "--axis1");
        if (axis2) {
            check_axis(*axis2, "--axis2");
            if (axis2->variable == axis1.variable) throw ParameterError("--axis2", "must vary a different variable than --axis1");
        }
    }

private:
    static void assign(SweepPoint& pt, Variable v, double x) {
        switch (v) {
            case Variable::J: pt.params.j = x; break;
            case Variable::Dx: pt.params.dx = x; break;
            case Variable::T: pt.params.temperature = x; break;
            case Variable::Cin: pt.c_in = x; break;
        }
    }

    static void check_axis(const Axis& a, const std::string& flag) {
        if (!std::isfinite(a.min) || !std::isfinite(a.max)) throw ParameterError(flag, "bounds must be finite");
        if (!(a.min < a.max)) throw ParameterError(flag, "min must be smaller than max");
        if (a.steps < 2) throw ParameterError(flag, "steps must be >= 2");
        if (a.steps > kMaxAxisSteps) throw ParameterError(flag, "steps must be <= 1000000");
        if (a.zero_endpoint && a.variable != Variable::T) throw ParameterError(flag, "the T = 0 endpoint only applies to a T axis");
        if (a.variable == Variable::T && !(a.min > 0.0))
            throw ParameterError(flag, "T axis must start above 0 (request the T = 0 endpoint explicitly)");
        if (a.variable == Variable::Cin && (a.min < 0.0 || a.max > 1.0)) throw ParameterError(flag, "Cin range must lie in [0, 1]");
    }
};

struct SweepRow {
    double j = 0.0;
    double dx = 0.0;
    double t = 0.0;
    double c_in = 0.0;
    double c_out = 0.0;
    double fidelity = 0.0;
    double h1 = 0.0;
    double h2 = 0.0;
    /// Partition function; at T = 0 the ground-state degeneracy.
    double z = 0.0;
    std::array<double, 4> lambdas{};
};

/// Evaluates every teleport quantity at one parameter point.
inline SweepRow run_point(const ChannelParams& params, double c_in) {
    if (!std::isfinite(params.j)) throw ParameterError("--j", "must be finite");
    if (!std::isfinite(params.dx)) throw ParameterError("--dx", "must be finite");
    if (!std::isfinite(params.temperature) || params.temperature < 0.0) throw ParameterError("--t", "must be finite and >= 0");
    if (!(c_in >= 0.0 && c_in <= 1.0)) throw ParameterError("--cin", "must lie in [0, 1]");

    const ThermalElements el = thermal_elements(params);
    SweepRow row;
    row.j = params.j;
    row.dx = params.dx;
    row.t = params.temperature;
    row.c_in = c_in;
    row.lambdas = lambdas_from_elements(el, c_in);
    row.c_out = concurrence_from_lambdas(row.lambdas);
    const FidelityTerms f = fidelity_from_elements(el, c_in);
    row.fidelity = f.fidelity;
    row.h1 = f.h1;
    row.h2 = f.h2;
    row.z = params.zero_temperature() ? el.z : std::exp(std::log(el.z) - el.beta * el.ground_energy);
    return row;
}

struct ChannelClass {
    bool quantum_useful = false;
    bool separable = false;

    /// "quantum-useful" or "classical-regime", with "+separable" appended
    /// when the output carries no entanglement.
    std::string label() const {
        std::string s = quantum_useful ? "quantum-useful" : "classical-regime";
        if (separable) s += "+separable";
        return s;
    }
};

/// Fidelity above 2/3 beats any classical measure-and-prepare scheme.
inline constexpr double kClassicalFidelityBound = 2.0 / 3.0;

inline ChannelClass classify_channel(const SweepRow& row) {
    return {row.fidelity > kClassicalFidelityBound, row.c_out == 0.0};
}

enum class Format { Csv, JsonLines };

struct RunOptions {
    Format format = Format::Csv;
    /// 0 = one per hardware thread.
    unsigned threads = 1;
    bool classify = false;
};

namespace detail {

inline void append_number(std::string& out, double x) {
    char buf[32];
    const int n = std::snprintf(buf, sizeof buf, "%.17g", x);
    out.append(buf, static_cast<std::size_t>(n));
}

}  // namespace detail

/// Column names for the selected outputs, in the fixed order
/// J,Dx,T,Cin,Cout,fidelity,h1,h2,Z,l1..l4[,class].
inline std::vector<std::string> column_names(const OutputSet& o, bool classify) {
    std::vector<std::string> cols{"J", "Dx", "T", "Cin"};
    if (o.c_out) cols.emplace_back("Cout");
    if (o.fidelity) cols.emplace_back("fidelity");
    if (o.h1) cols.emplace_back("h1");
    if (o.h2) cols.emplace_back("h2");
    if (o.z) cols.emplace_back("Z");
    if (o.lambdas) {
        for (const char* l : {"l1", "l2", "l3", "l4"}) cols.emplace_back(l);
    }
    if (classify) cols.emplace_back("class");
    return cols;
}

/// CSV header line including the trailing newline; empty for JSON lines.
inline std::string header_line(const OutputSet& o, const RunOptions& opt) {
    if (opt.format != Format::Csv) return {};
    std::string s;
    const auto cols = column_names(o, opt.classify);
    for (std::size_t i = 0; i < cols.size(); ++i) {
        if (i) s += ',';
        s += cols[i];
    }
    s += '\n';
    return s;
}

inline std::string format_row(const SweepRow& r, const OutputSet& o, const RunOptions& opt) {
    std::vector<double> values{r.j, r.dx, r.t, r.c_in};
    if (o.c_out) values.push_back(r.c_out);
    if (o.fidelity) values.push_back(r.fidelity);
    if (o.h1) values.push_back(r.h1);
    if (o.h2) values.push_back(r.h2);
    if (o.z) values.push_back(r.z);
    if (o.lambdas) values.insert(values.end(), r.lambdas.begin(), r.lambdas.end());
    const auto cols = column_names(o, opt.classify);

    if (opt.format == Format::JsonLines) {
        nlohmann::ordered_json obj;
        for (std::size_t i = 0; i < values.size(); ++i) obj[cols[i]] = values[i];
        if (opt.classify) obj["class"] = classify_channel(r).label();
        return obj.dump() + '\n';
    }

    std::string s;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) s += ',';
        detail::append_number(s, values[i]);
    }
    if (opt.classify) {
        s += ',';
        s += classify_channel(r).label();
    }
    s += '\n';
    return s;
}

inline unsigned resolve_threads(unsigned requested) {
    if (requested != 0) return requested;
    return std::max(1u, std::thread::hardware_concurrency());
}

/// Evaluates the grid and writes a header plus one line per point.
/// Returns the number of data rows.
inline std::size_t run_sweep(const SweepSpec& spec, std::ostream& out, const RunOptions& opt = {}) {
    constexpr std::size_t kBlock = 8192;

    spec.validate();
    run_point(spec.fixed.params, spec.fixed.c_in);  // rejects bad fixed values up front

    const std::size_t total = spec.row_count();
    const unsigned workers = resolve_threads(opt.threads);

    out << header_line(spec.outputs, opt);
    std::vector<std::string> lines(std::min(total, kBlock));
    for (std::size_t begin = 0; begin < total; begin += kBlock) {
        const std::size_t count = std::min(kBlock, total - begin);
        const auto work = [&](std::size_t lo, std::size_t hi) {
            for (std::size_t i = lo; i < hi; ++i) {
                const SweepPoint pt = spec.point(begin + i);
                lines[i] = format_row(run_point(pt.params, pt.c_in), spec.outputs, opt);
            }
        };
        const std::size_t nthreads = std::min<std::size_t>(workers, count);
        if (nthreads <= 1) {
            work(0, count);
        } else {
            std::vector<std::jthread> pool;
            pool.reserve(nthreads);
            for (std::size_t t = 0; t < nthreads; ++t)
                pool.emplace_back(work, count * t / nthreads, count * (t + 1) / nthreads);
        }
        for (std::size_t i = 0; i < count; ++i) out << lines[i];
        if (!out) throw OutputError("write failed");
    }
    out.flush();
    if (!out) throw OutputError("write failed");
    return total;
}

//------------------------------------------------------------------------------
// Figure presets
//------------------------------------------------------------------------------

inline constexpr std::array<std::string_view, 12> kFigureNames{
    "fig1a", "fig1b", "fig1c", "fig2a", "fig2b", "fig2c",
    "fig3a", "fig3b", "fig3c", "fig4a", "fig4b", "fig4c",
};

inline constexpr std::size_t kDefaultFigureSteps = 101;

/// Default grid for one variable.
inline Axis default_axis(Variable v, std::size_t steps = kDefaultFigureSteps) {
    switch (v) {
        case Variable::J: return {v, -2.0, 2.0, steps, false};
        case Variable::Dx: return {v, -3.0, 3.0, steps, false};
        case Variable::T: return {v, 0.02, 3.0, steps, false};
        case Variable::Cin: return {v, 0.0, 1.0, steps, false};
    }
    throw std::logic_error("unreachable");
}

/// Named 2D grid (fig1a..fig4c). The two parameters not swept are pinned to 1.
inline SweepSpec figure_preset(std::string_view name, std::size_t steps = kDefaultFigureSteps) {
    struct Preset {
        std::string_view name;
        Variable first;
        Variable second;
        bool fidelity;
        bool zero_endpoint;
    };
    using V = Variable;
    static constexpr std::array<Preset, 12> presets{{
        {"fig1a", V::Cin, V::J, false, false},
        {"fig1b", V::Cin, V::Dx, false, false},
        {"fig1c", V::Cin, V::T, false, true},
        {"fig2a", V::J, V::Dx, false, false},
        {"fig2b", V::T, V::Dx, false, false},
        {"fig2c", V::J, V::T, false, false},
        {"fig3a", V::Cin, V::T, true, true},
        {"fig3b", V::Cin, V::J, true, false},
        {"fig3c", V::Cin, V::Dx, true, false},
        {"fig4a", V::J, V::Dx, true, false},
        {"fig4b", V::T, V::Dx, true, false},
        {"fig4c", V::T, V::J, true, false},
    }};

    for (const Preset& p : presets) {
        if (p.name != name) continue;
        SweepSpec spec;
        spec.fixed = SweepPoint{ChannelParams{1.0, 1.0, 1.0}, 1.0};
        spec.axis1 = default_axis(p.first, steps);
        spec.axis2 = default_axis(p.second, steps);
        if (p.zero_endpoint) (p.first == V::T ? spec.axis1 : *spec.axis2).zero_endpoint = true;
        spec.outputs = OutputSet::none();
        (p.fidelity ? spec.outputs.fidelity : spec.outputs.c_out) = true;
        return spec;
    }

    std::string valid;
    for (std::string_view n : kFigureNames) {
        if (!valid.empty()) valid += ", ";
        valid += n;
    }
    throw ParameterError("figure", "unknown preset '" + std::string(name) + "' (valid: " + valid + ")");
}

}  // namespace dmtele

#endif  // DMTELE_SWEEP_HPP
