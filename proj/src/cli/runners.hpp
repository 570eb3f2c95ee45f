#pragma once

#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "config.hpp"
#include "nhm/trajectory/trajectory.hpp"

namespace nhm::cli {

struct OutFile {
    std::string path; // relative to the output directory
    std::string format; // csv or svg
    std::string content;
};

struct RunContext {
    Section params;
    Section initial;
    const RunConfig& cfg;
};

struct RunOutput {
    std::vector<OutFile> files;
    json summary = json::object();
    std::map<std::string, double> metrics;
};

struct Subcommand {
    std::string name;
    std::string description;
    std::string columns; // --help footer
    std::vector<std::string> metrics;
    std::function<RunOutput(RunContext&)> run;
};

const std::vector<Subcommand>& subcommands();
const Subcommand* find_subcommand(std::string_view name);

const std::vector<std::pair<std::string_view, std::string_view>>& embedded_presets();

// shared helpers
json final_row(const trajectory::Trajectory& traj);
json ledger_extremes(const trajectory::Trajectory& traj);
/// max |v − v₀| / |v₀| (absolute when v₀ = 0).
double rel_drift(const std::vector<double>& v);
double max_abs(const std::vector<double>& v);
/// Polylines drawn oldest (faint) to newest (solid); the newest is the data
/// polyline, the rest overlays. `extra` are drawn underneath.
std::string timelapse_svg(const std::vector<std::vector<std::array<double, 2>>>& frames, const std::string& title,
                          std::vector<trajectory::Overlay> extra = {});

std::vector<Subcommand> mechanics_subcommands();
std::vector<Subcommand> field_subcommands();

} // namespace nhm::cli
