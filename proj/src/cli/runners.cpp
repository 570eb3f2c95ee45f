#include "runners.hpp"

#include <algorithm>
#include <cmath>

namespace nhm::cli {

const std::vector<Subcommand>& subcommands() {
    static const std::vector<Subcommand> all = [] {
        auto v = mechanics_subcommands();
        auto f = field_subcommands();
        v.insert(v.end(), f.begin(), f.end());
        return v;
    }();
    return all;
}

const Subcommand* find_subcommand(std::string_view name) {
    for (const auto& s : subcommands())
        if (s.name == name) return &s;
    return nullptr;
}

json final_row(const trajectory::Trajectory& traj) {
    json out = json::object();
    if (traj.empty()) return out;
    out["t"] = traj.times().back();
    const auto s = traj.back_state();
    for (std::size_t i = 0; i < traj.state_columns().size(); ++i) out[traj.state_columns()[i]] = s[i];
    return out;
}

json ledger_extremes(const trajectory::Trajectory& traj) {
    json out = json::object();
    for (const auto& name : traj.ledger_columns()) {
        auto v = traj.column(name);
        if (v.empty()) continue;
        const auto [mn, mx] = std::minmax_element(v.begin(), v.end());
        out[name] = {{"min", *mn}, {"max", *mx}, {"first", v.front()}, {"last", v.back()}};
    }
    return out;
}

double rel_drift(const std::vector<double>& v) {
    if (v.empty()) return 0.0;
    double d = 0.0;
    for (double x : v) d = std::max(d, std::abs(x - v[0]));
    return v[0] != 0.0 ? d / std::abs(v[0]) : d;
}

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

std::string timelapse_svg(const std::vector<std::vector<std::array<double, 2>>>& frames, const std::string& title,
                          std::vector<trajectory::Overlay> extra) {
    trajectory::Trajectory last("frame", {"x", "y"}, {});
    trajectory::PlotSpec spec;
    spec.title = title;
    spec.mark_endpoints = false;
    spec.overlays = std::move(extra);
    if (!frames.empty()) {
        const std::size_t k = frames.size();
        for (std::size_t f = 0; f + 1 < k; ++f) {
            trajectory::Overlay o;
            for (const auto& p : frames[f]) {
                o.xs.push_back(p[0]);
                o.ys.push_back(p[1]);
            }
            o.stroke = "#1f5fa8";
            o.opacity = 0.1 + 0.6 * static_cast<double>(f) / static_cast<double>(k);
            spec.overlays.push_back(std::move(o));
        }
        double i = 0.0;
        for (const auto& p : frames.back()) {
            last.append(i, std::vector<double>{p[0], p[1]});
            i += 1.0;
        }
    }
    return trajectory::to_svg(last, spec);
}

} // namespace nhm::cli
