#pragma once

// Time-stamped state rows plus a ledger of invariant series sampled at the
// same instants. The CSV form is the wire format of every subcommand.

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace nhm::trajectory {

class Trajectory {
public:
    Trajectory() = default;
    Trajectory(std::string system, std::vector<std::string> state_columns, std::vector<std::string> ledger_columns);

    /// Appends one sample; t must exceed the previous time.
    void append(double t, std::span<const double> state, std::span<const double> ledger = {});

    const std::string& system() const noexcept { return system_; }
    const std::vector<std::string>& state_columns() const noexcept { return state_columns_; }
    const std::vector<std::string>& ledger_columns() const noexcept { return ledger_columns_; }
    std::size_t size() const noexcept { return times_.size(); }
    bool empty() const noexcept { return times_.empty(); }

    const std::vector<double>& times() const noexcept { return times_; }
    std::span<const double> state(std::size_t i) const;
    std::span<const double> ledger(std::size_t i) const;
    std::span<const double> back_state() const { return state(size() - 1); }

    bool has_column(std::string_view name) const;
    /// "t", a state column or a ledger column. Throws UnknownColumn.
    std::vector<double> column(std::string_view name) const;

    nlohmann::json& meta() noexcept { return meta_; }
    const nlohmann::json& meta() const noexcept { return meta_; }

private:
    std::string system_;
    std::vector<std::string> state_columns_;
    std::vector<std::string> ledger_columns_;
    std::vector<double> times_;
    std::vector<double> states_;
    std::vector<double> ledgers_;
    nlohmann::json meta_ = nlohmann::json::object();
};

/// Header `t,<state>,<ledger>`; 17 significant digits; LF endings.
std::string to_csv(const Trajectory& traj);
/// Inverse of to_csv. Every non-t column is treated as a state column unless
/// it is named in ledger_columns.
Trajectory from_csv(std::string_view csv, const std::vector<std::string>& ledger_columns = {});

/// Shortest round-trip text for a double, locale independent.
std::string format_double(double v);

struct Overlay {
    std::vector<double> xs;
    std::vector<double> ys;
    std::string stroke = "#888888";
    double opacity = 1.0;
    double width = 1.0;
};

struct PlotSpec {
    std::string x_column = "x";
    std::string y_column = "y";
    std::string title;
    bool mark_endpoints = true;
    std::vector<Overlay> overlays;
};

inline constexpr int kSvgWidth = 800;
inline constexpr int kSvgHeight = 600;

/// Standalone 800×600 SVG with an equal-aspect data mapping.
std::string to_svg(const Trajectory& traj, const PlotSpec& spec);

} // namespace nhm::trajectory
