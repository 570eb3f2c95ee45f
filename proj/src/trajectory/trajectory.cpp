#include "nhm/trajectory/trajectory.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

#include "nhm/error.hpp"

namespace nhm::trajectory {

Trajectory::Trajectory(std::string system, std::vector<std::string> state_columns,
                       std::vector<std::string> ledger_columns)
    : system_(std::move(system)), state_columns_(std::move(state_columns)), ledger_columns_(std::move(ledger_columns)) {}

void Trajectory::append(double t, std::span<const double> state, std::span<const double> ledger) {
    if (state.size() != state_columns_.size())
        throw Error(ErrorKind::DimensionMismatch, "state row length does not match the column schema");
    if (ledger.size() != ledger_columns_.size())
        throw Error(ErrorKind::DimensionMismatch, "ledger row length does not match the column schema");
    if (!times_.empty() && !(t > times_.back()))
        throw Error(ErrorKind::InvalidArgument, "trajectory times must be strictly increasing");
    times_.push_back(t);
    states_.insert(states_.end(), state.begin(), state.end());
    ledgers_.insert(ledgers_.end(), ledger.begin(), ledger.end());
}

std::span<const double> Trajectory::state(std::size_t i) const {
    const std::size_t w = state_columns_.size();
    return std::span<const double>(states_).subspan(i * w, w);
}

std::span<const double> Trajectory::ledger(std::size_t i) const {
    const std::size_t w = ledger_columns_.size();
    return std::span<const double>(ledgers_).subspan(i * w, w);
}

bool Trajectory::has_column(std::string_view name) const {
    if (name == "t") return true;
    return std::find(state_columns_.begin(), state_columns_.end(), name) != state_columns_.end() ||
           std::find(ledger_columns_.begin(), ledger_columns_.end(), name) != ledger_columns_.end();
}

std::vector<double> Trajectory::column(std::string_view name) const {
    if (name == "t") return times_;
    std::vector<double> out;
    out.reserve(size());
    if (auto it = std::find(state_columns_.begin(), state_columns_.end(), name); it != state_columns_.end()) {
        const auto c = static_cast<std::size_t>(it - state_columns_.begin());
        for (std::size_t i = 0; i < size(); ++i) out.push_back(states_[i * state_columns_.size() + c]);
        return out;
    }
    if (auto it = std::find(ledger_columns_.begin(), ledger_columns_.end(), name); it != ledger_columns_.end()) {
        const auto c = static_cast<std::size_t>(it - ledger_columns_.begin());
        for (std::size_t i = 0; i < size(); ++i) out.push_back(ledgers_[i * ledger_columns_.size() + c]);
        return out;
    }
    throw Error(ErrorKind::UnknownColumn, "no column named '" + std::string(name) + "'");
}

std::string format_double(double v) {
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, r.ptr);
}

std::string to_csv(const Trajectory& traj) {
    std::string out = "t";
    for (const auto& c : traj.state_columns()) out += "," + c;
    for (const auto& c : traj.ledger_columns()) out += "," + c;
    out += '\n';
    for (std::size_t i = 0; i < traj.size(); ++i) {
        out += format_double(traj.times()[i]);
        for (double v : traj.state(i)) out += "," + format_double(v);
        for (double v : traj.ledger(i)) out += "," + format_double(v);
        out += '\n';
    }
    return out;
}

namespace {

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const auto comma = line.find(',', start);
        out.push_back(line.substr(start, comma - start));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

double parse_double(std::string_view s) {
    double v = 0.0;
    auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    if (r.ec != std::errc() || r.ptr != s.data() + s.size())
        throw Error(ErrorKind::InvalidArgument, "malformed number in CSV: '" + std::string(s) + "'");
    return v;
}

} // namespace

Trajectory from_csv(std::string_view csv, const std::vector<std::string>& ledger_columns) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start < csv.size()) {
        auto nl = csv.find('\n', start);
        if (nl == std::string_view::npos) nl = csv.size();
        lines.push_back(csv.substr(start, nl - start));
        start = nl + 1;
    }
    if (lines.empty()) throw Error(ErrorKind::InvalidArgument, "CSV has no header");
    const auto header = split(lines[0]);
    if (header.empty() || header[0] != "t") throw Error(ErrorKind::InvalidArgument, "CSV header must start with t");

    std::vector<std::string> states, ledgers;
    std::vector<bool> is_ledger;
    for (std::size_t c = 1; c < header.size(); ++c) {
        const std::string name(header[c]);
        const bool led = std::find(ledger_columns.begin(), ledger_columns.end(), name) != ledger_columns.end();
        is_ledger.push_back(led);
        (led ? ledgers : states).push_back(name);
    }
    Trajectory traj("", states, ledgers);
    std::vector<double> srow, lrow;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        const auto cells = split(lines[i]);
        if (cells.size() != header.size())
            throw Error(ErrorKind::DimensionMismatch, "CSV row " + std::to_string(i) + " has the wrong width");
        srow.clear();
        lrow.clear();
        for (std::size_t c = 1; c < cells.size(); ++c) (is_ledger[c - 1] ? lrow : srow).push_back(parse_double(cells[c]));
        traj.append(parse_double(cells[0]), srow, lrow);
    }
    return traj;
}

// ---------------------------------------------------------------------------
// SVG

namespace {

std::string fixed(double v) {
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 2);
    return std::string(buf, r.ptr);
}

std::string escape(std::string_view s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '&': out += "&amp;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

struct Frame {
    double x0 = -1, x1 = 1, y0 = -1, y1 = 1;
    double scale = 1, ox = 0, oy = 0;

    double px(double x) const { return ox + (x - x0) * scale; }
    double py(double y) const { return oy - (y - y0) * scale; }
};

constexpr double kMargin = 60.0;

Frame make_frame(const std::vector<const std::vector<double>*>& xs, const std::vector<const std::vector<double>*>& ys) {
    Frame f;
    double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
    for (const auto* v : xs)
        for (double x : *v)
            if (std::isfinite(x)) x0 = std::min(x0, x), x1 = std::max(x1, x);
    for (const auto* v : ys)
        for (double y : *v)
            if (std::isfinite(y)) y0 = std::min(y0, y), y1 = std::max(y1, y);
    if (x0 <= x1 && y0 <= y1) {
        f.x0 = x0, f.x1 = x1, f.y0 = y0, f.y1 = y1;
    }
    double dx = f.x1 - f.x0, dy = f.y1 - f.y0;
    const double pad = 1e-9 + 1e-12 * std::max(std::abs(f.x0) + std::abs(f.x1), std::abs(f.y0) + std::abs(f.y1));
    if (dx < pad) f.x0 -= 0.5, f.x1 += 0.5, dx = 1.0;
    if (dy < pad) f.y0 -= 0.5, f.y1 += 0.5, dy = 1.0;
    const double w = kSvgWidth - 2 * kMargin, h = kSvgHeight - 2 * kMargin;
    f.scale = std::min(w / dx, h / dy);
    f.ox = kMargin + 0.5 * (w - dx * f.scale);
    f.oy = kSvgHeight - kMargin - 0.5 * (h - dy * f.scale);
    return f;
}

std::string polyline(const Frame& f, const std::vector<double>& xs, const std::vector<double>& ys,
                     const std::string& stroke, double opacity, double width) {
    std::string pts;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!pts.empty()) pts += ' ';
        pts += fixed(f.px(xs[i])) + "," + fixed(f.py(ys[i]));
    }
    return "<polyline fill=\"none\" stroke=\"" + stroke + "\" stroke-opacity=\"" + fixed(opacity) +
           "\" stroke-width=\"" + fixed(width) + "\" points=\"" + pts + "\"/>\n";
}

} // namespace

std::string to_svg(const Trajectory& traj, const PlotSpec& spec) {
    const auto xs = traj.column(spec.x_column);
    const auto ys = traj.column(spec.y_column);
    std::vector<const std::vector<double>*> all_x{&xs}, all_y{&ys};
    for (const auto& o : spec.overlays) all_x.push_back(&o.xs), all_y.push_back(&o.ys);
    const Frame f = make_frame(all_x, all_y);

    std::string s = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(kSvgWidth) + "\" height=\"" +
         std::to_string(kSvgHeight) + "\" viewBox=\"0 0 " + std::to_string(kSvgWidth) + " " +
         std::to_string(kSvgHeight) + "\">\n";
    s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (!spec.title.empty())
        s += "<text x=\"400\" y=\"28\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">" +
             escape(spec.title) + "</text>\n";

    // axes frame with extreme tick labels
    const double l = f.px(f.x0), r = f.px(f.x1), b = f.py(f.y0), t = f.py(f.y1);
    s += "<g class=\"axes\" stroke=\"black\" stroke-width=\"1\">\n";
    s += "<line x1=\"" + fixed(l) + "\" y1=\"" + fixed(b) + "\" x2=\"" + fixed(r) + "\" y2=\"" + fixed(b) + "\"/>\n";
    s += "<line x1=\"" + fixed(l) + "\" y1=\"" + fixed(b) + "\" x2=\"" + fixed(l) + "\" y2=\"" + fixed(t) + "\"/>\n";
    s += "</g>\n";
    s += "<g font-family=\"sans-serif\" font-size=\"11\">\n";
    s += "<text x=\"" + fixed(l) + "\" y=\"" + fixed(b + 16) + "\">" + format_double(f.x0) + "</text>\n";
    s += "<text x=\"" + fixed(r) + "\" y=\"" + fixed(b + 16) + "\" text-anchor=\"end\">" + format_double(f.x1) +
         "</text>\n";
    s += "<text x=\"" + fixed(l - 4) + "\" y=\"" + fixed(b) + "\" text-anchor=\"end\">" + format_double(f.y0) +
         "</text>\n";
    s += "<text x=\"" + fixed(l - 4) + "\" y=\"" + fixed(t + 10) + "\" text-anchor=\"end\">" + format_double(f.y1) +
         "</text>\n";
    s += "<text x=\"" + fixed(0.5 * (l + r)) + "\" y=\"" + fixed(b + 32) + "\" text-anchor=\"middle\">" +
         escape(spec.x_column) + "</text>\n";
    s += "<text x=\"20\" y=\"" + fixed(0.5 * (b + t)) + "\" text-anchor=\"middle\">" + escape(spec.y_column) +
         "</text>\n";
    s += "</g>\n";

    for (const auto& o : spec.overlays) s += polyline(f, o.xs, o.ys, o.stroke, o.opacity, o.width);
    if (!xs.empty()) {
        s += "<g class=\"trajectory\">\n" + polyline(f, xs, ys, "#1f4e9c", 1.0, 1.5) + "</g>\n";
        if (spec.mark_endpoints) {
            s += "<circle cx=\"" + fixed(f.px(xs.front())) + "\" cy=\"" + fixed(f.py(ys.front())) +
                 "\" r=\"4\" fill=\"#2a9d2a\"/>\n";
            s += "<circle cx=\"" + fixed(f.px(xs.back())) + "\" cy=\"" + fixed(f.py(ys.back())) +
                 "\" r=\"4\" fill=\"#c0392b\"/>\n";
        }
    }
    s += "</svg>\n";
    return s;
}

} // namespace nhm::trajectory
