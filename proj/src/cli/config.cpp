#include "config.hpp"

#include <cmath>

#include "nhm/error.hpp"

namespace nhm::cli {

Section::Section(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (j_.is_null()) j_ = json::object();
    if (!j_.is_object()) throw Error(ErrorKind::Config, (path_.empty() ? "config" : path_) + " must be an object");
}

bool Section::has(const std::string& key) const { return j_.contains(key); }

void Section::fail(const std::string& key, const std::string& what) const {
    throw Error(ErrorKind::Config, (path_.empty() ? key : path_ + "." + key) + " " + what);
}

const json* Section::lookup(const std::string& key) {
    used_.insert(key);
    auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
}

double Section::number(const std::string& key, double fallback) {
    const json* v = lookup(key);
    if (!v) return fallback;
    if (!v->is_number()) fail(key, "must be a number");
    const double x = v->get<double>();
    if (!std::isfinite(x)) fail(key, "must be finite");
    return x;
}

double Section::required_number(const std::string& key) {
    if (!has(key)) fail(key, "is required");
    return number(key, 0.0);
}

double Section::positive(const std::string& key, double fallback) {
    const double x = number(key, fallback);
    if (!(x > 0)) fail(key, "must be > 0 (got " + json(x).dump() + ")");
    return x;
}

double Section::non_negative(const std::string& key, double fallback) {
    const double x = number(key, fallback);
    if (x < 0) fail(key, "must be >= 0 (got " + json(x).dump() + ")");
    return x;
}

int Section::integer(const std::string& key, int fallback) {
    const json* v = lookup(key);
    if (!v) return fallback;
    if (!v->is_number_integer()) fail(key, "must be an integer");
    return v->get<int>();
}

int Section::integer_at_least(const std::string& key, int fallback, int lo) {
    const int x = integer(key, fallback);
    if (x < lo) fail(key, "must be >= " + std::to_string(lo));
    return x;
}

bool Section::boolean(const std::string& key, bool fallback) {
    const json* v = lookup(key);
    if (!v) return fallback;
    if (!v->is_boolean()) fail(key, "must be true or false");
    return v->get<bool>();
}

std::string Section::string(const std::string& key, const std::string& fallback) {
    const json* v = lookup(key);
    if (!v) return fallback;
    if (!v->is_string()) fail(key, "must be a string");
    return v->get<std::string>();
}

std::string Section::choice(const std::string& key, const std::string& fallback,
                            const std::vector<std::string>& allowed) {
    auto s = string(key, fallback);
    for (const auto& a : allowed)
        if (a == s) return s;
    std::string list;
    for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
    fail(key, "must be one of " + list + " (got '" + s + "')");
}

std::vector<double> Section::numbers(const std::string& key, std::vector<double> fallback) {
    const json* v = lookup(key);
    if (!v) return fallback;
    if (!v->is_array()) fail(key, "must be an array of numbers");
    std::vector<double> out;
    for (const auto& x : *v) {
        if (!x.is_number()) fail(key, "must be an array of numbers");
        out.push_back(x.get<double>());
    }
    return out;
}

Section Section::child(const std::string& key) {
    const json* v = lookup(key);
    return Section(v ? *v : json::object(), path_.empty() ? key : path_ + "." + key);
}

std::vector<Section> Section::children(const std::string& key) {
    const json* v = lookup(key);
    std::vector<Section> out;
    if (!v) return out;
    if (!v->is_array()) fail(key, "must be an array of objects");
    for (std::size_t i = 0; i < v->size(); ++i)
        out.emplace_back((*v)[i], (path_.empty() ? key : path_ + "." + key) + "[" + std::to_string(i) + "]");
    return out;
}

std::optional<json> Section::raw(const std::string& key) {
    const json* v = lookup(key);
    if (!v) return std::nullopt;
    return *v;
}

void Section::finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it)
        if (!used_.count(it.key()))
            throw Error(ErrorKind::Config, "unknown key '" + (path_.empty() ? it.key() : path_ + "." + it.key()) + "'");
}

numkit::Stepper parse_stepper(Section s) {
    const auto kind = s.choice("kind", "rk4", {"rk4", "rk45"});
    numkit::Stepper out;
    if (kind == "rk4") {
        out = numkit::Rk4Fixed{s.positive("dt", 1e-3)};
    } else {
        numkit::Rk45Adaptive a;
        a.atol = s.positive("atol", a.atol);
        a.rtol = s.positive("rtol", a.rtol);
        a.dt_min = s.positive("dt_min", a.dt_min);
        a.dt_max = s.positive("dt_max", a.dt_max);
        a.dt_initial = s.positive("dt_initial", a.dt_initial);
        if (a.dt_min > a.dt_max) s.fail("dt_min", "exceeds dt_max");
        out = a;
    }
    s.finish();
    return out;
}

json to_json(const numkit::Stepper& s) {
    if (const auto* f = std::get_if<numkit::Rk4Fixed>(&s)) return {{"kind", "rk4"}, {"dt", f->dt}};
    const auto& a = std::get<numkit::Rk45Adaptive>(s);
    return {{"kind", "rk45"},         {"atol", a.atol},     {"rtol", a.rtol},
            {"dt_min", a.dt_min},     {"dt_max", a.dt_max}, {"dt_initial", a.dt_initial}};
}

RunConfig parse_run_config(const json& j) {
    Section root(j, "");
    RunConfig c;
    c.system = root.string("system", "");
    if (auto p = root.raw("params")) c.params = *p;
    if (auto p = root.raw("initial")) c.initial = *p;
    auto span = root.numbers("t_span", {0.0, 1.0});
    if (span.size() != 2 || !(span[1] > span[0])) root.fail("t_span", "must be [t0, t1] with t1 > t0");
    c.t0 = span[0];
    c.t1 = span[1];
    c.stepper = parse_stepper(root.child("stepper"));
    c.record_every = root.integer_at_least("record_every", 1, 1);
    for (auto& cs : root.children("checks")) {
        Check ch;
        ch.name = cs.string("name", "");
        if (ch.name.empty()) cs.fail("name", "is required");
        if (cs.has("max")) ch.max = cs.number("max", 0.0);
        if (cs.has("min")) ch.min = cs.number("min", 0.0);
        if (!ch.max && !ch.min) cs.fail("max", "or min is required");
        cs.finish();
        c.checks.push_back(ch);
    }
    c.out = root.string("out", "");
    if (auto f = root.raw("formats")) {
        if (!f->is_array()) root.fail("formats", "must be an array");
        c.formats.clear();
        for (const auto& x : *f) {
            if (!x.is_string()) root.fail("formats", "must hold strings");
            const auto s = x.get<std::string>();
            if (s != "csv" && s != "svg" && s != "json") root.fail("formats", "entries must be csv, svg or json");
            c.formats.push_back(s);
        }
    }
    const int seed = root.integer_at_least("seed", 1, 0);
    c.seed = static_cast<std::uint64_t>(seed);
    root.finish();
    return c;
}

} // namespace nhm::cli
