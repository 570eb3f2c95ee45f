#pragma once

// Strict reader over a JSON object: every key must be consumed, missing
// keys fall back to defaults, and errors name the full key path.

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "nhm/numkit/stepper.hpp"

namespace nhm::cli {

using nlohmann::json;

class Section {
public:
    Section(const json& j, std::string path);

    const std::string& path() const noexcept { return path_; }
    bool has(const std::string& key) const;

    double number(const std::string& key, double fallback);
    double required_number(const std::string& key);
    /// number() that must be > 0.
    double positive(const std::string& key, double fallback);
    double non_negative(const std::string& key, double fallback);
    int integer(const std::string& key, int fallback);
    int integer_at_least(const std::string& key, int fallback, int lo);
    bool boolean(const std::string& key, bool fallback);
    std::string string(const std::string& key, const std::string& fallback);
    std::string choice(const std::string& key, const std::string& fallback, const std::vector<std::string>& allowed);
    std::vector<double> numbers(const std::string& key, std::vector<double> fallback);
    /// Child object (empty when absent).
    Section child(const std::string& key);
    /// Array of objects.
    std::vector<Section> children(const std::string& key);
    /// Raw value, marked consumed.
    std::optional<json> raw(const std::string& key);

    /// Throws Config naming the first unread key.
    void finish() const;

    [[noreturn]] void fail(const std::string& key, const std::string& what) const;

private:
    const json* lookup(const std::string& key);

    json j_;
    std::string path_;
    std::set<std::string> used_;
};

struct Check {
    std::string name;
    std::optional<double> max;
    std::optional<double> min;
};

struct RunConfig {
    std::string system;
    json params = json::object();
    json initial = json::object();
    double t0 = 0.0, t1 = 1.0;
    numkit::Stepper stepper = numkit::Rk4Fixed{1e-3};
    int record_every = 1;
    std::vector<Check> checks;
    std::string out;
    std::vector<std::string> formats{"csv"};
    std::uint64_t seed = 1;
};

/// Top-level schema; params and initial stay raw for the subcommand.
RunConfig parse_run_config(const json& j);
numkit::Stepper parse_stepper(Section s);
json to_json(const numkit::Stepper& s);

} // namespace nhm::cli
