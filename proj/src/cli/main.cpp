#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "config.hpp"
#include "nhm/error.hpp"
#include "nhm/version.hpp"
#include "runners.hpp"

namespace fs = std::filesystem;
using namespace nhm;
using namespace nhm::cli;

namespace {

enum Exit { kOk = 0, kConfig = 1, kNumerical = 2, kCheckFailed = 3 };

struct Flags {
    std::string config, out, format, preset;
    bool check = false;
    std::int64_t seed = -1;
};

json load_config(const Flags& f) {
    if (!f.config.empty() && !f.preset.empty()) throw Error(ErrorKind::Config, "--config and --preset are exclusive");
    if (!f.preset.empty()) {
        for (const auto& [name, text] : embedded_presets())
            if (name == f.preset) return json::parse(text);
        throw Error(ErrorKind::Config, "unknown preset '" + f.preset + "' (see list-presets)");
    }
    if (f.config.empty()) return json::object();
    std::ifstream in(f.config, std::ios::binary);
    if (!in) throw Error(ErrorKind::Config, "cannot read config file '" + f.config + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return json::parse(ss.str());
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::Config, "config file '" + f.config + "' is not valid JSON: " + e.what());
    }
}

std::vector<std::string> split_formats(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item != "csv" && item != "svg" && item != "json")
            throw Error(ErrorKind::Config, "--format entries must be csv, svg or json (got '" + item + "')");
        out.push_back(item);
    }
    return out;
}

void write_file(const fs::path& path, const std::string& content) {
    fs::create_directories(path.parent_path());
    std::ofstream o(path, std::ios::binary);
    o << content;
    if (!o) throw Error(ErrorKind::Config, "cannot write '" + path.string() + "'");
}

int run_subcommand(const Subcommand& sub, const Flags& flags) {
    const json raw = load_config(flags);
    RunConfig cfg = parse_run_config(raw);
    if (!cfg.system.empty() && cfg.system != sub.name)
        throw Error(ErrorKind::Config, "config is for '" + cfg.system + "', not '" + sub.name + "'");
    if (flags.seed >= 0) cfg.seed = static_cast<std::uint64_t>(flags.seed);
    if (!flags.out.empty()) cfg.out = flags.out;
    if (!flags.format.empty()) cfg.formats = split_formats(flags.format);
    for (const auto& ch : cfg.checks)
        if (std::find(sub.metrics.begin(), sub.metrics.end(), ch.name) == sub.metrics.end())
            throw Error(ErrorKind::Config, "check '" + ch.name + "' is not a " + sub.name + " invariant");

    RunContext ctx{Section(cfg.params, "params"), Section(cfg.initial, "initial"), cfg};
    RunOutput out = sub.run(ctx);

    json summary = out.summary;
    summary["system"] = sub.name;
    summary["version"] = kVersion;
    summary["stepper"] = to_json(cfg.stepper);
    summary["t_span"] = {cfg.t0, cfg.t1};
    summary["metrics"] = json::object();
    for (const auto& [k, v] : out.metrics) summary["metrics"][k] = v;
    bool all_pass = true;
    summary["checks"] = json::array();
    for (const auto& ch : cfg.checks) {
        auto it = out.metrics.find(ch.name);
        if (it == out.metrics.end())
            throw Error(ErrorKind::Config, "check '" + ch.name + "' does not apply to this configuration");
        const double v = it->second;
        bool pass = std::isfinite(v);
        if (ch.max) pass = pass && v <= *ch.max;
        if (ch.min) pass = pass && v >= *ch.min;
        all_pass = all_pass && pass;
        json e = {{"name", ch.name}, {"value", v}, {"pass", pass}};
        if (ch.max) e["max"] = *ch.max;
        if (ch.min) e["min"] = *ch.min;
        summary["checks"].push_back(e);
    }

    auto wants = [&](const std::string& f) { return std::find(cfg.formats.begin(), cfg.formats.end(), f) != cfg.formats.end(); };
    summary["files"] = json::array();
    if (!cfg.out.empty()) {
        const fs::path dir(cfg.out);
        for (const auto& f : out.files) {
            if (!wants(f.format)) continue;
            write_file(dir / f.path, f.content);
            summary["files"].push_back(f.path);
        }
        if (wants("json")) {
            summary["files"].push_back("summary.json");
            write_file(dir / "summary.json", summary.dump(2) + "\n");
        }
    }
    std::cout << summary.dump(2) << "\n";
    if (!all_pass) {
        for (const auto& e : summary["checks"])
            if (!e["pass"].get<bool>())
                std::cerr << "check failed: " << e["name"].get<std::string>() << " = " << e["value"].dump() << "\n";
        if (flags.check) return kCheckFailed;
    }
    return kOk;
}

int list_presets(const std::string& show) {
    if (!show.empty()) {
        for (const auto& [name, text] : embedded_presets())
            if (name == show) {
                std::cout << text;
                return kOk;
            }
        std::cerr << "unknown preset '" << show << "'\n";
        return kConfig;
    }
    json list = json::array();
    for (const auto& [name, text] : embedded_presets()) {
        const json j = json::parse(text);
        list.push_back({{"name", name}, {"system", j.value("system", "")}});
    }
    std::cout << list.dump(2) << "\n";
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Nonholonomic and vakonomic systems: simulation and invariant checks", "nhm"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    app.footer("Exit status: 0 ok, 1 configuration error, 2 numerical failure, 3 a --check invariant failed.");

    Flags flags;
    std::string show;
    auto* lp = app.add_subcommand("list-presets", "List bundled preset configurations as JSON");
    lp->add_option("--show", show, "Print one preset's config");

    std::vector<std::pair<CLI::App*, const Subcommand*>> subs;
    for (const auto& s : subcommands()) {
        auto* sc = app.add_subcommand(s.name, s.description);
        sc->add_option("--config", flags.config, "JSON run configuration")->check(CLI::ExistingFile);
        sc->add_option("--out", flags.out, "Output directory");
        sc->add_option("--format", flags.format, "Comma list of csv, svg, json (default csv)");
        sc->add_option("--preset", flags.preset, "Bundled configuration (see list-presets)");
        sc->add_flag("--check", flags.check, "Exit 3 when a declared invariant check fails");
        sc->add_option("--seed", flags.seed, "Seed for random test points")->check(CLI::NonNegativeNumber);
        std::string foot = s.columns + "\nchecks (name with max/min): ";
        for (std::size_t i = 0; i < s.metrics.size(); ++i) foot += (i ? ", " : "") + s.metrics[i];
        sc->footer(foot);
        subs.emplace_back(sc, &s);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfig;
    }

    try {
        if (lp->parsed()) return list_presets(show);
        for (const auto& [sc, s] : subs)
            if (sc->parsed()) return run_subcommand(*s, flags);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return is_numerical_failure(e.kind()) ? kNumerical : kConfig;
    } catch (const json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kConfig;
    }
    return kConfig;
}
