#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>

#include "nhm/camassaholm/camassaholm.hpp"
#include "nhm/error.hpp"
#include "nhm/loopgroup/loopgroup.hpp"
#include "nhm/masstransport/masstransport.hpp"
#include "nhm/oddfluid/oddfluid.hpp"
#include "runners.hpp"

namespace nhm::cli {

namespace {

using trajectory::Trajectory;
constexpr double kTwoPi = 2 * std::numbers::pi;

std::size_t grid_points(Section& P, int fallback) {
    const int n = P.integer_at_least("n", fallback, 8);
    if ((n & (n - 1)) != 0) P.fail("n", "must be a power of two");
    return static_cast<std::size_t>(n);
}

OutFile csv_file(const std::string& name, const Trajectory& t) { return {name + ".csv", "csv", trajectory::to_csv(t)}; }

double theta_at(std::size_t j, std::size_t n) { return kTwoPi * static_cast<double>(j) / static_cast<double>(n); }

// ---------------------------------------------------------------- spin chain

RunOutput run_heisenberg(RunContext& c) {
    auto& P = c.params;
    const auto n = grid_points(P, 64);
    const bool renorm = P.boolean("renormalize", true);
    P.finish();
    auto& I = c.initial;
    const auto kind = I.choice("kind", "magnon", {"magnon", "fourier"});
    std::vector<double> L;
    int k = 0;
    double eps = 0.0;
    if (kind == "magnon") {
        k = I.integer("k", 1);
        eps = I.number("eps", 0.3);
        L = loopgroup::magnon(n, k, eps);
    } else {
        auto base = I.numbers("base", {0.0, 0.0, 1.0});
        if (base.size() != 3) I.fail("base", "must be a 3-vector");
        L.assign(3 * n, 0.0);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t a = 0; a < 3; ++a) L[a * n + j] = base[a];
        for (auto& t : I.children("terms")) {
            const auto comp = t.choice("component", "x", {"x", "y", "z"});
            const int kk = t.integer("k", 1);
            const double amp = t.number("amplitude", 0.1), ph = t.number("phase", 0.0);
            t.finish();
            const std::size_t a = comp == "x" ? 0 : comp == "y" ? 1 : 2;
            for (std::size_t j = 0; j < n; ++j) L[a * n + j] += amp * std::cos(kk * theta_at(j, n) + ph);
        }
        for (std::size_t j = 0; j < n; ++j) {
            const double r = std::sqrt(L[j] * L[j] + L[n + j] * L[n + j] + L[2 * n + j] * L[2 * n + j]);
            if (r < 1e-8) I.fail("terms", "produce a vanishing spin");
            for (std::size_t a = 0; a < 3; ++a) L[a * n + j] /= r;
        }
    }
    I.finish();

    auto traj = loopgroup::integrate_ll(L, c.cfg.t0, c.cfg.t1, c.cfg.stepper, renorm, c.cfg.record_every);
    RunOutput out;
    out.metrics["energy_rel_drift"] = rel_drift(traj.column("energy"));
    double mom = 0.0;
    for (const char* m : {"momentum_x", "momentum_y", "momentum_z"}) {
        auto v = traj.column(m);
        for (double x : v) mom = std::max(mom, std::abs(x - v[0]));
    }
    out.metrics["momentum_drift"] = mom;
    out.metrics["norm_dev_max"] = max_abs(traj.column("norm_dev"));
    if (kind == "magnon") {
        const double expected = k * k * std::cos(eps);
        const double measured = loopgroup::precession_frequency(traj, 0);
        out.summary["frequency"] = {{"measured", measured}, {"expected", expected}};
        out.metrics["frequency_rel_error"] =
            expected != 0.0 ? std::abs(measured - expected) / std::abs(expected) : std::abs(measured);
    }
    out.summary["ledger"] = ledger_extremes(traj);
    out.summary["t_final"] = traj.times().back();
    out.files.push_back(csv_file("heisenberg", traj));
    trajectory::PlotSpec spec{"Lx0", "Ly0", "spin at theta = 0", true, {}};
    out.files.push_back({"heisenberg.svg", "svg", trajectory::to_svg(traj, spec)});
    return out;
}

std::vector<std::array<double, 2>> curve_xy(std::span<const double> g) {
    const std::size_t n = g.size() / 3;
    std::vector<std::array<double, 2>> pts;
    for (std::size_t j = 0; j <= n; ++j) pts.push_back({g[j % n], g[n + j % n]});
    return pts;
}

RunOutput run_binormal(RunContext& c) {
    auto& P = c.params;
    const auto n = grid_points(P, 64);
    const bool gauss = P.boolean("gauss_map", false);
    P.finish();
    auto& I = c.initial;
    const auto kind = I.choice("kind", "perturbed_circle", {"circle", "perturbed_circle"});
    std::vector<double> g;
    double period = kTwoPi;
    if (kind == "circle") {
        const double r = I.positive("radius", 1.0);
        period = kTwoPi * r;
        g.assign(3 * n, 0.0);
        for (std::size_t j = 0; j < n; ++j) {
            g[j] = r * std::cos(theta_at(j, n));
            g[n + j] = r * std::sin(theta_at(j, n));
        }
    } else {
        const double a = I.number("amplitude", 0.05);
        const int m = I.integer_at_least("harmonic", 3, 1);
        if (std::abs(a) >= 1.0) I.fail("amplitude", "must be below 1 in magnitude");
        g = loopgroup::perturbed_circle(n, a, m);
    }
    I.finish();
    if (gauss && kind == "circle" && period != kTwoPi)
        throw Error(ErrorKind::Config, "params.gauss_map needs a curve of length 2*pi");

    auto traj = loopgroup::integrate_binormal(g, c.cfg.t0, c.cfg.t1, c.cfg.stepper, c.cfg.record_every, period);
    RunOutput out;
    out.metrics["length_rel_drift"] = rel_drift(traj.column("length"));
    out.metrics["speed_dev_max"] = max_abs(traj.column("speed_dev"));
    if (gauss)
        out.metrics["gauss_map_gap"] =
            loopgroup::gauss_map_consistency(g, c.cfg.t0, c.cfg.t1, c.cfg.stepper, c.cfg.record_every);
    out.summary["ledger"] = ledger_extremes(traj);
    out.summary["t_final"] = traj.times().back();
    out.files.push_back(csv_file("binormal", traj));
    std::vector<std::vector<std::array<double, 2>>> frames;
    for (std::size_t i = 0; i < traj.size(); ++i) frames.push_back(curve_xy(traj.state(i)));
    out.files.push_back({"binormal.svg", "svg", timelapse_svg(frames, "binormal flow (x-y projection)")});
    return out;
}

// ---------------------------------------------------------------- Camassa-Holm

RunOutput run_camassa_holm(RunContext& c) {
    auto& P = c.params;
    const auto n = grid_points(P, 256);
    const double kappa = P.number("kappa", 0.0);
    P.finish();
    auto& I = c.initial;
    const double mean = I.number("mean", 0.0);
    std::vector<double> u(n, mean);
    for (auto& t : I.children("terms")) {
        const int k = t.integer_at_least("k", 1, 1);
        const double a = t.number("amplitude", 0.1), ph = t.number("phase", 0.0);
        t.finish();
        for (std::size_t j = 0; j < n; ++j) u[j] += a * std::cos(k * theta_at(j, n) + ph);
    }
    I.finish();
    numkit::Spectral1D sp(n, kTwoPi);
    const auto m0 = camassaholm::momentum(sp, u);
    auto traj = camassaholm::integrate_ch(m0, kappa, c.cfg.t0, c.cfg.t1, c.cfg.stepper, c.cfg.record_every);
    RunOutput out;
    auto means = traj.column("mean");
    double dm = 0.0;
    for (double x : means) dm = std::max(dm, std::abs(x - means[0]));
    out.metrics["mean_max"] = max_abs(means);
    out.metrics["mean_drift"] = dm;
    out.metrics["energy_rel_drift"] = rel_drift(traj.column("energy"));
    out.summary["ledger"] = ledger_extremes(traj);
    out.summary["t_final"] = traj.times().back();
    out.files.push_back(csv_file("camassa_holm", traj));

    const auto back = traj.back_state();
    const auto uf = camassaholm::helmholtz_inverse(sp, std::vector<double>(back.begin(), back.end()));
    Trajectory prof("profile", {"theta", "u"}, {});
    for (std::size_t j = 0; j < n; ++j) prof.append(static_cast<double>(j), std::vector<double>{theta_at(j, n), uf[j]});
    trajectory::Overlay first;
    for (std::size_t j = 0; j < n; ++j) {
        first.xs.push_back(theta_at(j, n));
        first.ys.push_back(u[j]);
    }
    first.opacity = 0.4;
    trajectory::PlotSpec spec{"theta", "u", "u at t0 (grey) and t1", false, {first}};
    out.files.push_back({"camassa_holm.svg", "svg", trajectory::to_svg(prof, spec)});
    return out;
}

// ---------------------------------------------------------------- odd fluid

oddfluid::PowerSeries parse_series(Section& s, const std::string& key) {
    oddfluid::PowerSeries ps;
    auto raw = s.raw(key);
    if (!raw) return ps;
    if (!raw->is_array()) s.fail(key, "must be a list of [coefficient, power] pairs");
    for (const auto& t : *raw) {
        if (!t.is_array() || t.size() != 2 || !t[0].is_number() || !t[1].is_number())
            s.fail(key, "must be a list of [coefficient, power] pairs");
        ps.terms.emplace_back(t[0].get<double>(), t[1].get<double>());
    }
    return ps;
}

std::string snapshot_name(const char* field, std::size_t k) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "snapshots/%s_%04zu.csv", field, k);
    return buf;
}

RunOutput run_odd_fluid(RunContext& c) {
    auto& P = c.params;
    const auto sys = oddfluid::fluid_system_from_string(P.choice("system", "base", {"base", "extended", "effective"}));
    const auto n = grid_points(P, 64);
    const double rho_mean = P.positive("rho_mean", 1.0);
    oddfluid::FluidParams fp;
    auto E = P.child("energy");
    const auto ek = E.choice("kind", "isothermal", {"isothermal", "polytropic2"});
    fp.energy.kind = ek == "isothermal" ? oddfluid::InternalEnergy::Kind::Isothermal
                                        : oddfluid::InternalEnergy::Kind::Polytropic2;
    fp.energy.c = E.positive("c", 1.0);
    fp.energy.kappa = E.positive("kappa", 1.0);
    E.finish();
    fp.eta_h = parse_series(P, "eta_h");
    fp.gamma_h = parse_series(P, "gamma_h");
    fp.mu = P.positive("mu", 1.0);
    fp.nu = P.positive("nu", 0.1);
    oddfluid::FluidRunOptions opt;
    opt.record_every = c.cfg.record_every;
    opt.snapshot_every = P.integer_at_least("snapshot_every", 0, 0);
    opt.dealias = P.boolean("dealias", true);
    P.finish();

    std::vector<oddfluid::FourierTerm> terms;
    for (auto& t : c.initial.children("terms")) {
        oddfluid::FourierTerm ft;
        ft.field = t.choice("field", "rho", {"rho", "vx", "vy", "dl"});
        ft.kx = t.integer("kx", 0);
        ft.ky = t.integer("ky", 0);
        ft.amplitude = t.number("amplitude", 0.0);
        ft.phase = t.number("phase", 0.0);
        t.finish();
        terms.push_back(ft);
    }
    const bool slaved = c.initial.boolean("slaved_dl", false);
    c.initial.finish();
    oddfluid::validate(fp);

    const bool ext = sys == oddfluid::FluidSystem::Extended;
    auto s0 = oddfluid::fluid_from_fourier(n, rho_mean, terms, ext);
    if (slaved && ext) s0.dl = oddfluid::slaved_dl(numkit::Spectral2D(n, kTwoPi), s0, fp);
    auto run = oddfluid::integrate_fluid(sys, s0, fp, c.cfg.t0, c.cfg.t1, c.cfg.stepper, opt);
    const auto& tr = run.summary;

    RunOutput out;
    const auto rho_min = tr.column("rho_min");
    out.metrics["rho_min"] = *std::min_element(rho_min.begin(), rho_min.end());
    if (ext) {
        auto h = tr.column("energy_nu"), d = tr.column("dissipated");
        double bal = 0.0;
        for (std::size_t i = 0; i < h.size(); ++i) bal = std::max(bal, std::abs(h[i] - h[0] + d[i]));
        out.metrics["balance_rel"] = bal / std::abs(h[0]);
        out.metrics["energy_rel_drift"] = rel_drift(h);
    } else {
        out.metrics["energy_rel_drift"] = rel_drift(tr.column("energy"));
    }
    out.summary["final"] = final_row(tr);
    out.summary["ledger"] = ledger_extremes(tr);
    out.summary["snapshots"] = run.snapshots.size();
    out.files.push_back(csv_file("odd_fluid", tr));
    for (std::size_t k = 0; k < run.snapshots.size(); ++k) {
        const auto& s = run.snapshots[k];
        out.files.push_back({snapshot_name("rho", k), "csv", oddfluid::field_csv(n, s.rho)});
        out.files.push_back({snapshot_name("vx", k), "csv", oddfluid::field_csv(n, s.vx)});
        out.files.push_back({snapshot_name("vy", k), "csv", oddfluid::field_csv(n, s.vy)});
        if (s.extended()) out.files.push_back({snapshot_name("dl", k), "csv", oddfluid::field_csv(n, s.dl)});
    }
    return out;
}

// ---------------------------------------------------------------- Burgers

RunOutput run_burgers(RunContext& c) {
    auto& P = c.params;
    const auto n = grid_points(P, 128);
    const auto mode = P.choice("mode", "both", {"burgers", "hj", "both"});
    P.finish();
    std::vector<masstransport::FourierTerm> terms;
    for (auto& t : c.initial.children("terms")) {
        masstransport::FourierTerm ft;
        ft.field = t.choice("field", "f", {"f", "ux", "uy"});
        ft.kx = t.integer("kx", 0);
        ft.ky = t.integer("ky", 0);
        ft.amplitude = t.number("amplitude", 0.0);
        ft.phase = t.number("phase", 0.0);
        t.finish();
        terms.push_back(ft);
    }
    c.initial.finish();
    const bool potential = std::all_of(terms.begin(), terms.end(), [](const auto& t) { return t.field == "f"; });
    if (mode != "burgers" && !potential)
        throw Error(ErrorKind::Config, "params.mode '" + mode + "' needs potential data (field f only)");

    numkit::Spectral2D sp(n, kTwoPi);
    const auto f0 = masstransport::fourier_field(n, terms, "f");
    auto u0 = masstransport::gradient(sp, f0);
    {
        const auto ux = masstransport::fourier_field(n, terms, "ux");
        const auto uy = masstransport::fourier_field(n, terms, "uy");
        for (std::size_t q = 0; q < ux.size(); ++q) {
            u0.ux[q] += ux[q];
            u0.uy[q] += uy[q];
        }
    }
    RunOutput out;
    std::optional<masstransport::BurgersRun> b;
    std::optional<masstransport::PotentialRun> h;
    if (mode != "hj") {
        b = masstransport::integrate_burgers(u0, c.cfg.t0, c.cfg.t1, c.cfg.stepper, c.cfg.record_every);
        out.metrics["curl_max"] = masstransport::potentiality_check(b->summary);
        out.summary["burgers"] = {{"final", final_row(b->summary)}};
        out.files.push_back(csv_file("burgers", b->summary));
        out.files.push_back({"final/ux.csv", "csv", oddfluid::field_csv(n, b->final_velocity.ux)});
        out.files.push_back({"final/uy.csv", "csv", oddfluid::field_csv(n, b->final_velocity.uy)});
    }
    if (mode != "burgers") {
        h = masstransport::integrate_hj(f0, c.cfg.t0, c.cfg.t1, c.cfg.stepper, c.cfg.record_every);
        out.summary["hamilton_jacobi"] = {{"final", final_row(h->summary)}};
        out.files.push_back(csv_file("hamilton_jacobi", h->summary));
        out.files.push_back({"final/f.csv", "csv", oddfluid::field_csv(n, h->final_potential)});
    }
    if (b && h) {
        const auto g = masstransport::gradient(sp, h->final_potential);
        double gap = 0.0;
        for (std::size_t q = 0; q < g.ux.size(); ++q)
            gap = std::max({gap, std::abs(g.ux[q] - b->final_velocity.ux[q]), std::abs(g.uy[q] - b->final_velocity.uy[q])});
        out.metrics["hj_gap"] = gap;
    }
    return out;
}

} // namespace

std::vector<Subcommand> field_subcommands() {
    return {
        {"heisenberg", "Landau-Lifschitz spin chain dL/dt = L x L'' on the circle",
         "CSV heisenberg.csv: t,Lx0..Lx{n-1},Ly0..,Lz0..,norm_dev,energy,momentum_x,momentum_y,momentum_z\n"
         "params: n, renormalize; initial: kind magnon {k, eps} or fourier {base, terms [{component, k, amplitude, phase}]}",
         {"energy_rel_drift", "momentum_drift", "norm_dev_max", "frequency_rel_error"}, run_heisenberg},
        {"binormal", "Binormal (vortex filament) flow of a closed curve",
         "CSV binormal.csv: t,gx0..gx{n-1},gy0..,gz0..,length,speed_dev\n"
         "params: n, gauss_map; initial: kind circle {radius} or perturbed_circle {amplitude, harmonic}",
         {"length_rel_drift", "speed_dev_max", "gauss_map_gap"}, run_binormal},
        {"camassa-holm", "Camassa-Holm equation with dispersion kappa on the circle, momentum form",
         "CSV camassa_holm.csv: t,m0..m{n-1},mean,energy\n"
         "params: n, kappa; initial: mean, terms [{k, amplitude, phase}] on u",
         {"mean_max", "mean_drift", "energy_rel_drift"}, run_camassa_holm},
        {"odd-fluid", "Compressible 2-D fluid with odd viscosity and odd torque (base, extended, effective)",
         "CSV odd_fluid.csv: t,rho_min,rho_max,kinetic,div_l2,dl_max,energy[,energy_nu,rayleigh,dissipated]\n"
         "  snapshots/<field>_NNNN.csv: n rows of n values (row = y index)\n"
         "params: system, n, rho_mean, energy {kind isothermal|polytropic2, c, kappa}, eta_h, gamma_h\n"
         "  ([[coefficient, power], ...]), mu, nu, snapshot_every, dealias;\n"
         "initial: terms [{field rho|vx|vy|dl, kx, ky, amplitude, phase}], slaved_dl",
         {"energy_rel_drift", "balance_rel", "rho_min"}, run_odd_fluid},
        {"burgers", "Inviscid Burgers flow and the Hamilton-Jacobi flow of its potential",
         "CSV burgers.csv: t,curl_max,tail,u_max; hamilton_jacobi.csv: t,f_min,f_max,tail;\n"
         "  final/{ux,uy,f}.csv: n rows of n values\n"
         "params: n, mode (burgers|hj|both); initial: terms [{field f|ux|uy, kx, ky, amplitude, phase}]",
         {"curl_max", "hj_gap"}, run_burgers},
    };
}

} // namespace nhm::cli
