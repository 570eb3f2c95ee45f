#include "nhm/numkit/stepper.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "nhm/error.hpp"
#include "nhm/numkit/kernels.hpp"

namespace nhm::numkit {

void require_finite(std::span<const double> values, const char* what) {
    for (double v : values)
        if (!std::isfinite(v)) throw Error(ErrorKind::NonFinite, std::string(what) + " contains NaN or Inf");
}

std::string describe(const Stepper& stepper) {
    std::ostringstream os;
    os.precision(17);
    if (const auto* rk4 = std::get_if<Rk4Fixed>(&stepper)) {
        os << "rk4(dt=" << rk4->dt << ")";
    } else {
        const auto& a = std::get<Rk45Adaptive>(stepper);
        os << "rk45(atol=" << a.atol << ",rtol=" << a.rtol << ",dt_min=" << a.dt_min << ",dt_max=" << a.dt_max
           << ")";
    }
    return os.str();
}

namespace {

class Workspace {
public:
    explicit Workspace(std::size_t n) : tmp_(n), k_{} {
        for (auto& k : k_) k.assign(n, 0.0);
    }

    // y ← y advanced by one RK4 step of size h.
    void rk4(const Rhs& rhs, double t, std::vector<double>& y, double h) {
        auto& k1 = k_[0];
        auto& k2 = k_[1];
        auto& k3 = k_[2];
        auto& k4 = k_[3];
        eval(rhs, t, y, k1);
        kernels::scaled_sum(y, 0.5 * h, k1, tmp_);
        eval(rhs, t + 0.5 * h, tmp_, k2);
        kernels::scaled_sum(y, 0.5 * h, k2, tmp_);
        eval(rhs, t + 0.5 * h, tmp_, k3);
        kernels::scaled_sum(y, h, k3, tmp_);
        eval(rhs, t + h, tmp_, k4);
        kernels::rk4_combine(y, h, k1, k2, k3, k4);
        require_finite(y, "RK4 result");
    }

    // Dormand–Prince trial step; returns the scaled error norm (≤ 1 accepts)
    // and leaves the fifth-order solution in out.
    double dopri(const Rhs& rhs, double t, std::span<const double> y, double h, const Rk45Adaptive& tol,
                 std::vector<double>& out) {
        static constexpr double c[7] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
        static constexpr double a[7][6] = {
            {},
            {1.0 / 5},
            {3.0 / 40, 9.0 / 40},
            {44.0 / 45, -56.0 / 15, 32.0 / 9},
            {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
            {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
            {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
        };
        static constexpr double e[7] = {71.0 / 57600,  0.0,          -71.0 / 16695, 71.0 / 1920,
                                        -17253.0 / 339200, 22.0 / 525, -1.0 / 40};
        const std::size_t n = y.size();
        eval(rhs, t, y, k_[0]);
        for (int s = 1; s < 7; ++s) {
            std::copy(y.begin(), y.end(), tmp_.begin());
            for (int j = 0; j < s; ++j)
                if (a[s][j] != 0.0) kernels::axpy(h * a[s][j], k_[static_cast<std::size_t>(j)], tmp_);
            require_finite(tmp_, "RK45 stage");
            eval(rhs, t + c[s] * h, tmp_, k_[static_cast<std::size_t>(s)]);
        }
        out.assign(tmp_.begin(), tmp_.end()); // stage 7 argument is the 5th-order solution
        double err = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double ei = 0.0;
            for (int s = 0; s < 7; ++s) ei += e[s] * k_[static_cast<std::size_t>(s)][i];
            ei *= h;
            const double scale = tol.atol + tol.rtol * std::max(std::abs(y[i]), std::abs(out[i]));
            err = std::max(err, std::abs(ei) / scale);
        }
        return err;
    }

private:
    static void eval(const Rhs& rhs, double t, std::span<const double> y, std::vector<double>& k) {
        rhs(t, y, k);
        require_finite(k, "right-hand side");
    }

    std::vector<double> tmp_;
    std::array<std::vector<double>, 7> k_;
};

void validate(const Rk4Fixed& s) {
    if (!(s.dt > 0.0) || !std::isfinite(s.dt)) throw Error(ErrorKind::InvalidArgument, "rk4 dt must be > 0");
}

void validate(const Rk45Adaptive& s) {
    if (!(s.atol >= 0.0) || !(s.rtol >= 0.0) || (s.atol == 0.0 && s.rtol == 0.0))
        throw Error(ErrorKind::InvalidArgument, "rk45 tolerances must be non-negative and not both zero");
    if (!(s.dt_min > 0.0) || !(s.dt_max >= s.dt_min))
        throw Error(ErrorKind::InvalidArgument, "rk45 requires 0 < dt_min <= dt_max");
}

double next_factor(double err) {
    if (err == 0.0) return 5.0;
    return std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
}

// Shrinks h until the trial step is accepted. Returns the accepted size.
double adaptive_attempt(Workspace& ws, const Rhs& rhs, double t, std::span<const double> y,
                        const Rk45Adaptive& tol, double h, std::vector<double>& out, double& h_next) {
    for (;;) {
        if (h < tol.dt_min)
            throw Error(ErrorKind::StepSizeUnderflow, "adaptive step fell below dt_min at t=" + std::to_string(t));
        const double err = ws.dopri(rhs, t, y, h, tol, out);
        if (err <= 1.0) {
            require_finite(out, "RK45 result");
            h_next = std::min(tol.dt_max, h * next_factor(err));
            return h;
        }
        h *= next_factor(err);
    }
}

} // namespace

StepResult step(const Rhs& rhs, double t, std::span<const double> y, const Stepper& stepper, double dt_hint) {
    require_finite(y, "state");
    Workspace ws(y.size());
    StepResult result;
    if (const auto* rk4 = std::get_if<Rk4Fixed>(&stepper)) {
        validate(*rk4);
        result.state.assign(y.begin(), y.end());
        ws.rk4(rhs, t, result.state, rk4->dt);
        result.dt_used = result.dt_next = rk4->dt;
        return result;
    }
    const auto& tol = std::get<Rk45Adaptive>(stepper);
    validate(tol);
    double h = dt_hint > 0.0 ? dt_hint : tol.dt_initial;
    h = std::clamp(h, tol.dt_min, tol.dt_max);
    result.dt_used = adaptive_attempt(ws, rhs, t, y, tol, h, result.state, result.dt_next);
    return result;
}

double integrate(const Rhs& rhs, double t0, double t1, std::vector<double>& y, const Stepper& stepper,
                 const Observer& observer, const Projection& project) {
    require_finite(y, "initial state");
    if (!(t1 >= t0)) throw Error(ErrorKind::InvalidArgument, "integration span must satisfy t1 >= t0");
    Workspace ws(y.size());
    if (observer && !observer(t0, y)) return t0;

    if (const auto* rk4 = std::get_if<Rk4Fixed>(&stepper)) {
        validate(*rk4);
        const double span = t1 - t0;
        const double ratio = span / rk4->dt;
        auto steps = static_cast<long long>(std::llround(ratio));
        if (std::abs(ratio - static_cast<double>(steps)) > 1e-9 * std::max(1.0, ratio)) {
            steps = static_cast<long long>(std::ceil(ratio));
        }
        double t = t0;
        for (long long k = 0; k < steps; ++k) {
            const double t_next = (k + 1 == steps) ? t1 : t0 + static_cast<double>(k + 1) * rk4->dt;
            ws.rk4(rhs, t, y, t_next - t);
            if (project) project(y);
            t = t_next;
            if (observer && !observer(t, y)) return t;
        }
        return t;
    }

    const auto& tol = std::get<Rk45Adaptive>(stepper);
    validate(tol);
    double t = t0;
    double h = std::clamp(tol.dt_initial, tol.dt_min, tol.dt_max);
    std::vector<double> out(y.size());
    while (t < t1) {
        const double remaining = t1 - t;
        const bool last = h >= remaining;
        double trial = last ? remaining : h;
        double h_next = h;
        if (last && trial < tol.dt_min) {
            // sliver left by roundoff; take it with RK4 rather than underflow
            ws.rk4(rhs, t, y, trial);
            if (project) project(y);
            t = t1;
            if (observer) observer(t, y);
            break;
        }
        const double used = adaptive_attempt(ws, rhs, t, y, tol, trial, out, h_next);
        y.swap(out);
        if (project) project(y);
        t = (last && used == trial) ? t1 : t + used;
        h = h_next;
        if (observer && !observer(t, y)) return t;
    }
    return t;
}

double integrate_sampled(const Rhs& rhs, double t0, double t1, std::vector<double>& y, const Stepper& stepper,
                         int record_every, const std::function<void(double, std::span<const double>)>& record,
                         const Projection& project) {
    if (record_every < 1) throw Error(ErrorKind::InvalidArgument, "record_every must be >= 1");
    const bool fixed = std::holds_alternative<Rk4Fixed>(stepper);
    long count = 0;
    return integrate(
        rhs, t0, t1, y, stepper,
        [&](double t, std::span<const double> s) {
            if (!fixed || count++ % record_every == 0 || t >= t1) record(t, s);
            return true;
        },
        project);
}

} // namespace nhm::numkit
