#include "nhm/snake/snake.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>

#include "nhm/error.hpp"
#include "nhm/skate/skate.hpp"

namespace nhm::snake {

namespace {

std::vector<double> coord(std::span<const Point> pts, int k) {
    if (pts.size() < 5) throw Error(ErrorKind::InvalidArgument, "head path needs at least 5 samples");
    std::vector<double> v(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) v[i] = pts[i][static_cast<std::size_t>(k)];
    return v;
}

double end_slope(const std::vector<double>& v, double h, bool left) {
    const std::size_t n = v.size();
    auto f = [&](std::size_t i) { return left ? v[i] : v[n - 1 - i]; };
    const double d = (-25 * f(0) + 48 * f(1) - 36 * f(2) + 16 * f(3) - 3 * f(4)) / (12 * h);
    return left ? d : -d;
}

} // namespace

HeadPath::HeadPath(std::span<const Point> samples, double h)
    : h_(h) {
    if (!(h > 0)) throw Error(ErrorKind::InvalidArgument, "head path spacing must be positive");
    auto xs = coord(samples, 0);
    auto ys = coord(samples, 1);
    x_ = {xs.begin(), xs.end(), 0.0, h, end_slope(xs, h, true), end_slope(xs, h, false)};
    y_ = {ys.begin(), ys.end(), 0.0, h, end_slope(ys, h, true), end_slope(ys, h, false)};
    s_table_.assign(samples.size(), 0.0);
    for (std::size_t k = 1; k < samples.size(); ++k) {
        const double a = static_cast<double>(k - 1) * h;
        s_table_[k] = s_table_[k - 1] + boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
                                            [this](double p) { return speed(p); }, a, a + h, 8, 1e-12);
        if (!(s_table_[k] > s_table_[k - 1])) throw Error(ErrorKind::InvalidArgument, "head path is not immersed");
    }
}

HeadPath HeadPath::from_function(const std::function<Point(double)>& c, double p0, double p1, std::size_t n) {
    if (n < 5 || !(p1 > p0)) throw Error(ErrorKind::InvalidArgument, "bad head path sampling");
    std::vector<Point> pts(n);
    const double h = (p1 - p0) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) pts[i] = c(p0 + static_cast<double>(i) * h);
    return HeadPath(pts, h);
}

double HeadPath::speed(double p) const { return std::hypot(x_.prime(p), y_.prime(p)); }

double HeadPath::arclength_at(double p) const {
    const double pmax = h_ * static_cast<double>(s_table_.size() - 1);
    p = std::clamp(p, 0.0, pmax);
    auto k = std::min(static_cast<std::size_t>(p / h_), s_table_.size() - 2);
    const double a = static_cast<double>(k) * h_;
    if (p == a) return s_table_[k];
    return s_table_[k] + boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
                             [this](double q) { return speed(q); }, a, p, 8, 1e-12);
}

double HeadPath::parameter(double s) const {
    if (s < -1e-12 || s > length() + 1e-12)
        throw Error(ErrorKind::DomainExceeded, "arclength outside head path");
    s = std::clamp(s, 0.0, length());
    auto it = std::upper_bound(s_table_.begin(), s_table_.end(), s);
    std::size_t k = it == s_table_.begin() ? 0 : static_cast<std::size_t>(it - s_table_.begin()) - 1;
    if (k >= s_table_.size() - 1) return h_ * static_cast<double>(s_table_.size() - 1);
    if (s == s_table_[k]) return h_ * static_cast<double>(k);
    const double a = h_ * static_cast<double>(k), b = a + h_;
    auto g = [&](double p) { return arclength_at(p) - s; };
    std::uintmax_t iters = 60;
    auto r = boost::math::tools::toms748_solve(g, a, b, s_table_[k] - s, s_table_[k + 1] - s,
                                               boost::math::tools::eps_tolerance<double>(50), iters);
    return 0.5 * (r.first + r.second);
}

Point HeadPath::point(double s) const {
    const double p = parameter(s);
    return {x_(p), y_(p)};
}

Point HeadPath::tangent(double s) const {
    const double p = parameter(s);
    const double dx = x_.prime(p), dy = y_.prime(p), n = std::hypot(dx, dy);
    return {dx / n, dy / n};
}

std::vector<SnakeState> snake_evolve(const HeadPath& head, const Offset& f, std::span<const double> t_grid,
                                     std::span<const double> s_grid) {
    if (s_grid.empty() || s_grid.front() != 0.0)
        throw Error(ErrorKind::InvalidArgument, "s grid must start at the head (s = 0)");
    if (!std::is_sorted(s_grid.begin(), s_grid.end()))
        throw Error(ErrorKind::InvalidArgument, "s grid must be increasing");
    const double L = s_grid.back();
    std::vector<SnakeState> out;
    out.reserve(t_grid.size());
    double prev = -INFINITY;
    for (double t : t_grid) {
        const double ft = f(t);
        if (ft < prev) throw Error(ErrorKind::InvalidArgument, "offset f must be nondecreasing");
        prev = ft;
        if (ft < L - 1e-12 || ft > head.length() + 1e-12)
            throw Error(ErrorKind::DomainExceeded, "offset leaves [L, S_max] at t = " + std::to_string(t));
        SnakeState st{t, L, {s_grid.begin(), s_grid.end()}, {}};
        st.z.reserve(s_grid.size());
        for (double s : s_grid) st.z.push_back(head.point(ft - s));
        out.push_back(std::move(st));
    }
    return out;
}

double collinearity_residual(const HeadPath& head, const Offset& f, double t, double dt,
                             std::span<const double> s_grid) {
    const double fp = f(t + dt), fm = f(t - dt), f0 = f(t);
    double worst = 0.0;
    for (double s : s_grid) {
        const Point a = head.point(fp - s), b = head.point(fm - s);
        const double zt_x = (a[0] - b[0]) / (2 * dt), zt_y = (a[1] - b[1]) / (2 * dt);
        const Point tan = head.tangent(f0 - s);
        // z_s = −u′
        worst = std::max(worst, std::abs(zt_x * tan[1] - zt_y * tan[0]));
    }
    return worst;
}

SleighResult sleigh_with_string(double v0, double omega0, double L, double t0, double t1,
                                const numkit::Stepper& stepper, const SleighOptions& opt) {
    if (!(L > 0)) throw Error(ErrorKind::InvalidArgument, "string length must be positive");
    if (!(t1 > t0)) throw Error(ErrorKind::InvalidArgument, "empty time span");
    if (opt.string_samples < 2 || !(opt.frame_dt > 0) || !(opt.head_spacing > 0))
        throw Error(ErrorKind::InvalidArgument, "bad sleigh options");

    skate::SkateInitial init;
    init.theta = opt.theta0;
    init.v = v0;
    init.omega = omega0;

    // frames at uniform times
    const auto nframes = static_cast<std::size_t>(std::floor((t1 - t0) / opt.frame_dt + 1e-9)) + 1;
    trajectory::Trajectory sleigh("sleigh", {"x", "y", "theta", "omega", "rho"}, {"energy"});
    auto q = skate::initial_state(skate::SkateSystem::Lda, init);
    std::vector<double> frame_t(nframes);
    for (std::size_t k = 0; k < nframes; ++k) {
        frame_t[k] = t0 + static_cast<double>(k) * opt.frame_dt;
        if (k > 0)
            numkit::integrate([&](double, std::span<const double> y, std::span<double> d) { skate::lda_limit_rhs(y, 0.0, d); },
                              frame_t[k - 1], frame_t[k], q, stepper);
        const double e = skate::skate_energy(q, 0.0);
        sleigh.append(frame_t[k], q, std::span<const double>(&e, 1));
    }
    sleigh.meta()["stepper"] = numkit::describe(stepper);

    // head track: straight string behind the start, then the traversed path
    const double speed = std::abs(v0);
    const double dir = v0 < 0 ? -1.0 : 1.0;
    const double cx = dir * std::cos(opt.theta0), cy = dir * std::sin(opt.theta0);
    const auto nback = static_cast<std::size_t>(std::ceil(L / opt.head_spacing));
    const double hb = L / static_cast<double>(nback);
    std::vector<Point> pts;
    for (std::size_t i = 0; i < nback; ++i) {
        const double back = L - static_cast<double>(i) * hb;
        pts.push_back({-back * cx, -back * cy});
    }
    const double travel = speed * (frame_t.back() - t0);
    const auto nfwd = std::max<std::size_t>(3, static_cast<std::size_t>(std::ceil(travel / hb)) + 1);
    auto qh = skate::initial_state(skate::SkateSystem::Lda, init);
    pts.push_back({qh[0], qh[1]});
    if (speed > 0) {
        const double dt = hb / speed;
        for (std::size_t i = 1; i <= nfwd; ++i) {
            numkit::integrate([&](double, std::span<const double> y, std::span<double> d) { skate::lda_limit_rhs(y, 0.0, d); },
                              t0 + static_cast<double>(i - 1) * dt, t0 + static_cast<double>(i) * dt, qh, stepper);
            pts.push_back({qh[0], qh[1]});
        }
    } else {
        for (std::size_t i = 1; i <= 3; ++i) pts.push_back({static_cast<double>(i) * hb * cx, static_cast<double>(i) * hb * cy});
    }
    HeadPath head(pts, hb);
    const double head_start = head.arclength_at(static_cast<double>(nback) * hb);

    std::vector<double> s_grid(opt.string_samples);
    for (std::size_t i = 0; i < s_grid.size(); ++i)
        s_grid[i] = L * static_cast<double>(i) / static_cast<double>(s_grid.size() - 1);
    auto frames = snake_evolve(head, [&](double t) { return head_start + speed * (t - t0); }, frame_t, s_grid);
    return {std::move(sleigh), std::move(frames), std::move(head)};
}

std::string frame_csv(const SnakeState& state) {
    std::string out = "s,x,y\n";
    for (std::size_t i = 0; i < state.s.size(); ++i) {
        out += trajectory::format_double(state.s[i]);
        out += ',';
        out += trajectory::format_double(state.z[i][0]);
        out += ',';
        out += trajectory::format_double(state.z[i][1]);
        out += '\n';
    }
    return out;
}

} // namespace nhm::snake
