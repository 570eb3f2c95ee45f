#pragma once

// Unstretchable string sliding along its own track: z(s, t) = u(f(t) − s),
// s measured back from the head. The head path u is arclength-parametrized.

#include <array>
#include <functional>
#include <span>
#include <vector>

#include <boost/math/interpolators/cardinal_cubic_b_spline.hpp>

#include "nhm/numkit/stepper.hpp"
#include "nhm/trajectory/trajectory.hpp"

namespace nhm::snake {

using Point = std::array<double, 2>;

class HeadPath {
public:
    /// Cubic spline through points sampled at uniform parameter spacing h.
    /// End tangents come from one-sided fourth-order differences.
    HeadPath(std::span<const Point> samples, double h);

    /// Samples c on [p0, p1] at n uniform parameters.
    static HeadPath from_function(const std::function<Point(double)>& c, double p0, double p1, std::size_t n);

    double length() const noexcept { return s_table_.back(); }
    Point point(double s) const;
    /// Unit tangent u′(s).
    Point tangent(double s) const;
    /// Spline parameter at arclength s.
    double parameter(double s) const;
    double arclength_at(double p) const;

private:
    double speed(double p) const;

    boost::math::interpolators::cardinal_cubic_b_spline<double> x_, y_;
    double h_ = 1.0;
    std::vector<double> s_table_; // arclength at each knot
};

struct SnakeState {
    double t = 0.0;
    double length = 0.0;
    std::vector<double> s;
    std::vector<Point> z;
};

using Offset = std::function<double(double)>;

/// Throws DomainExceeded when f(t) leaves [L, head.length()].
std::vector<SnakeState> snake_evolve(const HeadPath& head, const Offset& f, std::span<const double> t_grid,
                                     std::span<const double> s_grid);

/// max over s of |z_t × z_s| at time t, z_t by centered differences of width dt.
double collinearity_residual(const HeadPath& head, const Offset& f, double t, double dt,
                             std::span<const double> s_grid);

struct SleighOptions {
    double theta0 = 0.0;
    std::size_t string_samples = 101;
    double frame_dt = 0.05;
    double head_spacing = 2e-3; // arclength between head-path knots
};

struct SleighResult {
    trajectory::Trajectory sleigh;
    std::vector<SnakeState> frames;
    HeadPath head;
};

/// The contact point moves as the string-free sleigh (skate limit, g = 0);
/// the string starts straight behind it and is laid along the track.
SleighResult sleigh_with_string(double v0, double omega0, double L, double t0, double t1,
                                const numkit::Stepper& stepper, const SleighOptions& opt = {});

/// One CSV per frame: columns s,x,y.
std::string frame_csv(const SnakeState& state);

} // namespace nhm::snake
