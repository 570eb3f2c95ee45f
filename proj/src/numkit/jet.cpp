#include "nhm/numkit/jet.hpp"

#include <algorithm>
#include <cmath>

#include "nhm/error.hpp"

namespace nhm::numkit {

Jet::Jet(double value, int levels) {
    if (levels < 0 || levels > kMaxLevels)
        throw Error(ErrorKind::InvalidArgument, "jet level count out of range");
    levels_ = levels;
    coeffs_.assign(std::size_t{1} << levels, 0.0);
    coeffs_[0] = value;
}

void Jet::set_coeff(std::size_t mask, double v) {
    int need = 0;
    while ((std::size_t{1} << need) <= mask) ++need;
    grow_to(need);
    coeffs_[mask] = v;
}

void Jet::grow_to(int levels) {
    if (levels <= levels_) return;
    if (levels > kMaxLevels)
        throw Error(ErrorKind::InvalidArgument, "jet level count out of range");
    coeffs_.resize(std::size_t{1} << levels, 0.0);
    levels_ = levels;
}

Jet Jet::lifted(int levels) const {
    Jet out = *this;
    out.grow_to(levels);
    return out;
}

Jet Jet::seeded(const Jet& x, const Jet& d) {
    const int base = std::max(x.levels_, d.levels_);
    Jet out(0.0, base + 1);
    const std::size_t half = std::size_t{1} << base;
    for (std::size_t m = 0; m < x.coeffs_.size(); ++m) out.coeffs_[m] = x.coeffs_[m];
    for (std::size_t m = 0; m < d.coeffs_.size(); ++m) out.coeffs_[half + m] = d.coeffs_[m];
    return out;
}

Jet Jet::top_part() const {
    if (levels_ == 0) return Jet(0.0);
    Jet out(0.0, levels_ - 1);
    const std::size_t half = coeffs_.size() / 2;
    std::copy(coeffs_.begin() + static_cast<std::ptrdiff_t>(half), coeffs_.end(), out.coeffs_.begin());
    return out;
}

Jet Jet::base_part() const {
    if (levels_ == 0) return *this;
    Jet out(0.0, levels_ - 1);
    const std::size_t half = coeffs_.size() / 2;
    std::copy(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(half), out.coeffs_.begin());
    return out;
}

Jet& Jet::operator+=(const Jet& o) {
    grow_to(o.levels_);
    for (std::size_t m = 0; m < o.coeffs_.size(); ++m) coeffs_[m] += o.coeffs_[m];
    return *this;
}

Jet& Jet::operator-=(const Jet& o) {
    grow_to(o.levels_);
    for (std::size_t m = 0; m < o.coeffs_.size(); ++m) coeffs_[m] -= o.coeffs_[m];
    return *this;
}

Jet& Jet::operator*=(const Jet& o) {
    *this = *this * o;
    return *this;
}

Jet& Jet::operator/=(const Jet& o) {
    *this = *this / o;
    return *this;
}

Jet operator-(Jet a) {
    for (double& c : a.coeffs_) c = -c;
    return a;
}

// Subset convolution: c[m] = Σ_{s ⊆ m} a[s]·b[m∖s]. Submasks are visited in
// a fixed descending order so results are reproducible bit for bit.
Jet operator*(const Jet& a, const Jet& b) {
    if (a.levels_ == 0) {
        Jet out = b;
        for (double& c : out.coeffs_) c *= a.coeffs_[0];
        return out;
    }
    if (b.levels_ == 0) {
        Jet out = a;
        for (double& c : out.coeffs_) c *= b.coeffs_[0];
        return out;
    }
    const int levels = std::max(a.levels_, b.levels_);
    Jet out(0.0, levels);
    const std::size_t size = out.coeffs_.size();
    for (std::size_t m = 0; m < size; ++m) {
        double acc = 0.0;
        for (std::size_t s = m;; s = (s - 1) & m) {
            acc += a.coeff(s) * b.coeff(m ^ s);
            if (s == 0) break;
        }
        out.coeffs_[m] = acc;
    }
    return out;
}

Jet operator/(const Jet& a, const Jet& b) {
    if (b.levels_ == 0) {
        Jet out = a;
        for (double& c : out.coeffs_) c /= b.coeffs_[0];
        return out;
    }
    return a * inverse(b);
}

Jet Jet::compose(std::span<const double> taylor) const {
    // Horner in the nilpotent part; n^(L+1) = 0 so L+1 coefficients suffice.
    Jet nil = *this;
    nil.coeffs_[0] = 0.0;
    Jet acc(taylor[static_cast<std::size_t>(levels_)]);
    for (int k = levels_ - 1; k >= 0; --k) {
        acc = acc * nil;
        acc.coeffs_[0] += taylor[static_cast<std::size_t>(k)];
    }
    return acc.lifted(levels_);
}

namespace {

std::vector<double> taylor_sin_cos(double a, int levels, bool is_sin) {
    // d^k/da^k sin = sin(a + kπ/2)
    const double s = std::sin(a);
    const double c = std::cos(a);
    const double cycle_sin[4] = {s, c, -s, -c};
    const double cycle_cos[4] = {c, -s, -c, s};
    std::vector<double> t(static_cast<std::size_t>(levels) + 1);
    double fact = 1.0;
    for (int k = 0; k <= levels; ++k) {
        if (k > 0) fact *= k;
        t[static_cast<std::size_t>(k)] = (is_sin ? cycle_sin[k % 4] : cycle_cos[k % 4]) / fact;
    }
    return t;
}

} // namespace

Jet sin(const Jet& x) {
    if (x.levels() == 0) return Jet(std::sin(x.value()));
    return x.compose(taylor_sin_cos(x.value(), x.levels(), true));
}

Jet cos(const Jet& x) {
    if (x.levels() == 0) return Jet(std::cos(x.value()));
    return x.compose(taylor_sin_cos(x.value(), x.levels(), false));
}

Jet tan(const Jet& x) {
    if (x.levels() == 0) return Jet(std::tan(x.value()));
    return sin(x) / cos(x);
}

Jet exp(const Jet& x) {
    const double e = std::exp(x.value());
    if (x.levels() == 0) return Jet(e);
    std::vector<double> t(static_cast<std::size_t>(x.levels()) + 1);
    double fact = 1.0;
    for (int k = 0; k <= x.levels(); ++k) {
        if (k > 0) fact *= k;
        t[static_cast<std::size_t>(k)] = e / fact;
    }
    return x.compose(t);
}

Jet log(const Jet& x) {
    const double a = x.value();
    if (x.levels() == 0) return Jet(std::log(a));
    std::vector<double> t(static_cast<std::size_t>(x.levels()) + 1);
    t[0] = std::log(a);
    double apow = 1.0;
    for (int k = 1; k <= x.levels(); ++k) {
        apow *= a;
        t[static_cast<std::size_t>(k)] = ((k % 2 == 1) ? 1.0 : -1.0) / (k * apow);
    }
    return x.compose(t);
}

Jet pow(const Jet& x, double p) {
    const double a = x.value();
    if (x.levels() == 0) return Jet(std::pow(a, p));
    std::vector<double> t(static_cast<std::size_t>(x.levels()) + 1);
    // generalized binomial: C(p, k)·a^(p−k)
    double binom = 1.0;
    for (int k = 0; k <= x.levels(); ++k) {
        if (k > 0) binom *= (p - (k - 1)) / k;
        t[static_cast<std::size_t>(k)] = binom * std::pow(a, p - k);
    }
    return x.compose(t);
}

Jet sqrt(const Jet& x) { return pow(x, 0.5); }

Jet inverse(const Jet& x) {
    const double a = x.value();
    if (x.levels() == 0) return Jet(1.0 / a);
    std::vector<double> t(static_cast<std::size_t>(x.levels()) + 1);
    double v = 1.0 / a;
    for (int k = 0; k <= x.levels(); ++k) {
        t[static_cast<std::size_t>(k)] = v;
        v *= -1.0 / a;
    }
    return x.compose(t);
}

} // namespace nhm::numkit
