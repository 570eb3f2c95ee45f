#pragma once

// Jet: a truncated multi-dual number in R[ε₁,…,ε_L]/(ε_i²). Coefficient
// index is a bitmask over the ε's, so a Jet with L levels carries 2^L
// coefficients. Adding a level is how a directional derivative of an
// already-differentiated expression is taken, which is what nested Lie
// brackets need: [V,W] at a Jet point with L levels evaluates V and W at
// L+1 levels.

#include <cstddef>
#include <span>
#include <vector>

namespace nhm::numkit {

class Jet {
public:
    static constexpr int kMaxLevels = 10;

    Jet() : coeffs_(1, 0.0) {}
    Jet(double value) : coeffs_(1, value) {} // NOLINT: implicit constant promotion
    Jet(double value, int levels);

    int levels() const noexcept { return levels_; }
    double value() const noexcept { return coeffs_[0]; }

    double coeff(std::size_t mask) const noexcept {
        return mask < coeffs_.size() ? coeffs_[mask] : 0.0;
    }
    void set_coeff(std::size_t mask, double v);

    std::span<const double> coeffs() const noexcept { return coeffs_; }

    /// Same number seen with more levels (new coefficients are zero).
    Jet lifted(int levels) const;

    /// x + ε_{L+1}·d where L = max(levels of x, d): the seed for a
    /// directional derivative along d.
    static Jet seeded(const Jet& x, const Jet& d);

    /// Coefficient of the top ε, as a Jet with one level fewer.
    Jet top_part() const;
    /// Everything but the top ε, as a Jet with one level fewer.
    Jet base_part() const;

    Jet& operator+=(const Jet& o);
    Jet& operator-=(const Jet& o);
    Jet& operator*=(const Jet& o);
    Jet& operator/=(const Jet& o);

    friend Jet operator+(Jet a, const Jet& b) { return a += b; }
    friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
    friend Jet operator*(const Jet& a, const Jet& b);
    friend Jet operator/(const Jet& a, const Jet& b);
    friend Jet operator-(Jet a);

    friend bool operator<(const Jet& a, const Jet& b) { return a.value() < b.value(); }
    friend bool operator>(const Jet& a, const Jet& b) { return a.value() > b.value(); }

    /// f(a + n) = Σ_k taylor[k]·n^k for the nilpotent part n; taylor[k] must
    /// hold f^(k)(a)/k! for k = 0..levels().
    Jet compose(std::span<const double> taylor) const;

private:
    void grow_to(int levels);

    int levels_ = 0;
    std::vector<double> coeffs_;
};

Jet sin(const Jet& x);
Jet cos(const Jet& x);
Jet tan(const Jet& x);
Jet exp(const Jet& x);
Jet log(const Jet& x);
Jet sqrt(const Jet& x);
Jet pow(const Jet& x, double p);
Jet inverse(const Jet& x);

inline double primal(const Jet& x) { return x.value(); }

} // namespace nhm::numkit
