#pragma once

// Forward-mode dual numbers a + b·ε with ε² = 0. One directional derivative
// per evaluation; nest Dual<Dual<T>> for mixed second derivatives.

#include <cmath>
#include <type_traits>

namespace nhm::numkit {

template <class T>
struct Dual {
    T val{};
    T der{};

    constexpr Dual() = default;
    constexpr Dual(T v) : val(v), der{} {} // constants have zero derivative
    constexpr Dual(T v, T d) : val(v), der(d) {}

    constexpr Dual& operator+=(const Dual& o) { val += o.val; der += o.der; return *this; }
    constexpr Dual& operator-=(const Dual& o) { val -= o.val; der -= o.der; return *this; }
    constexpr Dual& operator*=(const Dual& o) { *this = *this * o; return *this; }
    constexpr Dual& operator/=(const Dual& o) { *this = *this / o; return *this; }

    friend constexpr Dual operator+(const Dual& a, const Dual& b) { return {a.val + b.val, a.der + b.der}; }
    friend constexpr Dual operator-(const Dual& a, const Dual& b) { return {a.val - b.val, a.der - b.der}; }
    friend constexpr Dual operator-(const Dual& a) { return {-a.val, -a.der}; }
    friend constexpr Dual operator*(const Dual& a, const Dual& b) {
        return {a.val * b.val, a.val * b.der + a.der * b.val};
    }
    friend constexpr Dual operator/(const Dual& a, const Dual& b) {
        return {a.val / b.val, (a.der * b.val - a.val * b.der) / (b.val * b.val)};
    }
    friend constexpr bool operator<(const Dual& a, const Dual& b) { return a.val < b.val; }
    friend constexpr bool operator>(const Dual& a, const Dual& b) { return a.val > b.val; }
};

template <class T> struct is_dual : std::false_type {};
template <class T> struct is_dual<Dual<T>> : std::true_type {};
template <class T> inline constexpr bool is_dual_v = is_dual<T>::value;

/// Underlying real value at any nesting depth.
template <class T>
constexpr double primal(const T& x) {
    if constexpr (is_dual_v<T>) return primal(x.val);
    else return static_cast<double>(x);
}

template <class T>
Dual<T> sin(const Dual<T>& x) {
    using std::sin, std::cos;
    return {sin(x.val), cos(x.val) * x.der};
}
template <class T>
Dual<T> cos(const Dual<T>& x) {
    using std::sin, std::cos;
    return {cos(x.val), -sin(x.val) * x.der};
}
template <class T>
Dual<T> tan(const Dual<T>& x) {
    using std::tan;
    T t = tan(x.val);
    return {t, (T(1) + t * t) * x.der};
}
template <class T>
Dual<T> exp(const Dual<T>& x) {
    using std::exp;
    T e = exp(x.val);
    return {e, e * x.der};
}
template <class T>
Dual<T> log(const Dual<T>& x) {
    using std::log;
    return {log(x.val), x.der / x.val};
}
template <class T>
Dual<T> sqrt(const Dual<T>& x) {
    using std::sqrt;
    T s = sqrt(x.val);
    return {s, x.der / (T(2) * s)};
}
template <class T>
Dual<T> pow(const Dual<T>& x, double p) {
    using std::pow;
    return {pow(x.val, p), T(p) * pow(x.val, p - 1.0) * x.der};
}

} // namespace nhm::numkit
