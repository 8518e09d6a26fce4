#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <queue>
#include <vector>

#include "ranlase/errors.hpp"

namespace ranlase {

struct QuadratureOptions {
    double abs_tol = 0.0;
    double rel_tol = 1e-10;
    int max_intervals = 4000;
};

namespace detail {

// Gauss 7 / Kronrod 15 nodes and weights on [-1, 1].
inline constexpr double kGkNodes[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.000000000000000};
inline constexpr double kKronrodW[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
inline constexpr double kGaussW[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

inline double norm_of(double x) { return std::abs(x); }
inline double norm_of(const std::complex<double>& x) { return std::abs(x); }

template <class F, class T>
void gk15(F&& f, double a, double b, T& result, double& err) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    T fc = f(c);
    T kron = kKronrodW[7] * fc;
    T gauss = kGaussW[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = h * kGkNodes[i];
        T fsum = f(c - dx) + f(c + dx);
        kron += kKronrodW[i] * fsum;
        if (i % 2 == 1) gauss += kGaussW[i / 2] * fsum;
    }
    result = kron * h;
    err = norm_of((kron - gauss) * h);
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod integration of f over [a, b].
/// Works for double and complex<double> integrands.
template <class F>
auto integrate_gk(F&& f, double a, double b, const QuadratureOptions& opt = {})
    -> decltype(f(a)) {
    using T = decltype(f(a));
    if (a == b) return T{};

    struct Interval {
        double a, b, err;
        T val;
        bool operator<(const Interval& o) const { return err < o.err; }
    };

    std::priority_queue<Interval> heap;
    Interval first{a, b, 0.0, T{}};
    detail::gk15(f, a, b, first.val, first.err);
    heap.push(first);
    T total = first.val;
    double total_err = first.err;
    int used = 1;

    while (total_err > std::max(opt.abs_tol, opt.rel_tol * detail::norm_of(total))) {
        if (used >= opt.max_intervals)
            throw ConvergenceError("adaptive quadrature did not reach tolerance");
        Interval worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        Interval left{worst.a, mid, 0.0, T{}};
        Interval right{mid, worst.b, 0.0, T{}};
        detail::gk15(f, left.a, left.b, left.val, left.err);
        detail::gk15(f, right.a, right.b, right.val, right.err);
        total += left.val + right.val - worst.val;
        total_err += left.err + right.err - worst.err;
        heap.push(left);
        heap.push(right);
        ++used;
    }
    return total;
}

/// Integrate f over [a, b] when f may carry inverse-square-root singularities
/// at either endpoint: substitute x = a + (b-a) sin^2(theta), which absorbs
/// half-power edge behavior into a smooth integrand on [0, pi/2].
template <class F>
auto integrate_edge_regularized(F&& f, double a, double b, const QuadratureOptions& opt = {})
    -> decltype(f(a)) {
    const double w = b - a;
    auto g = [&](double th) {
        const double s = std::sin(th);
        const double x = a + w * s * s;
        return f(x) * (w * std::sin(2.0 * th));
    };
    return integrate_gk(g, 0.0, 2.0 * std::atan(1.0), opt);
}

/// Integrate f over the whole real line via u = tan(theta); the integrand
/// must decay at least like 1/u^2.
template <class F>
auto integrate_real_line(F&& f, const QuadratureOptions& opt = {}) -> decltype(f(0.0)) {
    const double half_pi = 2.0 * std::atan(1.0);
    auto g = [&](double th) {
        const double c = std::cos(th);
        const double u = std::sin(th) / c;
        return f(u) / (c * c);
    };
    return integrate_gk(g, -half_pi * (1.0 - 1e-14), half_pi * (1.0 - 1e-14), opt);
}

}  // namespace ranlase
