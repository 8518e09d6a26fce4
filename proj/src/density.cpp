#include "ranlase/density.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "ranlase/quadrature.hpp"

namespace ranlase {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kInf = std::numeric_limits<double>::infinity();

double signed_cbrt(double x) { return std::cbrt(x); }  // std::cbrt is signed already

}  // namespace

std::pair<double, double> cavity_sigma_pm(double gamma) {
    const double g = gamma;
    const double disc = g * std::pow(8.0 + g * g, 1.5);
    const double base = 8.0 + 20.0 * g * g - g * g * g * g;
    const double den = 8.0 * std::pow(1.0 + g, 3);
    return {(base - disc) / den, (base + disc) / den};
}

std::pair<double, double> cavity_weak_sigma_pm(double gamma) {
    const double s = 2.0 * std::sqrt(2.0) * gamma;
    return {1.0 - 3.0 * gamma - s, 1.0 - 3.0 * gamma + s};
}

StrengthDensity rho_waveguide_semiinf(double weight, double gamma) {
    if (!(gamma > 0.0)) throw DomainError("rho_waveguide_semiinf: gamma must be > 0");
    if (!(weight > 0.0)) throw DomainError("rho_waveguide_semiinf: weight must be > 0");
    StrengthDensity d;
    d.family = DensityFamily::WaveguideSemiInfinite;
    d.gamma = gamma;
    d.weight = weight;
    d.sigma_min = 0.0;
    d.sigma_max = 1.0 / (1.0 + 0.25 * gamma);
    d.edge_exponents = {-0.5, 0.5};
    const double pref = weight * std::sqrt(gamma) / kPi;
    const double smax = d.sigma_max;
    d.rho = [pref, gamma, smax](double s) {
        if (s <= 0.0 || s >= smax) return 0.0;
        const double arg = 1.0 / s - 1.0 - 0.25 * gamma;
        if (arg <= 0.0) return 0.0;
        const double u = 1.0 - s;
        return pref * std::sqrt(arg) / (u * u);
    };
    return d;
}

StrengthDensity rho_cavity_weak(double weight, double gamma, double validity_guard) {
    if (!(gamma > 0.0)) throw DomainError("rho_cavity_weak: gamma must be > 0");
    if (!(weight > 0.0)) throw DomainError("rho_cavity_weak: weight must be > 0");
    StrengthDensity d;
    d.family = DensityFamily::CavityWeak;
    d.gamma = gamma;
    d.weight = weight;
    auto [lo, hi] = cavity_weak_sigma_pm(gamma);
    d.sigma_min = lo;
    d.sigma_max = hi;
    d.edge_exponents = {0.5, 0.5};
    if (gamma > validity_guard)
        d.warnings.push_back("weak-absorption form used outside gamma <= " +
                             std::to_string(validity_guard));
    const double pref = weight / (2.0 * kPi);
    d.rho = [pref, lo, hi](double s) {
        if (s <= lo || s >= hi) return 0.0;
        const double u = 1.0 - s;
        return pref * std::sqrt((s - lo) * (hi - s)) / (u * u);
    };
    return d;
}

StrengthDensity rho_cavity_full(double weight, double gamma) {
    if (!(gamma > 0.0)) throw DomainError("rho_cavity_full: gamma must be > 0");
    if (!(weight > 0.0)) throw DomainError("rho_cavity_full: weight must be > 0");
    StrengthDensity d;
    d.family = DensityFamily::CavityFull;
    d.gamma = gamma;
    d.weight = weight;
    auto [sm, sp] = cavity_sigma_pm(gamma);
    d.sigma_min = gamma < 1.0 ? sm : 0.0;
    d.sigma_max = sp;
    d.edge_exponents = {gamma < 1.0 ? 0.5 : -0.5, 0.5};
    const double g = gamma;
    const double pref = 6.0 * weight * std::sqrt(3.0) / kPi;
    const double smin = d.sigma_min;
    d.rho = [pref, g, sm, sp, smin](double s) {
        if (s <= smin || s >= sp) return 0.0;
        const double a = std::pow(g - 1.0, 3) + 9.0 * (1.0 + 0.5 * g * g) * s;
        const double rad = s * (s - sm) * (sp - s);
        if (rad <= 0.0) return 0.0;
        const double b = std::pow(3.0 + 3.0 * g, 1.5) * std::sqrt(rad);
        const double u = signed_cbrt(a + b);
        const double v = signed_cbrt(a - b);
        const double diff = u - v;
        const double sum = u + v - 2.0 * g + 2.0 - 6.0 * s;
        return pref * diff / (sum * sum + 3.0 * diff * diff);
    };
    return d;
}

StrengthDensity rho_black_body(double weight) {
    if (!(weight > 0.0)) throw DomainError("rho_black_body: weight must be > 0");
    StrengthDensity d;
    d.family = DensityFamily::BlackBody;
    d.gamma = kInf;
    d.weight = weight;
    d.sigma_min = d.sigma_max = 0.0;
    d.point_mass = true;
    d.point_sigma = 0.0;
    d.rho = [](double) { return 0.0; };
    return d;
}

StrengthDensity dual_density(const StrengthDensity& plus) {
    if (plus.point_mass)
        throw DomainError("dual_density: point mass at sigma = 0 has no finite dual support");
    if (plus.unbounded_support)
        throw DomainError("dual_density: base already unbounded; apply to an absorbing density");
    // the map is an involution: absorbing supports go to amplifying ones and
    // back, but mixed supports straddling 1 have no dual medium
    if (plus.sigma_max > 1.0 + 1e-12 && plus.sigma_min < 1.0 - 1e-12)
        throw DomainError("dual_density: support must lie on one side of sigma = 1");
    StrengthDensity d;
    d.family = DensityFamily::Dual;
    d.gamma = plus.gamma;
    d.weight = plus.weight;
    d.dual_base = std::make_shared<StrengthDensity>(plus);
    d.sigma_min = 1.0 / plus.sigma_max;
    if (plus.sigma_min > 0.0) {
        d.sigma_max = 1.0 / plus.sigma_min;
    } else {
        d.sigma_max = kInf;
        d.unbounded_support = true;
    }
    d.edge_exponents = {plus.edge_exponents.second, plus.edge_exponents.first};
    auto base = d.dual_base;
    d.rho = [base](double s) {
        if (s <= 0.0) return 0.0;
        return base->evaluate(1.0 / s) / (s * s);
    };
    d.warnings = plus.warnings;
    return d;
}

namespace {

// Moments of a dual density map back onto its absorbing base:
//   int rho_-(s) (1-s)^p ds = int rho_+(u) (1 - 1/u)^p du.
double base_substituted_moment(const StrengthDensity& dual, int p, double rel_tol) {
    const StrengthDensity& base = *dual.dual_base;
    QuadratureOptions opt;
    opt.rel_tol = rel_tol;
    opt.max_intervals = 20000;
    return integrate_edge_regularized(
        [&](double u) {
            const double w = u > 0.0 ? std::pow(1.0 - 1.0 / u, p) : 0.0;
            return base.evaluate(u) * w;
        },
        base.sigma_min, base.sigma_max, opt);
}

double direct_moment(const StrengthDensity& d, int p, double rel_tol) {
    QuadratureOptions opt;
    opt.rel_tol = rel_tol;
    opt.max_intervals = 20000;
    return integrate_edge_regularized(
        [&](double s) { return d.evaluate(s) * std::pow(1.0 - s, p); }, d.sigma_min,
        d.sigma_max, opt);
}

}  // namespace

double weight_integral(const StrengthDensity& d, double rel_tol) {
    if (d.point_mass) return d.weight;
    if (d.dual_base) return base_substituted_moment(d, 0, rel_tol);
    return direct_moment(d, 0, rel_tol);
}

double spectral_moment(const StrengthDensity& d, int p, double rel_tol) {
    if (p < 1) throw DomainError("spectral_moment: p must be >= 1");
    if (d.moments_diverge())
        throw InfiniteMomentError("spectral moment p = " + std::to_string(p) +
                                  " diverges on unbounded amplifying support");
    if (d.point_mass) return d.weight * std::pow(1.0 - d.point_sigma, p);
    if (d.dual_base) return base_substituted_moment(d, p, rel_tol);
    return direct_moment(d, p, rel_tol);
}

}  // namespace ranlase
