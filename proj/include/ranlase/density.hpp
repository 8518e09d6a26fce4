#pragma once

#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "ranlase/errors.hpp"

namespace ranlase {

enum class DensityFamily {
    WaveguideSemiInfinite,
    CavityWeak,
    CavityFull,
    BlackBody,
    Dual,
};

/// Ensemble density of scattering strengths, rho(sigma) >= 0 on a closed
/// support that integrates to the mode count N. Absorbing densities live in
/// [0, 1]; amplifying duals live in [1, inf).
struct StrengthDensity {
    DensityFamily family = DensityFamily::BlackBody;
    double gamma = 0.0;   // rate the formula was built with (provenance)
    double weight = 1.0;  // N
    double sigma_min = 0.0;
    double sigma_max = 0.0;  // +inf when unbounded_support
    std::function<double(double)> rho;  // 0 outside the support
    std::pair<double, double> edge_exponents{0.0, 0.0};
    bool point_mass = false;
    double point_sigma = 0.0;
    bool unbounded_support = false;  // dual of a density reaching sigma = 0
    std::shared_ptr<const StrengthDensity> dual_base;
    std::vector<std::string> warnings;

    bool moments_diverge() const { return unbounded_support; }
    double evaluate(double sigma) const { return rho ? rho(sigma) : 0.0; }
};

/// Reflection-strength density of a semi-infinite disordered waveguide,
/// rho = (N sqrt(g)/pi) (1/s - 1 - g/4)^{1/2} / (1-s)^2 on (0, 1/(1+g/4)).
StrengthDensity rho_waveguide_semiinf(double weight, double gamma);

/// Weak-absorption chaotic cavity density with square-root edges at
/// sigma_pm = 1 - 3g +- 2 sqrt(2) g. Outside `validity_guard` the result
/// carries a warning instead of failing.
StrengthDensity rho_cavity_weak(double weight, double gamma, double validity_guard = 0.1);

/// Full chaotic-cavity density, valid for any gamma > 0. The lower support
/// edge sits at sigma_- for gamma < 1 and at 0 for gamma >= 1.
StrengthDensity rho_cavity_full(double weight, double gamma);

/// Point mass at sigma = 0 (every incident photon absorbed).
StrengthDensity rho_black_body(double weight);

/// Amplifying density of the dual medium: rho_-(s) = s^{-2} rho_+(1/s) with
/// support mapped to reciprocals. A base support touching 0 produces an
/// unbounded amplifying support whose moments diverge.
StrengthDensity dual_density(const StrengthDensity& plus);

double weight_integral(const StrengthDensity& d, double rel_tol = 1e-10);

/// m_p = integral rho(s) (1-s)^p ds, p >= 1. Signed (negative for odd p on
/// amplifying densities). Throws InfiniteMomentError when flagged divergent.
double spectral_moment(const StrengthDensity& d, int p, double rel_tol = 1e-10);

std::pair<double, double> cavity_sigma_pm(double gamma);       // full-density edges
std::pair<double, double> cavity_weak_sigma_pm(double gamma);  // weak-limit edges

}  // namespace ranlase
