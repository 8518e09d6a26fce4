#pragma once

#include <complex>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "ranlase/density.hpp"
#include "ranlase/medium.hpp"

namespace ranlase {

struct RegimeTags {
    bool long_time = false;
    bool short_time = false;
    bool narrow_band = false;
    bool broad_band = false;
    bool single_mode = false;
};

struct StatSummary {
    double mean = 0.0;       // nbar
    double variance = 0.0;   // Var n
    double nu = 0.0;         // black-body degrees of freedom for this band
    double nu_eff = 0.0;     // nbar^2 / (Var n - nbar)
    std::vector<double> cumulants;  // factorial cumulants kappa_1..kappa_P
    RegimeTags tags;
    std::vector<std::string> warnings;
};

/// Factorial-cumulant generating function F(xi) with F(0) = 0 and
/// F'(0) = nbar. Finite for real xi below domain_radius.
struct GeneratingFunction {
    std::function<std::complex<double>(std::complex<double>)> eval;
    double domain_radius = 0.0;
    RegimeTags tags;

    std::complex<double> operator()(std::complex<double> xi) const;
    double real_at(double xi) const;
};

/// Long-time narrow-band generating function
///   F(xi) = -(nu/N) int rho(s) ln[1 - (1-s) xi alpha f] ds.
/// Amplifying densities use the signed occupation f < 0 directly.
GeneratingFunction generating_long_time(const StrengthDensity& density,
                                        const DetectionConfig& cfg);

/// kappa_p = (p-1)! nu (alpha f)^p m_p / N from the spectral moments.
std::vector<double> factorial_cumulants(const StrengthDensity& density,
                                        const DetectionConfig& cfg, int p_max);

/// Closed-form mean/variance/nu_eff for the supported geometries in the
/// long-time narrow-band regime.
StatSummary closed_form_narrowband(const MediumSpec& spec, const DetectionConfig& cfg);

/// Broad-band detection with a Lorentzian rate profile
/// gamma(omega) = gamma0 / (1 + 4 (omega-omega0)^2 / Gamma^2).
StatSummary broadband_cavity_closed(const MediumSpec& spec, const DetectionConfig& cfg);
StatSummary broadband_cavity_quadrature(const MediumSpec& spec, const DetectionConfig& cfg);

/// Waveguide broad band: leading-log closed form with the O(1) constant
/// exposed (default 0), and the authoritative cutoff quadrature which
/// integrates the narrow-band moments over |omega-omega0| <= Gamma (L/l) sqrt(gamma0).
StatSummary broadband_waveguide_loglaw(const MediumSpec& spec, const DetectionConfig& cfg,
                                       double cutoff_constant = 0.0);
StatSummary broadband_waveguide_quadrature(const MediumSpec& spec, const DetectionConfig& cfg);

/// Band model whose deviation from unitarity factorizes as
/// 1 - S(w) S(w)^dag = phi(w) K with a fixed matrix K. Only such models admit
/// the eigenvalue-only short-time determinant.
struct BandFactorizedModel {
    std::vector<double> coupling_eigenvalues;  // eigenvalues of K, i.e. 1 - sigma_n
    double band_integral = 0.0;                // int phi(w) dw
    double omega_c = 0.0;                      // scale used by the regime guard

    static BandFactorizedModel step_black_body(int modes, double omega_c);
    static BandFactorizedModel single_mode_mean(double nbar, const DetectionConfig& cfg);
    /// Build from sampled matrices M_i = 1 - S S^dag (row-major, dim x dim)
    /// at frequencies w_i; throws UnsupportedModelError if the samples do not
    /// share one shape K.
    static BandFactorizedModel from_samples(
        const std::vector<double>& omegas,
        const std::vector<std::vector<std::complex<double>>>& matrices, int dim,
        double tol = 1e-9);
};

GeneratingFunction short_time_generating(const BandFactorizedModel& model,
                                         const DetectionConfig& cfg);

/// Single detected mode with absorptivity profile a(w) = 1 - (S S^dag)_{11}.
struct SingleModeProfile {
    std::function<double(double)> absorptivity;  // integrable over the real line
    // Finite bounds restrict the quadrature window; infinite bounds use a
    // tan-mapped whole-line rule.
    double support_lo = -std::numeric_limits<double>::infinity();
    double support_hi = std::numeric_limits<double>::infinity();
    static SingleModeProfile lorentzian(double omega_c, double omega0 = 0.0);
    static SingleModeProfile flat(double delta_omega, double depth = 1.0, double omega0 = 0.0);
};

struct SingleModeResult {
    GeneratingFunction gf;
    StatSummary stats;
};

SingleModeResult single_mode_stats(const SingleModeProfile& profile,
                                   const DetectionConfig& cfg);

/// Series-safe bracket of the finite-length waveguide variance formula,
///   D(s) = s - s cos s + s sin^2 s + sin s - 3 sin^3 s - cos^3 s sin s,
/// and its hyperbolic continuation D_h(s) = -Im D(i s).
double finite_waveguide_bracket(double s);
double finite_waveguide_bracket_hyp(double s);

/// Finite-length waveguide closed forms; s = pi sqrt(gamma/gamma_c).
/// Amplifying media use the trigonometric branch, absorbing media the
/// hyperbolic continuation (gamma -> -gamma).
StatSummary finite_waveguide_stats(double gamma, double gamma_c, double nu, double alpha_f,
                                   Response response);

struct ThoulessComparison {
    double nu_eff_ratio_limit = 0.0;  // lim_{gamma->0} nu_eff / nu
    double thouless_ratio = 0.0;      // N_T / N
    double quotient = 0.0;            // their ratio (NaN when N_T = 0)
};

ThoulessComparison thouless_ratio(const MediumSpec& spec);

}  // namespace ranlase
