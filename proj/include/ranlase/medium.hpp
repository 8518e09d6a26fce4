#pragma once

#include <variant>

#include "ranlase/errors.hpp"

namespace ranlase {

enum class Geometry { CavityHole, WaveguideSemiInfinite, WaveguideFinite };
enum class Response { Absorbing, Amplifying };

/// Physical parameters of the random medium. All rates and times are
/// dimensionless in a user-chosen frequency unit; gamma is the normalized
/// absorption (or amplification) rate of the geometry at hand.
struct MediumSpec {
    Geometry geometry = Geometry::CavityHole;
    Response response = Response::Absorbing;
    double gamma = 0.0;
    int modes = 1;          // N, detected propagating modes
    double length_ratio = 0.0;  // L/l, finite waveguide only
    double threshold_margin = 1e-6;

    static MediumSpec cavity(Response r, double gamma, int modes);
    static MediumSpec waveguide_semi_infinite(Response r, double gamma, int modes);
    static MediumSpec waveguide_finite(Response r, double gamma, int modes, double length_ratio);

    /// Laser threshold of this geometry: 1 for the cavity, (4 pi l / 3 L)^2
    /// for the finite waveguide, 0 for the semi-infinite waveguide.
    double critical_gamma() const;

    void validate() const;  // throws DomainError / ThresholdError
};

double bose_einstein(double x);  // x = hbar omega / kT, x != 0

/// Signed occupation. Absorbing media see +f(x); amplifying media see the
/// negative-temperature value f(-x) = -1 - f(x). An infinite x requests
/// complete population inversion (f = -1) for amplifying media.
double effective_occupation(const MediumSpec& spec, double x);

double gamma_waveguide(double tau_s, double tau_a);        // (16/3) tau_s / tau_a
double dwell_time(int modes, double mode_spacing);         // 2 pi / (N domega)
double gamma_cavity(double tau_dwell, double tau_a);       // tau_dwell / tau_a
double gamma_critical(double length_ratio);                // (4 pi l / 3 L)^2, L/l >= 1

/// Dimensionless coupling N_T; order-unity coefficients are fixed to 1, so
/// the result is the asymptotic scale, not an exact number.
double thouless_number(const MediumSpec& spec);

enum class Coverage { AllModes, SingleMode };

struct NarrowBand {
    double delta_omega = 0.0;
};
struct BroadLorentzian {
    double line_width = 0.0;  // Gamma
    double gamma0 = 0.0;      // rate at line center
};
struct StepBand {
    double omega_c = 0.0;
};
using Band = std::variant<NarrowBand, BroadLorentzian, StepBand>;

struct DetectionConfig {
    double efficiency = 1.0;  // alpha, photoelectrons per photon
    double count_time = 1.0;  // t
    Band band = NarrowBand{};
    Coverage coverage = Coverage::AllModes;
    double occupation = 1.0;  // f, signed; negative for amplifying media
    double long_time_min_product = 10.0;  // require domega * t >= this
    double short_time_max_product = 0.1;  // require omega_c * t <= this

    double alpha_f() const { return efficiency * occupation; }

    /// Mode-time-bandwidth degrees of freedom: N t domega / 2pi for a narrow
    /// band, N t Omega_c / 2pi for the step model, N t Gamma for the broad
    /// Lorentzian convention. Fractional weights are allowed so densities
    /// normalized to arbitrary N can reuse the same formula.
    double nu(double modes) const;

    void validate() const;
    void require_long_time() const;   // narrow band, domega * t above guard
    void require_short_time(double omega_c) const;
};

}  // namespace ranlase
