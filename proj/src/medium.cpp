#include "ranlase/medium.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace ranlase {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

MediumSpec MediumSpec::cavity(Response r, double gamma, int modes) {
    MediumSpec s;
    s.geometry = Geometry::CavityHole;
    s.response = r;
    s.gamma = gamma;
    s.modes = modes;
    s.validate();
    return s;
}

MediumSpec MediumSpec::waveguide_semi_infinite(Response r, double gamma, int modes) {
    MediumSpec s;
    s.geometry = Geometry::WaveguideSemiInfinite;
    s.response = r;
    s.gamma = gamma;
    s.modes = modes;
    s.validate();
    return s;
}

MediumSpec MediumSpec::waveguide_finite(Response r, double gamma, int modes,
                                        double length_ratio) {
    MediumSpec s;
    s.geometry = Geometry::WaveguideFinite;
    s.response = r;
    s.gamma = gamma;
    s.modes = modes;
    s.length_ratio = length_ratio;
    s.validate();
    return s;
}

double MediumSpec::critical_gamma() const {
    switch (geometry) {
        case Geometry::CavityHole:
            return 1.0;
        case Geometry::WaveguideFinite:
            return gamma_critical(length_ratio);
        case Geometry::WaveguideSemiInfinite:
            return 0.0;
    }
    return 0.0;
}

void MediumSpec::validate() const {
    if (!(gamma >= 0.0)) throw DomainError("MediumSpec: gamma must be >= 0");
    if (modes < 1) throw DomainError("MediumSpec: modes must be >= 1");
    if (geometry == Geometry::WaveguideFinite && !(length_ratio > 0.0))
        throw DomainError("MediumSpec: finite waveguide needs L/l > 0");
    if (response == Response::Amplifying) {
        const double gc = critical_gamma();
        if (!(gamma <= gc - threshold_margin))
            throw ThresholdError("MediumSpec: amplification at or above threshold (gamma_c = " +
                                 std::to_string(gc) + ")");
    }
}

double bose_einstein(double x) {
    if (std::isnan(x)) throw DomainError("bose_einstein: NaN input");
    if (x == 0.0) throw DomainError("bose_einstein: singular at x = 0");
    return 1.0 / std::expm1(x);
}

double effective_occupation(const MediumSpec& spec, double x) {
    if (!(x > 0.0)) throw DomainError("effective_occupation: x must be positive");
    if (std::isinf(x))
        return spec.response == Response::Amplifying ? -1.0 : 0.0;
    const double f = bose_einstein(x);
    return spec.response == Response::Amplifying ? -1.0 - f : f;
}

double gamma_waveguide(double tau_s, double tau_a) {
    if (!(tau_s > 0.0) || !(tau_a > 0.0))
        throw DomainError("gamma_waveguide: times must be positive");
    return (16.0 / 3.0) * tau_s / tau_a;
}

double dwell_time(int modes, double mode_spacing) {
    if (modes < 1 || !(mode_spacing > 0.0))
        throw DomainError("dwell_time: need modes >= 1 and spacing > 0");
    return 2.0 * kPi / (modes * mode_spacing);
}

double gamma_cavity(double tau_dwell, double tau_a) {
    if (!(tau_dwell > 0.0) || !(tau_a > 0.0))
        throw DomainError("gamma_cavity: times must be positive");
    return tau_dwell / tau_a;
}

double gamma_critical(double length_ratio) {
    if (!(length_ratio >= 1.0))
        throw DomainError("gamma_critical: formula requires L >> l (L/l >= 1)");
    const double x = 4.0 * kPi / (3.0 * length_ratio);
    return x * x;
}

double thouless_number(const MediumSpec& spec) {
    switch (spec.geometry) {
        case Geometry::CavityHole:
            return static_cast<double>(spec.modes);
        case Geometry::WaveguideFinite:
            return spec.modes / spec.length_ratio;
        case Geometry::WaveguideSemiInfinite:
            return 0.0;  // L -> infinity
    }
    return 0.0;
}

double DetectionConfig::nu(double modes) const {
    if (std::holds_alternative<NarrowBand>(band))
        return modes * count_time * std::get<NarrowBand>(band).delta_omega / (2.0 * kPi);
    if (std::holds_alternative<StepBand>(band))
        return modes * count_time * std::get<StepBand>(band).omega_c / (2.0 * kPi);
    return modes * count_time * std::get<BroadLorentzian>(band).line_width;
}

void DetectionConfig::validate() const {
    if (!(efficiency > 0.0) || efficiency > 1.0)
        throw DomainError("DetectionConfig: efficiency must be in (0, 1]");
    if (!(count_time > 0.0)) throw DomainError("DetectionConfig: count_time must be > 0");
    if (std::isnan(occupation) || occupation == 0.0 || occupation < -1.0)
        throw DomainError("DetectionConfig: occupation must lie in (-1,0) u (0,inf) or be -1");
}

void DetectionConfig::require_long_time() const {
    if (!std::holds_alternative<NarrowBand>(band))
        throw DomainError("long-time narrow-band operation needs a NarrowBand config");
    const double dwt = std::get<NarrowBand>(band).delta_omega * count_time;
    if (dwt < long_time_min_product)
        throw DomainError("long-time regime requires domega * t >= " +
                          std::to_string(long_time_min_product));
}

void DetectionConfig::require_short_time(double omega_c) const {
    if (omega_c * count_time > short_time_max_product)
        throw DomainError("short-time regime requires omega_c * t <= " +
                          std::to_string(short_time_max_product));
}

}  // namespace ranlase
