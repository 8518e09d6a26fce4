#include "ranlase/photostat.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "ranlase/quadrature.hpp"

namespace ranlase {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kInf = std::numeric_limits<double>::infinity();
using cplx = std::complex<double>;

void check_occupation_sign(Response response, double f) {
    if (response == Response::Absorbing && !(f > 0.0))
        throw DomainError("absorbing medium needs occupation f > 0");
    if (response == Response::Amplifying && !(f < 0.0))
        throw DomainError("amplifying medium needs occupation f < 0 (negative temperature)");
}

double nu_eff_from(double mean, double variance) {
    const double excess = variance - mean;
    if (excess <= 0.0) return kInf;
    return mean * mean / excess;
}

// Largest product (1-sigma) * alpha f over the support; always >= 0 for
// sign-consistent occupations, so the real singularity of the log sits at
// xi = 1 / wmax.
double max_log_slope(const StrengthDensity& d, double alpha_f) {
    if (d.point_mass) return std::max(0.0, (1.0 - d.point_sigma) * alpha_f);
    const double a = (1.0 - d.sigma_min) * alpha_f;
    const double b = d.unbounded_support ? kInf : (1.0 - d.sigma_max) * alpha_f;
    return std::max({a, b, 0.0});
}

// Mean and second spectral-moment kernels per mode for the two geometries
// with closed-form narrow-band results; response enters through the sign of
// gamma in the cavity formulas.
double cavity_m1(double g, Response r) {
    return r == Response::Absorbing ? g / (1.0 + g) : -g / (1.0 - g);
}
double cavity_m2(double g, Response r) {
    const double s = r == Response::Absorbing ? 1.0 : -1.0;
    const double u = 1.0 + s * g;
    return g * g * (g * g + s * 2.0 * g + 2.0) / (u * u * u * u);
}
double waveguide_m1(double g) {
    // gamma/2 (sqrt(1+4/gamma) - 1), written to stay finite as gamma -> 0
    return 0.5 * (std::sqrt(g * (g + 4.0)) - g);
}
double waveguide_nu_ratio(double g) {
    if (g <= 0.0) return 0.0;
    const double q = std::pow(1.0 + 4.0 / g, 0.25);
    const double sum = q + 1.0 / q;
    return 4.0 / (sum * sum);
}
double waveguide_m2(double g) {
    const double m1 = waveguide_m1(g);
    const double r = waveguide_nu_ratio(g);
    return r > 0.0 ? m1 * m1 / r : 0.0;
}

}  // namespace

std::complex<double> GeneratingFunction::operator()(cplx xi) const {
    return eval(xi);
}

double GeneratingFunction::real_at(double xi) const {
    return eval(cplx(xi, 0.0)).real();
}

GeneratingFunction generating_long_time(const StrengthDensity& density,
                                        const DetectionConfig& cfg) {
    cfg.validate();
    cfg.require_long_time();
    if (density.moments_diverge())
        throw ThresholdError("generating function undefined: amplifying support unbounded");

    const double af = cfg.alpha_f();
    const double nu = cfg.nu(density.weight);
    const double wmax = max_log_slope(density, af);
    GeneratingFunction gf;
    gf.domain_radius = wmax > 0.0 ? 1.0 / wmax : kInf;
    gf.tags.long_time = true;
    gf.tags.narrow_band = true;

    const double radius = gf.domain_radius;
    if (density.point_mass) {
        const double w = (1.0 - density.point_sigma) * af;
        gf.eval = [nu, w, radius](cplx xi) -> cplx {
            if (xi.imag() == 0.0 && xi.real() >= radius)
                throw DomainError("generating function: xi beyond domain radius");
            return -nu * std::log(1.0 - w * xi);
        };
        return gf;
    }

    // Freeze the density into fixed quadrature nodes so every contour
    // evaluation costs one pass of complex logs instead of an adaptive
    // integration. Panels double until the node weights reproduce the total
    // weight; non-analytic edge profiles fall back to adaptive evaluation.
    const StrengthDensity& src = density.dual_base ? *density.dual_base : density;
    const bool via_base = static_cast<bool>(density.dual_base);
    auto nodes = std::make_shared<std::vector<std::pair<double, double>>>();
    bool table_ok = false;
    const double half_pi = 2.0 * std::atan(1.0);
    const double span = src.sigma_max - src.sigma_min;
    for (int panels = 16; panels <= 1024; panels *= 2) {
        nodes->clear();
        nodes->reserve(static_cast<std::size_t>(panels) * 15);
        const double h = half_pi / panels;
        for (int p = 0; p < panels; ++p) {
            const double mid = (p + 0.5) * h;
            for (int k = -7; k <= 7; ++k) {
                const int idx = k < 0 ? -k : k;
                const double th = mid + 0.5 * h * (k < 0 ? -detail::kGkNodes[7 - idx]
                                                         : detail::kGkNodes[7 - idx]);
                const double s = std::sin(th);
                const double sigma = src.sigma_min + span * s * s;
                const double jac =
                    0.5 * h * detail::kKronrodW[7 - idx] * span * std::sin(2.0 * th);
                const double mass = src.evaluate(sigma) * jac;
                const double slope =
                    via_base ? (sigma > 0.0 ? (1.0 - 1.0 / sigma) * af : 0.0)
                             : (1.0 - sigma) * af;
                nodes->emplace_back(mass, slope);
            }
        }
        double total = 0.0;
        for (const auto& [mass, slope] : *nodes) total += mass;
        if (std::abs(total - density.weight) <= 2e-10 * density.weight) {
            table_ok = true;
            break;
        }
    }

    const double pref = -nu / density.weight;
    if (table_ok) {
        gf.eval = [nodes, pref, radius](cplx xi) -> cplx {
            if (xi.imag() == 0.0 && xi.real() >= radius)
                throw DomainError("generating function: xi beyond domain radius");
            if (xi == cplx(0.0, 0.0)) return cplx(0.0, 0.0);
            cplx acc(0.0, 0.0);
            for (const auto& [mass, slope] : *nodes)
                acc += mass * std::log(1.0 - slope * xi);
            return pref * acc;
        };
        return gf;
    }

    auto dens = std::make_shared<StrengthDensity>(density);
    gf.eval = [dens, pref, af, radius](cplx xi) -> cplx {
        if (xi.imag() == 0.0 && xi.real() >= radius)
            throw DomainError("generating function: xi beyond domain radius");
        if (xi == cplx(0.0, 0.0)) return cplx(0.0, 0.0);
        QuadratureOptions opt;
        opt.rel_tol = 1e-11;
        opt.abs_tol = 1e-13;
        opt.max_intervals = 20000;
        const StrengthDensity& d = *dens;
        if (d.dual_base) {
            const StrengthDensity& base = *d.dual_base;
            cplx integral = integrate_edge_regularized(
                [&](double u) -> cplx {
                    const double w = u > 0.0 ? (1.0 - 1.0 / u) * af : 0.0;
                    return base.evaluate(u) * std::log(1.0 - w * xi);
                },
                base.sigma_min, base.sigma_max, opt);
            return pref * integral;
        }
        cplx integral = integrate_edge_regularized(
            [&](double s) -> cplx {
                return d.evaluate(s) * std::log(1.0 - (1.0 - s) * af * xi);
            },
            d.sigma_min, d.sigma_max, opt);
        return pref * integral;
    };
    return gf;
}

std::vector<double> factorial_cumulants(const StrengthDensity& density,
                                        const DetectionConfig& cfg, int p_max) {
    cfg.validate();
    if (p_max < 1) throw DomainError("factorial_cumulants: p_max must be >= 1");
    const double af = cfg.alpha_f();
    const double nu = cfg.nu(density.weight);
    std::vector<double> kappa(static_cast<std::size_t>(p_max));
    double factorial = 1.0;  // (p-1)!
    for (int p = 1; p <= p_max; ++p) {
        if (p > 1) factorial *= (p - 1);
        const double mp = spectral_moment(density, p);  // throws if divergent
        kappa[static_cast<std::size_t>(p) - 1] =
            factorial * nu * std::pow(af, p) * mp / density.weight;
    }
    return kappa;
}

StatSummary closed_form_narrowband(const MediumSpec& spec, const DetectionConfig& cfg) {
    spec.validate();
    cfg.validate();
    cfg.require_long_time();
    check_occupation_sign(spec.response, cfg.occupation);

    const double af = cfg.alpha_f();
    const double nu = cfg.nu(spec.modes);
    StatSummary out;
    out.nu = nu;
    out.tags.long_time = true;
    out.tags.narrow_band = true;

    switch (spec.geometry) {
        case Geometry::CavityHole: {
            const double g = spec.gamma;
            const double s = spec.response == Response::Absorbing ? 1.0 : -1.0;
            const double m1 = cavity_m1(g, spec.response);
            const double m2 = cavity_m2(g, spec.response);
            out.mean = nu * af * m1;
            const double kappa2 = nu * af * af * m2;
            out.variance = out.mean + kappa2;
            out.cumulants = {out.mean, kappa2};
            // analytic ratio, finite at gamma = 0 where the moment quotient
            // degenerates to 0/0
            out.nu_eff = nu * (1.0 + s * g) * (1.0 + s * g) / (g * g + s * 2.0 * g + 2.0);
            break;
        }
        case Geometry::WaveguideSemiInfinite: {
            if (spec.response == Response::Amplifying)
                throw ThresholdError(
                    "semi-infinite amplifying waveguide is above threshold for any gamma");
            const double m1 = waveguide_m1(spec.gamma);
            const double m2 = waveguide_m2(spec.gamma);
            out.mean = nu * af * m1;
            const double kappa2 = nu * af * af * m2;
            out.variance = out.mean + kappa2;
            out.cumulants = {out.mean, kappa2};
            out.nu_eff = spec.gamma > 0.0 ? nu * waveguide_nu_ratio(spec.gamma) : 0.0;
            break;
        }
        case Geometry::WaveguideFinite: {
            const double gc = gamma_critical(spec.length_ratio);
            StatSummary fin =
                finite_waveguide_stats(spec.gamma, gc, nu, af, spec.response);
            fin.tags = out.tags;
            return fin;
        }
    }
    return out;
}

double finite_waveguide_bracket(double s) {
    // Taylor coefficients of s - s cos s + s sin^2 s + sin s - 3 sin^3 s
    // - cos^3 s sin s; the direct expression cancels to O(s^7).
    static constexpr double c[9] = {
        2.0 / 15.0,
        -67.0 / 1260.0,
        251.0 / 25200.0,
        -11573.0 / 9979200.0,
        214561.0 / 2270268000.0,
        -209479.0 / 36324288000.0,
        2.7531453067523975e-07,
        -1.0607008998242319e-08,
        3.3751857960990712e-10,
    };
    const double a = std::abs(s);
    if (a < 0.65) {
        const double s2 = s * s;
        double acc = 0.0;
        for (int k = 8; k >= 0; --k) acc = acc * s2 + c[k];
        return acc * std::pow(s, 7);
    }
    const double sn = std::sin(s), cs = std::cos(s);
    return s - s * cs + s * sn * sn + sn - 3.0 * sn * sn * sn - cs * cs * cs * sn;
}

namespace {

// D_h(s) * 16 e^{-4s}; stays O(1) for large s where cosh^3 sinh would overflow.
double bracket_hyp_scaled(double s) {
    const double E = std::exp(-s);
    const double E2 = E * E;
    const double one_m = 1.0 - E2, one_p = 1.0 + E2;
    return (one_p * one_p * one_p * one_m - 6.0 * E * one_m * one_m * one_m -
            8.0 * E * E2 * one_m + 8.0 * E * E2 * s * one_p + 4.0 * E2 * s * one_m * one_m -
            16.0 * E2 * E2 * s);
}

}  // namespace

double finite_waveguide_bracket_hyp(double s) {
    static constexpr double c[9] = {
        2.0 / 15.0,
        67.0 / 1260.0,
        251.0 / 25200.0,
        11573.0 / 9979200.0,
        214561.0 / 2270268000.0,
        209479.0 / 36324288000.0,
        2.7531453067523975e-07,
        1.0607008998242319e-08,
        3.3751857960990712e-10,
    };
    const double a = std::abs(s);
    if (a < 0.65) {
        const double s2 = s * s;
        double acc = 0.0;
        for (int k = 8; k >= 0; --k) acc = acc * s2 + c[k];
        return acc * std::pow(s, 7);
    }
    if (a < 20.0) {
        const double sh = std::sinh(s), ch = std::cosh(s);
        return s * ch + s * sh * sh - s - sh - 3.0 * sh * sh * sh + ch * ch * ch * sh;
    }
    return bracket_hyp_scaled(s) * std::exp(4.0 * s) / 16.0;
}

StatSummary finite_waveguide_stats(double gamma, double gamma_c, double nu, double alpha_f,
                                   Response response) {
    if (!(gamma >= 0.0) || !(gamma_c > 0.0))
        throw DomainError("finite_waveguide_stats: need gamma >= 0, gamma_c > 0");
    StatSummary out;
    out.nu = nu;
    if (gamma > 0.1 || gamma_c > 0.1)
        out.warnings.push_back("finite-waveguide closed forms assume gamma, gamma_c << 1");
    if (gamma == 0.0) {
        out.cumulants = {0.0, 0.0};
        out.nu_eff = nu * 5.0 * 3.0 * std::sqrt(gamma_c) / (4.0 * kPi);  // 5 l/L limit
        return out;
    }
    const double s = kPi * std::sqrt(gamma / gamma_c);
    const double rg = std::sqrt(gamma);
    double kappa2 = 0.0;
    if (response == Response::Amplifying) {
        if (s >= kPi)
            throw ThresholdError("finite waveguide at or above threshold (gamma_c = " +
                                 std::to_string(gamma_c) + ")");
        out.mean = -nu * alpha_f * rg * std::tan(0.5 * s);  // (1-cos s)/sin s
        const double sn = std::sin(s);
        const double D = finite_waveguide_bracket(s);
        kappa2 = nu * alpha_f * alpha_f * rg * D / (2.0 * sn * sn * sn * sn);
        const double omc = 1.0 - std::cos(s);
        out.nu_eff = nu * 2.0 * rg * omc * omc * sn * sn / D;
    } else {
        out.mean = nu * alpha_f * rg * std::tanh(0.5 * s);
        if (s < 20.0) {
            const double sh = std::sinh(s);
            const double D = finite_waveguide_bracket_hyp(s);
            kappa2 = nu * alpha_f * alpha_f * rg * D / (2.0 * sh * sh * sh * sh);
            const double chm = std::cosh(s) - 1.0;
            out.nu_eff = nu * 2.0 * rg * chm * chm * sh * sh / D;
        } else {
            // scaled: D_h / sinh^4 = [D_h 16 E^4] / (1-E^2)^4, E = e^{-s}
            const double E = std::exp(-s);
            const double one_m = 1.0 - E * E;
            const double Ds = bracket_hyp_scaled(s);
            kappa2 = nu * alpha_f * alpha_f * rg * Ds / (2.0 * one_m * one_m * one_m * one_m);
            const double num = std::pow(1.0 - E, 4) * one_m * one_m;
            out.nu_eff = nu * 2.0 * rg * num / Ds;
        }
    }
    out.variance = out.mean + kappa2;
    out.cumulants = {out.mean, kappa2};
    return out;
}

StatSummary broadband_cavity_closed(const MediumSpec& spec, const DetectionConfig& cfg) {
    spec.validate();
    cfg.validate();
    check_occupation_sign(spec.response, cfg.occupation);
    if (spec.geometry != Geometry::CavityHole)
        throw DomainError("broadband_cavity_closed: cavity geometry required");
    const auto* band = std::get_if<BroadLorentzian>(&cfg.band);
    if (!band) throw DomainError("broadband stats need a BroadLorentzian band");
    const double g0 = band->gamma0;
    const double sgn = spec.response == Response::Absorbing ? 1.0 : -1.0;
    if (spec.response == Response::Amplifying && !(g0 < 1.0))
        throw ThresholdError("broad-band amplifying cavity requires gamma0 < 1");
    const double af = cfg.alpha_f();
    const double ntg = spec.modes * cfg.count_time * band->line_width;  // N t Gamma
    StatSummary out;
    out.nu = ntg;
    out.tags.long_time = true;
    out.tags.broad_band = true;
    const double root = std::sqrt(1.0 + sgn * g0);
    out.mean = sgn * ntg * af * g0 / (4.0 * root);
    const double kappa2 = ntg * af * af * g0 * g0 *
                          (9.0 * g0 * g0 + sgn * 20.0 * g0 + 16.0) /
                          (64.0 * std::pow(1.0 + sgn * g0, 3.5));
    out.variance = out.mean + kappa2;
    out.cumulants = {out.mean, kappa2};
    out.nu_eff = ntg * 4.0 * std::pow(1.0 + sgn * g0, 2.5) /
                 (9.0 * g0 * g0 + sgn * 20.0 * g0 + 16.0);
    return out;
}

StatSummary broadband_cavity_quadrature(const MediumSpec& spec, const DetectionConfig& cfg) {
    spec.validate();
    cfg.validate();
    check_occupation_sign(spec.response, cfg.occupation);
    if (spec.geometry != Geometry::CavityHole)
        throw DomainError("broadband_cavity_quadrature: cavity geometry required");
    const auto* band = std::get_if<BroadLorentzian>(&cfg.band);
    if (!band) throw DomainError("broadband stats need a BroadLorentzian band");
    const double g0 = band->gamma0;
    if (spec.response == Response::Amplifying && !(g0 < 1.0))
        throw ThresholdError("broad-band amplifying cavity requires gamma0 < 1");
    const double af = cfg.alpha_f();
    const double ntg = spec.modes * cfg.count_time * band->line_width;
    const Response resp = spec.response;

    QuadratureOptions opt;
    opt.rel_tol = 1e-10;
    opt.max_intervals = 20000;
    // u = 2 (omega - omega0) / Gamma, so the line profile is 1/(1+u^2) and
    // each omega integral becomes (Gamma/2) int du.
    const double I1 =
        integrate_real_line([&](double u) { return cavity_m1(g0 / (1.0 + u * u), resp); }, opt);
    const double I2 =
        integrate_real_line([&](double u) { return cavity_m2(g0 / (1.0 + u * u), resp); }, opt);

    StatSummary out;
    out.nu = ntg;
    out.tags.long_time = true;
    out.tags.broad_band = true;
    out.mean = ntg * af * I1 / (4.0 * kPi);
    const double kappa2 = ntg * af * af * I2 / (4.0 * kPi);
    out.variance = out.mean + kappa2;
    out.cumulants = {out.mean, kappa2};
    out.nu_eff = nu_eff_from(out.mean, out.variance);
    return out;
}

namespace {

void require_broadband_waveguide(const MediumSpec& spec, const DetectionConfig& cfg,
                                 const BroadLorentzian*& band) {
    if (spec.geometry != Geometry::WaveguideFinite)
        throw DomainError("broad-band waveguide stats need the finite-length geometry");
    if (spec.response != Response::Amplifying && spec.response != Response::Absorbing)
        throw DomainError("unreachable");
    if (spec.response == Response::Amplifying)
        throw ThresholdError(
            "broad-band waveguide formulas hold for absorption; the amplifying line "
            "center would exceed the infinite-length threshold");
    band = std::get_if<BroadLorentzian>(&cfg.band);
    if (!band) throw DomainError("broadband stats need a BroadLorentzian band");
}

}  // namespace

StatSummary broadband_waveguide_loglaw(const MediumSpec& spec, const DetectionConfig& cfg,
                                       double cutoff_constant) {
    spec.validate();
    cfg.validate();
    check_occupation_sign(spec.response, cfg.occupation);
    const BroadLorentzian* band = nullptr;
    require_broadband_waveguide(spec, cfg, band);
    const double g0 = band->gamma0;
    const double L = spec.length_ratio;
    const double af = cfg.alpha_f();
    const double ntg = spec.modes * cfg.count_time * band->line_width;
    StatSummary out;
    out.nu = ntg;
    out.tags.long_time = true;
    out.tags.broad_band = true;
    if (!(g0 < 1.0) || !(g0 > 1.0 / (L * L)))
        out.warnings.push_back("log law assumes (l/L)^2 << gamma0 << 1");
    const double lg = std::log(L * std::sqrt(g0)) + cutoff_constant;
    out.mean = ntg / (2.0 * kPi) * af * std::sqrt(g0) * lg;
    const double kappa2 = ntg / (2.0 * kPi) * af * af * 0.5 * std::sqrt(g0) * lg;
    out.variance = out.mean + kappa2;
    out.cumulants = {out.mean, kappa2};
    out.nu_eff = nu_eff_from(out.mean, out.variance);
    return out;
}

StatSummary broadband_waveguide_quadrature(const MediumSpec& spec,
                                           const DetectionConfig& cfg) {
    spec.validate();
    cfg.validate();
    check_occupation_sign(spec.response, cfg.occupation);
    const BroadLorentzian* band = nullptr;
    require_broadband_waveguide(spec, cfg, band);
    const double g0 = band->gamma0;
    const double L = spec.length_ratio;
    const double af = cfg.alpha_f();
    const double ntg = spec.modes * cfg.count_time * band->line_width;

    // Effective frequency window |omega-omega0| <= Gamma (L/l) sqrt(gamma0):
    // beyond it the finite length transmits instead of absorbing.
    const double U = 2.0 * L * std::sqrt(g0);
    QuadratureOptions opt;
    opt.rel_tol = 1e-10;
    opt.max_intervals = 40000;
    const double I1 =
        2.0 * integrate_gk([&](double u) { return waveguide_m1(g0 / (1.0 + u * u)); }, 0.0, U, opt);
    const double I2 =
        2.0 * integrate_gk([&](double u) { return waveguide_m2(g0 / (1.0 + u * u)); }, 0.0, U, opt);

    StatSummary out;
    out.nu = ntg;
    out.tags.long_time = true;
    out.tags.broad_band = true;
    out.mean = ntg * af * I1 / (4.0 * kPi);
    const double kappa2 = ntg * af * af * I2 / (4.0 * kPi);
    out.variance = out.mean + kappa2;
    out.cumulants = {out.mean, kappa2};
    out.nu_eff = nu_eff_from(out.mean, out.variance);
    return out;
}

BandFactorizedModel BandFactorizedModel::step_black_body(int modes, double omega_c) {
    if (modes < 1 || !(omega_c > 0.0))
        throw DomainError("step_black_body: need modes >= 1, omega_c > 0");
    BandFactorizedModel m;
    m.coupling_eigenvalues.assign(static_cast<std::size_t>(modes), 1.0);
    m.band_integral = omega_c;
    m.omega_c = omega_c;
    return m;
}

BandFactorizedModel BandFactorizedModel::single_mode_mean(double nbar,
                                                          const DetectionConfig& cfg) {
    if (!(nbar > 0.0)) throw DomainError("single_mode_mean: nbar must be > 0");
    BandFactorizedModel m;
    m.coupling_eigenvalues = {1.0};
    m.band_integral = 2.0 * kPi * nbar / (cfg.count_time * cfg.alpha_f());
    // the mean already encodes the band; no separate coherence scale to guard
    m.omega_c = 0.0;
    return m;
}

BandFactorizedModel BandFactorizedModel::from_samples(
    const std::vector<double>& omegas,
    const std::vector<std::vector<std::complex<double>>>& matrices, int dim, double tol) {
    if (omegas.size() != matrices.size() || omegas.size() < 2)
        throw DomainError("from_samples: need matching omega/matrix lists, length >= 2");
    using Mat = Eigen::MatrixXcd;
    std::vector<Mat> mats;
    mats.reserve(matrices.size());
    for (const auto& flat : matrices) {
        if (static_cast<int>(flat.size()) != dim * dim)
            throw DomainError("from_samples: matrix size mismatch");
        Mat m(dim, dim);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) m(i, j) = flat[static_cast<std::size_t>(i * dim + j)];
        mats.push_back(std::move(m));
    }
    std::size_t ref = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < mats.size(); ++i) {
        const double n = mats[i].norm();
        if (n > best) {
            best = n;
            ref = i;
        }
    }
    if (!(best > 0.0)) throw DomainError("from_samples: all matrices vanish");
    const Mat& K = mats[ref];
    const double k2 = K.squaredNorm();
    std::vector<double> phi(mats.size());
    for (std::size_t i = 0; i < mats.size(); ++i) {
        const double p = (K.adjoint() * mats[i]).trace().real() / k2;
        if ((mats[i] - p * K).norm() > tol * K.norm())
            throw UnsupportedModelError(
                "1 - S S^dag does not factorize as phi(omega) K; the short-time "
                "determinant needs eigenvectors in that case");
        phi[i] = p;
    }
    double integral = 0.0;
    for (std::size_t i = 0; i + 1 < phi.size(); ++i)
        integral += 0.5 * (phi[i] + phi[i + 1]) * (omegas[i + 1] - omegas[i]);

    Eigen::SelfAdjointEigenSolver<Mat> es(K);
    BandFactorizedModel m;
    m.coupling_eigenvalues.assign(es.eigenvalues().data(),
                                  es.eigenvalues().data() + es.eigenvalues().size());
    m.band_integral = integral;
    m.omega_c = omegas.back() - omegas.front();
    return m;
}

GeneratingFunction short_time_generating(const BandFactorizedModel& model,
                                         const DetectionConfig& cfg) {
    cfg.validate();
    cfg.require_short_time(model.omega_c);
    const double af = cfg.alpha_f();
    const double scale = cfg.count_time * model.band_integral / (2.0 * kPi);
    double wmax = 0.0;
    for (double lam : model.coupling_eigenvalues) wmax = std::max(wmax, scale * lam * af);
    GeneratingFunction gf;
    gf.domain_radius = wmax > 0.0 ? 1.0 / wmax : kInf;
    gf.tags.short_time = true;
    const auto eigs = model.coupling_eigenvalues;
    const double radius = gf.domain_radius;
    gf.eval = [eigs, scale, af, radius](cplx xi) -> cplx {
        if (xi.imag() == 0.0 && xi.real() >= radius)
            throw DomainError("generating function: xi beyond domain radius");
        cplx acc(0.0, 0.0);
        for (double lam : eigs) acc -= std::log(1.0 - scale * lam * af * xi);
        return acc;
    };
    return gf;
}

SingleModeProfile SingleModeProfile::lorentzian(double omega_c, double omega0) {
    if (!(omega_c > 0.0)) throw DomainError("lorentzian profile: omega_c must be > 0");
    SingleModeProfile p;
    p.absorptivity = [omega_c, omega0](double w) {
        const double x = 2.0 * (w - omega0) / omega_c;
        return 1.0 / (1.0 + x * x);
    };
    return p;
}

SingleModeProfile SingleModeProfile::flat(double delta_omega, double depth, double omega0) {
    if (!(delta_omega > 0.0) || !(depth > 0.0) || depth > 1.0)
        throw DomainError("flat profile: need width > 0 and depth in (0, 1]");
    SingleModeProfile p;
    const double lo = omega0 - 0.5 * delta_omega;
    const double hi = omega0 + 0.5 * delta_omega;
    p.absorptivity = [lo, hi, depth](double w) { return (w > lo && w < hi) ? depth : 0.0; };
    p.support_lo = lo;
    p.support_hi = hi;
    return p;
}

SingleModeResult single_mode_stats(const SingleModeProfile& profile,
                                   const DetectionConfig& cfg) {
    cfg.validate();
    if (!profile.absorptivity) throw DomainError("single_mode_stats: missing profile");
    const double af = cfg.alpha_f();
    const double t = cfg.count_time;
    const bool window = std::isfinite(profile.support_lo) && std::isfinite(profile.support_hi);

    QuadratureOptions opt;
    opt.rel_tol = 1e-11;
    opt.abs_tol = 1e-13;
    opt.max_intervals = 20000;
    auto a = profile.absorptivity;

    auto profile_power = [&](int p) {
        auto f = [&](double w) { return std::pow(a(w), p); };
        return window ? integrate_gk(f, profile.support_lo, profile.support_hi, opt)
                      : integrate_real_line(f, opt);
    };
    const double A1 = profile_power(1);
    const double A2 = profile_power(2);

    SingleModeResult out;
    out.stats.tags.long_time = true;
    out.stats.tags.single_mode = true;
    out.stats.mean = t * af * A1 / (2.0 * kPi);
    const double kappa2 = t * af * af * A2 / (2.0 * kPi);
    out.stats.variance = out.stats.mean + kappa2;
    out.stats.cumulants = {out.stats.mean, kappa2};
    out.stats.nu_eff = nu_eff_from(out.stats.mean, out.stats.variance);

    double amax = 0.0;
    const double lo = window ? profile.support_lo : -1e6;
    const double hi = window ? profile.support_hi : 1e6;
    for (int i = 0; i <= 4096; ++i) amax = std::max(amax, a(lo + (hi - lo) * i / 4096.0));
    const double wmax = std::max(0.0, amax * af);
    out.gf.domain_radius = wmax > 0.0 ? 1.0 / wmax : kInf;
    out.gf.tags = out.stats.tags;
    const double radius = out.gf.domain_radius;
    const double slo = profile.support_lo, shi = profile.support_hi;
    out.gf.eval = [a, af, t, radius, window, slo, shi](cplx xi) -> cplx {
        if (xi.imag() == 0.0 && xi.real() >= radius)
            throw DomainError("generating function: xi beyond domain radius");
        if (xi == cplx(0.0, 0.0)) return cplx(0.0, 0.0);
        QuadratureOptions o;
        o.rel_tol = 1e-11;
        o.abs_tol = 1e-13;
        o.max_intervals = 20000;
        auto f = [&](double w) -> cplx { return std::log(1.0 - af * a(w) * xi); };
        const cplx integral = window ? integrate_gk(f, slo, shi, o) : integrate_real_line(f, o);
        return -t / (2.0 * kPi) * integral;
    };
    return out;
}

ThoulessComparison thouless_ratio(const MediumSpec& spec) {
    spec.validate();
    ThoulessComparison out;
    out.thouless_ratio = thouless_number(spec) / spec.modes;
    switch (spec.geometry) {
        case Geometry::CavityHole:
            out.nu_eff_ratio_limit = 0.5;
            break;
        case Geometry::WaveguideFinite:
            out.nu_eff_ratio_limit = 5.0 / spec.length_ratio;
            break;
        case Geometry::WaveguideSemiInfinite:
            out.nu_eff_ratio_limit = 0.0;
            break;
    }
    out.quotient = out.thouless_ratio > 0.0
                       ? out.nu_eff_ratio_limit / out.thouless_ratio
                       : std::numeric_limits<double>::quiet_NaN();
    return out;
}

}  // namespace ranlase
