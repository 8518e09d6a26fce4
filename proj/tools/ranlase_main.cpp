// ranlase: photodetection statistics of absorbing and amplifying random media.
// Subcommands compute analytic strength densities, photocount statistics and
// distributions, and validate them against scattering-matrix Monte Carlo.

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ranlase/density.hpp"
#include "ranlase/distributions.hpp"
#include "ranlase/medium.hpp"
#include "ranlase/photostat.hpp"
#include "ranlase/rmt.hpp"
#include "ranlase/tableio.hpp"

namespace {

using namespace ranlase;

constexpr double kTwoPi = 6.28318530717958647692;

struct OutputOptions {
    std::string path;
    std::string format = "csv";
};

void emit(const Table& t, const OutputOptions& out) {
    if (out.path.empty()) {
        std::cout << (out.format == "json" ? to_json(t) : to_csv(t));
    } else {
        write_table(t, out.path, out.format);
    }
}

StrengthDensity build_density(const std::string& geometry, double gamma, double weight,
                              bool weak, bool dual) {
    StrengthDensity d;
    if (geometry == "cavity")
        d = weak ? rho_cavity_weak(weight, gamma) : rho_cavity_full(weight, gamma);
    else if (geometry == "waveguide")
        d = rho_waveguide_semiinf(weight, gamma);
    else
        throw DomainError("density: geometry must be cavity or waveguide");
    return dual ? dual_density(d) : d;
}

const char* density_formula_name(const StrengthDensity& d) {
    switch (d.family) {
        case DensityFamily::WaveguideSemiInfinite: return "waveguide-semi-infinite";
        case DensityFamily::CavityWeak: return "cavity-weak-absorption";
        case DensityFamily::CavityFull: return "cavity-full";
        case DensityFamily::BlackBody: return "black-body";
        case DensityFamily::Dual: return "dual-amplifying";
    }
    return "unknown";
}

int cmd_density(const std::string& geometry, double gamma, double weight, bool weak,
                bool dual, int points, std::uint64_t seed, const OutputOptions& out) {
    StrengthDensity d = build_density(geometry, gamma, weight, weak, dual);
    const StrengthDensity& base = d.dual_base ? *d.dual_base : d;

    Table t;
    t.meta("ranlase", kLibraryVersion);
    t.meta("command", "density");
    t.meta("formula", density_formula_name(d));
    t.meta("geometry", geometry);
    t.meta("gamma", gamma);
    t.meta("N", weight);
    t.meta("dual", dual ? "1" : "0");
    t.meta("sigma_min", d.sigma_min);
    t.meta("sigma_max", d.sigma_max);
    t.meta("edge_exponent_low", d.edge_exponents.first);
    t.meta("edge_exponent_high", d.edge_exponents.second);
    for (const auto& w : d.warnings) t.meta("warning", w);
    t.meta("seed", static_cast<double>(seed));
    t.columns = {"sigma", "rho"};

    // theta-uniform grid concentrates points at the support edges where the
    // density has half-power behavior
    const double half_pi = 2.0 * std::atan(1.0);
    std::vector<double> sigmas;
    for (int i = 1; i < points; ++i) {
        const double th = half_pi * i / points;
        const double s = std::sin(th);
        sigmas.push_back(base.sigma_min + (base.sigma_max - base.sigma_min) * s * s);
    }
    if (d.dual_base) {
        std::reverse(sigmas.begin(), sigmas.end());
        for (double& s : sigmas) s = 1.0 / s;
    }
    for (double s : sigmas) t.rows.push_back({Cell(s), Cell(d.evaluate(s))});
    emit(t, out);
    return 0;
}

void push_stats_cells(std::vector<Cell>& row, const StatSummary& st) {
    row.push_back(Cell(st.mean));
    row.push_back(Cell(st.variance));
    row.push_back(Cell(st.nu_eff / st.nu));
}

void push_divergent_cells(std::vector<Cell>& row) {
    row.push_back(std::nullopt);
    row.push_back(std::nullopt);
    row.push_back(std::nullopt);
}

int cmd_stats(const std::string& geometry, const std::string& response_opt,
              const std::string& sweep, double lo, double hi, int points, bool log_grid,
              int modes, double alpha, double f, double count_time, double delta_omega,
              double line_width, double length_ratio, std::uint64_t seed,
              const OutputOptions& out) {
    if (points < 2) throw DomainError("stats: sweep needs at least 2 points");
    const bool both = response_opt == "both";

    Table t;
    t.meta("ranlase", kLibraryVersion);
    t.meta("command", "stats");
    t.meta("geometry", geometry);
    t.meta("response", response_opt);
    t.meta("sweep", sweep);
    t.meta("N", static_cast<double>(modes));
    t.meta("alpha", alpha);
    t.meta("f", f);
    t.meta("t", count_time);
    if (sweep == "gamma0")
        t.meta("Gamma", line_width);
    else
        t.meta("delta_omega", delta_omega);
    if (geometry == "waveguide-finite") t.meta("length_ratio", length_ratio);
    t.meta("seed", static_cast<double>(seed));

    std::vector<double> grid(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) {
        const double u = static_cast<double>(i) / (points - 1);
        grid[static_cast<std::size_t>(i)] =
            log_grid ? lo * std::pow(hi / lo, u) : lo + (hi - lo) * u;
    }

    std::vector<Response> responses;
    if (both)
        responses = {Response::Absorbing, Response::Amplifying};
    else if (response_opt == "amplifying")
        responses = {Response::Amplifying};
    else
        responses = {Response::Absorbing};

    t.columns = {sweep};
    for (Response r : responses) {
        const std::string tag =
            both ? (r == Response::Absorbing ? "_abs" : "_amp") : std::string{};
        t.columns.push_back("nbar" + tag);
        t.columns.push_back("var_n" + tag);
        t.columns.push_back("nu_eff_ratio" + tag);
    }

    if (geometry != "cavity" && geometry != "waveguide" && geometry != "waveguide-finite")
        throw DomainError("stats: unknown geometry " + geometry);
    if (sweep == "gamma0" && geometry != "cavity")
        throw DomainError("stats: gamma0 sweeps support the cavity geometry");

    // rows are computed in grid order; sweep evaluation is pure so a parallel
    // loop filling a preallocated buffer stays byte-identical
    std::vector<std::vector<Cell>> rows(grid.size());
    std::string sweep_error;
#pragma omp parallel for schedule(static)
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double x = grid[i];
        std::vector<Cell> row{Cell(x)};
        for (Response r : responses) {
            DetectionConfig cfg;
            cfg.efficiency = alpha;
            cfg.count_time = count_time;
            cfg.occupation = r == Response::Amplifying ? -std::abs(f) : std::abs(f);
            try {
                StatSummary st;
                if (sweep == "gamma0") {
                    cfg.band = BroadLorentzian{line_width, x};
                    MediumSpec spec;
                    spec.geometry = Geometry::CavityHole;
                    spec.response = r;
                    spec.gamma = 0.0;  // line-center rate lives in the band
                    spec.modes = modes;
                    st = broadband_cavity_closed(spec, cfg);
                } else if (geometry == "waveguide-finite") {
                    cfg.band = NarrowBand{delta_omega};
                    const double gc = gamma_critical(length_ratio);
                    const double gamma = sweep == "gamma-ratio" ? x * gc : x;
                    st = finite_waveguide_stats(gamma, gc, cfg.nu(modes), cfg.alpha_f(), r);
                } else {
                    cfg.band = NarrowBand{delta_omega};
                    MediumSpec spec = geometry == "cavity"
                                          ? MediumSpec::cavity(r, x, modes)
                                          : MediumSpec::waveguide_semi_infinite(r, x, modes);
                    st = closed_form_narrowband(spec, cfg);
                }
                push_stats_cells(row, st);
            } catch (const ThresholdError&) {
                push_divergent_cells(row);
            } catch (const Error& e) {
#pragma omp critical
                if (sweep_error.empty()) sweep_error = e.what();
                push_divergent_cells(row);
            }
        }
        rows[i] = std::move(row);
    }
    if (!sweep_error.empty()) throw DomainError("stats sweep: " + sweep_error);
    t.rows = std::move(rows);
    emit(t, out);
    return 0;
}

int cmd_pmf(const std::string& family, const std::string& geometry,
            const std::string& response_opt, double gamma, double nu, double alpha, double f,
            double kappa_scale, int n_max_arg, double tail, std::uint64_t seed,
            const OutputOptions& out) {
    const Response response =
        response_opt == "amplifying" ? Response::Amplifying : Response::Absorbing;
    const double occupation = response == Response::Amplifying ? -std::abs(f) : std::abs(f);
    const double af = alpha * occupation;

    Table t;
    t.meta("ranlase", kLibraryVersion);
    t.meta("command", "pmf");
    t.meta("family", family);
    t.meta("alpha", alpha);
    t.meta("f", occupation);
    t.meta("seed", static_cast<double>(seed));

    CountDistribution dist;
    if (family == "blackbody") {
        const double nbar = nu * af;
        const int n_max = n_max_arg > 0 ? n_max_arg
                                        : suggest_n_max(nbar, nbar * (1.0 + nbar / nu), tail);
        dist = pmf_negative_binomial(nbar, nu, n_max);
        t.meta("nu", nu);
        t.meta("nbar", nbar);
    } else if (family == "poisson") {
        const double nbar = nu * af;
        const int n_max = n_max_arg > 0 ? n_max_arg : suggest_n_max(nbar, nbar, tail);
        dist = pmf_poisson(nbar, n_max);
        t.meta("nbar", nbar);
    } else if (family == "besselk") {
        const double nbar = 0.5 * kappa_scale * af;
        const int n_max =
            n_max_arg > 0 ? n_max_arg : suggest_n_max(nbar, nbar * (1.0 + 2.0 / kappa_scale), tail);
        dist = pmf_bessel_k(nbar, kappa_scale, af, n_max);
        t.meta("kappa_scale", kappa_scale);
        t.meta("nbar", nbar);
    } else if (family == "numeric") {
        StrengthDensity dens;
        if (geometry == "cavity") {
            dens = rho_cavity_full(1.0, gamma);
            if (response == Response::Amplifying) {
                if (gamma >= 1.0)
                    throw ThresholdError("amplifying cavity needs gamma < gamma_c = 1");
                dens = dual_density(dens);
            }
        } else if (geometry == "waveguide") {
            if (response == Response::Amplifying)
                throw ThresholdError(
                    "semi-infinite amplifying waveguide is above threshold (gamma_c = 0)");
            dens = rho_waveguide_semiinf(1.0, gamma);
        } else {
            throw DomainError("pmf: geometry must be cavity or waveguide");
        }
        DetectionConfig cfg;
        cfg.efficiency = alpha;
        cfg.occupation = occupation;
        cfg.count_time = 1.0;
        cfg.band = NarrowBand{kTwoPi * nu};  // weight-1 density: nu = t domega / 2pi
        GeneratingFunction gf = generating_long_time(dens, cfg);
        auto kappa = factorial_cumulants(dens, cfg, 2);
        const double mean = kappa[0];
        const double variance = kappa[0] + kappa[1];
        const int n_max = n_max_arg > 0 ? n_max_arg : suggest_n_max(mean, variance, tail);
        dist = invert_generating(gf, n_max);
        t.meta("geometry", geometry);
        t.meta("response", response_opt);
        t.meta("gamma", gamma);
        t.meta("nu", nu);
        // weak-absorption waveguides admit the Bessel-K family with
        // nu_eff = 2 nu sqrt(gamma); report the sup deviation when applicable
        if (geometry == "waveguide" && gamma <= 0.1) {
            const double nu_eff = 2.0 * nu * std::sqrt(gamma);
            CountDistribution glauber =
                pmf_bessel_k(0.5 * nu_eff * af, nu_eff, af, dist.n_max());
            double sup = 0.0, peak = 0.0;
            for (std::size_t i = 0; i < dist.pmf.size(); ++i) {
                sup = std::max(sup, std::abs(dist.pmf[i] - glauber.pmf[i]));
                peak = std::max(peak, dist.pmf[i]);
            }
            t.meta("sup_dev_closed_form", sup / peak);
        }
    } else {
        throw DomainError("pmf: family must be blackbody, poisson, besselk or numeric");
    }

    const PmfMoments mom = moments_from_pmf(dist, 2);
    t.meta("mean", mom.mean);
    t.meta("variance", mom.variance);
    const double excess = mom.variance - mom.mean;
    if (excess > 0.0) t.meta("nu_eff", mom.mean * mom.mean / excess);
    t.meta("tail_bound", dist.tail_bound);
    t.columns = {"n", "p"};
    for (std::size_t n = 0; n < dist.pmf.size(); ++n)
        t.rows.push_back({Cell(static_cast<double>(n)), Cell(dist.pmf[n])});
    emit(t, out);
    return 0;
}

int cmd_montecarlo(const std::string& geometry, int modes, double gamma, int samples,
                   std::uint64_t seed, int bins, double barrier, double slice, bool dual,
                   double p_threshold, const std::string& strengths_path,
                   const OutputOptions& out) {
    StrengthEnsemble ens;
    StrengthDensity reference;
    Table t;
    t.meta("ranlase", kLibraryVersion);
    t.meta("command", "montecarlo");
    t.meta("geometry", geometry);
    t.meta("N", static_cast<double>(modes));
    t.meta("gamma", gamma);
    t.meta("samples", static_cast<double>(samples));
    t.meta("seed", static_cast<double>(seed));

    if (geometry == "cavity") {
        EnsembleConfig cfg;
        cfg.modes = modes;
        cfg.gamma = gamma;
        cfg.samples = samples;
        cfg.seed = seed;
        cfg.barrier_transparency = barrier;
        if (gamma > 0.0) {
            t.meta("drain_channels", static_cast<double>(cfg.drain_channels()));
            t.meta("barrier", cfg.barrier_exact());
        }
        ens = run_cavity_ensemble(cfg);
        if (gamma == 0.0) {
            // lossless cavity: every strength is 1, nothing to bin
            double worst = 0.0;
            for (const auto& row : ens.strengths)
                for (double s : row) worst = std::max(worst, std::abs(s - 1.0));
            t.meta("max_deviation_from_unity", worst);
            t.meta("result", worst < 1e-10 ? "pass" : "fail");
            t.columns = {"sigma", "count"};
            t.rows.push_back({Cell(1.0), Cell(static_cast<double>(modes) * samples)});
            emit(t, out);
            std::cout << "montecarlo: gamma=0 unitarity "
                      << (worst < 1e-10 ? "pass" : "FAIL") << " (max dev " << worst << ")\n";
            return worst < 1e-10 ? 0 : 5;
        }
        reference = rho_cavity_full(static_cast<double>(modes), gamma);
    } else if (geometry == "waveguide") {
        WaveguideConfig cfg;
        cfg.modes = modes;
        cfg.gamma = gamma;
        cfg.samples = samples;
        cfg.seed = seed;
        cfg.slice_thickness = slice;
        cfg.length_ratio = 8.0 / std::sqrt(std::max(gamma, 1e-12));
        cfg.reflect_strength =
            calibrate_reflect_strength(modes, slice, seed + 1, std::max(100, samples / 4));
        t.meta("reflect_strength", cfg.reflect_strength);
        WaveguideRun run = run_waveguide_ensemble(cfg);
        t.meta("stationary_length", run.stationary_length);
        ens = std::move(run.ensemble);
        reference = rho_waveguide_semiinf(static_cast<double>(modes), gamma);
    } else {
        throw DomainError("montecarlo: geometry must be cavity or waveguide");
    }

    if (dual) {
        ens = dual_strengths(ens);
        reference = dual_density(reference);
        t.meta("dual", "1");
    }

    if (!strengths_path.empty()) {
        Table st;
        st.meta("ranlase", kLibraryVersion);
        st.meta("command", "montecarlo-strengths");
        st.meta("seed", static_cast<double>(seed));
        st.columns = {"seed_offset"};
        for (int m = 1; m <= ens.modes; ++m) st.columns.push_back("sigma_" + std::to_string(m));
        for (std::size_t i = 0; i < ens.strengths.size(); ++i) {
            std::vector<Cell> row{Cell(static_cast<double>(i))};
            for (double s : ens.strengths[i]) row.push_back(Cell(s));
            st.rows.push_back(std::move(row));
        }
        write_table(st, strengths_path, out.format);
    }

    const DensityComparison cmp = compare_to_density(ens, reference, bins);
    double mean_absorptivity = 0.0;
    std::size_t count = 0;
    for (const auto& row : ens.strengths)
        for (double s : row) {
            mean_absorptivity += 1.0 - s;
            ++count;
        }
    mean_absorptivity /= static_cast<double>(count);

    t.meta("mean_absorptivity", mean_absorptivity);
    t.meta("chi_square", cmp.chi_square);
    t.meta("dof", static_cast<double>(cmp.dof));
    t.meta("p_value", cmp.p_value);
    for (std::size_t p = 0; p < cmp.moment_delta.size(); ++p)
        t.meta("moment_delta_m" + std::to_string(p + 1), cmp.moment_delta[p]);
    t.meta("skipped", static_cast<double>(ens.skipped));
    const bool pass = cmp.p_value > p_threshold;
    t.meta("result", pass ? "pass" : "fail");

    t.columns = {"bin_lo", "bin_hi", "count", "expected"};
    for (std::size_t b = 0; b < cmp.histogram.counts.size(); ++b) {
        const Cell lo = b == 0 ? Cell() : Cell(cmp.histogram.edges[b - 1]);
        const Cell hi =
            b == cmp.histogram.counts.size() - 1 ? Cell() : Cell(cmp.histogram.edges[b]);
        t.rows.push_back({lo, hi, Cell(cmp.histogram.counts[b]), Cell(cmp.histogram.expected[b])});
    }
    emit(t, out);

    std::cout << "montecarlo: chi2=" << format_double(cmp.chi_square) << " dof=" << cmp.dof
              << " p=" << format_double(cmp.p_value) << " mean_absorptivity="
              << format_double(mean_absorptivity) << " -> " << (pass ? "pass" : "FAIL")
              << "\n";
    return pass ? 0 : 5;
}

}  // namespace

int main(int argc, char** argv) {
    if (const char* env = std::getenv("RANLASE_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) omp_set_num_threads(n);
    }

    CLI::App app{"photocount statistics of thermal and amplified emission from random media"};
    app.set_config("--config", "", "flat key=value configuration file");
    app.require_subcommand(1);

    std::uint64_t seed = 0;
    app.add_option("--seed", seed, "master seed for all randomness")->capture_default_str();

    OutputOptions out;
    app.add_option("-o,--output", out.path, "output file (stdout when omitted)");
    app.add_option("--format", out.format, "csv or json")->capture_default_str();

    // density
    auto* density = app.add_subcommand("density", "tabulate a strength density rho(sigma)");
    density->fallthrough();
    std::string d_geometry = "cavity";
    double d_gamma = 1.0, d_weight = 1.0;
    bool d_weak = false, d_dual = false;
    int d_points = 512;
    density->add_option("--geometry", d_geometry, "cavity | waveguide")->capture_default_str();
    density->add_option("--gamma", d_gamma, "normalized rate")->capture_default_str();
    density->add_option("--N", d_weight, "total weight (mode count)")->capture_default_str();
    density->add_flag("--weak", d_weak, "use the weak-absorption cavity form");
    density->add_flag("--dual", d_dual, "emit the dual amplifying density");
    density->add_option("--points", d_points, "grid points")->capture_default_str();

    // stats
    auto* stats = app.add_subcommand("stats", "sweep closed-form photocount statistics");
    stats->fallthrough();
    std::string s_geometry = "cavity", s_response = "absorbing", s_sweep = "gamma";
    double s_lo = 0.0, s_hi = 2.0;
    int s_points = 101, s_modes = 1;
    bool s_log = false;
    double s_alpha = 1.0, s_f = 1.0, s_t = 1.0, s_domega = 100.0, s_line_width = 1.0;
    double s_length_ratio = 20.0;
    stats->add_option("--geometry", s_geometry, "cavity | waveguide | waveguide-finite")
        ->capture_default_str();
    stats->add_option("--response", s_response, "absorbing | amplifying | both")
        ->capture_default_str();
    stats->add_option("--sweep", s_sweep, "gamma | gamma0 | gamma-ratio")->capture_default_str();
    stats->add_option("--min", s_lo, "sweep start")->capture_default_str();
    stats->add_option("--max", s_hi, "sweep end")->capture_default_str();
    stats->add_option("--points", s_points, "grid points (>= 2)")->capture_default_str();
    stats->add_flag("--log", s_log, "logarithmic grid");
    stats->add_option("--N", s_modes, "mode count")->capture_default_str();
    stats->add_option("--alpha", s_alpha, "detector efficiency")->capture_default_str();
    stats->add_option("--f", s_f, "occupation magnitude (sign from response)")
        ->capture_default_str();
    stats->add_option("--t", s_t, "counting time")->capture_default_str();
    stats->add_option("--delta-omega", s_domega, "narrow-band width")->capture_default_str();
    stats->add_option("--Gamma", s_line_width, "broad-band Lorentzian width")
        ->capture_default_str();
    stats->add_option("--length-ratio", s_length_ratio, "L/l for the finite waveguide")
        ->capture_default_str();

    // pmf
    auto* pmf = app.add_subcommand("pmf", "tabulate a photocount distribution P(n)");
    pmf->fallthrough();
    std::string p_family = "numeric", p_geometry = "cavity", p_response = "absorbing";
    double p_gamma = 0.5, p_nu = 10.0, p_alpha = 1.0, p_f = 1.0, p_kappa = 20.0;
    double p_tail = 1e-12;
    int p_nmax = 0;
    pmf->add_option("--family", p_family, "blackbody | poisson | besselk | numeric")
        ->capture_default_str();
    pmf->add_option("--geometry", p_geometry, "cavity | waveguide (numeric family)")
        ->capture_default_str();
    pmf->add_option("--response", p_response, "absorbing | amplifying")->capture_default_str();
    pmf->add_option("--gamma", p_gamma, "normalized rate (numeric family)")
        ->capture_default_str();
    pmf->add_option("--nu", p_nu, "degrees of freedom")->capture_default_str();
    pmf->add_option("--alpha", p_alpha, "detector efficiency")->capture_default_str();
    pmf->add_option("--f", p_f, "occupation magnitude (sign from response)")
        ->capture_default_str();
    pmf->add_option("--kappa-scale", p_kappa, "Bessel-K scale (t Omega_c / 2 or nu_eff)")
        ->capture_default_str();
    pmf->add_option("--n-max", p_nmax, "truncation (0 = automatic)")->capture_default_str();
    pmf->add_option("--tail", p_tail, "target truncated tail mass")->capture_default_str();

    // montecarlo
    auto* mc = app.add_subcommand("montecarlo", "sample scattering matrices and validate");
    mc->fallthrough();
    std::string m_geometry = "cavity";
    int m_modes = 20, m_samples = 1000, m_bins = 20;
    double m_gamma = 1.0, m_barrier = 0.02, m_slice = 0.05, m_pthresh = 0.01;
    bool m_dual = false;
    std::string m_strengths;
    mc->add_option("--geometry", m_geometry, "cavity | waveguide")->capture_default_str();
    mc->add_option("--N", m_modes, "detected modes")->capture_default_str();
    mc->add_option("--gamma", m_gamma, "normalized rate")->capture_default_str();
    mc->add_option("--samples", m_samples, "ensemble size")->capture_default_str();
    mc->add_option("--bins", m_bins, "histogram bins")->capture_default_str();
    mc->add_option("--barrier", m_barrier, "drain transparency Gamma' (cavity)")
        ->capture_default_str();
    mc->add_option("--slice", m_slice, "slice thickness dL/l (waveguide)")
        ->capture_default_str();
    mc->add_flag("--dual", m_dual, "validate reciprocal strengths against the dual density");
    mc->add_option("--p-threshold", m_pthresh, "chi-square pass threshold")
        ->capture_default_str();
    mc->add_option("--export-strengths", m_strengths, "write per-sample strengths to this file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return 2;
    }

    std::cout << "# seed=" << seed << "\n";
    try {
        if (density->parsed())
            return cmd_density(d_geometry, d_gamma, d_weight, d_weak, d_dual, d_points, seed,
                               out);
        if (stats->parsed())
            return cmd_stats(s_geometry, s_response, s_sweep, s_lo, s_hi, s_points, s_log,
                             s_modes, s_alpha, s_f, s_t, s_domega, s_line_width,
                             s_length_ratio, seed, out);
        if (pmf->parsed())
            return cmd_pmf(p_family, p_geometry, p_response, p_gamma, p_nu, p_alpha, p_f,
                           p_kappa, p_nmax, p_tail, seed, out);
        if (mc->parsed())
            return cmd_montecarlo(m_geometry, m_modes, m_gamma, m_samples, seed, m_bins,
                                  m_barrier, m_slice, m_dual, m_pthresh, m_strengths, out);
    } catch (const ThresholdError& e) {
        std::cerr << "threshold error: " << e.what() << "\n";
        return 4;
    } catch (const IoError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return 3;
    } catch (const ConvergenceError& e) {
        std::cerr << "monte carlo failure: " << e.what() << "\n";
        return 5;
    } catch (const ConditioningError& e) {
        std::cerr << "monte carlo failure: " << e.what() << "\n";
        return 5;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
