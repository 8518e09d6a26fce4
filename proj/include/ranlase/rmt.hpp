#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <random>
#include <vector>

#include "ranlase/density.hpp"
#include "ranlase/errors.hpp"

namespace ranlase {

enum class SymmetryClass { UnitaryCUE, OrthogonalCOE };

/// Cavity ensemble: a lossless chaotic cavity with N perfectly coupled
/// detection modes and N' weakly transmitting drain channels standing in for
/// uniform absorption at rate gamma = N' Gamma' / N.
struct EnsembleConfig {
    int modes = 1;  // N
    double gamma = 0.0;
    double barrier_transparency = 0.02;  // requested Gamma'; readjusted exactly
    SymmetryClass symmetry = SymmetryClass::UnitaryCUE;
    int samples = 0;
    std::uint64_t seed = 0;

    int drain_channels() const;    // N' = ceil(N gamma / Gamma')
    double barrier_exact() const;  // Gamma' = N gamma / N'
    void validate() const;
};

/// One sampled scattering matrix with its strengths (eigenvalues of S S^dag,
/// ascending).
struct SubunitaryS {
    Eigen::MatrixXcd S;
    std::vector<double> strengths;
    std::uint64_t seed_offset = 0;
};

/// Haar-distributed unitary; COE samples are U^T U of a CUE draw.
Eigen::MatrixXcd sample_unitary(int dim, SymmetryClass symmetry, std::mt19937_64& rng);

/// Two-sided scattering element. Blocks: r (left reflection, nl x nl),
/// t (left-to-right, nr x nl), tp (right-to-left, nl x nr), rp (right
/// reflection, nr x nr).
struct ScatteringElement {
    Eigen::MatrixXcd r, t, tp, rp;

    int left_modes() const { return static_cast<int>(r.rows()); }
    int right_modes() const { return static_cast<int>(rp.rows()); }

    static ScatteringElement from_unitary(const Eigen::MatrixXcd& u, int left_modes);
    /// Mode-diagonal barrier: reflection -sqrt(1-T), transmission sqrt(T).
    static ScatteringElement barrier(int modes, double transparency);
    static ScatteringElement identity(int modes);
};

/// Cascade composition (star product) of two elements sharing an interface.
ScatteringElement compose_star(const ScatteringElement& first,
                               const ScatteringElement& second);

/// Full construction of one cavity sample: (N+N')-dim Haar cavity matrix with
/// the barrier composed onto the drain channels; S is the N x N reflection
/// block seen by the detector.
SubunitaryS sample_cavity_matrix(const EnsembleConfig& cfg, std::uint64_t sample_index);

/// Strengths-only path. Algebraically identical to sample_cavity_matrix for
/// the CUE class: the drain rows of the Haar matrix are drawn directly as an
/// orthonormal frame and only the N transmission eigenvalues are formed.
std::vector<double> sample_cavity_strengths_one(const EnsembleConfig& cfg,
                                                std::uint64_t sample_index);

struct Execution {
    bool parallel = true;
    int threads = 0;  // 0 = library default
};

struct StrengthEnsemble {
    int modes = 0;
    double gamma = 0.0;
    std::uint64_t seed = 0;
    std::vector<std::vector<double>> strengths;  // [sample][mode], ascending
    int skipped = 0;  // ill-conditioned samples, must stay < 0.1% of the run
};

StrengthEnsemble run_cavity_ensemble(const EnsembleConfig& cfg, const Execution& exec = {},
                                     bool fast_path = true);

/// Dual amplifying matrix S_- = (S_+^dag)^{-1}; strengths are the exact
/// reciprocals of the absorbing sample's strengths.
SubunitaryS dual_amplifying(const SubunitaryS& plus);

/// Reciprocal strengths of a whole ensemble (duality at the spectrum level).
StrengthEnsemble dual_strengths(const StrengthEnsemble& ens);

/// Disordered waveguide surrogate: thin slices, each a partial reflector of
/// per-mode amplitude sqrt(c_r dL/l) sandwiched between independent Haar
/// rotators, with transmission amplitudes damped by exp(-(3 gamma/32) dL/l).
struct WaveguideConfig {
    int modes = 1;
    double gamma = 0.0;
    double length_ratio = 1.0;     // L/l (target length for fixed-length runs)
    double slice_thickness = 0.05; // dL/l <= 0.05
    double reflect_strength = 1.0; // c_r, calibrated at gamma = 0
    SymmetryClass symmetry = SymmetryClass::UnitaryCUE;
    int samples = 0;
    std::uint64_t seed = 0;
    void validate() const;
};

struct WaveguideRun {
    StrengthEnsemble ensemble;      // reflection strengths at the stationary length
    double stationary_length = 0.0; // L/l at which the histogram stopped moving
    std::vector<double> ks_history; // KS distance between successive doublings
};

/// Semi-infinite limit: grow L by doublings until the pooled strength
/// histogram is stationary (two-sample KS < ks_tol); fails with
/// ConvergenceError past L/l = 64/sqrt(gamma).
WaveguideRun run_waveguide_ensemble(const WaveguideConfig& cfg, const Execution& exec = {},
                                    double ks_tol = 0.01);

/// Fixed length L/l; strengths of r r^dag alone or of r r^dag + t' t'^dag
/// (both_blocks) for one-sided detection of a transmitting guide.
StrengthEnsemble run_waveguide_fixed(const WaveguideConfig& cfg, bool both_blocks,
                                     const Execution& exec = {});

/// Mean of Tr t t^dag / N over the ensemble at gamma = 0 (Ohm's-law probe).
double waveguide_mean_transmission(const WaveguideConfig& cfg, const Execution& exec = {});

/// Fit c_r so that gamma = 0 transmission matches 1/(1+L/l) at L/l = 8, then
/// verify at L/l = 2; throws ConvergenceError if the 5% check fails.
double calibrate_reflect_strength(int modes, double slice_thickness, std::uint64_t seed,
                                  int samples, const Execution& exec = {});

double ks_distance(std::vector<double> a, std::vector<double> b);

struct Histogram {
    std::vector<double> edges;   // bin edges, outermost bins open-ended
    std::vector<double> counts;  // observed strength counts
    std::vector<double> expected;
};

struct DensityComparison {
    Histogram histogram;
    double chi_square = 0.0;
    int dof = 0;
    double p_value = 0.0;
    std::vector<double> moment_delta;  // |m_p(MC) - m_p(analytic)| / |m_p|, p = 1, 2
};

/// Equal-probability bins from the analytic CDF; outer bins absorb finite-N
/// leakage past the support edges.
DensityComparison compare_to_density(const StrengthEnsemble& ens, const StrengthDensity& d,
                                     int bins);

/// Draw `count` i.i.d. strengths from the analytic density via inverse-CDF
/// sampling (histogram self-test support).
std::vector<double> sample_from_density(const StrengthDensity& d, int count,
                                        std::uint64_t seed);

}  // namespace ranlase
