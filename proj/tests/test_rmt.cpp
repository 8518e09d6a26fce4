#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>

#include "doctest.h"
#include "ranlase/density.hpp"
#include "ranlase/photostat.hpp"
#include "ranlase/rmt.hpp"
#include "ranlase/rng.hpp"
#include "ranlase/special.hpp"

using namespace ranlase;
using Eigen::MatrixXcd;
using cplx = std::complex<double>;

namespace {

constexpr double kPi = 3.14159265358979323846;

double max_unitarity_defect(const MatrixXcd& u) {
    const MatrixXcd d = u.adjoint() * u - MatrixXcd::Identity(u.rows(), u.cols());
    return d.cwiseAbs().maxCoeff();
}

double mean_absorptivity(const StrengthEnsemble& ens) {
    double acc = 0.0;
    std::size_t n = 0;
    for (const auto& row : ens.strengths)
        for (double s : row) {
            acc += 1.0 - s;
            ++n;
        }
    return acc / static_cast<double>(n);
}

}  // namespace

TEST_CASE("haar unitaries are unitary and phase-uniform") {
    std::mt19937_64 rng = stream_engine(11, 0);
    const MatrixXcd u = sample_unitary(12, SymmetryClass::UnitaryCUE, rng);
    CHECK(max_unitarity_defect(u) < 1e-12);
    const MatrixXcd s = sample_unitary(9, SymmetryClass::OrthogonalCOE, rng);
    CHECK(max_unitarity_defect(s) < 1e-12);
    CHECK((s - s.transpose()).cwiseAbs().maxCoeff() < 1e-13);  // COE is symmetric

    // dim = 1: the phase of the single entry is uniform on the circle
    double mean_phase = 0.0;
    const int draws = 10000;
    for (int i = 0; i < draws; ++i) {
        std::mt19937_64 r = stream_engine(99, static_cast<std::uint64_t>(i));
        mean_phase += std::arg(sample_unitary(1, SymmetryClass::UnitaryCUE, r)(0, 0));
    }
    mean_phase /= draws;
    const double sigma = kPi / std::sqrt(3.0) / std::sqrt(static_cast<double>(draws));
    CHECK(std::abs(mean_phase) < 3.0 * sigma);
}

TEST_CASE("unitary eigenvalue angles repel") {
    const int dim = 20;
    double min_ratio = 1e9;
    for (int t = 0; t < 1000; ++t) {
        std::mt19937_64 rng = stream_engine(5, static_cast<std::uint64_t>(t));
        const MatrixXcd u = sample_unitary(dim, SymmetryClass::UnitaryCUE, rng);
        Eigen::ComplexEigenSolver<MatrixXcd> es(u, false);
        std::vector<double> angles(dim);
        for (int i = 0; i < dim; ++i) angles[static_cast<std::size_t>(i)] = std::arg(es.eigenvalues()(i));
        std::sort(angles.begin(), angles.end());
        const double mean_gap = 2.0 * kPi / dim;
        for (int i = 0; i < dim; ++i) {
            const double gap = i + 1 < dim
                                   ? angles[static_cast<std::size_t>(i) + 1] - angles[static_cast<std::size_t>(i)]
                                   : angles[0] + 2.0 * kPi - angles[static_cast<std::size_t>(i)];
            min_ratio = std::min(min_ratio, gap / mean_gap);
        }
    }
    CHECK(min_ratio > 1e-3);
}

TEST_CASE("star product basics") {
    std::mt19937_64 rng = stream_engine(3, 0);
    const auto elem = ScatteringElement::from_unitary(sample_unitary(8, SymmetryClass::UnitaryCUE, rng), 4);
    const auto ident = ScatteringElement::identity(4);
    const auto left = compose_star(ident, elem);
    CHECK((left.r - elem.r).cwiseAbs().maxCoeff() < 1e-13);
    CHECK((left.t - elem.t).cwiseAbs().maxCoeff() < 1e-13);
    const auto right = compose_star(elem, ScatteringElement::identity(4));
    CHECK((right.rp - elem.rp).cwiseAbs().maxCoeff() < 1e-13);

    // two lossless elements compose to a lossless element
    const auto e2 = ScatteringElement::from_unitary(sample_unitary(8, SymmetryClass::UnitaryCUE, rng), 4);
    const auto c = compose_star(elem, e2);
    MatrixXcd full(8, 8);
    full.topLeftCorner(4, 4) = c.r;
    full.topRightCorner(4, 4) = c.tp;
    full.bottomLeftCorner(4, 4) = c.t;
    full.bottomRightCorner(4, 4) = c.rp;
    CHECK(max_unitarity_defect(full) < 1e-10);
}

TEST_CASE("scalar fabry-perot sum of two half-transparent barriers") {
    const auto b = ScatteringElement::barrier(1, 0.5);
    const auto two = compose_star(b, b);
    // amplitude sum t2 (1 - r1' r2)^-1 t1 = 0.5 / (1 + 0.5) = 1/3 at zero phase
    CHECK(two.t(0, 0).real() == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(std::abs(two.t(0, 0).imag()) < 1e-15);
}

TEST_CASE("fast strengths path matches the compose_star route on the same matrix") {
    // same Haar cavity matrix, two algebraic routes to the strengths
    const int n = 6, np = 24;
    const double gp = 0.05;
    const double a = std::sqrt(1.0 - gp);
    std::mt19937_64 rng = stream_engine(21, 4);
    const MatrixXcd u = sample_unitary(n + np, SymmetryClass::UnitaryCUE, rng);

    const auto cav = ScatteringElement::from_unitary(u, n);
    const auto comp = compose_star(cav, ScatteringElement::barrier(np, gp));
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es_direct(comp.r * comp.r.adjoint());

    const MatrixXcd C = u.bottomLeftCorner(np, n);
    const MatrixXcd D = u.bottomRightCorner(np, np);
    const MatrixXcd X = (MatrixXcd::Identity(np, np) + a * D).partialPivLu().solve(C);
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es_t(MatrixXcd(gp * (X.adjoint() * X)));

    for (int i = 0; i < n; ++i) {
        const double sigma_direct = es_direct.eigenvalues()(i);
        const double sigma_fast = 1.0 - es_t.eigenvalues()(n - 1 - i);
        CHECK(sigma_direct == doctest::Approx(sigma_fast).epsilon(1e-10));
    }
}

TEST_CASE("lossless cavity has unit strengths and conserved flux") {
    EnsembleConfig cfg;
    cfg.modes = 8;
    cfg.gamma = 0.0;
    cfg.samples = 5;
    cfg.seed = 17;
    const auto ens = run_cavity_ensemble(cfg, {}, true);
    for (const auto& row : ens.strengths) {
        double defect = 0.0;
        for (double s : row) defect += 1.0 - s;
        CHECK(std::abs(defect) < 1e-10);
    }
    // full path: numerically unitary S
    const auto full = sample_cavity_matrix(cfg, 0);
    for (double s : full.strengths) CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("absorbing samples stay inside the unit interval") {
    EnsembleConfig cfg;
    cfg.modes = 8;
    cfg.gamma = 0.5;
    cfg.barrier_transparency = 0.05;
    cfg.samples = 40;
    cfg.seed = 2;
    for (bool fast : {true, false}) {
        const auto ens = run_cavity_ensemble(cfg, {}, fast);
        for (const auto& row : ens.strengths) {
            CHECK(row.size() == 8);
            CHECK(std::is_sorted(row.begin(), row.end()));
            for (double s : row) {
                CHECK(s >= -1e-10);
                CHECK(s <= 1.0 + 1e-10);
            }
        }
    }
}

TEST_CASE("serial and parallel ensembles are bitwise identical") {
    EnsembleConfig cfg;
    cfg.modes = 8;
    cfg.gamma = 0.8;
    cfg.barrier_transparency = 0.05;
    cfg.samples = 30;
    cfg.seed = 9;
    Execution serial{false, 1};
    Execution parallel{true, 2};
    const auto a = run_cavity_ensemble(cfg, serial, true);
    const auto b = run_cavity_ensemble(cfg, parallel, true);
    REQUIRE(a.strengths.size() == b.strengths.size());
    for (std::size_t i = 0; i < a.strengths.size(); ++i)
        for (std::size_t j = 0; j < a.strengths[i].size(); ++j)
            CHECK(a.strengths[i][j] == b.strengths[i][j]);  // exact bits
}

TEST_CASE("ensemble mean absorptivity approaches gamma/(1+gamma)") {
    EnsembleConfig cfg;
    cfg.modes = 16;
    cfg.gamma = 1.0;
    cfg.barrier_transparency = 0.05;
    cfg.samples = 200;
    cfg.seed = 31;
    const auto ens = run_cavity_ensemble(cfg);
    CHECK(mean_absorptivity(ens) == doctest::Approx(0.5).epsilon(0.04));
}

TEST_CASE("dual samples carry reciprocal strengths") {
    SubunitaryS plus;
    plus.S = MatrixXcd::Zero(2, 2);
    plus.S(0, 0) = 0.5;
    plus.S(1, 1) = std::sqrt(0.5);
    plus.strengths = {0.25, 0.5};
    const auto minus = dual_amplifying(plus);
    CHECK(minus.strengths[0] == doctest::Approx(2.0));
    CHECK(minus.strengths[1] == doctest::Approx(4.0));

    EnsembleConfig cfg;
    cfg.modes = 6;
    cfg.gamma = 0.5;
    cfg.barrier_transparency = 0.05;
    cfg.samples = 1;
    cfg.seed = 5;
    const auto sample = sample_cavity_matrix(cfg, 0);
    const auto back = dual_amplifying(dual_amplifying(sample));
    CHECK((back.S - sample.S).cwiseAbs().maxCoeff() < 1e-10);
    for (std::size_t i = 0; i < sample.strengths.size(); ++i)
        CHECK(back.strengths[i] == doctest::Approx(sample.strengths[i]).epsilon(1e-12));

    SubunitaryS singular;
    singular.S = MatrixXcd::Zero(2, 2);
    singular.strengths = {0.0, 0.0};
    CHECK_THROWS_AS(dual_amplifying(singular), DomainError);
}

TEST_CASE("waveguide calibration and ohm's law") {
    const double c = calibrate_reflect_strength(10, 0.05, 77, 120);
    CHECK(c > 0.3);
    CHECK(c < 5.0);
    WaveguideConfig cfg;
    cfg.modes = 10;
    cfg.gamma = 0.0;
    cfg.length_ratio = 4.0;
    cfg.reflect_strength = c;
    cfg.samples = 150;
    cfg.seed = 13;
    const double t4 = waveguide_mean_transmission(cfg);
    CHECK(t4 == doctest::Approx(1.0 / 5.0).epsilon(0.08));
}

TEST_CASE("waveguide strengths converge to the semi-infinite density mean") {
    const double c = calibrate_reflect_strength(12, 0.05, 101, 150);
    WaveguideConfig cfg;
    cfg.modes = 12;
    cfg.gamma = 1.0;
    cfg.reflect_strength = c;
    cfg.samples = 250;
    cfg.seed = 19;
    const auto run = run_waveguide_ensemble(cfg);
    CHECK(run.stationary_length >= 16.0 / std::sqrt(cfg.gamma) - 1e-9);
    // m1/N of the analytic density: (g/2)(sqrt(1+4/g)-1) = 0.618 at g = 1
    CHECK(mean_absorptivity(run.ensemble) ==
          doctest::Approx(0.5 * (std::sqrt(5.0) - 1.0)).epsilon(0.10));
    // strengths bounded by the analytic support edge plus finite-N slack
    WaveguideConfig strong = cfg;
    strong.gamma = 4.0;
    strong.samples = 150;
    const auto srun = run_waveguide_ensemble(strong);
    double smax = 0.0;
    for (const auto& row : srun.ensemble.strengths)
        for (double s : row) smax = std::max(smax, s);
    CHECK(smax <= 1.0 / (1.0 + 1.0) + 0.05);
}

TEST_CASE("finite-length strengths with both blocks stay physical") {
    WaveguideConfig cfg;
    cfg.modes = 10;
    cfg.gamma = 0.02;
    cfg.length_ratio = 6.0;
    cfg.reflect_strength = 1.0;
    cfg.samples = 60;
    cfg.seed = 23;
    const auto ens = run_waveguide_fixed(cfg, true);
    for (const auto& row : ens.strengths)
        for (double s : row) {
            CHECK(s >= -1e-10);
            CHECK(s <= 1.0 + 1e-10);
        }
}

TEST_CASE("finite-length moments approach the closed-form absorbing bracket") {
    // stretch comparison with ~10% tolerance: one-sided detection of a short
    // absorbing guide against the hyperbolic closed form
    const double c = calibrate_reflect_strength(12, 0.05, 303, 150);
    WaveguideConfig cfg;
    cfg.modes = 12;
    cfg.gamma = 0.05;
    cfg.length_ratio = 12.0;
    cfg.reflect_strength = c;
    cfg.samples = 200;
    cfg.seed = 29;
    const auto ens = run_waveguide_fixed(cfg, true);
    const double gc = gamma_critical(cfg.length_ratio);
    const auto closed = finite_waveguide_stats(cfg.gamma, gc, 1.0, 1.0, Response::Absorbing);
    CHECK(mean_absorptivity(ens) == doctest::Approx(closed.mean).epsilon(0.10));
}

TEST_CASE("histogram comparison accepts its own density") {
    const auto dens = rho_cavity_full(20.0, 1.0);
    const auto draws = sample_from_density(dens, 10000, 1);
    StrengthEnsemble ens;
    ens.modes = 20;
    ens.gamma = 1.0;
    ens.strengths.resize(500);
    for (std::size_t i = 0; i < 500; ++i)
        ens.strengths[i].assign(draws.begin() + static_cast<long>(20 * i),
                                draws.begin() + static_cast<long>(20 * (i + 1)));
    const auto cmp = compare_to_density(ens, dens, 20);
    CHECK(cmp.p_value > 0.05);
    CHECK(cmp.moment_delta[0] < 0.05);
}

TEST_CASE("ks distance endpoints") {
    CHECK(ks_distance({1.0, 2.0, 3.0}, {1.0, 2.0, 3.0}) == doctest::Approx(0.0));
    CHECK(ks_distance({0.0, 0.1}, {5.0, 6.0}) == doctest::Approx(1.0));
}

TEST_CASE("chi-square p-value sanity") {
    CHECK(chi_square_p_value(1e-12, 10) == doctest::Approx(1.0));
    CHECK(chi_square_p_value(100.0, 10) < 1e-10);
    const double p = chi_square_p_value(19.0, 19);
    CHECK(p > 0.4);
    CHECK(p < 0.52);
}

TEST_CASE("ensemble config bookkeeping") {
    EnsembleConfig cfg;
    cfg.modes = 50;
    cfg.gamma = 1.0;
    cfg.barrier_transparency = 0.02;
    cfg.samples = 10;
    CHECK(cfg.drain_channels() == 2500);
    CHECK(cfg.drain_channels() * cfg.barrier_exact() == doctest::Approx(50.0).epsilon(1e-14));
    cfg.barrier_transparency = 0.06;
    CHECK_THROWS_AS(cfg.validate(), DomainError);
}
