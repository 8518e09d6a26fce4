#include <cmath>
#include <limits>

#include "doctest.h"
#include "ranlase/medium.hpp"

using namespace ranlase;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

TEST_CASE("bose-einstein basics") {
    CHECK(bose_einstein(std::log(2.0)) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(bose_einstein(50.0) < 1e-21);
    CHECK_THROWS_AS(bose_einstein(0.0), DomainError);
    CHECK_THROWS_AS(bose_einstein(std::numeric_limits<double>::quiet_NaN()), DomainError);
}

TEST_CASE("negative-temperature reflection identity") {
    for (double x : {0.1, 1.0, 5.0})
        CHECK(std::abs(bose_einstein(x) + bose_einstein(-x) + 1.0) < 1e-14);
}

TEST_CASE("bose-einstein strictly decreasing on the positive axis") {
    double prev = bose_einstein(1e-4);
    for (int i = 1; i <= 60; ++i) {
        const double x = 1e-4 * std::pow(10.0, 6.0 * i / 60.0);
        const double f = bose_einstein(x);
        CHECK(f < prev);
        prev = f;
    }
}

TEST_CASE("effective occupation by response") {
    const MediumSpec abs = MediumSpec::cavity(Response::Absorbing, 0.5, 4);
    const MediumSpec amp = MediumSpec::cavity(Response::Amplifying, 0.5, 4);
    CHECK(effective_occupation(abs, std::log(2.0)) == doctest::Approx(1.0));
    CHECK(effective_occupation(amp, std::log(2.0)) == doctest::Approx(-2.0));
    CHECK(effective_occupation(amp, kInf) == -1.0);
    for (double x : {0.05, 0.7, 3.0, 20.0}) {
        CHECK(effective_occupation(amp, x) <= -1.0);
        CHECK(effective_occupation(abs, x) > 0.0);
    }
    CHECK_THROWS_AS(effective_occupation(abs, -1.0), DomainError);
}

TEST_CASE("rate conversions") {
    CHECK(gamma_waveguide(3.0, 16.0) == doctest::Approx(1.0));
    CHECK(gamma_waveguide(2.0, 2.0) == doctest::Approx(16.0 / 3.0));
    CHECK(gamma_waveguide(1.0, 1e12) == doctest::Approx(0.0).epsilon(1e-11));
    CHECK_THROWS_AS(gamma_waveguide(0.0, 1.0), DomainError);

    CHECK(dwell_time(6, 1.0) == doctest::Approx(2.0 * 3.14159265358979323846 / 6.0));
    CHECK(gamma_cavity(2.5, 2.5) == doctest::Approx(1.0));
    // doubling the mode count at fixed spacing halves gamma
    CHECK(gamma_cavity(dwell_time(12, 1.0), 3.0) ==
          doctest::Approx(0.5 * gamma_cavity(dwell_time(6, 1.0), 3.0)));
}

TEST_CASE("critical rate of the finite waveguide") {
    const double pi = 3.14159265358979323846;
    CHECK(gamma_critical(4.0 * pi / 3.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(gamma_critical(40.0 * pi / 3.0) == doctest::Approx(0.01).epsilon(1e-14));
    CHECK(gamma_critical(1e9) < 2e-17);
    CHECK_THROWS_AS(gamma_critical(0.5), DomainError);
    const double c = 16.0 * pi * pi / 9.0;
    for (double ratio : {1.0, 3.0, 17.0, 400.0})
        CHECK(gamma_critical(ratio) * ratio * ratio == doctest::Approx(c).epsilon(1e-13));
}

TEST_CASE("thouless number per geometry") {
    CHECK(thouless_number(MediumSpec::cavity(Response::Absorbing, 2.0, 50)) == 50.0);
    CHECK(thouless_number(MediumSpec::waveguide_finite(Response::Absorbing, 0.01, 100, 20.0)) ==
          doctest::Approx(5.0));
    CHECK(thouless_number(MediumSpec::waveguide_finite(Response::Absorbing, 0.01, 64, 1.0)) ==
          doctest::Approx(64.0));
    CHECK(thouless_number(MediumSpec::waveguide_semi_infinite(Response::Absorbing, 1.0, 8)) ==
          0.0);
}

TEST_CASE("threshold validation") {
    CHECK_THROWS_AS(MediumSpec::cavity(Response::Amplifying, 1.0, 4), ThresholdError);
    CHECK_NOTHROW(MediumSpec::cavity(Response::Amplifying, 0.999, 4));
    // gamma_c = (4 pi / 60)^2 = 0.0438649...
    CHECK_THROWS_AS(MediumSpec::waveguide_finite(Response::Amplifying, 0.044, 10, 20.0),
                    ThresholdError);
    CHECK_NOTHROW(MediumSpec::waveguide_finite(Response::Amplifying, 0.043, 10, 20.0));
    CHECK_THROWS_AS(MediumSpec::cavity(Response::Absorbing, -0.1, 4), DomainError);
    CHECK_THROWS_AS(MediumSpec::cavity(Response::Absorbing, 1.0, 0), DomainError);
}

TEST_CASE("detection config validation and degrees of freedom") {
    DetectionConfig cfg;
    cfg.efficiency = 0.8;
    cfg.count_time = 2.0;
    cfg.band = NarrowBand{6.0};
    cfg.occupation = -1.0;  // complete inversion is allowed
    CHECK_NOTHROW(cfg.validate());
    cfg.occupation = -1.5;
    CHECK_THROWS_AS(cfg.validate(), DomainError);
    cfg.occupation = 0.0;
    CHECK_THROWS_AS(cfg.validate(), DomainError);
    cfg.occupation = 0.5;
    cfg.efficiency = 1.5;
    CHECK_THROWS_AS(cfg.validate(), DomainError);

    cfg.efficiency = 1.0;
    const double pi = 3.14159265358979323846;
    CHECK(cfg.nu(3) == doctest::Approx(3 * 2.0 * 6.0 / (2.0 * pi)));
    cfg.band = StepBand{4.0};
    CHECK(cfg.nu(3) == doctest::Approx(3 * 2.0 * 4.0 / (2.0 * pi)));
    cfg.band = BroadLorentzian{5.0, 0.3};
    CHECK(cfg.nu(3) == doctest::Approx(3 * 2.0 * 5.0));

    cfg.band = NarrowBand{1.0};
    CHECK_THROWS_AS(cfg.require_long_time(), DomainError);  // domega t = 2 < 10
    cfg.band = NarrowBand{50.0};
    CHECK_NOTHROW(cfg.require_long_time());
    CHECK_THROWS_AS(cfg.require_short_time(1.0), DomainError);  // omega_c t = 2 > 0.1
    CHECK_NOTHROW(cfg.require_short_time(0.01));
}
