#include <cmath>
#include <complex>

#include "doctest.h"
#include "ranlase/quadrature.hpp"

using namespace ranlase;

TEST_CASE("gauss-kronrod reproduces smooth integrals") {
    CHECK(integrate_gk([](double x) { return x * x; }, 0.0, 1.0) ==
          doctest::Approx(1.0 / 3.0).epsilon(1e-13));
    CHECK(integrate_gk([](double x) { return std::exp(x); }, 0.0, 2.0) ==
          doctest::Approx(std::exp(2.0) - 1.0).epsilon(1e-13));
}

TEST_CASE("edge substitution absorbs inverse square-root singularities") {
    const double pi = 4.0 * std::atan(1.0);
    CHECK(integrate_edge_regularized([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0) ==
          doctest::Approx(2.0).epsilon(1e-12));
    CHECK(integrate_edge_regularized(
              [](double x) { return 1.0 / std::sqrt(x * (1.0 - x)); }, 0.0, 1.0) ==
          doctest::Approx(pi).epsilon(1e-12));
}

TEST_CASE("real-line rule handles lorentzians") {
    const double pi = 4.0 * std::atan(1.0);
    CHECK(integrate_real_line([](double u) { return 1.0 / (1.0 + u * u); }) ==
          doctest::Approx(pi).epsilon(1e-12));
}

TEST_CASE("complex integrands work componentwise") {
    const auto val = integrate_gk(
        [](double x) { return std::complex<double>(std::cos(x), std::sin(x)); }, 0.0, 1.0);
    CHECK(val.real() == doctest::Approx(std::sin(1.0)).epsilon(1e-13));
    CHECK(val.imag() == doctest::Approx(1.0 - std::cos(1.0)).epsilon(1e-13));
}

TEST_CASE("non-integrable singularity exhausts the budget") {
    QuadratureOptions opt;
    opt.max_intervals = 200;
    CHECK_THROWS_AS(integrate_gk([](double x) { return 1.0 / x; }, 1e-300, 1.0, opt),
                    ConvergenceError);
}
