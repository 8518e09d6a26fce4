#pragma once

#include <complex>
#include <vector>

#include "ranlase/photostat.hpp"

namespace ranlase {

enum class PmfFamily { NegativeBinomial, Poisson, BesselK, Numeric };

struct CountDistribution {
    std::vector<double> pmf;   // p_0 .. p_{n_max}
    double tail_bound = 0.0;   // declared bound on the truncated mass
    double clip_mass = 0.0;    // total negative mass clipped to zero
    PmfFamily family = PmfFamily::Numeric;

    int n_max() const { return static_cast<int>(pmf.size()) - 1; }
    double mean() const;
    double variance() const;
};

/// p_n = Gamma(n+nu)/(n! Gamma(nu)) (nbar/nu)^n / (1+nbar/nu)^{n+nu},
/// computed in log space.
CountDistribution pmf_negative_binomial(double nbar, double nu, int n_max);

CountDistribution pmf_poisson(double nbar, int n_max);

/// Glauber's distribution: p_n propto (1/n!) (nbar/sqrt(1+af))^n
/// K_{n-1/2}(kappa_scale sqrt(1+af)), normalized numerically. kappa_scale is
/// t Omega_c / 2 for the broad-band single-mode form or nu_eff for the
/// weak-absorption waveguide form.
CountDistribution pmf_bessel_k(double nbar, double kappa_scale, double alpha_f, int n_max);

/// Contour inversion of exp(F) on the unit circle: p_n = (1/M) sum_k
/// e^{F(e^{i th_k} - 1)} e^{-i n th_k} with M the next power of two >= 4 n_max.
CountDistribution invert_generating(const GeneratingFunction& gf, int n_max);

struct PmfMoments {
    double mean = 0.0;
    double variance = 0.0;
    std::vector<double> factorial_cumulants;  // kappa_1..kappa_P
};

PmfMoments moments_from_pmf(const CountDistribution& d, int p_max);

/// n_max such that a distribution with the given first two moments keeps its
/// tail below tail_target (Gaussian-plus-exponential-tail heuristic).
int suggest_n_max(double mean, double variance, double tail_target = 1e-12);

/// Like suggest_n_max but also respects the generating function's domain
/// radius: near-threshold media develop tails on the scale 1/ln(1+radius)
/// that the variance alone underestimates.
int suggest_n_max_for(const GeneratingFunction& gf, double mean, double variance,
                      double tail_target = 1e-12);

double total_variation(const CountDistribution& a, const CountDistribution& b);

namespace detail {
/// In-place radix-2 FFT (size must be a power of two); sign = -1 forward.
void fft_pow2(std::vector<std::complex<double>>& data, int sign);
}  // namespace detail

}  // namespace ranlase
