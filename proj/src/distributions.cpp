#include "ranlase/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ranlase/special.hpp"

namespace ranlase {

namespace {

constexpr double kPi = 3.14159265358979323846;
using cplx = std::complex<double>;

// exponentiate log weights and normalize; the max shift keeps everything finite
std::vector<double> normalize_log_weights(const std::vector<double>& lw) {
    const double m = *std::max_element(lw.begin(), lw.end());
    std::vector<double> p(lw.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < lw.size(); ++i) {
        p[i] = std::exp(lw[i] - m);
        sum += p[i];
    }
    for (double& v : p) v /= sum;
    return p;
}

double geometric_tail_estimate(const std::vector<double>& p) {
    const std::size_t n = p.size();
    if (n < 3 || p[n - 1] <= 0.0 || p[n - 2] <= 0.0) return p.empty() ? 0.0 : p[n - 1];
    const double r = p[n - 1] / p[n - 2];
    if (r >= 1.0) return 1.0;  // not decaying: the truncation is unusable
    return p[n - 1] * r / (1.0 - r);
}

}  // namespace

double CountDistribution::mean() const {
    double m = 0.0;
    for (std::size_t n = 0; n < pmf.size(); ++n) m += static_cast<double>(n) * pmf[n];
    return m;
}

double CountDistribution::variance() const {
    const double m = mean();
    double v = 0.0;
    for (std::size_t n = 0; n < pmf.size(); ++n) {
        const double d = static_cast<double>(n) - m;
        v += d * d * pmf[n];
    }
    return v;
}

CountDistribution pmf_negative_binomial(double nbar, double nu, int n_max) {
    if (!(nbar > 0.0) || !(nu > 0.0) || n_max < 1)
        throw DomainError("pmf_negative_binomial: need nbar > 0, nu > 0, n_max >= 1");
    const double log_ratio = std::log(nbar / nu);
    const double log_onep = std::log1p(nbar / nu);
    const double lg_nu = std::lgamma(nu);
    CountDistribution d;
    d.family = PmfFamily::NegativeBinomial;
    d.pmf.resize(static_cast<std::size_t>(n_max) + 1);
    for (int n = 0; n <= n_max; ++n) {
        const double lw = std::lgamma(n + nu) - std::lgamma(n + 1.0) - lg_nu +
                          n * log_ratio - (n + nu) * log_onep;
        d.pmf[static_cast<std::size_t>(n)] = std::exp(lw);
    }
    d.tail_bound = geometric_tail_estimate(d.pmf);
    return d;
}

CountDistribution pmf_poisson(double nbar, int n_max) {
    if (!(nbar >= 0.0) || n_max < 0)
        throw DomainError("pmf_poisson: need nbar >= 0, n_max >= 0");
    CountDistribution d;
    d.family = PmfFamily::Poisson;
    d.pmf.resize(static_cast<std::size_t>(n_max) + 1);
    if (nbar == 0.0) {
        d.pmf[0] = 1.0;
        return d;
    }
    const double lm = std::log(nbar);
    for (int n = 0; n <= n_max; ++n)
        d.pmf[static_cast<std::size_t>(n)] = std::exp(n * lm - nbar - std::lgamma(n + 1.0));
    d.tail_bound = geometric_tail_estimate(d.pmf);
    return d;
}

CountDistribution pmf_bessel_k(double nbar, double kappa_scale, double alpha_f, int n_max) {
    if (!(alpha_f > -1.0)) throw DomainError("pmf_bessel_k: need alpha f > -1");
    if (!(nbar > 0.0) || !(kappa_scale > 0.0) || n_max < 1)
        throw DomainError("pmf_bessel_k: need nbar > 0, kappa_scale > 0, n_max >= 1");
    const double root = std::sqrt(1.0 + alpha_f);
    const double z = kappa_scale * root;
    const double log_base = std::log(nbar / root);
    std::vector<double> lw(static_cast<std::size_t>(n_max) + 1);
    for (int n = 0; n <= n_max; ++n) {
        // order n - 1/2: K_{-1/2} = K_{1/2} handles n = 0
        const int m = n >= 1 ? n - 1 : 0;
        lw[static_cast<std::size_t>(n)] =
            n * log_base - std::lgamma(n + 1.0) + log_bessel_k_half(m, z);
    }
    CountDistribution d;
    d.family = PmfFamily::BesselK;
    d.pmf = normalize_log_weights(lw);
    d.tail_bound = geometric_tail_estimate(d.pmf);
    if (d.tail_bound > 1e-8)
        throw DomainError("pmf_bessel_k: n_max too small, residual tail mass above 1e-8");
    return d;
}

namespace detail {

void fft_pow2(std::vector<cplx>& data, int sign) {
    const std::size_t n = data.size();
    if (n == 0 || (n & (n - 1)) != 0)
        throw DomainError("fft_pow2: size must be a power of two");
    // bit reversal
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(data[i], data[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = sign * 2.0 * kPi / static_cast<double>(len);
        const cplx wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            cplx w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const cplx u = data[i + k];
                const cplx v = data[i + k + len / 2] * w;
                data[i + k] = u + v;
                data[i + k + len / 2] = u - v;
                w *= wl;
            }
        }
    }
}

}  // namespace detail

CountDistribution invert_generating(const GeneratingFunction& gf, int n_max) {
    if (n_max < 1) throw DomainError("invert_generating: n_max must be >= 1");
    std::size_t M = 64;
    while (M < 4 * static_cast<std::size_t>(n_max)) M <<= 1;

    // sample exp(F) on the contour xi = e^{i theta} - 1; F(conj) = conj(F)
    // for a real counting distribution, so only half the circle is evaluated
    std::vector<cplx> vals(M);
    bool singular = false;
#pragma omp parallel for schedule(dynamic, 64)
    for (std::size_t k = 0; k <= M / 2; ++k) {
        const double th = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(M);
        const cplx xi = std::polar(1.0, th) - 1.0;
        try {
            vals[k] = std::exp(gf.eval(xi));
        } catch (const DomainError&) {
#pragma omp atomic write
            singular = true;
        }
        if (k > 0 && k < M / 2) vals[M - k] = std::conj(vals[k]);
    }
    if (singular)
        throw ThresholdError(
            "generating function singular on the inversion contour (at or above the "
            "laser threshold)");
    detail::fft_pow2(vals, -1);

    CountDistribution d;
    d.family = PmfFamily::Numeric;
    d.pmf.resize(static_cast<std::size_t>(n_max) + 1);
    for (int n = 0; n <= n_max; ++n) {
        double p = vals[static_cast<std::size_t>(n)].real() / static_cast<double>(M);
        if (p < 0.0) {
            if (p < -1e-12)
                throw ConvergenceError("invert_generating: negative probability beyond floor");
            d.clip_mass += -p;
            p = 0.0;
        }
        d.pmf[static_cast<std::size_t>(n)] = p;
    }
    d.tail_bound = geometric_tail_estimate(d.pmf);
    return d;
}

PmfMoments moments_from_pmf(const CountDistribution& d, int p_max) {
    if (p_max < 1) throw DomainError("moments_from_pmf: p_max must be >= 1");
    PmfMoments out;
    out.mean = d.mean();
    out.variance = d.variance();
    // factorial moments M_p = sum_n n (n-1) ... (n-p+1) p_n
    std::vector<double> fm(static_cast<std::size_t>(p_max) + 1, 0.0);
    fm[0] = std::accumulate(d.pmf.begin(), d.pmf.end(), 0.0);
    for (int p = 1; p <= p_max; ++p) {
        double acc = 0.0;
        for (std::size_t n = static_cast<std::size_t>(p); n < d.pmf.size(); ++n) {
            double w = 1.0;
            for (int j = 0; j < p; ++j) w *= static_cast<double>(n - static_cast<std::size_t>(j));
            acc += w * d.pmf[n];
        }
        fm[static_cast<std::size_t>(p)] = acc;
    }
    // cumulants from moments: kappa_p = M_p - sum_{j=1}^{p-1} C(p-1, j-1) kappa_j M_{p-j}
    std::vector<double> kappa(static_cast<std::size_t>(p_max) + 1, 0.0);
    for (int p = 1; p <= p_max; ++p) {
        double acc = fm[static_cast<std::size_t>(p)];
        double binom = 1.0;
        for (int j = 1; j < p; ++j) {
            // C(p-1, j-1)
            if (j > 1) binom = binom * (p - j + 1) / (j - 1);
            acc -= binom * kappa[static_cast<std::size_t>(j)] *
                   fm[static_cast<std::size_t>(p - j)];
        }
        kappa[static_cast<std::size_t>(p)] = acc;
    }
    out.factorial_cumulants.assign(kappa.begin() + 1, kappa.end());
    return out;
}

int suggest_n_max(double mean, double variance, double tail_target) {
    if (!(mean >= 0.0) || !(variance >= 0.0))
        throw DomainError("suggest_n_max: moments must be nonnegative");
    const double digits = -std::log(std::max(tail_target, 1e-305));
    const double sd = std::sqrt(std::max(variance, 1.0));
    // heavy super-Poissonian tails decay exponentially with scale ~ var/mean
    const double scale = mean > 0.0 ? std::max(variance / mean, 1.0) : 1.0;
    const double n = mean + 3.0 * sd + 1.2 * digits * scale + 16.0;
    return static_cast<int>(std::ceil(n));
}

int suggest_n_max_for(const GeneratingFunction& gf, double mean, double variance,
                      double tail_target) {
    const int base = suggest_n_max(mean, variance, tail_target);
    if (!(gf.domain_radius > 0.0) || std::isinf(gf.domain_radius)) return base;
    // probability generating function is singular at z = 1 + radius, so the
    // geometric tail decays at rate ln(1 + radius)
    const double rate = std::log1p(gf.domain_radius);
    const double digits = -std::log(std::max(tail_target, 1e-305));
    const double sd = std::sqrt(std::max(variance, 1.0));
    const double n = mean + 3.0 * sd + 1.2 * digits / rate + 16.0;
    return std::max(base, static_cast<int>(std::ceil(n)));
}

double total_variation(const CountDistribution& a, const CountDistribution& b) {
    const std::size_t n = std::max(a.pmf.size(), b.pmf.size());
    double tv = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double pa = i < a.pmf.size() ? a.pmf[i] : 0.0;
        const double pb = i < b.pmf.size() ? b.pmf[i] : 0.0;
        tv += std::abs(pa - pb);
    }
    return 0.5 * tv;
}

}  // namespace ranlase
