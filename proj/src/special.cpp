#include "ranlase/special.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ranlase/errors.hpp"

namespace ranlase {

double log_sum_exp(std::span<const double> logs) {
    double m = -std::numeric_limits<double>::infinity();
    for (double v : logs) m = std::max(m, v);
    if (!std::isfinite(m)) return m;
    double s = 0.0;
    for (double v : logs) s += std::exp(v - m);
    return m + std::log(s);
}

double log_bessel_k_half(int m, double z) {
    if (m < 0) m = -m - 1;  // K_{-nu} = K_{nu}, half-integer orders mirror at -1/2
    if (z <= 0.0) throw DomainError("log_bessel_k_half: z must be positive");
    const double pi = 3.14159265358979323846;
    const double prefix = 0.5 * std::log(pi / (2.0 * z)) - z;
    // sum of positive terms t_k = (m+k)! / (k! (m-k)! (2z)^k), k = 0..m
    // t_0 = 1, t_{k+1}/t_k = (m+k+1)(m-k) / ((k+1) 2z)
    double log_t = 0.0;
    double log_max = 0.0;
    std::vector<double> lt(static_cast<std::size_t>(m) + 1);
    lt[0] = 0.0;
    for (int k = 0; k < m; ++k) {
        log_t += std::log((static_cast<double>(m + k + 1) * (m - k)) /
                          ((k + 1) * 2.0 * z));
        lt[static_cast<std::size_t>(k) + 1] = log_t;
        log_max = std::max(log_max, log_t);
    }
    double s = 0.0;
    for (double v : lt) s += std::exp(v - log_max);
    return prefix + log_max + std::log(s);
}

namespace {

// Lower regularized incomplete gamma by series, upper by continued fraction
// (Lentz). Standard split at x < a + 1.
double gamma_p_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int n = 0; n < 500; ++n) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::abs(del) < std::abs(sum) * 1e-16)
            return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
    }
    throw ConvergenceError("incomplete gamma series did not converge");
}

double gamma_q_contfrac(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 500; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16)
            return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
    }
    throw ConvergenceError("incomplete gamma continued fraction did not converge");
}

}  // namespace

double regularized_gamma_q(double a, double x) {
    if (a <= 0.0 || x < 0.0) throw DomainError("regularized_gamma_q: bad arguments");
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
    return gamma_q_contfrac(a, x);
}

double chi_square_p_value(double statistic, int dof) {
    if (dof <= 0) throw DomainError("chi_square_p_value: dof must be positive");
    if (statistic <= 0.0) return 1.0;
    return regularized_gamma_q(0.5 * dof, 0.5 * statistic);
}

}  // namespace ranlase
