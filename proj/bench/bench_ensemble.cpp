// Benchmark: OpenMP-parallel Monte Carlo sampling against the serial
// reference path, verifying that both produce bitwise-identical strengths.

#include <omp.h>

#include <chrono>
#include <cstdlib>
#include <iostream>

#include "ranlase/rmt.hpp"

using namespace ranlase;

namespace {

double run_timed(const char* label, const EnsembleConfig& cfg, const Execution& exec,
                 StrengthEnsemble& out) {
    const auto t0 = std::chrono::steady_clock::now();
    out = run_cavity_ensemble(cfg, exec, true);
    const auto t1 = std::chrono::steady_clock::now();
    const double sec = std::chrono::duration<double>(t1 - t0).count();
    std::cout << label << ": " << sec << " s (" << cfg.samples << " samples)\n";
    return sec;
}

double run_timed_wg(const char* label, const WaveguideConfig& cfg, const Execution& exec,
                    StrengthEnsemble& out) {
    const auto t0 = std::chrono::steady_clock::now();
    out = run_waveguide_fixed(cfg, false, exec);
    const auto t1 = std::chrono::steady_clock::now();
    const double sec = std::chrono::duration<double>(t1 - t0).count();
    std::cout << label << ": " << sec << " s (" << cfg.samples << " samples)\n";
    return sec;
}

bool identical(const StrengthEnsemble& a, const StrengthEnsemble& b) {
    if (a.strengths.size() != b.strengths.size()) return false;
    for (std::size_t i = 0; i < a.strengths.size(); ++i)
        for (std::size_t j = 0; j < a.strengths[i].size(); ++j)
            if (a.strengths[i][j] != b.strengths[i][j]) return false;
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    if (const char* env = std::getenv("RANLASE_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) omp_set_num_threads(n);
    }
    int samples = argc > 1 ? std::atoi(argv[1]) : 200;

    EnsembleConfig cavity;
    cavity.modes = 24;
    cavity.gamma = 1.0;
    cavity.barrier_transparency = 0.05;
    cavity.samples = samples;
    cavity.seed = 42;

    std::cout << "cavity ensemble, N = " << cavity.modes
              << ", N' = " << cavity.drain_channels() << "\n";
    StrengthEnsemble serial_out, parallel_out;
    const double ts = run_timed("  serial reference", cavity, Execution{false, 1}, serial_out);
    const double tp = run_timed("  openmp", cavity, Execution{true, 0}, parallel_out);
    std::cout << "  speedup: " << ts / tp << "x, bitwise identical: "
              << (identical(serial_out, parallel_out) ? "yes" : "NO") << "\n";

    WaveguideConfig guide;
    guide.modes = 16;
    guide.gamma = 1.0;
    guide.length_ratio = 8.0;
    guide.samples = samples;
    guide.seed = 42;

    std::cout << "waveguide ensemble, N = " << guide.modes << ", L/l = " << guide.length_ratio
              << "\n";
    const double ws = run_timed_wg("  serial reference", guide, Execution{false, 1}, serial_out);
    const double wp = run_timed_wg("  openmp", guide, Execution{true, 0}, parallel_out);
    std::cout << "  speedup: " << ws / wp << "x, bitwise identical: "
              << (identical(serial_out, parallel_out) ? "yes" : "NO") << "\n";
    return 0;
}
