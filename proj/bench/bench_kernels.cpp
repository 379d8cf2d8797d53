// Wall-time comparison of the serial reference kernels against the
// OpenMP-parallel ones.  The outputs are bitwise-identical by construction;
// this target only measures the speedup.

#include <chrono>
#include <cstdio>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "pseudoboson/bicoherent.hpp"
#include "pseudoboson/dho.hpp"
#include "pseudoboson/gll.hpp"

using namespace pseudoboson;

namespace {

template <class F>
double best_ms(F&& fn, int reps = 3) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        fn();
        const double ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                .count();
        if (ms < best) best = ms;
    }
    return best;
}

void row(const std::string& name, double serial_ms, double parallel_ms) {
    std::printf("%-34s %10.1f ms %10.1f ms %8.2fx\n", name.c_str(), serial_ms, parallel_ms,
                serial_ms / parallel_ms);
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP; both columns run serially\n");
#endif
    std::printf("%-34s %13s %13s %9s\n", "kernel", "serial", "parallel", "speedup");

    const GLLParams p = GLLParams::standard(0.2, -0.3);

    {
        const double s = best_ms([&] { generate_family(p, 10, 10, Exec::serial); });
        const double q = best_ms([&] { generate_family(p, 10, 10, Exec::parallel); });
        row("family ladder 11x11", s, q);
    }
    {
        const FamilyTable t = generate_family(p, 8, 8);
        const double s = best_ms([&] { biorthogonality_matrix(t, Exec::serial); });
        const double q = best_ms([&] { biorthogonality_matrix(t, Exec::parallel); });
        row("gram matrix 81x81", s, q);
    }
    {
        const auto grid = QuadratureGrid4D::gauss_hermite(16, 1.0);
        const auto [phi00, psi00] = vacuum_pair(p);
        const PolyGauss f = mul_x(phi00);
        const double s = best_ms([&] { roi_pairing(p, phi00, f, grid, Exec::serial); });
        const double q = best_ms([&] { roi_pairing(p, phi00, f, grid, Exec::parallel); });
        row("roi quadrature 16^4 nodes", s, q);
    }
    {
        const double s = best_ms([&] { run_dho_sweep(500, 7, Exec::serial); });
        const double q = best_ms([&] { run_dho_sweep(500, 7, Exec::parallel); });
        row("dho sweep 500 cases", s, q);
    }
    return 0;
}
