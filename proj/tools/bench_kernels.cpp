// Timing comparison of the serial reference kernels against their OpenMP
// counterparts: the projector-angle grid, the POVM restart search, and
// the full sweep. On a single hardware thread the two columns should tie;
// the point is that they stay numerically identical either way.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>

#include <omp.h>

#include "qcorr/correlations.hpp"
#include "qcorr/families.hpp"
#include "qcorr/sweep.hpp"

namespace {

using clock_type = std::chrono::steady_clock;

template <typename F>
double best_of(int reps, F&& fn) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        auto t0 = clock_type::now();
        fn();
        auto t1 = clock_type::now();
        best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
    return best;
}

void report(const char* name, double serial_ms, double parallel_ms, double max_delta) {
    std::printf("%-28s %10.1f ms %10.1f ms   x%-5.2f  max|delta| %.1e\n", name, serial_ms,
                parallel_ms, serial_ms / parallel_ms, max_delta);
}

}  // namespace

int main() {
    std::printf("threads available: %d\n\n", omp_get_max_threads());
    std::printf("%-28s %13s %13s   %-6s %s\n", "kernel", "serial", "parallel", "speedup",
                "agreement");

    {
        qcorr::DensityMatrix rho = qcorr::werner_state({0.6});
        qcorr::ChiOptions fine;
        fine.grid_step = M_PI / 720.0;  // 0.25 degree: enough work to time
        double vs = 0.0, vp = 0.0;
        double serial_ms = best_of(3, [&] { vs = qcorr::chi_projective_serial(rho, fine); });
        double parallel_ms = best_of(3, [&] { vp = qcorr::chi_projective(rho, fine); });
        report("chi projector grid", serial_ms, parallel_ms, std::abs(vs - vp));
    }

    {
        qcorr::DensityMatrix rho = qcorr::werner_state({0.7});
        qcorr::PovmOptions opts;
        opts.trials = 64;
        double vs = 0.0, vp = 0.0;
        qcorr::PovmOptions serial = opts;
        serial.parallel = false;
        double serial_ms = best_of(2, [&] { vs = qcorr::chi_povm_search(rho, serial); });
        double parallel_ms = best_of(2, [&] { vp = qcorr::chi_povm_search(rho, opts); });
        report("povm restart search", serial_ms, parallel_ms, std::abs(vs - vp));
    }

    {
        qcorr::SweepConfig cfg;
        cfg.gamma_step = 0.05;
        cfg.tol = 1e-5;
        std::string cs, cp;
        double serial_ms =
            best_of(1, [&] { cs = qcorr::sweep_csv(qcorr::run_sweep_serial(cfg)); });
        double parallel_ms = best_of(1, [&] { cp = qcorr::sweep_csv(qcorr::run_sweep(cfg)); });
        report("werner sweep (21 rows)", serial_ms, parallel_ms, cs == cp ? 0.0 : 1.0);
        std::printf("\nsweep CSV byte-identical: %s\n", cs == cp ? "yes" : "NO");
    }
    return 0;
}
