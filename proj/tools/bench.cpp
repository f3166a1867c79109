// Timing comparison of the serial reference kernels against their
// OpenMP-parallel counterparts.

#include "uaa/sweep.hpp"

#include <cstdio>
#include <string>
#include <vector>

#ifdef UAA_HAVE_OPENMP
#include <omp.h>
static double now() { return omp_get_wtime(); }
static int threads() { return omp_get_max_threads(); }
#else
#include <chrono>
static double now() {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}
static int threads() { return 1; }
#endif

using namespace uaa;

namespace {

struct Row {
    std::string name;
    double t_serial;
    double t_parallel;
};

void print_rows(const std::vector<Row>& rows) {
    std::printf("%-34s %12s %12s %9s\n", "kernel", "serial [s]", "parallel [s]",
                "speedup");
    for (const auto& r : rows)
        std::printf("%-34s %12.4f %12.4f %8.2fx\n", r.name.c_str(), r.t_serial,
                    r.t_parallel, r.t_serial / r.t_parallel);
}

} // namespace

int main(int argc, char** argv) {
    const bool quick = (argc > 1 && std::string(argv[1]) == "--quick");
    std::printf("threads: %d\n\n", threads());

    PhysicalParams pb;
    pb.v0 = 2.5;
    const auto barrier = Potential::make(PotentialKind::poschl_teller_barrier, pb);
    PhysicalParams ph;
    ph.l = 1;
    const auto hyd = Potential::make(PotentialKind::hydrogen, ph);

    std::vector<Row> rows;

    {
        const int n = quick ? 64 : 400;
        std::vector<double> energies(n);
        for (int i = 0; i < n; ++i) energies[i] = 0.05 + 6.95 * i / (n - 1.0);
        const double t0 = now();
        auto a = transmission_curve_serial(barrier, energies,
                                           TransmitMethod::improved);
        const double t1 = now();
        auto b = transmission_curve(barrier, energies, TransmitMethod::improved);
        const double t2 = now();
        rows.push_back({"transmission improved (" + std::to_string(n) + " E)",
                        t1 - t0, t2 - t1});
        (void)a;
        (void)b;
    }
    {
        const int n = quick ? 16 : 60;
        std::vector<double> energies(n);
        for (int i = 0; i < n; ++i) energies[i] = 0.2 + 4.0 * i / (n - 1.0);
        const double t0 = now();
        auto a = transmission_curve_serial(barrier, energies,
                                           TransmitMethod::exact_numeric);
        const double t1 = now();
        auto b =
            transmission_curve(barrier, energies, TransmitMethod::exact_numeric);
        const double t2 = now();
        rows.push_back({"transmission exact-numeric (" + std::to_string(n) + " E)",
                        t1 - t0, t2 - t1});
        (void)a;
        (void)b;
    }
    {
        const int lo = 0, hi = quick ? 5 : 11;
        const double t0 = now();
        auto a = spectrum_sweep_serial(hyd, lo, hi, Method::improved);
        const double t1 = now();
        auto b = spectrum_sweep(hyd, lo, hi, Method::improved);
        const double t2 = now();
        rows.push_back({"spectrum improved (n=0.." + std::to_string(hi) + ")",
                        t1 - t0, t2 - t1});
        (void)a;
        (void)b;
    }
    {
        PhysicalParams p2;
        p2.l = 2;
        const auto pot = Potential::make(PotentialKind::hydrogen, p2);
        const auto s = build_splitting(pot, exact_spectrum(pot, 0));
        const auto tps = find_turning_points(s);
        const int n = quick ? 24 : 120;
        std::vector<double> xs(n);
        for (int i = 0; i < n; ++i) xs[i] = 0.2 + 3.4 * i / (n - 1.0);
        const double t0 = now();
        auto a = error_control_sweep_serial(s, tps, xs);
        const double t1 = now();
        auto b = error_control_sweep(s, tps, xs);
        const double t2 = now();
        rows.push_back({"error control (" + std::to_string(n) + " x)", t1 - t0,
                        t2 - t1});
        (void)a;
        (void)b;
    }

    print_rows(rows);
    return 0;
}
