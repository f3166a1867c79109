#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "uaa/wavefunction.hpp"
#include "uaa/oracle.hpp"
#include "uaa/errors.hpp"

#include <cmath>

using namespace uaa;

namespace {

constexpr double PI = 3.14159265358979323846;

Potential pure_oscillator() {
    return Potential::make(PotentialKind::pure_oscillator_1d, PhysicalParams{});
}

Potential pt_well(double v0) {
    PhysicalParams p;
    p.v0 = v0;
    return Potential::make(PotentialKind::poschl_teller_well, p);
}

Potential pt_barrier(double v0) {
    PhysicalParams p;
    p.v0 = v0;
    return Potential::make(PotentialKind::poschl_teller_barrier, p);
}

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) g[i] = a + (b - a) * i / (n - 1);
    return g;
}

int count_nodes(const std::vector<WaveSample>& w) {
    int nodes = 0;
    for (size_t i = 1; i < w.size(); ++i)
        if (w[i].psi * w[i - 1].psi < 0.0) ++nodes;
    return nodes;
}

} // namespace

TEST_CASE("psi_single_tp: finite at the turning point, zero for zero data") {
    // single classical turning point: the WKB splitting of hydrogen l=0
    PhysicalParams p;
    const auto pot = Potential::make(PotentialKind::hydrogen, p);
    const auto s = build_splitting_wkb(pot, -0.5);
    const auto tps = find_turning_points(s);
    REQUIRE(tps.kind == TurningPointKind::single_real);
    BoundaryCondition bc;
    bc.kind = BoundaryKind::decay_at_plus_infinity;
    const auto w = psi_single_tp(s, tps.x0, bc,
                                 {1.0, tps.x0 - 1e-7, tps.x0, tps.x0 + 1e-7, 3.0});
    for (const auto& ws : w) {
        CAPTURE(ws.x);
        CHECK(std::isfinite(ws.psi));
    }
    CHECK(std::abs(w[1].psi - w[3].psi) < 0.05 * std::abs(w[2].psi));

    BoundaryCondition zero;
    zero.kind = BoundaryKind::coefficients;
    zero.a = 0.0;
    zero.b = 0.0;
    for (const auto& ws : psi_single_tp(s, tps.x0, zero, linspace(0.5, 3.0, 11)))
        CHECK(ws.psi == 0.0);
}

TEST_CASE("psi_single_tp matches the WKB forms away from the turning point") {
    const auto pot = pure_oscillator();
    const double E = 24.5;
    const auto s = build_splitting(pot, E);
    const auto tps = find_turning_points(s);
    // treat the right turning point as a single one; decay to the right
    const double x0 = tps.x2;
    BoundaryCondition bc;
    const auto grid = linspace(0.0, x0 + 3.0, 400);
    const auto w = psi_single_tp(s, x0, bc, grid);
    int checked_forb = 0, checked_alw = 0;
    for (const auto& ws : w) {
        if (wkb_condition_q(s, ws.x) >= 1e-3) continue;
        const double g = s.g(ws.x);
        const double phi = std::abs(phase_between(s, x0, ws.x));
        if (ws.map > 5.0) {
            // forbidden side: psi ~ e^{-phi}/(2 sqrt(pi) |g|^{1/4})
            const double wkb =
                std::exp(-phi + ws.log_scale * 0.0) / // compare in scaled units
                (2.0 * std::sqrt(PI) * std::pow(std::abs(g), 0.25));
            const double mine = ws.psi * std::exp(ws.log_scale + phi) *
                                std::exp(-phi); // = psi*e^{ls}
            const double ratio = (ws.psi * std::exp(ws.log_scale)) / wkb;
            CHECK(std::abs(ratio - 1.0) < 0.01);
            ++checked_forb;
            (void)wkb;
            (void)mine;
        } else if (ws.map < -3.0) {
            // allowed side: psi ~ cos(phi - pi/4)/(sqrt(pi)|g|^{1/4})
            const double wkb = std::cos(phi - 0.25 * PI) /
                               (std::sqrt(PI) * std::pow(std::abs(g), 0.25));
            const double env = 1.0 / (std::sqrt(PI) * std::pow(std::abs(g), 0.25));
            CHECK(std::abs(ws.psi * std::exp(ws.log_scale) - wkb) < 0.02 * env);
            ++checked_alw;
        }
    }
    CHECK(checked_forb > 5);
    CHECK(checked_alw > 50);
}

TEST_CASE("psi_single_tp zero crossings sit at the WKB phase to 1e-2 rad") {
    const auto pot = pure_oscillator();
    const double E = 24.5;
    const auto s = build_splitting(pot, E);
    const auto tps = find_turning_points(s);
    BoundaryCondition bc;
    const auto grid = linspace(0.0, tps.x2 - 0.4, 2200);
    const auto w = psi_single_tp(s, tps.x2, bc, grid);
    int checked = 0;
    for (size_t i = 1; i < w.size(); ++i) {
        if (!(w[i - 1].psi * w[i].psi < 0.0)) continue;
        if (wkb_condition_q(s, w[i].x) >= 1e-3) continue;
        // interpolated zero of the uniform solution
        const double x0 = w[i - 1].x + (w[i].x - w[i - 1].x) * w[i - 1].psi /
                                           (w[i - 1].psi - w[i].psi);
        // WKB zeros satisfy phi(x) - pi/4 = pi/2 + m pi
        const double phi = std::abs(phase_between(s, tps.x2, x0));
        const double frac = std::fmod(phi - 0.25 * PI - 0.5 * PI, PI);
        const double dev = std::min(std::abs(frac), PI - std::abs(frac));
        CAPTURE(x0);
        CHECK(dev <= 1e-2);
        ++checked;
    }
    CHECK(checked >= 8);
}

TEST_CASE("psi_well: node counts equal n") {
    const auto po = pure_oscillator();
    for (int n = 0; n <= 5; ++n) {
        CAPTURE(n);
        const double En = exact_spectrum(po, n);
        const auto s = build_splitting(po, En);
        const auto tps = find_turning_points(s);
        const auto w = psi_well(s, tps, n, linspace(-8.0, 8.0, 1200));
        CHECK(count_nodes(w) == n);
    }
    const auto pt = pt_well(-10.0);
    for (int n = 0; n <= 3; ++n) {
        CAPTURE(n);
        const double En = exact_spectrum(pt, n);
        const auto s = build_splitting(pt, En);
        const auto tps = find_turning_points(s);
        const auto w = psi_well(s, tps, n, linspace(-9.0, 9.0, 1500));
        CHECK(count_nodes(w) == n);
    }
}

TEST_CASE("psi_well: finite at both turning points, off-shell rejected") {
    const auto pt = pt_well(-10.0);
    const double E0 = exact_spectrum(pt, 0);
    const auto s = build_splitting(pt, E0);
    const auto tps = find_turning_points(s);
    const auto w =
        psi_well(s, tps, 0, {tps.x1, tps.x2, tps.x1 + 1e-7, tps.x2 - 1e-7});
    for (const auto& ws : w) CHECK(std::isfinite(ws.psi));

    const auto bad = build_splitting(pt, E0 + 1e-3);
    const auto tb = find_turning_points(bad);
    CHECK_THROWS_AS(psi_well(bad, tb, 0, linspace(-3, 3, 7)), OffShellError);
}

TEST_CASE("psi_well ground state matches the shooting oracle pointwise") {
    const auto po = pure_oscillator();
    const double E0 = exact_spectrum(po, 0);
    const auto s = build_splitting(po, E0);
    const auto tps = find_turning_points(s);
    const auto grid = linspace(-5.0, 5.0, 251);
    const auto w = psi_well(s, tps, 0, grid);
    OracleConfig cfg;
    cfg.extent = 12.0;
    cfg.step = 1e-3;
    const auto ref = numerov_eigenfunction(po, 0, cfg, grid);
    double peak = 0.0;
    for (const auto& r : ref) peak = std::max(peak, std::abs(r.psi));
    for (size_t i = 0; i < grid.size(); ++i) {
        CAPTURE(grid[i]);
        const double mine = w[i].psi * std::exp(w[i].log_scale);
        const double theirs = std::abs(ref[i].psi) * (mine < 0 ? -1.0 : 1.0);
        CHECK(std::abs(std::abs(mine) - std::abs(ref[i].psi)) <= 0.02 * peak);
        (void)theirs;
    }
}

TEST_CASE("psi_barrier: flux ratio reproduces the transmission coefficient") {
    const auto pot = pt_barrier(2.5);
    BoundaryCondition bc;
    bc.kind = BoundaryKind::incident_from_left;
    const auto grid = linspace(-6.0, 6.0, 101);
    for (double E : {0.4, 0.9, 1.5, 2.0, 2.3, 2.375, 2.5, 3.0, 4.5, 7.0}) {
        CAPTURE(E);
        const auto s = build_splitting(pot, E);
        const auto tps = find_turning_points(s);
        const auto bw = psi_barrier(s, tps, bc, grid);
        const double t_ref = transmission_improved(pot, E);
        CHECK(std::abs(bw.transmission - t_ref) <= 1e-6);
        for (const auto& ws : bw.samples) CHECK(std::isfinite(ws.psi));
    }
}

TEST_CASE("psi_barrier: top of the barrier transmits one half") {
    const auto pot = pt_barrier(2.5);
    BoundaryCondition bc;
    bc.kind = BoundaryKind::incident_from_left;
    const double etop = 19.0 / 8.0;
    const auto s = build_splitting(pot, etop);
    const auto tps = find_turning_points(s);
    const auto bw = psi_barrier(s, tps, bc, linspace(-4, 4, 41));
    CHECK(std::abs(bw.transmission - 0.5) <= 1e-6);
}

TEST_CASE("psi_barrier: far above the barrier the amplitude flattens") {
    const auto pot = pt_barrier(2.5);
    BoundaryCondition bc;
    bc.kind = BoundaryKind::incident_from_left;
    const double E = 40.0; // T close to 1: no standing-wave beating
    const auto s = build_splitting(pot, E);
    const auto tps = find_turning_points(s);
    const auto grid = linspace(-14.0, -6.0, 160);
    const auto bw = psi_barrier(s, tps, bc, grid);
    double lo = 1e300, hi = 0.0;
    for (const auto& ws : bw.samples) {
        lo = std::min(lo, ws.psi * std::exp(ws.log_scale));
        hi = std::max(hi, ws.psi * std::exp(ws.log_scale));
    }
    CHECK((hi - lo) / hi < 0.05);
}

TEST_CASE("psi_barrier: wrong boundary kind rejected") {
    const auto pot = pt_barrier(2.5);
    const auto s = build_splitting(pot, 1.0);
    const auto tps = find_turning_points(s);
    BoundaryCondition bc;
    bc.kind = BoundaryKind::decay_at_plus_infinity;
    CHECK_THROWS_AS(psi_barrier(s, tps, bc, {0.0}), BoundaryError);
}

TEST_CASE("no sample is NaN near turning points") {
    const auto pt = pt_well(-10.0);
    const double E1 = exact_spectrum(pt, 1);
    const auto s = build_splitting(pt, E1);
    const auto tps = find_turning_points(s);
    std::vector<double> grid;
    for (double d : {-1e-6, -1e-8, 0.0, 1e-8, 1e-6})
        for (double t : {tps.x1, tps.x2}) grid.push_back(t + d);
    const auto w = psi_well(s, tps, 1, grid);
    for (const auto& ws : w) {
        CAPTURE(ws.x);
        CHECK(std::isfinite(ws.psi * std::exp(ws.log_scale)));
    }
}
