#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "uaa/potentials.hpp"
#include "uaa/errors.hpp"

#include <cmath>
#include <random>

using namespace uaa;

namespace {

PhysicalParams params_hydrogen(int l) {
    PhysicalParams p;
    p.e = 1.0;
    p.l = l;
    return p;
}

PhysicalParams params_pt(double v0) {
    PhysicalParams p;
    p.v0 = v0;
    p.alpha = 1.0;
    return p;
}

PhysicalParams params_morse(double v0, double v1) {
    PhysicalParams p;
    p.v0 = v0;
    p.v1 = v1;
    p.alpha = 1.0;
    return p;
}

PhysicalParams params_eckart(double v0, double v1) {
    PhysicalParams p;
    p.v0 = v0;
    p.v1 = v1;
    p.alpha = 1.0;
    return p;
}

} // namespace

TEST_CASE("catalog potential values") {
    const auto hyd = Potential::make(PotentialKind::hydrogen, params_hydrogen(0));
    CHECK(hyd.v(1.0) == doctest::Approx(-1.0).epsilon(1e-15));

    const auto pt = Potential::make(PotentialKind::poschl_teller_well, params_pt(-10.0));
    CHECK(pt.v(0.0) == doctest::Approx(-10.0).epsilon(1e-15));

    const auto mo = Potential::make(PotentialKind::morse, params_morse(1.0, -2.0));
    CHECK(mo.v(0.0) == doctest::Approx(-1.0).epsilon(1e-15));
}

TEST_CASE("domain violations throw") {
    const auto hyd = Potential::make(PotentialKind::hydrogen, params_hydrogen(0));
    CHECK_THROWS_AS(hyd.v(0.0), DomainError);
    CHECK_THROWS_AS(hyd.v(-1.0), DomainError);
    const auto eck = Potential::make(PotentialKind::eckart, params_eckart(1.0, -4.0));
    CHECK_THROWS_AS(eck.v(-0.5), DomainError);
}

TEST_CASE("analytic derivatives match finite differences") {
    std::vector<std::pair<Potential, double>> cases;
    cases.emplace_back(Potential::make(PotentialKind::hydrogen, params_hydrogen(1)), 1.7);
    cases.emplace_back(Potential::make(PotentialKind::poschl_teller_well, params_pt(-10.0)), 0.6);
    cases.emplace_back(Potential::make(PotentialKind::poschl_teller_barrier, params_pt(2.5)), -0.8);
    cases.emplace_back(Potential::make(PotentialKind::morse, params_morse(1.0, -2.0)), 0.4);
    cases.emplace_back(Potential::make(PotentialKind::eckart, params_eckart(1.0, -4.0)), 0.9);
    {
        PhysicalParams p;
        p.D = 5;
        p.l = 2;
        cases.emplace_back(Potential::make(PotentialKind::oscillator_d, p), 1.2);
    }
    for (const auto& [pot, x] : cases) {
        CAPTURE(to_string(pot.kind()));
        const double h = 1e-3;
        auto fd1 = (pot.v(x + h) - pot.v(x - h)) / (2 * h);
        auto fd2 = (pot.v(x + h) - 2 * pot.v(x) + pot.v(x - h)) / (h * h);
        CHECK(pot.dv(x, 1) == doctest::Approx(fd1).epsilon(1e-5));
        CHECK(pot.dv(x, 2) == doctest::Approx(fd2).epsilon(1e-4));
        // third/fourth from derivative of dv to keep FD noise manageable
        auto fd3 = (pot.dv(x + h, 2) - pot.dv(x - h, 2)) / (2 * h);
        auto fd4 = (pot.dv(x + h, 3) - pot.dv(x - h, 3)) / (2 * h);
        CHECK(pot.dv(x, 3) == doctest::Approx(fd3).epsilon(1e-4));
        CHECK(pot.dv(x, 4) == doctest::Approx(fd4).epsilon(1e-4));
        // q derivatives too
        if (pot.q(x) != 0.0) {
            auto qd1 = (pot.q(x + h) - pot.q(x - h)) / (2 * h);
            CHECK(pot.dq(x, 1) == doctest::Approx(qd1).epsilon(1e-5));
            auto qd3 = (pot.dq(x + h, 2) - pot.dq(x - h, 2)) / (2 * h);
            CHECK(pot.dq(x, 3) == doctest::Approx(qd3).epsilon(1e-5));
        }
    }
}

TEST_CASE("q selection: table rules") {
    const auto hyd = Potential::make(PotentialKind::hydrogen, params_hydrogen(0));
    CHECK(hyd.q(2.0) == doctest::Approx(-1.0 / 16.0).epsilon(1e-15));
    CHECK(hyd.q_provenance() == QProvenance::pole_rule);

    const auto mo = Potential::make(PotentialKind::morse, params_morse(1.0, -2.0));
    CHECK(mo.q(0.3) == 0.0);

    const auto pt = Potential::make(PotentialKind::poschl_teller_well, params_pt(-10.0));
    CHECK(pt.q(0.7) ==
          doctest::Approx(0.25 / std::pow(std::cosh(0.7), 2)).epsilon(1e-14));

    const auto eck = Potential::make(PotentialKind::eckart, params_eckart(1.0, -4.0));
    CHECK(eck.q(0.7) ==
          doctest::Approx(-0.25 / std::pow(std::sinh(0.7), 2)).epsilon(1e-14));
}

TEST_CASE("pole rule: x^2 q -> -1/4") {
    for (auto kind : {PotentialKind::hydrogen, PotentialKind::oscillator_d,
                      PotentialKind::eckart}) {
        PhysicalParams p;
        p.l = 1;
        if (kind == PotentialKind::eckart) {
            p.v0 = 1.0;
            p.v1 = -4.0;
        }
        const auto pot = Potential::make(kind, p);
        for (double x : {1e-2, 1e-4, 1e-6}) {
            CAPTURE(to_string(kind));
            CAPTURE(x);
            CHECK(x * x * pot.q(x) == doctest::Approx(-0.25).epsilon(1e-3));
        }
        CHECK(1e-6 * 1e-6 * pot.q(1e-6) == doctest::Approx(-0.25).epsilon(1e-9));
    }
}

TEST_CASE("extreme rule: q(x_m) equals q0_from_extreme") {
    // Poschl-Teller: q0 = alpha^2/4
    for (double alpha : {1.0, 2.5}) {
        PhysicalParams p;
        p.v0 = -10.0;
        p.alpha = alpha;
        const auto pt = Potential::make(PotentialKind::poschl_teller_well, p);
        const double q0 = q0_from_extreme(pt);
        CHECK(q0 == doctest::Approx(alpha * alpha / 4.0).epsilon(1e-9));
        CHECK(pt.q(pt.extreme_location()) == doctest::Approx(q0).epsilon(1e-9));
    }
    // Morse: q0 = 0
    const auto mo = Potential::make(PotentialKind::morse, params_morse(1.0, -2.0));
    CHECK(std::abs(q0_from_extreme(mo)) < 1e-12);
    // pure 1-D oscillator: quadratic g, both derivative terms vanish
    const auto po = Potential::make(PotentialKind::pure_oscillator_1d, PhysicalParams{});
    CHECK(std::abs(q0_from_extreme(po)) < 1e-12);
    // degenerate extreme rejected
    std::function<double(double)> flat = [](double) { return 1.0; };
    CHECK_THROWS_AS(q0_from_extreme(flat, 0.0), DegenerateExtremeError);
}

TEST_CASE("extreme rule holds exactly for the pole-rule kinds too") {
    // at the extreme of the classical g, the selected q equals the
    // derivative combination to round-off
    struct Case {
        Potential pot;
        double xm;
    };
    std::vector<Case> cases;
    {
        PhysicalParams p;
        p.l = 1;
        cases.push_back({Potential::make(PotentialKind::hydrogen, p), 2.0});
        p.l = 2;
        cases.push_back({Potential::make(PotentialKind::hydrogen, p), 6.0});
        PhysicalParams q;
        q.l = 1;
        q.D = 3;
        cases.push_back({Potential::make(PotentialKind::oscillator_d, q),
                         std::pow(2.0, 0.25)});
        PhysicalParams r;
        r.v0 = 1.0;
        r.v1 = -4.0;
        cases.push_back(
            {Potential::make(PotentialKind::eckart, r), std::atanh(0.5)});
    }
    for (const auto& c : cases) {
        CAPTURE(to_string(c.pot.kind()));
        std::function<double(double)> g = [&](double x) { return 2.0 * c.pot.v(x); };
        std::function<double(double, int)> dg = [&](double x, int k) {
            return 2.0 * c.pot.dv(x, k);
        };
        const double q0 = q0_from_extreme(g, c.xm, &dg);
        CHECK(std::abs(c.pot.q(c.xm) - q0) <= 1e-8 * (std::abs(q0) + 1.0));
    }
}

TEST_CASE("q0_from_extreme finite differences agree with analytic path") {
    const auto eck = Potential::make(PotentialKind::eckart, params_eckart(1.0, -4.0));
    const double c = 2.0; // 2m/hbar^2
    std::function<double(double)> g = [&](double x) { return c * eck.v(x); };
    const double fd = q0_from_extreme(g, eck.extreme_location());
    const double an = q0_from_extreme(eck);
    CHECK(fd == doctest::Approx(an).epsilon(1e-4));
}

TEST_CASE("splitting identity g + q = -2m(E-V)/hbar^2") {
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> ex(0.05, 6.0);
    std::uniform_real_distribution<double> ee(-12.0, 8.0);
    std::vector<Potential> pots = {
        Potential::make(PotentialKind::hydrogen, params_hydrogen(1)),
        Potential::make(PotentialKind::poschl_teller_well, params_pt(-10.0)),
        Potential::make(PotentialKind::eckart, params_eckart(1.0, -4.0)),
        Potential::make(PotentialKind::morse, params_morse(1.0, -2.0)),
        Potential::make(PotentialKind::pure_oscillator_1d, PhysicalParams{}),
    };
    for (const auto& pot : pots) {
        for (int i = 0; i < 1000; ++i) {
            const double E = ee(rng);
            double x = ex(rng);
            if (pot.domain() == Domain::full_line && i % 2 == 0) x = -x;
            const auto s = build_splitting(pot, E);
            const auto& p = pot.params();
            const double lhs = s.g(x) + s.q(x) +
                               2.0 * p.m * (E - pot.v(x)) / (p.hbar * p.hbar);
            const double scale = std::abs(s.g(x)) + std::abs(s.q(x)) + 1.0;
            CHECK(std::abs(lhs) <= 1e-12 * scale);
        }
    }
}

TEST_CASE("splitting example values") {
    // hydrogen, m=e=hbar=1, l=0, E=-1/2: g(2) = 1/16
    const auto hyd = Potential::make(PotentialKind::hydrogen, params_hydrogen(0));
    const auto s = build_splitting(hyd, -0.5);
    CHECK(s.g(2.0) == doctest::Approx(1.0 / 16.0).epsilon(1e-13));
    // pure oscillator, E=1/2: g(0) = -1
    const auto po = Potential::make(PotentialKind::pure_oscillator_1d, PhysicalParams{});
    CHECK(build_splitting(po, 0.5).g(0.0) == doctest::Approx(-1.0).epsilon(1e-15));
}

TEST_CASE("langer equivalence for hydrogen") {
    // -g with q = -1/(4x^2) equals 2m(E - V_langer)/hbar^2 where V_langer
    // replaces l(l+1) by (l+1/2)^2
    for (int l : {0, 1, 2}) {
        const auto hyd = Potential::make(PotentialKind::hydrogen, params_hydrogen(l));
        const double E = -0.03;
        const auto s = build_splitting(hyd, E);
        for (double x : {0.2, 1.0, 3.7, 11.0}) {
            const double vl = -1.0 / x + (l + 0.5) * (l + 0.5) / (2.0 * x * x);
            CHECK(-s.g(x) == doctest::Approx(2.0 * (E - vl)).epsilon(1e-13));
        }
    }
}

TEST_CASE("q smallness away from turning points") {
    // |q| < 5% |g| at >= 2 natural lengths from every classical turning point
    struct Case {
        Potential pot;
        double E;
    };
    std::vector<Case> cases = {
        {Potential::make(PotentialKind::hydrogen, params_hydrogen(0)), -0.5},
        {Potential::make(PotentialKind::oscillator_d, params_hydrogen(0)), 1.5},
        {Potential::make(PotentialKind::poschl_teller_well, params_pt(-10.0)), -8.0},
        {Potential::make(PotentialKind::eckart, params_eckart(1.0, -4.0)), -4.2},
    };
    for (const auto& c : cases) {
        CAPTURE(to_string(c.pot.kind()));
        const auto s = build_splitting(c.pot, c.E);
        // locate classical turning points by scanning E - V_eff
        std::vector<double> tps;
        double prev_x = (c.pot.domain() == Domain::half_line) ? 1e-3 : -30.0;
        double prev = c.E - c.pot.v_eff(prev_x);
        for (double x = prev_x + 1e-2; x < 40.0; x += 1e-2) {
            const double cur = c.E - c.pot.v_eff(x);
            if (prev * cur < 0) tps.push_back(x);
            prev = cur;
            prev_x = x;
        }
        REQUIRE(!tps.empty());
        int checked = 0;
        const double lo = (c.pot.domain() == Domain::half_line) ? 0.05 : -25.0;
        for (double x = lo; x < 35.0; x += 0.11) {
            if (c.pot.domain() == Domain::half_line && x <= 0.0) continue;
            bool near = false;
            for (double t : tps)
                if (std::abs(x - t) < 2.0) near = true;
            if (near) continue;
            ++checked;
            CHECK(std::abs(s.q(x)) < 0.05 * std::abs(s.g(x)));
        }
        CHECK(checked > 10);
    }
}

TEST_CASE("exact spectrum closed forms") {
    const auto h0 = Potential::make(PotentialKind::hydrogen, params_hydrogen(0));
    CHECK(exact_spectrum(h0, 0) == doctest::Approx(-0.5).epsilon(1e-15));
    PhysicalParams po3;
    po3.D = 3;
    po3.l = 0;
    const auto o3 = Potential::make(PotentialKind::oscillator_d, po3);
    CHECK(exact_spectrum(o3, 1) == doctest::Approx(3.5).epsilon(1e-15));
    const auto pt = Potential::make(PotentialKind::poschl_teller_well, params_pt(-10.0));
    CHECK(exact_spectrum(pt, 0) == doctest::Approx(-8.0).epsilon(1e-14));
    const auto ek = Potential::make(PotentialKind::eckart, params_eckart(1.0, -4.0));
    CHECK(exact_spectrum(ek, 0) == doctest::Approx(-4.0).epsilon(1e-14));
}

TEST_CASE("wkb spectrum closed forms") {
    const auto h0 = Potential::make(PotentialKind::hydrogen, params_hydrogen(0));
    CHECK(wkb_spectrum_closed_form(h0, 0) == doctest::Approx(-2.0).epsilon(1e-15));
    const auto mo = Potential::make(PotentialKind::morse, params_morse(1.0, -2.0));
    CHECK(wkb_spectrum_closed_form(mo, 0) ==
          doctest::Approx(exact_spectrum(mo, 0)).epsilon(1e-15));
    const auto pt = Potential::make(PotentialKind::poschl_teller_well, params_pt(-10.0));
    CHECK(wkb_spectrum_closed_form(pt, 0) ==
          doctest::Approx(-10.0 - 0.125 + std::sqrt(80.0) / 4.0).epsilon(1e-14));
}

TEST_CASE("bound state counting") {
    const auto mo = Potential::make(PotentialKind::morse, params_morse(1.0, -2.0));
    CHECK(bound_state_count(mo) == 1);
    CHECK_THROWS_AS(exact_spectrum(mo, 1), NoBoundStateError);
    const auto pt = Potential::make(PotentialKind::poschl_teller_well, params_pt(-10.0));
    CHECK(bound_state_count(pt) == 5); // includes the marginal E_4 = 0
    const auto ek = Potential::make(PotentialKind::eckart, params_eckart(1.0, -4.0));
    CHECK(bound_state_count(ek) == 1); // the marginal threshold state
    const auto h0 = Potential::make(PotentialKind::hydrogen, params_hydrogen(0));
    CHECK(bound_state_count(h0) == -1);
}

TEST_CASE("kind name round trip") {
    for (auto kind : {PotentialKind::hydrogen, PotentialKind::oscillator_d,
                      PotentialKind::morse, PotentialKind::poschl_teller_well,
                      PotentialKind::poschl_teller_barrier, PotentialKind::eckart,
                      PotentialKind::pure_oscillator_1d}) {
        CHECK(kind_from_string(to_string(kind)) == kind);
    }
    CHECK(!kind_from_string("bogus").has_value());
}

TEST_CASE("user-defined potential q construction") {
    // quartic well: no pole, extreme at 0
    UserPotentialSpec spec;
    spec.V = [](double x) { return 0.25 * x * x * x * x - 0.1 * x * x; };
    spec.domain = Domain::full_line;
    spec.pole_order = 0;
    spec.x_extreme = 0.0;
    spec.sample_energy = 2.0;
    // V has a *maximum* of -V curvature... the extreme of V at 0 is a local
    // maximum of -0.1 x^2: g'' < 0 there but nonzero, so selection proceeds
    const auto pot = Potential::user(spec);
    CHECK(pot.q_provenance() == QProvenance::user);
    // q at the extreme equals q0 of the classical g
    const double c = 2.0;
    std::function<double(double)> g = [&](double x) { return c * spec.V(x); };
    const double q0 = q0_from_extreme(g, 0.0);
    CHECK(pot.q(0.0) == doctest::Approx(q0).epsilon(1e-6));
    // far away the bump has died off
    CHECK(std::abs(pot.q(25.0)) < 1e-30);
}

TEST_CASE("user-defined potential rejects bad pole order") {
    UserPotentialSpec spec;
    spec.V = [](double x) { return x * x; };
    spec.pole_order = 1;
    CHECK_THROWS_AS(Potential::user(spec), UnsupportedError);
}

TEST_CASE("parameter validation") {
    PhysicalParams bad;
    bad.m = -1.0;
    CHECK_THROWS_AS(Potential::make(PotentialKind::hydrogen, bad), DomainError);
    PhysicalParams badl;
    badl.l = -2;
    CHECK_THROWS_AS(Potential::make(PotentialKind::hydrogen, badl), DomainError);
    PhysicalParams wrongsign;
    wrongsign.v0 = +1.0; // well requires v0 < 0
    CHECK_THROWS_AS(Potential::make(PotentialKind::poschl_teller_well, wrongsign),
                    DomainError);
}
