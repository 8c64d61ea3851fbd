#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "ffms/errors.hpp"
#include "ffms/estimation.hpp"

using namespace ffms;

namespace {

TestSeries tensile_line(double modulus, int n = 21, double noise = 0.0, unsigned seed = 1) {
    TestSeries s;
    s.kind = TestKind::tensile;
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> nd(-noise, noise);
    for (int i = 0; i < n; ++i) {
        const double eps = 1.2 * i / (n - 1);
        s.x.push_back(eps);
        s.y.push_back(modulus * eps + (noise > 0.0 ? nd(rng) : 0.0));
    }
    return s;
}

// Closed synthetic loop used by the work-bookkeeping tests.
Trajectory synthetic_loop(std::vector<double> p, std::vector<double> v) {
    Trajectory traj;
    traj.dt_s = 0.1;
    TrajectoryChannel ch;
    ch.pressure_pa = std::move(p);
    ch.volume_m3 = std::move(v);
    ch.length_m.assign(ch.pressure_pa.size(), 0.0);
    ch.force_n.assign(ch.pressure_pa.size(), 0.0);
    for (std::size_t i = 0; i < ch.pressure_pa.size(); ++i)
        traj.time_s.push_back(0.1 * static_cast<double>(i));
    traj.channels.push_back(std::move(ch));
    return traj;
}

}  // namespace

TEST_CASE("modulus fit") {
    SUBCASE("noiseless line recovers 1.1 MPa exactly") {
        const auto fit = fit_modulus(tensile_line(1.1e6), 0.0, 1.0);
        CHECK(fit.elastic_modulus_pa == doctest::Approx(1.1e6).epsilon(1e-12));
        CHECK(fit.rms_residual_pa < 1e-9 * 1.1e6);
    }

    SUBCASE("uniform noise keeps the slope within 0.5%") {
        const auto fit = fit_modulus(tensile_line(2.0e6, 201, 1.0e3, 7), 0.0, 1.0);
        CHECK(fit.elastic_modulus_pa > 1.99e6);
        CHECK(fit.elastic_modulus_pa < 2.01e6);
    }

    SUBCASE("degenerate window is a fit error") {
        CHECK_THROWS_AS(fit_modulus(tensile_line(1.1e6), 0.0, 0.0), FitError);
        CHECK_THROWS_AS(fit_modulus(tensile_line(1.1e6), 0.5, 0.4), FitError);
    }

    SUBCASE("non-tensile series rejected") {
        TestSeries s = tensile_line(1e6);
        s.kind = TestKind::work_cycle;
        CHECK_THROWS_AS(fit_modulus(s, 0.0, 1.0), FitError);
    }
}

TEST_CASE("volume slope fit") {
    SUBCASE("displacement endpoints give A_eff = 1.765e-5 with zero dead volume") {
        // 0 -> 4.5 mL drives 0 -> 85 mm over three channels; collinear
        // midpoint keeps the series at the 3-sample minimum.
        TestSeries s;
        s.kind = TestKind::volume_displacement;
        s.x = {0.0, 0.0425, 0.085};
        s.y = {0.0, 2.25e-6, 4.5e-6};
        const auto fit = fit_volume_slope(s, 3);
        CHECK(fit.volume_slope_m2 == doctest::Approx(4.5e-6 / (3 * 0.085)).epsilon(1e-12));
        CHECK(fit.volume_slope_m2 == doctest::Approx(1.765e-5).epsilon(5e-3));
        CHECK(std::abs(fit.dead_volume_m3) < 1e-15);
        CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));
    }

    SUBCASE("exact affine data has unit R^2 and recovers the dead volume") {
        TestSeries s;
        s.kind = TestKind::volume_displacement;
        for (int i = 0; i <= 10; ++i) {
            const double dl = 0.01 * i;
            s.x.push_back(dl);
            s.y.push_back(2.0e-6 + 4 * 1.5e-5 * dl);  // 4 channels, 0.2 mL dead
        }
        const auto fit = fit_volume_slope(s, 4);
        CHECK(fit.volume_slope_m2 == doctest::Approx(1.5e-5).epsilon(1e-10));
        CHECK(fit.dead_volume_m3 == doctest::Approx(2.0e-6).epsilon(1e-10));
        CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));
    }

    SUBCASE("reversed length axis violates the precondition") {
        TestSeries s;
        s.kind = TestKind::volume_displacement;
        s.x = {0.085, 0.0425, 0.0};
        s.y = {4.5e-6, 2.25e-6, 0.0};
        CHECK_THROWS_AS(fit_volume_slope(s, 3), std::invalid_argument);
    }

    SUBCASE("constant volume series is degenerate") {
        TestSeries s;
        s.kind = TestKind::volume_displacement;
        s.x = {0.0, 0.1, 0.2};
        s.y = {1e-6, 1e-6, 1e-6};
        CHECK_THROWS_AS(fit_volume_slope(s, 3), FitError);
    }
}

TEST_CASE("cycle work on a rectangular loop") {
    // fill 1 mL at 100 kPa, withdraw at 50 kPa
    std::vector<double> p, v;
    auto push = [&](double pp, double vv) {
        p.push_back(pp);
        v.push_back(vv);
    };
    const int kEdge = 10;
    for (int i = 0; i < kEdge; ++i) push(100e3, 1e-6 * i / kEdge);
    for (int i = 0; i < kEdge; ++i) push(100e3 - 50e3 * i / kEdge, 1e-6);
    for (int i = 0; i < kEdge; ++i) push(50e3, 1e-6 * (kEdge - i) / kEdge);
    for (int i = 0; i < kEdge; ++i) push(50e3 + 50e3 * i / kEdge, 0.0);
    push(100e3, 0.0);

    const CycleWork work = cycle_work(p, v, 0.0, 0.0);
    CHECK(work.extension_work_j == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(work.withdrawal_work_j == doctest::Approx(-0.05).epsilon(1e-12));
    CHECK(work.input_work_j == doctest::Approx(0.05).epsilon(1e-12));

    SUBCASE("pV hysteresis area equals the cycle input work") {
        const Trajectory traj = synthetic_loop(p, v);
        CHECK(hysteresis_area(traj, LoopPlane::pressure_volume) ==
              doctest::Approx(work.input_work_j).epsilon(1e-12));
    }

    SUBCASE("non-closed cycle is rejected with the gap") {
        std::vector<double> p2 = p, v2 = v;
        v2.back() = 0.5e-6;
        CHECK_THROWS_WITH_AS(cycle_work(p2, v2, 0.0, 0.0),
                             doctest::Contains("not a closed cycle"), CycleError);
    }
}

TEST_CASE("cycle work edge cases") {
    SUBCASE("zero-pressure cycle is all zeros") {
        std::vector<double> p(40, 0.0), v;
        for (int i = 0; i < 40; ++i)
            v.push_back(1e-6 * std::sin(2 * 3.14159265358979 * i / 39));
        const CycleWork work = cycle_work(p, v, 0.0, 0.0);
        CHECK(work.extension_work_j == 0.0);
        CHECK(work.withdrawal_work_j == 0.0);
        CHECK(work.input_work_j == 0.0);
    }

    SUBCASE("potential energy uses standard gravity") {
        std::vector<double> p(5, 1.0), v(5, 0.0);
        const CycleWork work = cycle_work(p, v, 0.5, 0.0055);
        CHECK(work.potential_energy_j == doctest::Approx(0.02697).epsilon(2e-4));
    }
}

TEST_CASE("efficiency formulas") {
    SUBCASE("reference cycles reproduce the regression values") {
        const ReferenceCycleData hyd = reference_cycle(ReferenceCycleKind::hydraulic);
        const CycleWork hw = cycle_work(hyd.traj, hyd.load_mass_kg, hyd.lift_height_m);
        CHECK(efficiency(hw, EfficiencyFormula::corrected).value ==
              doctest::Approx(0.46).epsilon(1e-6));
        const Efficiency legacy = efficiency(hw, EfficiencyFormula::legacy);
        CHECK(legacy.value == doctest::Approx(0.83).epsilon(1e-6));
        CHECK(legacy.erroneous_formula);

        const ReferenceCycleData pne = reference_cycle(ReferenceCycleKind::pneumatic);
        const CycleWork pw = cycle_work(pne.traj, pne.load_mass_kg, pne.lift_height_m);
        CHECK(efficiency(pw, EfficiencyFormula::corrected).value ==
              doctest::Approx(0.25).epsilon(1e-6));
    }

    SUBCASE("legacy never reports below corrected when work is recovered") {
        std::mt19937 rng(99);
        std::uniform_real_distribution<double> pd(20e3, 900e3);
        std::uniform_real_distribution<double> vd(0.1e-6, 20e-6);
        std::uniform_real_distribution<double> ud(0.0, 1.0);
        for (int trial = 0; trial < 1000; ++trial) {
            const double p_hi = pd(rng);
            const double p_lo = p_hi * ud(rng) * 0.99 + 1.0;
            const double dv = vd(rng);
            CycleWork w;
            w.extension_work_j = p_hi * dv;
            w.withdrawal_work_j = -p_lo * dv;
            w.input_work_j = w.extension_work_j + w.withdrawal_work_j;
            w.potential_energy_j = ud(rng) * w.input_work_j;
            const double corrected = efficiency(w, EfficiencyFormula::corrected).value;
            const double legacy = efficiency(w, EfficiencyFormula::legacy).value;
            CHECK(corrected <= legacy + 1e-12);
        }
    }

    SUBCASE("division-domain violations throw") {
        CycleWork w;
        w.extension_work_j = 0.0;
        w.input_work_j = 0.0;
        CHECK_THROWS_AS(efficiency(w, EfficiencyFormula::corrected), std::domain_error);
        CHECK_THROWS_AS(efficiency(w, EfficiencyFormula::legacy), std::domain_error);
    }
}

TEST_CASE("hysteresis area") {
    SUBCASE("collinear loop has zero area") {
        std::vector<double> x = {0.0, 1.0, 2.0, 1.0, 0.0};
        std::vector<double> y = {0.0, 1.0, 2.0, 1.0, 0.0};
        CHECK(loop_area(x, y) == doctest::Approx(0.0));
    }

    SUBCASE("unit square") {
        std::vector<double> x = {0.0, 1.0, 1.0, 0.0};
        std::vector<double> y = {0.0, 0.0, 1.0, 1.0};
        CHECK(std::abs(loop_area(x, y)) == doctest::Approx(1.0).epsilon(1e-12));
    }

    SUBCASE("open loop rejected") {
        Trajectory traj = synthetic_loop({1.0, 2.0, 3.0, 4.0}, {0.0, 1.0, 2.0, 3.0});
        CHECK_THROWS_AS(hysteresis_area(traj, LoopPlane::pressure_volume), CycleError);
    }
}

TEST_CASE("subsampling a smooth cycle changes the work by less than 1%") {
    std::vector<double> p, v;
    const int n = 400;
    for (int i = 0; i <= n; ++i) {
        const double th = 2 * 3.14159265358979 * i / n;
        p.push_back(5e5 + 1e5 * std::sin(th));
        v.push_back(2e-6 * (1 - std::cos(th)));
    }
    const double w_full = cycle_work(p, v, 0.0, 0.0).input_work_j;
    std::vector<double> p2, v2;
    for (int i = 0; i <= n; i += 2) {
        p2.push_back(p[i]);
        v2.push_back(v[i]);
    }
    const double w_half = cycle_work(p2, v2, 0.0, 0.0).input_work_j;
    CHECK(std::abs(w_half - w_full) <= 0.01 * std::abs(w_full));
}

TEST_CASE("fits are stable under subsampling of smooth data") {
    const TestSeries dense = tensile_line(1.1e6, 41);
    TestSeries sparse = dense;
    sparse.x.clear();
    sparse.y.clear();
    for (std::size_t i = 0; i < dense.x.size(); i += 2) {
        sparse.x.push_back(dense.x[i]);
        sparse.y.push_back(dense.y[i]);
    }
    const double e_dense = fit_modulus(dense, 0.0, 1.0).elastic_modulus_pa;
    const double e_sparse = fit_modulus(sparse, 0.0, 1.0).elastic_modulus_pa;
    CHECK(std::abs(e_sparse / e_dense - 1.0) <= 0.01);

    TestSeries vol;
    vol.kind = TestKind::volume_displacement;
    for (int i = 0; i <= 20; ++i) {
        vol.x.push_back(0.005 * i);
        vol.y.push_back(1e-7 + 3 * 1.765e-5 * 0.005 * i);
    }
    TestSeries vol2 = vol;
    vol2.x.clear();
    vol2.y.clear();
    for (std::size_t i = 0; i < vol.x.size(); i += 2) {
        vol2.x.push_back(vol.x[i]);
        vol2.y.push_back(vol.y[i]);
    }
    const double s1 = fit_volume_slope(vol, 3).volume_slope_m2;
    const double s2 = fit_volume_slope(vol2, 3).volume_slope_m2;
    CHECK(std::abs(s2 / s1 - 1.0) <= 0.01);
}

TEST_CASE("displacement drift") {
    std::vector<double> constant = {0.028, 0.028, 0.028};
    CHECK(displacement_drift(constant) == 0.0);
    // 28 mm decaying to 26.6 mm across the run
    std::vector<double> decayed = {0.028, 0.0275, 0.027, 0.0266};
    CHECK(displacement_drift(decayed) == doctest::Approx(0.05).epsilon(1e-12));
    std::vector<double> growing = {0.028, 0.030};
    CHECK(displacement_drift(growing) < 0.0);
    std::vector<double> zero_start = {0.0, 0.03};
    CHECK_THROWS_AS(displacement_drift(zero_start), std::domain_error);
}

TEST_CASE("test series validation") {
    TestSeries s;
    s.kind = TestKind::tensile;
    s.x = {0.0, 0.1};
    s.y = {0.0, 1.0};
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);  // too short
    s.x = {0.0, 0.1, 0.1};
    s.y = {0.0, 1.0, 2.0};
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);  // not strictly increasing
}
