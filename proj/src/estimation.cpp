#include "ffms/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "ffms/errors.hpp"

namespace ffms {

void TestSeries::validate() const {
    if (x.size() != y.size()) throw std::invalid_argument("TestSeries: x/y size mismatch");
    if (x.size() < 3) throw std::invalid_argument("TestSeries: needs >= 3 samples");
    if (kind == TestKind::tensile || kind == TestKind::volume_displacement) {
        for (std::size_t i = 1; i < x.size(); ++i)
            if (!(x[i] > x[i - 1]))
                throw std::invalid_argument("TestSeries: x must be strictly increasing");
    }
}

ModulusFit fit_modulus(const TestSeries& series, double strain_window_lo,
                       double strain_window_hi) {
    series.validate();
    if (series.kind != TestKind::tensile)
        throw FitError("fit_modulus expects a tensile series");
    if (!(strain_window_hi >= strain_window_lo))
        throw FitError("fit_modulus: empty strain window");

    double sxx = 0.0, sxy = 0.0;
    int count = 0;
    for (std::size_t i = 0; i < series.x.size(); ++i) {
        const double eps = series.x[i];
        if (eps < strain_window_lo || eps > strain_window_hi) continue;
        sxx += eps * eps;
        sxy += eps * series.y[i];
        ++count;
    }
    if (count < 3) throw FitError("fit_modulus: fewer than 3 points inside the window");
    if (!(sxx > 0.0)) throw FitError("fit_modulus: window contains no nonzero strain");

    ModulusFit fit;
    fit.elastic_modulus_pa = sxy / sxx;
    fit.points_used = count;

    double ss = 0.0;
    for (std::size_t i = 0; i < series.x.size(); ++i) {
        const double eps = series.x[i];
        if (eps < strain_window_lo || eps > strain_window_hi) continue;
        const double r = series.y[i] - fit.elastic_modulus_pa * eps;
        ss += r * r;
    }
    fit.rms_residual_pa = std::sqrt(ss / count);
    return fit;
}

VolumeSlopeFit fit_volume_slope(const TestSeries& series, int channel_count) {
    series.validate();
    if (series.kind != TestKind::volume_displacement)
        throw FitError("fit_volume_slope expects a volume_displacement series");
    if (channel_count < 1) throw FitError("fit_volume_slope: channel_count must be >= 1");

    const std::size_t n = series.x.size();
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += series.x[i];
        my += series.y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);

    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = series.x[i] - mx;
        const double dy = series.y[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (!(sxx > 0.0)) throw FitError("fit_volume_slope: degenerate length series");
    if (!(syy > 0.0)) throw FitError("fit_volume_slope: constant volume series");

    const double slope = sxy / sxx;  // dV/dL = N * A_eff
    const double intercept = my - slope * mx;

    double ss_res = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = series.y[i] - (slope * series.x[i] + intercept);
        ss_res += r * r;
    }

    VolumeSlopeFit fit;
    fit.volume_slope_m2 = slope / static_cast<double>(channel_count);
    fit.dead_volume_m3 = intercept;
    fit.r_squared = 1.0 - ss_res / syy;
    return fit;
}

CycleWork cycle_work(std::span<const double> pressure_pa, std::span<const double> volume_m3,
                     double load_mass_kg, double lift_height_m) {
    if (pressure_pa.size() != volume_m3.size() || pressure_pa.size() < 3)
        throw CycleError("cycle_work: needs matching p/V arrays of >= 3 samples");

    const auto [p_lo, p_hi] = std::minmax_element(pressure_pa.begin(), pressure_pa.end());
    const auto [v_lo, v_hi] = std::minmax_element(volume_m3.begin(), volume_m3.end());
    const double p_range = *p_hi - *p_lo;
    const double v_range = *v_hi - *v_lo;
    const double p_gap = std::abs(pressure_pa.front() - pressure_pa.back());
    const double v_gap = std::abs(volume_m3.front() - volume_m3.back());
    if (p_gap > 0.01 * p_range || v_gap > 0.01 * v_range)
        throw CycleError("cycle_work: trajectory is not a closed cycle (pressure gap " +
                         std::to_string(p_gap) + " Pa, volume gap " + std::to_string(v_gap) +
                         " m^3)");

    CycleWork work;
    for (std::size_t i = 0; i + 1 < volume_m3.size(); ++i) {
        const double dv = volume_m3[i + 1] - volume_m3[i];
        const double w = 0.5 * (pressure_pa[i] + pressure_pa[i + 1]) * dv;
        if (dv > 0.0)
            work.extension_work_j += w;
        else
            work.withdrawal_work_j += w;
    }
    work.input_work_j = work.extension_work_j + work.withdrawal_work_j;
    work.potential_energy_j = load_mass_kg * kStandardGravity * lift_height_m;
    return work;
}

CycleWork cycle_work(const Trajectory& traj, double load_mass_kg, double lift_height_m) {
    std::vector<double> p(traj.size()), v(traj.size());
    for (std::size_t i = 0; i < traj.size(); ++i) {
        p[i] = traj.mean_pressure_pa(i);
        v[i] = traj.total_volume_m3(i);
    }
    return cycle_work(p, v, load_mass_kg, lift_height_m);
}

Efficiency efficiency(const CycleWork& work, EfficiencyFormula formula) {
    Efficiency out;
    if (formula == EfficiencyFormula::corrected) {
        if (!(work.input_work_j > 0.0))
            throw std::domain_error("efficiency: W_in must be > 0 for the corrected formula");
        out.value = work.potential_energy_j / work.input_work_j;
        out.erroneous_formula = false;
    } else {
        if (!(work.extension_work_j > 0.0))
            throw std::domain_error("efficiency: W+ must be > 0 for the legacy formula");
        out.value = (work.potential_energy_j + std::abs(work.withdrawal_work_j)) /
                    work.extension_work_j;
        out.erroneous_formula = true;
    }
    return out;
}

double loop_area(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 3)
        throw std::invalid_argument("loop_area: needs matching arrays of >= 3 samples");
    // Shoelace form of the contour integral of x dy.
    double area2 = 0.0;
    const std::size_t n = x.size();
    for (std::size_t i = 0; i + 1 < n; ++i) area2 += x[i] * y[i + 1] - x[i + 1] * y[i];
    area2 += x[n - 1] * y[0] - x[0] * y[n - 1];  // closing edge
    return 0.5 * area2;
}

double hysteresis_area(const Trajectory& traj, LoopPlane plane) {
    const std::size_t n = traj.size();
    if (n < 3) throw CycleError("hysteresis_area: trajectory too short");
    std::vector<double> p(n), v(n), f(n);
    for (std::size_t i = 0; i < n; ++i) {
        p[i] = traj.mean_pressure_pa(i);
        v[i] = traj.total_volume_m3(i);
        f[i] = traj.total_force_n(i);
    }
    auto closed = [](const std::vector<double>& s) {
        const auto [lo, hi] = std::minmax_element(s.begin(), s.end());
        return std::abs(s.front() - s.back()) <= 0.01 * (*hi - *lo);
    };
    switch (plane) {
        case LoopPlane::pressure_volume:
            if (!closed(p) || !closed(v)) throw CycleError("hysteresis_area: loop not closed");
            return loop_area(p, v);
        case LoopPlane::pressure_force:
            if (!closed(p) || !closed(f)) throw CycleError("hysteresis_area: loop not closed");
            return loop_area(p, f);
        case LoopPlane::volume_force:
            if (!closed(v) || !closed(f)) throw CycleError("hysteresis_area: loop not closed");
            return loop_area(v, f);
    }
    throw std::logic_error("hysteresis_area: unknown plane");
}

double displacement_drift(std::span<const double> peak_displacements_m) {
    if (peak_displacements_m.size() < 2)
        throw std::domain_error("displacement_drift: needs >= 2 cycles");
    const double first = peak_displacements_m.front();
    if (first == 0.0) throw std::domain_error("displacement_drift: first peak is zero");
    return (first - peak_displacements_m.back()) / first;
}

TestSeries work_cycle_series(const Trajectory& traj) {
    TestSeries s;
    s.kind = TestKind::work_cycle;
    s.x.resize(traj.size());
    s.y.resize(traj.size());
    for (std::size_t i = 0; i < traj.size(); ++i) {
        s.x[i] = traj.total_volume_m3(i);
        s.y[i] = traj.mean_pressure_pa(i);
    }
    return s;
}

// ---------------------------------------------------------------------------
// Reference cycles
// ---------------------------------------------------------------------------

namespace {

// Closed rectangle in the p-V plane: fill dv at p_hi, drop to p_lo at full
// volume, withdraw at p_lo, recover. Trapezoid integration is exact on it.
Trajectory rectangle_cycle(double p_hi, double p_lo, double dv) {
    constexpr int kEdge = 16;
    Trajectory traj;
    traj.dt_s = 0.1;
    TrajectoryChannel ch;
    auto push = [&](double p, double v) {
        ch.pressure_pa.push_back(p);
        ch.volume_m3.push_back(v);
        ch.length_m.push_back(0.0);
        ch.force_n.push_back(0.0);
    };
    for (int i = 0; i < kEdge; ++i) push(p_hi, dv * i / kEdge);          // fill
    for (int i = 0; i < kEdge; ++i)                                      // depressurize
        push(p_hi + (p_lo - p_hi) * i / kEdge, dv);
    for (int i = 0; i < kEdge; ++i) push(p_lo, dv * (kEdge - i) / kEdge);  // withdraw
    for (int i = 0; i < kEdge; ++i)                                      // recover
        push(p_lo + (p_hi - p_lo) * i / kEdge, 0.0);
    push(p_hi, 0.0);  // close
    const std::size_t n = ch.pressure_pa.size();
    for (std::size_t i = 0; i < n; ++i) traj.time_s.push_back(traj.dt_s * i);
    traj.channels.push_back(std::move(ch));
    return traj;
}

}  // namespace

ReferenceCycleData reference_cycle(ReferenceCycleKind kind) {
    // Rectangles solved against the target efficiencies with W+ fixed at 1 J
    // (volume 1e-5 m^3 filled at 1e5 Pa). The hydraulic cycle pins both the
    // corrected (0.46) and legacy (0.83) values:
    //   legacy = (0.46*(1 + W-) - W-) / 1 = 0.83  =>  W- = -37/54 J.
    // The pneumatic cycle pins corrected = 0.25 with W- = -0.5 J.
    constexpr double kFillVolume = 1.0e-5;
    constexpr double kFillPressure = 1.0e5;
    constexpr double kMass = 0.5;

    ReferenceCycleData data;
    data.load_mass_kg = kMass;
    if (kind == ReferenceCycleKind::hydraulic) {
        const double withdraw_pressure = kFillPressure * (37.0 / 54.0);
        const double u_g = 0.46 * (17.0 / 54.0);
        data.lift_height_m = u_g / (kMass * kStandardGravity);
        data.traj = rectangle_cycle(kFillPressure, withdraw_pressure, kFillVolume);
    } else {
        const double withdraw_pressure = 0.5 * kFillPressure;
        const double u_g = 0.125;
        data.lift_height_m = u_g / (kMass * kStandardGravity);
        data.traj = rectangle_cycle(kFillPressure, withdraw_pressure, kFillVolume);
    }
    return data;
}

}  // namespace ffms
