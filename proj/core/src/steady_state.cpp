#include "obist/steady_state.hpp"

#include "obist/errors.hpp"
#include "obist/numerics.hpp"

#include <algorithm>
#include <cmath>

namespace obist {

namespace {

constexpr double kTurningTolerance = 1e-6;
constexpr double kDegenerateTolerance = 1e-12;

bool near(double x, double ref) { return std::abs(x - ref) <= kTurningTolerance * std::max(1.0, ref); }

}  // namespace

std::string_view to_string(Branch b) {
    switch (b) {
        case Branch::monostable: return "monostable";
        case Branch::lower: return "lower";
        case Branch::unstable_middle: return "unstable-middle";
        case Branch::upper: return "upper";
        case Branch::turning: return "turning";
    }
    return "unknown";
}

double evaluate_drive(double C, double X) { return X * (1.0 + 2.0 * C / (1.0 + X * X)); }

double drive_slope(double C, double X) {
    const double d = 1.0 + X * X;
    return 1.0 + 2.0 * C * (1.0 - X * X) / (d * d);
}

TurningPoints turning_points(double C) {
    if (!(C > 0.0)) throw ValidationError("C must be positive");
    TurningPoints tp;
    if (std::abs(C - 4.0) <= kDegenerateTolerance * 4.0) {
        tp.degenerate = true;
        tp.X_minus = tp.X_plus = std::sqrt(3.0);
        tp.Y_minus = tp.Y_plus = evaluate_drive(C, tp.X_minus);
        return tp;
    }
    if (C < 4.0) return tp;
    const double root = std::sqrt(C * (C - 4.0));
    tp.exists = true;
    tp.X_minus = std::sqrt(C - 1.0 - root);
    tp.X_plus = std::sqrt(C - 1.0 + root);
    tp.Y_minus = evaluate_drive(C, tp.X_minus);
    tp.Y_plus = evaluate_drive(C, tp.X_plus);
    return tp;
}

SteadyMoments steady_moments(double X) {
    if (!(X >= 0.0)) throw ValidationError("X must be nonnegative");
    const double d = 1.0 + X * X;
    return {X, -X / d, -X / d, -1.0 / d};
}

Branch classify_branch(double C, double X) {
    const auto tp = turning_points(C);
    if (tp.degenerate) return near(X, tp.X_minus) ? Branch::turning : Branch::monostable;
    if (!tp.exists) return Branch::monostable;
    if (near(X, tp.X_minus) || near(X, tp.X_plus)) return Branch::turning;
    if (X < tp.X_minus) return Branch::lower;
    if (X < tp.X_plus) return Branch::unstable_middle;
    return Branch::upper;
}

std::vector<OperatingPoint> solve_state_equation(double C, double Y) {
    if (!(C > 0.0)) throw ValidationError("C must be positive");
    if (!(Y >= 0.0)) throw ValidationError("Y must be nonnegative");
    if (Y == 0.0) return {{0.0, 0.0, classify_branch(C, 0.0), steady_moments(0.0)}};

    // X^3 - Y X^2 + (1+2C) X - Y = 0
    auto roots = numerics::real_cubic_roots(-Y, 1.0 + 2.0 * C, -Y);
    std::vector<double> kept;
    for (double x : roots) {
        if (x < 0.0) continue;
        if (!kept.empty() && std::abs(x - kept.back()) <= kTurningTolerance * std::max(1.0, x)) continue;
        kept.push_back(x);
    }

    std::vector<OperatingPoint> out;
    for (double x : kept) out.push_back({x, Y, classify_branch(C, x), steady_moments(x)});
    return out;
}

MeanFieldState fixed_point_state(double X) {
    const auto m = steady_moments(X);
    return {m.a, m.a, m.j_minus, m.j_plus, m.j_z};
}

MeanFieldTrajectory integrate_maxwell_bloch(const SystemParams& p, double Y, const MeanFieldState& initial,
                                            double tau_bar_max, double dt, std::size_t record_every) {
    if (!(dt > 0.0)) throw ValidationError("dt must be positive");
    if (!(tau_bar_max > 0.0)) throw ValidationError("tau_bar_max must be positive");

    const double xi = p.xi;
    const double two_c = 2.0 * p.C;
    auto rhs = [xi, two_c, Y](double, const numerics::RealVector& s) {
        numerics::RealVector d(5);
        d[0] = xi * (-s[0] + two_c * s[2] + Y);
        d[1] = xi * (-s[1] + two_c * s[3] + Y);
        d[2] = -s[2] + s[4] * s[0];
        d[3] = -s[3] + s[4] * s[1];
        d[4] = -2.0 * (s[4] + 1.0) - (s[3] * s[0] + s[2] * s[1]);
        return d;
    };

    numerics::RealVector x0(5);
    for (int i = 0; i < 5; ++i) x0[i] = initial[static_cast<std::size_t>(i)];
    const auto traj = numerics::integrate_rk4(rhs, x0, tau_bar_max, dt, record_every);

    MeanFieldTrajectory out;
    out.tau_bar = traj.t;
    out.states.reserve(traj.x.size());
    for (const auto& v : traj.x) out.states.push_back({v[0], v[1], v[2], v[3], v[4]});
    return out;
}

}  // namespace obist
