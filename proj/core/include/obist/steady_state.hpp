// steady_state.hpp: state equation, branches, turning points, mean-field dynamics
#pragma once

#include "obist/params.hpp"

#include <array>
#include <cstddef>
#include <string_view>
#include <vector>

namespace obist {

enum class Branch { monostable, lower, unstable_middle, upper, turning };

std::string_view to_string(Branch b);

// Scaled steady moments; J_plus equals J_minus for a real drive.
struct SteadyMoments {
    double a = 0.0;
    double j_minus = 0.0;
    double j_plus = 0.0;
    double j_z = -1.0;
};

struct OperatingPoint {
    double X = 0.0;
    double Y = 0.0;
    Branch branch = Branch::monostable;
    SteadyMoments moments;
};

struct TurningPoints {
    bool exists = false;
    bool degenerate = false;  // C == 4: both turning points merge at X^2 = 3
    double X_minus = 0.0;
    double X_plus = 0.0;
    double Y_minus = 0.0;
    double Y_plus = 0.0;
};

double evaluate_drive(double C, double X);
double drive_slope(double C, double X);  // dY/dX

std::vector<OperatingPoint> solve_state_equation(double C, double Y);
TurningPoints turning_points(double C);
SteadyMoments steady_moments(double X);
Branch classify_branch(double C, double X);

// Ordered (a, a+, J-, J+, Jz).
using MeanFieldState = std::array<double, 5>;

MeanFieldState fixed_point_state(double X);

struct MeanFieldTrajectory {
    std::vector<double> tau_bar;
    std::vector<MeanFieldState> states;
};

MeanFieldTrajectory integrate_maxwell_bloch(const SystemParams& p, double Y, const MeanFieldState& initial,
                                            double tau_bar_max, double dt = 1e-3,
                                            std::size_t record_every = 1);

}  // namespace obist
