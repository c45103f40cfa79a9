// correlations.hpp: second-order correlation functions, anomalous correlator, quadrature variances
#pragma once

#include "obist/params.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace obist {

enum class G2Variant {
    atomic_weak,
    atomic_weak_recast,     // physical-rate form; needs raw rates
    forward_weak,
    single_atom_pure_state, // needs raw rates
    side_large_c,
    atomic_impedance,       // xi must be 1
    forward_impedance,      // xi must be 1
    atomic_strong,
};

std::string_view to_string(G2Variant v);
std::optional<G2Variant> g2_variant_from_string(std::string_view s);

struct CorrelationSeries {
    std::vector<double> tau_bar;
    std::vector<double> values;
    std::string variant;
    SystemParams params;
    double X = 0.0;
    std::vector<std::string> warnings;
    bool negative_flagged = false;  // some g2 < 0; values are left as computed
    std::map<std::string, double> diagnostics;
};

CorrelationSeries g2_closed_form(G2Variant variant, const SystemParams& p, double X,
                                 const std::vector<double>& tau_bar_grid);

// Linearized g2 from the full Jacobian and Lyapunov covariance; O(1/N^2) term dropped.
// Throws NumericalError("coherent amplitude vanishes") at X = 0.
CorrelationSeries g2_numeric(const SystemParams& p, double X, const std::vector<double>& tau_bar_grid);

// Weak-excitation C^{nu* nu*}(tau_bar); continues to the overdamped case.
double anomalous_correlator_time(const SystemParams& p, double X, double tau_bar);

enum class VarianceMethod { closed_form, lyapunov };

std::string_view to_string(VarianceMethod m);

struct QuadratureVariances {
    double var_J0 = 0.25;
    double var_Jpi2 = 0.25;
    bool squeezed = false;
    std::optional<double> ratio;        // |C^{nu* nu*}| / C^{nu* nu}; classical bound 1
    std::optional<double> field_ratio;  // |C^{z z}| / C^{z* z} from the Lyapunov solve
    double c_normal = 0.0;              // C^{nu* nu}(0)
    double c_anomalous = 0.0;           // C^{nu* nu*}(0)
    VarianceMethod method = VarianceMethod::closed_form;
};

QuadratureVariances quadrature_variances(const SystemParams& p, double X);

}  // namespace obist
