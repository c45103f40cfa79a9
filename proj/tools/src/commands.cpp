#include "commands.hpp"

#include "presets.hpp"

#include <obist/correlations.hpp>
#include <obist/covariance.hpp>
#include <obist/lindyn.hpp>
#include <obist/numerics.hpp>
#include <obist/scattering.hpp>
#include <obist/spectra.hpp>
#include <obist/steady_state.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

namespace obist::cli {

namespace {

struct Point {
    double X = 0.0;
    double Y = 0.0;
    Branch branch = Branch::monostable;
};

std::size_t grid_points(const RunConfig& cfg, std::size_t fallback) {
    const std::size_t n = cfg.points.value_or(fallback);
    if (n < 2) throw UsageError("--points must be at least 2");
    return n;
}

Point resolve_point(const RunConfig& cfg, const SystemParams& p, Document& doc) {
    if (cfg.X && cfg.Y) throw UsageError("give either --X or --y, not both");
    Point pt;
    if (cfg.X) {
        if (!(*cfg.X >= 0.0)) throw UsageError("--X must be nonnegative");
        pt.X = *cfg.X;
        pt.Y = evaluate_drive(p.C, pt.X);
        pt.branch = classify_branch(p.C, pt.X);
    } else if (cfg.Y) {
        if (!(*cfg.Y >= 0.0)) throw UsageError("--y must be nonnegative");
        const auto roots = solve_state_equation(p.C, *cfg.Y);
        if (roots.size() == 1 && !cfg.branch) {
            pt = {roots[0].X, roots[0].Y, roots[0].branch};
        } else {
            if (!cfg.branch) throw UsageError("several roots at this drive; pass --branch lower or --branch upper");
            bool found = false;
            for (const auto& r : roots) {
                if (to_string(r.branch) == *cfg.branch ||
                    (*cfg.branch == "middle" && r.branch == Branch::unstable_middle)) {
                    pt = {r.X, r.Y, r.branch};
                    found = true;
                }
            }
            if (!found) throw UsageError("no root on branch " + *cfg.branch);
        }
    } else {
        throw UsageError("an operating point is required: pass --X or --y");
    }
    if (pt.branch == Branch::unstable_middle) throw RegimeError("linearization invalid on the unstable branch");
    if (pt.branch == Branch::turning) doc.warnings.emplace_back("operating point sits at a turning point");
    doc.metadata["X"] = pt.X;
    doc.metadata["Y"] = pt.Y;
    doc.metadata["branch"] = std::string(to_string(pt.branch));
    return pt;
}

nlohmann::ordered_json normalization_json(const NormalizationCheck& n) {
    nlohmann::ordered_json j;
    j["integral"] = n.integral;
    j["certified"] = n.certified;
    j["half_width"] = n.half_width;
    j["tail_bound"] = n.tail_bound;
    j["quadrature_error"] = n.quadrature_error;
    return j;
}

void append_warnings(Document& doc, const std::vector<std::string>& w) {
    doc.warnings.insert(doc.warnings.end(), w.begin(), w.end());
}

struct SpectrumColumn {
    std::string name;
    SpectrumModel model;
};

Document spectrum_table(const std::string& command, const SystemParams& p, double X,
                        const std::vector<double>& grid, std::vector<SpectrumColumn> cols, bool full_range) {
    Document doc;
    doc.command = command;
    doc.params = p;
    doc.metadata["X"] = X;
    doc.columns.push_back("y");
    std::vector<std::vector<double>> values;
    for (const auto& c : cols) {
        doc.columns.push_back(c.name);
        const std::string prefix = cols.size() == 1 ? std::string() : c.name + ".";
        doc.metadata[prefix + "kind"] = std::string(to_string(c.model.kind()));
        doc.metadata[prefix + "method"] = std::string(to_string(c.model.method()));
        doc.metadata[prefix + "unit_area"] = c.model.unit_area();
        if (const auto& w = c.model.validity_window()) {
            doc.metadata[prefix + "validity_window"] = nlohmann::ordered_json::array({w->first, w->second});
        }
        if (c.model.unit_area()) {
            doc.metadata[prefix + "normalization"] = normalization_json(c.model.certify_normalization());
        }
        append_warnings(doc, c.model.warnings());
        values.push_back(c.model.sample(grid).values);
    }
    for (std::size_t i = 0; i < grid.size(); ++i) {
        std::vector<Cell> row{grid[i]};
        for (std::size_t c = 0; c < cols.size(); ++c) {
            const auto& w = cols[c].model.validity_window();
            if (w && !full_range && (grid[i] < w->first || grid[i] > w->second)) {
                row.emplace_back(std::monostate{});
            } else {
                row.emplace_back(values[c][i]);
            }
        }
        doc.rows.push_back(std::move(row));
    }
    return doc;
}

Document g2_table(const std::string& command, const SystemParams& p, double X, const std::vector<double>& grid,
                  const std::vector<std::pair<std::string, CorrelationSeries>>& series) {
    Document doc;
    doc.command = command;
    doc.params = p;
    doc.metadata["X"] = X;
    const auto G = rabi_frequency_bar(p.C, p.xi);
    doc.metadata["G_bar_real"] = G.real();
    doc.metadata["G_bar_imag"] = G.imag();
    doc.columns.push_back("tau_bar");
    for (const auto& [name, s] : series) {
        doc.columns.push_back(name);
        const std::string prefix = series.size() == 1 ? std::string() : name + ".";
        doc.metadata[prefix + "variant"] = s.variant;
        doc.metadata[prefix + "g2_at_0_minus_1"] = s.values.front() - 1.0;
        doc.metadata[prefix + "negative_flagged"] = s.negative_flagged;
        for (const auto& [k, v] : s.diagnostics) doc.metadata[prefix + k] = v;
        append_warnings(doc, s.warnings);
    }
    for (std::size_t i = 0; i < grid.size(); ++i) {
        std::vector<Cell> row{grid[i]};
        for (const auto& entry : series) row.emplace_back(entry.second.values[i]);
        doc.rows.push_back(std::move(row));
    }
    return doc;
}

nlohmann::ordered_json matrix_json(const FluctuationMatrix& m) { return nlohmann::ordered_json::parse(to_json(m)); }

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

SystemParams resolve_params(const RunConfig& cfg) {
    const bool any_dimless = cfg.C || cfg.xi;
    const bool any_rates = cfg.g_mhz || cfg.kappa_mhz || cfg.gamma_mhz;
    if (cfg.params_file && (any_dimless || any_rates || cfg.N)) {
        throw UsageError("give parameters either with --params or inline, not both");
    }
    if (cfg.params_file) return load_params_file(*cfg.params_file);
    if (any_dimless && any_rates) throw UsageError("give either --C/--xi or the --*-mhz rates, not both");
    const long long N = cfg.N.value_or(1);
    if (any_rates) {
        if (!cfg.g_mhz || !cfg.kappa_mhz || !cfg.gamma_mhz) {
            throw UsageError("--g-mhz, --kappa-mhz and --gamma-mhz must be given together");
        }
        return from_raw_rates(*cfg.g_mhz, *cfg.kappa_mhz, *cfg.gamma_mhz, N, RateUnit::mhz_cycles);
    }
    if (!cfg.C || !cfg.xi) throw UsageError("parameters required: --C and --xi (and --N), or --params FILE");
    return make_params(*cfg.C, *cfg.xi, N);
}

Document cmd_curve(const RunConfig& cfg) {
    double C = 0.0;
    if (cfg.params_file) {
        C = resolve_params(cfg).C;
    } else {
        if (!cfg.C) throw UsageError("curve needs --C");
        C = *cfg.C;
    }
    if (!(C > 0.0)) throw UsageError("C must be positive");

    Document doc;
    doc.command = "curve";
    doc.metadata["C"] = C;
    const auto tp = turning_points(C);
    doc.metadata["summary"] = tp.exists ? "bistable" : (tp.degenerate ? "degenerate" : "monostable");
    if (tp.exists || tp.degenerate) {
        doc.metadata["X_minus"] = tp.X_minus;
        doc.metadata["X_plus"] = tp.X_plus;
        doc.metadata["Y_minus"] = tp.Y_minus;
        doc.metadata["Y_plus"] = tp.Y_plus;
    }
    doc.columns = {"X", "Y", "branch"};

    if (cfg.Y) {
        if (!(*cfg.Y >= 0.0)) throw UsageError("--y must be nonnegative");
        for (const auto& r : solve_state_equation(C, *cfg.Y)) {
            doc.rows.push_back({r.X, r.Y, std::string(to_string(r.branch))});
        }
        return doc;
    }
    const double lo = cfg.xmin.value_or(0.0);
    if (!cfg.xmax) throw UsageError("curve needs --xmax or --y");
    const double hi = *cfg.xmax;
    if (!(lo >= 0.0) || !(hi > lo)) throw UsageError("invalid X range");
    for (double x : numerics::linspace(lo, hi, grid_points(cfg, 501))) {
        doc.rows.push_back({x, evaluate_drive(C, x), std::string(to_string(classify_branch(C, x)))});
    }
    return doc;
}

Document cmd_solve(const RunConfig& cfg) {
    const auto p = resolve_params(cfg);
    Document doc;
    doc.command = "solve";
    doc.params = p;
    const Point pt = resolve_point(cfg, p, doc);

    const auto J = build_jacobian(p, pt.X, Regime::full);
    const auto D = build_diffusion(pt.X);
    const bool stable = is_stable(J);
    const auto m = steady_moments(pt.X);
    doc.record["X"] = pt.X;
    doc.record["Y"] = pt.Y;
    doc.record["branch"] = std::string(to_string(pt.branch));
    doc.record["stable"] = stable;
    doc.record["a"] = m.a;
    doc.record["J_minus"] = m.j_minus;
    doc.record["J_z"] = m.j_z;
    if (cfg.format == Format::json) {
        doc.metadata["jacobian"] = matrix_json(J);
        doc.metadata["diffusion"] = matrix_json(D);
    }
    if (!stable) return doc;

    const auto cov = solve_lyapunov(J, D);
    doc.record["lyapunov_residual"] = lyapunov_residual(J, cov, D);
    if (cfg.format == Format::json) doc.metadata["covariance"] = matrix_json(cov);
    doc.columns = {"row", "z", "z*", "nu", "nu*", "mu"};
    for (int r = 0; r < 5; ++r) {
        std::vector<Cell> row{std::string(basis::labels[static_cast<std::size_t>(r)])};
        for (int c = 0; c < 5; ++c) row.emplace_back(cov(r, c));
        doc.rows.push_back(std::move(row));
    }
    return doc;
}

Document cmd_spectrum(const RunConfig& cfg) {
    if (cfg.preset) {
        const auto pr = find_preset(*cfg.preset);
        if (!pr || pr->command != "spectrum") throw UsageError("unknown spectrum preset " + *cfg.preset);
        std::vector<SpectrumColumn> cols;
        for (auto m : pr->methods) {
            cols.push_back({"T_" + std::string(to_string(m)), SpectrumModel::closed_form(m, pr->params, pr->X)});
        }
        auto doc = spectrum_table("spectrum", pr->params, pr->X, symmetric_grid(pr->half_width, pr->points),
                                  std::move(cols), cfg.full_range);
        doc.metadata["preset"] = pr->name;
        doc.metadata["description"] = pr->description;
        return doc;
    }

    const auto p = resolve_params(cfg);
    Document scratch;
    const Point pt = resolve_point(cfg, p, scratch);
    const auto grid = symmetric_grid(cfg.ymax.value_or(30.0), grid_points(cfg, 1201));

    if (cfg.kind == "squeezing") {
        const auto s = squeezing_spectrum_atomic(p, pt.X, grid);
        Document doc;
        doc.command = "spectrum";
        doc.params = p;
        doc.metadata["X"] = pt.X;
        doc.metadata["kind"] = "squeezing";
        doc.metadata["method"] = "weak-closed";
        doc.columns = {"y", "S"};
        for (std::size_t i = 0; i < grid.size(); ++i) doc.rows.push_back({grid[i], s.values[i]});
        append_warnings(doc, s.warnings);
        return doc;
    }

    SpectrumKind kind;
    if (cfg.kind == "atomic") {
        kind = SpectrumKind::atomic;
    } else if (cfg.kind == "forward") {
        kind = SpectrumKind::forward;
    } else {
        throw UsageError("--kind must be atomic, forward or squeezing");
    }
    const auto method = spectrum_method_from_string(cfg.method);
    if (!method) throw UsageError("unknown spectrum method " + cfg.method);

    auto model = *method == SpectrumMethod::numeric_resolvent ? SpectrumModel::numeric(p, pt.X, kind)
                                                              : SpectrumModel::closed_form(*method, p, pt.X);
    if (model.kind() != kind) {
        throw UsageError("method " + cfg.method + " computes a " + std::string(to_string(model.kind())) + " spectrum");
    }
    auto doc = spectrum_table("spectrum", p, pt.X, grid, {{"T", std::move(model)}}, cfg.full_range);
    for (auto it = scratch.metadata.begin(); it != scratch.metadata.end(); ++it) doc.metadata[it.key()] = it.value();
    append_warnings(doc, scratch.warnings);
    return doc;
}

Document cmd_g2(const RunConfig& cfg) {
    if (cfg.preset) {
        const auto pr = find_preset(*cfg.preset);
        if (!pr || pr->command != "g2") throw UsageError("unknown g2 preset " + *cfg.preset);
        const auto grid = numerics::linspace(0.0, pr->half_width, pr->points);
        std::vector<std::pair<std::string, CorrelationSeries>> series;
        for (auto v : pr->variants) {
            series.emplace_back("g2_" + std::string(to_string(v)), g2_closed_form(v, pr->params, pr->X, grid));
        }
        auto doc = g2_table("g2", pr->params, pr->X, grid, series);
        doc.metadata["preset"] = pr->name;
        doc.metadata["description"] = pr->description;
        return doc;
    }

    const auto p = resolve_params(cfg);
    const double tmax = cfg.taumax.value_or(10.0);
    if (!(tmax > 0.0)) throw UsageError("--taumax must be positive");
    const auto grid = numerics::linspace(0.0, tmax, grid_points(cfg, 1001));
    const double X = cfg.X.value_or(0.0);
    if (!(X >= 0.0)) throw UsageError("--X must be nonnegative");

    CorrelationSeries s;
    if (cfg.variant == "numeric") {
        if (!cfg.X) throw UsageError("numeric g2 needs --X");
        s = g2_numeric(p, X, grid);
    } else {
        const auto v = g2_variant_from_string(cfg.variant);
        if (!v) throw UsageError("unknown g2 variant " + cfg.variant);
        s = g2_closed_form(*v, p, X, grid);
    }
    return g2_table("g2", p, X, grid, {{"g2", s}});
}

Document cmd_squeeze(const RunConfig& cfg) {
    const auto p = resolve_params(cfg);
    Document doc;
    doc.command = "squeeze";
    doc.params = p;
    if (!cfg.X) throw UsageError("squeeze needs --X");
    const double X = *cfg.X;
    if (!(X >= 0.0)) throw UsageError("--X must be nonnegative");
    const auto q = quadrature_variances(p, X);
    doc.record["X"] = X;
    doc.record["var_J0"] = q.var_J0;
    doc.record["var_Jpi2"] = q.var_Jpi2;
    doc.record["squeezed"] = q.squeezed;
    doc.record["C_nu*nu"] = q.c_normal;
    doc.record["C_nu*nu*"] = q.c_anomalous;
    if (q.ratio) doc.record["ratio"] = *q.ratio;
    if (q.field_ratio) doc.record["field_ratio"] = *q.field_ratio;
    doc.record["method"] = std::string(to_string(q.method));
    if (auto w = regime_warning(p, X, Regime::weak); w && q.method == VarianceMethod::closed_form) {
        doc.warnings.push_back(*w);
    }
    if (cfg.squeeze_spectrum) {
        const auto grid = symmetric_grid(cfg.ymax.value_or(30.0), grid_points(cfg, 1201));
        const auto s = squeezing_spectrum_atomic(p, X, grid);
        doc.columns = {"y", "S"};
        for (std::size_t i = 0; i < grid.size(); ++i) doc.rows.push_back({grid[i], s.values[i]});
        append_warnings(doc, s.warnings);
    }
    return doc;
}

Document cmd_scatter(const RunConfig& cfg) {
    const bool aux = cfg.aux_g || cfg.aux_kappa;
    if (static_cast<int>(cfg.phase_sum) + static_cast<int>(cfg.flux) + static_cast<int>(aux) != 1) {
        throw UsageError("scatter needs exactly one of --phase-sum, --flux, or --aux-g/--aux-kappa");
    }
    Document doc;
    doc.command = "scatter";

    if (cfg.phase_sum) {
        ScatterGeometry g;
        g.rng_seed = cfg.seed;
        if (cfg.geometry) {
            g.positions = positions_from_json(read_file(*cfg.geometry));
        } else {
            if (!cfg.N) throw UsageError("phase-sum needs --N (or --geometry FILE)");
            if (*cfg.N < 0) throw UsageError("--N must be positive");
            g.positions = sample_cube_positions(static_cast<std::size_t>(*cfg.N), cfg.cube.value_or(50.0), cfg.seed);
            doc.metadata["cube_side"] = cfg.cube.value_or(50.0);
        }
        doc.metadata["N"] = static_cast<long long>(g.positions.size());
        const auto s = phase_sum_monte_carlo(g, cfg.trials);
        doc.record["mean_abs"] = s.mean_abs;
        doc.record["max_abs"] = s.max_abs;
        doc.record["coherent_bound"] = s.coherent_bound;
        doc.record["trials"] = s.trials;
        doc.record["seed"] = s.seed;
        doc.record["min_pair_distance"] = s.min_pair_distance;
        append_warnings(doc, s.warnings);
        return doc;
    }

    if (cfg.flux) {
        if (!cfg.X) throw UsageError("--flux needs --X");
        SystemParams p;
        if (cfg.C || cfg.xi || cfg.params_file || cfg.g_mhz) {
            p = resolve_params(cfg);
            doc.params = p;
        }
        const auto f = side_flux(p, *cfg.X, cfg.theta, cfg.solid_angle);
        doc.record["X"] = *cfg.X;
        doc.record["theta"] = cfg.theta;
        doc.record["solid_angle"] = cfg.solid_angle;
        doc.record["shape"] = f.shape;
        doc.record["flux_per_gamma_N"] = f.flux;
        doc.record["weak_form_per_gamma_N"] = f.weak_form;
        doc.record["emission_rate_per_gamma_N"] = f.emission_rate;
        return doc;
    }

    if (!cfg.aux_g || !cfg.aux_kappa) throw UsageError("--aux-g and --aux-kappa must be given together");
    const auto p = resolve_params(cfg);
    Document scratch;
    const Point pt = resolve_point(cfg, p, scratch);
    const AuxiliaryChannel ch{*cfg.aux_g, *cfg.aux_kappa};
    const auto grid = symmetric_grid(cfg.ymax.value_or(30.0), grid_points(cfg, 1201));
    const auto s = auxiliary_spectrum(ch, p, pt.X, grid);
    doc.params = p;
    doc.metadata = scratch.metadata;
    doc.metadata["prefactor"] = auxiliary_prefactor(ch);
    if (p.raw) {
        const auto v = auxiliary_validity(ch, p.raw->g);
        doc.metadata["strong_damping"] = v.strong_damping;
        doc.metadata["weak_coupling"] = v.weak_coupling;
    }
    doc.columns = {"y", "T"};
    for (std::size_t i = 0; i < grid.size(); ++i) doc.rows.push_back({grid[i], s.values[i]});
    append_warnings(doc, s.warnings);
    append_warnings(doc, scratch.warnings);
    return doc;
}

Document cmd_preset(const RunConfig& cfg) {
    if (cfg.list || !cfg.preset) {
        Document doc;
        doc.command = "preset";
        doc.columns = {"name", "command", "description"};
        for (const auto& p : presets()) doc.rows.push_back({p.name, p.command, p.description});
        return doc;
    }
    const auto pr = find_preset(*cfg.preset);
    if (!pr) throw UsageError("unknown preset " + *cfg.preset);
    return pr->command == "spectrum" ? cmd_spectrum(cfg) : cmd_g2(cfg);
}

Document dispatch(const RunConfig& cfg) {
    if (cfg.command == "curve") return cmd_curve(cfg);
    if (cfg.command == "solve") return cmd_solve(cfg);
    if (cfg.command == "spectrum") return cmd_spectrum(cfg);
    if (cfg.command == "g2") return cmd_g2(cfg);
    if (cfg.command == "squeeze") return cmd_squeeze(cfg);
    if (cfg.command == "scatter") return cmd_scatter(cfg);
    if (cfg.command == "preset") return cmd_preset(cfg);
    throw UsageError("unknown command " + cfg.command);
}

}  // namespace obist::cli
