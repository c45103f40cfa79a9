// main.cpp: obist command-line entry point
#include "commands.hpp"
#include "output.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitRegime = 4;

void add_point_options(CLI::App* sub, obist::cli::RunConfig& cfg) {
    sub->add_option("--X", cfg.X, "Scaled intracavity amplitude");
    sub->add_option("--y", cfg.Y, "Scaled drive amplitude Y");
    sub->add_option("--branch", cfg.branch, "Root selector when --y has several roots")
        ->check(CLI::IsMember({"lower", "upper", "middle", "monostable", "turning"}));
}

}  // namespace

int main(int argc, char** argv) {
    using namespace obist::cli;
    RunConfig cfg;

    CLI::App app{"Linearized quantum fluctuations of absorptive optical bistability"};
    app.set_version_flag("--version", std::string("obist ") + OBIST_VERSION);
    app.require_subcommand(1);
    app.fallthrough();

    app.add_option("--params", cfg.params_file, "JSON parameter file")->check(CLI::ExistingFile);
    app.add_option("--C", cfg.C, "Cooperativity C");
    app.add_option("--xi", cfg.xi, "Rate ratio xi = 2 kappa / gamma");
    app.add_option("--N", cfg.N, "Atom number");
    app.add_option("--g-mhz", cfg.g_mhz, "Coupling g / 2pi in MHz");
    app.add_option("--kappa-mhz", cfg.kappa_mhz, "Cavity decay kappa / 2pi in MHz");
    app.add_option("--gamma-mhz", cfg.gamma_mhz, "Atomic decay gamma / 2pi in MHz");
    app.add_option("--out", cfg.out, "Output path (default: standard output)");
    std::map<std::string, Format> formats{{"csv", Format::csv}, {"json", Format::json}};
    app.add_option("--format", cfg.format, "Output format")->transform(CLI::CheckedTransformer(formats));
    app.add_option("--seed", cfg.seed, "Random seed");

    auto* curve = app.add_subcommand("curve", "Bistability curve Y(X) and turning points");
    curve->add_option("--xmin", cfg.xmin, "Smallest X");
    curve->add_option("--xmax", cfg.xmax, "Largest X");
    curve->add_option("--y", cfg.Y, "Solve the state equation at this drive instead");
    curve->add_option("--points", cfg.points, "Grid points");

    auto* solve = app.add_subcommand("solve", "Operating point, drift, diffusion and covariance");
    add_point_options(solve, cfg);

    auto* spectrum = app.add_subcommand("spectrum", "Incoherent spectrum");
    add_point_options(spectrum, cfg);
    spectrum->add_option("--kind", cfg.kind, "atomic | forward | squeezing");
    spectrum->add_option("--method", cfg.method,
                         "numeric | weak-closed | bad-cavity | good-cavity | strong-coupling | upper-branch | "
                         "upper-forward-lorentzian | upper-forward-bad-cavity");
    spectrum->add_option("--ymax", cfg.ymax, "Half-width of the frequency grid");
    spectrum->add_option("--points", cfg.points, "Grid points");
    spectrum->add_option("--preset", cfg.preset, "fig1a | fig1b | fig1c | fig1d");
    spectrum->add_flag("--full-range", cfg.full_range, "Do not truncate series to their validity window");

    auto* g2 = app.add_subcommand("g2", "Second-order correlation function");
    add_point_options(g2, cfg);
    g2->add_option("--variant", cfg.variant,
                   "atomic-weak | atomic-weak-recast | forward-weak | single-atom-pure-state | side-large-C | "
                   "atomic-impedance | forward-impedance | atomic-strong | numeric");
    g2->add_option("--taumax", cfg.taumax, "Largest scaled delay");
    g2->add_option("--points", cfg.points, "Grid points");
    g2->add_option("--preset", cfg.preset, "fig2a | fig2b");

    auto* squeeze = app.add_subcommand("squeeze", "Quadrature variances and squeezing");
    squeeze->add_option("--X", cfg.X, "Scaled intracavity amplitude");
    squeeze->add_flag("--spectrum", cfg.squeeze_spectrum, "Also emit the squeezing spectrum");
    squeeze->add_option("--ymax", cfg.ymax, "Half-width of the frequency grid");
    squeeze->add_option("--points", cfg.points, "Grid points");

    auto* scatter = app.add_subcommand("scatter", "Side scattering, phase sums, auxiliary channel");
    add_point_options(scatter, cfg);
    scatter->add_flag("--phase-sum", cfg.phase_sum, "Monte Carlo of the random-phase sum");
    scatter->add_flag("--flux", cfg.flux, "Side-scattered incoherent flux");
    scatter->add_option("--cube", cfg.cube, "Cube side in wavelengths for sampled positions");
    scatter->add_option("--trials", cfg.trials, "Sampled directions");
    scatter->add_option("--geometry", cfg.geometry, "JSON list of [x, y, z] positions")->check(CLI::ExistingFile);
    scatter->add_option("--theta", cfg.theta, "Polar angle in radians");
    scatter->add_option("--solid-angle", cfg.solid_angle, "Solid angle in steradians");
    scatter->add_option("--aux-g", cfg.aux_g, "Auxiliary coupling");
    scatter->add_option("--aux-kappa", cfg.aux_kappa, "Auxiliary decay");
    scatter->add_option("--ymax", cfg.ymax, "Half-width of the frequency grid");
    scatter->add_option("--points", cfg.points, "Grid points");

    auto* preset = app.add_subcommand("preset", "Figure-reproduction presets");
    preset->add_option("name", cfg.preset, "fig1a | fig1b | fig1c | fig1d | fig2a | fig2b");
    preset->add_flag("--list", cfg.list, "List presets");
    preset->add_flag("--full-range", cfg.full_range, "Do not truncate series to their validity window");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }
    cfg.command = app.get_subcommands().front()->get_name();

    try {
        const Document doc = dispatch(cfg);
        std::ofstream file;
        if (cfg.out) {
            file.open(*cfg.out);
            if (!file) throw UsageError("cannot write " + *cfg.out);
        }
        std::ostream& os = cfg.out ? static_cast<std::ostream&>(file) : std::cout;
        if (cfg.format == Format::json) {
            write_json(os, doc);
        } else {
            write_csv(os, doc);
            for (const auto& w : doc.warnings) std::cerr << "warning: " << w << '\n';
        }
        return 0;
    } catch (const obist::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const obist::RegimeError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRegime;
    } catch (const obist::NumericalError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const obist::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumerical;
    }
}
