// Command-line front end: simulate | spectrum | qfunc | validate | map-rabi.
//
// Exit codes: 0 success, 2 configuration error, 3 truncation overflow,
// 4 singular mapping, 5 validation failure.

#include "dicke/config.hpp"
#include "dicke/emit.hpp"
#include "dicke/model.hpp"
#include "dicke/observables.hpp"
#include "dicke/oracle.hpp"
#include "dicke/propagator.hpp"
#include "dicke/rabi.hpp"
#include "dicke/state.hpp"
#include "dicke/tridiag.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>

namespace {

using namespace dicke;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitTruncation = 3;
constexpr int kExitSingular = 4;
constexpr int kExitValidation = 5;

struct CommonArgs {
    std::string config_path;
    std::vector<std::string> overrides;
    int workers = 0;
};

Config load_config(const CommonArgs& args) {
    Config cfg = args.config_path.empty() ? Config{} : Config::parse_file(args.config_path);
    for (const std::string& ov : args.overrides) cfg.set_override(ov);
    if (args.workers > 0) cfg.set_override("run.workers=" + std::to_string(args.workers));
    return cfg;
}

void add_common(CLI::App* sub, CommonArgs& args) {
    sub->add_option("-c,--config", args.config_path, "configuration file (INI sections)");
    sub->add_option("--set", args.overrides, "override, e.g. --set model.kerr=0.5")
        ->take_all();
    sub->add_option("--workers", args.workers, "worker threads (default: all cores)");
}

std::vector<ObservableRow> scan_observables(const AmplitudeTable& state0,
                                            const std::vector<double>& times,
                                            const ModelParams& params, int workers) {
    std::vector<ObservableRow> rows(times.size());
    const double excitation0 = mean_photon(state0) + mean_jz(state0);
    evolution_scan(state0, times, params, workers,
                   [&](std::size_t i, const AmplitudeTable& psi) {
                       rows[i] = {times[i], population_inversion(psi, excitation0),
                                  mean_photon(psi), purity_deficit(psi), entropy(psi)};
                   });
    return rows;
}

int cmd_simulate(const CommonArgs& args) {
    const Config cfg = load_config(args);
    const RunConfig run = RunConfig::from_config(cfg);
    const AmplitudeTable state0 = initial_state(run);
    const std::vector<double> times = run.time_grid();
    const std::vector<ObservableRow> rows =
        scan_observables(state0, times, run.model, run.resolved_workers());
    write_series_csv(run.output_prefix + "_series.csv", rows);
    std::map<std::string, double> extras{
        {"excitation0", mean_photon(state0) + mean_jz(state0)},
        {"initial_norm", state0.norm_sq()},
        {"p_max", static_cast<double>(state0.p_max)}};
    if (run.amplitudes_csv.empty())
        extras["tail_mass_discarded"] = coherent_tail_mass(run.alpha, state0.p_max);
    write_run_json(run.output_prefix + "_run.json", cfg, extras);
    std::cout << "wrote " << run.output_prefix << "_series.csv (" << rows.size()
              << " time points)\n";
    return kExitOk;
}

int cmd_spectrum(const CommonArgs& args) {
    const Config cfg = load_config(args);
    const RunConfig run = RunConfig::from_config(cfg);
    const int s_max = cfg.get_int("spectrum.s_max", 40);
    if (s_max < 0) throw config_error("spectrum.s_max must be >= 0");
    std::vector<Eigensystem> sectors(s_max + 1);
    const EvolutionContext ctx(run.model, s_max, run.resolved_workers());
    for (int s = 0; s <= s_max; ++s) sectors[s] = ctx.sector(s);
    write_spectrum_csv(run.output_prefix + "_spectrum.csv", sectors, run.model);
    write_run_json(run.output_prefix + "_run.json", cfg,
                   {{"s_max", static_cast<double>(s_max)}});
    std::cout << "wrote " << run.output_prefix << "_spectrum.csv (sectors 0.." << s_max
              << ")\n";
    return kExitOk;
}

// Entropy minimum over the grid, skipping the initial transient (first 10%
// of the points); snapshots default to that time and its half and quarter.
std::vector<double> auto_snapshots(const std::vector<ObservableRow>& rows) {
    const std::size_t skip = std::max<std::size_t>(1, rows.size() / 10);
    std::size_t best = skip;
    for (std::size_t i = skip; i < rows.size(); ++i)
        if (rows[i].entropy < rows[best].entropy) best = i;
    const double t_min = rows[best].t;
    return {t_min / 4.0, t_min / 2.0, t_min};
}

int cmd_qfunc(const CommonArgs& args) {
    const Config cfg = load_config(args);
    const RunConfig run = RunConfig::from_config(cfg);
    const AmplitudeTable state0 = initial_state(run);
    const int workers = run.resolved_workers();
    const std::vector<double> times = run.time_grid();
    const std::vector<ObservableRow> rows = scan_observables(state0, times, run.model, workers);
    write_series_csv(run.output_prefix + "_series.csv", rows);

    std::vector<double> snaps = run.snapshot_times;
    if (snaps.empty()) snaps = auto_snapshots(rows);

    QGridSpec spec;
    spec.center = run.grid_center.value_or(run.alpha);
    spec.half_width =
        run.grid_half_width > 0.0 ? run.grid_half_width : std::abs(spec.center) + 4.0;
    spec.resolution = run.grid_resolution;

    std::map<std::string, double> extras;
    for (std::size_t i = 0; i < snaps.size(); ++i) {
        const AmplitudeTable psi = evolve(state0, snaps[i], run.model, workers);
        const QGrid grid = husimi_q(psi, spec, workers);
        const std::string base = run.output_prefix + "_q" + std::to_string(i);
        write_qgrid(base + ".csv", base + ".json", grid, snaps[i]);
        extras["snapshot_t_" + std::to_string(i)] = snaps[i];
        extras["snapshot_lobes_" + std::to_string(i)] =
            static_cast<double>(count_local_maxima(grid));
        std::cout << "wrote " << base << ".csv  t=" << snaps[i]
                  << "  local maxima=" << count_local_maxima(grid) << "\n";
    }
    write_run_json(run.output_prefix + "_run.json", cfg, extras);
    return kExitOk;
}

int cmd_validate(const CommonArgs& args) {
    const Config cfg = load_config(args);
    const RunConfig run = RunConfig::from_config(cfg);
    const int p_cut = cfg.get_int("validate.p_cut", 40);
    const int p_support = cfg.get_int("validate.p_support", 12);
    const double t = cfg.get_double("validate.t", 1.0);
    const int workers = run.resolved_workers();
    const int N = run.model.n_qubits;
    if (N > 4) throw config_error("validate uses a dense reference; n_qubits must be <= 4");
    if (p_support + N >= p_cut)
        throw config_error("validate.p_support must leave headroom below validate.p_cut");

    // random normalized state supported on p <= p_support
    std::mt19937_64 rng(cfg.get_int("validate.seed", 7));
    std::normal_distribution<double> gauss;
    AmplitudeTable state0(N, p_cut);
    for (int p = 0; p <= p_support; ++p)
        for (int m = 0; m <= N; ++m) state0.at(p, m) = {gauss(rng), gauss(rng)};
    state0.normalize();

    const DenseOperator h = dense_hamiltonian(run.model, p_cut);
    const Eigen::VectorXcd ref = dense_evolve(h, to_dense(state0, p_cut), t);
    const AmplitudeTable fast = evolve(state0, t, run.model, workers);

    double dev_fast = 0.0;
    for (int p = 0; p <= p_cut; ++p)
        for (int m = 0; m <= N; ++m) {
            const cdouble v = (p <= fast.p_max) ? fast.at(p, m) : cdouble{0.0, 0.0};
            dev_fast = std::max(dev_fast, std::abs(v - ref(h.index(p, m))));
        }

    // two-factor propagator under both sign conventions, compared on the
    // interior support (truncation-edge columns are index-shift artifacts)
    double dev_fact2 = 0.0, dev_fact3 = 0.0;
    for (AuxConvention conv : {AuxConvention::mirrored, AuxConvention::kernel}) {
        const DenseOperator u = factorized_propagator(run.model, p_cut, t, conv);
        const Eigen::VectorXcd got = u.mat * to_dense(state0, p_cut);
        double dev = 0.0;
        for (int p = 0; p <= p_support + N; ++p)
            for (int m = 0; m <= N; ++m)
                dev = std::max(dev, std::abs(got(h.index(p, m)) - ref(h.index(p, m))));
        (conv == AuxConvention::mirrored ? dev_fact2 : dev_fact3) = dev;
    }

    const double tol = cfg.get_double("validate.tol", 1e-8);
    std::printf("sector path vs dense reference : %.3e  (tol %.1e)\n", dev_fast, tol);
    std::printf("two-factor, convention A       : %.3e\n", dev_fact2);
    std::printf("two-factor, convention B       : %.3e\n", dev_fact3);
    std::printf("norm drift                     : %.3e\n",
                std::abs(fast.norm_sq() - state0.norm_sq()));
    const bool factor_ok = std::min(dev_fact2, dev_fact3) < tol;
    std::printf("two-factor form matches under at least one convention: %s\n",
                factor_ok ? "yes" : "no");
    if (!run.output_prefix.empty())
        write_run_json(run.output_prefix + "_validate.json", cfg,
                       {{"dev_sector_path", dev_fast},
                        {"dev_factorized_a", dev_fact2},
                        {"dev_factorized_b", dev_fact3}});
    if (dev_fast > tol) {
        std::cerr << "validation failure: sector path deviates from the dense reference\n";
        return kExitValidation;
    }
    return kExitOk;
}

int cmd_map_rabi(const CommonArgs& args) {
    const Config cfg = load_config(args);
    const RabiConfig rc = RabiConfig::from_config(cfg);
    const RunConfig run_defaults = RunConfig::from_config(cfg);  // for output prefix
    const int p_cut = cfg.get_int("rabi.p_cut", 40);
    const int s_max = cfg.get_int("rabi.s_max", 12);
    const int n_low = cfg.get_int("rabi.n_low", 6);

    const MappingReport rep = effective_params(rc.rabi, rc.threshold);

    // effective spectrum: sector eigenvalues plus the rotating-frame
    // offset omega_f (s - N/2)
    std::vector<double> mapped;
    for (int s = 0; s <= s_max; ++s) {
        const Eigensystem eig = diagonalize(build_sector(s, rep.effective));
        for (double w : eig.eigenvalues)
            mapped.push_back(w + rc.rabi.omega_f * (s - 0.5 * rc.rabi.n_qubits));
    }
    std::sort(mapped.begin(), mapped.end());

    const DenseOperator h = dense_rabi_hamiltonian(rc.rabi, p_cut);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h.mat,
                                                           Eigen::EigenvaluesOnly);
    double discrepancy = 0.0;
    for (int k = 0; k < n_low && k < static_cast<int>(mapped.size()); ++k)
        discrepancy = std::max(discrepancy, std::abs(mapped[k] - solver.eigenvalues()(k)));

    nlohmann::json doc;
    doc["effective"] = {{"n_qubits", rep.effective.n_qubits},
                        {"detuning", rep.effective.detuning},
                        {"kerr", rep.effective.kerr},
                        {"qubit_qubit", rep.effective.qubit_qubit},
                        {"coupling", rep.effective.coupling}};
    doc["squeeze_ratio"] = rep.squeeze_ratio;
    doc["rotation_ratio"] = rep.rotation_ratio;
    doc["nonlinearity_ratio"] = rep.nonlinearity_ratio;
    doc["threshold"] = rep.threshold;
    doc["squeeze_ok"] = rep.squeeze_ok;
    doc["rotation_ok"] = rep.rotation_ok;
    doc["nonlinearity_ok"] = rep.nonlinearity_ok;
    doc["all_ok"] = rep.all_ok();
    if (rep.critical_coupling) doc["critical_coupling"] = *rep.critical_coupling;
    doc["low_spectrum_discrepancy"] = discrepancy;
    doc["config_hash"] = config_hash(cfg);

    const std::string out = run_defaults.output_prefix + "_mapping.json";
    {
        std::ofstream f(out);
        if (!f) throw std::runtime_error("cannot write '" + out + "'");
        f << doc.dump(2) << '\n';
    }
    std::printf("delta=%.6g  gamma=%.6g  lambda=%.6g\n", rep.effective.detuning,
                rep.effective.qubit_qubit, rep.effective.coupling);
    std::printf("squeeze %.3g  rotation %.3g  nonlinearity %.3g  (threshold %.3g)  ok=%s\n",
                rep.squeeze_ratio, rep.rotation_ratio, rep.nonlinearity_ratio, rep.threshold,
                rep.all_ok() ? "yes" : "no");
    if (rep.critical_coupling)
        std::printf("critical coupling g_c = %.6g\n", *rep.critical_coupling);
    std::printf("low-spectrum discrepancy vs dense lab-frame model: %.3e\n", discrepancy);
    std::cout << "wrote " << out << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sector-diagonalization engine for the generalized Dicke model"};
    app.require_subcommand(1);

    CommonArgs sim_args, spec_args, q_args, val_args, map_args;
    int (*handler)(const CommonArgs&) = nullptr;
    const CommonArgs* chosen = nullptr;

    auto* sim = app.add_subcommand("simulate", "observable time series");
    add_common(sim, sim_args);
    sim->callback([&] { handler = cmd_simulate; chosen = &sim_args; });

    auto* spec = app.add_subcommand("spectrum", "sector-by-sector eigenvalues");
    add_common(spec, spec_args);
    spec->callback([&] { handler = cmd_spectrum; chosen = &spec_args; });

    auto* qf = app.add_subcommand("qfunc", "Husimi Q snapshots of the field");
    add_common(qf, q_args);
    qf->callback([&] { handler = cmd_qfunc; chosen = &q_args; });

    auto* val = app.add_subcommand("validate", "cross-check against the dense reference");
    add_common(val, val_args);
    val->callback([&] { handler = cmd_validate; chosen = &val_args; });

    auto* mr = app.add_subcommand("map-rabi", "lab-frame Rabi to effective-model mapping");
    add_common(mr, map_args);
    mr->callback([&] { handler = cmd_map_rabi; chosen = &map_args; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        return handler(*chosen);
    } catch (const config_error& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const truncation_error& e) {
        std::cerr << "truncation overflow: " << e.what() << "\n";
        return kExitTruncation;
    } catch (const std::domain_error& e) {
        std::cerr << "singular mapping: " << e.what() << "\n";
        return kExitSingular;
    } catch (const std::invalid_argument& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
