// Command-line surface for the combinatorial compressed-sensing toolkit:
// matrix/signal generation, single-shot decoding, expansion certification,
// phase-transition sweeps, and the timing scaling study.
//
// Exit codes: 0 success (decode: converged), 2 clean decoder
// non-convergence, 1 usage or I/O errors.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ccs/decoders.hpp"
#include "ccs/expander_matrix.hpp"
#include "ccs/harness.hpp"
#include "ccs/io.hpp"
#include "ccs/rng.hpp"
#include "ccs/signal_model.hpp"

using nlohmann::json;

namespace {

json report_to_json(const ccs::ExpanderMatrix& A, const ccs::DecodeConfig& cfg,
                    const ccs::DecodeReport& rep, std::optional<bool> exact,
                    std::uint64_t seed, bool scaled) {
    json j;
    j["matrix"] = {{"m", A.rows()}, {"n", A.cols()}, {"d", A.degree()}};
    j["config"] = {
        {"algorithm", ccs::to_string(cfg.algorithm)},
        {"alpha", cfg.alpha},
        {"c", cfg.c},
        {"k_budget", cfg.k_budget},
        {"tol", cfg.tol},
        {"value_match_tol", cfg.value_match_tol},
        {"shifted", cfg.shifted ? json(*cfg.shifted) : json()},
        {"exact_mode", cfg.exact_mode},
        {"max_iters", cfg.max_iters},
        {"seed", seed},
        {"scale_columns", scaled},
    };
    j["converged"] = rep.converged;
    j["exact"] = exact ? json(*exact) : json();
    j["iterations"] = rep.iterations;
    j["wall_time_s"] = rep.wall_time;
    j["residual_l2_history"] = rep.residual_l2_history;
    j["residual_l0_history"] = rep.residual_l0_history;
    return j;
}

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == ',') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

struct SweepCli {
    std::string config_path, out_dir = ".", algorithms, deltas, kind = "gaussian-dissociated", mode = "transition";
    ccs::SweepConfig cfg;
    bool emit_plotdata = false;
    bool json_out = false;
};

void load_sweep_config_file(ccs::SweepConfig& cfg, const std::string& path) {
    const json j = json::parse(ccs::read_file_bytes(path));
    if (j.contains("n")) cfg.n = j["n"].get<std::uint32_t>();
    if (j.contains("d")) cfg.d = j["d"].get<std::uint32_t>();
    if (j.contains("algorithms")) {
        cfg.algorithms.clear();
        for (const auto& a : j["algorithms"]) {
            const auto alg = ccs::algorithm_from_string(a.get<std::string>());
            if (!alg) throw std::invalid_argument("unknown algorithm in config: " + a.get<std::string>());
            cfg.algorithms.push_back(*alg);
        }
    }
    if (j.contains("deltas")) cfg.delta_grid = j["deltas"].get<std::vector<double>>();
    if (j.contains("rho_start")) cfg.rho_start = j["rho_start"].get<double>();
    if (j.contains("rho_step")) cfg.rho_step = j["rho_step"].get<double>();
    if (j.contains("rho_cap")) cfg.rho_cap = j["rho_cap"].get<double>();
    if (j.contains("trials_per_cell")) cfg.trials_per_cell = j["trials_per_cell"].get<std::uint32_t>();
    if (j.contains("success_rule")) cfg.success_rule = j["success_rule"].get<std::uint32_t>();
    if (j.contains("tol")) cfg.tol = j["tol"].get<double>();
    if (j.contains("alpha")) cfg.alpha = j["alpha"].get<double>();
    if (j.contains("kind")) {
        const auto k = ccs::signal_kind_from_string(j["kind"].get<std::string>());
        if (!k) throw std::invalid_argument("unknown signal kind in config");
        cfg.kind = *k;
    }
    if (j.contains("band")) cfg.band = j["band"].get<double>();
    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("jobs")) cfg.jobs = j["jobs"].get<std::uint32_t>();
    if (j.contains("rho_count")) cfg.rho_count = j["rho_count"].get<std::uint32_t>();
    if (j.contains("max_iters")) cfg.max_iters = j["max_iters"].get<std::uint64_t>();
}

int run_sweep(const SweepCli& opt) {
    const ccs::SweepConfig& cfg = opt.cfg;
    const std::string hash = ccs::config_hash(cfg);
    std::filesystem::create_directories(opt.out_dir);

    std::vector<ccs::CellRecord> cells;
    json summary;
    summary["seed"] = cfg.seed;
    summary["config_hash"] = hash;
    summary["config"] = ccs::config_canonical(cfg);
    summary["transitions"] = json::array();

    if (opt.mode == "fastest") {
        const auto map = ccs::fastest_map(cfg);
        std::string map_text = "delta,rho,algorithm,mean_time_ms\n";
        for (const auto& cell : map) {
            for (const auto& rec : cell.per_algorithm) cells.push_back(rec);
            map_text += ccs::format_double(cell.delta) + "," + ccs::format_double(cell.rho) + ",";
            map_text += cell.any ? ccs::to_string(cell.fastest) : "none";
            map_text += "," + (cell.any ? ccs::format_double(cell.mean_time_ms) : std::string("nan")) + "\n";
        }
        ccs::write_file_bytes(opt.out_dir + "/fastest_" + hash + ".csv", map_text);
    } else {
        std::vector<std::pair<ccs::LadderRecord, ccs::TransitionFit>> fits;
        for (ccs::Algorithm alg : cfg.algorithms) {
            for (double delta : cfg.delta_grid) {
                std::cerr << "sweep: " << ccs::to_string(alg) << " delta=" << delta << "\n";
                ccs::LadderRecord ladder = ccs::climb_rho(cfg, delta, alg);
                for (const auto& r : ladder.rungs) cells.push_back(r);
                const ccs::TransitionFit fit = ccs::fit_transition(ladder);
                summary["transitions"].push_back({{"algorithm", ccs::to_string(alg)},
                                                  {"delta", delta},
                                                  {"rho_star", fit.rho_star},
                                                  {"slope", fit.slope},
                                                  {"degenerate", fit.degenerate},
                                                  {"extrapolated", fit.extrapolated}});
                fits.emplace_back(std::move(ladder), fit);
            }
        }
        if (opt.emit_plotdata) {
            // per-algorithm transition curves (delta, rho_star), plus
            // iteration and timing profiles per ladder (rho on x)
            for (ccs::Algorithm alg : cfg.algorithms) {
                std::string transitions;
                for (const auto& [ladder, fit] : fits)
                    if (ladder.algorithm == alg)
                        transitions += ccs::format_double(ladder.delta) + " " +
                                       ccs::format_double(fit.rho_star) + "\n";
                ccs::write_file_bytes(opt.out_dir + "/plot_transition_" + std::string(ccs::to_string(alg)) +
                                          "_" + hash + ".dat",
                                      transitions);
            }
            for (const auto& [ladder, fit] : fits) {
                std::string iters, times;
                for (const auto& r : ladder.rungs) {
                    if (!r.successes) continue;
                    iters += ccs::format_double(r.rho) + " " + ccs::format_double(r.mean_iters) + "\n";
                    times += ccs::format_double(r.rho) + " " + ccs::format_double(r.mean_time_ms) + "\n";
                }
                const std::string tag = std::string(ccs::to_string(ladder.algorithm)) + "_delta" +
                                        ccs::format_double(ladder.delta) + "_" + hash;
                ccs::write_file_bytes(opt.out_dir + "/plot_iterations_" + tag + ".dat", iters);
                ccs::write_file_bytes(opt.out_dir + "/plot_time_" + tag + ".dat", times);
            }
        }
    }

    ccs::write_file_bytes(opt.out_dir + "/sweep_" + hash + ".csv", ccs::cells_to_csv(cells));
    ccs::write_file_bytes(opt.out_dir + "/sweep_" + hash + ".json", summary.dump(2) + "\n");
    if (opt.json_out)
        std::cout << summary.dump(2) << std::endl;
    else
        std::cout << "sweep complete: " << cells.size() << " cells, artifacts in " << opt.out_dir
                  << " (hash " << hash << ")" << std::endl;
    return 0;
}

} // namespace

int main(int argc, char** argv) try {
    CLI::App app{"ccs: expander-matrix combinatorial compressed sensing toolkit"};
    app.require_subcommand(1);

    // --- gen-matrix ---
    auto* gen_matrix = app.add_subcommand("gen-matrix", "generate an expander measurement matrix");
    std::uint32_t gm_m = 0, gm_n = 0, gm_d = 7;
    std::uint64_t gm_seed = 1;
    std::string gm_out;
    bool gm_binary = false, gm_json = false;
    gen_matrix->add_option("-m", gm_m, "rows (measurements)")->required();
    gen_matrix->add_option("-n", gm_n, "columns (signal length)")->required();
    gen_matrix->add_option("-d", gm_d, "ones per column (left degree)");
    gen_matrix->add_option("--seed", gm_seed, "rng seed");
    gen_matrix->add_option("-o,--out", gm_out, "output path")->required();
    gen_matrix->add_flag("--binary", gm_binary, "write the compact binary form");
    gen_matrix->add_flag("--json", gm_json, "machine-readable output");

    // --- gen-signal ---
    auto* gen_signal = app.add_subcommand("gen-signal", "generate a sparse test signal");
    std::uint32_t gs_n = 0, gs_k = 0;
    std::uint64_t gs_seed = 1;
    double gs_band = 0.0;
    std::string gs_kind = "gaussian-dissociated", gs_out;
    bool gs_json = false;
    gen_signal->add_option("-n", gs_n, "ambient dimension")->required();
    gen_signal->add_option("-k", gs_k, "sparsity")->required();
    gen_signal->add_option("--kind", gs_kind, "gaussian-dissociated | banded | integer");
    gen_signal->add_option("--band", gs_band, "fraction of equal nonzeros (banded)");
    gen_signal->add_option("--seed", gs_seed, "rng seed");
    gen_signal->add_option("-o,--out", gs_out, "output path")->required();
    gen_signal->add_flag("--json", gs_json, "machine-readable output");

    // --- decode ---
    auto* dec = app.add_subcommand("decode", "recover a sparse vector from y = Ax");
    std::string dc_matrix, dc_y, dc_signal, dc_alg = "parallel-l0", dc_out;
    double dc_alpha = 2.0, dc_tol = 1e-6, dc_vmtol = 1e-10, dc_c = 2.0;
    std::uint32_t dc_k = 0;
    std::uint64_t dc_max = 0, dc_seed = 1;
    bool dc_shifted = false, dc_majority = false, dc_exact_mode = false, dc_scale = false, dc_json = false;
    dec->add_option("--matrix", dc_matrix, "matrix file")->required();
    dec->add_option("--y", dc_y, "measurement file (signal format over [0, m))");
    dec->add_option("--signal", dc_signal, "ground-truth signal file; y is synthesized");
    dec->add_option("-a,--algorithm", dc_alg, "serial-l0|parallel-l0|parallel-lddsr|lddsr|er|smp|ssmp");
    dec->add_option("--alpha", dc_alpha, "l0-reduction threshold in (1, d]");
    dec->add_option("--tol", dc_tol, "relative l2 convergence tolerance");
    dec->add_option("--value-match-tol", dc_vmtol, "relative tolerance for value matching");
    dec->add_option("-k", dc_k, "sparsity budget (required by smp/ssmp)");
    dec->add_option("-c", dc_c, "ssmp relaxation factor (> 1)");
    dec->add_option("--max-iters", dc_max, "iteration budget (0 = default)");
    dec->add_option("--seed", dc_seed, "seed for column scaling");
    dec->add_flag("--shifted", dc_shifted, "force the shifted score");
    dec->add_flag("--majority", dc_majority, "force the majority score");
    dec->add_flag("--exact-mode", dc_exact_mode, "converge on an exactly zero residual");
    dec->add_flag("--scale-columns", dc_scale, "decode with dissociated column scales (needs --signal)");
    dec->add_option("-o,--report", dc_out, "write the JSON report here");
    dec->add_flag("--json", dc_json, "print the JSON report to stdout");

    // --- certify ---
    auto* cert = app.add_subcommand("certify", "exhaustively certify expansion quality");
    std::string ct_matrix;
    std::uint32_t ct_k = 2;
    bool ct_override = false, ct_json = false;
    cert->add_option("--matrix", ct_matrix, "matrix file")->required();
    cert->add_option("-k", ct_k, "max subset size to enumerate");
    cert->add_flag("--override-budget", ct_override, "enumerate even when over the default budget");
    cert->add_flag("--json", ct_json, "machine-readable output");

    // --- sweep ---
    // Precedence: flags > config file > built-in defaults. Flag values land
    // in a scratch config and are copied over the file-loaded one only when
    // explicitly given.
    auto* sweep = app.add_subcommand("sweep", "phase-transition / fastest-algorithm sweeps");
    SweepCli sw;
    ccs::SweepConfig sw_flags;
    std::uint64_t sw_seed = 1;
    sweep->add_option("--config", sw.config_path, "JSON config file (flags override it)");
    auto* o_n = sweep->add_option("--n", sw_flags.n, "problem size");
    auto* o_d = sweep->add_option("--d", sw_flags.d, "left degree");
    auto* o_algs = sweep->add_option("--algorithms", sw.algorithms, "comma-separated algorithm list");
    auto* o_deltas = sweep->add_option("--deltas", sw.deltas, "comma-separated m/n values");
    auto* o_rs = sweep->add_option("--rho-start", sw_flags.rho_start, "rho ladder start");
    auto* o_rp = sweep->add_option("--rho-step", sw_flags.rho_step, "rho ladder step");
    auto* o_rc = sweep->add_option("--rho-cap", sw_flags.rho_cap, "rho ladder ceiling");
    auto* o_tr = sweep->add_option("--trials", sw_flags.trials_per_cell, "trials per cell");
    auto* o_sr = sweep->add_option("--success-rule", sw_flags.success_rule, "min successes to advance");
    auto* o_tol = sweep->add_option("--tol", sw_flags.tol, "recovery tolerance");
    auto* o_al = sweep->add_option("--alpha", sw_flags.alpha, "l0 decoder alpha");
    auto* o_kind = sweep->add_option("--kind", sw.kind, "signal kind");
    auto* o_band = sweep->add_option("--band", sw_flags.band, "banded fraction");
    auto* o_seed = sweep->add_option("--seed", sw_seed, "master seed");
    auto* o_jobs = sweep->add_option("--jobs", sw_flags.jobs, "concurrent trial jobs");
    auto* o_rn = sweep->add_option("--rho-count", sw_flags.rho_count, "fastest-map grid length");
    auto* o_mi = sweep->add_option("--max-iters", sw_flags.max_iters, "decoder budget override");
    sweep->add_option("--mode", sw.mode, "transition | fastest");
    sweep->add_option("--out-dir", sw.out_dir, "artifact directory");
    sweep->add_flag("--emit-plotdata", sw.emit_plotdata, "write per-figure (x, y) data files");
    sweep->add_flag("--json", sw.json_out, "print the JSON summary to stdout");

    // --- scaling ---
    auto* scal = app.add_subcommand("scaling", "timing ladder across a factor-4 size ladder");
    std::string sc_sizes = "65536,262144,1048576", sc_out_dir = ".";
    double sc_delta = 0.01, sc_rho = 0.05, sc_alpha = 2.0, sc_tol = 1e-6;
    std::uint32_t sc_trials = 10, sc_jobs = 1, sc_d = 7;
    std::uint64_t sc_seed = 1;
    std::string sc_alg = "parallel-l0";
    bool sc_json = false;
    scal->add_option("--sizes", sc_sizes, "comma-separated n ladder (factor 4)");
    scal->add_option("--delta", sc_delta, "m/n");
    scal->add_option("--rho", sc_rho, "k/m");
    scal->add_option("--d", sc_d, "left degree");
    scal->add_option("--trials", sc_trials, "trials per size");
    scal->add_option("--alpha", sc_alpha, "decoder alpha");
    scal->add_option("--tol", sc_tol, "recovery tolerance");
    scal->add_option("--seed", sc_seed, "master seed");
    scal->add_option("--jobs", sc_jobs, "concurrent trial jobs");
    scal->add_option("--algorithm", sc_alg, "algorithm to time");
    scal->add_option("--out-dir", sc_out_dir, "artifact directory");
    scal->add_flag("--json", sc_json, "machine-readable output");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen_matrix->parsed()) {
            const auto A = ccs::ExpanderMatrix::generate(gm_m, gm_n, gm_d, gm_seed);
            ccs::write_matrix(gm_out, A, gm_binary);
            const std::string hash = ccs::fnv1a64_hex(ccs::read_file_bytes(gm_out));
            if (gm_json) {
                json j{{"m", gm_m}, {"n", gm_n}, {"d", gm_d}, {"seed", gm_seed}, {"file", gm_out}, {"hash", hash}};
                std::cout << j.dump() << std::endl;
            } else {
                std::cout << "m=" << gm_m << " n=" << gm_n << " d=" << gm_d << " hash=" << hash << std::endl;
            }
            return 0;
        }

        if (gen_signal->parsed()) {
            const auto kind = ccs::signal_kind_from_string(gs_kind);
            if (!kind) throw std::invalid_argument("unknown signal kind: " + gs_kind);
            ccs::SignalSpec spec{*kind, gs_band, gs_seed};
            const auto x = ccs::sample_signal(gs_n, gs_k, spec);
            ccs::write_signal(gs_out, x);
            const std::string hash = ccs::fnv1a64_hex(ccs::read_file_bytes(gs_out));
            if (gs_json) {
                json j{{"n", gs_n}, {"k", gs_k}, {"kind", gs_kind}, {"seed", gs_seed}, {"file", gs_out}, {"hash", hash}};
                std::cout << j.dump() << std::endl;
            } else {
                std::cout << "n=" << gs_n << " k=" << gs_k << " kind=" << gs_kind << " hash=" << hash << std::endl;
            }
            return 0;
        }

        if (dec->parsed()) {
            if (dc_y.empty() == dc_signal.empty())
                throw std::invalid_argument("decode: exactly one of --y and --signal is required");
            if (dc_scale && dc_signal.empty())
                throw std::invalid_argument("decode: --scale-columns requires --signal");
            const auto A = ccs::read_matrix(dc_matrix);
            const auto alg = ccs::algorithm_from_string(dc_alg);
            if (!alg) throw std::invalid_argument("unknown algorithm: " + dc_alg);

            std::optional<ccs::SparseSignal> truth;
            std::vector<double> scales;
            std::vector<double> y;
            if (!dc_signal.empty()) {
                truth = ccs::read_signal(dc_signal);
                if (truth->n != A.cols())
                    throw std::invalid_argument("decode: signal dimension does not match the matrix");
                std::vector<double> x = truth->dense();
                if (dc_scale) {
                    scales = ccs::scale_columns_dissociated(A, dc_seed);
                    for (std::uint32_t j = 0; j < A.cols(); ++j) x[j] *= scales[j];
                }
                y = A.apply(x);
            } else {
                y = ccs::read_dense(dc_y);
                if (y.size() != A.rows())
                    throw std::invalid_argument("decode: y dimension does not match the matrix");
            }

            ccs::DecodeConfig cfg;
            cfg.algorithm = *alg;
            cfg.alpha = dc_alpha;
            cfg.tol = dc_tol;
            cfg.value_match_tol = dc_vmtol;
            cfg.c = dc_c;
            cfg.max_iters = dc_max;
            cfg.exact_mode = dc_exact_mode;
            cfg.k_budget = dc_k ? dc_k : (truth ? truth->k() : 0);
            if (dc_shifted)
                cfg.shifted = true;
            else if (dc_majority)
                cfg.shifted = false;

            ccs::DecodeResult res = ccs::decode(A, y, cfg);
            if (dc_scale)
                for (std::uint32_t j = 0; j < A.cols(); ++j) res.x_hat[j] /= scales[j];

            std::optional<bool> exact;
            if (truth) {
                exact = ccs::recovery_exact(*truth, res.x_hat, dc_vmtol);
                res.report.exact = *exact;
            }
            const json j = report_to_json(A, cfg, res.report, exact, dc_seed, dc_scale);
            if (!dc_out.empty()) ccs::write_file_bytes(dc_out, j.dump(2) + "\n");
            if (dc_json)
                std::cout << j.dump(2) << std::endl;
            else
                std::cout << (res.report.converged ? "converged" : "did not converge") << " in "
                          << res.report.iterations << " iterations (" << res.report.wall_time << " s)"
                          << (truth ? (*exact ? ", exact" : ", NOT exact") : "") << std::endl;
            return res.report.converged ? 0 : 2;
        }

        if (cert->parsed()) {
            const auto A = ccs::read_matrix(ct_matrix);
            const auto rep = A.certify_expansion(ct_k, ct_override);
            if (ct_json) {
                json j{{"k_checked", rep.k_checked},
                       {"eps_star", rep.eps_star},
                       {"lemma1_eps_star", rep.lemma1_eps_star},
                       {"exhaustive", rep.exhaustive}};
                std::cout << j.dump() << std::endl;
            } else {
                std::cout << "k_checked=" << rep.k_checked << " eps_star=" << rep.eps_star
                          << " lemma1_eps_star=" << rep.lemma1_eps_star
                          << " exhaustive=" << (rep.exhaustive ? "yes" : "no") << std::endl;
            }
            return 0;
        }

        if (sweep->parsed()) {
            if (!sw.config_path.empty()) load_sweep_config_file(sw.cfg, sw.config_path);
            if (o_n->count()) sw.cfg.n = sw_flags.n;
            if (o_d->count()) sw.cfg.d = sw_flags.d;
            if (o_rs->count()) sw.cfg.rho_start = sw_flags.rho_start;
            if (o_rp->count()) sw.cfg.rho_step = sw_flags.rho_step;
            if (o_rc->count()) sw.cfg.rho_cap = sw_flags.rho_cap;
            if (o_tr->count()) sw.cfg.trials_per_cell = sw_flags.trials_per_cell;
            if (o_sr->count()) sw.cfg.success_rule = sw_flags.success_rule;
            if (o_tol->count()) sw.cfg.tol = sw_flags.tol;
            if (o_al->count()) sw.cfg.alpha = sw_flags.alpha;
            if (o_band->count()) sw.cfg.band = sw_flags.band;
            if (o_jobs->count()) sw.cfg.jobs = sw_flags.jobs;
            if (o_rn->count()) sw.cfg.rho_count = sw_flags.rho_count;
            if (o_mi->count()) sw.cfg.max_iters = sw_flags.max_iters;
            if (o_seed->count()) sw.cfg.seed = sw_seed;
            if (o_algs->count()) {
                sw.cfg.algorithms.clear();
                for (const auto& name : split_csv(sw.algorithms)) {
                    const auto alg = ccs::algorithm_from_string(name);
                    if (!alg) throw std::invalid_argument("unknown algorithm: " + name);
                    sw.cfg.algorithms.push_back(*alg);
                }
            }
            if (o_deltas->count()) {
                sw.cfg.delta_grid.clear();
                for (const auto& tok : split_csv(sw.deltas)) sw.cfg.delta_grid.push_back(std::stod(tok));
            }
            if (o_kind->count()) {
                const auto k = ccs::signal_kind_from_string(sw.kind);
                if (!k) throw std::invalid_argument("unknown signal kind: " + sw.kind);
                sw.cfg.kind = *k;
            }
            if (sw.cfg.algorithms.empty()) throw std::invalid_argument("sweep: no algorithms selected");
            if (sw.cfg.delta_grid.empty()) throw std::invalid_argument("sweep: empty delta grid");
            if (sw.cfg.band > 0.0 && sw.cfg.kind == ccs::SignalKind::gaussian_dissociated)
                sw.cfg.kind = ccs::SignalKind::banded;
            return run_sweep(sw);
        }

        if (scal->parsed()) {
            std::vector<std::uint32_t> sizes;
            for (const auto& tok : split_csv(sc_sizes))
                sizes.push_back(static_cast<std::uint32_t>(std::stoul(tok)));
            ccs::SweepConfig cfg;
            cfg.d = sc_d;
            cfg.trials_per_cell = sc_trials;
            cfg.tol = sc_tol;
            cfg.alpha = sc_alpha;
            cfg.seed = sc_seed;
            cfg.jobs = sc_jobs;
            const auto alg = ccs::algorithm_from_string(sc_alg);
            if (!alg) throw std::invalid_argument("unknown algorithm: " + sc_alg);
            const auto rows = ccs::scaling_study(cfg, sizes, sc_delta, sc_rho, *alg);

            std::filesystem::create_directories(sc_out_dir);
            std::string csv = "n,trials,successes,mean_time_ms,ratio_vs_prev,flagged\n";
            json jrows = json::array();
            for (const auto& r : rows) {
                csv += std::to_string(r.n) + "," + std::to_string(r.trials) + "," +
                       std::to_string(r.successes) + "," + ccs::format_double(r.mean_time_ms) + "," +
                       ccs::format_double(r.ratio_vs_prev) + "," + (r.flagged ? "1" : "0") + "\n";
                jrows.push_back({{"n", r.n},
                                 {"trials", r.trials},
                                 {"successes", r.successes},
                                 {"mean_time_ms", r.mean_time_ms},
                                 {"ratio_vs_prev", r.ratio_vs_prev},
                                 {"flagged", r.flagged}});
            }
            ccs::write_file_bytes(sc_out_dir + "/scaling.csv", csv);
            if (sc_json)
                std::cout << jrows.dump(2) << std::endl;
            else
                std::cout << csv;
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 1;
    }
    return 1;
} catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 1;
}
