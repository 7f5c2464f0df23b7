#ifndef CCS_HARNESS_HPP
#define CCS_HARNESS_HPP

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "ccs/decoders.hpp"
#include "ccs/expander_matrix.hpp"
#include "ccs/io.hpp"
#include "ccs/rng.hpp"
#include "ccs/signal_model.hpp"

namespace ccs {

// Monte-Carlo sweep configuration. delta = m/n indexes undersampling,
// rho = k/m sparsity; the rho ladder ascends from rho_start in steps of
// rho_step until the success rule fails or rho_cap is reached.
struct SweepConfig {
    std::uint32_t n = 1u << 14;
    std::uint32_t d = 7;
    std::vector<Algorithm> algorithms{Algorithm::parallel_l0};
    std::vector<double> delta_grid{0.1};
    double rho_start = 0.01;
    double rho_step = 0.01;
    double rho_cap = 0.99;
    std::uint32_t trials_per_cell = 10;
    std::uint32_t success_rule = 1;      // min successes to advance the ladder
    double tol = 1e-6;
    double alpha = 2.0;
    SignalKind kind = SignalKind::gaussian_dissociated;
    double band = 0.0;
    std::uint64_t seed = 1;
    std::uint32_t jobs = 1;
    std::uint32_t rho_count = 0;         // fastest-map grid length; 0 = until all algorithms fail
    std::uint64_t max_iters = 0;         // decoder budget override
};

struct CellRecord {
    Algorithm algorithm = Algorithm::parallel_l0;
    double delta = 0.0;
    double rho = 0.0;
    std::uint32_t n = 0, d = 0;
    double band = 0.0;
    std::uint32_t trials = 0;
    std::uint32_t successes = 0;
    double mean_time_ms = 0.0;    // over successful trials
    double mean_iters = 0.0;      // over successful trials
};

struct LadderRecord {
    Algorithm algorithm = Algorithm::parallel_l0;
    double delta = 0.0;
    std::vector<CellRecord> rungs;
};

// 50%-recovery logistic fit p(rho) = 1 / (1 + exp(-(a + b*rho))).
struct TransitionFit {
    double rho_star = 0.0;
    double slope = 0.0;       // b; monotone-decreasing data gives b < 0
    bool degenerate = false;  // all-success/all-failure ladder or separated data
    bool extrapolated = false;
};

namespace detail {

// Runs fn(0..count) on `jobs` threads; outputs must be written to
// pre-sized per-index slots so results are schedule independent.
inline void parallel_for(std::uint32_t jobs, std::uint32_t count,
                         const std::function<void(std::uint32_t)>& fn) {
    if (jobs <= 1 || count <= 1) {
        for (std::uint32_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::uint32_t> next{0};
    auto worker = [&] {
        for (std::uint32_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
    };
    std::vector<std::thread> pool;
    const std::uint32_t nthreads = std::min(jobs, count);
    pool.reserve(nthreads);
    for (std::uint32_t t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

struct TrialOutcome {
    bool success = false;
    double time_ms = 0.0;
    double iters = 0.0;
};

inline constexpr std::uint64_t kMatrixStream = 0x6d61747269780000ull;
inline constexpr std::uint64_t kSignalStream = 0x7369676e616c0000ull;

} // namespace detail

inline std::uint32_t cell_m(const SweepConfig& cfg, double delta) {
    return static_cast<std::uint32_t>(std::llround(delta * cfg.n));
}

inline std::uint32_t cell_k(const SweepConfig& cfg, double delta, double rho) {
    return static_cast<std::uint32_t>(std::llround(rho * delta * cfg.n));
}

// One (delta, rho, algorithm) cell: trials_per_cell independent
// (matrix, signal) draws, each decoded once. A trial succeeds when
// ||x_hat - x||_2 / ||x||_2 <= tol. Trial RNG streams derive from
// (master seed, delta, rho, trial), so all algorithms see identical
// problem instances and results do not depend on scheduling.
inline CellRecord run_cell(const SweepConfig& cfg, double delta, double rho, Algorithm algorithm) {
    const std::uint32_t m = cell_m(cfg, delta);
    const std::uint32_t k = cell_k(cfg, delta, rho);
    if (k == 0) throw std::invalid_argument("run_cell: k = round(rho*delta*n) must be >= 1");
    if (!(cfg.d < m && m < cfg.n)) throw std::invalid_argument("run_cell: need d < m < n");

    std::vector<detail::TrialOutcome> outcomes(cfg.trials_per_cell);
    detail::parallel_for(cfg.jobs, cfg.trials_per_cell, [&](std::uint32_t t) {
        const std::uint64_t trial_seed =
            seed_of(cfg.seed, {double_bits(delta), double_bits(rho), t});
        const ExpanderMatrix A =
            ExpanderMatrix::generate(m, cfg.n, cfg.d, mix_seed(trial_seed, detail::kMatrixStream));
        SignalSpec spec;
        spec.kind = cfg.kind;
        spec.band = cfg.band;
        spec.seed = mix_seed(trial_seed, detail::kSignalStream);
        const SparseSignal x = sample_signal(cfg.n, k, spec);
        const std::vector<double> x_dense = x.dense();
        const std::vector<double> y = A.apply(x_dense);

        DecodeConfig dc;
        dc.algorithm = algorithm;
        dc.alpha = cfg.alpha;
        dc.k_budget = k;
        dc.tol = cfg.tol;
        dc.max_iters = cfg.max_iters;
        dc.record_history = false;

        const auto t0 = std::chrono::steady_clock::now();
        const DecodeResult res = decode(A, y, dc);
        const auto t1 = std::chrono::steady_clock::now();

        double err_sq = 0.0, ref_sq = 0.0;
        for (std::uint32_t i = 0; i < cfg.n; ++i) {
            const double e = res.x_hat[i] - x_dense[i];
            err_sq += e * e;
            ref_sq += x_dense[i] * x_dense[i];
        }
        detail::TrialOutcome& out = outcomes[t];
        out.success = err_sq <= cfg.tol * cfg.tol * ref_sq;
        out.time_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
        out.iters = static_cast<double>(res.report.iterations);
    });

    CellRecord rec;
    rec.algorithm = algorithm;
    rec.delta = delta;
    rec.rho = rho;
    rec.n = cfg.n;
    rec.d = cfg.d;
    rec.band = cfg.kind == SignalKind::banded ? cfg.band : 0.0;
    rec.trials = cfg.trials_per_cell;
    for (const auto& out : outcomes) {
        if (!out.success) continue;
        ++rec.successes;
        rec.mean_time_ms += out.time_ms;
        rec.mean_iters += out.iters;
    }
    if (rec.successes) {
        rec.mean_time_ms /= rec.successes;
        rec.mean_iters /= rec.successes;
    }
    return rec;
}

// Ladder ascent with an injectable cell runner (tests substitute fakes).
template <typename CellRunner>
inline LadderRecord climb_rho_with(const SweepConfig& cfg, double delta, Algorithm algorithm,
                                   CellRunner&& runner) {
    if (!(cfg.rho_start >= cfg.rho_step))
        throw std::invalid_argument("climb_rho: rho_start must be >= rho_step");
    LadderRecord ladder;
    ladder.algorithm = algorithm;
    ladder.delta = delta;
    for (std::uint32_t rung = 0;; ++rung) {
        const double rho = cfg.rho_start + rung * cfg.rho_step;
        if (rho > cfg.rho_cap + 1e-12) break;
        const CellRecord rec = runner(cfg, delta, rho, algorithm);
        ladder.rungs.push_back(rec);
        if (rec.successes < cfg.success_rule) break;
    }
    return ladder;
}

inline LadderRecord climb_rho(const SweepConfig& cfg, double delta, Algorithm algorithm) {
    return climb_rho_with(cfg, delta, algorithm,
                          [](const SweepConfig& c, double dl, double rh, Algorithm a) {
                              return run_cell(c, dl, rh, a);
                          });
}

// Maximum-likelihood logistic fit of the rung success fractions, by damped
// Newton iterations on the two-parameter log-likelihood (at most 100
// steps, gradient tolerance 1e-9). Complete separation shows up as an
// unbounded slope and is flagged degenerate; the 50% crossing -a/b is
// still reported (it lands between the last success and first failure).
inline TransitionFit fit_transition(const LadderRecord& ladder) {
    TransitionFit fit;
    if (ladder.rungs.empty()) {
        fit.degenerate = true;
        return fit;
    }
    bool all_success = true, all_failure = true;
    for (const auto& r : ladder.rungs) {
        if (r.successes < r.trials) all_success = false;
        if (r.successes > 0) all_failure = false;
    }
    const double rho_lo = ladder.rungs.front().rho;
    const double rho_hi = ladder.rungs.back().rho;
    if (all_success || all_failure || ladder.rungs.size() < 2) {
        fit.degenerate = true;
        fit.rho_star = all_failure ? rho_lo : rho_hi;
        fit.slope = 0.0;
        return fit;
    }

    // complete separation: every rung pure, successes before failures;
    // the MLE slope is then unbounded and the fit is flagged, though the
    // 50% crossing still lands between the bordering rungs
    bool pure = true, seen_failure = false, separated = true;
    for (const auto& r : ladder.rungs) {
        pure = pure && (r.successes == r.trials || r.successes == 0);
        if (r.successes == 0)
            seen_failure = true;
        else if (seen_failure)
            separated = false;
    }
    separated = separated && pure;

    // init from a least-squares line through the empirical logits
    double a = 0.0, b = 0.0;
    {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        const double cnt = static_cast<double>(ladder.rungs.size());
        for (const auto& r : ladder.rungs) {
            const double p = (r.successes + 0.5) / (r.trials + 1.0);
            const double z = std::log(p / (1.0 - p));
            sx += r.rho;
            sy += z;
            sxx += r.rho * r.rho;
            sxy += r.rho * z;
        }
        const double denom = cnt * sxx - sx * sx;
        b = denom != 0.0 ? (cnt * sxy - sx * sy) / denom : 0.0;
        a = (sy - b * sx) / cnt;
    }

    for (int step = 0; step < 100; ++step) {
        double g0 = 0, g1 = 0, h00 = 0, h01 = 0, h11 = 0;
        for (const auto& r : ladder.rungs) {
            const double z = a + b * r.rho;
            const double p = 1.0 / (1.0 + std::exp(-z));
            const double w = r.trials * p * (1.0 - p);
            const double resid = r.successes - r.trials * p;
            g0 += resid;
            g1 += resid * r.rho;
            h00 += w;
            h01 += w * r.rho;
            h11 += w * r.rho * r.rho;
        }
        if (std::max(std::abs(g0), std::abs(g1)) <= 1e-9) break;
        const double det = h00 * h11 - h01 * h01;
        if (!(std::abs(det) > 1e-300)) break;
        double da = (h11 * g0 - h01 * g1) / det;
        double db = (h00 * g1 - h01 * g0) / det;
        const double norm = std::max(std::abs(da), std::abs(db));
        if (norm > 1e4) {   // damp giant steps near separation
            da *= 1e4 / norm;
            db *= 1e4 / norm;
        }
        a += da;
        b += db;
    }

    fit.slope = b;
    fit.rho_star = b != 0.0 ? -a / b : rho_hi;
    if (separated || !std::isfinite(fit.rho_star) || std::abs(b) > 1e5) fit.degenerate = true;
    if (fit.rho_star < rho_lo || fit.rho_star > rho_hi) fit.extrapolated = true;
    return fit;
}

// --- fastest-algorithm map ------------------------------------------------

struct FastestCell {
    double delta = 0.0;
    double rho = 0.0;
    bool any = false;                          // some algorithm reached 50% success
    Algorithm fastest = Algorithm::parallel_l0;
    double mean_time_ms = 0.0;
    std::vector<CellRecord> per_algorithm;
};

// For every (delta, rho) cell, the algorithm with minimum mean recovery
// time among those succeeding on at least 50% of the shared trials. With
// rho_count = 0 the rho grid of each delta column extends until every
// algorithm drops below 50%.
inline std::vector<FastestCell> fastest_map(const SweepConfig& cfg) {
    std::vector<FastestCell> cells;
    for (double delta : cfg.delta_grid) {
        for (std::uint32_t rung = 0;; ++rung) {
            const double rho = cfg.rho_start + rung * cfg.rho_step;
            if (rho > cfg.rho_cap + 1e-12) break;
            if (cfg.rho_count && rung >= cfg.rho_count) break;
            FastestCell cell;
            cell.delta = delta;
            cell.rho = rho;
            for (Algorithm alg : cfg.algorithms) {
                const CellRecord rec = run_cell(cfg, delta, rho, alg);
                cell.per_algorithm.push_back(rec);
                if (2 * rec.successes < rec.trials) continue;
                if (!cell.any || rec.mean_time_ms < cell.mean_time_ms) {
                    cell.any = true;
                    cell.fastest = alg;
                    cell.mean_time_ms = rec.mean_time_ms;
                }
            }
            const bool stop = !cell.any && cfg.rho_count == 0;
            cells.push_back(std::move(cell));
            if (stop) break;
        }
    }
    return cells;
}

// --- scaling study ---------------------------------------------------------

struct ScalingRow {
    std::uint32_t n = 0;
    std::uint32_t trials = 0;
    std::uint32_t successes = 0;
    double mean_time_ms = 0.0;
    double ratio_vs_prev = 0.0;   // t_n / t_{n/4}; 0 on the first row
    bool flagged = false;          // under 50% successes
};

// Mean recovery time of one algorithm at fixed (delta, rho) across a
// factor-4 ladder of problem sizes, with consecutive-size time ratios.
inline std::vector<ScalingRow> scaling_study(const SweepConfig& base, std::span<const std::uint32_t> sizes,
                                             double delta, double rho,
                                             Algorithm algorithm = Algorithm::parallel_l0) {
    if (sizes.empty()) throw std::invalid_argument("scaling_study: need at least one size");
    for (std::size_t i = 1; i < sizes.size(); ++i)
        if (sizes[i] != 4 * sizes[i - 1])
            throw std::invalid_argument("scaling_study: sizes must form a factor-4 ladder");

    std::vector<ScalingRow> rows;
    for (std::uint32_t n : sizes) {
        SweepConfig cfg = base;
        cfg.n = n;
        const CellRecord rec = run_cell(cfg, delta, rho, algorithm);
        ScalingRow row;
        row.n = n;
        row.trials = rec.trials;
        row.successes = rec.successes;
        row.mean_time_ms = rec.mean_time_ms;
        row.flagged = 2 * rec.successes < rec.trials;
        if (!rows.empty() && rows.back().mean_time_ms > 0.0 && !rows.back().flagged && !row.flagged)
            row.ratio_vs_prev = row.mean_time_ms / rows.back().mean_time_ms;
        rows.push_back(row);
    }
    return rows;
}

// --- artifact emission ------------------------------------------------------

inline std::string config_canonical(const SweepConfig& cfg) {
    std::ostringstream s;
    s << "n=" << cfg.n << ";d=" << cfg.d << ";algs=";
    for (Algorithm a : cfg.algorithms) s << to_string(a) << ',';
    s << ";deltas=";
    for (double d : cfg.delta_grid) s << format_double(d) << ',';
    s << ";rho0=" << format_double(cfg.rho_start) << ";drho=" << format_double(cfg.rho_step)
      << ";cap=" << format_double(cfg.rho_cap) << ";trials=" << cfg.trials_per_cell
      << ";rule=" << cfg.success_rule << ";tol=" << format_double(cfg.tol)
      << ";alpha=" << format_double(cfg.alpha) << ";kind=" << to_string(cfg.kind)
      << ";band=" << format_double(cfg.band) << ";seed=" << cfg.seed
      << ";rho_count=" << cfg.rho_count << ";max_iters=" << cfg.max_iters;
    return s.str();
}

inline std::string config_hash(const SweepConfig& cfg) {
    return fnv1a64_hex(config_canonical(cfg));
}

inline std::string cells_to_csv(std::span<const CellRecord> records) {
    std::ostringstream out;
    out << "algorithm,delta,rho,n,d,band,trials,successes,mean_time_ms,mean_iters\n";
    for (const auto& r : records) {
        out << to_string(r.algorithm) << ',' << format_double(r.delta) << ',' << format_double(r.rho)
            << ',' << r.n << ',' << r.d << ',' << format_double(r.band) << ',' << r.trials << ','
            << r.successes << ',' << format_double(r.mean_time_ms) << ','
            << format_double(r.mean_iters) << '\n';
    }
    return out.str();
}

} // namespace ccs

#endif // CCS_HARNESS_HPP
