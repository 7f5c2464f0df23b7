#ifndef CCS_DECODERS_HPP
#define CCS_DECODERS_HPP

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <queue>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "ccs/expander_matrix.hpp"
#include "ccs/scores.hpp"

namespace ccs {

enum class Algorithm { serial_l0, parallel_l0, parallel_lddsr, lddsr, er, smp, ssmp };

inline const char* to_string(Algorithm a) {
    switch (a) {
        case Algorithm::serial_l0: return "serial-l0";
        case Algorithm::parallel_l0: return "parallel-l0";
        case Algorithm::parallel_lddsr: return "parallel-lddsr";
        case Algorithm::lddsr: return "lddsr";
        case Algorithm::er: return "er";
        case Algorithm::smp: return "smp";
        case Algorithm::ssmp: return "ssmp";
    }
    return "?";
}

inline std::optional<Algorithm> algorithm_from_string(std::string_view s) {
    if (s == "serial-l0") return Algorithm::serial_l0;
    if (s == "parallel-l0") return Algorithm::parallel_l0;
    if (s == "parallel-lddsr") return Algorithm::parallel_lddsr;
    if (s == "lddsr") return Algorithm::lddsr;
    if (s == "er") return Algorithm::er;
    if (s == "smp") return Algorithm::smp;
    if (s == "ssmp") return Algorithm::ssmp;
    return std::nullopt;
}

// Estimate, residual, and the residual's cached l0/l2 statistics. The
// residual is maintained incrementally and re-derived exactly whenever the
// drift check fails (see repair_residual); r_l0 counts entries with
// |r_i| > zero_thresh where zero_thresh = 1e-12 * ||y||_inf.
struct DecoderState {
    std::vector<double> x_hat;
    std::vector<double> r;
    std::uint64_t r_l0 = 0;
    std::uint64_t iter = 0;
    double r_l2sq = 0.0;
    double y_l2sq = 0.0;
    double y_linf = 0.0;
    double zero_thresh = 0.0;
};

struct DecodeConfig {
    Algorithm algorithm = Algorithm::parallel_l0;
    double alpha = 2.0;                    // l0-reduction threshold, in (1, d]
    std::uint32_t k_budget = 0;            // sparsity bound; required by smp/ssmp
    double c = 2.0;                        // ssmp relaxation factor, > 1
    std::uint64_t max_iters = 0;           // 0 = per-algorithm default; serial-l0 counts sweeps
    double tol = 1e-6;                     // relative l2 residual convergence tolerance
    double value_match_tol = 1e-10;        // relative tolerance for r_i = omega tests
    std::optional<bool> shifted;           // force the shifted score; default: alpha <= floor(d/2)
    bool exact_mode = false;               // converge on r_l0 == 0 instead of the l2 test
    std::optional<std::uint32_t> freq_threshold;  // parallel engine: gate on raw frequency
    bool record_history = true;

    // Test hooks. on_update fires before an update (j, omega) is applied,
    // with the pre-update state; on_iteration fires after each residual
    // update event (a column visit for serial-l0).
    std::function<void(const DecoderState&, std::uint32_t, double)> on_update;
    std::function<void(const DecoderState&)> on_iteration;
};

struct DecodeReport {
    bool converged = false;
    bool exact = false;        // filled by callers that know the ground truth
    std::uint64_t iterations = 0;
    double wall_time = 0.0;    // seconds, decode loop only
    std::vector<double> residual_l2_history;
    std::vector<std::uint64_t> residual_l0_history;
};

struct DecodeResult {
    std::vector<double> x_hat;
    DecodeReport report;
};

namespace detail {

struct RowIncidence {
    std::vector<std::uint32_t> ptr;   // m + 1
    std::vector<std::uint32_t> col;   // n * d, columns touching each row
    std::span<const std::uint32_t> row(std::uint32_t i) const {
        return {col.data() + ptr[i], ptr[i + 1] - ptr[i]};
    }
};

inline RowIncidence build_row_incidence(const ExpanderMatrix& A) {
    RowIncidence inc;
    inc.ptr.assign(A.rows() + 1, 0);
    for (std::uint32_t v : A.flat()) ++inc.ptr[v + 1];
    for (std::uint32_t i = 0; i < A.rows(); ++i) inc.ptr[i + 1] += inc.ptr[i];
    inc.col.resize(A.flat().size());
    std::vector<std::uint32_t> fill(inc.ptr.begin(), inc.ptr.end() - 1);
    for (std::uint32_t j = 0; j < A.cols(); ++j)
        for (std::uint32_t i : A.column(j)) inc.col[fill[i]++] = j;
    return inc;
}

inline void recount(DecoderState& st) {
    st.r_l0 = 0;
    st.r_l2sq = 0.0;
    for (double v : st.r) {
        if (std::abs(v) > st.zero_thresh) ++st.r_l0;
        st.r_l2sq += v * v;
    }
}

inline DecoderState init_state(const ExpanderMatrix& A, std::span<const double> y) {
    DecoderState st;
    st.x_hat.assign(A.cols(), 0.0);
    st.r.assign(y.begin(), y.end());
    for (double v : y) st.y_linf = std::max(st.y_linf, std::abs(v));
    st.zero_thresh = 1e-12 * st.y_linf;
    recount(st);
    st.y_l2sq = st.r_l2sq;
    return st;
}

inline bool is_converged(const DecoderState& st, const DecodeConfig& cfg) {
    if (cfg.exact_mode) return st.r_l0 == 0;
    return std::max(st.r_l2sq, 0.0) <= cfg.tol * cfg.tol * st.y_l2sq;
}

inline void push_history(DecodeReport& rep, const DecoderState& st, const DecodeConfig& cfg) {
    if (!cfg.record_history) return;
    rep.residual_l2_history.push_back(std::sqrt(std::max(st.r_l2sq, 0.0)));
    rep.residual_l0_history.push_back(st.r_l0);
}

inline void apply_update(DecoderState& st, const ExpanderMatrix& A, std::uint32_t j, double omega) {
    st.x_hat[j] += omega;
    for (std::uint32_t i : A.column(j)) {
        const double old = st.r[i];
        const double now = old - omega;
        st.r_l2sq += now * now - old * old;
        st.r_l0 += (std::abs(now) > st.zero_thresh ? 1 : 0) - (std::abs(old) > st.zero_thresh ? 1 : 0);
        st.r[i] = now;
    }
}

// r = y - A x_hat from scratch; cost O(m + d * nnz(x_hat)).
inline void recompute_residual(DecoderState& st, const ExpanderMatrix& A, std::span<const double> y) {
    std::copy(y.begin(), y.end(), st.r.begin());
    for (std::uint32_t j = 0; j < A.cols(); ++j) {
        const double xj = st.x_hat[j];
        if (xj == 0.0) continue;
        for (std::uint32_t i : A.column(j)) st.r[i] -= xj;
    }
    recount(st);
}

// Drift check: re-derive r exactly and adopt the exact values when the
// accumulated error exceeds 1e-12 * ||y||_inf.
inline void repair_residual(DecoderState& st, const ExpanderMatrix& A, std::span<const double> y,
                            std::vector<double>& scratch) {
    scratch.assign(y.begin(), y.end());
    for (std::uint32_t j = 0; j < A.cols(); ++j) {
        const double xj = st.x_hat[j];
        if (xj == 0.0) continue;
        for (std::uint32_t i : A.column(j)) scratch[i] -= xj;
    }
    double drift = 0.0;
    for (std::size_t i = 0; i < scratch.size(); ++i)
        drift = std::max(drift, std::abs(scratch[i] - st.r[i]));
    if (drift > st.zero_thresh) {
        st.r.swap(scratch);
        recount(st);
    }
}

inline bool resolve_use_majority(const DecodeConfig& cfg, std::uint32_t d) {
    if (cfg.shifted.has_value()) return !*cfg.shifted;
    return cfg.alpha > static_cast<double>(d / 2);
}

inline std::uint64_t default_budget(Algorithm a, std::uint32_t m, std::uint32_t k_budget) {
    switch (a) {
        case Algorithm::serial_l0: return 200;        // sweeps
        case Algorithm::parallel_l0:
        case Algorithm::parallel_lddsr: return 2000;  // passes
        case Algorithm::smp: return 500;
        default:                                       // single-update algorithms
            return k_budget ? 30ull * k_budget + 1000 : 10ull * m + 1000;
    }
}

inline DecodeResult finish(DecoderState&& st, DecodeReport&& rep, bool converged,
                           std::chrono::steady_clock::time_point t0) {
    rep.converged = converged;
    rep.iterations = st.iter;
    rep.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return {std::move(st.x_hat), std::move(rep)};
}

// Serial-l0 (Algorithm 1 shape): sweep the columns, derive one candidate
// omega per visit from the score rule, and apply it immediately whenever
// the l0 reduction meets alpha. An iteration is one column visit. With the
// shifted score a sweep tests each column at a single shift position, so
// the stall rule waits for d consecutive update-free sweeps (one, for the
// majority score) before giving up.
inline DecodeResult decode_serial_l0(const ExpanderMatrix& A, std::span<const double> y,
                                     const DecodeConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    DecoderState st = init_state(A, y);
    DecodeReport rep;
    push_history(rep, st, cfg);
    const ValueMatch vm{cfg.value_match_tol};
    const std::uint32_t n = A.cols(), d = A.degree();
    const bool use_majority = resolve_use_majority(cfg, d);
    const std::uint64_t max_sweeps = cfg.max_iters ? cfg.max_iters : default_budget(cfg.algorithm, A.rows(), cfg.k_budget);
    std::vector<double> scratch;

    bool conv = is_converged(st, cfg);
    std::uint32_t empty_sweeps = 0;
    for (std::uint64_t sweep = 0; sweep < max_sweeps && !conv; ++sweep) {
        bool updated = false;
        for (std::uint32_t j = 0; j < n && !conv; ++j) {
            double omega = 0.0;
            bool have = false;
            if (use_majority) {
                const ModeResult mr = mode_score(st.r, A, j, vm);
                if (mr.majority && std::abs(mr.value) > st.zero_thresh) {
                    omega = mr.value;
                    have = true;
                }
            } else {
                omega = st.r[A.column(j)[static_cast<std::size_t>(st.iter % d)]];
                have = std::abs(omega) > st.zero_thresh;
            }
            if (have &&
                static_cast<double>(l0_reduction(st.r, A, j, omega, vm, st.zero_thresh)) + 1e-9 >= cfg.alpha) {
                if (cfg.on_update) cfg.on_update(st, j, omega);
                apply_update(st, A, j, omega);
                updated = true;
            }
            ++st.iter;
            push_history(rep, st, cfg);
            if (cfg.on_iteration) cfg.on_iteration(st);
            conv = is_converged(st, cfg);
        }
        if (!conv) {
            repair_residual(st, A, y, scratch);
            conv = is_converged(st, cfg);
        }
        if (updated) {
            empty_sweeps = 0;
        } else if (!conv && ++empty_sweeps >= (use_majority ? 1u : d)) {
            break;   // stalled
        }
    }
    return finish(std::move(st), std::move(rep), conv, t0);
}

// Shared engine for Parallel-l0 and parallel-LDDSR (Algorithm 2 shape):
// all candidate pairs are scored against the frozen residual, every
// qualifying update is applied, then r is recomputed once. An iteration is
// one such batch; passes that identify no candidate advance the shift
// index without counting as iterations, and d consecutive empty passes
// (one, for the majority score) terminate as a stall.
inline DecodeResult decode_parallel(const ExpanderMatrix& A, std::span<const double> y,
                                    const DecodeConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    DecoderState st = init_state(A, y);
    DecodeReport rep;
    push_history(rep, st, cfg);
    const ValueMatch vm{cfg.value_match_tol};
    const std::uint32_t n = A.cols(), d = A.degree();
    const bool freq_gate = cfg.algorithm == Algorithm::parallel_lddsr || cfg.freq_threshold.has_value();
    const std::uint32_t tau = cfg.freq_threshold ? *cfg.freq_threshold : d / 2 + 1;
    const bool use_majority = freq_gate ? true : resolve_use_majority(cfg, d);
    const std::uint64_t max_passes = cfg.max_iters ? cfg.max_iters : default_budget(cfg.algorithm, A.rows(), cfg.k_budget);

    std::vector<std::pair<std::uint32_t, double>> batch;
    std::uint32_t empty_streak = 0;
    std::uint64_t best_l0 = st.r_l0;
    std::uint32_t since_best = 0;

    bool conv = is_converged(st, cfg);
    for (std::uint64_t pass = 0; pass < max_passes && !conv; ++pass) {
        batch.clear();
        for (std::uint32_t j = 0; j < n; ++j) {
            double omega = 0.0;
            if (use_majority) {
                const ModeResult mr = mode_score(st.r, A, j, vm);
                if (!mr.majority || std::abs(mr.value) <= st.zero_thresh) continue;
                if (freq_gate) {
                    if (static_cast<std::uint32_t>(mr.count) < tau) continue;
                    batch.emplace_back(j, mr.value);
                    continue;
                }
                omega = mr.value;
            } else {
                omega = st.r[A.column(j)[static_cast<std::size_t>(pass % d)]];
                if (std::abs(omega) <= st.zero_thresh) continue;
            }
            if (static_cast<double>(l0_reduction(st.r, A, j, omega, vm, st.zero_thresh)) + 1e-9 >= cfg.alpha)
                batch.emplace_back(j, omega);
        }
        if (batch.empty()) {
            ++empty_streak;
            if (use_majority || empty_streak >= d) break;   // stall
            continue;
        }
        empty_streak = 0;
        for (const auto& [j, omega] : batch) {
            if (cfg.on_update) cfg.on_update(st, j, omega);
            st.x_hat[j] += omega;
        }
        recompute_residual(st, A, y);
        ++st.iter;
        push_history(rep, st, cfg);
        if (cfg.on_iteration) cfg.on_iteration(st);
        conv = is_converged(st, cfg);
        if (st.r_l0 < best_l0) {
            best_l0 = st.r_l0;
            since_best = 0;
        } else if (++since_best >= 60) {
            break;   // cycling with no l0 progress
        }
    }
    return finish(std::move(st), std::move(rep), conv, t0);
}

// LDDSR (Algorithm 5 shape): one update per iteration, the first column in
// round-robin order whose neighbourhood holds a nonzero value more than
// d/2 times.
inline DecodeResult decode_lddsr(const ExpanderMatrix& A, std::span<const double> y,
                                 const DecodeConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    DecoderState st = init_state(A, y);
    DecodeReport rep;
    push_history(rep, st, cfg);
    const ValueMatch vm{cfg.value_match_tol};
    const std::uint32_t n = A.cols();
    const std::uint64_t max_updates = cfg.max_iters ? cfg.max_iters : default_budget(cfg.algorithm, A.rows(), cfg.k_budget);
    std::vector<double> scratch;
    std::uint32_t next_start = 0;

    bool conv = is_converged(st, cfg);
    while (!conv && st.iter < max_updates) {
        bool found = false;
        for (std::uint32_t t = 0; t < n; ++t) {
            const std::uint32_t j = (next_start + t) % n;
            const ModeResult mr = mode_score(st.r, A, j, vm);
            if (mr.majority && std::abs(mr.value) > st.zero_thresh) {
                if (cfg.on_update) cfg.on_update(st, j, mr.value);
                apply_update(st, A, j, mr.value);
                next_start = (j + 1) % n;
                found = true;
                break;
            }
        }
        if (!found) break;   // no qualifying pair
        ++st.iter;
        push_history(rep, st, cfg);
        if (cfg.on_iteration) cfg.on_iteration(st);
        if (st.iter % 256 == 0) repair_residual(st, A, y, scratch);
        conv = is_converged(st, cfg);
    }
    return finish(std::move(st), std::move(rep), conv, t0);
}

template <typename Key>
struct HeapEntry {
    Key key;
    std::uint32_t j;
    std::uint32_t stamp;
};

template <typename Key>
struct HeapLess {
    // max-heap on key, ties toward the smaller column index
    bool operator()(const HeapEntry<Key>& a, const HeapEntry<Key>& b) const {
        if (a.key != b.key) return a.key < b.key;
        return a.j > b.j;
    }
};

// ER in its eps-free form: each iteration applies the single update whose
// mode frequency over the nonzero neighbourhood entries is maximal. Scores
// live in a lazy priority queue and only the O(d^2 n / m) columns touched
// by an update are rescored.
inline DecodeResult decode_er(const ExpanderMatrix& A, std::span<const double> y,
                              const DecodeConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    DecoderState st = init_state(A, y);
    DecodeReport rep;
    push_history(rep, st, cfg);
    const ValueMatch vm{cfg.value_match_tol};
    const std::uint32_t n = A.cols();
    const std::uint64_t max_updates = cfg.max_iters ? cfg.max_iters : default_budget(cfg.algorithm, A.rows(), cfg.k_budget);
    const std::uint64_t stag_limit = std::max<std::uint64_t>(2000, 2ull * A.rows());
    const RowIncidence inc = build_row_incidence(A);
    std::vector<double> scratch;

    std::vector<ModeResult> score(n);
    std::vector<std::uint32_t> stamp(n, 0);
    std::priority_queue<HeapEntry<int>, std::vector<HeapEntry<int>>, HeapLess<int>> heap;
    for (std::uint32_t j = 0; j < n; ++j) {
        score[j] = nonzero_mode(st.r, A, j, vm, st.zero_thresh);
        heap.push({score[j].count, j, 0});
    }
    std::vector<std::uint32_t> mark(n, 0);
    std::uint32_t epoch = 0;
    std::uint64_t best_l0 = st.r_l0, since_best = 0;

    bool conv = is_converged(st, cfg);
    while (!conv && st.iter < max_updates) {
        std::uint32_t j = 0;
        bool found = false;
        while (!heap.empty()) {
            const HeapEntry<int> top = heap.top();
            if (top.stamp != stamp[top.j]) {
                heap.pop();
                continue;
            }
            if (top.key < 2) break;   // max frequency below the useful bar
            j = top.j;
            found = true;
            break;
        }
        if (!found) break;   // stall: converged stays false

        const double omega = score[j].value;
        if (cfg.on_update) cfg.on_update(st, j, omega);
        apply_update(st, A, j, omega);
        ++st.iter;
        push_history(rep, st, cfg);
        if (cfg.on_iteration) cfg.on_iteration(st);
        if (st.iter % 256 == 0) repair_residual(st, A, y, scratch);
        conv = is_converged(st, cfg);

        ++epoch;
        for (std::uint32_t i : A.column(j)) {
            for (std::uint32_t j2 : inc.row(i)) {
                if (mark[j2] == epoch) continue;
                mark[j2] = epoch;
                score[j2] = nonzero_mode(st.r, A, j2, vm, st.zero_thresh);
                heap.push({score[j2].count, j2, ++stamp[j2]});
            }
        }
        if (st.r_l0 < best_l0) {
            best_l0 = st.r_l0;
            since_best = 0;
        } else if (++since_best >= stag_limit) {
            break;
        }
    }
    return finish(std::move(st), std::move(rep), conv, t0);
}

struct SsmpScore {
    double reduction = 0.0;
    double median = 0.0;
};

inline SsmpScore ssmp_score(const DecoderState& st, const ExpanderMatrix& A, std::uint32_t j) {
    SsmpScore s;
    s.median = median_score(st.r, A, j);
    for (std::uint32_t i : A.column(j))
        s.reduction += std::abs(st.r[i]) - std::abs(st.r[i] - s.median);
    return s;
}

// SSMP (Algorithm 4 shape): each iteration applies the single update
// (j, median(r_N(j))) maximising the l1 reduction, with a hard threshold
// of x_hat to k terms every (c-1)k iterations.
inline DecodeResult decode_ssmp(const ExpanderMatrix& A, std::span<const double> y,
                                const DecodeConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    DecoderState st = init_state(A, y);
    DecodeReport rep;
    push_history(rep, st, cfg);
    const std::uint32_t n = A.cols();
    const std::uint64_t max_updates = cfg.max_iters ? cfg.max_iters : default_budget(cfg.algorithm, A.rows(), cfg.k_budget);
    const std::uint64_t threshold_every =
        std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::llround((cfg.c - 1.0) * cfg.k_budget)));
    const std::uint64_t stag_limit = std::max<std::uint64_t>(2000, 2ull * A.rows());
    const RowIncidence inc = build_row_incidence(A);
    std::vector<double> scratch;

    std::vector<SsmpScore> score(n);
    std::vector<std::uint32_t> stamp(n, 0);
    std::priority_queue<HeapEntry<double>, std::vector<HeapEntry<double>>, HeapLess<double>> heap;
    const auto rebuild_all = [&] {
        heap = {};
        for (std::uint32_t j = 0; j < n; ++j) {
            score[j] = ssmp_score(st, A, j);
            heap.push({score[j].reduction, j, ++stamp[j]});
        }
    };
    for (std::uint32_t j = 0; j < n; ++j) {
        score[j] = ssmp_score(st, A, j);
        heap.push({score[j].reduction, j, 0});
    }
    std::vector<std::uint32_t> mark(n, 0);
    std::uint32_t epoch = 0;
    std::uint64_t best_l0 = st.r_l0, since_best = 0;

    bool conv = is_converged(st, cfg);
    while (!conv && st.iter < max_updates) {
        std::uint32_t j = 0;
        bool found = false;
        while (!heap.empty()) {
            const HeapEntry<double> top = heap.top();
            if (top.stamp != stamp[top.j]) {
                heap.pop();
                continue;
            }
            if (!(top.key > 0.0)) break;   // best l1 reduction is non-positive
            j = top.j;
            found = true;
            break;
        }
        if (!found) break;

        const double omega = score[j].median;
        if (cfg.on_update) cfg.on_update(st, j, omega);
        apply_update(st, A, j, omega);
        ++st.iter;

        if (st.iter % threshold_every == 0) {
            st.x_hat = hard_threshold(st.x_hat, cfg.k_budget);
            recompute_residual(st, A, y);
            rebuild_all();
        } else {
            ++epoch;
            for (std::uint32_t i : A.column(j)) {
                for (std::uint32_t j2 : inc.row(i)) {
                    if (mark[j2] == epoch) continue;
                    mark[j2] = epoch;
                    score[j2] = ssmp_score(st, A, j2);
                    heap.push({score[j2].reduction, j2, ++stamp[j2]});
                }
            }
        }
        push_history(rep, st, cfg);
        if (cfg.on_iteration) cfg.on_iteration(st);
        if (st.iter % 256 == 0) {
            repair_residual(st, A, y, scratch);
        }
        conv = is_converged(st, cfg);
        if (st.r_l0 < best_l0) {
            best_l0 = st.r_l0;
            since_best = 0;
        } else if (++since_best >= stag_limit) {
            break;
        }
    }
    return finish(std::move(st), std::move(rep), conv, t0);
}

// SMP (Algorithm 3 / Eq. 11 shape): x_hat <- H_k[x_hat + H_2k[M(r)]] with
// M the per-column median operator. A non-decreasing l1 residual trips the
// divergence guard and the previous estimate is kept.
inline DecodeResult decode_smp(const ExpanderMatrix& A, std::span<const double> y,
                               const DecodeConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    DecoderState st = init_state(A, y);
    DecodeReport rep;
    push_history(rep, st, cfg);
    const std::uint32_t n = A.cols();
    const std::uint64_t max_iters = cfg.max_iters ? cfg.max_iters : default_budget(cfg.algorithm, A.rows(), cfg.k_budget);

    double l1_prev = 0.0;
    for (double v : st.r) l1_prev += std::abs(v);

    std::vector<double> meds(n), trial(n), r_new(A.rows());
    bool conv = is_converged(st, cfg);
    while (!conv && st.iter < max_iters) {
        for (std::uint32_t j = 0; j < n; ++j) meds[j] = median_score(st.r, A, j);
        const std::vector<double> u = hard_threshold(meds, 2ull * cfg.k_budget);
        for (std::uint32_t j = 0; j < n; ++j) trial[j] = st.x_hat[j] + u[j];
        std::vector<double> x_new = hard_threshold(trial, cfg.k_budget);

        std::copy(y.begin(), y.end(), r_new.begin());
        for (std::uint32_t j = 0; j < n; ++j) {
            if (x_new[j] == 0.0) continue;
            for (std::uint32_t i : A.column(j)) r_new[i] -= x_new[j];
        }
        double l1_new = 0.0;
        for (double v : r_new) l1_new += std::abs(v);
        if (l1_new >= l1_prev) break;   // divergence guard; keep previous estimate

        st.x_hat = std::move(x_new);
        st.r = r_new;
        recount(st);
        ++st.iter;
        push_history(rep, st, cfg);
        if (cfg.on_iteration) cfg.on_iteration(st);
        conv = is_converged(st, cfg);
        l1_prev = l1_new;
    }
    return finish(std::move(st), std::move(rep), conv, t0);
}

} // namespace detail

// Runs the configured decoder on y against the shared engine contracts.
// Non-convergence (stall, budget, divergence guard) is reported through
// DecodeReport::converged, not an exception.
inline DecodeResult decode(const ExpanderMatrix& A, std::span<const double> y,
                           const DecodeConfig& cfg = {}) {
    if (y.size() != A.rows()) throw std::invalid_argument("decode: y must have length m");
    if (!(cfg.tol > 0.0) || !(cfg.value_match_tol > 0.0))
        throw std::invalid_argument("decode: tolerances must be positive");
    switch (cfg.algorithm) {
        case Algorithm::serial_l0:
        case Algorithm::parallel_l0:
            if (!(cfg.alpha > 1.0) || cfg.alpha > static_cast<double>(A.degree()))
                throw std::invalid_argument("decode: alpha must lie in (1, d]");
            break;
        case Algorithm::ssmp:
            if (!(cfg.c > 1.0)) throw std::invalid_argument("decode: ssmp requires c > 1");
            [[fallthrough]];
        case Algorithm::smp:
            if (cfg.k_budget == 0)
                throw std::invalid_argument("decode: smp/ssmp require a known sparsity k_budget");
            break;
        default:
            break;
    }
    switch (cfg.algorithm) {
        case Algorithm::serial_l0: return detail::decode_serial_l0(A, y, cfg);
        case Algorithm::parallel_l0:
        case Algorithm::parallel_lddsr: return detail::decode_parallel(A, y, cfg);
        case Algorithm::lddsr: return detail::decode_lddsr(A, y, cfg);
        case Algorithm::er: return detail::decode_er(A, y, cfg);
        case Algorithm::smp: return detail::decode_smp(A, y, cfg);
        case Algorithm::ssmp: return detail::decode_ssmp(A, y, cfg);
    }
    throw std::invalid_argument("decode: unknown algorithm");
}

} // namespace ccs

#endif // CCS_DECODERS_HPP
