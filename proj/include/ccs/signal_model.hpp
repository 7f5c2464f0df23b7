#ifndef CCS_SIGNAL_MODEL_HPP
#define CCS_SIGNAL_MODEL_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "ccs/expander_matrix.hpp"
#include "ccs/rng.hpp"

namespace ccs {

// A k-sparse vector with explicit support: sorted distinct indices in
// [0, n) and the aligned nonzero values.
struct SparseSignal {
    std::uint32_t n = 0;
    std::vector<std::uint32_t> support;
    std::vector<double> values;

    std::uint32_t k() const { return static_cast<std::uint32_t>(support.size()); }

    std::vector<double> dense() const {
        std::vector<double> x(n, 0.0);
        for (std::size_t i = 0; i < support.size(); ++i) x[support[i]] = values[i];
        return x;
    }
};

enum class SignalKind { gaussian_dissociated, banded, integer };

inline const char* to_string(SignalKind k) {
    switch (k) {
        case SignalKind::gaussian_dissociated: return "gaussian-dissociated";
        case SignalKind::banded: return "banded";
        case SignalKind::integer: return "integer";
    }
    return "?";
}

inline std::optional<SignalKind> signal_kind_from_string(std::string_view s) {
    if (s == "gaussian-dissociated" || s == "gaussian") return SignalKind::gaussian_dissociated;
    if (s == "banded") return SignalKind::banded;
    if (s == "integer") return SignalKind::integer;
    return std::nullopt;
}

struct SignalSpec {
    SignalKind kind = SignalKind::gaussian_dissociated;
    double band = 0.0;   // fraction of equal-valued nonzeros, banded only
    std::uint64_t seed = 0;
};

// Draws a k-sparse signal with support uniform over the k-subsets of [0, n).
//
// gaussian-dissociated: values i.i.d. standard normal (dissociated a.s.).
// banded: ceil(band*k) entries share one normal draw at uniformly random
//         support positions, the rest i.i.d. normal; band = 0 coincides
//         with gaussian-dissociated, draw for draw.
// integer: values i.i.d. uniform on {1, ..., 10}; deliberately
//          non-dissociated, for exercising column-scaled decoding.
inline SparseSignal sample_signal(std::uint32_t n, std::uint32_t k, const SignalSpec& spec) {
    if (k == 0 || k >= n) throw std::invalid_argument("sample_signal: need 0 < k < n");
    if (spec.kind == SignalKind::banded && (spec.band < 0.0 || spec.band >= 1.0))
        throw std::invalid_argument("sample_signal: band must lie in [0, 1)");
    Rng rng(spec.seed);

    SparseSignal x;
    x.n = n;
    x.support.resize(k);
    {
        // Partial Fisher-Yates over [0, n) for the support.
        std::vector<std::uint32_t> pool(n);
        std::iota(pool.begin(), pool.end(), 0u);
        for (std::uint32_t t = 0; t < k; ++t) {
            const std::uint32_t pick = t + static_cast<std::uint32_t>(rng.below(n - t));
            std::swap(pool[t], pool[pick]);
            x.support[t] = pool[t];
        }
        std::sort(x.support.begin(), x.support.end());
    }

    x.values.resize(k);
    switch (spec.kind) {
        case SignalKind::gaussian_dissociated:
            for (auto& v : x.values) v = rng.nonzero_normal();
            break;
        case SignalKind::banded: {
            for (auto& v : x.values) v = rng.nonzero_normal();
            const std::uint32_t g = static_cast<std::uint32_t>(std::ceil(spec.band * k));
            if (g > 0) {
                std::vector<std::uint32_t> pos(k);
                std::iota(pos.begin(), pos.end(), 0u);
                for (std::uint32_t t = 0; t < g; ++t) {
                    const std::uint32_t pick = t + static_cast<std::uint32_t>(rng.below(k - t));
                    std::swap(pos[t], pos[pick]);
                }
                const double shared = rng.nonzero_normal();
                for (std::uint32_t t = 0; t < g; ++t) x.values[pos[t]] = shared;
            }
            break;
        }
        case SignalKind::integer:
            for (auto& v : x.values) v = static_cast<double>(rng.below(10) + 1);
            break;
    }
    return x;
}

// Two subset sums collide when |s1 - s2| <= tol * max(1, |s1|, |s2|).
// The same rule backs the decoders' value matching.
inline bool sums_collide(double s1, double s2, double tol) {
    return std::abs(s1 - s2) <= tol * std::max({1.0, std::abs(s1), std::abs(s2)});
}

// True iff all 2^k subset sums over supp(x) are pairwise distinct under
// the relative tolerance. Enumerates 2^k sums, so k <= 22 unless overridden.
inline bool is_dissociated(const SparseSignal& x, double tol = 1e-10, bool override_budget = false) {
    const std::uint32_t k = x.k();
    if (k > 22 && !override_budget)
        throw budget_error("is_dissociated: 2^k enumeration over budget (k > 22); pass override to force");
    if (k >= 63) throw std::invalid_argument("is_dissociated: k too large to enumerate");

    const std::size_t total = std::size_t{1} << k;
    std::vector<double> sums(total);
    sums[0] = 0.0;
    for (std::size_t mask = 1; mask < total; ++mask) {
        const int bit = std::countr_zero(mask);
        sums[mask] = sums[mask & (mask - 1)] + x.values[static_cast<std::size_t>(bit)];
    }
    std::sort(sums.begin(), sums.end());
    for (std::size_t i = 1; i < total; ++i)
        if (sums_collide(sums[i - 1], sums[i], tol)) return false;
    return true;
}

// Per-column i.i.d. standard-normal scales s_j. Decoding y = A(s .* x)
// recovers s_j * x_j; dividing by s_j restores x even when x itself is
// not dissociated (integer or binary signals).
inline std::vector<double> scale_columns_dissociated(const ExpanderMatrix& A, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> scales(A.cols());
    for (auto& s : scales) s = rng.nonzero_normal();
    return scales;
}

// Entrywise ground-truth comparison under the value-match rule.
inline bool recovery_exact(const SparseSignal& x, std::span<const double> x_hat, double tol = 1e-10) {
    if (x_hat.size() != x.n) return false;
    std::size_t s = 0;
    for (std::uint32_t j = 0; j < x.n; ++j) {
        const double truth = (s < x.support.size() && x.support[s] == j) ? x.values[s++] : 0.0;
        if (!sums_collide(x_hat[j], truth, tol)) return false;
    }
    return true;
}

} // namespace ccs

#endif // CCS_SIGNAL_MODEL_HPP
