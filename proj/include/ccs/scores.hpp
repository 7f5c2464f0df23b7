#ifndef CCS_SCORES_HPP
#define CCS_SCORES_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "ccs/expander_matrix.hpp"

namespace ccs {

// Relative-tolerance bucketing for "r_i = omega" tests; exact real
// equality does not survive floating point.
struct ValueMatch {
    double tol = 1e-10;
    bool equal(double a, double b) const {
        return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
    }
};

// l0 reduction of the update (j, omega) against the residual r:
//   |{i in N(j): r_i ~ omega}| - |{i in N(j): |r_i| <= zero_thresh}|
// which equals ||r||_0 - ||r - omega a_j||_0 (matched entries are zeroed,
// zero entries become -omega, all others stay nonzero). O(d).
inline int l0_reduction(std::span<const double> r, const ExpanderMatrix& A, std::uint32_t j,
                        double omega, const ValueMatch& vm, double zero_thresh = 0.0) {
    if (omega == 0.0) throw std::invalid_argument("l0_reduction: omega must be nonzero");
    int matches = 0, zeros = 0;
    for (std::uint32_t i : A.column(j)) {
        const double ri = r[i];
        if (std::abs(ri) <= zero_thresh)
            ++zeros;
        else if (vm.equal(ri, omega))
            ++matches;
    }
    return matches - zeros;
}

struct ModeResult {
    double value = 0.0;
    int count = 0;
    bool majority = false;   // count > floor(d/2)
};

// Boyer-Moore majority vote over r restricted to N(j), plus one
// verification pass for the exact count. When no value exceeds floor(d/2)
// occurrences the result is flagged no-majority (count is then only an
// upper-bounded artifact of the vote and is reported as the verified
// count of the surviving candidate).
inline ModeResult mode_score(std::span<const double> r, const ExpanderMatrix& A, std::uint32_t j,
                             const ValueMatch& vm) {
    const auto col = A.column(j);
    double candidate = 0.0;
    int votes = 0;
    for (std::uint32_t i : col) {
        const double v = r[i];
        if (votes == 0) {
            candidate = v;
            votes = 1;
        } else if (vm.equal(v, candidate)) {
            ++votes;
        } else {
            --votes;
        }
    }
    ModeResult res;
    res.value = candidate;
    for (std::uint32_t i : col)
        if (vm.equal(r[i], candidate)) ++res.count;
    res.majority = res.count > static_cast<int>(A.degree() / 2);
    return res;
}

// Shifted score: omega is the (ell mod d)-th entry of r_N(j) in the
// column's sorted row order; count is its frequency within r_N(j).
inline ModeResult shifted_score(std::span<const double> r, const ExpanderMatrix& A, std::uint32_t j,
                                std::uint64_t ell, const ValueMatch& vm) {
    const auto col = A.column(j);
    ModeResult res;
    res.value = r[col[static_cast<std::size_t>(ell % A.degree())]];
    for (std::uint32_t i : col)
        if (vm.equal(r[i], res.value)) ++res.count;
    res.majority = res.count > static_cast<int>(A.degree() / 2);
    return res;
}

// Most frequent value among the nonzero entries of r_N(j); used by the
// eps-free ER selection. Ties break toward the smaller value. Returns
// count 0 when the neighbourhood is entirely zero.
inline ModeResult nonzero_mode(std::span<const double> r, const ExpanderMatrix& A, std::uint32_t j,
                               const ValueMatch& vm, double zero_thresh) {
    double stack_buf[64];
    std::vector<double> heap_buf;
    double* buf = stack_buf;
    if (A.degree() > 64) {
        heap_buf.resize(A.degree());
        buf = heap_buf.data();
    }
    int len = 0;
    for (std::uint32_t i : A.column(j)) {
        const double v = r[i];
        if (std::abs(v) > zero_thresh) buf[len++] = v;
    }
    std::sort(buf, buf + len);
    ModeResult res;
    int i = 0;
    while (i < len) {
        int run = i + 1;
        while (run < len && vm.equal(buf[run], buf[i])) ++run;
        if (run - i > res.count) {
            res.count = run - i;
            res.value = buf[i];
        }
        i = run;
    }
    res.majority = res.count > static_cast<int>(A.degree() / 2);
    return res;
}

// Median of the d residual entries over N(j); the lower median for even d,
// so the value is always an actual residual entry. This is the omega
// minimising ||r - omega a_j||_1.
inline double median_score(std::span<const double> r, const ExpanderMatrix& A, std::uint32_t j) {
    double stack_buf[64];
    std::vector<double> heap_buf;
    double* buf = stack_buf;
    const std::uint32_t d = A.degree();
    if (d > 64) {
        heap_buf.resize(d);
        buf = heap_buf.data();
    }
    const auto col = A.column(j);
    for (std::uint32_t t = 0; t < d; ++t) buf[t] = r[col[t]];
    const std::uint32_t mid = (d - 1) / 2;
    std::nth_element(buf, buf + mid, buf + d);
    return buf[mid];
}

// Keeps the k largest-magnitude entries and zeroes the rest; magnitude
// ties keep the smaller index. k >= n is the identity.
inline std::vector<double> hard_threshold(std::span<const double> x, std::size_t k) {
    std::vector<double> out(x.begin(), x.end());
    if (k >= x.size()) return out;
    if (k == 0) {
        std::fill(out.begin(), out.end(), 0.0);
        return out;
    }
    std::vector<std::uint32_t> order(x.size());
    for (std::uint32_t i = 0; i < order.size(); ++i) order[i] = i;
    std::nth_element(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k - 1), order.end(),
                     [&x](std::uint32_t a, std::uint32_t b) {
                         const double fa = std::abs(x[a]), fb = std::abs(x[b]);
                         if (fa != fb) return fa > fb;
                         return a < b;
                     });
    std::fill(out.begin(), out.end(), 0.0);
    for (std::size_t t = 0; t < k; ++t) out[order[t]] = x[order[t]];
    return out;
}

} // namespace ccs

#endif // CCS_SCORES_HPP
