#ifndef CCS_EXPANDER_MATRIX_HPP
#define CCS_EXPANDER_MATRIX_HPP

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ccs/rng.hpp"

namespace ccs {

// Thrown when an exhaustive enumeration would exceed its default budget
// and the caller did not ask for an override.
class budget_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Result of exhaustively certifying the expansion quality of a matrix over
// all column subsets S with |S| <= k_checked.
//
// eps_star is the infimum of the expansion parameters the matrix attains:
// the maximum over S of 1 - |N(S)|/(d|S|). lemma1_eps_star is the analogous
// quantity for the unique-neighbour bound, max over S of
// (1 - |N1(S)|/(d|S|))/2. Both are exact rationals rendered as doubles.
struct ExpansionReport {
    std::uint32_t k_checked = 0;
    double eps_star = 0.0;
    double lemma1_eps_star = 0.0;
    bool exhaustive = false;
};

// Adjacency matrix of an unbalanced left d-regular bipartite graph: an
// m x n binary matrix with exactly d ones per column, stored as one sorted
// row-index list per column. Immutable after construction; safe to share
// across threads.
class ExpanderMatrix {
public:
    ExpanderMatrix() = default;

    std::uint32_t rows() const { return m_; }
    std::uint32_t cols() const { return n_; }
    std::uint32_t degree() const { return d_; }

    // Sorted row indices of column j (the neighbourhood N(j)).
    std::span<const std::uint32_t> column(std::uint32_t j) const {
        return {row_index_.data() + static_cast<std::size_t>(j) * d_, d_};
    }

    // Column-major flat storage, n*d entries.
    std::span<const std::uint32_t> flat() const { return row_index_; }

    // Draws each column's support uniformly from the C(m, d) subsets of
    // [0, m), columns independent, deterministic per seed. Repeated
    // identical columns are permitted; certification exposes bad draws.
    static ExpanderMatrix generate(std::uint32_t m, std::uint32_t n, std::uint32_t d,
                                   std::uint64_t seed) {
        check_dims(m, n, d);
        ExpanderMatrix A;
        A.m_ = m;
        A.n_ = n;
        A.d_ = d;
        A.row_index_.resize(static_cast<std::size_t>(n) * d);
        Rng rng(seed);

        // Partial Fisher-Yates with O(d) undo, so the pool is reused
        // across columns without an O(m) reset.
        std::vector<std::uint32_t> pool(m);
        std::iota(pool.begin(), pool.end(), 0u);
        std::vector<std::uint32_t> swapped_with(d);
        for (std::uint32_t j = 0; j < n; ++j) {
            std::uint32_t* col = A.row_index_.data() + static_cast<std::size_t>(j) * d;
            for (std::uint32_t t = 0; t < d; ++t) {
                const std::uint32_t pick = t + static_cast<std::uint32_t>(rng.below(m - t));
                std::swap(pool[t], pool[pick]);
                swapped_with[t] = pick;
                col[t] = pool[t];
            }
            for (std::uint32_t t = d; t-- > 0;) std::swap(pool[t], pool[swapped_with[t]]);
            std::sort(col, col + d);
        }
        return A;
    }

    // Builds a matrix from explicit column lists, validating the type
    // invariants (sorted, distinct, in range, exactly d per column).
    static ExpanderMatrix from_columns(std::uint32_t m, std::uint32_t n, std::uint32_t d,
                                       std::vector<std::uint32_t> row_index) {
        check_dims(m, n, d);
        if (row_index.size() != static_cast<std::size_t>(n) * d)
            throw std::invalid_argument("expander matrix: storage size must be n*d");
        for (std::uint32_t j = 0; j < n; ++j) {
            const std::uint32_t* col = row_index.data() + static_cast<std::size_t>(j) * d;
            for (std::uint32_t t = 0; t < d; ++t) {
                if (col[t] >= m)
                    throw std::invalid_argument("expander matrix: row index out of range");
                if (t > 0 && col[t] <= col[t - 1])
                    throw std::invalid_argument("expander matrix: column rows must be strictly increasing");
            }
        }
        ExpanderMatrix A;
        A.m_ = m;
        A.n_ = n;
        A.d_ = d;
        A.row_index_ = std::move(row_index);
        return A;
    }

    // y = A x without materialising the dense matrix; cost is d per
    // nonzero of x.
    void apply(std::span<const double> x, std::span<double> y) const {
        if (x.size() != n_) throw std::invalid_argument("apply: x must have length n");
        if (y.size() != m_) throw std::invalid_argument("apply: y must have length m");
        std::fill(y.begin(), y.end(), 0.0);
        for (std::uint32_t j = 0; j < n_; ++j) {
            const double xj = x[j];
            if (xj == 0.0) continue;
            for (std::uint32_t i : column(j)) y[i] += xj;
        }
    }

    std::vector<double> apply(std::span<const double> x) const {
        std::vector<double> y(m_);
        apply(x, y);
        return y;
    }

    // N(S): sorted union of the neighbourhoods of the columns in S.
    std::vector<std::uint32_t> neighborhood(std::span<const std::uint32_t> S) const {
        std::vector<std::uint32_t> out = gather(S);
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    // N1(S): rows touched by exactly one column of S (Eq. counting the
    // unique neighbours). N1(S) and N(S)\N1(S) partition N(S).
    std::vector<std::uint32_t> unique_neighborhood(std::span<const std::uint32_t> S) const {
        std::vector<std::uint32_t> rows = gather(S);
        std::sort(rows.begin(), rows.end());
        std::vector<std::uint32_t> out;
        for (std::size_t i = 0; i < rows.size();) {
            std::size_t run = i + 1;
            while (run < rows.size() && rows[run] == rows[i]) ++run;
            if (run - i == 1) out.push_back(rows[i]);
            i = run;
        }
        return out;
    }

    // Exhaustive expansion certificate over all subsets of size <= k.
    // Enumeration is C(n, k)-sized, so by default it is limited to
    // instances with n <= 24 or k <= 3.
    ExpansionReport certify_expansion(std::uint32_t k, bool override_budget = false) const {
        if (k == 0 || k > n_) throw std::invalid_argument("certify_expansion: need 1 <= k <= n");
        if (!override_budget && n_ > 24 && k > 3)
            throw budget_error("certify_expansion: C(n,k) enumeration over budget (n > 24 and k > 3); "
                               "pass override to force");

        // Running maxima kept as exact fractions num/den to avoid float
        // ordering artifacts; converted once at the end.
        std::int64_t e2_num = 0, e2_den = 1;   // max (d|S| - |N(S)|) / (d|S|)
        std::int64_t e6_num = 0, e6_den = 1;   // max (d|S| - |N1(S)|) / (2 d|S|)

        std::vector<std::uint32_t> subset(k);
        std::vector<std::uint32_t> buf(static_cast<std::size_t>(k) * d_);
        const auto next_combination = [this](std::vector<std::uint32_t>& c, std::uint32_t s) {
            std::uint32_t i = s;
            while (i > 0) {
                --i;
                if (c[i] != i + n_ - s) {
                    ++c[i];
                    for (std::uint32_t t = i + 1; t < s; ++t) c[t] = c[t - 1] + 1;
                    return true;
                }
            }
            return false;
        };
        for (std::uint32_t s = 1; s <= k; ++s) {
            for (std::uint32_t i = 0; i < s; ++i) subset[i] = i;
            do {
                std::size_t len = 0;
                for (std::uint32_t i = 0; i < s; ++i)
                    for (std::uint32_t row : column(subset[i])) buf[len++] = row;
                std::sort(buf.begin(), buf.begin() + static_cast<std::ptrdiff_t>(len));
                std::int64_t n_all = 0, n_unique = 0;
                for (std::size_t i = 0; i < len;) {
                    std::size_t run = i + 1;
                    while (run < len && buf[run] == buf[i]) ++run;
                    ++n_all;
                    if (run - i == 1) ++n_unique;
                    i = run;
                }
                const std::int64_t ds = static_cast<std::int64_t>(d_) * s;
                max_fraction(e2_num, e2_den, ds - n_all, ds);
                max_fraction(e6_num, e6_den, ds - n_unique, 2 * ds);
            } while (next_combination(subset, s));
        }

        ExpansionReport rep;
        rep.k_checked = k;
        rep.eps_star = static_cast<double>(e2_num) / static_cast<double>(e2_den);
        rep.lemma1_eps_star = static_cast<double>(e6_num) / static_cast<double>(e6_den);
        rep.exhaustive = true;
        return rep;
    }

    bool operator==(const ExpanderMatrix& other) const {
        return m_ == other.m_ && n_ == other.n_ && d_ == other.d_ &&
               row_index_ == other.row_index_;
    }

private:
    static void check_dims(std::uint32_t m, std::uint32_t n, std::uint32_t d) {
        if (d == 0 || m == 0 || n == 0)
            throw std::invalid_argument("expander matrix: sizes must be positive");
        if (d >= m) throw std::invalid_argument("expander matrix: requires d < m");
        if (m >= n) throw std::invalid_argument("expander matrix: requires m < n");
    }

    std::vector<std::uint32_t> gather(std::span<const std::uint32_t> S) const {
        std::vector<std::uint32_t> rows;
        rows.reserve(S.size() * d_);
        for (std::uint32_t j : S) {
            if (j >= n_) throw std::invalid_argument("column index out of range");
            const auto col = column(j);
            rows.insert(rows.end(), col.begin(), col.end());
        }
        return rows;
    }

    static void max_fraction(std::int64_t& num, std::int64_t& den, std::int64_t a, std::int64_t b) {
        if (a * den > num * b) {
            num = a;
            den = b;
        }
    }

    std::uint32_t m_ = 0, n_ = 0, d_ = 0;
    std::vector<std::uint32_t> row_index_;
};

} // namespace ccs

#endif // CCS_EXPANDER_MATRIX_HPP
