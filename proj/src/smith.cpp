#include "commkit/smith.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace commkit {

namespace {

Integer abs_value(const Integer& x) { return x < 0 ? Integer{-x} : x; }

// s*a + t*b = g = gcd(a, b) >= 0.
void extended_gcd(const Integer& a, const Integer& b, Integer& g, Integer& s, Integer& t) {
    Integer old_r = a, r = b;
    Integer old_s = 1, cur_s = 0;
    Integer old_t = 0, cur_t = 1;
    while (r != 0) {
        Integer q = old_r / r;
        Integer tmp = old_r - q * r;
        old_r = std::exchange(r, tmp);
        tmp = old_s - q * cur_s;
        old_s = std::exchange(cur_s, tmp);
        tmp = old_t - q * cur_t;
        old_t = std::exchange(cur_t, tmp);
    }
    if (old_r < 0) {
        old_r = -old_r;
        old_s = -old_s;
        old_t = -old_t;
    }
    g = old_r;
    s = old_s;
    t = old_t;
}

bool is_zero_vector(const IntegerVector& v) {
    return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
}

using Matrix = std::vector<IntegerVector>;

void row_axpy(Matrix& m, std::size_t target, std::size_t source, const Integer& factor) {
    for (std::size_t j = 0; j < m[target].size(); ++j) {
        if (m[source][j] != 0) m[target][j] -= factor * m[source][j];
    }
}

void col_axpy(Matrix& m, std::size_t target, std::size_t source, const Integer& factor) {
    for (auto& row : m) {
        if (row[source] != 0) row[target] -= factor * row[source];
    }
}

// q = floor(a / b) for b > 0.
Integer floor_div(const Integer& a, const Integer& b) {
    Integer q = a / b;
    if (q * b > a) --q;
    return q;
}

}  // namespace

void LatticeEchelon::reduce(IntegerVector& row, std::size_t from) const {
    for (auto it = pivots_.lower_bound(from); it != pivots_.end(); ++it) {
        const auto& [c, pivot] = *it;
        if (&pivot == &row || row[c] == 0) continue;
        const Integer q = floor_div(row[c], pivot[c]);
        if (q == 0) continue;
        for (std::size_t j = c; j < columns_; ++j) {
            if (pivot[j] != 0) row[j] -= q * pivot[j];
        }
    }
}

// Keeps the basis in Hermite form after the pivot row at `column` changed:
// entries in later pivot columns of that row, and in `column` of earlier
// rows, lie in [0, pivot).
void LatticeEchelon::normalize(std::size_t column) {
    reduce(pivots_.at(column), column + 1);
    for (auto it = pivots_.begin(); it != pivots_.end() && it->first < column; ++it) reduce(it->second, column);
}

bool LatticeEchelon::is_full() const noexcept {
    if (pivots_.size() != columns_) return false;
    return std::all_of(pivots_.begin(), pivots_.end(),
                       [](const auto& entry) { return entry.second[entry.first] == 1; });
}

void LatticeEchelon::add_row(IntegerVector row) {
    if (row.size() != columns_) throw std::invalid_argument("lattice row has wrong length");
    if (is_full()) return;
    for (std::size_t c = 0; c < columns_; ++c) {
        if (row[c] == 0) continue;
        auto it = pivots_.find(c);
        if (it == pivots_.end()) {
            if (row[c] < 0) {
                for (auto& x : row) x = -x;
            }
            pivots_.emplace(c, std::move(row));
            normalize(c);
            return;
        }
        IntegerVector& pivot = it->second;
        const Integer a = pivot[c];
        const Integer b = row[c];
        if (b % a == 0) {
            const Integer q = b / a;
            for (std::size_t j = c; j < columns_; ++j) {
                if (pivot[j] != 0) row[j] -= q * pivot[j];
            }
            continue;
        }
        Integer g, s, t;
        extended_gcd(a, b, g, s, t);
        const Integer a_g = a / g;
        const Integer b_g = b / g;
        IntegerVector combined(columns_);
        for (std::size_t j = c; j < columns_; ++j) {
            combined[j] = s * pivot[j] + t * row[j];
            row[j] = b_g * pivot[j] - a_g * row[j];
        }
        pivot = std::move(combined);
        normalize(c);
    }
}

std::vector<IntegerVector> LatticeEchelon::rows() const {
    std::vector<IntegerVector> out;
    out.reserve(pivots_.size());
    for (const auto& [column, row] : pivots_) out.push_back(row);
    return out;
}

std::vector<Integer> smith_invariant_factors(std::span<const IntegerVector> rows, std::size_t columns) {
    LatticeEchelon echelon(columns);
    for (const auto& row : rows) {
        if (row.size() != columns) throw std::invalid_argument("matrix row has wrong length");
        if (!is_zero_vector(row)) echelon.add_row(row);
        if (echelon.is_full()) break;
    }
    if (echelon.is_full()) return std::vector<Integer>(columns, Integer{1});

    Matrix m = echelon.rows();
    const std::size_t r = m.size();
    const std::size_t c = columns;
    std::vector<Integer> diagonal;

    for (std::size_t t = 0; t < std::min(r, c); ++t) {
        while (true) {
            // Smallest nonzero entry of the trailing block becomes the pivot.
            std::size_t pi = r, pj = c;
            Integer best;
            for (std::size_t i = t; i < r; ++i) {
                for (std::size_t j = t; j < c; ++j) {
                    if (m[i][j] != 0 && (pi == r || abs_value(m[i][j]) < best)) {
                        best = abs_value(m[i][j]);
                        pi = i;
                        pj = j;
                    }
                }
            }
            if (pi == r) return diagonal;
            std::swap(m[t], m[pi]);
            if (pj != t) {
                for (auto& row : m) std::swap(row[t], row[pj]);
            }

            bool clean = true;
            for (std::size_t i = t + 1; i < r; ++i) {
                if (m[i][t] == 0) continue;
                row_axpy(m, i, t, m[i][t] / m[t][t]);
                if (m[i][t] != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < c; ++j) {
                if (m[t][j] == 0) continue;
                col_axpy(m, j, t, m[t][j] / m[t][t]);
                if (m[t][j] != 0) clean = false;
            }
            if (!clean) continue;

            bool divides = true;
            for (std::size_t i = t + 1; i < r && divides; ++i) {
                for (std::size_t j = t + 1; j < c; ++j) {
                    if (m[i][j] % m[t][t] != 0) {
                        row_axpy(m, t, i, Integer{-1});
                        divides = false;
                        break;
                    }
                }
            }
            if (divides) break;
        }
        diagonal.push_back(abs_value(m[t][t]));
    }
    return diagonal;
}

std::vector<Integer> combine_invariant_factors(std::span<const Integer> factors) {
    std::vector<IntegerVector> rows;
    rows.reserve(factors.size());
    for (std::size_t i = 0; i < factors.size(); ++i) {
        IntegerVector row(factors.size());
        row[i] = factors[i];
        rows.push_back(std::move(row));
    }
    return smith_invariant_factors(rows, factors.size());
}

}  // namespace commkit
