#pragma once

#include "commkit/integer.hpp"

#include <cstddef>
#include <map>
#include <span>
#include <vector>

namespace commkit {

using IntegerVector = std::vector<Integer>;

/// Row basis of an integer lattice kept in echelon form under unimodular row
/// operations, so rank and index can be read off as rows are streamed in.
class LatticeEchelon {
public:
    explicit LatticeEchelon(std::size_t columns) : columns_(columns) {}

    std::size_t columns() const noexcept { return columns_; }
    std::size_t rank() const noexcept { return pivots_.size(); }

    /// True once the lattice is all of Z^columns; further rows change nothing.
    bool is_full() const noexcept;

    void add_row(IntegerVector row);

    /// Basis rows ordered by pivot column.
    std::vector<IntegerVector> rows() const;

private:
    void reduce(IntegerVector& row, std::size_t from) const;
    void normalize(std::size_t column);

    std::size_t columns_;
    std::map<std::size_t, IntegerVector> pivots_;
};

/// Nonzero diagonal entries d_1 | d_2 | ... of the Smith normal form of the
/// matrix whose rows are given, all positive.
std::vector<Integer> smith_invariant_factors(std::span<const IntegerVector> rows, std::size_t columns);

/// Invariant factors of the direct sum of cyclic groups Z/d_i (d_i >= 1).
std::vector<Integer> combine_invariant_factors(std::span<const Integer> factors);

}  // namespace commkit
