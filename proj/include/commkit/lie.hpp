#pragma once

#include "commkit/integer.hpp"
#include "commkit/smith.hpp"
#include "commkit/words.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace commkit {

/// Bracket expression in the free Lie ring on generators 1, 2, ...
class LieBracket {
public:
    static LieBracket generator(int index);
    static LieBracket bracket(const LieBracket& a, const LieBracket& b);
    /// [g_1, g_2, ..., g_k] left-normed; a single index gives the generator.
    static LieBracket left_normed(std::span<const int> indices);
    static LieBracket left_normed(std::initializer_list<int> indices);

    bool is_generator() const noexcept;
    int generator_index() const;
    LieBracket left() const;
    LieBracket right() const;

    int degree() const noexcept;
    /// Generators in leaf order.
    std::vector<int> leaves() const;
    bool is_multilinear() const;

    /// Group commutator of the same shape, with the conventions of commutator().
    GroupWord realize() const;

private:
    struct Node;
    explicit LieBracket(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

/// "[[x1,x2],x3]".
std::string to_string(const LieBracket& b);

/// Integer combination of left-normed brackets, keyed by their generator sequence.
using LieCombination = std::map<std::vector<int>, Integer>;

/// [S, T] for left-normed S and T, rewritten as left-normed brackets that all
/// begin with S's first generator.
LieCombination bracket_sequences(const std::vector<int>& s, const std::vector<int>& t);

/// Rewrites a left-normed bracket so that it begins with its smallest
/// generator. Brackets with a repeated generator map to zero.
LieCombination canonical_form(const std::vector<int>& sequence);

/// Left-normed expansion of an arbitrary bracket, then canonical_form termwise.
LieCombination canonical_form(const LieBracket& b);

struct LieBasisElement {
    std::uint32_t subset = 0;  ///< bit g-1 set for each generator g
    std::vector<int> sequence; ///< left-normed, sequence.front() == min(subset)
};

/// Multilinear degree-d part of the free Lie ring on n generators: for every
/// d-subset the (d-1)! left-normed brackets starting with the subset's minimum.
/// Subsets are ordered lexicographically, then sequences lexicographically.
class LieBasis {
public:
    LieBasis(int num_gens, int degree);

    int num_gens() const noexcept { return num_gens_; }
    int degree() const noexcept { return degree_; }
    std::size_t size() const noexcept { return elements_.size(); }
    const std::vector<LieBasisElement>& elements() const noexcept { return elements_; }

    std::optional<std::size_t> index_of(const std::vector<int>& sequence) const;

    const std::vector<std::uint32_t>& subsets() const noexcept { return subsets_; }
    std::size_t block_offset(std::uint32_t subset) const;
    /// (d-1)!, the size of every block.
    std::size_t block_size() const noexcept { return block_size_; }

private:
    int num_gens_;
    int degree_;
    std::size_t block_size_ = 0;
    std::vector<LieBasisElement> elements_;
    std::vector<std::uint32_t> subsets_;
    std::map<std::uint32_t, std::size_t> offsets_;
    std::map<std::vector<int>, std::size_t> index_;
};

/// Empty basis when degree > num_gens. Requires 2 <= degree.
LieBasis build_basis(int num_gens, int degree);

/// Coordinates of a bracket expression in the basis of its degree.
/// Non-multilinear expressions give the zero vector.
IntegerVector straighten(const LieBracket& b, const LieBasis& basis);
IntegerVector coordinates(const LieCombination& combination, const LieBasis& basis);

std::vector<int> subset_members(std::uint32_t subset);

enum class RelationKind { Symmetrization, Closure };

/// One generator of the graded Engel ideal, supported on a single d-subset.
struct RelationRow {
    std::uint32_t subset = 0;
    IntegerVector coords;  ///< block-local coordinates, length basis.block_size()
    RelationKind kind = RelationKind::Symmetrization;
    /// Symmetrization: the pieces y, a_1, ..., a_e as basis sequences.
    std::vector<std::vector<int>> pieces;
    /// Closure: index of the parent row one degree lower, and the generator bracketed on.
    std::size_t parent = 0;
    int closing_generator = 0;
    /// Group word in the Engel verbal subgroup whose leading graded part is this row.
    GroupWord witness;
};

std::string describe(const RelationRow& row);

/// Full-length coordinates of a row.
IntegerVector full_coordinates(const RelationRow& row, const LieBasis& basis);

struct RelationLattice {
    int num_gens = 0;
    int degree = 0;
    int engel_order = 0;
    LieBasis basis{1, 2};
    std::vector<RelationRow> rows;
};

/// Degree-d generators of the graded e-Engel ideal in the multilinear Lie ring:
/// every symmetrization sum_sigma [Y, A_sigma(1), ..., A_sigma(e)] over basis
/// elements with disjoint supports, and every [r, g] for a degree-(d-1) row r.
/// Duplicate rows (up to sign) are dropped. Empty when d < e + 1 or d > n.
RelationLattice engel_relations(int num_gens, int degree, int engel_order);

/// Quotient of one block Z^{(d-1)!} by its relation rows.
struct SubsetQuotient {
    std::uint32_t subset = 0;
    std::vector<Integer> invariant_factors;  ///< SNF diagonal of the relation lattice
    std::size_t free_rank = 0;
};

struct DegreeReport {
    int degree = 0;
    std::size_t basis_rank = 0;
    std::size_t relation_count = 0;
    std::vector<Integer> invariant_factors;  ///< SNF diagonal for the whole degree
    std::size_t free_rank = 0;
    std::vector<SubsetQuotient> blocks;

    /// Nontrivial invariant factors, i.e. the torsion of the quotient.
    std::vector<Integer> torsion() const;
    bool quotient_trivial() const;
};

struct QuotientReport {
    int num_gens = 0;
    int max_degree = 0;
    int engel_order = 0;
    std::vector<DegreeReport> degrees;  ///< degrees 2..max_degree

    /// Smallest c with every degree in c+1..n trivial, when max_degree == n;
    /// the Engel quotient of MF_n then has class at most c.
    std::optional<int> class_bound() const;
};

/// Requires 1 <= engel_order, 2 <= max_degree <= num_gens <= 12.
QuotientReport quotient_report(int num_gens, int max_degree, int engel_order);

}  // namespace commkit
