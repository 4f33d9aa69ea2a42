#pragma once

#include "commkit/integer.hpp"
#include "commkit/magnus.hpp"
#include "commkit/milnor.hpp"
#include "commkit/words.hpp"

#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace commkit {

/// [h_1, ..., h_k]^exponent where h_j = h_m is a product of two distinct
/// generators and every other entry is a single generator (either
/// orientation); all generators involved are distinct and 1 <= j < m <= 4.
class ElementaryCommutator {
public:
    /// Positions are 1-based. Throws std::invalid_argument when the shape is violated.
    ElementaryCommutator(std::vector<GroupWord> entries, std::pair<int, int> doubled, int exponent);

    const std::vector<GroupWord>& entries() const noexcept { return entries_; }
    std::pair<int, int> doubled_positions() const noexcept { return doubled_; }
    int exponent() const noexcept { return exponent_; }
    int length() const noexcept { return static_cast<int>(entries_.size()); }

    /// 'a' for doubled positions (2,3), 'b' for (3,4), 'c' for (2,4); nullopt otherwise.
    std::optional<char> type() const noexcept;

    /// Left-normed group commutator of the entries raised to the exponent.
    GroupWord realize() const;

    ElementaryCommutator inverted() const;

    friend bool operator==(const ElementaryCommutator&, const ElementaryCommutator&) = default;

private:
    std::vector<GroupWord> entries_;
    std::pair<int, int> doubled_;
    int exponent_;
};

struct EngelCertificate {
    GroupWord target;
    int rank = 0;
    std::vector<ElementaryCommutator> terms;

    /// Counts of 'a', 'b', 'c' (all three keys present).
    std::map<char, int> type_counts() const;
    /// Product of the realized terms in order.
    GroupWord product() const;
};

/// Raised when a word is not deep enough in the lower central series.
class LowDegreeError : public DomainError {
public:
    LowDegreeError(int required, int degree, Monomial witness, Integer coefficient);

    int required_degree() const noexcept { return required_; }
    int degree() const noexcept { return degree_; }
    const Monomial& witness() const noexcept { return witness_; }
    const Integer& coefficient() const noexcept { return coefficient_; }

private:
    int required_;
    int degree_;
    Monomial witness_;
    Integer coefficient_;
};

struct BasicFactor {
    std::vector<int> indices;  ///< distinct generators, left-normed, first is the minimum
    int exponent = 1;

    GroupWord realize() const;
    friend bool operator==(const BasicFactor&, const BasicFactor&) = default;
};

/// Product of basic commutators with distinct indices equal to u in MF_n.
/// Factors are grouped by degree, ascending; within a degree they are in
/// lexicographic order and each has exponent +1 or -1 (repeated as needed).
std::vector<BasicFactor> basic_decompose(const GroupWord& u, const MilnorContext& ctx);

/// Certificate for u in (MF_n)^4 as a product of elementary commutators.
/// Throws LowDegreeError when u has a nonzero term below degree 4.
EngelCertificate engel_decompose(const GroupWord& u, const MilnorContext& ctx);

/// True iff target times the inverse of the realized product is trivial in MF_rank.
bool verify_certificate(const EngelCertificate& cert, const MilnorContext& ctx);

/// [y, x, ..., x] with e copies of x; requires e >= 1.
GroupWord n_engel_word(int e, const GroupWord& x, const GroupWord& y);

/// Relation read off a kinky handle with `order` double points, in x = g1, y = g2.
/// Order 1 is [x, x^y]; order k >= 2 is [[x^y, W_{k-1}], x] with
/// W_1 = [x, [y, x]] and W_j = [x, [x^y, W_{j-1}]]. Lies in the (2k+1)-th term.
GroupWord kinky_relation(int order);

}  // namespace commkit
