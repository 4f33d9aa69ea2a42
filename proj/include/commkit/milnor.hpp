#pragma once

#include "commkit/magnus.hpp"
#include "commkit/words.hpp"

#include <optional>

namespace commkit {

/// The free Milnor group MF_n on generators 1..n.
///
/// Equality is decided through the reduced Magnus expansion, which is
/// injective on MF_n; the expansion is truncated at degree n, the top degree
/// of the reduced ring.
class MilnorContext {
public:
    explicit MilnorContext(int rank);

    int rank() const noexcept { return rank_; }

    /// Reduced expansion; throws std::out_of_range for generators above rank.
    ReducedSeries expansion(const GroupWord& word) const;

private:
    int rank_;
};

bool milnor_equal(const GroupWord& u, const GroupWord& v, const MilnorContext& ctx);
bool milnor_trivial(const GroupWord& u, const MilnorContext& ctx);

/// Largest k with u in (MF_n)^k, or nullopt when u is trivial in MF_n.
std::optional<int> lcs_degree(const GroupWord& u, const MilnorContext& ctx);

}  // namespace commkit
