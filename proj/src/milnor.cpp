#include "commkit/milnor.hpp"

#include <stdexcept>
#include <string>

namespace commkit {

MilnorContext::MilnorContext(int rank) : rank_(rank) {
    if (rank < 1 || rank > Monomial::kMaxDegree) {
        throw std::invalid_argument("Milnor context rank must lie in 1.." +
                                    std::to_string(Monomial::kMaxDegree));
    }
}

ReducedSeries MilnorContext::expansion(const GroupWord& word) const {
    if (word.max_generator() > rank_) {
        throw std::out_of_range("generator " + std::to_string(word.max_generator()) +
                                " outside the free Milnor group on " + std::to_string(rank_) +
                                " generators");
    }
    return expand_reduced(word, rank_);
}

bool milnor_equal(const GroupWord& u, const GroupWord& v, const MilnorContext& ctx) {
    return ctx.expansion(u) == ctx.expansion(v);
}

bool milnor_trivial(const GroupWord& u, const MilnorContext& ctx) {
    return ctx.expansion(u) == ReducedSeries::one(ctx.rank(), ctx.rank());
}

std::optional<int> lcs_degree(const GroupWord& u, const MilnorContext& ctx) {
    auto series = ctx.expansion(u);
    series -= ReducedSeries::one(ctx.rank(), ctx.rank());
    return series.lowest_degree();
}

}  // namespace commkit
