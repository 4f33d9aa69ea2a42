#include "commkit/engel.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>

namespace commkit {

ElementaryCommutator::ElementaryCommutator(std::vector<GroupWord> entries, std::pair<int, int> doubled, int exponent)
    : entries_(std::move(entries)), doubled_(doubled), exponent_(exponent) {
    if (exponent_ != 1 && exponent_ != -1) throw std::invalid_argument("exponent must be +1 or -1");
    const int k = length();
    if (k < 4) throw std::invalid_argument("elementary commutator needs at least 4 entries");
    const auto [j, m] = doubled_;
    if (!(1 <= j && j < m && m <= 4)) throw std::invalid_argument("doubled positions must satisfy 1 <= j < m <= 4");
    const GroupWord& pair = entries_[static_cast<std::size_t>(j - 1)];
    if (pair != entries_[static_cast<std::size_t>(m - 1)]) {
        throw std::invalid_argument("doubled entries must be equal");
    }
    if (pair.length() != 2 || pair.letters()[0].generator == pair.letters()[1].generator) {
        throw std::invalid_argument("doubled entry must be a product of two distinct generators");
    }
    std::set<int> seen{pair.letters()[0].generator, pair.letters()[1].generator};
    for (int p = 1; p <= k; ++p) {
        if (p == j || p == m) continue;
        const GroupWord& e = entries_[static_cast<std::size_t>(p - 1)];
        if (e.length() != 1) throw std::invalid_argument("entry " + std::to_string(p) + " must be a single generator");
        if (!seen.insert(e.letters()[0].generator).second) {
            throw std::invalid_argument("generators of an elementary commutator must be distinct");
        }
    }
}

std::optional<char> ElementaryCommutator::type() const noexcept {
    if (doubled_ == std::pair{2, 3}) return 'a';
    if (doubled_ == std::pair{3, 4}) return 'b';
    if (doubled_ == std::pair{2, 4}) return 'c';
    return std::nullopt;
}

GroupWord ElementaryCommutator::realize() const {
    auto word = left_normed(entries_);
    return exponent_ > 0 ? word : invert(word);
}

ElementaryCommutator ElementaryCommutator::inverted() const {
    return ElementaryCommutator(entries_, doubled_, -exponent_);
}

std::map<char, int> EngelCertificate::type_counts() const {
    std::map<char, int> counts{{'a', 0}, {'b', 0}, {'c', 0}};
    for (const auto& t : terms) {
        if (auto c = t.type()) ++counts[*c];
    }
    return counts;
}

GroupWord EngelCertificate::product() const {
    GroupWord out;
    for (const auto& t : terms) out = out * t.realize();
    return out;
}

LowDegreeError::LowDegreeError(int required, int degree, Monomial witness, Integer coefficient)
    : DomainError("word lies in lower central term " + std::to_string(degree) + " only, " +
                  std::to_string(required) + " required; witness coefficient " + to_string(coefficient) +
                  " on " + to_string(witness)),
      required_(required),
      degree_(degree),
      witness_(witness),
      coefficient_(std::move(coefficient)) {}

GroupWord BasicFactor::realize() const {
    GroupWord word = indices.size() == 1 ? GroupWord::generator(indices[0]) : basic_commutator(indices);
    return exponent > 0 ? word : invert(word);
}

namespace {

// Basic factors for the degree-k leading part of u, which lies in (MF_n)^k.
// The leading part is a multilinear Lie element; its coordinate on the
// basis bracket [s_1, ..., s_k] (s_1 the minimum) is the coefficient of the
// monomial x_{s_1} ... x_{s_k}.
std::vector<BasicFactor> leading_factors(const ReducedSeries& expansion, int k) {
    std::vector<BasicFactor> out;
    for (const auto& [m, c] : expansion.homogeneous_part(k).sorted_terms()) {
        const auto idx = m.indices();
        if (idx.front() != *std::min_element(idx.begin(), idx.end())) continue;
        const int sign = c > 0 ? 1 : -1;
        const Integer magnitude = c > 0 ? c : Integer{-c};
        for (Integer i = 0; i < magnitude; ++i) out.push_back(BasicFactor{idx, sign});
    }
    return out;
}

struct ScriptTerm {
    // Entries as generator positions 0..3 into (x, y, z, w); pairs have two.
    std::vector<std::vector<int>> entries;
    std::pair<int, int> doubled;
    int exponent;
};

// [x,y,z,w] equals the product of these six terms modulo the fifth lower
// central term of the 2-Engel quotient.
const std::vector<ScriptTerm>& script() {
    static const std::vector<ScriptTerm> terms{
        {{{2}, {0, 1}, {0, 1}, {3}}, {2, 3}, +1},
        {{{0}, {1, 2}, {1, 2}, {3}}, {2, 3}, +1},
        {{{1}, {2, 3}, {2, 3}, {0}}, {2, 3}, +1},
        {{{0}, {1}, {2, 3}, {2, 3}}, {3, 4}, -1},
        {{{1}, {3}, {0, 2}, {0, 2}}, {3, 4}, -1},
        {{{0}, {1, 3}, {2}, {1, 3}}, {2, 4}, +1},
    };
    return terms;
}

std::vector<ElementaryCommutator> scripted_terms(const BasicFactor& factor) {
    const auto& g = factor.indices;
    std::vector<ElementaryCommutator> out;
    for (const auto& term : script()) {
        std::vector<GroupWord> entries;
        for (const auto& entry : term.entries) {
            GroupWord word;
            for (int p : entry) word = word * GroupWord::generator(g[static_cast<std::size_t>(p)]);
            entries.push_back(std::move(word));
        }
        for (std::size_t i = 4; i < g.size(); ++i) entries.push_back(GroupWord::generator(g[i]));
        out.emplace_back(std::move(entries), term.doubled, term.exponent * factor.exponent);
    }
    return out;
}

}  // namespace

std::vector<BasicFactor> basic_decompose(const GroupWord& u, const MilnorContext& ctx) {
    std::vector<BasicFactor> out;
    GroupWord product;
    GroupWord residual = u;
    while (true) {
        auto expansion = ctx.expansion(residual);
        expansion -= ReducedSeries::one(ctx.rank(), ctx.rank());
        const auto degree = expansion.lowest_degree();
        if (!degree) break;
        for (auto& f : leading_factors(expansion, *degree)) {
            product = product * f.realize();
            out.push_back(std::move(f));
        }
        residual = invert(product) * u;
    }
    return out;
}

EngelCertificate engel_decompose(const GroupWord& u, const MilnorContext& ctx) {
    EngelCertificate cert;
    cert.target = u;
    cert.rank = ctx.rank();
    GroupWord product;
    GroupWord residual = u;
    while (true) {
        auto expansion = ctx.expansion(residual);
        expansion -= ReducedSeries::one(ctx.rank(), ctx.rank());
        const auto degree = expansion.lowest_degree();
        if (!degree) break;
        if (*degree < 4) {
            const auto leading = expansion.homogeneous_part(*degree).sorted_terms();
            throw LowDegreeError(4, *degree, leading.front().first, leading.front().second);
        }
        for (const auto& f : leading_factors(expansion, *degree)) {
            for (auto& term : scripted_terms(f)) {
                product = product * term.realize();
                cert.terms.push_back(std::move(term));
            }
        }
        residual = invert(product) * u;
    }
    return cert;
}

bool verify_certificate(const EngelCertificate& cert, const MilnorContext& ctx) {
    return milnor_equal(cert.target, cert.product(), ctx);
}

GroupWord n_engel_word(int e, const GroupWord& x, const GroupWord& y) {
    if (e < 1) throw std::invalid_argument("Engel order must be >= 1");
    std::vector<GroupWord> entries{y};
    for (int i = 0; i < e; ++i) entries.push_back(x);
    return left_normed(entries);
}

GroupWord kinky_relation(int order) {
    if (order < 1) throw std::invalid_argument("kinky handle order must be >= 1");
    const GroupWord x = GroupWord::generator(1);
    const GroupWord y = GroupWord::generator(2);
    const GroupWord xy = conjugate(x, y);
    if (order == 1) return commutator(x, xy);
    GroupWord w = commutator(x, commutator(y, x));
    for (int j = 2; j < order; ++j) w = commutator(x, commutator(xy, w));
    return commutator(commutator(xy, w), x);
}

}  // namespace commkit
