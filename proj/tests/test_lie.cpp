#include "commkit/lie.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <set>

using namespace commkit;

namespace {

oracle::Poly lie_bracket(const oracle::Poly& a, const oracle::Poly& b) {
    return oracle::sub(oracle::mul(a, b, 64), oracle::mul(b, a, 64));
}

oracle::Poly assoc(const LieBracket& b) {
    if (b.is_generator()) return oracle::Poly{{{b.generator_index()}, Integer{1}}};
    return lie_bracket(assoc(b.left()), assoc(b.right()));
}

oracle::Poly from_coordinates(const IntegerVector& coords, const LieBasis& basis) {
    oracle::Poly p;
    for (std::size_t i = 0; i < coords.size(); ++i) {
        if (coords[i] == 0) continue;
        for (const auto& [m, c] : oracle::lie_poly_left_normed(basis.elements()[i].sequence)) oracle::add(p, m, c * coords[i]);
    }
    return p;
}

LieBracket random_bracket(oracle::Random& rng, std::vector<int> leaves) {
    if (leaves.size() == 1) return LieBracket::generator(leaves.front());
    const auto cut = static_cast<std::ptrdiff_t>(rng.uniform(1, static_cast<int>(leaves.size()) - 1));
    std::vector<int> left(leaves.begin(), leaves.begin() + cut), right(leaves.begin() + cut, leaves.end());
    return LieBracket::bracket(random_bracket(rng, left), random_bracket(rng, right));
}

IntegerVector negated(IntegerVector v) {
    for (auto& c : v) c = -c;
    return v;
}

}  // namespace

TEST_CASE("bracket expressions") {
    const auto b = LieBracket::left_normed({1, 2, 3});
    CHECK(to_string(b) == "[[x1,x2],x3]");
    CHECK(b.degree() == 3);
    CHECK(b.leaves() == std::vector<int>{1, 2, 3});
    CHECK(b.is_multilinear());
    CHECK_FALSE(LieBracket::left_normed({1, 2, 1}).is_multilinear());
    CHECK(b.realize() == basic_commutator({1, 2, 3}));
    CHECK(LieBracket::left_normed({4}).is_generator());
    CHECK_THROWS(LieBracket::generator(1).left());
}

TEST_CASE("basis sizes") {
    for (int n = 2; n <= 7; ++n) {
        for (int d = 2; d <= n + 1; ++d) {
            const auto basis = build_basis(n, d);
            std::vector<std::vector<int>> subsets;
            oracle::combinations(n, d, subsets);
            std::size_t fact = 1;
            for (int k = 2; k < d; ++k) fact *= static_cast<std::size_t>(k);
            CHECK(basis.size() == subsets.size() * fact);
            if (d <= n) CHECK(basis.block_size() == fact);
            for (const auto& e : basis.elements()) {
                CHECK(e.sequence.front() == subset_members(e.subset).front());
                CHECK(basis.index_of(e.sequence).has_value());
            }
        }
    }
    CHECK_THROWS_AS(build_basis(4, 1), std::invalid_argument);
}

TEST_CASE("straightening examples") {
    const auto basis = build_basis(3, 3);
    REQUIRE(basis.size() == 2);
    CHECK(basis.elements()[0].sequence == std::vector<int>{1, 2, 3});
    CHECK(basis.elements()[1].sequence == std::vector<int>{1, 3, 2});
    CHECK(straighten(LieBracket::left_normed({2, 1, 3}), basis) == IntegerVector{-1, 0});
    CHECK(straighten(LieBracket::left_normed({2, 3, 1}), basis) == IntegerVector{-1, 1});
    CHECK(straighten(LieBracket::left_normed({1, 2, 1}), basis) == IntegerVector{0, 0});
    CHECK(canonical_form(std::vector<int>{1, 1, 2}).empty());
    CHECK_THROWS(straighten(LieBracket::left_normed({1, 2}), basis));
    CHECK_THROWS(straighten(LieBracket::left_normed({1, 2, 4}), basis));
}

TEST_CASE("straightening agrees with the associative embedding") {
    oracle::Random rng(0x11e);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = rng.uniform(2, 6);
        const int d = rng.uniform(2, n);
        const auto basis = build_basis(n, d);
        const auto b = random_bracket(rng, rng.distinct(n, d));
        const auto coords = straighten(b, basis);
        CHECK(from_coordinates(coords, basis) == assoc(b));
        // Leading Magnus term of the group commutator of the same shape.
        CHECK(oracle::degree_part(oracle::magnus(b.realize(), d), d) == assoc(b));
    }
}

TEST_CASE("bracket_sequences agrees with the associative embedding") {
    oracle::Random rng(0x11f);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 6;
        auto all = rng.distinct(n, rng.uniform(2, n));
        const auto cut = static_cast<std::ptrdiff_t>(rng.uniform(1, static_cast<int>(all.size()) - 1));
        std::vector<int> s(all.begin(), all.begin() + cut), t(all.begin() + cut, all.end());
        oracle::Poly got;
        for (const auto& [seq, c] : bracket_sequences(s, t)) {
            CHECK(seq.front() == s.front());
            for (const auto& [m, k] : oracle::lie_poly_left_normed(seq)) oracle::add(got, m, k * c);
        }
        CHECK(got == lie_bracket(oracle::lie_poly_left_normed(s), oracle::lie_poly_left_normed(t)));
    }
}

TEST_CASE("2-Engel relations in degree 3 on three generators") {
    const auto lattice = engel_relations(3, 3, 2);
    REQUIRE(lattice.rows.size() == 3);
    std::set<IntegerVector> expected{{1, 1}, {-2, 1}, {1, -2}};
    for (const auto& row : lattice.rows) {
        CHECK(row.kind == RelationKind::Symmetrization);
        CHECK((expected.count(row.coords) + expected.count(negated(row.coords))) == 1);
    }
    CHECK(engel_relations(3, 2, 2).rows.empty());
    CHECK(engel_relations(3, 4, 2).rows.empty());
}

TEST_CASE("relation rows and their witnesses") {
    for (auto [n, e] : {std::pair{4, 2}, std::pair{4, 3}, std::pair{5, 2}}) {
        for (int d = e + 1; d <= std::min(n, e + 2); ++d) {
            const auto lattice = engel_relations(n, d, e);
            const auto previous = d > e + 1 ? engel_relations(n, d - 1, e) : RelationLattice{};
            CAPTURE(n);
            CAPTURE(d);
            std::set<IntegerVector> seen;
            for (const auto& row : lattice.rows) {
                const auto full = full_coordinates(row, lattice.basis);
                const auto poly = from_coordinates(full, lattice.basis);
                CHECK_FALSE(poly.empty());
                CHECK(seen.insert(full).second);
                CHECK(seen.count(negated(full)) == (full == negated(full) ? 1u : 0u));

                if (row.kind == RelationKind::Symmetrization) {
                    REQUIRE(row.pieces.size() == static_cast<std::size_t>(e + 1));
                    std::vector<std::size_t> order(static_cast<std::size_t>(e));
                    std::iota(order.begin(), order.end(), 1);
                    oracle::Poly sum;
                    std::uint32_t support = 0;
                    for (const auto& piece : row.pieces) {
                        for (int g : piece) {
                            CHECK((support & (1u << (g - 1))) == 0);
                            support |= 1u << (g - 1);
                        }
                    }
                    CHECK(support == row.subset);
                    do {
                        auto term = oracle::lie_poly_left_normed(row.pieces[0]);
                        for (auto k : order) term = lie_bracket(term, oracle::lie_poly_left_normed(row.pieces[k]));
                        for (const auto& [m, c] : term) oracle::add(sum, m, c);
                    } while (std::next_permutation(order.begin(), order.end()));
                    CHECK(sum == poly);
                } else {
                    REQUIRE(row.parent < previous.rows.size());
                    const auto parent = from_coordinates(full_coordinates(previous.rows[row.parent], previous.basis), previous.basis);
                    const oracle::Poly g{{{row.closing_generator}, Integer{1}}};
                    const auto closed = lie_bracket(parent, g);
                    CHECK((closed == poly || oracle::sub(oracle::Poly{}, closed) == poly));
                }

                // The witness lies in the Engel verbal subgroup and expands to exactly 1 + row.
                auto expected = poly;
                oracle::add(expected, {}, 1);
                CHECK(oracle::reduced(oracle::magnus(row.witness, d)) == expected);
            }
        }
    }
}

TEST_CASE("block invariant factors match the minors oracle") {
    const auto lattice = engel_relations(4, 3, 2);
    const auto report = quotient_report(4, 3, 2);
    const auto& degree3 = report.degrees.back();
    REQUIRE(degree3.degree == 3);
    REQUIRE(degree3.blocks.size() == 4);
    for (const auto& block : degree3.blocks) {
        std::vector<std::vector<Integer>> rows;
        for (const auto& row : lattice.rows) {
            if (row.subset == block.subset) rows.push_back(row.coords);
        }
        const auto expected = oracle::invariant_factors_by_minors(rows, 2);
        CHECK(block.invariant_factors == expected);
        CHECK(block.free_rank == 2 - expected.size());
    }
}

TEST_CASE("2-Engel quotient of the free Milnor group has class 3") {
    for (int n = 3; n <= 6; ++n) {
        const auto report = quotient_report(n, n, 2);
        CAPTURE(n);
        REQUIRE(report.degrees.size() == static_cast<std::size_t>(n - 1));
        CHECK(report.class_bound() == 3);
        const auto& d2 = report.degrees[0];
        CHECK(d2.free_rank == static_cast<std::size_t>(n * (n - 1) / 2));
        const auto& d3 = report.degrees[1];
        std::vector<std::vector<int>> triples;
        oracle::combinations(n, 3, triples);
        CHECK(d3.free_rank == 0);
        CHECK(d3.torsion() == std::vector<Integer>(triples.size(), Integer{3}));
        for (const auto& block : d3.blocks) CHECK(block.invariant_factors == std::vector<Integer>{1, 3});
        for (std::size_t k = 2; k < report.degrees.size(); ++k) CHECK(report.degrees[k].quotient_trivial());
    }
    CHECK_FALSE(quotient_report(5, 4, 2).class_bound().has_value());
    CHECK_THROWS_AS(quotient_report(4, 5, 2), std::invalid_argument);
    CHECK_THROWS_AS(quotient_report(4, 4, 0), std::invalid_argument);
}

TEST_CASE("higher Engel orders are deterministic and internally consistent") {
    for (int e : {3, 4}) {
        const auto a = quotient_report(5, 5, e);
        const auto b = quotient_report(5, 5, e);
        REQUIRE(a.degrees.size() == b.degrees.size());
        for (std::size_t k = 0; k < a.degrees.size(); ++k) {
            const auto& da = a.degrees[k];
            CHECK(da.invariant_factors == b.degrees[k].invariant_factors);
            CHECK(da.free_rank == b.degrees[k].free_rank);
            CHECK(da.relation_count == b.degrees[k].relation_count);
            std::size_t free = 0;
            std::vector<Integer> all;
            for (const auto& block : da.blocks) {
                free += block.free_rank;
                all.insert(all.end(), block.invariant_factors.begin(), block.invariant_factors.end());
            }
            CHECK(free == da.free_rank);
            CHECK(combine_invariant_factors(all) == da.invariant_factors);
            CHECK(da.free_rank + da.invariant_factors.size() == da.basis_rank);
            // Below degree e + 1 the Engel ideal is empty.
            if (da.degree <= e) CHECK(da.relation_count == 0);
        }
        // Degree 5 survives for e >= 3.
        CHECK_FALSE(a.degrees.back().quotient_trivial());
    }
}

TEST_CASE("per-subset blocks do not depend on the number of generators") {
    for (int e : {3, 4}) {
        const auto small = quotient_report(5, 5, e);
        const auto large = quotient_report(6, 6, e);
        for (int k = 2; k <= 5; ++k) {
            const auto& s = small.degrees[static_cast<std::size_t>(k - 2)];
            const auto& l = large.degrees[static_cast<std::size_t>(k - 2)];
            REQUIRE(!s.blocks.empty());
            for (const auto& block : l.blocks) {
                CHECK(block.invariant_factors == s.blocks.front().invariant_factors);
                CHECK(block.free_rank == s.blocks.front().free_rank);
            }
        }
        const auto& top = large.degrees.back();
        CHECK(top.degree == 6);
        CHECK(top.blocks.size() == 1);
        CHECK(top.free_rank + top.invariant_factors.size() == 120);
    }
}
