// One PASS/FAIL line per acceptance criterion. Exit status 1 if any fails.

#include "commkit/engel.hpp"
#include "commkit/formats.hpp"
#include "commkit/lie.hpp"
#include "commkit/links.hpp"
#include "commkit/magnus.hpp"
#include "commkit/milnor.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>

using namespace commkit;

namespace {

GroupWord g(int i) { return GroupWord::generator(i); }

std::string data(const std::string& name) { return std::string(COMMKIT_DATA_DIR) + "/links/" + name; }

class Criterion {
public:
    explicit Criterion(std::string label) : label_(std::move(label)) {}

    void require(bool ok, const std::string& what) {
        if (!ok && failure_.empty()) failure_ = what;
    }

    void note(const std::string& detail) { detail_ = detail; }

    bool finish(double limit_seconds = 0) {
        const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        if (limit_seconds > 0 && elapsed >= limit_seconds) {
            require(false, "took " + std::to_string(elapsed) + " s, limit " + std::to_string(limit_seconds) + " s");
        }
        const bool ok = failure_.empty();
        std::cout << (ok ? "PASS " : "FAIL ") << label_;
        std::ostringstream timing;
        timing.precision(2);
        timing << std::fixed << elapsed;
        std::cout << " (" << timing.str() << " s)";
        if (!ok) {
            std::cout << ": " << failure_;
        } else if (!detail_.empty()) {
            std::cout << ": " << detail_;
        }
        std::cout << "\n";
        return ok;
    }

private:
    std::string label_;
    std::string failure_;
    std::string detail_;
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

GroupWord random_word(std::mt19937& rng, int gens, int max_length) {
    std::uniform_int_distribution<int> length(0, max_length), gen(1, gens), sign(0, 1);
    std::vector<Letter> letters;
    for (int k = length(rng); k > 0; --k) letters.push_back({gen(rng), sign(rng) ? 1 : -1});
    return GroupWord::from_letters(letters);
}

bool criterion_1() {
    Criterion c("1 Engel nilpotency: 2-Engel quotient of MF_n has class 3 for n = 4,5,6");
    for (int n = 4; n <= 6; ++n) {
        const auto report = quotient_report(n, n, 2);
        const std::string tag = "n=" + std::to_string(n) + ": ";
        for (const auto& d : report.degrees) {
            if (d.degree >= 4) c.require(d.quotient_trivial(), tag + "degree " + std::to_string(d.degree) + " not trivial");
            if (d.degree == 3) {
                std::size_t triples = static_cast<std::size_t>(n * (n - 1) * (n - 2) / 6);
                c.require(d.blocks.size() == triples, tag + "wrong number of 3-subsets");
                for (const auto& block : d.blocks) {
                    c.require(block.free_rank == 0 && block.invariant_factors == std::vector<Integer>{1, 3},
                              tag + "3-subset block is not Z/3");
                }
            }
        }
        c.require(report.class_bound() == 3, tag + "class bound is not 3");
    }
    c.note("degree 3 is (Z/3)^C(n,3), degrees 4..n vanish");
    return c.finish(10);
}

bool criterion_2() {
    Criterion c("2 Milnor class: MF_n has class exactly n for n <= 6");
    std::mt19937 rng(2);
    std::size_t checked = 0;
    for (int n = 2; n <= 6; ++n) {
        const MilnorContext ctx(n);
        std::vector<int> perm(static_cast<std::size_t>(n));
        std::iota(perm.begin(), perm.end(), 1);
        do {
            c.require(!milnor_trivial(basic_commutator(perm), ctx), "a distinct-index n-fold commutator is trivial");
            ++checked;
        } while (std::next_permutation(perm.begin(), perm.end()));

        std::vector<int> seq(static_cast<std::size_t>(n + 1), 1);
        if (n <= 5) {
            // Every index sequence of length n+1 in 1..n.
            while (true) {
                c.require(milnor_trivial(basic_commutator(seq), ctx), "an (n+1)-fold commutator is nontrivial");
                ++checked;
                std::size_t k = 0;
                while (k < seq.size() && seq[k] == n) seq[k++] = 1;
                if (k == seq.size()) break;
                ++seq[k];
            }
        } else {
            std::uniform_int_distribution<int> gen(1, n);
            for (int trial = 0; trial < 3000; ++trial) {
                for (auto& s : seq) s = gen(rng);
                c.require(milnor_trivial(basic_commutator(seq), ctx), "an (n+1)-fold commutator is nontrivial");
                ++checked;
            }
            // (n+1)-fold commutators of arbitrary words, not just generators.
            for (int trial = 0; trial < 200; ++trial) {
                std::vector<GroupWord> entries;
                for (int k = 0; k <= n; ++k) entries.push_back(random_word(rng, n, 3));
                c.require(milnor_trivial(left_normed(entries), ctx), "an (n+1)-fold word commutator is nontrivial");
                ++checked;
            }
        }
    }
    c.note(std::to_string(checked) + " commutators checked");
    return c.finish(30);
}

bool criterion_3() {
    Criterion c("3 identity suite: Hall-Witt, product identities, inverse identity");
    std::mt19937 rng(3);
    const int trials = 1000;
    for (int t = 0; t < trials; ++t) {
        const auto x = random_word(rng, 4, 7), y = random_word(rng, 4, 7), z = random_word(rng, 4, 7);
        const auto hall_witt =
            left_normed({x, y, conjugate(z, x)}) * left_normed({z, x, conjugate(y, z)}) * left_normed({y, z, conjugate(x, y)});
        c.require(hall_witt.is_identity(), "Hall-Witt fails");
        c.require(commutator(x, y * z) == commutator(x, z) * conjugate(commutator(x, y), z), "[x,yz] identity fails");
        c.require(commutator(x * z, y) == conjugate(commutator(x, y), z) * commutator(z, y), "[xz,y] identity fails");
        c.require(commutator(invert(x), y) == conjugate(commutator(y, x), invert(x)), "[x^-1,y] identity fails");
    }
    c.note(std::to_string(trials) + " random triples");
    return c.finish();
}

bool criterion_4() {
    Criterion c("4 certificate counts");
    const MilnorContext ctx4(4), ctx5(5);
    const auto basic = engel_decompose(basic_commutator({1, 2, 3, 4}), ctx4);
    c.require(basic.type_counts() == std::map<char, int>{{'a', 3}, {'b', 2}, {'c', 1}}, "[x,y,z,w] counts differ");
    c.require(verify_certificate(basic, ctx4), "[x,y,z,w] certificate does not verify");
    const auto l1 = engel_decompose(commutator(commutator(g(2), g(3)), commutator(g(4), g(5))), ctx5);
    c.require(l1.type_counts() == std::map<char, int>{{'a', 6}, {'b', 4}, {'c', 2}}, "l1 counts differ");
    c.require(verify_certificate(l1, ctx5), "l1 certificate does not verify");
    c.note("[x,y,z,w] a:3 b:2 c:1, l1 a:6 b:4 c:2");
    return c.finish();
}

bool is_unit(const Integer& v) { return v == 1 || v == -1; }

bool criterion_5() {
    Criterion c("5 mu-bar values of the Hopf, Borromean and iterated Bing links");
    c.require(mu_bar(hopf(), {{2}, 1}).value == 1, "Hopf mu(2;1) != 1");
    const auto bor = read_link_file(data("borromean.link"));
    c.require(is_unit(mu_bar(bor, {{2, 3}, 1}).value), "Borromean mu(23;1) not +-1");

    const auto f = read_link_file(data("bing_iterated.link"));
    std::size_t checked = 0;
    for (int target = 1; target <= 5; ++target) {
        std::vector<int> others;
        for (int i = 1; i <= 5; ++i) {
            if (i != target) others.push_back(i);
        }
        // All distinct-index sequences of length <= 3 from the other components.
        std::function<void(std::vector<int>&, std::uint32_t)> walk = [&](std::vector<int>& sources, std::uint32_t used) {
            if (!sources.empty()) {
                const MuIndex idx{sources, target};
                // Direct expansion of the longitude, independent of the mu module.
                const auto series = expand(f.longitude(target), 5, static_cast<int>(sources.size()));
                const auto direct = series.coefficient(Monomial(std::span<const int>(sources)));
                c.require(direct == 0, "a length <= 4 expansion coefficient is nonzero");
                c.require(mu_bar(f, idx).value == 0, to_string(idx) + " is nonzero");
                ++checked;
            }
            if (sources.size() == 3) return;
            for (int o : others) {
                if (used & (1u << o)) continue;
                sources.push_back(o);
                walk(sources, used | (1u << o));
                sources.pop_back();
            }
        };
        std::vector<int> sources;
        walk(sources, 0);
    }
    const auto top = mu_bar(f, {{2, 3, 4, 5}, 1});
    c.require(is_unit(top.value), "mu(2345;1) not +-1");
    c.require(top.value == expand(f.longitude(1), 5, 4).coefficient(Monomial{2, 3, 4, 5}), "mu(2345;1) disagrees with expansion");
    c.note(std::to_string(checked) + " short invariants vanish, mu(2345;1) = " + to_string(top.value));
    return c.finish();
}

bool criterion_6() {
    Criterion c("6 trivialization pipeline");
    std::vector<std::pair<std::string, LinkPresentation>> inputs{{"bing_iterated", read_link_file(data("bing_iterated.link"))}};
    for (const char* spec : {"1 ; ((1,1),(1,2))", "2 ; ((1,1),(1,1))", "1 ; ((1,(1,1)),1)"}) {
        const auto built = build_gbr(parse_gbr_spec(spec));
        c.require(built.filtration_level == 5, std::string(spec) + " does not have filtration level 5");
        inputs.emplace_back(spec, built.link);
    }
    std::size_t terms = 0;
    for (const auto& [name, link] : inputs) {
        const auto out = stabilize_and_trivialize(link);
        c.require(homotopically_trivial(out.result).trivial, name + ": result is not trivial");
        c.require(apply_plan(link, out.plan) == out.result, name + ": plan does not reproduce the result");
        for (std::size_t k = 0; k < out.proof.size(); ++k) {
            c.require(verify_certificate(out.proof[k], MilnorContext(link.size())), name + ": certificate fails");
        }
        terms += out.plan.instructions.size();
    }
    for (const char* name : {"elementary_a.link", "elementary_b.link", "elementary_c.link"}) {
        c.require(homotopically_trivial(read_link_file(data(name))).trivial, std::string(name) + " is not trivial");
    }
    c.note(std::to_string(inputs.size()) + " links, " + std::to_string(terms) + " band sums in total");
    return c.finish(60);
}

bool criterion_7() {
    Criterion c("7 kinky handle relation of order 2");
    const auto relation = kinky_relation(2);
    auto series = expand(relation, 2, 5);
    series -= TruncatedSeries::one(2, 5);
    c.require(series.lowest_degree() == 5, "lower central degree is not 5");
    const auto kinky = series.homogeneous_part(5);
    auto engel = expand(n_engel_word(4, g(1), g(2)), 2, 5);
    engel -= TruncatedSeries::one(2, 5);
    const auto target = engel.homogeneous_part(5);
    const bool plus = kinky == target;
    const bool minus = kinky == target.scaled(-1);
    c.require(plus || minus, "degree 5 part is not +-[y,x,x,x,x]");
    c.note(std::string("sign ") + (plus ? "+1" : "-1"));
    return c.finish();
}

bool criterion_8() {
    Criterion c("8 n-Engel harness for e = 3, 4 and k <= 5");
    std::string summary;
    for (int e : {3, 4}) {
        const auto first = quotient_report(5, 5, e);
        const auto second = quotient_report(5, 5, e);
        c.require(write_report(first) == write_report(second), "reruns differ");
        c.require(report_json(first) == report_json(second), "JSON reruns differ");
        for (const auto& d : first.degrees) {
            std::size_t free = 0;
            std::vector<Integer> all;
            for (const auto& block : d.blocks) {
                free += block.free_rank;
                all.insert(all.end(), block.invariant_factors.begin(), block.invariant_factors.end());
            }
            c.require(free == d.free_rank, "free ranks do not add up");
            c.require(combine_invariant_factors(all) == d.invariant_factors, "block factors do not combine");
            c.require(d.free_rank + d.invariant_factors.size() == d.basis_rank, "rank mismatch");
        }
        // Every relation row is the leading term of its witness.
        for (int d = e + 1; d <= 5; ++d) {
            const auto lattice = engel_relations(5, d, e);
            const MilnorContext ctx(5);
            for (const auto& row : lattice.rows) {
                const auto coords = full_coordinates(row, lattice.basis);
                auto expansion = ctx.expansion(row.witness);
                for (std::size_t i = 0; i < coords.size(); ++i) {
                    if (coords[i] == 0) continue;
                    auto basis_term = expand(LieBracket::left_normed(lattice.basis.elements()[i].sequence).realize(), 5, 5);
                    basis_term -= TruncatedSeries::one(5, 5);
                    expansion -= reduce(basis_term.homogeneous_part(d).scaled(coords[i]));
                }
                c.require(expansion == ReducedSeries::one(5, 5), "a witness does not expand to 1 + row");
            }
        }
        summary += "e=" + std::to_string(e) + " degree 5: " +
                   describe_quotient(first.degrees.back().invariant_factors, first.degrees.back().free_rank) + "; ";
    }
    summary.resize(summary.size() - 2);
    c.note(summary);
    return c.finish();
}

LieBracket random_bracket(std::mt19937& rng, std::vector<int> leaves) {
    if (leaves.size() == 1) return LieBracket::generator(leaves.front());
    std::uniform_int_distribution<std::size_t> cut(1, leaves.size() - 1);
    const auto k = static_cast<std::ptrdiff_t>(cut(rng));
    return LieBracket::bracket(random_bracket(rng, {leaves.begin(), leaves.begin() + k}),
                               random_bracket(rng, {leaves.begin() + k, leaves.end()}));
}

bool criterion_9() {
    Criterion c("9 straightening agrees with Magnus coefficients");
    std::mt19937 rng(9);
    const int trials = 200;
    for (int t = 0; t < trials; ++t) {
        std::uniform_int_distribution<int> pick_n(2, 5);
        const int n = pick_n(rng);
        std::uniform_int_distribution<int> pick_d(2, n);
        const int d = pick_d(rng);
        std::vector<int> gens(static_cast<std::size_t>(n));
        std::iota(gens.begin(), gens.end(), 1);
        std::shuffle(gens.begin(), gens.end(), rng);
        gens.resize(static_cast<std::size_t>(d));
        const auto bracket = random_bracket(rng, gens);
        const auto basis = build_basis(n, d);
        const auto coords = straighten(bracket, basis);

        auto lhs = expand(bracket.realize(), n, d).homogeneous_part(d);
        for (std::size_t i = 0; i < coords.size(); ++i) {
            if (coords[i] == 0) continue;
            lhs -= expand(LieBracket::left_normed(basis.elements()[i].sequence).realize(), n, d).homogeneous_part(d).scaled(coords[i]);
        }
        c.require(lhs.is_zero(), "coordinates of " + to_string(bracket) + " disagree with the expansion");
    }
    c.note(std::to_string(trials) + " random brackets");
    return c.finish();
}

}  // namespace

int main() {
    bool ok = true;
    int number = 0;
    for (auto* criterion : {criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7,
                            criterion_8, criterion_9}) {
        ++number;
        try {
            ok = criterion() && ok;
        } catch (const std::exception& e) {
            std::cout << "FAIL " << number << " threw: " << e.what() << "\n";
            ok = false;
        }
    }
    return ok ? 0 : 1;
}
