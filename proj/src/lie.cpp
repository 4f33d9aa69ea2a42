#include "commkit/lie.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <stdexcept>

namespace commkit {

struct LieBracket::Node {
    int generator = 0;  // 0 for an internal node
    std::optional<LieBracket> left;
    std::optional<LieBracket> right;
    int degree = 1;
};

LieBracket LieBracket::generator(int index) {
    if (index < 1) throw std::invalid_argument("generator index must be >= 1");
    auto node = std::make_shared<Node>();
    node->generator = index;
    return LieBracket(std::move(node));
}

LieBracket LieBracket::bracket(const LieBracket& a, const LieBracket& b) {
    auto node = std::make_shared<Node>();
    node->left = a;
    node->right = b;
    node->degree = a.degree() + b.degree();
    return LieBracket(std::move(node));
}

LieBracket LieBracket::left_normed(std::span<const int> indices) {
    if (indices.empty()) throw std::invalid_argument("empty bracket");
    LieBracket out = generator(indices[0]);
    for (std::size_t i = 1; i < indices.size(); ++i) out = bracket(out, generator(indices[i]));
    return out;
}

LieBracket LieBracket::left_normed(std::initializer_list<int> indices) {
    return left_normed(std::span<const int>(indices.begin(), indices.size()));
}

bool LieBracket::is_generator() const noexcept { return node_->generator != 0; }

int LieBracket::generator_index() const {
    if (!is_generator()) throw std::logic_error("bracket is not a generator");
    return node_->generator;
}

LieBracket LieBracket::left() const {
    if (is_generator()) throw std::logic_error("generator has no left part");
    return *node_->left;
}

LieBracket LieBracket::right() const {
    if (is_generator()) throw std::logic_error("generator has no right part");
    return *node_->right;
}

int LieBracket::degree() const noexcept { return node_->degree; }

std::vector<int> LieBracket::leaves() const {
    if (is_generator()) return {node_->generator};
    auto out = node_->left->leaves();
    auto tail = node_->right->leaves();
    out.insert(out.end(), tail.begin(), tail.end());
    return out;
}

bool LieBracket::is_multilinear() const {
    auto g = leaves();
    std::sort(g.begin(), g.end());
    return std::adjacent_find(g.begin(), g.end()) == g.end();
}

GroupWord LieBracket::realize() const {
    if (is_generator()) return GroupWord::generator(node_->generator);
    return commutator(node_->left->realize(), node_->right->realize());
}

std::string to_string(const LieBracket& b) {
    if (b.is_generator()) return "x" + std::to_string(b.generator_index());
    return "[" + to_string(b.left()) + "," + to_string(b.right()) + "]";
}

// ---------------------------------------------------------------------------

namespace {

void add_to(LieCombination& into, const std::vector<int>& key, const Integer& c) {
    if (c == 0) return;
    auto [it, inserted] = into.try_emplace(key, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) into.erase(it);
    }
}

void add_to(LieCombination& into, const LieCombination& from, const Integer& factor) {
    for (const auto& [key, c] : from) add_to(into, key, c * factor);
}

bool has_repeat(const std::vector<int>& seq) {
    std::uint64_t seen = 0;
    for (int g : seq) {
        const std::uint64_t bit = std::uint64_t{1} << (g - 1);
        if (seen & bit) return true;
        seen |= bit;
    }
    return false;
}

LieCombination left_normed_expansion(const LieBracket& b) {
    if (b.is_generator()) return {{{b.generator_index()}, Integer{1}}};
    const auto lhs = left_normed_expansion(b.left());
    const auto rhs = left_normed_expansion(b.right());
    LieCombination out;
    for (const auto& [s, cs] : lhs) {
        for (const auto& [t, ct] : rhs) add_to(out, bracket_sequences(s, t), cs * ct);
    }
    return out;
}

std::uint32_t mask_of(const std::vector<int>& seq) {
    std::uint32_t mask = 0;
    for (int g : seq) mask |= 1u << (g - 1);
    return mask;
}

GroupWord realize_sequence(const std::vector<int>& seq) {
    if (seq.size() == 1) return GroupWord::generator(seq[0]);
    return basic_commutator(seq);
}

}  // namespace

LieCombination bracket_sequences(const std::vector<int>& s, const std::vector<int>& t) {
    if (s.empty() || t.empty()) throw std::invalid_argument("empty bracket sequence");
    if (t.size() == 1) {
        auto joined = s;
        joined.push_back(t[0]);
        return {{joined, Integer{1}}};
    }
    // [S, [T', t]] = [[S, T'], t] - [[S, t], T']
    const std::vector<int> head(t.begin(), t.end() - 1);
    const int last = t.back();
    LieCombination out;
    for (const auto& [seq, c] : bracket_sequences(s, head)) {
        auto grown = seq;
        grown.push_back(last);
        add_to(out, grown, c);
    }
    auto s_last = s;
    s_last.push_back(last);
    add_to(out, bracket_sequences(s_last, head), Integer{-1});
    return out;
}

LieCombination canonical_form(const std::vector<int>& sequence) {
    if (sequence.empty()) throw std::invalid_argument("empty bracket sequence");
    if (has_repeat(sequence)) return {};
    const auto min_it = std::min_element(sequence.begin(), sequence.end());
    if (min_it == sequence.begin()) return {{sequence, Integer{1}}};
    // [Y, m, rest...] with [Y, m] = -[m, Y]
    const std::vector<int> head(sequence.begin(), min_it);
    const std::vector<int> rest(min_it + 1, sequence.end());
    LieCombination out;
    for (const auto& [seq, c] : bracket_sequences({*min_it}, head)) {
        auto grown = seq;
        grown.insert(grown.end(), rest.begin(), rest.end());
        add_to(out, grown, -c);
    }
    return out;
}

LieCombination canonical_form(const LieBracket& b) {
    LieCombination out;
    if (!b.is_multilinear()) return out;
    for (const auto& [seq, c] : left_normed_expansion(b)) add_to(out, canonical_form(seq), c);
    return out;
}

// ---------------------------------------------------------------------------

std::vector<int> subset_members(std::uint32_t subset) {
    std::vector<int> out;
    for (int g = 1; subset != 0; ++g, subset >>= 1) {
        if (subset & 1u) out.push_back(g);
    }
    return out;
}

LieBasis::LieBasis(int num_gens, int degree) : num_gens_(num_gens), degree_(degree) {
    if (num_gens < 1 || num_gens > 31) throw std::invalid_argument("Lie basis needs 1..31 generators");
    if (degree < 1) throw std::invalid_argument("Lie basis degree must be >= 1");
    block_size_ = 1;
    for (int k = 2; k < degree; ++k) block_size_ *= static_cast<std::size_t>(k);
    if (degree > num_gens) return;

    // Lexicographic d-subsets of 1..n.
    std::vector<int> chosen(static_cast<std::size_t>(degree));
    std::iota(chosen.begin(), chosen.end(), 1);
    while (true) {
        const std::uint32_t mask = mask_of(chosen);
        subsets_.push_back(mask);
        offsets_.emplace(mask, elements_.size());
        std::vector<int> rest(chosen.begin() + 1, chosen.end());
        do {
            LieBasisElement e;
            e.subset = mask;
            e.sequence.push_back(chosen[0]);
            e.sequence.insert(e.sequence.end(), rest.begin(), rest.end());
            index_.emplace(e.sequence, elements_.size());
            elements_.push_back(std::move(e));
        } while (std::next_permutation(rest.begin(), rest.end()));

        int i = degree - 1;
        while (i >= 0 && chosen[static_cast<std::size_t>(i)] == num_gens - degree + 1 + i) --i;
        if (i < 0) break;
        ++chosen[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < degree; ++j) {
            chosen[static_cast<std::size_t>(j)] = chosen[static_cast<std::size_t>(j - 1)] + 1;
        }
    }
}

std::optional<std::size_t> LieBasis::index_of(const std::vector<int>& sequence) const {
    auto it = index_.find(sequence);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::size_t LieBasis::block_offset(std::uint32_t subset) const {
    auto it = offsets_.find(subset);
    if (it == offsets_.end()) throw std::out_of_range("subset is not a block of this basis");
    return it->second;
}

LieBasis build_basis(int num_gens, int degree) {
    if (degree < 2) throw std::invalid_argument("basis degree must be >= 2");
    return LieBasis(num_gens, degree);
}

IntegerVector coordinates(const LieCombination& combination, const LieBasis& basis) {
    IntegerVector out(basis.size());
    for (const auto& [seq, c] : combination) {
        if (static_cast<int>(seq.size()) != basis.degree()) {
            throw std::invalid_argument("bracket degree does not match basis degree");
        }
        for (int g : seq) {
            if (g > basis.num_gens()) throw std::out_of_range("generator outside the basis alphabet");
        }
        auto idx = basis.index_of(seq);
        if (!idx) throw std::invalid_argument("combination is not in canonical form");
        out[*idx] += c;
    }
    return out;
}

IntegerVector straighten(const LieBracket& b, const LieBasis& basis) {
    if (b.degree() != basis.degree()) throw std::invalid_argument("bracket degree does not match basis degree");
    for (int g : b.leaves()) {
        if (g > basis.num_gens()) throw std::out_of_range("generator outside the basis alphabet");
    }
    return coordinates(canonical_form(b), basis);
}

// ---------------------------------------------------------------------------

std::string describe(const RelationRow& row) {
    auto seq_text = [](const std::vector<int>& seq) {
        std::string s = seq.size() == 1 ? "" : "[";
        for (std::size_t i = 0; i < seq.size(); ++i) {
            if (i > 0) s += ",";
            s += "x" + std::to_string(seq[i]);
        }
        if (seq.size() > 1) s += "]";
        return s;
    };
    if (row.kind == RelationKind::Closure) {
        return "[r" + std::to_string(row.parent) + ",x" + std::to_string(row.closing_generator) + "]";
    }
    std::string out = "sym(" + seq_text(row.pieces.front()) + ";";
    for (std::size_t i = 1; i < row.pieces.size(); ++i) {
        if (i > 1) out += ",";
        out += seq_text(row.pieces[i]);
    }
    return out + ")";
}

IntegerVector full_coordinates(const RelationRow& row, const LieBasis& basis) {
    IntegerVector out(basis.size());
    const std::size_t offset = basis.block_offset(row.subset);
    for (std::size_t i = 0; i < row.coords.size(); ++i) out[offset + i] = row.coords[i];
    return out;
}

namespace {

// All ways to split `members` into `parts` nonempty unordered blocks, blocks
// listed in order of their smallest element.
void set_partitions(const std::vector<int>& members, int parts, std::vector<std::vector<std::vector<int>>>& out) {
    const std::size_t m = members.size();
    if (parts < 1 || m < static_cast<std::size_t>(parts)) return;
    std::vector<int> label(m, 0);
    // Restricted growth strings with exactly `parts` distinct labels.
    std::vector<int> prefix_max(m, 0);
    auto emit = [&] {
        std::vector<std::vector<int>> blocks(static_cast<std::size_t>(parts));
        for (std::size_t i = 0; i < m; ++i) blocks[static_cast<std::size_t>(label[i])].push_back(members[i]);
        out.push_back(std::move(blocks));
    };
    std::function<void(std::size_t, int)> rec = [&](std::size_t i, int used) {
        if (i == m) {
            if (used == parts) emit();
            return;
        }
        const int remaining = static_cast<int>(m - i);
        for (int l = 0; l <= std::min(used, parts - 1); ++l) {
            const int next_used = std::max(used, l + 1);
            if (parts - next_used > remaining - 1) continue;
            label[i] = l;
            rec(i + 1, next_used);
        }
    };
    rec(0, 0);
}

// Basis sequences of the Lie elements supported exactly on `members`.
std::vector<std::vector<int>> basis_sequences(const std::vector<int>& members) {
    std::vector<std::vector<int>> out;
    std::vector<int> rest(members.begin() + 1, members.end());
    do {
        std::vector<int> seq{members[0]};
        seq.insert(seq.end(), rest.begin(), rest.end());
        out.push_back(std::move(seq));
    } while (std::next_permutation(rest.begin(), rest.end()));
    return out;
}

IntegerVector block_coordinates(const LieCombination& combination, const LieBasis& basis, std::uint32_t subset) {
    const std::size_t offset = basis.block_offset(subset);
    IntegerVector out(basis.block_size());
    for (const auto& [seq, c] : combination) {
        auto idx = basis.index_of(seq);
        if (!idx || *idx < offset || *idx >= offset + basis.block_size()) {
            throw std::logic_error("relation leaves its subset block");
        }
        out[*idx - offset] += c;
    }
    return out;
}

// Sign-normalized key for duplicate detection.
IntegerVector normalized(const IntegerVector& v) {
    auto first = std::find_if(v.begin(), v.end(), [](const Integer& x) { return x != 0; });
    if (first == v.end() || *first > 0) return v;
    IntegerVector out = v;
    for (auto& x : out) x = -x;
    return out;
}

class RowCollector {
public:
    explicit RowCollector(std::vector<RelationRow>& rows) : rows_(rows) {}

    void add(RelationRow row) {
        if (std::all_of(row.coords.begin(), row.coords.end(), [](const Integer& x) { return x == 0; })) return;
        auto key = normalized(row.coords);
        if (!seen_[row.subset].insert(std::move(key)).second) return;
        rows_.push_back(std::move(row));
    }

private:
    std::vector<RelationRow>& rows_;
    std::map<std::uint32_t, std::set<IntegerVector>> seen_;
};

void add_symmetrizations(const LieBasis& basis, int engel_order, RowCollector& collector) {
    for (std::uint32_t subset : basis.subsets()) {
        const auto members = subset_members(subset);
        // Choose the support of Y, then split the rest into e pieces.
        const std::size_t m = members.size();
        for (std::uint32_t ymask = 1; ymask < (1u << m); ++ymask) {
            std::vector<int> ymembers, others;
            for (std::size_t i = 0; i < m; ++i) ((ymask >> i) & 1u ? ymembers : others).push_back(members[i]);
            std::vector<std::vector<std::vector<int>>> partitions;
            set_partitions(others, engel_order, partitions);
            for (const auto& blocks : partitions) {
                // Every choice of basis element on Y and on each block.
                std::vector<std::vector<std::vector<int>>> choices;
                choices.push_back(basis_sequences(ymembers));
                for (const auto& block : blocks) choices.push_back(basis_sequences(block));
                std::vector<std::size_t> pick(choices.size(), 0);
                while (true) {
                    std::vector<std::vector<int>> pieces;
                    for (std::size_t i = 0; i < choices.size(); ++i) pieces.push_back(choices[i][pick[i]]);

                    LieCombination sum;
                    std::vector<std::size_t> order(pieces.size() - 1);
                    std::iota(order.begin(), order.end(), 1);
                    do {
                        LieCombination current{{pieces[0], Integer{1}}};
                        for (std::size_t k : order) {
                            LieCombination next;
                            for (const auto& [seq, c] : current) add_to(next, bracket_sequences(seq, pieces[k]), c);
                            current = std::move(next);
                        }
                        for (const auto& [seq, c] : current) add_to(sum, canonical_form(seq), c);
                    } while (std::next_permutation(order.begin(), order.end()));

                    RelationRow row;
                    row.subset = subset;
                    row.coords = block_coordinates(sum, basis, subset);
                    row.kind = RelationKind::Symmetrization;
                    GroupWord x;
                    for (std::size_t k = 1; k < pieces.size(); ++k) x = x * realize_sequence(pieces[k]);
                    std::vector<GroupWord> entries{realize_sequence(pieces[0])};
                    for (int k = 0; k < engel_order; ++k) entries.push_back(x);
                    row.witness = left_normed(entries);
                    row.pieces = std::move(pieces);
                    collector.add(std::move(row));

                    std::size_t i = 0;
                    while (i < pick.size() && ++pick[i] == choices[i].size()) pick[i++] = 0;
                    if (i == pick.size()) break;
                }
            }
        }
    }
}

void add_closures(const RelationLattice& previous, const LieBasis& basis, RowCollector& collector) {
    const auto& prev_basis = previous.basis;
    for (std::size_t r = 0; r < previous.rows.size(); ++r) {
        const auto& parent = previous.rows[r];
        const std::size_t parent_offset = prev_basis.block_offset(parent.subset);
        for (int g = 1; g <= basis.num_gens(); ++g) {
            const std::uint32_t bit = 1u << (g - 1);
            if (parent.subset & bit) continue;
            LieCombination sum;
            for (std::size_t i = 0; i < parent.coords.size(); ++i) {
                if (parent.coords[i] == 0) continue;
                auto seq = prev_basis.elements()[parent_offset + i].sequence;
                seq.push_back(g);
                add_to(sum, canonical_form(seq), parent.coords[i]);
            }
            RelationRow row;
            row.subset = parent.subset | bit;
            row.coords = block_coordinates(sum, basis, row.subset);
            row.kind = RelationKind::Closure;
            row.parent = r;
            row.closing_generator = g;
            row.witness = commutator(parent.witness, GroupWord::generator(g));
            collector.add(std::move(row));
        }
    }
}

RelationLattice next_lattice(const RelationLattice* previous, int num_gens, int degree, int engel_order) {
    RelationLattice out;
    out.num_gens = num_gens;
    out.degree = degree;
    out.engel_order = engel_order;
    out.basis = LieBasis(num_gens, degree);
    if (degree < engel_order + 1 || degree > num_gens) return out;
    RowCollector collector(out.rows);
    add_symmetrizations(out.basis, engel_order, collector);
    if (previous != nullptr && previous->degree == degree - 1) add_closures(*previous, out.basis, collector);
    return out;
}

void check_parameters(int num_gens, int degree, int engel_order) {
    if (num_gens < 1 || num_gens > 12) throw std::invalid_argument("generator count must lie in 1..12");
    if (degree < 2) throw std::invalid_argument("degree must be >= 2");
    if (engel_order < 1) throw std::invalid_argument("Engel order must be >= 1");
}

DegreeReport report_degree(const RelationLattice& lattice) {
    DegreeReport report;
    report.degree = lattice.degree;
    report.basis_rank = lattice.basis.size();
    report.relation_count = lattice.rows.size();

    std::map<std::uint32_t, LatticeEchelon> echelons;
    for (std::uint32_t subset : lattice.basis.subsets()) echelons.emplace(subset, LatticeEchelon(lattice.basis.block_size()));
    for (const auto& row : lattice.rows) {
        auto& echelon = echelons.at(row.subset);
        if (!echelon.is_full()) echelon.add_row(row.coords);
    }

    std::vector<Integer> all;
    for (std::uint32_t subset : lattice.basis.subsets()) {
        const auto& echelon = echelons.at(subset);
        SubsetQuotient block;
        block.subset = subset;
        const auto rows = echelon.rows();
        block.invariant_factors = smith_invariant_factors(rows, lattice.basis.block_size());
        block.free_rank = lattice.basis.block_size() - block.invariant_factors.size();
        report.free_rank += block.free_rank;
        all.insert(all.end(), block.invariant_factors.begin(), block.invariant_factors.end());
        report.blocks.push_back(std::move(block));
    }
    report.invariant_factors = combine_invariant_factors(all);
    return report;
}

}  // namespace

RelationLattice engel_relations(int num_gens, int degree, int engel_order) {
    check_parameters(num_gens, degree, engel_order);
    std::optional<RelationLattice> previous;
    for (int d = std::max(2, engel_order + 1); d < degree; ++d) {
        previous = next_lattice(previous ? &*previous : nullptr, num_gens, d, engel_order);
    }
    return next_lattice(previous ? &*previous : nullptr, num_gens, degree, engel_order);
}

std::vector<Integer> DegreeReport::torsion() const {
    std::vector<Integer> out;
    for (const auto& f : invariant_factors) {
        if (f != 1) out.push_back(f);
    }
    return out;
}

bool DegreeReport::quotient_trivial() const { return free_rank == 0 && torsion().empty(); }

std::optional<int> QuotientReport::class_bound() const {
    if (max_degree != num_gens) return std::nullopt;
    int bound = num_gens;
    for (auto it = degrees.rbegin(); it != degrees.rend() && it->quotient_trivial(); ++it) bound = it->degree - 1;
    return bound;
}

QuotientReport quotient_report(int num_gens, int max_degree, int engel_order) {
    check_parameters(num_gens, max_degree, engel_order);
    if (max_degree > num_gens) throw std::invalid_argument("max degree must not exceed the generator count");
    QuotientReport report;
    report.num_gens = num_gens;
    report.max_degree = max_degree;
    report.engel_order = engel_order;
    std::optional<RelationLattice> previous;
    for (int d = 2; d <= max_degree; ++d) {
        auto lattice = next_lattice(previous ? &*previous : nullptr, num_gens, d, engel_order);
        report.degrees.push_back(report_degree(lattice));
        previous = std::move(lattice);
    }
    return report;
}

}  // namespace commkit
