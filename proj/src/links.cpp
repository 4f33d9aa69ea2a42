#include "commkit/links.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <set>
#include <stdexcept>

namespace commkit {

namespace {

void check_component(const LinkPresentation& link, int component) {
    if (component < 1 || component > link.size()) {
        throw std::out_of_range("component " + std::to_string(component) + " outside 1.." +
                                std::to_string(link.size()));
    }
}

GroupWord reindexed(const GroupWord& w, const std::function<GroupWord(int)>& image) { return substitute(w, image); }

std::vector<std::string> shifted_names(const LinkPresentation& link, int component, int copies) {
    if (!link.has_names()) return {};
    std::vector<std::string> out;
    for (int j = 1; j <= link.size(); ++j) {
        if (j != component) {
            out.push_back(link.name(j));
            continue;
        }
        for (int c = 1; c <= copies; ++c) out.push_back(link.name(j) + "." + std::to_string(c));
    }
    return out;
}

ReducedSeries longitude_expansion(const LinkPresentation& link, int component) {
    return expand_reduced(link.longitude(component), link.size());
}

}  // namespace

LinkPresentation::LinkPresentation(std::vector<GroupWord> longitudes, std::vector<std::string> names)
    : longitudes_(std::move(longitudes)), names_(std::move(names)) {
    const int n = size();
    if (n < 1) throw std::invalid_argument("a link needs at least one component");
    if (n > Monomial::kMaxDegree) {
        throw std::invalid_argument("at most " + std::to_string(Monomial::kMaxDegree) + " components supported");
    }
    if (!names_.empty() && static_cast<int>(names_.size()) != n) {
        throw std::invalid_argument("name list does not match component count");
    }
    for (int i = 1; i <= n; ++i) {
        const auto& w = longitudes_[static_cast<std::size_t>(i - 1)];
        if (w.max_generator() > n) {
            throw std::invalid_argument("longitude " + std::to_string(i) + " uses meridian m" +
                                        std::to_string(w.max_generator()) + " of a " + std::to_string(n) +
                                        "-component link");
        }
        if (w.contains(i)) {
            throw std::invalid_argument("longitude " + std::to_string(i) + " involves its own meridian");
        }
    }
}

const GroupWord& LinkPresentation::longitude(int component) const {
    if (component < 1 || component > size()) throw std::out_of_range("component index out of range");
    return longitudes_[static_cast<std::size_t>(component - 1)];
}

std::string LinkPresentation::name(int component) const {
    if (component < 1 || component > size()) throw std::out_of_range("component index out of range");
    if (names_.empty()) return "l" + std::to_string(component);
    return names_[static_cast<std::size_t>(component - 1)];
}

LinkPresentation LinkPresentation::with_longitude(int component, GroupWord word) const {
    auto longitudes = longitudes_;
    longitudes.at(static_cast<std::size_t>(component - 1)) = std::move(word);
    return LinkPresentation(std::move(longitudes), names_);
}

LinkPresentation hopf() { return LinkPresentation({GroupWord::generator(2), GroupWord::generator(1)}); }

LinkPresentation unlink(int components) {
    return LinkPresentation(std::vector<GroupWord>(static_cast<std::size_t>(components)));
}

LinkPresentation bing_double(const LinkPresentation& link, int component) {
    check_component(link, component);
    const int i = component;
    auto image = [i](int j) {
        if (j < i) return GroupWord::generator(j);
        if (j == i) return commutator(GroupWord::generator(i), GroupWord::generator(i + 1));
        return GroupWord::generator(j + 1);
    };
    std::vector<GroupWord> out;
    for (int j = 1; j <= link.size(); ++j) {
        const GroupWord w = reindexed(link.longitude(j), image);
        if (j != i) {
            out.push_back(w);
            continue;
        }
        out.push_back(commutator(GroupWord::generator(i + 1), w));
        out.push_back(commutator(GroupWord::generator(i), w));
    }
    return LinkPresentation(std::move(out), shifted_names(link, i, 2));
}

LinkPresentation ramify(const LinkPresentation& link, int component, int copies) {
    check_component(link, component);
    if (copies < 2) throw std::invalid_argument("ramification needs at least 2 copies");
    const int i = component;
    auto image = [i, copies](int j) {
        if (j < i) return GroupWord::generator(j);
        if (j > i) return GroupWord::generator(j + copies - 1);
        GroupWord product;
        for (int c = 0; c < copies; ++c) product = product * GroupWord::generator(i + c);
        return product;
    };
    std::vector<GroupWord> out;
    for (int j = 1; j <= link.size(); ++j) {
        const GroupWord w = reindexed(link.longitude(j), image);
        const int repeat = j == i ? copies : 1;
        for (int c = 0; c < repeat; ++c) out.push_back(w);
    }
    return LinkPresentation(std::move(out), shifted_names(link, i, copies));
}

LinkPresentation band_sum(const LinkPresentation& link, int component, const GroupWord& insert, int exponent) {
    check_component(link, component);
    if (exponent != 1 && exponent != -1) throw std::invalid_argument("band-sum exponent must be +1 or -1");
    if (insert.contains(component)) {
        throw std::invalid_argument("band-sum insert involves the meridian of component " + std::to_string(component));
    }
    const GroupWord piece = exponent > 0 ? insert : invert(insert);
    return link.with_longitude(component, link.longitude(component) * piece);
}

LinkPresentation release(const LinkPresentation& link, int component) {
    check_component(link, component);
    auto image = [component](int j) { return j == component ? GroupWord{} : GroupWord::generator(j); };
    std::vector<GroupWord> out;
    for (int j = 1; j <= link.size(); ++j) {
        out.push_back(j == component ? link.longitude(j) : substitute(link.longitude(j), image));
    }
    std::vector<std::string> names;
    if (link.has_names()) {
        for (int j = 1; j <= link.size(); ++j) names.push_back(link.name(j));
    }
    return LinkPresentation(std::move(out), std::move(names));
}

LinkPresentation sublink(const LinkPresentation& link, const std::vector<int>& keep) {
    if (keep.empty()) throw std::invalid_argument("sublink needs at least one component");
    std::vector<int> new_index(static_cast<std::size_t>(link.size() + 1), 0);
    for (std::size_t k = 0; k < keep.size(); ++k) {
        check_component(link, keep[k]);
        if (k > 0 && keep[k] <= keep[k - 1]) throw std::invalid_argument("sublink indices must be increasing");
        new_index[static_cast<std::size_t>(keep[k])] = static_cast<int>(k) + 1;
    }
    auto image = [&new_index](int j) {
        const int t = new_index[static_cast<std::size_t>(j)];
        return t == 0 ? GroupWord{} : GroupWord::generator(t);
    };
    std::vector<GroupWord> out;
    std::vector<std::string> names;
    for (int j : keep) {
        out.push_back(substitute(link.longitude(j), image));
        if (link.has_names()) names.push_back(link.name(j));
    }
    return LinkPresentation(std::move(out), std::move(names));
}

LinkPresentation remove_component(const LinkPresentation& link, int component) {
    check_component(link, component);
    std::vector<int> keep;
    for (int j = 1; j <= link.size(); ++j) {
        if (j != component) keep.push_back(j);
    }
    return sublink(link, keep);
}

// ---------------------------------------------------------------------------

std::string to_string(const MuIndex& idx) {
    bool wide = idx.target > 9;
    for (int s : idx.sources) wide = wide || s > 9;
    std::string out = "mu(";
    for (std::size_t k = 0; k < idx.sources.size(); ++k) {
        if (wide && k > 0) out += ",";
        out += std::to_string(idx.sources[k]);
    }
    return out + ";" + std::to_string(idx.target) + ")";
}

namespace {

void check_index(const LinkPresentation& link, const MuIndex& idx) {
    if (idx.sources.empty()) throw std::invalid_argument("mu index needs at least one source");
    std::set<int> seen{idx.target};
    if (idx.target < 1 || idx.target > link.size()) throw std::invalid_argument("mu target out of range");
    for (int s : idx.sources) {
        if (s < 1 || s > link.size()) throw std::invalid_argument("mu source out of range");
        if (!seen.insert(s).second) throw std::invalid_argument("mu index repeats a component");
    }
}

Integer coefficient_of(const std::vector<ReducedSeries>& expansions, const std::vector<int>& sequence) {
    const std::vector<int> sources(sequence.begin(), sequence.end() - 1);
    return expansions[static_cast<std::size_t>(sequence.back() - 1)].coefficient(Monomial(sources));
}

}  // namespace

MuValue mu_bar(const LinkPresentation& link, const MuIndex& idx) {
    check_index(link, idx);
    std::vector<ReducedSeries> expansions;
    for (int j = 1; j <= link.size(); ++j) expansions.push_back(longitude_expansion(link, j));

    std::vector<int> full = idx.sources;
    full.push_back(idx.target);
    MuValue out;
    out.value = coefficient_of(expansions, full);

    const std::size_t len = full.size();
    for (std::size_t rot = 0; rot < len && out.well_defined; ++rot) {
        std::vector<int> rotated(full.begin() + static_cast<std::ptrdiff_t>(rot), full.end());
        rotated.insert(rotated.end(), full.begin(), full.begin() + static_cast<std::ptrdiff_t>(rot));
        // Proper subsequences of length >= 2.
        for (std::uint32_t mask = 1; mask + 1 < (1u << len); ++mask) {
            if (std::popcount(mask) < 2) continue;
            std::vector<int> sub;
            for (std::size_t k = 0; k < len; ++k) {
                if ((mask >> k) & 1u) sub.push_back(rotated[k]);
            }
            if (coefficient_of(expansions, sub) != 0) {
                out.well_defined = false;
                break;
            }
        }
    }
    return out;
}

TrivialityResult homotopically_trivial(const LinkPresentation& link) {
    TrivialityResult out;
    std::optional<std::pair<int, int>> best;  // (degree, target)
    for (int j = 1; j <= link.size(); ++j) {
        auto series = longitude_expansion(link, j);
        series -= ReducedSeries::one(link.size(), link.size());
        const auto degree = series.lowest_degree();
        if (!degree) continue;
        if (best && best->first <= *degree) continue;
        best = {*degree, j};
        const auto leading = series.homogeneous_part(*degree).sorted_terms();
        out.trivial = false;
        out.witness = MuIndex{leading.front().first.indices(), j};
        out.value = leading.front().second;
    }
    return out;
}

std::optional<int> filtration_level(const LinkPresentation& link) {
    const auto result = homotopically_trivial(link);
    if (result.trivial) return std::nullopt;
    return result.witness->length();
}

MuWitnessError::MuWitnessError(const std::string& what, MuIndex index, Integer value)
    : DomainError(what + ": " + to_string(index) + "=" + to_string(value)),
      index_(std::move(index)),
      value_(std::move(value)) {}

// ---------------------------------------------------------------------------

GbrTree GbrTree::leaf(int multiplicity) {
    if (multiplicity < 1) throw std::invalid_argument("leaf multiplicity must be >= 1");
    GbrTree t;
    t.multiplicity_ = multiplicity;
    return t;
}

GbrTree GbrTree::node(GbrTree left, GbrTree right) {
    GbrTree t;
    t.left_ = std::make_shared<const GbrTree>(std::move(left));
    t.right_ = std::make_shared<const GbrTree>(std::move(right));
    return t;
}

const GbrTree& GbrTree::left() const {
    if (is_leaf()) throw std::logic_error("leaf has no children");
    return *left_;
}

const GbrTree& GbrTree::right() const {
    if (is_leaf()) throw std::logic_error("leaf has no children");
    return *right_;
}

int GbrTree::component_count() const noexcept {
    return is_leaf() ? multiplicity_ : left_->component_count() + right_->component_count();
}

int GbrTree::depth() const noexcept { return is_leaf() ? 0 : 1 + std::max(left_->depth(), right_->depth()); }

bool operator==(const GbrTree& a, const GbrTree& b) {
    if (a.is_leaf() || b.is_leaf()) return a.is_leaf() && b.is_leaf() && a.multiplicity_ == b.multiplicity_;
    return *a.left_ == *b.left_ && *a.right_ == *b.right_;
}

std::string to_string(const GbrTree& tree) {
    if (tree.is_leaf()) return std::to_string(tree.multiplicity());
    return "(" + to_string(tree.left()) + "," + to_string(tree.right()) + ")";
}

std::string to_string(const GbrSpec& spec) { return to_string(spec.first) + " ; " + to_string(spec.second); }

namespace {

LinkPresentation apply_tree(LinkPresentation link, const GbrTree& tree, int index) {
    if (tree.is_leaf()) {
        return tree.multiplicity() >= 2 ? ramify(link, index, tree.multiplicity()) : link;
    }
    link = bing_double(link, index);
    link = apply_tree(std::move(link), tree.left(), index);
    return apply_tree(std::move(link), tree.right(), index + tree.left().component_count());
}

}  // namespace

GbrLink build_gbr(const GbrSpec& spec) {
    const int total = spec.first.component_count() + spec.second.component_count();
    if (total > Monomial::kMaxDegree) {
        throw std::invalid_argument("GBR spec yields " + std::to_string(total) + " components, at most " +
                                    std::to_string(Monomial::kMaxDegree) + " supported");
    }
    LinkPresentation link = hopf();
    link = apply_tree(std::move(link), spec.first, 1);
    link = apply_tree(std::move(link), spec.second, 1 + spec.first.component_count());
    auto level = filtration_level(link);
    return GbrLink{std::move(link), level};
}

// ---------------------------------------------------------------------------

LinkPresentation apply_plan(const LinkPresentation& link, const StabilizationPlan& plan) {
    LinkPresentation out = link;
    for (const auto& step : plan.instructions) out = band_sum(out, step.component, step.insert, step.exponent);
    for (int j : plan.release_order) out = release(out, j);
    return out;
}

StabilizationResult stabilize_and_trivialize(const LinkPresentation& link) {
    const auto check = homotopically_trivial(link);
    if (!check.trivial && check.witness->length() <= 4) {
        throw MuWitnessError("invariant of length <= 4 does not vanish", *check.witness, check.value);
    }

    const int n = link.size();
    const MilnorContext ctx(n);
    StabilizationResult out{StabilizationPlan{}, link, {}, {}};
    LinkPresentation current = link;
    std::vector<bool> released(static_cast<std::size_t>(n + 1), false);
    std::size_t next_term = 1;

    while (true) {
        bool progress = true;
        while (progress) {
            progress = false;
            for (int j = 1; j <= n; ++j) {
                if (released[static_cast<std::size_t>(j)] || !milnor_trivial(current.longitude(j), ctx)) continue;
                current = release(current, j);
                released[static_cast<std::size_t>(j)] = true;
                out.plan.release_order.push_back(j);
                progress = true;
            }
        }

        int chosen = 0;
        int chosen_degree = 0;
        for (int j = 1; j <= n; ++j) {
            if (released[static_cast<std::size_t>(j)]) continue;
            const int degree = *lcs_degree(current.longitude(j), ctx);
            if (degree > chosen_degree) {
                chosen = j;
                chosen_degree = degree;
            }
        }
        if (chosen == 0) break;

        auto cert = engel_decompose(current.longitude(chosen), ctx);
        const std::size_t first_id = next_term;
        next_term += cert.terms.size();
        for (std::size_t t = cert.terms.size(); t-- > 0;) {
            const auto& term = cert.terms[t];
            BandSumInstruction step;
            step.component = chosen;
            step.insert = term.realize();
            step.exponent = -1;
            step.term_id = first_id + t;
            step.type = term.type().value_or('?');
            for (int g = 1; g <= n; ++g) {
                if (step.insert.contains(g)) step.participants.push_back(g);
            }
            current = band_sum(current, chosen, step.insert, step.exponent);
            out.plan.instructions.push_back(std::move(step));
        }
        if (!milnor_trivial(current.longitude(chosen), ctx)) {
            throw std::logic_error("certificate failed to trivialize component " + std::to_string(chosen));
        }
        out.certified_components.push_back(chosen);
        out.proof.push_back(std::move(cert));
    }
    out.result = current;
    return out;
}

}  // namespace commkit
