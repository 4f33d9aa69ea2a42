#pragma once

#include "commkit/engel.hpp"
#include "commkit/integer.hpp"
#include "commkit/milnor.hpp"
#include "commkit/words.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace commkit {

/// A link up to link homotopy, given by one longitude word per component in
/// the meridians m_1..m_n. Longitude i never involves m_i.
class LinkPresentation {
public:
    /// Throws std::invalid_argument on an empty link, a self-meridian, an
    /// out-of-range meridian, or a name list of the wrong length.
    explicit LinkPresentation(std::vector<GroupWord> longitudes, std::vector<std::string> names = {});

    int size() const noexcept { return static_cast<int>(longitudes_.size()); }
    const std::vector<GroupWord>& longitudes() const noexcept { return longitudes_; }
    /// 1-based.
    const GroupWord& longitude(int component) const;
    /// Component label, "l<i>" unless named.
    std::string name(int component) const;
    bool has_names() const noexcept { return !names_.empty(); }

    LinkPresentation with_longitude(int component, GroupWord word) const;

    friend bool operator==(const LinkPresentation&, const LinkPresentation&) = default;

private:
    std::vector<GroupWord> longitudes_;
    std::vector<std::string> names_;
};

LinkPresentation hopf();
LinkPresentation unlink(int components);

/// Replaces component i by a clasped pair i, i+1 (later components shift up by one):
/// w_i = [m_{i+1}, w], w_{i+1} = [m_i, w] for the old longitude w, and m_i becomes
/// [m_i, m_{i+1}] in every other longitude.
LinkPresentation bing_double(const LinkPresentation& link, int component);

/// Replaces component i by r untwisted parallel copies i..i+r-1 sharing its
/// longitude; m_i becomes m_i m_{i+1} ... m_{i+r-1} in every other longitude.
LinkPresentation ramify(const LinkPresentation& link, int component, int copies);

/// w_i -> w_i * insert^exponent. The insert must avoid m_i.
LinkPresentation band_sum(const LinkPresentation& link, int component, const GroupWord& insert, int exponent);

/// Substitutes m_j -> 1 in every longitude other than w_j (component j is
/// moved off into a ball, which is possible once w_j is trivial in MF_n).
LinkPresentation release(const LinkPresentation& link, int component);

/// The components listed (1-based, strictly increasing), renumbered 1..k.
LinkPresentation sublink(const LinkPresentation& link, const std::vector<int>& keep);
LinkPresentation remove_component(const LinkPresentation& link, int component);

struct MuIndex {
    std::vector<int> sources;
    int target = 0;

    /// Total number of indices, sources plus target.
    int length() const noexcept { return static_cast<int>(sources.size()) + 1; }
    friend bool operator==(const MuIndex&, const MuIndex&) = default;
};

/// "mu(23;1)"; indices are comma-separated once any exceeds 9.
std::string to_string(const MuIndex& idx);

struct MuValue {
    Integer value;
    /// Every shorter invariant obtained from a cyclic rotation of the index
    /// sequence followed by deleting entries vanishes.
    bool well_defined = true;
};

/// Coefficient of x_{i1}...x_{ik} in the reduced expansion of w_target.
/// Throws std::invalid_argument for repeated or out-of-range indices.
MuValue mu_bar(const LinkPresentation& link, const MuIndex& idx);

struct TrivialityResult {
    bool trivial = true;
    /// First nonzero invariant by length, then target, then sources.
    std::optional<MuIndex> witness;
    Integer value;
};

TrivialityResult homotopically_trivial(const LinkPresentation& link);

/// Length of the shortest nonzero distinct-index invariant, nullopt for a
/// homotopically trivial link.
std::optional<int> filtration_level(const LinkPresentation& link);

/// Raised when a link invariant contradicts a required hypothesis.
class MuWitnessError : public DomainError {
public:
    MuWitnessError(const std::string& what, MuIndex index, Integer value);
    const MuIndex& index() const noexcept { return index_; }
    const Integer& value() const noexcept { return value_; }

private:
    MuIndex index_;
    Integer value_;
};

/// Rooted binary tree: leaves carry a ramification multiplicity >= 1,
/// internal nodes a Bing doubling.
class GbrTree {
public:
    static GbrTree leaf(int multiplicity = 1);
    static GbrTree node(GbrTree left, GbrTree right);

    bool is_leaf() const noexcept { return !left_; }
    int multiplicity() const noexcept { return multiplicity_; }
    const GbrTree& left() const;
    const GbrTree& right() const;

    int component_count() const noexcept;
    int depth() const noexcept;

    friend bool operator==(const GbrTree& a, const GbrTree& b);

private:
    int multiplicity_ = 1;
    std::shared_ptr<const GbrTree> left_;
    std::shared_ptr<const GbrTree> right_;
};

/// One tree per component of the Hopf link.
struct GbrSpec {
    GbrTree first = GbrTree::leaf();
    GbrTree second = GbrTree::leaf();
};

/// "1 ; ((1,1),(1,1))"
std::string to_string(const GbrTree& tree);
std::string to_string(const GbrSpec& spec);

struct GbrLink {
    LinkPresentation link;
    std::optional<int> filtration_level;
};

/// Hopf link, then tree 1 applied to component 1 and tree 2 to the
/// components that follow it. An internal node doubles its component and
/// recurses into the left child, then the right child; a leaf with
/// multiplicity r >= 2 ramifies into r copies.
GbrLink build_gbr(const GbrSpec& spec);

struct BandSumInstruction {
    int component = 0;
    GroupWord insert;  ///< realized certificate term
    int exponent = -1;
    std::size_t term_id = 0;  ///< 1-based, over all certificates of the plan
    char type = '?';
    std::vector<int> participants;  ///< components whose meridians the insert uses
};

struct StabilizationPlan {
    std::vector<BandSumInstruction> instructions;
    /// Components in the order they are split off.
    std::vector<int> release_order;
    bool empty() const noexcept { return instructions.empty(); }
};

/// Band sums in order, then releases in order.
LinkPresentation apply_plan(const LinkPresentation& link, const StabilizationPlan& plan);

struct StabilizationResult {
    StabilizationPlan plan;
    LinkPresentation result;
    std::vector<int> certified_components;
    std::vector<EngelCertificate> proof;  ///< parallel to certified_components
};

/// Requires every distinct-index invariant of length <= 4 to vanish
/// (MuWitnessError otherwise). Repeatedly splits off components whose
/// longitude is trivial in MF_n; otherwise certifies the remaining component
/// of highest lower-central degree (lowest index on ties) and band-sums it
/// with the inverses of its certificate terms, last term first.
StabilizationResult stabilize_and_trivialize(const LinkPresentation& link);

}  // namespace commkit
