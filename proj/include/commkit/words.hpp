#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <map>
#include <span>
#include <vector>

namespace commkit {

/// One letter g_i^{+1} or g_i^{-1} of a free-group word. Generators are 1-based.
struct Letter {
    int generator = 1;
    int exponent = 1;

    friend bool operator==(const Letter&, const Letter&) = default;
    friend auto operator<=>(const Letter&, const Letter&) = default;
};

/// Freely reduced word in the free group on generators 1, 2, ...
///
/// The empty word is the identity. Every constructor reduces, so two words
/// are equal in F_n exactly when their letter sequences are equal.
class GroupWord {
public:
    GroupWord() = default;

    /// Single generator g_index (index >= 1).
    static GroupWord generator(int index);

    /// Free reduction of an arbitrary letter sequence.
    static GroupWord from_letters(std::span<const Letter> letters);
    static GroupWord from_letters(std::initializer_list<Letter> letters);

    std::span<const Letter> letters() const noexcept { return letters_; }
    std::size_t length() const noexcept { return letters_.size(); }
    bool is_identity() const noexcept { return letters_.empty(); }

    /// Largest generator index occurring, 0 for the identity.
    int max_generator() const noexcept;
    bool contains(int generator) const noexcept;
    int exponent_sum(int generator) const noexcept;

    friend bool operator==(const GroupWord&, const GroupWord&) = default;
    friend auto operator<=>(const GroupWord&, const GroupWord&) = default;

private:
    std::vector<Letter> letters_;
};

GroupWord free_reduce(std::span<const Letter> letters);

GroupWord multiply(const GroupWord& u, const GroupWord& v);
GroupWord invert(const GroupWord& u);
GroupWord power(const GroupWord& u, int exponent);

/// u^c = c^{-1} u c.
GroupWord conjugate(const GroupWord& u, const GroupWord& c);

/// [u, v] = u^{-1} v^{-1} u v.
GroupWord commutator(const GroupWord& u, const GroupWord& v);

/// Left-normed [g_1, g_2, ..., g_k] = [[...[g_1, g_2], ...], g_k]; requires k >= 2.
GroupWord left_normed(std::span<const GroupWord> entries);
GroupWord left_normed(std::initializer_list<GroupWord> entries);

/// Left-normed commutator of generators given by index.
GroupWord basic_commutator(std::span<const int> indices);
GroupWord basic_commutator(std::initializer_list<int> indices);

/// Homomorphic image under generator -> word. Every generator of u must be mapped.
GroupWord substitute(const GroupWord& u, const std::map<int, GroupWord>& images);
GroupWord substitute(const GroupWord& u, const std::function<GroupWord(int)>& image);

inline GroupWord operator*(const GroupWord& u, const GroupWord& v) { return multiply(u, v); }

}  // namespace commkit
