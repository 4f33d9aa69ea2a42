#pragma once

#include "commkit/integer.hpp"
#include "commkit/words.hpp"

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace commkit {

/// Non-commutative monomial x_{i_1} ... x_{i_k}, packed into one 64-bit key.
///
/// Degree is limited to kMaxDegree and indices to 1..kMaxGenerator; the
/// constant monomial 1 has degree 0. Ordering is graded lexicographic.
class Monomial {
public:
    static constexpr int kMaxDegree = 12;
    static constexpr int kMaxGenerator = 31;

    Monomial() = default;
    Monomial(std::initializer_list<int> indices);
    explicit Monomial(std::span<const int> indices);

    int degree() const noexcept { return static_cast<int>(bits_ & 0xF); }
    int operator[](int position) const noexcept {
        return static_cast<int>((bits_ >> (4 + 5 * position)) & 0x1F);
    }
    std::vector<int> indices() const;

    /// Bit i-1 set when x_i occurs.
    std::uint32_t support() const noexcept;
    bool has_repeated_index() const noexcept;
    bool contains(int index) const noexcept;

    Monomial appended(int index) const;
    Monomial concatenated(const Monomial& other) const;

    std::uint64_t key() const noexcept { return bits_; }

    friend bool operator==(const Monomial&, const Monomial&) = default;
    friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) noexcept;

private:
    std::uint64_t bits_ = 0;
};

struct MonomialHash {
    std::size_t operator()(const Monomial& m) const noexcept {
        std::uint64_t x = m.key();
        x ^= x >> 33;
        x *= 0xff51afd7ed558ccdULL;
        x ^= x >> 33;
        return static_cast<std::size_t>(x);
    }
};

enum class SeriesKind { Full, Reduced };

/// Integer non-commutative power series in x_1..x_n truncated above max_degree.
///
/// Kind::Reduced lives in the quotient ring where every monomial with a
/// repeated index is zero; such series never store those monomials.
template <SeriesKind Kind>
class Series {
public:
    using Term = std::pair<Monomial, Integer>;

    Series(int num_gens, int max_degree);

    static Series one(int num_gens, int max_degree);
    static Series variable(int num_gens, int max_degree, int index);

    int num_gens() const noexcept { return num_gens_; }
    int max_degree() const noexcept { return max_degree_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool is_zero() const noexcept { return terms_.empty(); }

    Integer coefficient(const Monomial& m) const;
    Integer constant_term() const { return coefficient(Monomial{}); }

    /// Adds c * m; monomials outside the ring (too long, repeated index in the
    /// reduced ring) are dropped silently, out-of-range indices throw.
    void add_term(const Monomial& m, const Integer& c);

    /// Smallest degree d >= 1 carrying a nonzero coefficient.
    std::optional<int> lowest_degree() const;
    Series homogeneous_part(int degree) const;

    /// Terms in graded lexicographic order.
    std::vector<Term> sorted_terms() const;

    /// In-place right multiplication by M(g^{+1}) = 1 + x_g or M(g^{-1}) = 1 - x_g + x_g^2 - ...
    void multiply_by_letter(const Letter& letter);

    friend bool operator==(const Series& a, const Series& b) {
        return a.num_gens_ == b.num_gens_ && a.max_degree_ == b.max_degree_ && a.terms_ == b.terms_;
    }

    Series& operator+=(const Series& other);
    Series& operator-=(const Series& other);

    friend Series operator+(Series a, const Series& b) { return a += b; }
    friend Series operator-(Series a, const Series& b) { return a -= b; }
    friend Series operator*(const Series& a, const Series& b) { return a.times(b); }

    Series times(const Series& other) const;
    Series scaled(const Integer& factor) const;

private:
    void check_compatible(const Series& other) const;
    bool admits(const Monomial& m) const noexcept;

    int num_gens_;
    int max_degree_;
    std::unordered_map<Monomial, Integer, MonomialHash> terms_;
};

using TruncatedSeries = Series<SeriesKind::Full>;
using ReducedSeries = Series<SeriesKind::Reduced>;

extern template class Series<SeriesKind::Full>;
extern template class Series<SeriesKind::Reduced>;

/// Magnus expansion g_i -> 1 + x_i, truncated at degree max_degree.
TruncatedSeries expand(const GroupWord& word, int num_gens, int max_degree);

/// Magnus expansion computed directly in the reduced ring R, truncated at
/// degree num_gens (the top degree of R). Equal to reduce(expand(word, n, n)).
ReducedSeries expand_reduced(const GroupWord& word, int num_gens);

/// Image in the reduced ring: drops every monomial with a repeated index.
ReducedSeries reduce(const TruncatedSeries& series);

/// "1 + x1·x2 − x2·x1"; the zero series prints as "0".
template <SeriesKind Kind>
std::string to_string(const Series<Kind>& series);

std::string to_string(const Monomial& m);

}  // namespace commkit
