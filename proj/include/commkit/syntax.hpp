#pragma once

#include "commkit/integer.hpp"
#include "commkit/words.hpp"

#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace commkit {

/// Generator naming. Parsing accepts x, y, z, w for 1..4 and any letter
/// followed by digits (m2, x7, g12) for the given index; printing uses the
/// bare letters when `letters` is set and the index is at most 4, otherwise
/// prefix + index.
struct Alphabet {
    std::string prefix = "m";
    bool letters = false;
    /// Largest admissible index; 0 for no bound.
    int size = 0;

    static Alphabet meridians(int size = 0) { return Alphabet{"m", false, size}; }
    static Alphabet xyzw(int size = 0) { return Alphabet{"x", true, size}; }

    std::string name(int generator) const;
};

/// Syntax tree of the word grammar
///   word   := factor+
///   factor := atom [ "^" ( "-1" | atom ) ]
///   atom   := NAME | "1" | "[" word ( "," word )+ "]" | "(" word ")"
/// Brackets with more than two entries are left-normed.
struct WordSyntax {
    enum class Kind { Generator, Identity, Inverse, Product, Conjugate, LeftNormed };
    Kind kind = Kind::Identity;
    int generator = 0;
    std::vector<std::shared_ptr<const WordSyntax>> children;
    std::size_t position = 0;
};

std::shared_ptr<const WordSyntax> parse_word_syntax(std::string_view text, const Alphabet& alphabet = {});
GroupWord lower(const WordSyntax& tree);

/// Throws ParseError with the offending position.
GroupWord parse_word(std::string_view text, const Alphabet& alphabet = {});

/// Space-separated letters such as "m2^-1 m3^-1 m2 m3"; the identity prints as "1".
std::string print_word(const GroupWord& word, const Alphabet& alphabet = {});

/// "[a, b, c]" with each entry printed by print_word.
std::string print_bracket(const std::vector<GroupWord>& entries, const Alphabet& alphabet = {});

/// Splits "[e1, e2, ...]" at top-level commas. Throws ParseError.
std::vector<std::string> split_bracket(std::string_view text);

/// Picks the naming used in `text`: m-prefixed, x/g-prefixed, or bare letters.
Alphabet detect_alphabet(std::string_view text);

}  // namespace commkit
