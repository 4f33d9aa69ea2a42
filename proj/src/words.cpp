#include "commkit/words.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace commkit {

namespace {

bool cancels(const Letter& a, const Letter& b) {
    return a.generator == b.generator && a.exponent == -b.exponent;
}

void check_letter(const Letter& letter) {
    if (letter.generator < 1) {
        throw std::invalid_argument("generator index must be >= 1, got " +
                                    std::to_string(letter.generator));
    }
    if (letter.exponent != 1 && letter.exponent != -1) {
        throw std::invalid_argument("letter exponent must be +1 or -1");
    }
}

// Appends `letter` to an already reduced stack.
void push_reduced(std::vector<Letter>& stack, const Letter& letter) {
    if (!stack.empty() && cancels(stack.back(), letter)) {
        stack.pop_back();
    } else {
        stack.push_back(letter);
    }
}

}  // namespace

GroupWord GroupWord::generator(int index) {
    return from_letters({Letter{index, 1}});
}

GroupWord GroupWord::from_letters(std::span<const Letter> letters) {
    GroupWord word;
    word.letters_.reserve(letters.size());
    for (const Letter& letter : letters) {
        check_letter(letter);
        push_reduced(word.letters_, letter);
    }
    return word;
}

GroupWord GroupWord::from_letters(std::initializer_list<Letter> letters) {
    return from_letters(std::span<const Letter>(letters.begin(), letters.size()));
}

int GroupWord::max_generator() const noexcept {
    int best = 0;
    for (const Letter& letter : letters_) best = std::max(best, letter.generator);
    return best;
}

bool GroupWord::contains(int generator) const noexcept {
    return std::any_of(letters_.begin(), letters_.end(),
                       [generator](const Letter& l) { return l.generator == generator; });
}

int GroupWord::exponent_sum(int generator) const noexcept {
    int sum = 0;
    for (const Letter& letter : letters_) {
        if (letter.generator == generator) sum += letter.exponent;
    }
    return sum;
}

GroupWord free_reduce(std::span<const Letter> letters) { return GroupWord::from_letters(letters); }

GroupWord multiply(const GroupWord& u, const GroupWord& v) {
    std::vector<Letter> joined(u.letters().begin(), u.letters().end());
    joined.insert(joined.end(), v.letters().begin(), v.letters().end());
    return GroupWord::from_letters(joined);
}

GroupWord invert(const GroupWord& u) {
    std::vector<Letter> reversed;
    reversed.reserve(u.length());
    for (auto it = u.letters().rbegin(); it != u.letters().rend(); ++it) {
        reversed.push_back(Letter{it->generator, -it->exponent});
    }
    return GroupWord::from_letters(reversed);
}

GroupWord power(const GroupWord& u, int exponent) {
    const GroupWord base = exponent < 0 ? invert(u) : u;
    GroupWord result;
    for (int i = 0; i < std::abs(exponent); ++i) result = multiply(result, base);
    return result;
}

GroupWord conjugate(const GroupWord& u, const GroupWord& c) {
    return multiply(multiply(invert(c), u), c);
}

GroupWord commutator(const GroupWord& u, const GroupWord& v) {
    return multiply(multiply(invert(u), invert(v)), multiply(u, v));
}

GroupWord left_normed(std::span<const GroupWord> entries) {
    if (entries.size() < 2) {
        throw std::invalid_argument("left-normed commutator needs at least two entries");
    }
    GroupWord result = entries[0];
    for (std::size_t i = 1; i < entries.size(); ++i) result = commutator(result, entries[i]);
    return result;
}

GroupWord left_normed(std::initializer_list<GroupWord> entries) {
    return left_normed(std::span<const GroupWord>(entries.begin(), entries.size()));
}

GroupWord basic_commutator(std::span<const int> indices) {
    std::vector<GroupWord> entries;
    entries.reserve(indices.size());
    for (int index : indices) entries.push_back(GroupWord::generator(index));
    return left_normed(entries);
}

GroupWord basic_commutator(std::initializer_list<int> indices) {
    return basic_commutator(std::span<const int>(indices.begin(), indices.size()));
}

GroupWord substitute(const GroupWord& u, const std::map<int, GroupWord>& images) {
    return substitute(u, [&images](int generator) {
        auto it = images.find(generator);
        if (it == images.end()) {
            throw std::invalid_argument("substitution has no image for generator " +
                                        std::to_string(generator));
        }
        return it->second;
    });
}

GroupWord substitute(const GroupWord& u, const std::function<GroupWord(int)>& image) {
    std::vector<Letter> out;
    for (const Letter& letter : u.letters()) {
        GroupWord piece = image(letter.generator);
        if (letter.exponent < 0) piece = invert(piece);
        for (const Letter& l : piece.letters()) push_reduced(out, l);
    }
    return GroupWord::from_letters(out);
}

}  // namespace commkit
