#include "commkit/syntax.hpp"

#include <cctype>
#include <limits>

namespace commkit {

std::string Alphabet::name(int generator) const {
    if (letters && generator >= 1 && generator <= 4) return std::string(1, "xyzw"[generator - 1]);
    return prefix + std::to_string(generator);
}

namespace {

using Node = std::shared_ptr<const WordSyntax>;

class Parser {
public:
    Parser(std::string_view text, const Alphabet& alphabet) : text_(text), alphabet_(alphabet) {}

    Node parse() {
        auto tree = word();
        skip_space();
        if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        return tree;
    }

private:
    [[noreturn]] void fail(const std::string& message) const { throw ParseError(message, pos_); }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool at_end() {
        skip_space();
        return pos_ == text_.size();
    }

    char peek() { return at_end() ? '\0' : text_[pos_]; }

    void expect(char c) {
        if (peek() != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    static Node make(WordSyntax::Kind kind, std::size_t position, std::vector<Node> children = {}, int generator = 0) {
        auto node = std::make_shared<WordSyntax>();
        node->kind = kind;
        node->position = position;
        node->children = std::move(children);
        node->generator = generator;
        return node;
    }

    static bool starts_atom(char c) {
        return c == '[' || c == '(' || c == '1' || std::isalpha(static_cast<unsigned char>(c));
    }

    Node word() {
        const std::size_t start = (skip_space(), pos_);
        std::vector<Node> factors;
        while (starts_atom(peek())) factors.push_back(factor());
        if (factors.empty()) fail(at_end() ? "unexpected end of input" : "expected a generator, '1', '[' or '('");
        if (factors.size() == 1) return factors.front();
        return make(WordSyntax::Kind::Product, start, std::move(factors));
    }

    Node factor() {
        auto base = atom();
        if (peek() != '^') return base;
        const std::size_t caret = pos_++;
        if (peek() == '-') {
            ++pos_;
            if (peek() != '1') fail("only the exponent -1 is supported");
            ++pos_;
            if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                fail("only the exponent -1 is supported");
            }
            return make(WordSyntax::Kind::Inverse, caret, {std::move(base)});
        }
        if (!starts_atom(peek())) fail("expected '-1' or a conjugating atom after '^'");
        auto by = atom();
        return make(WordSyntax::Kind::Conjugate, caret, {std::move(base), std::move(by)});
    }

    Node atom() {
        const char c = peek();
        const std::size_t start = pos_;
        if (c == '[') {
            ++pos_;
            std::vector<Node> entries{word()};
            while (peek() == ',') {
                ++pos_;
                entries.push_back(word());
            }
            if (entries.size() < 2) fail("a bracket needs at least two entries");
            expect(']');
            return make(WordSyntax::Kind::LeftNormed, start, std::move(entries));
        }
        if (c == '(') {
            ++pos_;
            auto inner = word();
            expect(')');
            return inner;
        }
        if (c == '1') {
            ++pos_;
            if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                fail("a bare number is not a generator");
            }
            return make(WordSyntax::Kind::Identity, start);
        }
        return name();
    }

    Node name() {
        const std::size_t start = pos_;
        const char letter = text_[pos_++];
        std::size_t digits_start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        int index = 0;
        if (pos_ == digits_start) {
            switch (letter) {
                case 'x': index = 1; break;
                case 'y': index = 2; break;
                case 'z': index = 3; break;
                case 'w': index = 4; break;
                default:
                    pos_ = start;
                    fail("unknown generator '" + std::string(1, letter) + "'");
            }
        } else {
            const std::string_view digits = text_.substr(digits_start, pos_ - digits_start);
            if (digits.size() > 6) {
                pos_ = start;
                fail("generator index too large");
            }
            index = std::stoi(std::string(digits));
            if (index < 1) {
                pos_ = start;
                fail("generator indices start at 1");
            }
        }
        if (alphabet_.size > 0 && index > alphabet_.size) {
            pos_ = start;
            fail("generator " + std::string(text_.substr(start, digits_start == pos_ ? 1 : pos_ - start)) +
                 " outside 1.." + std::to_string(alphabet_.size));
        }
        return make(WordSyntax::Kind::Generator, start, {}, index);
    }

    std::string_view text_;
    const Alphabet& alphabet_;
    std::size_t pos_ = 0;
};

}  // namespace

std::shared_ptr<const WordSyntax> parse_word_syntax(std::string_view text, const Alphabet& alphabet) {
    return Parser(text, alphabet).parse();
}

GroupWord lower(const WordSyntax& tree) {
    using Kind = WordSyntax::Kind;
    switch (tree.kind) {
        case Kind::Generator: return GroupWord::generator(tree.generator);
        case Kind::Identity: return GroupWord{};
        case Kind::Inverse: return invert(lower(*tree.children.at(0)));
        case Kind::Conjugate: return conjugate(lower(*tree.children.at(0)), lower(*tree.children.at(1)));
        case Kind::Product: {
            GroupWord out;
            for (const auto& child : tree.children) out = out * lower(*child);
            return out;
        }
        case Kind::LeftNormed: {
            std::vector<GroupWord> entries;
            for (const auto& child : tree.children) entries.push_back(lower(*child));
            return left_normed(entries);
        }
    }
    return GroupWord{};
}

GroupWord parse_word(std::string_view text, const Alphabet& alphabet) {
    return lower(*parse_word_syntax(text, alphabet));
}

std::string print_word(const GroupWord& word, const Alphabet& alphabet) {
    if (word.is_identity()) return "1";
    std::string out;
    for (const Letter& l : word.letters()) {
        if (!out.empty()) out += ' ';
        out += alphabet.name(l.generator);
        if (l.exponent < 0) out += "^-1";
    }
    return out;
}

std::string print_bracket(const std::vector<GroupWord>& entries, const Alphabet& alphabet) {
    std::string out = "[";
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (i > 0) out += ", ";
        out += print_word(entries[i], alphabet);
    }
    return out + "]";
}

std::vector<std::string> split_bracket(std::string_view text) {
    std::size_t begin = text.find_first_not_of(" \t");
    std::size_t end = text.find_last_not_of(" \t");
    if (begin == std::string_view::npos || text[begin] != '[' || text[end] != ']') {
        throw ParseError("expected a bracket '[...]'", begin == std::string_view::npos ? 0 : begin);
    }
    std::vector<std::string> parts;
    auto push = [&](std::size_t from, std::size_t to) {
        std::string_view part = text.substr(from, to - from);
        const auto first = part.find_first_not_of(" \t");
        if (first == std::string_view::npos) throw ParseError("empty bracket entry", from);
        parts.emplace_back(part.substr(first, part.find_last_not_of(" \t") - first + 1));
    };
    int depth = 0;
    std::size_t part_start = begin + 1;
    for (std::size_t i = begin + 1; i < end; ++i) {
        const char c = text[i];
        if (c == '[' || c == '(') ++depth;
        if (c == ']' || c == ')') {
            if (--depth < 0) throw ParseError("unbalanced bracket", i);
        }
        if (c == ',' && depth == 0) {
            push(part_start, i);
            part_start = i + 1;
        }
    }
    if (depth != 0) throw ParseError("unbalanced bracket", end);
    push(part_start, end);
    return parts;
}

Alphabet detect_alphabet(std::string_view text) {
    for (std::size_t i = 0; i + 1 < text.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(text[i + 1]))) continue;
        if (i > 0 && std::isalnum(static_cast<unsigned char>(text[i - 1]))) continue;
        const char c = text[i];
        if (c == 'm') return Alphabet::meridians();
        if (c == 'x' || c == 'g') return Alphabet{std::string(1, c), false, 0};
    }
    return Alphabet::xyzw();
}

}  // namespace commkit
