#include "commkit/magnus.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace commkit {

namespace {

std::uint64_t pack_index(int position, int index) {
    return static_cast<std::uint64_t>(index) << (4 + 5 * position);
}

void check_index(int index) {
    if (index < 1 || index > Monomial::kMaxGenerator) {
        throw std::out_of_range("monomial index " + std::to_string(index) + " outside 1.." +
                                std::to_string(Monomial::kMaxGenerator));
    }
}

}  // namespace

Monomial::Monomial(std::initializer_list<int> indices)
    : Monomial(std::span<const int>(indices.begin(), indices.size())) {}

Monomial::Monomial(std::span<const int> indices) {
    if (indices.size() > static_cast<std::size_t>(kMaxDegree)) {
        throw std::invalid_argument("monomial degree exceeds " + std::to_string(kMaxDegree));
    }
    for (std::size_t i = 0; i < indices.size(); ++i) {
        check_index(indices[i]);
        bits_ |= pack_index(static_cast<int>(i), indices[i]);
    }
    bits_ |= indices.size();
}

std::vector<int> Monomial::indices() const {
    std::vector<int> out(static_cast<std::size_t>(degree()));
    for (int i = 0; i < degree(); ++i) out[static_cast<std::size_t>(i)] = (*this)[i];
    return out;
}

std::uint32_t Monomial::support() const noexcept {
    std::uint32_t mask = 0;
    for (int i = 0; i < degree(); ++i) mask |= 1u << ((*this)[i] - 1);
    return mask;
}

bool Monomial::has_repeated_index() const noexcept {
    std::uint32_t mask = 0;
    for (int i = 0; i < degree(); ++i) {
        const std::uint32_t bit = 1u << ((*this)[i] - 1);
        if (mask & bit) return true;
        mask |= bit;
    }
    return false;
}

bool Monomial::contains(int index) const noexcept {
    for (int i = 0; i < degree(); ++i) {
        if ((*this)[i] == index) return true;
    }
    return false;
}

Monomial Monomial::appended(int index) const {
    check_index(index);
    const int d = degree();
    if (d >= kMaxDegree) throw std::invalid_argument("monomial degree exceeds limit");
    Monomial out;
    out.bits_ = (bits_ & ~std::uint64_t{0xF}) | pack_index(d, index) | static_cast<std::uint64_t>(d + 1);
    return out;
}

Monomial Monomial::concatenated(const Monomial& other) const {
    const int d = degree();
    const int e = other.degree();
    if (d + e > kMaxDegree) throw std::invalid_argument("monomial degree exceeds limit");
    Monomial out;
    out.bits_ = (bits_ & ~std::uint64_t{0xF}) | ((other.bits_ >> 4) << (4 + 5 * d)) |
                static_cast<std::uint64_t>(d + e);
    return out;
}

std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) noexcept {
    if (auto c = a.degree() <=> b.degree(); c != 0) return c;
    for (int i = 0; i < a.degree(); ++i) {
        if (auto c = a[i] <=> b[i]; c != 0) return c;
    }
    return std::strong_ordering::equal;
}

std::string to_string(const Monomial& m) {
    if (m.degree() == 0) return "1";
    std::string out;
    for (int i = 0; i < m.degree(); ++i) {
        if (i > 0) out += "·";
        out += "x" + std::to_string(m[i]);
    }
    return out;
}

// ---------------------------------------------------------------------------

template <SeriesKind Kind>
Series<Kind>::Series(int num_gens, int max_degree) : num_gens_(num_gens), max_degree_(max_degree) {
    if (num_gens < 1 || num_gens > Monomial::kMaxGenerator) {
        throw std::invalid_argument("series needs 1.." + std::to_string(Monomial::kMaxGenerator) +
                                    " generators");
    }
    if (max_degree < 0 || max_degree > Monomial::kMaxDegree) {
        throw std::invalid_argument("series truncation degree must lie in 0.." +
                                    std::to_string(Monomial::kMaxDegree));
    }
}

template <SeriesKind Kind>
Series<Kind> Series<Kind>::one(int num_gens, int max_degree) {
    Series s(num_gens, max_degree);
    s.add_term(Monomial{}, 1);
    return s;
}

template <SeriesKind Kind>
Series<Kind> Series<Kind>::variable(int num_gens, int max_degree, int index) {
    Series s(num_gens, max_degree);
    s.add_term(Monomial{index}, 1);
    return s;
}

template <SeriesKind Kind>
Integer Series<Kind>::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Integer{0} : it->second;
}

template <SeriesKind Kind>
bool Series<Kind>::admits(const Monomial& m) const noexcept {
    if (m.degree() > max_degree_) return false;
    if constexpr (Kind == SeriesKind::Reduced) {
        if (m.has_repeated_index()) return false;
    }
    return true;
}

template <SeriesKind Kind>
void Series<Kind>::add_term(const Monomial& m, const Integer& c) {
    for (int i = 0; i < m.degree(); ++i) {
        if (m[i] > num_gens_) {
            throw std::out_of_range("monomial index " + std::to_string(m[i]) + " exceeds " +
                                    std::to_string(num_gens_) + " generators");
        }
    }
    if (c == 0 || !admits(m)) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

template <SeriesKind Kind>
std::optional<int> Series<Kind>::lowest_degree() const {
    std::optional<int> best;
    for (const auto& [m, c] : terms_) {
        if (m.degree() >= 1 && (!best || m.degree() < *best)) best = m.degree();
    }
    return best;
}

template <SeriesKind Kind>
Series<Kind> Series<Kind>::homogeneous_part(int degree) const {
    Series out(num_gens_, max_degree_);
    for (const auto& [m, c] : terms_) {
        if (m.degree() == degree) out.terms_.emplace(m, c);
    }
    return out;
}

template <SeriesKind Kind>
std::vector<typename Series<Kind>::Term> Series<Kind>::sorted_terms() const {
    std::vector<Term> out(terms_.begin(), terms_.end());
    std::sort(out.begin(), out.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
    return out;
}

template <SeriesKind Kind>
void Series<Kind>::multiply_by_letter(const Letter& letter) {
    const int g = letter.generator;
    if (g < 1 || g > num_gens_) {
        throw std::out_of_range("generator " + std::to_string(g) + " outside 1.." +
                                std::to_string(num_gens_));
    }
    std::vector<Term> additions;
    additions.reserve(terms_.size());
    for (const auto& [m, c] : terms_) {
        if (m.degree() >= max_degree_) continue;
        if constexpr (Kind == SeriesKind::Reduced) {
            if (m.contains(g)) continue;
            additions.emplace_back(m.appended(g), letter.exponent > 0 ? c : Integer{-c});
        } else {
            Monomial grown = m;
            Integer sign = 1;
            for (int k = 1; m.degree() + k <= max_degree_; ++k) {
                grown = grown.appended(g);
                if (letter.exponent < 0) sign = -sign;
                additions.emplace_back(grown, sign * c);
                if (letter.exponent > 0) break;
            }
        }
    }
    for (const auto& [m, c] : additions) add_term(m, c);
}

template <SeriesKind Kind>
void Series<Kind>::check_compatible(const Series& other) const {
    if (num_gens_ != other.num_gens_ || max_degree_ != other.max_degree_) {
        throw std::invalid_argument("series live in different rings (generators " +
                                    std::to_string(num_gens_) + "/" + std::to_string(other.num_gens_) +
                                    ", degree " + std::to_string(max_degree_) + "/" +
                                    std::to_string(other.max_degree_) + ")");
    }
}

template <SeriesKind Kind>
Series<Kind>& Series<Kind>::operator+=(const Series& other) {
    check_compatible(other);
    for (const auto& [m, c] : other.terms_) add_term(m, c);
    return *this;
}

template <SeriesKind Kind>
Series<Kind>& Series<Kind>::operator-=(const Series& other) {
    check_compatible(other);
    for (const auto& [m, c] : other.terms_) add_term(m, -c);
    return *this;
}

template <SeriesKind Kind>
Series<Kind> Series<Kind>::times(const Series& other) const {
    check_compatible(other);
    Series out(num_gens_, max_degree_);
    for (const auto& [a, ca] : terms_) {
        for (const auto& [b, cb] : other.terms_) {
            if (a.degree() + b.degree() > max_degree_) continue;
            if constexpr (Kind == SeriesKind::Reduced) {
                if (a.support() & b.support()) continue;
            }
            out.add_term(a.concatenated(b), ca * cb);
        }
    }
    return out;
}

template <SeriesKind Kind>
Series<Kind> Series<Kind>::scaled(const Integer& factor) const {
    Series out(num_gens_, max_degree_);
    if (factor == 0) return out;
    for (const auto& [m, c] : terms_) out.terms_.emplace(m, c * factor);
    return out;
}

template class Series<SeriesKind::Full>;
template class Series<SeriesKind::Reduced>;

// ---------------------------------------------------------------------------

TruncatedSeries expand(const GroupWord& word, int num_gens, int max_degree) {
    if (max_degree < 1) throw std::invalid_argument("expansion degree must be >= 1");
    auto series = TruncatedSeries::one(num_gens, max_degree);
    for (const Letter& letter : word.letters()) series.multiply_by_letter(letter);
    return series;
}

ReducedSeries expand_reduced(const GroupWord& word, int num_gens) {
    auto series = ReducedSeries::one(num_gens, num_gens);
    for (const Letter& letter : word.letters()) series.multiply_by_letter(letter);
    return series;
}

ReducedSeries reduce(const TruncatedSeries& series) {
    ReducedSeries out(series.num_gens(), series.max_degree());
    for (const auto& [m, c] : series.sorted_terms()) out.add_term(m, c);
    return out;
}

template <SeriesKind Kind>
std::string to_string(const Series<Kind>& series) {
    const auto terms = series.sorted_terms();
    if (terms.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [m, c] : terms) {
        const bool negative = c < 0;
        const Integer magnitude = negative ? Integer{-c} : c;
        if (first) {
            if (negative) out << "−";
        } else {
            out << (negative ? " − " : " + ");
        }
        if (m.degree() == 0) {
            out << magnitude;
        } else {
            if (magnitude != 1) out << magnitude << "·";
            out << to_string(m);
        }
        first = false;
    }
    return out.str();
}

template std::string to_string(const Series<SeriesKind::Full>&);
template std::string to_string(const Series<SeriesKind::Reduced>&);

}  // namespace commkit
