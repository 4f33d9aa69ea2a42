#include "commkit/formats.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace commkit {

using Json = nlohmann::ordered_json;

namespace {

std::string trim(std::string_view s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string_view::npos) return {};
    const auto end = s.find_last_not_of(" \t\r");
    return std::string(s.substr(begin, end - begin + 1));
}

std::vector<std::string> lines_of(std::string_view text) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto end = text.find('\n', start);
        if (end == std::string_view::npos) {
            out.emplace_back(text.substr(start));
            break;
        }
        out.emplace_back(text.substr(start, end - start));
        start = end + 1;
    }
    return out;
}

[[noreturn]] void fail_line(std::size_t line, const std::string& message) {
    throw ParseError("line " + std::to_string(line) + ": " + message);
}

Json integer_json(const Integer& value) {
    if (value >= std::numeric_limits<std::int64_t>::min() && value <= std::numeric_limits<std::int64_t>::max()) {
        return static_cast<std::int64_t>(value);
    }
    return to_string(value);
}

Json integers_json(const std::vector<Integer>& values) {
    Json out = Json::array();
    for (const auto& v : values) out.push_back(integer_json(v));
    return out;
}

int parse_int(const std::string& text, std::size_t line, const std::string& what) {
    if (text.empty() || text.size() > 6 || !std::all_of(text.begin(), text.end(), ::isdigit)) {
        fail_line(line, "expected a " + what + ", got '" + text + "'");
    }
    return std::stoi(text);
}

}  // namespace

// ---------------------------------------------------------------------------

LinkPresentation parse_link(std::string_view text) {
    int n = 0;
    std::vector<GroupWord> longitudes;
    std::vector<std::string> names;
    const auto lines = lines_of(text);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const std::size_t line = i + 1;
        const std::string content = trim(lines[i]);
        if (content.empty() || content[0] == '#') continue;
        const auto eq = content.find('=');
        if (eq == std::string::npos) fail_line(line, "expected 'n = <count>' or 'component <name> = <word>'");
        const std::string key = trim(std::string_view(content).substr(0, eq));
        const std::string value = trim(std::string_view(content).substr(eq + 1));
        if (key == "n") {
            if (n != 0) fail_line(line, "component count given twice");
            n = parse_int(value, line, "component count");
            if (n < 1) fail_line(line, "component count must be >= 1");
            continue;
        }
        if (key.rfind("component", 0) != 0) fail_line(line, "unknown key '" + key + "'");
        if (n == 0) fail_line(line, "'n = <count>' must precede the components");
        const std::string name = trim(std::string_view(key).substr(9));
        if (name.empty() || name.find_first_of(" \t") != std::string::npos) {
            fail_line(line, "component needs a single-word name");
        }
        if (static_cast<int>(longitudes.size()) == n) fail_line(line, "more components than n = " + std::to_string(n));
        try {
            longitudes.push_back(parse_word(value, Alphabet::meridians(n)));
        } catch (const ParseError& e) {
            fail_line(line, e.what());
        }
        names.push_back(name);
    }
    if (n == 0) throw ParseError("link file has no 'n = <count>' line");
    if (static_cast<int>(longitudes.size()) != n) {
        throw ParseError("link file declares n = " + std::to_string(n) + " but lists " +
                         std::to_string(longitudes.size()) + " components");
    }
    try {
        return LinkPresentation(std::move(longitudes), std::move(names));
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

LinkPresentation read_link_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open link file '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_link(buffer.str());
}

std::string write_link(const LinkPresentation& link, const std::string& comment) {
    std::ostringstream out;
    if (!comment.empty()) out << "# " << comment << "\n";
    out << "n = " << link.size() << "\n";
    for (int j = 1; j <= link.size(); ++j) {
        out << "component " << link.name(j) << " = " << print_word(link.longitude(j), Alphabet::meridians()) << "\n";
    }
    return out.str();
}

std::string link_json(const LinkPresentation& link) {
    Json components = Json::array();
    for (int j = 1; j <= link.size(); ++j) {
        components.push_back(Json{{"name", link.name(j)}, {"longitude", print_word(link.longitude(j), Alphabet::meridians())}});
    }
    return Json{{"n", link.size()}, {"components", components}}.dump(2);
}

MuIndex parse_mu_index(std::string_view text) {
    std::string s = trim(text);
    if (s.rfind("mu(", 0) == 0 && s.back() == ')') s = s.substr(3, s.size() - 4);
    const auto semi = s.find(';');
    if (semi == std::string::npos) throw ParseError("mu index needs the form <sources>;<target>");
    const std::string sources = trim(std::string_view(s).substr(0, semi));
    const std::string target = trim(std::string_view(s).substr(semi + 1));
    MuIndex idx;
    auto number = [](const std::string& t, std::size_t pos) {
        if (t.empty() || t.size() > 6 || !std::all_of(t.begin(), t.end(), ::isdigit)) {
            throw ParseError("expected a component index, got '" + t + "'", pos);
        }
        return std::stoi(t);
    };
    if (sources.find(',') != std::string::npos) {
        std::size_t start = 0;
        while (true) {
            const auto comma = sources.find(',', start);
            idx.sources.push_back(number(trim(std::string_view(sources).substr(start, comma - start)), start));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
    } else {
        for (std::size_t i = 0; i < sources.size(); ++i) idx.sources.push_back(number(std::string(1, sources[i]), i));
    }
    idx.target = number(target, semi + 1);
    if (idx.sources.empty()) throw ParseError("mu index needs at least one source", 0);
    return idx;
}

// ---------------------------------------------------------------------------

namespace {

class GbrParser {
public:
    explicit GbrParser(std::string_view text) : text_(text) {}

    GbrSpec parse() {
        GbrSpec spec;
        spec.first = tree();
        expect(';');
        spec.second = tree();
        skip();
        if (pos_ != text_.size()) throw ParseError("unexpected trailing input in GBR spec", pos_);
        return spec;
    }

private:
    void skip() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    void expect(char c) {
        skip();
        if (pos_ >= text_.size() || text_[pos_] != c) {
            throw ParseError(std::string("expected '") + c + "' in GBR spec", pos_);
        }
        ++pos_;
    }

    GbrTree tree() {
        skip();
        if (pos_ < text_.size() && text_[pos_] == '(') {
            ++pos_;
            GbrTree left = tree();
            expect(',');
            GbrTree right = tree();
            expect(')');
            return GbrTree::node(std::move(left), std::move(right));
        }
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ == start || pos_ - start > 3) throw ParseError("expected a leaf multiplicity or '('", start);
        const int multiplicity = std::stoi(std::string(text_.substr(start, pos_ - start)));
        if (multiplicity < 1) throw ParseError("leaf multiplicity must be >= 1", start);
        return GbrTree::leaf(multiplicity);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

GbrSpec parse_gbr_spec(std::string_view text) { return GbrParser(text).parse(); }

// ---------------------------------------------------------------------------

std::string write_certificate(const EngelCertificate& cert, const Alphabet& alphabet) {
    std::ostringstream out;
    out << "rank " << cert.rank << "\n";
    out << "target " << print_word(cert.target, alphabet) << "\n";
    for (std::size_t t = 0; t < cert.terms.size(); ++t) {
        const auto& term = cert.terms[t];
        out << "t" << t + 1 << " " << term.type().value_or('?') << " " << (term.exponent() > 0 ? "+1" : "-1") << " "
            << print_bracket(term.entries(), alphabet) << "\n";
    }
    return out.str();
}

EngelCertificate parse_certificate(std::string_view text) {
    EngelCertificate cert;
    bool have_target = false;
    const auto lines = lines_of(text);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const std::size_t line = i + 1;
        const std::string content = trim(lines[i]);
        if (content.empty() || content[0] == '#') continue;
        const auto space = content.find(' ');
        const std::string key = content.substr(0, space);
        const std::string rest = space == std::string::npos ? "" : trim(std::string_view(content).substr(space));
        if (key == "rank") {
            cert.rank = parse_int(rest, line, "rank");
            continue;
        }
        const Alphabet alphabet{"m", false, cert.rank};
        if (key == "target") {
            if (cert.rank == 0) fail_line(line, "'rank' must precede 'target'");
            try {
                cert.target = parse_word(rest, alphabet);
            } catch (const ParseError& e) {
                fail_line(line, e.what());
            }
            have_target = true;
            continue;
        }
        if (key.size() < 2 || key[0] != 't' || !std::all_of(key.begin() + 1, key.end(), ::isdigit)) {
            fail_line(line, "unknown line '" + key + "'");
        }
        if (!have_target) fail_line(line, "'target' must precede the terms");
        std::istringstream fields(rest);
        std::string type, sign;
        fields >> type >> sign;
        std::string bracket;
        std::getline(fields, bracket);
        if (type.size() != 1) fail_line(line, "expected a one-letter term type");
        if (sign != "+1" && sign != "-1") fail_line(line, "expected exponent +1 or -1");
        std::vector<GroupWord> entries;
        try {
            for (const auto& part : split_bracket(bracket)) entries.push_back(parse_word(part, alphabet));
        } catch (const ParseError& e) {
            fail_line(line, e.what());
        }
        std::optional<std::pair<int, int>> doubled;
        for (int j = 1; j <= 4 && !doubled; ++j) {
            for (int m = j + 1; m <= 4 && m <= static_cast<int>(entries.size()); ++m) {
                const auto& e = entries[static_cast<std::size_t>(j - 1)];
                if (e.length() == 2 && e == entries[static_cast<std::size_t>(m - 1)]) {
                    doubled = std::pair{j, m};
                    break;
                }
            }
        }
        if (!doubled) fail_line(line, "no doubled two-generator entry among the first four");
        try {
            ElementaryCommutator term(std::move(entries), *doubled, sign == "+1" ? 1 : -1);
            if (term.type().value_or('?') != type[0]) {
                fail_line(line, "type '" + type + "' does not match the doubled positions");
            }
            cert.terms.push_back(std::move(term));
        } catch (const std::invalid_argument& e) {
            fail_line(line, e.what());
        }
    }
    if (!have_target) throw ParseError("certificate has no target");
    return cert;
}

std::string certificate_json(const EngelCertificate& cert, const Alphabet& alphabet) {
    Json terms = Json::array();
    for (std::size_t t = 0; t < cert.terms.size(); ++t) {
        const auto& term = cert.terms[t];
        Json entries = Json::array();
        for (const auto& e : term.entries()) entries.push_back(print_word(e, alphabet));
        terms.push_back(Json{{"id", "t" + std::to_string(t + 1)},
                             {"type", std::string(1, term.type().value_or('?'))},
                             {"exponent", term.exponent()},
                             {"doubled", {term.doubled_positions().first, term.doubled_positions().second}},
                             {"entries", entries}});
    }
    Json counts = Json::object();
    for (const auto& [type, count] : cert.type_counts()) counts[std::string(1, type)] = count;
    return Json{{"rank", cert.rank},
                {"target", print_word(cert.target, alphabet)},
                {"type_counts", counts},
                {"terms", terms}}
        .dump(2);
}

// ---------------------------------------------------------------------------

namespace {

const ElementaryCommutator* term_by_id(const StabilizationResult& result, std::size_t id) {
    std::size_t next = 1;
    for (const auto& cert : result.proof) {
        if (id < next + cert.terms.size()) return &cert.terms[id - next];
        next += cert.terms.size();
    }
    return nullptr;
}

std::string join_ints(const std::vector<int>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i > 0) out += ",";
        out += std::to_string(values[i]);
    }
    return out;
}

std::string counts_text(const std::map<char, int>& counts) {
    std::string out;
    for (const auto& [type, count] : counts) {
        if (!out.empty()) out += " ";
        out += std::string(1, type) + ":" + std::to_string(count);
    }
    return out;
}

}  // namespace

std::string write_plan(const StabilizationResult& result, const Alphabet& alphabet) {
    std::ostringstream out;
    std::map<char, int> totals{{'a', 0}, {'b', 0}, {'c', 0}};
    for (std::size_t k = 0; k < result.proof.size(); ++k) {
        const auto& cert = result.proof[k];
        const auto counts = cert.type_counts();
        for (const auto& [type, count] : counts) totals[type] += count;
        out << "certify " << result.result.name(result.certified_components[k]) << ": " << cert.terms.size()
            << " terms, " << counts_text(counts) << "\n";
    }
    for (const auto& step : result.plan.instructions) {
        out << "band-sum " << result.result.name(step.component) << " t" << step.term_id << " " << step.type << " "
            << (step.exponent > 0 ? "+1" : "-1") << " ";
        if (const auto* term = term_by_id(result, step.term_id)) {
            out << print_bracket(term->entries(), alphabet) << "^" << (term->exponent() > 0 ? "+1" : "-1");
        } else {
            out << print_word(step.insert, alphabet);
        }
        out << " participants " << join_ints(step.participants) << "\n";
    }
    for (int j : result.plan.release_order) out << "release " << result.result.name(j) << "\n";
    out << "terms " << result.plan.instructions.size() << " (" << counts_text(totals) << ")\n";
    out << "result " << (homotopically_trivial(result.result).trivial ? "TRIVIAL" : "ESSENTIAL") << "\n";
    return out.str();
}

std::string plan_json(const StabilizationResult& result, const Alphabet& alphabet) {
    Json certificates = Json::array();
    for (std::size_t k = 0; k < result.proof.size(); ++k) {
        Json counts = Json::object();
        for (const auto& [type, count] : result.proof[k].type_counts()) counts[std::string(1, type)] = count;
        certificates.push_back(Json{{"component", result.certified_components[k]},
                                    {"terms", result.proof[k].terms.size()},
                                    {"type_counts", counts}});
    }
    Json steps = Json::array();
    for (const auto& step : result.plan.instructions) {
        steps.push_back(Json{{"component", step.component},
                             {"term", "t" + std::to_string(step.term_id)},
                             {"type", std::string(1, step.type)},
                             {"exponent", step.exponent},
                             {"insert", print_word(step.insert, alphabet)},
                             {"participants", step.participants}});
    }
    return Json{{"certificates", certificates},
                {"instructions", steps},
                {"release_order", result.plan.release_order},
                {"result_trivial", homotopically_trivial(result.result).trivial}}
        .dump(2);
}

// ---------------------------------------------------------------------------

std::string compact_factors(const std::vector<Integer>& factors) {
    if (factors.empty()) return "-";
    std::string out;
    for (std::size_t i = 0; i < factors.size();) {
        std::size_t j = i;
        while (j < factors.size() && factors[j] == factors[i]) ++j;
        if (!out.empty()) out += " ";
        out += to_string(factors[i]);
        if (j - i > 1) out += "^" + std::to_string(j - i);
        i = j;
    }
    return out;
}

std::string describe_quotient(const std::vector<Integer>& invariant_factors, std::size_t free_rank) {
    std::vector<std::string> parts;
    if (free_rank == 1) parts.push_back("Z");
    if (free_rank > 1) parts.push_back("Z^" + std::to_string(free_rank));
    for (std::size_t i = 0; i < invariant_factors.size();) {
        if (invariant_factors[i] == 1) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < invariant_factors.size() && invariant_factors[j] == invariant_factors[i]) ++j;
        const std::string cyclic = "Z/" + to_string(invariant_factors[i]);
        parts.push_back(j - i == 1 ? cyclic : "(" + cyclic + ")^" + std::to_string(j - i));
        i = j;
    }
    if (parts.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) out += (i > 0 ? " + " : "") + parts[i];
    return out;
}

namespace {

// Common quotient of every subset block, or "mixed".
std::string block_summary(const DegreeReport& d) {
    if (d.blocks.empty()) return "-";
    const auto& first = d.blocks.front();
    for (const auto& b : d.blocks) {
        if (b.invariant_factors != first.invariant_factors || b.free_rank != first.free_rank) return "mixed";
    }
    return describe_quotient(first.invariant_factors, first.free_rank);
}

}  // namespace

std::string write_report(const QuotientReport& report) {
    std::ostringstream out;
    out << "Engel quotient of the free Milnor group: n = " << report.num_gens << ", Engel order "
        << report.engel_order << ", degrees 2.." << report.max_degree << "\n";
    std::vector<std::vector<std::string>> rows{
        {"degree", "basis", "relations", "quotient", "per subset", "invariant factors"}};
    for (const auto& d : report.degrees) {
        rows.push_back({std::to_string(d.degree), std::to_string(d.basis_rank), std::to_string(d.relation_count),
                        describe_quotient(d.invariant_factors, d.free_rank), block_summary(d),
                        compact_factors(d.invariant_factors)});
    }
    std::vector<std::size_t> width(rows.front().size(), 0);
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
    }
    for (const auto& row : rows) {
        std::string line;
        for (std::size_t c = 0; c < row.size(); ++c) {
            line += row[c];
            if (c + 1 < row.size()) line += std::string(width[c] - row[c].size() + 2, ' ');
        }
        out << line << "\n";
    }
    if (const auto bound = report.class_bound()) {
        out << "class bound: " << *bound;
        if (*bound < report.num_gens) {
            out << " (degrees " << *bound + 1 << ".." << report.num_gens << " vanish, MF_" << report.num_gens
                << " has class " << report.num_gens << ")";
        }
        out << "\n";
    }
    out << "upper bound certificate: every relation is the leading term of a word in the Engel verbal "
           "subgroup, so the true lower central quotient in each degree is a quotient of the group listed\n";
    return out.str();
}

std::string report_json(const QuotientReport& report) {
    Json degrees = Json::array();
    for (const auto& d : report.degrees) {
        Json blocks = Json::array();
        for (const auto& b : d.blocks) {
            blocks.push_back(Json{{"subset", subset_members(b.subset)},
                                  {"invariant_factors", integers_json(b.invariant_factors)},
                                  {"free_rank", b.free_rank}});
        }
        degrees.push_back(Json{{"degree", d.degree},
                               {"basis_rank", d.basis_rank},
                               {"relations", d.relation_count},
                               {"invariant_factors", integers_json(d.invariant_factors)},
                               {"torsion", integers_json(d.torsion())},
                               {"free_rank", d.free_rank},
                               {"quotient", describe_quotient(d.invariant_factors, d.free_rank)},
                               {"blocks", blocks}});
    }
    Json out{{"generators", report.num_gens},
             {"engel_order", report.engel_order},
             {"max_degree", report.max_degree},
             {"certificate", "upper bound"}};
    const auto bound = report.class_bound();
    out["class_bound"] = bound ? Json(*bound) : Json(nullptr);
    out["degrees"] = degrees;
    return out.dump(2);
}

template <SeriesKind Kind>
std::string series_json(const Series<Kind>& series) {
    Json terms = Json::array();
    for (const auto& [m, c] : series.sorted_terms()) {
        terms.push_back(Json{{"monomial", m.indices()}, {"coefficient", integer_json(c)}});
    }
    return Json{{"generators", series.num_gens()},
                {"max_degree", series.max_degree()},
                {"reduced", Kind == SeriesKind::Reduced},
                {"terms", terms}}
        .dump(2);
}

template std::string series_json(const Series<SeriesKind::Full>&);
template std::string series_json(const Series<SeriesKind::Reduced>&);

}  // namespace commkit
