#include "commkit/cli.hpp"

#include "commkit/engel.hpp"
#include "commkit/formats.hpp"
#include "commkit/lie.hpp"
#include "commkit/links.hpp"
#include "commkit/magnus.hpp"
#include "commkit/milnor.hpp"
#include "commkit/syntax.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>

namespace commkit {

namespace {

using Json = nlohmann::ordered_json;

struct Options {
    std::string format = "text";
    std::string word;
    std::string link;
    std::string index;
    std::string cert;
    std::string spec;
    int gens = 0;
    int degree = 0;
    int engel = 2;
    int max_degree = 0;
    int component = 0;
    int exponent = 1;
    int order = 0;
    bool reduced = false;
};

bool json_output(const Options& o) { return o.format == "json"; }

void add_format(CLI::App* cmd, Options& o) {
    cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}));
}

int generator_count(const Options& o, const GroupWord& word) {
    const int n = o.gens > 0 ? o.gens : std::max(1, word.max_generator());
    if (word.max_generator() > n) {
        throw std::invalid_argument("word uses generator " + std::to_string(word.max_generator()) + " but --gens is " +
                                    std::to_string(n));
    }
    return n;
}

int cmd_expand(const Options& o, std::ostream& out) {
    const Alphabet alphabet = detect_alphabet(o.word);
    const GroupWord word = parse_word(o.word, alphabet);
    const int n = generator_count(o, word);
    const int degree = o.degree > 0 ? o.degree : n;
    if (o.reduced) {
        const auto series = reduce(expand(word, n, degree));
        out << (json_output(o) ? series_json(series) : to_string(series)) << "\n";
    } else {
        const auto series = expand(word, n, degree);
        out << (json_output(o) ? series_json(series) : to_string(series)) << "\n";
    }
    return 0;
}

int cmd_mu(const Options& o, std::ostream& out) {
    const auto link = read_link_file(o.link);
    const auto idx = parse_mu_index(o.index);
    const auto value = mu_bar(link, idx);
    if (json_output(o)) {
        out << Json{{"index", to_string(idx)}, {"value", to_string(value.value)}, {"well_defined", value.well_defined}}.dump(2)
            << "\n";
    } else {
        out << to_string(idx) << "=" << to_string(value.value);
        if (!value.well_defined) out << " (not well-defined: a shorter invariant is nonzero)";
        out << "\n";
    }
    return 0;
}

int cmd_trivial(const Options& o, std::ostream& out) {
    const auto link = read_link_file(o.link);
    const auto result = homotopically_trivial(link);
    if (json_output(o)) {
        Json j{{"trivial", result.trivial}};
        if (result.witness) {
            j["witness"] = to_string(*result.witness);
            j["value"] = to_string(result.value);
        }
        out << j.dump(2) << "\n";
    } else if (result.trivial) {
        out << "TRIVIAL\n";
    } else {
        out << "ESSENTIAL witness " << to_string(*result.witness) << "=" << to_string(result.value) << "\n";
    }
    return 0;
}

int cmd_certify(const Options& o, std::ostream& out) {
    const Alphabet alphabet = detect_alphabet(o.word);
    const GroupWord word = parse_word(o.word, alphabet);
    const MilnorContext ctx(generator_count(o, word));
    const auto cert = engel_decompose(word, ctx);
    if (json_output(o)) {
        out << certificate_json(cert, alphabet) << "\n";
        return 0;
    }
    const auto counts = cert.type_counts();
    out << "# " << cert.terms.size() << " terms, a:" << counts.at('a') << " b:" << counts.at('b')
        << " c:" << counts.at('c') << (verify_certificate(cert, ctx) ? ", verified" : ", NOT verified") << "\n";
    out << write_certificate(cert, alphabet);
    return 0;
}

int cmd_verify(const Options& o, std::ostream& out) {
    std::ifstream in(o.cert);
    if (!in) throw ParseError("cannot open certificate '" + o.cert + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    const auto cert = parse_certificate(buffer.str());
    const MilnorContext ctx(cert.rank);
    for (const auto& term : cert.terms) {
        if (term.realize().max_generator() > cert.rank) throw std::invalid_argument("term uses a generator above rank");
    }
    const bool valid = verify_certificate(cert, ctx);
    if (json_output(o)) {
        out << Json{{"valid", valid}, {"terms", cert.terms.size()}}.dump(2) << "\n";
    } else {
        out << (valid ? "VALID" : "INVALID") << "\n";
    }
    return 0;
}

int cmd_lie_report(const Options& o, std::ostream& out) {
    if (o.gens < 1) throw std::invalid_argument("--gens must be >= 1");
    const int max_degree = o.max_degree > 0 ? o.max_degree : o.gens;
    const auto report = quotient_report(o.gens, max_degree, o.engel);
    out << (json_output(o) ? report_json(report) + "\n" : write_report(report));
    return 0;
}

int cmd_gbr(const Options& o, std::ostream& out) {
    const auto spec = parse_gbr_spec(o.spec);
    const auto built = build_gbr(spec);
    const std::string level = built.filtration_level ? std::to_string(*built.filtration_level) : "none";
    if (json_output(o)) {
        Json j{{"spec", to_string(spec)}, {"link", Json::parse(link_json(built.link))}};
        j["filtration_level"] = built.filtration_level ? Json(*built.filtration_level) : Json(nullptr);
        out << j.dump(2) << "\n";
    } else {
        out << write_link(built.link, "GBR " + to_string(spec) + ", filtration level " + level);
    }
    return 0;
}

int cmd_band_sum(const Options& o, std::ostream& out) {
    const auto link = read_link_file(o.link);
    const GroupWord insert = parse_word(o.word, Alphabet::meridians(link.size()));
    const auto summed = band_sum(link, o.component, insert, o.exponent);
    out << (json_output(o) ? link_json(summed) + "\n" : write_link(summed));
    return 0;
}

int cmd_stabilize(const Options& o, std::ostream& out) {
    const auto link = read_link_file(o.link);
    const auto result = stabilize_and_trivialize(link);
    out << (json_output(o) ? plan_json(result, Alphabet::meridians()) + "\n" : write_plan(result, Alphabet::meridians()));
    return 0;
}

int cmd_kinky(const Options& o, std::ostream& out) {
    if (o.order < 1 || 2 * o.order + 1 > Monomial::kMaxDegree) {
        throw std::invalid_argument("--order must lie in 1.." + std::to_string((Monomial::kMaxDegree - 1) / 2));
    }
    const int degree = 2 * o.order + 1;
    const GroupWord relation = kinky_relation(o.order);
    const GroupWord engel = n_engel_word(2 * o.order, GroupWord::generator(1), GroupWord::generator(2));
    auto lhs = expand(relation, 2, degree);
    lhs -= TruncatedSeries::one(2, degree);
    auto rhs = expand(engel, 2, degree);
    rhs -= TruncatedSeries::one(2, degree);
    const auto low = lhs.lowest_degree();
    const auto a = lhs.homogeneous_part(degree);
    const auto b = rhs.homogeneous_part(degree);
    std::string relation_to_engel = "unrelated";
    if (a == b) relation_to_engel = "+1";
    if (a == b.scaled(-1)) relation_to_engel = "-1";

    const Alphabet alphabet = Alphabet::xyzw();
    if (json_output(o)) {
        Json j{{"order", o.order}, {"relation", print_word(relation, alphabet)}, {"engel_order", 2 * o.order}};
        j["lower_central_degree"] = low ? Json(*low) : Json(nullptr);
        j["leading_sign"] = relation_to_engel;
        out << j.dump(2) << "\n";
    } else {
        out << "relation " << print_word(relation, alphabet) << "\n";
        out << "lower central degree " << (low ? std::to_string(*low) : "none") << "\n";
        out << "degree " << degree << " part = " << relation_to_engel << " x degree " << degree << " part of [y"
            << [&] {
                   std::string s;
                   for (int i = 0; i < 2 * o.order; ++i) s += ",x";
                   return s;
               }()
            << "]\n";
    }
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Commutator calculus, Milnor groups, Engel quotients and link homotopy", "commkit"};
    app.require_subcommand(1);
    Options o;

    auto* expand_cmd = app.add_subcommand("expand", "Magnus expansion of a word");
    expand_cmd->add_option("--word", o.word, "Word")->required();
    expand_cmd->add_option("--gens", o.gens, "Number of generators (default: largest used)");
    expand_cmd->add_option("--degree", o.degree, "Truncation degree (default: --gens)");
    expand_cmd->add_flag("--reduced", o.reduced, "Drop monomials with a repeated index");
    add_format(expand_cmd, o);

    auto* mu_cmd = app.add_subcommand("mu", "Milnor invariant of a link");
    mu_cmd->add_option("--link", o.link, "Link file")->required();
    mu_cmd->add_option("--index", o.index, "Index such as 23;1 or 2,3;1")->required();
    add_format(mu_cmd, o);

    auto* trivial_cmd = app.add_subcommand("trivial", "Decide homotopy triviality of a link");
    trivial_cmd->add_option("--link", o.link, "Link file")->required();
    add_format(trivial_cmd, o);

    auto* certify_cmd = app.add_subcommand("certify", "Engel certificate of a word in the 4th lower central term");
    certify_cmd->add_option("--word", o.word, "Word")->required();
    certify_cmd->add_option("--gens", o.gens, "Rank of the free Milnor group (default: largest used)");
    add_format(certify_cmd, o);

    auto* verify_cmd = app.add_subcommand("verify-cert", "Check a certificate file");
    verify_cmd->add_option("--cert", o.cert, "Certificate file")->required();
    add_format(verify_cmd, o);

    auto* lie_cmd = app.add_subcommand("lie-report", "Graded Engel quotient of the free Milnor group");
    lie_cmd->add_option("--gens", o.gens, "Number of generators")->required();
    lie_cmd->add_option("--engel", o.engel, "Engel order");
    lie_cmd->add_option("--max-degree", o.max_degree, "Largest degree (default: --gens)");
    add_format(lie_cmd, o);

    auto* gbr_cmd = app.add_subcommand("gbr", "Build a generalized Borromean link");
    gbr_cmd->add_option("--spec", o.spec, "Tree pair such as \"1 ; ((1,1),(1,1))\"")->required();
    add_format(gbr_cmd, o);

    auto* band_cmd = app.add_subcommand("band-sum", "Band-sum a word into one component");
    band_cmd->add_option("--link", o.link, "Link file")->required();
    band_cmd->add_option("--component", o.component, "Component index")->required();
    band_cmd->add_option("--word", o.word, "Inserted word")->required();
    band_cmd->add_option("--exponent", o.exponent, "+1 or -1")->check(CLI::IsMember({1, -1}));
    add_format(band_cmd, o);

    auto* stabilize_cmd = app.add_subcommand("stabilize", "Band-sum plan that makes a link homotopically trivial");
    stabilize_cmd->add_option("--link", o.link, "Link file")->required();
    add_format(stabilize_cmd, o);

    auto* kinky_cmd = app.add_subcommand("kinky", "Kinky handle relation and its Engel leading term");
    kinky_cmd->add_option("--order", o.order, "Number of double points")->required();
    add_format(kinky_cmd, o);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? 0 : 2;
    }

    try {
        if (*expand_cmd) return cmd_expand(o, out);
        if (*mu_cmd) return cmd_mu(o, out);
        if (*trivial_cmd) return cmd_trivial(o, out);
        if (*certify_cmd) return cmd_certify(o, out);
        if (*verify_cmd) return cmd_verify(o, out);
        if (*lie_cmd) return cmd_lie_report(o, out);
        if (*gbr_cmd) return cmd_gbr(o, out);
        if (*band_cmd) return cmd_band_sum(o, out);
        if (*stabilize_cmd) return cmd_stabilize(o, out);
        if (*kinky_cmd) return cmd_kinky(o, out);
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

}  // namespace commkit
