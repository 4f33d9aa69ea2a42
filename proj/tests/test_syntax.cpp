#include "commkit/formats.hpp"
#include "commkit/syntax.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace commkit;

namespace {

GroupWord g(int i) { return GroupWord::generator(i); }

std::size_t parse_error_position(std::string_view text) {
    try {
        parse_word(text);
    } catch (const ParseError& e) {
        return e.position();
    }
    return std::string::npos;
}

}  // namespace

TEST_CASE("word grammar") {
    CHECK(parse_word("x") == g(1));
    CHECK(parse_word("w") == g(4));
    CHECK(parse_word("m12") == g(12));
    CHECK(parse_word("x y^-1") == g(1) * invert(g(2)));
    CHECK(parse_word("xy") == g(1) * g(2));
    CHECK(parse_word("[x,y]") == commutator(g(1), g(2)));
    CHECK(parse_word("[x, y, z, w]") == basic_commutator({1, 2, 3, 4}));
    CHECK(parse_word("[[m2,m3],[m4,m5]]") == commutator(commutator(g(2), g(3)), commutator(g(4), g(5))));
    CHECK(parse_word("x^y") == conjugate(g(1), g(2)));
    CHECK(parse_word("[x, x^y]") == commutator(g(1), conjugate(g(1), g(2))));
    CHECK(parse_word("(x y)^-1") == invert(g(1) * g(2)));
    CHECK(parse_word("[z, x y, x y, w]") == left_normed({g(3), g(1) * g(2), g(1) * g(2), g(4)}));
    CHECK(parse_word("1").is_identity());
    CHECK(parse_word("x x^-1").is_identity());
    CHECK(parse_word("  [ x , y ]  ") == commutator(g(1), g(2)));
}

TEST_CASE("parse errors carry positions") {
    CHECK_THROWS_AS(parse_word(""), ParseError);
    CHECK(parse_error_position("[x,y") == 4);
    CHECK(parse_error_position("x ^") != std::string::npos);
    CHECK(parse_error_position("[x]") != std::string::npos);
    CHECK(parse_error_position("x $") == 2);
    CHECK(parse_error_position("m0") != std::string::npos);
    CHECK_THROWS_AS(parse_word("m5", Alphabet::meridians(4)), ParseError);
    CHECK(parse_error_position("x y") == std::string::npos);
}

TEST_CASE("printing") {
    CHECK(print_word(commutator(g(2), g(3))) == "m2^-1 m3^-1 m2 m3");
    CHECK(print_word(GroupWord{}) == "1");
    CHECK(print_word(g(1) * g(5), Alphabet::xyzw()) == "x x5");
    CHECK(print_bracket({g(3), g(1) * g(2), g(1) * g(2), g(4)}, Alphabet::xyzw()) == "[z, x y, x y, w]");
    CHECK(split_bracket("[a, [b,c], d e]") == std::vector<std::string>{"a", "[b,c]", "d e"});
    CHECK_THROWS_AS(split_bracket("a, b"), ParseError);
    CHECK(detect_alphabet("[m2,m3]").prefix == "m");
    CHECK(detect_alphabet("[x,y,z]").letters);
    CHECK(detect_alphabet("[g1, g2]").prefix == "g");
}

TEST_CASE("print and parse round-trip") {
    oracle::Random rng(0x5a7);
    for (int trial = 0; trial < 200; ++trial) {
        const auto u = rng.word(7, 12);
        CHECK(parse_word(print_word(u)) == u);
        CHECK(parse_word(print_word(u, Alphabet::xyzw())) == u);
        CHECK(parse_word(print_word(u, Alphabet{"g", false, 0})) == u);
    }
}

TEST_CASE("link files") {
    const auto link = parse_link("# sample\nn = 3\ncomponent a = [m2,m3]\ncomponent b = [m3,m1]\n\ncomponent c = 1\n");
    CHECK(link.size() == 3);
    CHECK(link.name(1) == "a");
    CHECK(link.longitude(2) == commutator(g(3), g(1)));
    CHECK(link.longitude(3).is_identity());
    CHECK(parse_link(write_link(link, "round trip")) == link);
    CHECK(write_link(hopf()) == "n = 2\ncomponent l1 = m2\ncomponent l2 = m1\n");

    CHECK_THROWS_AS(parse_link("component a = m2\n"), ParseError);
    CHECK_THROWS_AS(parse_link("n = 2\ncomponent a = m2\n"), ParseError);
    CHECK_THROWS_AS(parse_link("n = 2\ncomponent a = m2\ncomponent b = [m1\n"), ParseError);
    CHECK_THROWS_AS(parse_link("n = 2\ncomponent a = m1\ncomponent b = m1\n"), ParseError);
    CHECK_THROWS_AS(parse_link("n = 2\nbogus\n"), ParseError);
    try {
        parse_link("n = 2\ncomponent a = m2\ncomponent b = [m1\n");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
    CHECK_THROWS_AS(read_link_file("/nonexistent/file.link"), ParseError);
}

TEST_CASE("mu indices and GBR specs") {
    CHECK(parse_mu_index("23;1") == MuIndex{{2, 3}, 1});
    CHECK(parse_mu_index("mu(2345;1)") == MuIndex{{2, 3, 4, 5}, 1});
    CHECK(parse_mu_index("10,2;1") == MuIndex{{10, 2}, 1});
    CHECK_THROWS_AS(parse_mu_index("231"), ParseError);
    CHECK_THROWS_AS(parse_mu_index(";1"), ParseError);

    const auto spec = parse_gbr_spec("1 ; ((1,1),(1,1))");
    CHECK(to_string(spec) == "1 ; ((1,1),(1,1))");
    CHECK(spec.first.is_leaf());
    CHECK(parse_gbr_spec("3;(1,2)").second.right().multiplicity() == 2);
    CHECK(to_string(parse_gbr_spec("3;(1,2)")) == "3 ; (1,2)");
    CHECK_THROWS_AS(parse_gbr_spec("1 ; (1,1"), ParseError);
    CHECK_THROWS_AS(parse_gbr_spec("1"), ParseError);
    CHECK_THROWS_AS(parse_gbr_spec("0 ; 1"), ParseError);
    CHECK_THROWS_AS(parse_gbr_spec("1 ; 1 x"), ParseError);
}

TEST_CASE("certificate files") {
    const MilnorContext ctx(4);
    const auto cert = engel_decompose(basic_commutator({1, 2, 3, 4}), ctx);
    const auto text = write_certificate(cert, Alphabet::xyzw());
    CHECK(text.rfind("rank 4\ntarget ", 0) == 0);
    CHECK(text.find("t1 a +1 [z, x y, x y, w]") != std::string::npos);
    const auto back = parse_certificate(text);
    CHECK(back.rank == 4);
    CHECK(back.target == cert.target);
    CHECK(back.terms == cert.terms);
    CHECK(verify_certificate(back, ctx));

    auto tampered = text;
    tampered.replace(tampered.find("t1 a +1"), 7, "t1 a -1");
    CHECK_FALSE(verify_certificate(parse_certificate(tampered), ctx));
    auto mislabeled = text;
    mislabeled.replace(mislabeled.find("t1 a +1"), 7, "t1 b +1");
    CHECK_THROWS_AS(parse_certificate(mislabeled), ParseError);
    CHECK_THROWS_AS(parse_certificate("rank 4\n"), ParseError);
    CHECK_THROWS_AS(parse_certificate("rank 4\ntarget x\nt1 a +1 [x, y, z, w]\n"), ParseError);
}

TEST_CASE("report helpers") {
    CHECK(compact_factors({1, 1, 1, 1, 3, 3, 3, 3}) == "1^4 3^4");
    CHECK(compact_factors({}) == "-");
    CHECK(compact_factors({2}) == "2");
    CHECK(describe_quotient({1, 3, 3}, 0) == "(Z/3)^2");
    CHECK(describe_quotient({1, 1}, 6) == "Z^6");
    CHECK(describe_quotient({1, 1}, 0) == "0");
    CHECK(describe_quotient({2, 10}, 1) == "Z + Z/2 + Z/10");
}
