#include <doctest.h>

#include <random>

#include "gfp/parse.hpp"

using namespace gfp;

namespace {

bool same(const Parsed& a, const Parsed& b) {
    if (a.kind != b.kind) return false;
    return a.kind == Parsed::Mzv ? a.mzv == b.mzv : a.a == b.a;
}

std::string rand_word(std::mt19937& rng, int len, bool with2) {
    std::string s;
    for (int i = 0; i < len; ++i) s += char('0' + rng() % (with2 ? 3 : 2));
    return s;
}

std::string rand_atom(std::mt19937& rng, bool constant) {
    int k = int(rng() % (constant ? 3 : 10));
    switch (k) {
        case 0: return std::to_string(1 + rng() % 7) + "/" + std::to_string(1 + rng() % 5);
        case 1: return "zeta[1" + rand_word(rng, int(rng() % 3), true) + "0]";
        case 2: return "z(" + std::to_string(2 + rng() % 2) + (rng() % 2 ? ",3)" : ")");
        case 3: return "P[" + rand_word(rng, 1 + int(rng() % 3), true) + "]";
        case 4: return "P0[" + rand_word(rng, 1 + int(rng() % 3), false) + "]";
        case 5: return "L[" + rand_word(rng, 1 + int(rng() % 3), false) + "]";
        case 6: return "Lb[" + rand_word(rng, 1 + int(rng() % 3), false) + "]";
        case 7: return "z^" + std::to_string(int(rng() % 5) - 2);
        case 8: return "(zb-1)^-" + std::to_string(1 + rng() % 2);
        default: return "zb";
    }
}

std::string rand_expr(std::mt19937& rng, bool constant) {
    std::string s;
    int terms = 1 + int(rng() % 3);
    for (int t = 0; t < terms; ++t) {
        if (t) s += rng() % 2 ? " + " : " - ";
        int factors = 1 + int(rng() % 2);
        for (int f = 0; f < factors; ++f) s += (f ? "*" : "") + rand_atom(rng, constant);
    }
    return s;
}

}  // namespace

TEST_CASE("basic forms") {
    Parsed p = parse_expression("zeta[10]");
    CHECK(p.kind == Parsed::Mzv);
    CHECK(p.mzv == MzvExpr(Word::from_string("10"), 1));
    CHECK(p.as_constant() == reducer().reduce_composition({2}) * Q(-1));
    CHECK(parse_expression("z(2,3)").as_constant() == reducer().reduce_composition({2, 3}));
    Parsed d = parse_expression("P[01]-P[10]");
    CHECK(d.kind == Parsed::A);
    CHECK(d.a == AExpr(P(Word::from_string("01")) - P(Word::from_string("10"))));
    Parsed fi = parse_expression("1/(z^1*zb^1*(z-1)^1*(zb-1)^1)");
    CHECK(fi.as_A() == AExpr::monomial(-1, -1, -1, -1));
    Parsed b = parse_expression("(P[01] - P[10]) / (z - zb)");
    CHECK(b.kind == Parsed::B);
    CHECK(b.as_B().g == d.a);
}

TEST_CASE("whitespace and sugar") {
    CHECK(same(parse_expression(" zeta[ 2(01){2} ] "), parse_expression("zeta[20101]")));
    CHECK(parse_expression("zeta[2]").mzv == expand_letter2("2"));
    CHECK(same(parse_expression("z^2*z^-2"), parse_expression("1")));
    CHECK(parse_expression("(z-1)^2").as_A() == AExpr::monomial(2, 0, 0, 0) - AExpr::monomial(1, 0, 0, 0) * Q(2) + AExpr::monomial(0, 0, 0, 0));
}

TEST_CASE("errors carry columns") {
    auto col = [](const std::string& s) {
        try {
            parse_expression(s);
        } catch (const ParseError& e) {
            return e.column;
        }
        return -1;
    };
    CHECK(col("z(2") == 4);
    CHECK(col("P[01] + ") == 9);
    CHECK(col("zeta[01]*?") == 10);
    CHECK(col("L[012]") == 3);
    CHECK(col("P[01]/P[10]") == 7);
    CHECK(col("") == 1);
    CHECK_THROWS_WITH_AS(parse_expression("1 + #"), "syntax error at column 5: unexpected '#'", ParseError);
    CHECK_THROWS_AS(parse_expression("P[01]").as_B(), MathError);
    CHECK_THROWS_AS(parse_expression("P[01]").as_constant(), MathError);
}

TEST_CASE("printer output") {
    CHECK(print(parse_expression("2*zeta[10] - zeta[100]")) == "2*zeta[10]-zeta[100]");
    CHECK(print(parse_expression("P[1]")) == "L[1]+Lb[1]");
    CHECK(print(parse_expression("L[0]/(z-1)")) == "L[0]*(z-1)^-1");
}

TEST_CASE("property: parse after print is the identity") {
    std::mt19937 rng(11);
    for (int it = 0; it < 300; ++it) {
        std::string s = rand_expr(rng, it % 3 == 0);
        if (it % 5 == 0) s = "(" + s + ")/(z-zb)";
        CAPTURE(s);
        Parsed p = parse_expression(s);
        std::string printed = print(p);
        CAPTURE(printed);
        Parsed q = parse_expression(printed);
        CHECK(same(p, q));
        CHECK(print(q) == printed);
    }
}
