#include <doctest.h>

#include <random>

#include "gfp/svmp.hpp"

using namespace gfp;

namespace {

Word W(const char* s) { return Word::from_string(s); }
MzvPoly z3() { return reducer().reduce_composition({3}); }

std::vector<Word> all_words(int maxlen) {
    std::vector<Word> out;
    for (int n = 1; n <= maxlen; ++n)
        for (uint64_t b = 0; b < (uint64_t(1) << n); ++b) out.push_back(Word((uint64_t(1) << n) | b));
    return out;
}

}  // namespace

TEST_CASE("low weight P") {
    CHECK(to_string(P(W("0"))) == "L[0]+Lb[0]");
    CHECK(to_string(P(W("1"))) == "L[1]+Lb[1]");
    CHECK(to_string(P(W("01"))) == "L[01]+Lb[0]*L[1]+Lb[10]");
    CHECK(P(W("01")) == p_zero("01"));
}

TEST_CASE("weight four constants") {
    const std::pair<const char*, int> table[] = {{"0011", -2}, {"0101", 4}, {"1010", -4}, {"1100", 2},
                                                 {"0111", 2},  {"1011", -6}, {"1101", 6}, {"1110", -2}};
    for (auto [w, c] : table) {
        CAPTURE(w);
        CHECK(c_constant(w) == z3() * Q(c));
        CHECK(P(W(w)) == p_zero(w) + sv_term(W("1"), Word(), z3() * Q(c)));
    }
    CHECK(c_constant("0001").empty());
}

TEST_CASE("letter 2 in P") { CHECK(P(std::string("2")) == P(W("1")) - P(W("0"))); }

TEST_CASE("property: holomorphic derivative deconcatenates the last letter") {
    for (Word w : all_words(5))
        for (int a : {0, 1}) {
            SvExpr expect = w.back() == a ? P(w.drop_back()) : SvExpr();
            if (w.size() == 1 && w.back() == a) expect = sv_constant(mzv_constant(1));
            CHECK(derive_pole(P(w), Var::hol, a) == expect);
        }
}

TEST_CASE("property: P_w vanishes at 0 unless w = 0^n") {
    for (Word w : all_words(5)) {
        if (w.count(1) == 0) continue;
        CHECK(reg_limit(P(w), 0).empty());
    }
}

TEST_CASE("property: integration inverts differentiation") {
    for (Word w : all_words(4))
        for (int a : {0, 1})
            for (Var v : {Var::hol, Var::antihol}) {
                SvExpr F = integrate(P(w), v, a);
                CHECK(derive_pole(F, v, a) == P(w));
                CHECK(derive_pole(F, v, 1 - a).empty());
            }
}

TEST_CASE("property: the two antiholomorphic integration algorithms agree to weight 6") {
    for (Word w : all_words(5))
        for (int a : {0, 1}) {
            CAPTURE(w.str());
            CHECK(integrate(P(w), Var::antihol, a, IntAlgo::commutator) == integrate(P(w), Var::antihol, a, IntAlgo::x1prime));
        }
}

TEST_CASE("property: P basis round trip") {
    std::mt19937 rng(7);
    for (Word w : all_words(4)) {
        auto b = to_P_basis(P(w));
        CHECK(b.size() == 1);
        CHECK(b.at(w) == mzv_constant(1));
    }
    CHECK_THROWS_AS(to_P_basis(sv_term(Word(), W("01"), mzv_constant(1))), MathError);
}

TEST_CASE("property: S3 transforms form a group action") {
    for (Word w : all_words(4)) {
        SvExpr p = P(w);
        CHECK(map_one_minus(map_one_minus(p)) == p);
        CHECK(map_z_over_z_minus_1(map_z_over_z_minus_1(p)) == p);
        CHECK(s3_transform(s3_transform(p, Moebius::one_over_z), Moebius::one_over_z) == p);
        CHECK(s3_transform(p, Moebius::id) == p);
    }
    CHECK(map_one_minus(P(W("01"))) == P(W("10")));
}

TEST_CASE("Bloch-Wigner numerator is odd under z -> 1-z and 1/z") {
    SvExpr d = P(W("01")) - P(W("10"));
    CHECK(map_one_minus(d) == -d);
    CHECK(s3_transform(d, Moebius::one_over_z) == -d);
}

TEST_CASE("regularized L values") {
    CHECK(L_value(W("10"), 1) == reducer().zeta(W("10")));
    CHECK(L_value(W("0"), 1).empty());
    CHECK(L_value(W("1"), 0).empty());
}

TEST_CASE("Moebius names") {
    for (Moebius f : {Moebius::id, Moebius::one_minus_z, Moebius::z_minus_1_over_z, Moebius::z_over_z_minus_1,
                      Moebius::one_over_one_minus_z, Moebius::one_over_z})
        CHECK(parse_moebius(moebius_name(f)) == f);
}
