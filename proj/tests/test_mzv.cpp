#include <doctest.h>

#include <cmath>
#include <random>

#include "gfp/mzv.hpp"

using namespace gfp;

namespace {

MzvPoly z(const Composition& c) { return reducer().reduce_composition(c); }

Composition rand_comp(std::mt19937& rng, int weight) {
    Composition c;
    while (weight > 0) {
        int n = 1 + int(rng() % std::min(weight, 4));
        c.push_back(n);
        weight -= n;
    }
    if (c.back() == 1) {
        c.pop_back();
        if (c.empty()) return {2};
        c.back() += 1;
    }
    return c;
}

}  // namespace

TEST_CASE("composition and word forms") {
    CHECK(composition_to_word({2, 3}).str() == "10100");
    CHECK(word_to_composition(Word::from_string("10100")) == Composition{2, 3});
    CHECK(is_admissible(Word::from_string("10")));
    CHECK(!is_admissible(Word::from_string("01")));
    CHECK(composition_weight({3, 3, 5}) == 11);
    // depth-1 sign of the word form
    CHECK(zeta_of_composition({2}) == MzvExpr(Word::from_string("10"), -1));
}

TEST_CASE("small reductions") {
    CHECK(z({4}) == z({2}) * z({2}) * Q(2, 5));
    CHECK(z({1, 2}) == z({3}));
    CHECK(z({2, 3}) == z({5}) * Q(-11, 2) + z({2}) * z({3}) * Q(3));
    CHECK(z({3, 2}) == z({5}) * Q(9, 2) - z({2}) * z({3}) * Q(2));
    CHECK(z({2, 2}) == z({2}) * z({2}) * Q(3, 10));
    CHECK(z({6}) == z({2}) * z({2}) * z({2}) * Q(8, 35));
    CHECK(to_string(z({3, 5})) == "z(3,5)");
}

TEST_CASE("regularization kills zeta_0 and zeta_1") {
    CHECK(reducer().zeta(Word::from_string("0")).empty());
    CHECK(reducer().zeta(Word::from_string("1")).empty());
    CHECK(shuffle_regularize(Word::from_string("01")).coeff(Word::from_string("10")) == -1);
}

TEST_CASE("pivot counts follow 1/(1-t^2-t^3)") {
    int d[] = {1, 0, 1, 1, 1, 2, 2, 3, 4, 5, 7, 9, 12};
    for (int w = 0; w <= 12; ++w) CHECK(expected_dimension(w) == d[w]);
    for (int w = 2; w <= 8; ++w) {
        WeightReport r = reducer().report(w);
        CHECK(r.dimension == d[w]);
        CHECK(r.words - r.rank == d[w]);
    }
}

TEST_CASE("generator choice") {
    reducer().ensure(12);
    std::vector<std::string> names;
    for (const auto& g : reducer().generators()) names.push_back(g.name());
    CHECK(names.size() == 11);
    CHECK(names[0] == "z(2)");
    CHECK(std::find(names.begin(), names.end(), "z(3,3,5)") != names.end());
}

TEST_CASE("property: stuffle and shuffle agree after reduction") {
    std::mt19937 rng(5);
    for (int it = 0; it < 40; ++it) {
        int wa = 2 + int(rng() % 4), wb = 2 + int(rng() % std::max(1, 9 - wa));
        Composition a = rand_comp(rng, wa), b = rand_comp(rng, wb);
        MzvPoly sh = reducer().reduce(mzv_product(zeta_of_composition(a), zeta_of_composition(b)));
        MzvPoly st = reducer().reduce(stuffle_product(a, b));
        CAPTURE(composition_str(a));
        CAPTURE(composition_str(b));
        CHECK(sh == st);
        CHECK(sh == z(a) * z(b));
    }
}

TEST_CASE("property: duality") {
    std::mt19937 rng(6);
    for (int it = 0; it < 40; ++it) {
        Word w = composition_to_word(rand_comp(rng, 2 + int(rng() % 9)));
        auto [d, s] = duality(w);
        CHECK(d == w.reversed().swapped());
        CHECK(reducer().zeta(w) == reducer().zeta(d) * Q(s));
    }
}

TEST_CASE("property: relation rows reduce to zero") {
    for (int w = 3; w <= 7; ++w)
        for (const auto& r : relation_rows(w)) {
            CAPTURE(r.tag);
            CHECK(reducer().reduce(r.row).empty());
        }
}

TEST_CASE("mod products and ideals") {
    MzvPoly p = z({5}) * Q(20) - z({2}) * z({3}) * Q(10);
    CHECK(mod_products(p) == z({5}) * Q(20));
    CHECK(is_products_only(z({2}) * z({3})));
    CHECK(!is_products_only(p));
    CHECK(mod_ideal(z({3, 5}) + z({3}) * z({5}), 2) == z({3, 5}) + z({3}) * z({5}));
    CHECK(mod_ideal(z({2}) * z({9}), 2).empty());
}

TEST_CASE("parse_mzv round trip") {
    MzvPoly p = z({11}) * Q(-960211, 240) + z({3, 3, 5}) * Q(288, 5) + z({2}) * z({9}) * Q(2592);
    CHECK(parse_mzv(to_string(p)) == p);
}

TEST_CASE("above the cap") {
    configure_reducer(6, std::nullopt);
    CHECK_THROWS_AS(reducer().ensure(7), MathError);
    configure_reducer(12, std::nullopt);
    CHECK(!z({7}).empty());
}
