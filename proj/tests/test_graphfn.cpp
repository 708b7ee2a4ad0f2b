#include <doctest.h>

#include "gfp/graphfn.hpp"

using namespace gfp;

namespace {

MzvPoly z(const Composition& c) { return reducer().reduce_composition(c); }

std::vector<std::string> words_up_to(int n, const std::string& prefix) {
    std::vector<std::string> out{prefix};
    for (size_t i = 0; i < out.size(); ++i)
        if (int(out[i].size()) < n)
            for (char c : {'0', '1', '2'}) out.push_back(out[i] + c);
    return out;
}

GfGraph labeled(std::initializer_list<const char*> names, std::initializer_list<std::pair<int, int>> edges) {
    GfGraph g;
    for (const char* n : names) g.add_vertex(n);
    g.labels = {0, 1, 2, -1};
    for (auto [u, v] : edges) g.add_edge(u, v);
    return g;
}

GfGraph octahedron() {
    GfGraph g;
    for (const char* n : {"a", "a'", "b", "b'", "c", "c'"}) g.add_vertex(n);
    for (int i = 0; i < 6; ++i)
        for (int j = i + 1; j < 6; ++j)
            if (j != (i ^ 1)) g.add_edge(i, j);
    return g;
}

}  // namespace

TEST_CASE("graph json round trip") {
    GfGraph g = labeled({"0", "1", "z", "x"}, {{0, 3}, {1, 3}, {2, 3}});
    GfGraph h = graph_from_json(graph_to_json(g));
    CHECK(h.names == g.names);
    CHECK(h.labels == g.labels);
    CHECK(h.edges.size() == 3);
    CHECK_THROWS(graph_from_json("{\"vertices\":[\"a\"],\"edges\":[{\"u\":\"a\",\"v\":\"q\",\"w\":1}]}"));
}

TEST_CASE("completion of the star") {
    GfGraph c = complete(labeled({"0", "1", "z", "x"}, {{0, 3}, {1, 3}, {2, 3}}));
    CHECK(is_completed(c));
    auto w = c.weights();
    int inf = c.labels[LInf];
    REQUIRE(inf >= 0);
    CHECK(w[0][1] == -1);
    CHECK(w[2][inf] == -1);
    CHECK(w[3][inf] == 1);
    CHECK(w[0][inf] == 0);
    CHECK(w[1][inf] == 0);
}

TEST_CASE("property: completion gives internal valency 4") {
    for (const auto& w : words_up_to(4, "2")) {
        GfGraph c = complete(sequential_function_graph(w));
        for (int v : c.internal()) CHECK(c.valency(v) == 4);
    }
}

TEST_CASE("convergence") {
    CHECK(check_convergence(sequential_function_graph("20")).ok);
    auto r = check_convergence(sequential_function_graph("02"));
    CHECK(!r.ok);
    CHECK(r.kind == "IR");
    CHECK_THROWS_WITH_AS(sequential_function("02"), "divergent (word must begin with 2)", MathError);
}

TEST_CASE("label permutations") {
    auto perms = all_label_perms();
    CHECK(perms.size() == 24);
    int id = 0;
    for (const auto& p : perms) id += moebius_of(p) == Moebius::id;
    CHECK(id == 4);  // the Klein four-group acts trivially
}

TEST_CASE("property: S4 invariance of constructed functions") {
    for (const char* w : {"2", "21", "201", "2012"}) {
        GfGraph g = sequential_function_graph(w);
        BElement f = construct_graphical_function(g).f;
        CHECK(f.g == sequential_function(w).g);
        for (const auto& p : all_label_perms()) {
            auto [h, phi] = permute_labels(complete(g), p);
            CAPTURE(w);
            CHECK(moebius_B(construct_graphical_function(h).f, phi).g == f.g);
        }
    }
}

TEST_CASE("property: append-edge round trip on sequential functions") {
    for (const auto& w : words_up_to(4, "2")) {
        BElement f = sequential_function(w);
        CAPTURE(w);
        CHECK(is_antisymmetric(f));
        AExpr prev = w.size() == 1 ? rational_B(AExpr(sv_constant(mzv_constant(1)))).g : sequential_function(w.substr(0, w.size() - 1)).g;
        AExpr integrand = prev * sequential_factor(w.back());
        CHECK(append_inverse(f).g == integrand);
        CHECK(append_edge(BElement{integrand}).g == f.g);
    }
    CHECK_THROWS_AS(append_edge(BElement{AExpr(P(Word::from_string("01")))}), MathError);
}

TEST_CASE("ladder identity") {
    for (int n = 1; n <= 4; ++n) {
        std::string w = "2" + std::string(n - 1, '0');
        Word a = Word::zeros(n).push_back(1) + Word::zeros(n - 1), b = Word::zeros(n - 1).push_back(1) + Word::zeros(n);
        AExpr rhs = AExpr(P(a) - P(b)) * Q(n % 2 ? 1 : -1);
        CHECK(sequential_function(w).g == rhs);
    }
}

TEST_CASE("K4 and K5") {
    GfGraph k4 = labeled({"0", "1", "z", "x"}, {{0, 3}, {1, 3}, {2, 3}, {0, 2}, {1, 2}, {0, 1}});
    CHECK(construct_graphical_function(k4).f.g == sequential_function("2").g * AExpr::monomial(-1, -1, -1, -1));
    GfGraph k5 = labeled({"0", "1", "z", "x", "y"}, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}});
    BElement expect = rational_B(AExpr(sv_constant(z({3}) * Q(6))) * AExpr::monomial(-2, -2, -2, -2));
    CHECK(construct_graphical_function(k5).f.g == expect.g);
}

TEST_CASE("sequential periods") {
    CHECK(sequential_period("22").value == z({3}) * Q(6));
    CHECK(sequential_period("212").value == z({5}) * Q(20));
    CHECK(sequential_period("202").value == z({5}) * Q(20));
    CHECK(sequential_period("2002").value == z({7}) * Q(70));
    CHECK(sequential_period("2012").value == z({7}) * Q(441, 8));
    CHECK_THROWS_AS(sequential_period("21"), MathError);
}

TEST_CASE("graph route") {
    GfGraph oc = octahedron();
    CHECK(period_of_graph(oc, std::array<int, 4>{0, 1, 3, 2}).value == z({5}) * Q(20));
    CHECK(period_of_graph(oc).value == z({5}) * Q(20));
    for (const char* w : {"22", "2012"})
        CHECK(period_of_graph(complete_period_graph(sequential_graph(w))).value == sequential_period(w).value);
}

TEST_CASE("zig-zag closed form") {
    CHECK(zigzag_coefficient(3) == 6);
    CHECK(zigzag_coefficient(4) == 20);
    CHECK(zigzag_coefficient(5) == Q(441, 8));
    CHECK(zigzag_coefficient(6) == 168);
    CHECK(zigzag_word(3) == "22");
    CHECK(zigzag_word(4) == "202");
    CHECK(zigzag_word(5) == "2012");
    CHECK(zigzag_word(6) == "20102");
}

TEST_CASE("mod products") {
    CHECK(period_mod_products("") == z({3}) * Q(6));
    CHECK(period_mod_products("1") == z({5}) * Q(20) - z({2}) * z({3}) * Q(10));
    for (const auto& w : std::vector<std::string>{"", "0", "1", "00", "01", "10", "11", "02", "20", "12", "21", "22"}) {
        CAPTURE(w);
        CHECK(is_products_only(sequential_period("2" + w + "2").value - period_mod_products(w)));
    }
}

TEST_CASE("Zagier formula against the reducer") {
    CHECK(zagier_coefficient(0, 0) == 1);
    CHECK(zagier_coefficient(1, 0) == Q(-11, 2));
    CHECK(zagier_coefficient(0, 1) == Q(9, 2));
    for (int a = 0; a <= 3; ++a)
        for (int b = 0; a + b <= 4; ++b) {
            Composition c(a, 2);
            c.push_back(3);
            c.insert(c.end(), b, 2);
            CHECK(mod_products(z(c)) == z({2 * (a + b + 1) + 1}) * zagier_coefficient(a, b));
        }
    for (int n : {5, 6}) {
        MzvPoly r = mod_products(zigzag_mod_products(n));
        CHECK(r == mod_products(zigzag_closed_form(n)));
    }
}

TEST_CASE("phi4 word classes") {
    CHECK(classify_phi4_word("22").str() == "zigzag(3)");
    CHECK(classify_phi4_word("2012").str() == "zigzag(5)");
    CHECK(classify_phi4_word("20102").str() == "zigzag(6)");
    CHECK(classify_phi4_word("2002").str() == "none");
    CHECK_THROWS_AS(classify_phi4_word("20"), MathError);
}
