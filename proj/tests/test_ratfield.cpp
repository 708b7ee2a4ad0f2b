#include <doctest.h>

#include "gfp/ratfield.hpp"

using namespace gfp;

namespace {

Word W(const char* s) { return Word::from_string(s); }
MzvPoly z(const Composition& c) { return reducer().reduce_composition(c); }
AExpr D() { return AExpr(P(W("01")) - P(W("10"))); }
AExpr pow(const AExpr& a, int n) {
    AExpr r(sv_constant(mzv_constant(1)));
    for (int i = 0; i < n; ++i) r = r * a;
    return r;
}

}  // namespace

TEST_CASE("partial fractions") {
    // 1/(x(x-1)) = 1/(x-1) - 1/x
    auto r = pf_mul(Pf{0, -1}, Pf{1, -1});
    CHECK(r.size() == 2);
    for (auto [p, c] : r) {
        if (p == Pf{0, -1}) CHECK(c == -1);
        else CHECK((p == Pf{1, -1} && c == 1));
    }
    CHECK(AExpr::monomial(1, 0, -1, 0) == AExpr::monomial(0, 0, 0, 0) + AExpr::monomial(0, 0, -1, 0));
}

TEST_CASE("plane integrals of powers of the dilogarithm") {
    PlaneIntegral d4 = integrate_plane(pow(D(), 4) * Q(1, 256));
    CHECK(d4.convergent);
    CHECK(d4.value == z({3}) * Q(9, 2) - z({5}) * Q(27, 4) + z({7}) * Q(189, 32));
    PlaneIntegral d2 = integrate_plane(pow(D(), 2) * Q(-1, 16));
    CHECK(!d2.convergent);
    CHECK(d2.value == z({3}) * Q(1, 2));
    for (int n : {1, 3}) CHECK(integrate_plane(pow(D(), n)).value.empty());
}

TEST_CASE("plane integral of f_I-type integrand") {
    // (1/pi) int d^2z 4iD(z)/ ... checks convergence flag of a log-free integrand
    PlaneIntegral r = integrate_plane(AExpr::monomial(-1, -1, -1, -1));
    CHECK(!r.convergent);
}

TEST_CASE("derivation and integration in A") {
    AExpr e = AExpr(P(W("01"))) * AExpr::monomial(-1, 0, 0, -1);
    for (Var v : {Var::hol, Var::antihol}) CHECK(derive_A(integrate_A(e, v), v) == e);
    CHECK(swap(swap(e)) == e);
}

TEST_CASE("basepoints of primitives") {
    AExpr e = AExpr(P(W("1"))) * AExpr::monomial(0, -1, 0, 0);
    for (int b : {0, 1}) {
        AExpr F = integrate_A(e, Var::antihol, b);
        CHECK(derive_A(F, Var::antihol) == e);
        ExpansionBlock x = expand_at(F, b, 0);
        CHECK(x.coeff(0, 0, 0).empty());
    }
}

TEST_CASE("expansion of P01 at 0") {
    ExpansionBlock x = expand_at(AExpr(P(W("01"))), 0, 2);
    CHECK(x.coeff(0, 0, 1) == mzv_constant(-1));
    CHECK(x.coeff(0, 1, 0) == mzv_constant(1));
    CHECK(x.coeff(1, 1, 0) == mzv_constant(-1));
    CHECK(x.coeff(0, 0, 2) == mzv_constant(Q(-1, 4)));
    CHECK(x.coeff(0, 0, 0).empty());
}

TEST_CASE("expansion at 1 of P01 has the zeta(2)-free leading term") {
    ExpansionBlock x = expand_at(AExpr(P(W("01"))), 1, 1);
    CHECK(x.coeff(0, 0, 0).empty());  // P_01(1) = 0
    CHECK(x.coeff(0, 1, 0) == mzv_constant(1));
    CHECK(x.coeff(1, 0, 1) == mzv_constant(1));
}

TEST_CASE("B-elements") {
    BElement f{D()};
    CHECK(is_antisymmetric(f));
    CHECK(!is_antisymmetric(BElement{AExpr(P(W("01")))}));
    CHECK_THROWS_AS(value_at_B(f, 0), MathError);  // logarithmic at 0
    BElement g{D() * AExpr::monomial(1, 1, 0, 0)};
    CHECK(value_at_B(g, 0).empty());
}

TEST_CASE("L at infinity") {
    CHECK(L_value_inf(W("0")).empty());
    CHECK(L_value_inf(W("1")).empty());
    CHECK(L_value_inf(W("01")) == z({2}) * Q(-1));
}
