#include <doctest.h>

#include "gfp/ncseries.hpp"

using namespace gfp;

TEST_CASE("series arithmetic") {
    NcSeries x0 = NcSeries::letter(0, 4), x1 = NcSeries::letter(1, 4), one = NcSeries::one(4);
    NcSeries s = one + x0 + product(x0, x1);
    CHECK(product(s, inverse(s)) == one);
    CHECK(product(inverse(s), s) == one);
    CHECK(s.part(2) == product(x0, x1));
    CHECK(product(x0, x1).tilde() == product(x1, x0));
    CHECK(x0.tilde(true) == -x0);
    NcSeries big = product(product(x0, x0), product(x1, x1));
    CHECK(product(big, x0).terms().empty());  // truncated above the cap
}

TEST_CASE("substitution is a homomorphism") {
    NcSeries x0 = NcSeries::letter(0, 5), x1 = NcSeries::letter(1, 5);
    NcSeries a = x0 + product(x0, x1), b = x1 - x0;
    NcSeries s = product(x0, x1) + product(product(x1, x1), x0);
    NcSeries lhs = substitute(s, a, b);
    NcSeries rhs = product(a, b) + product(product(b, b), a);
    CHECK(lhs == rhs);
}

TEST_CASE("associator is group-like with the expected low coefficients") {
    NcSeries z = associator(6);
    CHECK(group_like_check(z).ok);
    // coefficient of x0 x1 is zeta_{01} = -zeta_{10}... regularized: zeta(2) with sign
    CHECK(z.coeff(Word::from_string("10")) == reducer().zeta(Word::from_string("10")));
    CHECK(z.coeff(Word::from_string("0")).empty());
    CHECK(z.coeff(Word::from_string("1")).empty());
}

TEST_CASE("non-group-like series are detected") {
    NcSeries x0 = NcSeries::letter(0, 3);
    NcSeries s = NcSeries::one(3) + x0;  // exp(x0) would need x0^2/2
    auto r = group_like_check(s);
    CHECK(!r.ok);
    CHECK(r.witness.has_value());
}

TEST_CASE("x1' is a Lie series") {
    const NcSeries& y = x1_prime(6);
    CHECK(lie_check(y).ok);
    CHECK(y.part(1) == NcSeries::letter(1, 6));
    CHECK(y.part(2).terms().empty());
    CHECK(y.part(3).terms().empty());
    CHECK(!y.part(4).terms().empty());  // first zeta(3) correction
}

TEST_CASE("property: x1' identities hold to cap 6") {
    for (const auto& r : x1_prime_identities(6)) {
        CAPTURE(r.name);
        CHECK(r.ok);
    }
}
