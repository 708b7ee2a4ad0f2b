#pragma once
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "gfp/svmp.hpp"

namespace gfp {

// One-variable prefactor in normal form: x^e (any e) or (x-1)^e with e < 0.
struct Pf {
    int kind = 0;  // 0: x, 1: x-1
    int e = 0;
    bool operator==(const Pf& o) const { return kind == o.kind && e == o.e; }
    bool operator<(const Pf& o) const { return std::tie(kind, e) < std::tie(o.kind, o.e); }
    bool is_one() const { return e == 0; }
};

// Product of two prefactors, partial-fraction decomposed.
std::vector<std::pair<Pf, Q>> pf_mul(Pf a, Pf b);

// Holomorphic prefactor h(z) times antiholomorphic prefactor a(zb).
struct Pref {
    Pf h, a;
    bool operator==(const Pref& o) const { return h == o.h && a == o.a; }
    bool operator<(const Pref& o) const { return std::tie(h, a) < std::tie(o.h, o.a); }
};

// Element of the algebra of SVMPs with rational prefactors in z, zb.
class AExpr {
public:
    using Map = std::map<Pref, SvExpr>;
    AExpr() = default;
    AExpr(const SvExpr& s);  // prefactor 1
    // z^i zb^j (z-1)^k (zb-1)^l, normalized.
    static AExpr monomial(int i, int j, int k, int l);

    const Map& terms() const { return t_; }
    bool empty() const { return t_.empty(); }
    void add(const Pref& p, const SvExpr& s, const Q& c = 1);
    void add(const AExpr& o, const Q& c = 1);
    SvExpr part(const Pref& p) const;
    size_t size() const;

    AExpr& operator+=(const AExpr& o) { add(o); return *this; }
    AExpr& operator-=(const AExpr& o) { add(o, -1); return *this; }
    friend AExpr operator+(AExpr a, const AExpr& b) { return a += b; }
    friend AExpr operator-(AExpr a, const AExpr& b) { return a -= b; }
    AExpr operator-() const;
    friend AExpr operator*(const AExpr& a, const AExpr& b);
    friend AExpr operator*(AExpr a, const Q& c);
    AExpr scaled(const MzvPoly& c) const;
    bool operator==(const AExpr& o) const { return t_ == o.t_; }
    bool operator!=(const AExpr& o) const { return !(*this == o); }

private:
    Map t_;
};

// Exchange z and zb.
AExpr swap(const AExpr& e);
AExpr derive_A(const AExpr& e, Var var);
// Primitive in var; basepoint -1 means no normalization, otherwise the
// regularized limit var -> basepoint (0, 1, or 2 for infinity) of the result vanishes.
AExpr integrate_A(const AExpr& e, Var var, int basepoint = -1);
std::string to_string(const AExpr& e);
int max_weight(const AExpr& e);

// Numerator g of g/(z-zb).
struct BElement {
    AExpr g;
    bool operator==(const BElement& o) const { return g == o.g; }
};
bool is_antisymmetric(const BElement& f);
std::string to_string(const BElement& f);

// Coefficients of (ln|y|^2)^k y^m yb^n, y = z, z-1 or z at 0, 1, infinity.
struct ExpansionBlock {
    int point = 0;
    int order = 0;
    std::map<std::tuple<int, int, int>, MzvPoly> c;
    MzvPoly coeff(int k, int m, int n) const;
};

// All coefficients with m, n <= order (at 0, 1) or m, n >= -order (at infinity).
ExpansionBlock expand_at(const AExpr& e, int point, int order);
// Same, but bounds m <= mmax, n <= nmax in the local variable (1/z at infinity);
// check_sv verifies that the log structure is a polynomial in ln|y|^2.
ExpansionBlock expand_local(const AExpr& e, int point, int mmax, int nmax, bool check_sv = false);

MzvPoly residue(const AExpr& e, int point, Var which);

struct PlaneIntegral {
    MzvPoly value;
    bool convergent;
};
// (1/pi) int_C e d^2z by residues of an antiholomorphic primitive.
PlaneIntegral integrate_plane(const AExpr& e);
PlaneIntegral plane_from_primitive(const AExpr& F);

// lim g/(z-zb) at 0 or 1.
MzvPoly value_at_B(const BElement& f, int point);

// Regularized value of L_w(z) as z -> infinity.
MzvPoly L_value_inf(Word w);

}  // namespace gfp
