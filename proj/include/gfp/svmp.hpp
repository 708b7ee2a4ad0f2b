#pragma once
#include <map>
#include <string>
#include <vector>

#include "gfp/ncseries.hpp"

namespace gfp {

// Monomial Lb[u] L[v] times an MZV monomial: L_u(zb) L_v(z).
struct SvKey {
    Word u;  // antiholomorphic word
    Word v;  // holomorphic word
    Mono m;
    bool operator==(const SvKey& o) const { return u == o.u && v == o.v && m == o.m; }
    bool operator<(const SvKey& o) const;
};

struct SvKeyHash {
    size_t operator()(const SvKey& k) const {
        return hash_mix(k.u.code * 0x9e3779b97f4a7c15ULL ^ hash_mix(k.v.code) ^ (k.m.e * 0xbf58476d1ce4e5b9ULL));
    }
};

using SvExpr = Lin<SvKey, SvKeyHash>;

enum class Var { hol, antihol };

SvExpr sv_term(Word u, Word v, const MzvPoly& c);
SvExpr sv_constant(const MzvPoly& c);
SvExpr sv_scale(const SvExpr& e, const MzvPoly& c);
SvExpr operator*(const SvExpr& a, const SvExpr& b);
// Complex conjugation: exchanges holomorphic and antiholomorphic words.
SvExpr sv_swap(const SvExpr& e);
std::string to_string(const SvExpr& e);
// Largest |u|+|v|+mzv weight.
int sv_weight(const SvExpr& e);

// P_w by repeated holomorphic integration (no weight limit).
const SvExpr& P(Word w);
SvExpr P(const Word012& w);
SvExpr p_zero(const Word012& w);
MzvPoly c_constant(const Word012& w);

// P_w for |w| <= cap by coefficient extraction from the generating series with x1'.
std::map<Word, SvExpr> build_P_basis(int cap);

struct Pole {
    int a;
    SvExpr num;
};
// d/dvar e = sum_a num_a / (var - a)
std::vector<Pole> derive(const SvExpr& e, Var var);
SvExpr derive_pole(const SvExpr& e, Var var, int a);

enum class IntAlgo { commutator, x1prime };
// Primitive of e/(var - a) in the single-valued class, vanishing at 0.
SvExpr integrate(const SvExpr& e, Var var, int a, IntAlgo algo = IntAlgo::commutator);
// Same with regularized value 0 at basepoint 0, 1 or infinity (encoded as 2).
SvExpr integrate_based(const SvExpr& e, Var var, int a, int basepoint, IntAlgo algo = IntAlgo::commutator);
MzvPoly commutator_defect(const SvExpr& p, int a, int b);

// Regularized limit at 0, 1 or infinity (encoded as 2).
MzvPoly reg_limit(const SvExpr& e, int point);

enum class Moebius { id, one_minus_z, z_minus_1_over_z, z_over_z_minus_1, one_over_one_minus_z, one_over_z };
Moebius parse_moebius(const std::string& s);
std::string moebius_name(Moebius f);
// e(f(z)) expressed as an SvExpr in z.
SvExpr s3_transform(const SvExpr& e, Moebius f);
// Elementary moves: z -> 1 - z and z -> z/(z - 1).
SvExpr map_one_minus(const SvExpr& e);
SvExpr map_z_over_z_minus_1(const SvExpr& e);

// Coefficients a_w with e = sum a_w P_w; throws if e is not in the span.
std::map<Word, MzvPoly> to_P_basis(const SvExpr& e);
SvExpr from_P_basis(const std::map<Word, MzvPoly>& coeffs);
std::string to_string_P(const std::map<Word, MzvPoly>& coeffs);

// Regularized value of L_w at 0 or 1.
MzvPoly L_value(Word w, int point);

}  // namespace gfp
