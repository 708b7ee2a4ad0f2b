#include "gfp/svmp.hpp"

#include <mutex>
#include <sstream>
#include <tuple>

namespace gfp {

bool SvKey::operator<(const SvKey& o) const {
    int wa = u.size() + v.size(), wb = o.u.size() + o.v.size();
    if (wa != wb) return wa < wb;
    if (u != o.u) return u < o.u;
    if (v != o.v) return v < o.v;
    return m < o.m;
}

SvExpr sv_term(Word u, Word v, const MzvPoly& c) {
    SvExpr e;
    for (const auto& [m, q] : c) e.add(SvKey{u, v, m}, q);
    return e;
}

SvExpr sv_constant(const MzvPoly& c) { return sv_term(Word(), Word(), c); }

SvExpr sv_scale(const SvExpr& e, const MzvPoly& c) {
    SvExpr r;
    for (const auto& [k, q] : e)
        for (const auto& [m, p] : c) r.add(SvKey{k.u, k.v, k.m.times(m)}, q * p);
    return r;
}

SvExpr operator*(const SvExpr& a, const SvExpr& b) {
    SvExpr r;
    for (const auto& [ka, ca] : a)
        for (const auto& [kb, cb] : b) {
            WordPoly su = shuffle(ka.u, kb.u);
            WordPoly sv = shuffle(ka.v, kb.v);
            Mono m = ka.m.times(kb.m);
            Q c = ca * cb;
            for (const auto& [u, x] : su)
                for (const auto& [v, y] : sv) r.add(SvKey{u, v, m}, c * x * y);
        }
    return r;
}

SvExpr sv_swap(const SvExpr& e) {
    return e.map_keys([](const SvKey& k) { return SvKey{k.v, k.u, k.m}; });
}

std::string to_string(const SvExpr& e) {
    if (e.empty()) return "0";
    const auto& gens = reducer().generators();
    std::string out;
    for (const auto& [k, c] : e.sorted()) {
        bool neg = c < 0;
        Q a = neg ? Q(-c) : c;
        if (!out.empty()) out += neg ? "-" : "+";
        else if (neg) out += "-";
        std::vector<std::string> f;
        for (int g = 0; g < Mono::kMaxGens; ++g) {
            int x = k.m.exp(g);
            if (x) f.push_back(gens.at(g).name() + (x > 1 ? "^" + std::to_string(x) : ""));
        }
        if (!k.u.empty()) f.push_back("Lb[" + k.u.str() + "]");
        if (!k.v.empty()) f.push_back("L[" + k.v.str() + "]");
        std::string body;
        for (const auto& s : f) body += (body.empty() ? "" : "*") + s;
        if (body.empty()) out += a.get_str();
        else if (a == 1) out += body;
        else out += a.get_str() + "*" + body;
    }
    return out;
}

int sv_weight(const SvExpr& e) {
    int w = 0;
    for (const auto& [k, c] : e) w = std::max(w, k.u.size() + k.v.size() + k.m.weight());
    return w;
}

MzvPoly L_value(Word w, int point) {
    if (point == 0) return w.empty() ? mzv_constant(1) : MzvPoly();
    if (point == 1) return reducer().zeta(w);
    throw MathError("L_value: point must be 0 or 1");
}

// ---------------------------------------------------------------- integration

namespace {

using HList = std::vector<std::pair<Word, MzvPoly>>;

struct HKey {
    Word u, v;
    int a;
    bool operator==(const HKey& o) const { return u == o.u && v == o.v && a == o.a; }
};
struct HKeyHash {
    size_t operator()(const HKey& k) const { return hash_mix(k.u.code ^ hash_mix(k.v.code * 2 + k.a)); }
};

std::recursive_mutex g_int_mu;
std::unordered_map<HKey, HList, HKeyHash> g_h_memo;

// Pure antiholomorphic part of the holomorphic primitive of Lb[u] L[v] / (z - a).
const HList& anti_part(Word u, Word v, int a) {
    HKey key{u, v, a};
    auto it = g_h_memo.find(key);
    if (it != g_h_memo.end()) return it->second;
    HList out;
    if (u.empty()) {
        if (v.empty()) out.emplace_back(Word::letter_word(a), mzv_constant(1));
        else {
            MzvPoly val = L_value(v, a);
            if (!val.empty()) out.emplace_back(Word::letter_word(1), val);
        }
    } else {
        int b = u.back();
        Word up = u.drop_back();
        HList prev = anti_part(up, v, a);
        MzvPoly j = L_value(up, b) * L_value(v.push_back(a), b);
        for (const auto& [w, c] : prev) {
            out.emplace_back(w.push_back(b), c);
            j += c * L_value(w, b);
        }
        MzvPoly val = L_value(u, a) * L_value(v, a);
        val -= j;
        if (!val.empty()) out.emplace_back(Word::letter_word(1), val);
    }
    return g_h_memo.emplace(key, std::move(out)).first->second;
}

SvExpr hol_integrate(const SvExpr& e, int a) {
    std::lock_guard lk(g_int_mu);
    SvExpr r;
    for (const auto& [k, c] : e) {
        r.add(SvKey{k.u, k.v.push_back(a), k.m}, c);
        for (const auto& [w, h] : anti_part(k.u, k.v, a))
            for (const auto& [m, q] : h) r.add(SvKey{w, Word(), k.m.times(m)}, c * q);
    }
    return r;
}

std::map<Word, SvExpr> g_P;

}  // namespace

const SvExpr& P(Word w) {
    std::lock_guard lk(g_int_mu);
    auto it = g_P.find(w);
    if (it != g_P.end()) return it->second;
    SvExpr r = w.empty() ? sv_constant(mzv_constant(1)) : hol_integrate(P(w.drop_back()), w.back());
    return g_P.emplace(w, std::move(r)).first->second;
}

SvExpr P(const Word012& w) {
    SvExpr r;
    for (const auto& [u, c] : expand_letter2(w)) r.add(P(u), c);
    return r;
}

SvExpr p_zero(const Word012& w) {
    SvExpr r;
    for (const auto& [x, c] : expand_letter2(w))
        for (const auto& [u, v] : deconcatenations(x)) r.add(SvKey{u.reversed(), v, Mono{}}, c);
    return r;
}

MzvPoly c_constant(const Word012& w) {
    if (w.size() < 2) throw MathError("c_w needs |w| >= 2");
    MzvPoly r;
    for (const auto& [x, c] : expand_letter2(w)) {
        int n = x.size();
        if ((n - 2) % 2) continue;
        int b = x.front(), a = x.back();
        MzvPoly t;
        if (a == 1) t += reducer().zeta(x.drop_back());
        if (b == 1) t -= reducer().zeta(x.drop_front());
        r.add(t, 2 * c);
    }
    return r;
}

std::map<Word, SvExpr> build_P_basis(int cap) {
    const NcSeries& y = x1_prime(cap);
    std::unordered_map<Word, std::vector<std::pair<Mono, Q>>, WordHash> seg;
    for (const auto& [k, c] : y.terms()) seg[k.w].emplace_back(k.m, c);
    // M(u): antiholomorphic words w' with coefficients such that
    // sum_w' L_w'(zb) reverse(w')(x0, x1') has u-coefficient M(u)
    std::unordered_map<Word, Lin<WM, WMHash>, WordHash> memo;
    std::function<const Lin<WM, WMHash>&(Word)> M = [&](Word u) -> const Lin<WM, WMHash>& {
        auto it = memo.find(u);
        if (it != memo.end()) return it->second;
        Lin<WM, WMHash> r;
        if (u.empty()) r.add(WM{Word(), Mono{}}, 1);
        else {
            int n = u.size();
            if (u.front() == 0) {
                for (const auto& [k, c] : M(u.drop_front())) r.add(WM{k.w.push_back(0), k.m}, c);
            }
            for (int len = 1; len <= n; ++len) {
                auto s = seg.find(u.prefix(len));
                if (s == seg.end()) continue;
                const auto& rest = M(u.suffix_from(len));
                for (const auto& [m, q] : s->second)
                    for (const auto& [k, c] : rest) r.add(WM{k.w.push_back(1), k.m.times(m)}, c * q);
            }
        }
        return memo.emplace(u, std::move(r)).first->second;
    };
    std::map<Word, SvExpr> out;
    for (int n = 0; n <= cap; ++n)
        for (uint64_t b = 0; b < (uint64_t(1) << n); ++b) {
            Word w((uint64_t(1) << n) | b);
            SvExpr e;
            for (const auto& [u, v] : deconcatenations(w))
                for (const auto& [k, c] : M(u)) e.add(SvKey{k.w, v, k.m}, c);
            out.emplace(w, std::move(e));
        }
    return out;
}

std::vector<Pole> derive(const SvExpr& e, Var var) {
    SvExpr parts[2];
    for (const auto& [k, c] : e) {
        Word w = var == Var::hol ? k.v : k.u;
        if (w.empty()) continue;
        int a = w.back();
        SvKey nk = var == Var::hol ? SvKey{k.u, w.drop_back(), k.m} : SvKey{w.drop_back(), k.v, k.m};
        parts[a].add(nk, c);
    }
    std::vector<Pole> out;
    for (int a = 0; a < 2; ++a)
        if (!parts[a].empty()) out.push_back({a, std::move(parts[a])});
    return out;
}

SvExpr derive_pole(const SvExpr& e, Var var, int a) {
    for (auto& p : derive(e, var))
        if (p.a == a) return p.num;
    return {};
}

namespace {

std::map<std::pair<Word, int>, std::map<Word, MzvPoly>> g_intonw;

// Antiholomorphic primitive of P_w/(zb - a) in the P basis.
const std::map<Word, MzvPoly>& intonw(Word w, int a, int cap) {
    auto key = std::make_pair(w, a);
    auto it = g_intonw.find(key);
    if (it != g_intonw.end()) return it->second;
    const NcSeries& y = x1_prime(cap);
    std::unordered_map<Word, MzvPoly, WordHash> dev;
    for (const auto& [k, c] : y.terms())
        if (k.w.size() >= 2) dev[k.w].add(k.m, c);
    std::map<Word, MzvPoly> r;
    Word aw = w.push_front(a);
    r[aw] += mzv_constant(1);
    for (int i = 1; i <= aw.size(); ++i) {
        auto d = dev.find(aw.prefix(i));
        if (d == dev.end()) continue;
        for (const auto& [x, c] : intonw(aw.suffix_from(i), 1, cap)) r[x] -= d->second * c;
    }
    for (auto i = r.begin(); i != r.end();) i = i->second.empty() ? r.erase(i) : std::next(i);
    return g_intonw.emplace(key, std::move(r)).first->second;
}

}  // namespace

std::map<Word, MzvPoly> to_P_basis(const SvExpr& e) {
    std::map<Word, MzvPoly> coeffs;
    for (const auto& [k, c] : e)
        if (k.u.empty()) coeffs[k.v].add(k.m, c);
    for (auto i = coeffs.begin(); i != coeffs.end();) i = i->second.empty() ? coeffs.erase(i) : std::next(i);
    if (from_P_basis(coeffs) != e) throw MathError("expression is not in the single-valued span");
    return coeffs;
}

SvExpr from_P_basis(const std::map<Word, MzvPoly>& coeffs) {
    SvExpr r;
    for (const auto& [w, c] : coeffs) r.add(sv_scale(P(w), c));
    return r;
}

std::string to_string_P(const std::map<Word, MzvPoly>& coeffs) {
    if (coeffs.empty()) return "0";
    std::string out;
    for (const auto& [w, c] : coeffs) {
        std::string cs = to_string(c);
        bool simple = c.size() == 1;
        std::string atom = "P[" + w.str() + "]";
        std::string term;
        if (cs == "1") term = atom;
        else if (cs == "-1") term = "-" + atom;
        else if (simple) term = cs + "*" + atom;
        else term = "(" + cs + ")*" + atom;
        if (!out.empty() && term[0] != '-') out += "+";
        out += term;
    }
    return out;
}

SvExpr integrate(const SvExpr& e, Var var, int a, IntAlgo algo) {
    if (algo == IntAlgo::commutator) {
        if (var == Var::hol) return hol_integrate(e, a);
        return sv_swap(hol_integrate(sv_swap(e), a));
    }
    auto coeffs = to_P_basis(e);
    std::lock_guard lk(g_int_mu);
    int cap = 0;
    for (const auto& [w, c] : coeffs) cap = std::max(cap, w.size() + 1);
    cap = std::max(cap, 4);
    std::map<Word, MzvPoly> out;
    for (const auto& [w, c] : coeffs) {
        if (var == Var::hol) out[w.push_back(a)] += c;
        else
            for (const auto& [x, d] : intonw(w, a, cap)) out[x] += c * d;
    }
    for (auto i = out.begin(); i != out.end();) i = i->second.empty() ? out.erase(i) : std::next(i);
    return from_P_basis(out);
}

SvExpr integrate_based(const SvExpr& e, Var var, int a, int basepoint, IntAlgo algo) {
    SvExpr r = integrate(e, var, a, algo);
    if (basepoint == 0) return r;
    return r - sv_constant(reg_limit(r, basepoint));
}

MzvPoly commutator_defect(const SvExpr& p, int a, int b) {
    SvExpr ib = integrate(p, Var::antihol, b), ia = integrate(p, Var::hol, a);
    SvExpr lhs = integrate(ib, Var::hol, a) - integrate(ia, Var::antihol, b);
    MzvPoly k = reg_limit(ib, a) - reg_limit(ia, b);
    SvExpr rhs = sv_scale(P(Word::letter_word(1)), k);
    if (lhs != rhs) throw MathError("commutation relation violated");
    return k;
}

// ---------------------------------------------------------------- S3 action

namespace {

using WordImage = std::vector<std::pair<Word, MzvPoly>>;

std::unordered_map<Word, WordImage, WordHash> g_tau, g_sigma;

const WordImage& tau_image(Word v) {
    auto it = g_tau.find(v);
    if (it != g_tau.end()) return it->second;
    WordImage out;
    for (const auto& [v1, v2] : deconcatenations(v)) {
        MzvPoly z = reducer().zeta(v1);
        if (!z.empty()) out.emplace_back(v2.swapped(), z);
    }
    return g_tau.emplace(v, std::move(out)).first->second;
}

const WordImage& sigma_image(Word w) {
    auto it = g_sigma.find(w);
    if (it != g_sigma.end()) return it->second;
    WordImage out;
    std::vector<int> zeros;
    for (int i = 0; i < w.size(); ++i)
        if (w[i] == 0) zeros.push_back(i);
    int n = w.size();
    for (uint64_t mask = 0; mask < (uint64_t(1) << zeros.size()); ++mask) {
        uint64_t bits = w.bits();
        for (size_t j = 0; j < zeros.size(); ++j)
            if (mask >> j & 1) bits |= uint64_t(1) << (n - 1 - zeros[j]);
        Word v((uint64_t(1) << n) | bits);
        out.emplace_back(v, mzv_constant(v.count(1) % 2 ? -1 : 1));
    }
    return g_sigma.emplace(w, std::move(out)).first->second;
}

template <class F>
SvExpr apply_pairwise(const SvExpr& e, F&& image) {
    std::lock_guard lk(g_int_mu);
    SvExpr r;
    for (const auto& [k, c] : e) {
        const WordImage& iu = image(k.u);
        const WordImage& iv = image(k.v);
        for (const auto& [u, cu] : iu)
            for (const auto& [v, cv] : iv)
                for (const auto& [mu, qu] : cu)
                    for (const auto& [mv, qv] : cv) r.add(SvKey{u, v, k.m.times(mu).times(mv)}, c * qu * qv);
    }
    return r;
}

}  // namespace

SvExpr map_one_minus(const SvExpr& e) { return apply_pairwise(e, tau_image); }
SvExpr map_z_over_z_minus_1(const SvExpr& e) { return apply_pairwise(e, sigma_image); }

Moebius parse_moebius(const std::string& s) {
    if (s == "z") return Moebius::id;
    if (s == "1-z") return Moebius::one_minus_z;
    if (s == "(z-1)/z") return Moebius::z_minus_1_over_z;
    if (s == "z/(z-1)") return Moebius::z_over_z_minus_1;
    if (s == "1/(1-z)") return Moebius::one_over_one_minus_z;
    if (s == "1/z") return Moebius::one_over_z;
    throw MathError("unknown Moebius map: " + s);
}

std::string moebius_name(Moebius f) {
    switch (f) {
        case Moebius::id: return "z";
        case Moebius::one_minus_z: return "1-z";
        case Moebius::z_minus_1_over_z: return "(z-1)/z";
        case Moebius::z_over_z_minus_1: return "z/(z-1)";
        case Moebius::one_over_one_minus_z: return "1/(1-z)";
        case Moebius::one_over_z: return "1/z";
    }
    return "?";
}

SvExpr s3_transform(const SvExpr& e, Moebius f) {
    switch (f) {
        case Moebius::id: return e;
        case Moebius::one_minus_z: return map_one_minus(e);
        case Moebius::z_over_z_minus_1: return map_z_over_z_minus_1(e);
        case Moebius::z_minus_1_over_z: return map_one_minus(map_z_over_z_minus_1(e));
        case Moebius::one_over_one_minus_z: return map_z_over_z_minus_1(map_one_minus(e));
        case Moebius::one_over_z: return map_one_minus(map_z_over_z_minus_1(map_one_minus(e)));
    }
    return e;
}

MzvPoly reg_limit(const SvExpr& e, int point) {
    if (point == 2) return reg_limit(s3_transform(e, Moebius::one_over_z), 0);
    MzvPoly r;
    for (const auto& [k, c] : e) {
        if (point == 0) {
            if (k.u.empty() && k.v.empty()) r.add(k.m, c);
            continue;
        }
        MzvPoly val = L_value(k.u, 1) * L_value(k.v, 1);
        for (const auto& [m, q] : val) r.add(m.times(k.m), q * c);
    }
    return r;
}

}  // namespace gfp
