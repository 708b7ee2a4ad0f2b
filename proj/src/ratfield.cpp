#include "gfp/ratfield.hpp"

#include <mutex>

namespace gfp {

namespace {

Q binom(int n, int k) {
    if (k < 0 || n < 0 || k > n) return 0;
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return Q(r);
}

Q sgn(int e) { return (e % 2) ? Q(-1) : Q(1); }

Pf norm(int kind, int e) { return e == 0 ? Pf{0, 0} : Pf{kind, e}; }

// (x-1)^n for any n, in normal form.
std::vector<std::pair<Pf, Q>> shifted_power(int n) {
    if (n < 0) return {{Pf{1, n}, 1}};
    std::vector<std::pair<Pf, Q>> out;
    for (int k = 0; k <= n; ++k) out.emplace_back(Pf{0, k}, binom(n, k) * sgn(n - k));
    return out;
}

void merge(std::vector<std::pair<Pf, Q>>& v) {
    std::map<Pf, Q> m;
    for (const auto& [p, c] : v) m[p] += c;
    v.clear();
    for (const auto& [p, c] : m)
        if (c != 0) v.emplace_back(p, c);
}

}  // namespace

std::vector<std::pair<Pf, Q>> pf_mul(Pf a, Pf b) {
    if (a.e == 0) return {{b, 1}};
    if (b.e == 0) return {{a, 1}};
    if (a.kind == b.kind) {
        if (a.kind == 0) return {{norm(0, a.e + b.e), 1}};
        return shifted_power(a.e + b.e);
    }
    if (a.kind == 1) std::swap(a, b);
    int A = a.e, B = b.e;  // x^A (x-1)^B with B < 0
    std::vector<std::pair<Pf, Q>> out;
    if (A > 0) {
        for (int k = 0; k <= A; ++k)
            for (const auto& [p, c] : shifted_power(k + B)) out.emplace_back(p, c * binom(A, k));
    } else {
        int a0 = -A, b0 = -B;
        for (int k = 0; k < a0; ++k) out.emplace_back(Pf{0, k - a0}, sgn(b0) * binom(b0 + k - 1, k));
        for (int k = 0; k < b0; ++k) out.emplace_back(norm(1, k - b0), sgn(k) * binom(a0 + k - 1, k));
    }
    merge(out);
    return out;
}

// ---------------------------------------------------------------- AExpr

AExpr::AExpr(const SvExpr& s) {
    if (!s.empty()) t_.emplace(Pref{}, s);
}

AExpr AExpr::monomial(int i, int j, int k, int l) {
    auto side = [](int x, int y) {
        std::vector<std::pair<Pf, Q>> out;
        for (const auto& [p, c] : shifted_power(y))
            for (const auto& [q, d] : pf_mul(norm(0, x), p)) out.emplace_back(q, c * d);
        merge(out);
        return out;
    };
    AExpr r;
    SvExpr one = sv_constant(mzv_constant(1));
    for (const auto& [h, ch] : side(i, k))
        for (const auto& [a, ca] : side(j, l)) r.add(Pref{h, a}, one, ch * ca);
    return r;
}

void AExpr::add(const Pref& p, const SvExpr& s, const Q& c) {
    if (c == 0 || s.empty()) return;
    auto& slot = t_[p];
    slot.add(s, c);
    if (slot.empty()) t_.erase(p);
}

void AExpr::add(const AExpr& o, const Q& c) {
    for (const auto& [p, s] : o.t_) add(p, s, c);
}

SvExpr AExpr::part(const Pref& p) const {
    auto it = t_.find(p);
    return it == t_.end() ? SvExpr() : it->second;
}

size_t AExpr::size() const {
    size_t n = 0;
    for (const auto& [p, s] : t_) n += s.size();
    return n;
}

AExpr AExpr::operator-() const { return *this * Q(-1); }

AExpr operator*(const AExpr& a, const AExpr& b) {
    AExpr r;
    for (const auto& [pa, sa] : a.t_)
        for (const auto& [pb, sb] : b.t_) {
            SvExpr s = sa * sb;
            for (const auto& [h, ch] : pf_mul(pa.h, pb.h))
                for (const auto& [x, cx] : pf_mul(pa.a, pb.a)) r.add(Pref{h, x}, s, ch * cx);
        }
    return r;
}

AExpr operator*(AExpr a, const Q& c) {
    if (c == 0) return {};
    for (auto& [p, s] : a.t_) s *= c;
    return a;
}

AExpr AExpr::scaled(const MzvPoly& c) const {
    AExpr r;
    for (const auto& [p, s] : t_) r.add(p, sv_scale(s, c));
    return r;
}

AExpr swap(const AExpr& e) {
    AExpr r;
    for (const auto& [p, s] : e.terms()) r.add(Pref{p.a, p.h}, sv_swap(s));
    return r;
}

namespace {

AExpr derive_hol(const AExpr& e) {
    AExpr r;
    for (const auto& [p, s] : e.terms()) {
        if (p.h.e != 0) {
            Pf d = p.h.kind == 0 ? norm(0, p.h.e - 1) : Pf{1, p.h.e - 1};
            r.add(Pref{d, p.a}, s, p.h.e);
        }
        for (const auto& pole : derive(s, Var::hol))
            for (const auto& [h, c] : pf_mul(p.h, Pf{pole.a, -1})) r.add(Pref{h, p.a}, pole.num, c);
    }
    return r;
}

AExpr integrate_antihol(const AExpr& e) {
    AExpr r;
    std::map<Pref, SvExpr> pending(e.terms().begin(), e.terms().end());
    while (!pending.empty()) {
        std::map<Pref, SvExpr> next;
        for (const auto& [p, s] : pending) {
            if (s.empty()) continue;
            if (p.a.e == -1) {
                r.add(Pref{p.h, Pf{}}, integrate(s, Var::antihol, p.a.kind));
                continue;
            }
            // by parts: q S - int q dS
            Pf q = norm(p.a.kind, p.a.e + 1);
            Q c = Q(1) / (p.a.e + 1);
            r.add(Pref{p.h, q}, s, c);
            for (const auto& pole : derive(s, Var::antihol))
                for (const auto& [x, cx] : pf_mul(q, Pf{pole.a, -1})) next[Pref{p.h, x}].add(pole.num, -c * cx);
        }
        pending.swap(next);
    }
    return r;
}

}  // namespace

AExpr derive_A(const AExpr& e, Var var) {
    if (var == Var::hol) return derive_hol(e);
    return swap(derive_hol(swap(e)));
}

// ---------------------------------------------------------------- expansions

namespace {

using Series = std::map<std::pair<int, int>, Q>;  // (log power, power) -> coefficient

std::recursive_mutex g_mu;

// L_w(y) at y = 0 up to power M.
const Series& lseries(Word w, int M) {
    static std::unordered_map<Word, std::pair<int, Series>, WordHash> memo;
    auto it = memo.find(w);
    if (it != memo.end() && it->second.first >= M) return it->second.second;
    Series s;
    if (w.empty()) s[{0, 0}] = 1;
    else {
        const Series& prev = lseries(w.drop_back(), M);
        auto integ = [&](int k, int p, const Q& c) {
            // int (ln t)^k t^p dt
            if (p == -1) {
                s[{k + 1, 0}] += c / (k + 1);
                return;
            }
            int n = p + 1;
            if (n > M) return;
            Q f = c;
            mpz_class np = n;
            for (int j = 0; j <= k; ++j) {
                s[{k - j, n}] += f / np;
                f *= -(k - j);
                np *= n;
            }
        };
        if (w.back() == 0)
            for (const auto& [km, c] : prev) integ(km.first, km.second - 1, c);
        else
            for (const auto& [km, c] : prev)
                for (int j = 0; km.second + j + 1 <= M; ++j) integ(km.first, km.second + j, -c);
        for (auto i = s.begin(); i != s.end();) i = i->second == 0 ? s.erase(i) : std::next(i);
    }
    auto& slot = memo[w];
    slot = {M, std::move(s)};
    return slot.second;
}

int min_power(Word x) { return x.count(1); }

// L_w(z) = sum c * K(cw) * L_x(y), y the local coordinate; only x with #1 <= maxord.
struct ImageTerm {
    Word cw, x;
    Q c;
};

const std::vector<ImageTerm>& word_image(Word w, int point, int maxord) {
    static std::map<std::tuple<uint64_t, int, int>, std::vector<ImageTerm>> memo;
    auto key = std::make_tuple(w.code, point, maxord);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    std::vector<ImageTerm> out;
    if (point == 0) {
        if (min_power(w) <= maxord) out.push_back({Word(), w, 1});
    } else if (point == 1) {
        for (const auto& [u, v] : deconcatenations(w)) {
            Word x = v.swapped();
            if (min_power(x) <= maxord) out.push_back({u, x, 1});
        }
    } else {
        for (const auto& [u, v] : deconcatenations(w)) {
            // 0 -> -0, 1 -> 1 - 0
            std::vector<std::pair<Word, int>> cur{{Word(), 1}};
            for (int i = 0; i < v.size(); ++i) {
                std::vector<std::pair<Word, int>> nx;
                for (const auto& [x, s] : cur) {
                    nx.emplace_back(x.push_back(0), -s);
                    if (v[i] == 1 && x.count(1) < maxord) nx.emplace_back(x.push_back(1), s);
                }
                cur.swap(nx);
            }
            for (const auto& [x, s] : cur) out.push_back({u, x, s});
        }
    }
    return memo.emplace(key, std::move(out)).first->second;
}

const MzvPoly& const_value(Word cw, int point) {
    static std::map<std::pair<uint64_t, int>, MzvPoly> memo;
    auto key = std::make_pair(cw.code, point);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    MzvPoly v = point == 0 ? L_value(cw, 0) : point == 1 ? L_value(cw, 1) : L_value_inf(cw);
    return memo.emplace(key, std::move(v)).first->second;
}

// Prefactor as a series in the local coordinate, powers <= M.
std::vector<std::pair<int, Q>> pf_series(Pf p, int point, int M) {
    std::vector<std::pair<int, Q>> out;
    auto geom = [&](int shift, int e, Q c) {
        // c y^shift (1-y)^e
        if (e >= 0) {
            for (int i = 0; i <= e && shift + i <= M; ++i) out.emplace_back(shift + i, c * binom(e, i) * sgn(i));
        } else {
            for (int i = 0; shift + i <= M; ++i) out.emplace_back(shift + i, c * binom(-e + i - 1, i));
        }
    };
    if (point == 0) {
        if (p.kind == 0) {
            if (p.e <= M) out.emplace_back(p.e, 1);
        } else geom(0, p.e, sgn(p.e));
    } else if (point == 1) {
        if (p.kind == 0) geom(0, p.e, 1);
        else if (p.e <= M) out.emplace_back(p.e, sgn(p.e));
    } else {
        if (p.kind == 0) {
            if (-p.e <= M) out.emplace_back(-p.e, 1);
        } else geom(-p.e, p.e, 1);
    }
    return out;
}

int pf_min_power(Pf p, int point) {
    if (point == 0) return p.kind == 0 ? p.e : 0;
    if (point == 1) return p.kind == 0 ? 0 : p.e;
    return -p.e;
}

// Expansion of one side: prefactor(y) * L_w(y) as terms (cw, log power, power, c).
struct SideTerm {
    Word cw;
    int k, m;
    Q c;
};

std::vector<SideTerm> side_expansion(Pf p, Word w, int point, int M) {
    std::vector<SideTerm> out;
    int pmin = pf_min_power(p, point);
    if (pmin > M) return out;
    auto ps = pf_series(p, point, M);
    for (const auto& t : word_image(w, point, M - pmin)) {
        int xo = min_power(t.x);
        if (pmin + xo > M) continue;
        const Series& s = lseries(t.x, M - pmin);
        for (const auto& [e, pc] : ps)
            for (const auto& [km, c] : s) {
                if (e + km.second > M) continue;
                out.push_back({t.cw, km.first, e + km.second, t.c * pc * c});
            }
    }
    return out;
}

struct AccKey {
    int k, m, n;
    Word ch, ca;
    Mono mono;
    bool operator<(const AccKey& o) const {
        return std::tie(k, m, n, ch.code, ca.code, mono.e) < std::tie(o.k, o.m, o.n, o.ch.code, o.ca.code, o.mono.e);
    }
};

}  // namespace

MzvPoly ExpansionBlock::coeff(int k, int m, int n) const {
    auto it = c.find({k, m, n});
    return it == c.end() ? MzvPoly() : it->second;
}

ExpansionBlock expand_local(const AExpr& e, int point, int mmax, int nmax, bool check_sv) {
    std::lock_guard lk(g_mu);
    std::map<AccKey, Q> acc;
    std::map<std::tuple<int, int, int, int>, std::map<std::tuple<uint64_t, uint64_t, uint64_t>, Q>> full;
    for (const auto& [p, s] : e.terms()) {
        std::unordered_map<Word, std::vector<SideTerm>, WordHash> hol, anti;
        for (const auto& [key, c] : s) {
            auto ih = hol.find(key.v);
            if (ih == hol.end()) ih = hol.emplace(key.v, side_expansion(p.h, key.v, point, mmax)).first;
            if (ih->second.empty()) continue;
            auto ia = anti.find(key.u);
            if (ia == anti.end()) ia = anti.emplace(key.u, side_expansion(p.a, key.u, point, nmax)).first;
            for (const auto& th : ih->second)
                for (const auto& ta : ia->second) {
                    Q x = c * th.c * ta.c;
                    if (ta.k == 0) acc[AccKey{th.k, th.m, ta.m, th.cw, ta.cw, key.m}] += x;
                    if (check_sv) full[{th.k, ta.k, th.m, ta.m}][{th.cw.code, ta.cw.code, key.m.e}] += x;
                }
        }
    }
    if (check_sv) {
        auto value = [&](const std::map<std::tuple<uint64_t, uint64_t, uint64_t>, Q>& terms) {
            MzvPoly v;
            for (const auto& [t, c] : terms) {
                auto [ch, ca, mono] = t;
                MzvPoly k = const_value(Word(ch), point) * const_value(Word(ca), point);
                for (const auto& [m, q] : k) v.add(m.times(Mono{mono}), q * c);
            }
            return v;
        };
        for (const auto& [kk, terms] : full) {
            auto [kh, ka, m, n] = kk;
            if (ka == 0) continue;
            auto base = full.find({kh + ka, 0, m, n});
            MzvPoly want = base == full.end() ? MzvPoly() : value(base->second);
            want *= binom(kh + ka, ka);
            if (want != value(terms)) throw MathError("expansion is not single-valued");
        }
    }
    ExpansionBlock out;
    out.point = point;
    out.order = std::max(mmax, nmax);
    for (const auto& [k, c] : acc) {
        if (c == 0) continue;
        MzvPoly v = const_value(k.ch, point) * const_value(k.ca, point);
        MzvPoly term;
        for (const auto& [m, q] : v) term.add(m.times(k.mono), q * c);
        int kk = k.k, m = k.m, n = k.n;
        if (point == 1) term *= sgn(m + n);
        if (point == 2) {
            term *= sgn(kk);
            m = -m, n = -n;
        }
        auto& slot = out.c[{kk, m, n}];
        slot += term;
    }
    for (auto i = out.c.begin(); i != out.c.end();) i = i->second.empty() ? out.c.erase(i) : std::next(i);
    return out;
}

ExpansionBlock expand_at(const AExpr& e, int point, int order) { return expand_local(e, point, order, order); }

MzvPoly residue(const AExpr& e, int point, Var which) {
    int lm = which == Var::hol ? -1 : 0, ln = which == Var::hol ? 0 : -1;
    if (point == 2) lm = -lm, ln = -ln;
    ExpansionBlock b = expand_local(e, point, lm, ln);
    return which == Var::hol ? b.coeff(0, -1, 0) : b.coeff(0, 0, -1);
}

PlaneIntegral plane_from_primitive(const AExpr& F) {
    ExpansionBlock b0 = expand_local(F, 0, -1, 0), b1 = expand_local(F, 1, -1, 0), b8 = expand_local(F, 2, 1, 0);
    PlaneIntegral r;
    r.value = b8.coeff(0, -1, 0) - b0.coeff(0, -1, 0) - b1.coeff(0, -1, 0);
    r.convergent = true;
    for (const auto* b : {&b0, &b1})
        for (const auto& [k, c] : b->c) {
            auto [kk, m, n] = k;
            if (n == m + 1 && (m < -1 || (m == -1 && kk != 0))) r.convergent = false;
        }
    for (const auto& [k, c] : b8.c) {
        auto [kk, m, n] = k;
        if (n == m + 1 && (m > -1 || (m == -1 && kk != 0))) r.convergent = false;
    }
    return r;
}

PlaneIntegral integrate_plane(const AExpr& e) { return plane_from_primitive(integrate_A(e, Var::antihol)); }

MzvPoly value_at_B(const BElement& f, int point) {
    AExpr h = derive_A(f.g, Var::hol);
    ExpansionBlock b = expand_local(h, point, 0, 0);
    for (const auto& [k, c] : b.c) {
        auto [kk, m, n] = k;
        if (m < 0 || n < 0 || (m == 0 && n == 0 && kk > 0)) throw MathError("divergent limit");
    }
    return b.coeff(0, 0, 0);
}

MzvPoly L_value_inf(Word w) {
    // z -> infinity is z/(z-1) -> 1
    MzvPoly r;
    std::vector<int> zeros;
    for (int i = 0; i < w.size(); ++i)
        if (w[i] == 0) zeros.push_back(i);
    int n = w.size();
    for (uint64_t mask = 0; mask < (uint64_t(1) << zeros.size()); ++mask) {
        uint64_t bits = w.bits();
        for (size_t j = 0; j < zeros.size(); ++j)
            if (mask >> j & 1) bits |= uint64_t(1) << (n - 1 - zeros[j]);
        Word v((uint64_t(1) << n) | bits);
        r.add(reducer().zeta(v), v.count(1) % 2 ? Q(-1) : Q(1));
    }
    return r;
}

AExpr integrate_A(const AExpr& e, Var var, int basepoint) {
    if (var == Var::hol) return swap(integrate_A(swap(e), Var::antihol, basepoint));
    AExpr r = integrate_antihol(e);
    if (basepoint < 0) return r;
    // subtract the regularized limit zb -> basepoint, a function of z
    std::lock_guard lk(g_mu);
    AExpr g;
    for (const auto& [p, s] : r.terms()) {
        std::unordered_map<Word, MzvPoly, WordHash> lim;
        for (const auto& [key, c] : s) {
            auto it = lim.find(key.u);
            if (it == lim.end()) {
                MzvPoly v;
                for (const auto& t : side_expansion(p.a, key.u, basepoint, 0))
                    if (t.k == 0 && t.m == 0) v.add(const_value(t.cw, basepoint), t.c);
                it = lim.emplace(key.u, std::move(v)).first;
            }
            if (it->second.empty()) continue;
            g.add(Pref{p.h, Pf{}}, sv_scale(sv_term(Word(), key.v, mzv_constant(1)), it->second), c);
        }
    }
    return r - g;
}

// ---------------------------------------------------------------- printing

namespace {

std::string pf_str(Pf p, bool anti) {
    if (p.e == 0) return "";
    std::string base = anti ? (p.kind == 0 ? "zb" : "(zb-1)") : (p.kind == 0 ? "z" : "(z-1)");
    return p.e == 1 ? base : base + "^" + std::to_string(p.e);
}

}  // namespace

std::string to_string(const AExpr& e) {
    if (e.empty()) return "0";
    std::string out;
    for (const auto& [p, s] : e.terms()) {
        std::string suffix;
        for (const auto& f : {pf_str(p.h, false), pf_str(p.a, true)})
            if (!f.empty()) suffix += "*" + f;
        std::string body = to_string(s);
        // split the SvExpr printout into terms and attach the prefactor to each
        size_t start = 0;
        for (size_t i = 1; i <= body.size(); ++i) {
            if (i == body.size() || ((body[i] == '+' || body[i] == '-') && body[i - 1] != '^' && body[i - 1] != '(' &&
                                     body[i - 1] != '[')) {
                std::string term = body.substr(start, i - start);
                bool neg = term[0] == '-';
                if (term[0] == '+' || term[0] == '-') term = term.substr(1);
                if (!suffix.empty() && term == "1") term = suffix.substr(1);
                else term += suffix;
                if (neg) out += "-";
                else if (!out.empty()) out += "+";
                out += term;
                start = i;
            }
        }
    }
    return out;
}

int max_weight(const AExpr& e) {
    int w = 0;
    for (const auto& [p, s] : e.terms()) w = std::max(w, sv_weight(s));
    return w;
}

bool is_antisymmetric(const BElement& f) { return swap(f.g) == -f.g; }

std::string to_string(const BElement& f) {
    std::string s = to_string(f.g);
    if (f.g.terms().size() == 1 && f.g.size() == 1) return s + "/(z-zb)";
    return "(" + s + ")/(z-zb)";
}

}  // namespace gfp
