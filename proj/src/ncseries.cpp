#include "gfp/ncseries.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <unordered_set>

namespace gfp {

NcSeries NcSeries::one(int cap) {
    NcSeries s(cap);
    s.add(Word(), Mono{}, 1);
    return s;
}

NcSeries NcSeries::letter(int a, int cap) {
    NcSeries s(cap);
    if (cap >= 1) s.add(Word::letter_word(a), Mono{}, 1);
    return s;
}

NcSeries NcSeries::from_words(const WordPoly& p, int cap) {
    NcSeries s(cap);
    for (const auto& [w, c] : p)
        if (w.size() <= cap) s.add(w, Mono{}, c);
    return s;
}

void NcSeries::add(Word w, Mono m, const Q& c) {
    if (w.size() <= cap_) t_.add(WM{w, m}, c);
}

void NcSeries::add(Word w, const MzvPoly& c) {
    for (const auto& [m, q] : c) add(w, m, q);
}

MzvPoly NcSeries::coeff(Word w) const {
    MzvPoly p;
    for (const auto& [k, c] : t_)
        if (k.w == w) p.add(k.m, c);
    return p;
}

NcSeries NcSeries::part(int n) const {
    NcSeries s(cap_);
    for (const auto& [k, c] : t_)
        if (k.w.size() == n) s.t_.add(k, c);
    return s;
}

NcSeries& NcSeries::operator+=(const NcSeries& o) {
    for (const auto& [k, c] : o.t_)
        if (k.w.size() <= cap_) t_.add(k, c);
    return *this;
}

NcSeries& NcSeries::operator-=(const NcSeries& o) {
    for (const auto& [k, c] : o.t_)
        if (k.w.size() <= cap_) t_.add(k, -c);
    return *this;
}

NcSeries NcSeries::operator-() const { return scaled(-1); }

NcSeries NcSeries::scaled(const Q& c) const {
    NcSeries s = *this;
    s.t_ *= c;
    return s;
}

NcSeries NcSeries::tilde(bool negate_letters) const {
    NcSeries s(cap_);
    for (const auto& [k, c] : t_) {
        Q v = c;
        if (negate_letters && k.w.size() % 2) v = -v;
        s.t_.add(WM{k.w.reversed(), k.m}, v);
    }
    return s;
}

std::string NcSeries::dump() const {
    std::map<Word, MzvPoly> byw;
    for (const auto& [k, c] : t_) byw[k.w].add(k.m, c);
    std::ostringstream out;
    for (const auto& [w, p] : byw) out << (w.empty() ? "ε" : w.str()) << " : " << to_string(p) << "\n";
    return out.str();
}

NcSeries product(const NcSeries& a, const NcSeries& b, int budget) {
    int cap = std::min(a.cap(), b.cap());
    if (a.cap() != b.cap()) throw MathError("cap mismatch");
    if (budget < 0 || budget > cap) budget = cap;
    std::vector<std::vector<std::pair<WM, Q>>> bylen(budget + 1);
    for (const auto& [k, c] : b.terms())
        if (k.w.size() <= budget) bylen[k.w.size()].emplace_back(k, c);
    NcSeries r(cap);
    for (const auto& [ka, ca] : a.terms()) {
        int la = ka.w.size();
        for (int lb = 0; la + lb <= budget; ++lb)
            for (const auto& [kb, cb] : bylen[lb]) r.terms().add(WM{ka.w + kb.w, ka.m.times(kb.m)}, ca * cb);
    }
    return r;
}

NcSeries inverse(const NcSeries& s) {
    Q c0 = 0;
    NcSeries rest(s.cap());
    for (const auto& [k, c] : s.terms()) {
        if (k.w.empty()) {
            if (!k.m.is_one()) throw MathError("non-invertible leading term");
            c0 = c;
        } else {
            rest.terms().add(k, c);
        }
    }
    if (c0 == 0) throw MathError("non-invertible leading term");
    NcSeries r = rest.scaled(-1 / c0);  // -R with S = c0 (1 + R)
    NcSeries sum = NcSeries::one(s.cap()), power = NcSeries::one(s.cap());
    for (int k = 1; k <= s.cap(); ++k) {
        power = product(power, r);
        if (power.terms().empty()) break;
        sum += power;
    }
    return sum.scaled(1 / c0);
}

namespace {

struct Substituter {
    std::unordered_map<Word, std::vector<std::pair<Mono, Q>>, WordHash> coeffs;
    std::unordered_set<Word, WordHash> prefixes;
    const NcSeries& img0;
    const NcSeries& img1;
    int cap;

    // sum over words w = u v of S_w v(images), truncated at budget
    NcSeries run(Word u, int budget) {
        NcSeries r(cap);
        auto it = coeffs.find(u);
        if (it != coeffs.end())
            for (const auto& [m, c] : it->second) r.add(Word(), m, c);
        if (budget <= 0) return r;
        for (int a = 0; a < 2; ++a) {
            Word ua = u.push_back(a);
            if (!prefixes.count(ua)) continue;
            const NcSeries& img = a ? img1 : img0;
            NcSeries tail = run(ua, budget - 1);
            r += product(img, tail, budget);
        }
        return r;
    }
};

}  // namespace

NcSeries substitute(const NcSeries& s, const NcSeries& img0, const NcSeries& img1) {
    for (const NcSeries* img : {&img0, &img1})
        for (const auto& [k, c] : img->terms())
            if (k.w.empty()) throw MathError("substitution image has a constant term");
    NcSeries i0 = img0, i1 = img1;
    // align caps
    NcSeries a0(s.cap()), a1(s.cap());
    a0 += i0;
    a1 += i1;
    Substituter sub{{}, {}, a0, a1, s.cap()};
    for (const auto& [k, c] : s.terms()) {
        sub.coeffs[k.w].emplace_back(k.m, c);
        for (int i = 0; i <= k.w.size(); ++i) sub.prefixes.insert(k.w.prefix(i));
    }
    if (s.terms().empty()) return NcSeries(s.cap());
    return sub.run(Word(), s.cap());
}

namespace {

std::unordered_map<Word, MzvPoly, WordHash> by_word(const NcSeries& s) {
    std::unordered_map<Word, MzvPoly, WordHash> m;
    for (const auto& [k, c] : s.terms()) m[k.w].add(k.m, c);
    return m;
}

MzvPoly pair_with(const std::unordered_map<Word, MzvPoly, WordHash>& m, const WordPoly& p) {
    MzvPoly r;
    for (const auto& [w, c] : p) {
        auto it = m.find(w);
        if (it != m.end()) r.add(it->second, c);
    }
    return r;
}

template <class Pred>
GroupLikeReport check_pairs(const NcSeries& s, Pred&& pred) {
    auto m = by_word(s);
    for (int lu = 1; lu < s.cap(); ++lu)
        for (int lv = 1; lu + lv <= s.cap(); ++lv)
            for (uint64_t bu = 0; bu < (uint64_t(1) << lu); ++bu)
                for (uint64_t bv = 0; bv < (uint64_t(1) << lv); ++bv) {
                    Word u((uint64_t(1) << lu) | bu), v((uint64_t(1) << lv) | bv);
                    if (!pred(m, u, v)) return {false, std::make_pair(u, v)};
                }
    return {};
}

}  // namespace

GroupLikeReport group_like_check(const NcSeries& s) {
    return check_pairs(s, [](const auto& m, Word u, Word v) {
        auto get = [&](Word w) {
            auto it = m.find(w);
            return it == m.end() ? MzvPoly() : it->second;
        };
        return pair_with(m, shuffle(u, v)) == get(u) * get(v);
    });
}

GroupLikeReport lie_check(const NcSeries& s) {
    return check_pairs(s, [](const auto& m, Word u, Word v) { return pair_with(m, shuffle(u, v)).empty(); });
}

NcSeries associator(int cap) {
    reducer().ensure(std::max(cap, 2));
    NcSeries z(cap);
    for (int n = 0; n <= cap; ++n)
        for (uint64_t b = 0; b < (uint64_t(1) << n); ++b) {
            Word w((uint64_t(1) << n) | b);
            z.add(w, reducer().zeta(w));
        }
    return z;
}

namespace {

NcSeries f_of(const NcSeries& Z, const NcSeries& Zinv, const NcSeries& x0, const NcSeries& x1) {
    NcSeries zs = substitute(Z, x0, x1), zi = substitute(Zinv, x0, x1);
    return product(product(zs, x1), zi) - x1;
}

std::string generator_signature() {
    std::string s;
    for (const auto& g : reducer().generators()) s += g.name();
    return s;
}

constexpr const char* kX1Tag = "gfp-x1prime v1";

bool load_x1(const std::filesystem::path& path, int cap, NcSeries& out) {
    std::ifstream in(path);
    if (!in) return false;
    std::string tag, sig;
    std::getline(in, tag);
    std::getline(in, sig);
    if (tag != kX1Tag || sig != generator_signature()) return false;
    int c;
    size_t n;
    in >> c >> n;
    if (!in || c != cap) return false;
    NcSeries s(cap);
    for (size_t i = 0; i < n; ++i) {
        uint64_t w, m;
        std::string q;
        in >> std::hex >> w >> m >> std::dec >> q;
        s.add(Word(w), Mono{m}, Q(q));
    }
    if (!in) return false;
    out = std::move(s);
    return true;
}

void save_x1(const std::filesystem::path& path, const NcSeries& s) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    auto tmp = path;
    tmp += ".tmp";
    std::ofstream out(tmp);
    if (!out) return;
    out << kX1Tag << "\n" << generator_signature() << "\n" << s.cap() << " " << s.terms().size() << "\n";
    for (const auto& [k, c] : s.terms()) out << std::hex << k.w.code << " " << k.m.e << std::dec << " " << c.get_str() << "\n";
    out.close();
    std::filesystem::rename(tmp, path, ec);
}

std::map<int, NcSeries> g_x1;
std::mutex g_x1_mu;

}  // namespace

const NcSeries& x1_prime(int cap) {
    std::lock_guard lk(g_x1_mu);
    auto it = g_x1.find(cap);
    if (it != g_x1.end()) return it->second;
    reducer().ensure(std::max(cap - 1, 2));
    std::filesystem::path path;
    if (const char* env = std::getenv("GFPERIOD_CACHE")) path = env;
    else path = ".gfperiod-cache";
    path /= "x1prime-" + std::to_string(cap) + ".txt";
    NcSeries y(cap);
    if (!load_x1(path, cap, y)) {
        NcSeries Z = associator(cap), Zinv = Z.tilde(true);
        NcSeries x0 = NcSeries::letter(0, cap), x1 = NcSeries::letter(1, cap);
        NcSeries F = f_of(Z, Zinv, x0, x1);
        y = x1;
        for (int k = 0; k <= cap; ++k) {
            NcSeries next = x1 + F + f_of(Z, Zinv, -x0, -y);
            if (next == y) break;
            y = std::move(next);
        }
        save_x1(path, y);
    }
    return g_x1.emplace(cap, std::move(y)).first->second;
}

std::vector<IdentityReport> x1_prime_identities(int cap) {
    const NcSeries& y = x1_prime(cap);
    NcSeries x0 = NcSeries::letter(0, cap), x1 = NcSeries::letter(1, cap);
    std::vector<IdentityReport> out;
    out.push_back({"x1'(-x0,-x1) = -reverse(x1')", substitute(y, -x0, -x1) == -y.tilde()});
    out.push_back({"reverse(x1')(x0,x1') = x1", substitute(y.tilde(), x0, y) == x1});
    out.push_back({"x1'(x0,reverse(x1')) = x1", substitute(y, x0, y.tilde()) == x1});
    out.push_back({"x1'(x0,-x0-x1) = -x0 - x1'", substitute(y, x0, -x0 - x1) == -x0 - y});
    NcSeries Z = associator(cap);
    auto X = [&](const NcSeries& a, const NcSeries& b, const NcSeries& c) {
        return product(product(substitute(Z, a, b), substitute(Z, b, c)), substitute(Z, c, a));
    };
    NcSeries Xs = X(x0, -x0 - x1, x1);
    NcSeries lhs = product(substitute(Xs.tilde(), x0, y), Xs);
    out.push_back({"reverse(X(x0,x1')) X(x0,x1) = 1", lhs == NcSeries::one(cap)});
    return out;
}

}  // namespace gfp
