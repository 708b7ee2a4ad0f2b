#include "gfp/numeric.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <mutex>
#include <set>

namespace gfp::num {

// ---------------------------------------------------------------- complex arithmetic

Complex& Complex::operator*=(const Complex& o) {
    Real r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = std::move(r);
    return *this;
}

Complex operator/(const Complex& a, const Complex& b) {
    Real d = b.re * b.re + b.im * b.im;
    if (d == 0) throw MathError("division by zero");
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}

Complex conj(const Complex& z) { return {z.re, -z.im}; }
Real abs(const Complex& z) { return boost::multiprecision::hypot(z.re, z.im); }
Complex log(const Complex& z) {
    if (z.re == 0 && z.im == 0) throw MathError("log of zero");
    return {boost::multiprecision::log(abs(z)), boost::multiprecision::atan2(z.im, z.re)};
}
Complex pow(const Complex& z, int n) {
    if (n < 0) return Complex(1) / pow(z, -n);
    Complex r(1), b = z;
    for (; n; n >>= 1, b *= b)
        if (n & 1) r *= b;
    return r;
}

namespace {

Real from_q(const Q& q) {
    Real r;
    mpfr_set_q(r.backend().data(), q.get_mpq_t(), MPFR_RNDN);
    return r;
}

Complex scale(const Complex& z, const Real& s) { return {z.re * s, z.im * s}; }

// guard digits on top of the requested precision
constexpr int kGuard = 15;

int terms_for(double ratio, int digits, int len) {
    if (ratio <= 0) return 2;
    return int(std::ceil((digits + kGuard) * std::log(10.0) / -std::log(ratio))) + 2 * len + 10;
}

}  // namespace

Context::Context(int d) : digits(d) {
    if (d < 10) throw MathError("precision must be at least 10 digits");
    Real::default_precision(d + kGuard);
}

Real Context::tolerance() const { return boost::multiprecision::pow(Real(10), -digits); }

Complex parse_complex(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw MathError("empty complex literal");
    auto real_of = [&](const std::string& t) -> Real {
        if (t.empty() || t == "+") return Real(1);
        if (t == "-") return Real(-1);
        try {
            size_t pos = 0;
            (void)std::stod(t, &pos);
            if (pos != t.size()) throw std::invalid_argument(t);
        } catch (const std::exception&) {
            throw MathError("bad complex literal '" + text + "'");
        }
        return Real(t);
    };
    if (s.back() != 'i') return {real_of(s), Real(0)};
    s.pop_back();
    size_t split = std::string::npos;
    for (size_t i = s.size(); i-- > 1;)
        if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
            split = i;
            break;
        }
    if (split == std::string::npos) return {Real(0), real_of(s)};
    return {real_of(s.substr(0, split)), real_of(s.substr(split))};
}

std::string to_decimal(const Real& x, int digits) { return x.str(digits, std::ios_base::fmtflags(0)); }

std::string to_string(const Complex& z, int digits) {
    std::string im = to_decimal(boost::multiprecision::abs(z.im), digits);
    return to_decimal(z.re, digits) + (z.im < 0 ? "-" : "+") + im + "i";
}

// ---------------------------------------------------------------- continuation engine

namespace {

std::vector<Word> prefix_closure(const std::vector<Word>& ws) {
    std::set<Word> s{Word()};
    for (Word w : ws)
        for (int i = 1; i <= w.size(); ++i) s.insert(w.prefix(i));
    return {s.begin(), s.end()};
}

// Coefficients h[k][n] of L_w(t) = sum_k ln^k t sum_n h[k][n] t^n, cached per precision.
using LogSeries = std::vector<std::vector<Real>>;

struct SeriesCache {
    std::mutex mu;
    int digits = -1, N = 0;
    std::unordered_map<uint64_t, LogSeries> table;
};

SeriesCache& series_cache() {
    static SeriesCache c;
    return c;
}

const LogSeries& log_series(Word w, int digits) {
    auto& c = series_cache();
    if (c.digits != digits) {
        c.table.clear();
        c.digits = digits;
        c.N = terms_for(0.5, digits, Word::kMaxLen / 2);
    }
    auto it = c.table.find(w.code);
    if (it != c.table.end()) return it->second;
    int N = c.N;
    LogSeries g;
    if (w.empty()) {
        g.assign(1, std::vector<Real>(N + 1, Real(0)));
        g[0][0] = 1;
    } else {
        const LogSeries& f = log_series(w.drop_back(), digits);
        int K = int(f.size());
        g.assign(K + 1, std::vector<Real>(N + 1, Real(0)));
        // int s^(n-1) ln^k s ds = s^n sum_j (-1)^j k!/(k-j)! ln^(k-j) s / n^(j+1)
        auto add_power = [&](int k, int n, const Real& a) {
            Real fall = 1, np = n;
            for (int j = 0; j <= k; ++j) {
                Real term = a * fall / np;
                if (j % 2) g[k - j][n] -= term;
                else g[k - j][n] += term;
                fall *= (k - j);
                np *= n;
            }
        };
        if (w.back() == 0) {
            for (int k = 0; k < K; ++k) {
                if (f[k][0] != 0) g[k + 1][0] += f[k][0] / (k + 1);
                for (int n = 1; n <= N; ++n)
                    if (f[k][n] != 0) add_power(k, n, f[k][n]);
            }
        } else {
            for (int k = 0; k < K; ++k) {
                Real b = 0;
                for (int n = 0; n < N; ++n) {
                    b -= f[k][n];
                    if (b != 0) add_power(k, n + 1, b);
                }
            }
        }
        while (g.size() > 1 && std::all_of(g.back().begin(), g.back().end(), [](const Real& x) { return x == 0; })) g.pop_back();
    }
    return c.table.emplace(w.code, std::move(g)).first->second;
}

struct Table {
    Complex at;
    std::vector<Word> words;  // prefix-closed, shorter first
    std::map<Word, Complex> val;
    Real err = 0;
};

Table start_at(const std::vector<Word>& words, const Complex& p, int digits) {
    if (abs(p) > Real(0.5) * (1 + Real(1e-12))) throw MathError("series start outside |z| <= 1/2");
    Table t;
    t.at = p;
    t.words = words;
    Complex lp = log(p);
    for (Word w : words) {
        const LogSeries& h = log_series(w, digits);
        Complex sum(0), lk(1);
        for (const auto& row : h) {
            Complex s(0);
            for (int n = int(row.size()) - 1; n >= 0; --n) {
                s *= p;
                s.re += row[n];
            }
            sum += lk * s;
            lk *= lp;
        }
        t.val[w] = sum;
    }
    return t;
}

Real dist_sing(const Complex& p) {
    Real d0 = abs(p), d1 = abs(p - Complex(1));
    return d0 < d1 ? d0 : d1;
}

// Taylor step of all words from t.at to target; |target - at| <= dist/2 expected.
void hop(Table& t, const Complex& target, int digits) {
    Complex delta = target - t.at;
    Real d = dist_sing(t.at);
    double ratio = static_cast<double>(abs(delta) / d);
    if (ratio >= 0.9) throw MathError("continuation step too large");
    int maxlen = t.words.empty() ? 0 : t.words.back().size();
    int N = terms_for(ratio, digits, maxlen);
    Complex inv[2] = {Complex(1) / t.at, Complex(1) / (t.at - Complex(1))};
    std::map<Word, std::vector<Complex>> c;
    for (Word w : t.words) {
        std::vector<Complex> cw(N + 1);
        cw[0] = t.val.at(w);
        if (!w.empty()) {
            const auto& cu = c.at(w.drop_back());
            const Complex& iq = inv[w.back()];
            for (int m = 0; m < N; ++m) {
                Complex x = cu[m] - scale(cw[m], Real(m));
                cw[m + 1] = scale(x * iq, Real(1) / (m + 1));
            }
        }
        Complex s(0);
        for (int m = N; m >= 0; --m) s = s * delta + cw[m];
        t.val[w] = s;
        c.emplace(w, std::move(cw));
    }
    t.at = target;
}

void walk_to(Table& t, const Complex& target, int digits) {
    for (int guard = 0; guard < 100000; ++guard) {
        Complex rem = target - t.at;
        Real len = abs(rem);
        if (len == 0) return;
        Real d = dist_sing(t.at);
        if (d < Real(1e-30)) throw MathError("path passes through a singular point");
        Real step = d / 2;
        if (len <= step) {
            hop(t, target, digits);
            return;
        }
        hop(t, t.at + scale(rem, step / len), digits);
    }
    throw MathError("continuation did not reach the target");
}

// Values along a path from 0 to z; sv selects a detour for real z > 1.
Table table_at(const std::vector<Word>& ws, const Complex& z, int digits, bool sv) {
    auto words = prefix_closure(ws);
    if (z.re == 0 && z.im == 0) throw MathError("singular point z = 0");
    if (z.im == 0 && z.re == 1) throw MathError("singular point z = 1");
    Real r = abs(z);
    if (r <= Real(0.5)) return start_at(words, z, digits);
    if (z.im == 0 && (z.re < 0 || z.re > 1)) {
        if (!sv) throw MathError("point on the branch cut");
        Complex p0(Real(0.25), Real(0.25));
        Table t = start_at(words, p0, digits);
        if (z.re > 1) walk_to(t, Complex(Real(1), Real(0.5)), digits);
        walk_to(t, z, digits);
        return t;
    }
    Table t = start_at(words, scale(z, Real(0.5) / r), digits);
    walk_to(t, z, digits);
    return t;
}

std::vector<Word> sv_words(const SvExpr& e) {
    std::set<Word> s;
    for (const auto& [k, c] : e) s.insert(k.u), s.insert(k.v);
    return {s.begin(), s.end()};
}

struct GenCache {
    std::mutex mu;
    int digits = -1;
    std::vector<Real> val;
};

Real mono_value(Mono m, const Context& ctx) {
    static GenCache gc;
    std::lock_guard lk(gc.mu);
    if (gc.digits != ctx.digits) {
        gc.val.clear();
        gc.digits = ctx.digits;
    }
    Real r = 1;
    const auto& gens = reducer().generators();
    for (int g = 0; g < int(gens.size()); ++g) {
        int e = m.exp(g);
        if (!e) continue;
        while (int(gc.val.size()) <= g) gc.val.push_back(zeta_numeric(gens[gc.val.size()].comp, ctx));
        r *= boost::multiprecision::pow(gc.val[g], e);
    }
    return r;
}

Complex sv_value(const SvExpr& e, const std::map<Word, Complex>& L, const Context& ctx) {
    Complex s(0);
    std::map<uint64_t, Real> mono;
    for (const auto& [k, c] : e) {
        auto it = mono.find(k.m.e);
        if (it == mono.end()) it = mono.emplace(k.m.e, mono_value(k.m, ctx)).first;
        s += scale(conj(L.at(k.u)) * L.at(k.v), from_q(c) * it->second);
    }
    return s;
}

Complex pf_value(const Pf& p, const Complex& x) {
    if (p.e == 0) return Complex(1);
    return pow(p.kind == 0 ? x : x - Complex(1), p.e);
}

}  // namespace

std::map<Word, Complex> eval_L_many(const std::vector<Word>& words, const Complex& z, const Context& ctx) {
    Table t = table_at(words, z, ctx.digits, false);
    std::map<Word, Complex> out;
    for (Word w : words) out[w] = t.val.at(w);
    return out;
}

Complex eval_L(Word w, const Complex& z, const Context& ctx) { return eval_L_many({w}, z, ctx).at(w); }

Complex polylog(int k, const Complex& z, const Context& ctx) {
    double r = static_cast<double>(abs(z));
    if (r >= 1) throw MathError("polylog series needs |z| < 1");
    int N = terms_for(r, ctx.digits, k) + 20;
    Complex s(0), zn = z;
    for (int n = 1; n <= N; ++n, zn *= z) s += scale(zn, Real(1) / boost::multiprecision::pow(Real(n), k));
    return s;
}

// ---------------------------------------------------------------- MZVs

Real zeta_word_numeric(Word w, const Context& ctx) {
    if (w.empty()) return 1;
    if (!is_admissible(w)) throw MathError("numeric zeta needs an admissible word");
    // zeta_w = sum_{uv=w} (-1)^|v| L_u(1/2) L_{swap(rev v)}(1/2)
    std::vector<Word> ws;
    int n = w.size();
    for (int i = 0; i <= n; ++i) {
        ws.push_back(w.prefix(i));
        ws.push_back(w.suffix_from(i).reversed().swapped());
    }
    Complex half(Real(0.5));
    Table t = start_at(prefix_closure(ws), half, ctx.digits);
    Real s = 0;
    for (int i = 0; i <= n; ++i) {
        Real x = t.val.at(w.prefix(i)).re * t.val.at(w.suffix_from(i).reversed().swapped()).re;
        if ((n - i) % 2) s -= x;
        else s += x;
    }
    return s;
}

Real zeta_numeric(const Composition& c, const Context& ctx) {
    Real v = zeta_word_numeric(composition_to_word(c), ctx);
    return c.size() % 2 ? Real(-v) : v;
}

Real mzv_numeric(const MzvExpr& e, const Context& ctx) {
    Real s = 0;
    for (const auto& [w, c] : shuffle_regularize(e)) s += from_q(c) * zeta_word_numeric(w, ctx);
    return s;
}

Real mzv_numeric(const MzvPoly& p, const Context& ctx) {
    Real s = 0;
    for (const auto& [m, c] : p) s += from_q(c) * mono_value(m, ctx);
    return s;
}

// ---------------------------------------------------------------- functions on C

Complex eval_sv(const SvExpr& e, const Complex& z, const Context& ctx) {
    Table t = table_at(sv_words(e), z, ctx.digits, true);
    return sv_value(e, t.val, ctx);
}

Complex eval_A(const AExpr& e, const Complex& z, const Context& ctx) {
    std::set<Word> ws;
    for (const auto& [p, s] : e.terms())
        for (Word w : sv_words(s)) ws.insert(w);
    Table t = table_at({ws.begin(), ws.end()}, z, ctx.digits, true);
    Complex zb = conj(z), r(0);
    for (const auto& [p, s] : e.terms()) r += pf_value(p.h, z) * pf_value(p.a, zb) * sv_value(s, t.val, ctx);
    return r;
}

Complex eval_B(const BElement& f, const Complex& z, const Context& ctx) {
    Real thr = boost::multiprecision::pow(Real(10), -ctx.digits / 3);
    if (boost::multiprecision::abs(z.im) > thr) return eval_A(f.g, z, ctx) / Complex(Real(0), 2 * z.im);
    Real y = boost::multiprecision::pow(Real(10), -ctx.digits / 4);
    Complex up(z.re, y), dn(z.re, -y);
    Complex a = eval_A(f.g, up, ctx) / Complex(Real(0), 2 * y);
    Complex b = eval_A(f.g, dn, ctx) / Complex(Real(0), -2 * y);
    return scale(a + b, Real(0.5));
}

Real monodromy_check(const SvExpr& e, int around, const Context& ctx, int steps, double radius) {
    if (around != 0 && around != 1) throw MathError("monodromy point must be 0 or 1");
    const Real pi = boost::math::constants::pi<Real>();
    Complex centre{Real(around), Real(0)};
    auto point = [&](int k) {
        Real th = pi / 2 + 2 * pi * k / steps;
        return centre + Complex(Real(radius) * boost::multiprecision::cos(th), Real(radius) * boost::multiprecision::sin(th));
    };
    Table t = table_at(sv_words(e), point(0), ctx.digits, true);
    Complex start = sv_value(e, t.val, ctx);
    for (int k = 1; k <= steps; ++k) hop(t, k == steps ? point(0) : point(k), ctx.digits);
    return abs(sv_value(e, t.val, ctx) - start);
}

Real f2_lambda_quadrature(const Real& lambda, const Complex& z, const Context& ctx) {
    // Boost 1.74 quadrature does not accept mpfr types; integrate in a fixed 50-digit binary float.
    using F = boost::multiprecision::cpp_bin_float_50;
    if (lambda <= 1) throw MathError("quadrature needs lambda > 1");
    F lam(lambda.str()), x(z.re.str()), y(z.im.str());
    F zz = x * x + y * y;
    if (zz >= 1) throw MathError("quadrature needs |z| < 1");
    if (y == 0 && x >= 0) throw MathError("quadrature needs z off [0,1]");
    F a = pow(zz, 1 - lam);
    auto f = [&](const F& t) -> F {
        F dr = 1 - t * x, di = t * y;
        return (a - pow(t, 2 * lam - 2)) / pow(dr * dr + di * di, lam);
    };
    boost::math::quadrature::tanh_sinh<F> q;
    int digits = std::min(ctx.digits, 45);
    F v = q.integrate(f, F(0), F(1), pow(F(10), -digits / 2));
    v /= boost::math::tgamma(lam) * (lam - 1);
    return Real(v.str(50));
}

}  // namespace gfp::num
