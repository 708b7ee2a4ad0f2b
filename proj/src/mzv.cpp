#include "gfp/mzv.hpp"

#include <gmp.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include "modular.hpp"

namespace gfp {

Word composition_to_word(const Composition& c) {
    Word w;
    for (int n : c) {
        if (n < 1) throw MathError("composition parts must be positive");
        w = w.push_back(1);
        for (int i = 1; i < n; ++i) w = w.push_back(0);
    }
    return w;
}

Composition word_to_composition(Word w) {
    if (!is_admissible(w)) throw MathError("not admissible");
    Composition c;
    for (int i = 0; i < w.size(); ++i) {
        if (w[i] == 1) c.push_back(1);
        else ++c.back();
    }
    return c;
}

bool is_admissible(Word w) { return w.empty() || (w.size() >= 2 && w.front() == 1 && w.back() == 0); }

int composition_weight(const Composition& c) {
    int s = 0;
    for (int n : c) s += n;
    return s;
}

std::string composition_str(const Composition& c) {
    std::string s = "z(";
    for (size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + std::to_string(c[i]);
    return s + ")";
}

namespace {

std::mutex g_reg_mu;
std::unordered_map<Word, MzvExpr, WordHash> g_reg_memo;

int trailing_run(Word w, int a) {
    int n = 0;
    for (int i = w.size() - 1; i >= 0 && w[i] == a; --i) ++n;
    return n;
}

int leading_run(Word w, int a) {
    int n = 0;
    while (n < w.size() && w[n] == a) ++n;
    return n;
}

MzvExpr regularize_uncached(Word w) {
    if (is_admissible(w)) return MzvExpr(w, 1);
    int n = w.size();
    if (w.back() == 1) {
        int b = trailing_run(w, 1);
        if (b == n) return {};
        // 1 shuffled into the shorter word produces w with multiplicity b
        MzvExpr rest = shuffle(Word::letter_word(1), w.drop_back());
        rest.add(w, -Q(b));
        MzvExpr out;
        for (const auto& [u, c] : rest) out.add(shuffle_regularize(u), -c / b);
        return out;
    }
    int a = leading_run(w, 0);
    if (a == n) return {};
    MzvExpr rest = shuffle(Word::letter_word(0), w.drop_front());
    rest.add(w, -Q(a));
    MzvExpr out;
    for (const auto& [u, c] : rest) out.add(shuffle_regularize(u), -c / a);
    return out;
}

}  // namespace

MzvExpr shuffle_regularize(Word w) {
    if (is_admissible(w)) return MzvExpr(w, 1);
    {
        std::lock_guard lk(g_reg_mu);
        auto it = g_reg_memo.find(w);
        if (it != g_reg_memo.end()) return it->second;
    }
    MzvExpr r = regularize_uncached(w);
    std::lock_guard lk(g_reg_mu);
    g_reg_memo.emplace(w, r);
    return r;
}

MzvExpr shuffle_regularize(const MzvExpr& e) {
    MzvExpr r;
    for (const auto& [w, c] : e) r.add(shuffle_regularize(w), c);
    return r;
}

MzvExpr mzv_product(const MzvExpr& a, const MzvExpr& b) { return shuffle_regularize(shuffle(a, b)); }

std::vector<std::pair<Composition, Q>> stuffle_compositions(const Composition& a, const Composition& b) {
    std::map<Composition, Q> out;
    // recursion on the last parts; the quasi-shuffle is symmetric under reversal
    std::function<void(size_t, size_t, Composition&)> rec = [&](size_t i, size_t j, Composition& tail) {
        if (i == 0 && j == 0) {
            Composition c(tail.rbegin(), tail.rend());
            out[c] += 1;
            return;
        }
        if (i > 0) {
            tail.push_back(a[i - 1]);
            rec(i - 1, j, tail);
            tail.pop_back();
        }
        if (j > 0) {
            tail.push_back(b[j - 1]);
            rec(i, j - 1, tail);
            tail.pop_back();
        }
        if (i > 0 && j > 0) {
            tail.push_back(a[i - 1] + b[j - 1]);
            rec(i - 1, j - 1, tail);
            tail.pop_back();
        }
    };
    Composition tail;
    rec(a.size(), b.size(), tail);
    return {out.begin(), out.end()};
}

MzvExpr zeta_of_composition(const Composition& c) {
    return MzvExpr(composition_to_word(c), c.size() % 2 ? -1 : 1);
}

MzvExpr stuffle_product(const Composition& a, const Composition& b) {
    MzvExpr r;
    for (const auto& [c, k] : stuffle_compositions(a, b)) r.add(zeta_of_composition(c), k);
    return r;
}

std::pair<Word, int> duality(Word w) {
    if (!is_admissible(w)) throw MathError("not admissible");
    return {w.reversed().swapped(), w.size() % 2 ? -1 : 1};
}

// ---------------------------------------------------------------- monomials

Mono Mono::times(Mono o) const {
    uint64_t r = 0;
    for (int g = 0; g < kMaxGens; ++g) {
        int s = exp(g) + o.exp(g);
        if (s > 15) throw MathError("exponent overflow in MZV monomial");
        r |= uint64_t(s) << (4 * g);
    }
    return Mono{r};
}

int Mono::degree() const {
    int d = 0;
    for (int g = 0; g < kMaxGens; ++g) d += exp(g);
    return d;
}

int Mono::weight() const {
    const auto& gens = reducer().generators();
    int w = 0;
    for (int g = 0; g < kMaxGens; ++g)
        if (exp(g)) w += exp(g) * gens.at(g).weight;
    return w;
}

bool Mono::operator<(const Mono& o) const {
    int wa = weight(), wb = o.weight();
    if (wa != wb) return wa < wb;
    int da = degree(), db = o.degree();
    if (da != db) return da < db;
    for (int g = 0; g < kMaxGens; ++g)
        if (exp(g) != o.exp(g)) return exp(g) > o.exp(g);
    return false;
}

MzvPoly operator*(const MzvPoly& a, const MzvPoly& b) {
    MzvPoly r;
    for (const auto& [ma, ca] : a)
        for (const auto& [mb, cb] : b) r.add(ma.times(mb), ca * cb);
    return r;
}

MzvPoly mzv_constant(const Q& c) { return MzvPoly(Mono{}, c); }

std::string Generator::name() const { return composition_str(comp); }

std::string to_string(const MzvPoly& p) {
    if (p.empty()) return "0";
    const auto& gens = reducer().generators();
    std::string out;
    for (const auto& [m, c] : p.sorted()) {
        bool neg = c < 0;
        Q a = neg ? Q(-c) : c;
        if (!out.empty()) out += neg ? "-" : "+";
        else if (neg) out += "-";
        std::string mono;
        for (int g = 0; g < Mono::kMaxGens; ++g) {
            int e = m.exp(g);
            if (!e) continue;
            if (!mono.empty()) mono += "*";
            mono += gens.at(g).name();
            if (e > 1) mono += "^" + std::to_string(e);
        }
        if (mono.empty()) out += a.get_str();
        else if (a == 1) out += mono;
        else out += a.get_str() + "*" + mono;
    }
    return out;
}

int max_weight(const MzvPoly& p) {
    int w = 0;
    for (const auto& [m, c] : p) w = std::max(w, m.weight());
    return w;
}

MzvPoly mod_products(const MzvPoly& p) {
    MzvPoly r;
    for (const auto& [m, c] : p)
        if (m.degree() <= 1) r.add(m, c);
    return r;
}

MzvPoly mod_ideal(const MzvPoly& p, int n) {
    const auto& gens = reducer().generators();
    MzvPoly r;
    for (const auto& [m, c] : p) {
        bool keep = true;
        for (int g = 0; g < Mono::kMaxGens; ++g)
            if (m.exp(g) && gens[g].weight >= 2 && gens[g].weight <= n) keep = false;
        if (keep) r.add(m, c);
    }
    return r;
}

bool is_products_only(const MzvPoly& p) {
    for (const auto& [m, c] : p)
        if (m.degree() <= 1) return false;
    return true;
}

int expected_dimension(int weight) {
    if (weight < 0) return 0;
    std::vector<int> d(weight + 1, 0);
    d[0] = 1;
    for (int k = 1; k <= weight; ++k) d[k] = (k >= 2 ? d[k - 2] : 0) + (k >= 3 ? d[k - 3] : 0);
    return d[weight];
}

// ---------------------------------------------------------------- relations

namespace {

std::vector<Word> admissible_words(int weight) {
    std::vector<Word> out;
    if (weight == 0) return {Word()};
    if (weight < 2) return out;
    for (uint64_t mid = 0; mid < (uint64_t(1) << (weight - 2)); ++mid)
        out.emplace_back((uint64_t(3) << (weight - 1)) | (mid << 1));
    return out;
}

size_t admissible_index(Word w) { return (w.code >> 1) & ((uint64_t(1) << (w.size() - 2)) - 1); }

}  // namespace

std::vector<RelationRow> relation_rows(int weight) {
    std::vector<RelationRow> rows;
    auto words = admissible_words(weight);
    for (Word w : words) {
        auto [d, s] = duality(w);
        if (w < d) {
            MzvExpr r(w, 1);
            r.add(d, -s);
            rows.push_back({r, "duality"});
        }
    }
    // Hoffman rows: zeta(1) stuffle minus shuffle, divergent words cancel
    for (Word b : admissible_words(weight - 1)) {
        Composition cb = word_to_composition(b);
        MzvExpr r = shuffle(Word::letter_word(1), b);
        r.add(stuffle_product({1}, cb), cb.size() % 2 ? -1 : 1);
        for (const auto& [u, c] : r)
            if (!is_admissible(u)) throw MathError("divergent word survived in a regularized row");
        if (!r.empty()) rows.push_back({r, "regularized"});
    }
    for (int k = 2; 2 * k <= weight; ++k) {
        auto left = admissible_words(k), right = admissible_words(weight - k);
        for (Word a : left)
            for (Word b : right) {
                if (k == weight - k && b < a) continue;
                Composition ca = word_to_composition(a), cb = word_to_composition(b);
                MzvExpr r = shuffle(a, b);
                int sign = (ca.size() + cb.size()) % 2 ? -1 : 1;
                r.add(stuffle_product(ca, cb), -sign);
                if (!r.empty()) rows.push_back({r, "stuffle"});
            }
    }
    return rows;
}

// ---------------------------------------------------------------- reducer

namespace {

std::vector<Composition> compositions_of(int weight) {
    std::vector<Composition> out;
    std::function<void(int, Composition&)> rec = [&](int left, Composition& c) {
        if (left == 0) {
            if (!c.empty() && c.back() >= 2) out.push_back(c);
            return;
        }
        for (int p = 1; p <= left; ++p) {
            c.push_back(p);
            rec(left - p, c);
            c.pop_back();
        }
    };
    Composition c;
    rec(weight, c);
    auto cls = [](const Composition& c) {
        if (c.size() == 1) return 0;
        bool odd = true, big = true;
        for (int p : c) {
            if (p % 2 == 0 || p < 3) odd = false;
            if (p < 2) big = false;
        }
        return odd ? 1 : big ? 2 : 3;
    };
    std::stable_sort(out.begin(), out.end(), [&](const Composition& a, const Composition& b) {
        if (cls(a) != cls(b)) return cls(a) < cls(b);
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    return out;
}

// Gaussian elimination over Q on small dense vectors; returns false if v is dependent.
struct QSpan {
    int dim;
    std::vector<std::vector<Q>> rows;
    std::vector<int> piv;
    explicit QSpan(int d) : dim(d) {}
    bool insert(std::vector<Q> v) {
        for (size_t i = 0; i < rows.size(); ++i) {
            if (v[piv[i]] == 0) continue;
            Q f = v[piv[i]];
            for (int j = 0; j < dim; ++j) v[j] -= f * rows[i][j];
        }
        int p = -1;
        for (int j = 0; j < dim; ++j)
            if (v[j] != 0) { p = j; break; }
        if (p < 0) return false;
        Q inv = 1 / v[p];
        for (auto& x : v) x *= inv;
        for (size_t i = 0; i < rows.size(); ++i) {
            if (rows[i][p] == 0) continue;
            Q f = rows[i][p];
            for (int j = 0; j < dim; ++j) rows[i][j] -= f * v[j];
        }
        rows.push_back(std::move(v));
        piv.push_back(p);
        return true;
    }
};

std::vector<std::vector<Q>> invert(std::vector<std::vector<Q>> a) {
    int n = int(a.size());
    std::vector<std::vector<Q>> inv(n, std::vector<Q>(n, 0));
    for (int i = 0; i < n; ++i) inv[i][i] = 1;
    for (int c = 0; c < n; ++c) {
        int p = c;
        while (p < n && a[p][c] == 0) ++p;
        if (p == n) throw MathError("singular basis matrix in MZV reduction");
        std::swap(a[p], a[c]);
        std::swap(inv[p], inv[c]);
        Q f = 1 / a[c][c];
        for (int j = 0; j < n; ++j) a[c][j] *= f, inv[c][j] *= f;
        for (int r = 0; r < n; ++r) {
            if (r == c || a[r][c] == 0) continue;
            Q g = a[r][c];
            for (int j = 0; j < n; ++j) a[r][j] -= g * a[c][j], inv[r][j] -= g * inv[c][j];
        }
    }
    return inv;
}

}  // namespace

Reducer::Reducer(int cap, std::filesystem::path cache_dir) : cap_(cap), cache_dir_(std::move(cache_dir)) {}

void Reducer::set_cap(int cap) {
    std::lock_guard lk(mu_);
    cap_ = cap;
}

const std::vector<Generator>& Reducer::generators() { return gens_; }

void Reducer::ensure(int weight) {
    std::lock_guard lk(mu_);
    if (weight > cap_) throw MathError("weight cap exceeded");
    for (int k = 2; k <= weight; ++k)
        if (!tables_.count(k)) {
            if (!load(k)) {
                build(k);
                save(k);
            }
        }
}

int Reducer::generator_index(const Composition& c) {
    for (size_t i = 0; i < gens_.size(); ++i)
        if (gens_[i].comp == c) return int(i);
    return -1;
}

void Reducer::build(int weight) {
    auto words = admissible_words(weight);
    const int n = int(words.size());
    const int target = n - expected_dimension(weight);
    auto rows = relation_rows(weight);
    // dense integer rows, duality and regularized rows first
    std::vector<std::vector<std::pair<int, mpz_class>>> sparse;
    for (const auto& r : rows) {
        std::vector<std::pair<int, mpz_class>> s;
        for (const auto& [w, c] : r.row) {
            if (c.get_den() != 1) throw MathError("non-integral relation row");
            s.emplace_back(int(admissible_index(w)), c.get_num());
        }
        sparse.push_back(std::move(s));
    }
    modular::RrefResult rr = modular::rational_rref(sparse, n, target);
    Table t;
    t.rank = rr.rank;
    const int d = n - rr.rank;
    // coordinates of each word on the free columns
    std::vector<int> free_pos(n, -1);
    for (int i = 0, k = 0; i < n; ++i)
        if (!rr.is_pivot[i]) free_pos[i] = k++;
    auto coord_of_word = [&](size_t idx) {
        std::vector<Q> v(d, 0);
        if (free_pos[idx] >= 0) v[free_pos[idx]] = 1;
        else
            for (const auto& [f, c] : rr.pivot_rows.at(int(idx))) v[free_pos[f]] -= c;
        return v;
    };
    auto coord_of = [&](const MzvExpr& e) {
        std::vector<Q> v(d, 0);
        for (const auto& [w, c] : e) {
            if (w.size() != weight || !is_admissible(w)) throw MathError("inhomogeneous MZV expression");
            auto cw = coord_of_word(admissible_index(w));
            for (int j = 0; j < d; ++j) v[j] += c * cw[j];
        }
        return v;
    };
    // products of earlier generators
    std::vector<Mono> basis;
    std::vector<std::vector<Q>> cols;
    QSpan span(d);
    std::function<void(int, int, Mono, MzvExpr, int)> products = [&](int g, int left, Mono m, MzvExpr e, int deg) {
        if (left == 0) {
            if (deg < 2) return;
            auto v = coord_of(e);
            if (!span.insert(v)) throw MathError("products of MZV generators are dependent at weight " + std::to_string(weight));
            basis.push_back(m);
            cols.push_back(v);
            return;
        }
        if (g >= int(gens_.size())) return;
        int gw = gens_[g].weight;
        products(g + 1, left, m, e, deg);
        MzvExpr rep = zeta_of_composition(gens_[g].comp);
        for (int e_ = 1; e_ * gw <= left; ++e_) {
            e = shuffle(e, rep);
            m = m.times(Mono::gen(g));
            products(g + 1, left - e_ * gw, m, e, deg + e_);
        }
    };
    products(0, weight, Mono{}, MzvExpr(Word(), 1), 0);
    for (const auto& c : compositions_of(weight)) {
        if (int(basis.size()) == d) break;
        auto v = coord_of(zeta_of_composition(c));
        if (!span.insert(v)) continue;
        if (int(gens_.size()) >= Mono::kMaxGens) throw MathError("weight cap exceeded");
        gens_.push_back({weight, c});
        basis.push_back(Mono::gen(int(gens_.size()) - 1));
        cols.push_back(v);
        t.new_gens.push_back(gens_.back().name());
    }
    if (int(basis.size()) != d) throw MathError("could not complete MZV basis at weight " + std::to_string(weight));
    // B has the basis coordinates as columns
    std::vector<std::vector<Q>> B(d, std::vector<Q>(d));
    for (int j = 0; j < d; ++j)
        for (int i = 0; i < d; ++i) B[i][j] = cols[j][i];
    auto Binv = d ? invert(B) : B;
    t.values.resize(n);
    for (int i = 0; i < n; ++i) {
        auto v = coord_of_word(i);
        MzvPoly p;
        for (int r = 0; r < d; ++r) {
            Q s = 0;
            for (int j = 0; j < d; ++j) s += Binv[r][j] * v[j];
            p.add(basis[r], s);
        }
        t.values[i] = std::move(p);
    }
    tables_[weight] = std::move(t);
}

namespace {
constexpr const char* kCacheTag = "gfp-mzv-table v1";
}

bool Reducer::load(int weight) {
    if (cache_dir_.empty()) return false;
    auto path = cache_dir_ / ("mzv-w" + std::to_string(weight) + ".txt");
    std::ifstream in(path);
    if (!in) return false;
    std::string line;
    std::getline(in, line);
    if (line != kCacheTag) return false;
    int w, n, rank, ngen;
    in >> w >> n >> rank >> ngen;
    if (!in || w != weight) return false;
    std::vector<Generator> gens;
    for (int i = 0; i < ngen; ++i) {
        int gw, len;
        in >> gw >> len;
        Composition c(len);
        for (auto& p : c) in >> p;
        gens.push_back({gw, c});
    }
    if (!in) return false;
    // generators of earlier weights must agree with the ones already known
    for (size_t i = 0; i < gens.size(); ++i) {
        if (i < gens_.size()) {
            if (gens_[i].comp != gens[i].comp) return false;
        } else if (gens[i].weight != weight) {
            return false;
        }
    }
    Table t;
    t.rank = rank;
    t.values.resize(n);
    for (int i = 0; i < n; ++i) {
        int k;
        in >> k;
        for (int j = 0; j < k; ++j) {
            uint64_t m;
            std::string c;
            in >> std::hex >> m >> std::dec >> c;
            t.values[i].add(Mono{m}, Q(c));
        }
    }
    if (!in) return false;
    for (size_t i = gens_.size(); i < gens.size(); ++i) {
        gens_.push_back(gens[i]);
        t.new_gens.push_back(gens[i].name());
    }
    tables_[weight] = std::move(t);
    return true;
}

void Reducer::save(int weight) {
    if (cache_dir_.empty()) return;
    std::error_code ec;
    std::filesystem::create_directories(cache_dir_, ec);
    auto path = cache_dir_ / ("mzv-w" + std::to_string(weight) + ".txt");
    auto tmp = path;
    tmp += ".tmp" + std::to_string(::getpid());
    int lock = ::open((cache_dir_ / ".lock").c_str(), O_CREAT | O_RDWR, 0644);
    if (lock >= 0) ::flock(lock, LOCK_EX);
    struct Unlock {
        int fd;
        ~Unlock() {
            if (fd >= 0) ::close(fd);
        }
    } unlock{lock};
    std::ofstream out(tmp);
    if (!out) return;
    const Table& t = tables_.at(weight);
    int ngen = 0;
    for (const auto& g : gens_)
        if (g.weight <= weight) ++ngen;
    out << kCacheTag << "\n" << weight << " " << t.values.size() << " " << t.rank << " " << ngen << "\n";
    for (int i = 0; i < ngen; ++i) {
        out << gens_[i].weight << " " << gens_[i].comp.size();
        for (int p : gens_[i].comp) out << " " << p;
        out << "\n";
    }
    for (const auto& v : t.values) {
        out << v.size();
        for (const auto& [m, c] : v.sorted()) out << " " << std::hex << m.e << std::dec << " " << c.get_str();
        out << "\n";
    }
    out.close();
    std::filesystem::rename(tmp, path, ec);
}

const MzvPoly& Reducer::zeta(Word w) {
    std::lock_guard lk(mu_);
    auto it = zeta_memo_.find(w);
    if (it != zeta_memo_.end()) return it->second;
    MzvPoly p;
    for (const auto& [u, c] : shuffle_regularize(w)) {
        if (u.empty()) {
            p.add(Mono{}, c);
            continue;
        }
        ensure(u.size());
        p.add(tables_.at(u.size()).values[admissible_index(u)], c);
    }
    return zeta_memo_.emplace(w, std::move(p)).first->second;
}

MzvPoly Reducer::reduce(const MzvExpr& e) {
    MzvPoly p;
    for (const auto& [w, c] : e) p.add(zeta(w), c);
    return p;
}

MzvPoly Reducer::reduce_composition(const Composition& c) { return reduce(zeta_of_composition(c)); }

WeightReport Reducer::report(int weight) {
    std::lock_guard lk(mu_);
    WeightReport r{weight, 0, 0, 0, expected_dimension(weight), {}};
    if (weight < 2) {
        r.words = weight == 0 ? 1 : 0;
        r.dimension = weight == 0 ? 1 : 0;
        return r;
    }
    ensure(weight);
    const Table& t = tables_.at(weight);
    r.words = int(t.values.size());
    r.rank = t.rank;
    r.dimension = r.words - t.rank;
    r.new_generators = t.new_gens;
    return r;
}

namespace {
std::unique_ptr<Reducer> g_reducer;
std::mutex g_reducer_mu;

std::filesystem::path default_cache_dir() {
    if (const char* env = std::getenv("GFPERIOD_CACHE")) return env;
    return ".gfperiod-cache";
}
}  // namespace

Reducer& reducer() {
    std::lock_guard lk(g_reducer_mu);
    if (!g_reducer) g_reducer = std::make_unique<Reducer>(12, default_cache_dir());
    return *g_reducer;
}

void configure_reducer(int cap, const std::optional<std::string>& cache_dir) {
    std::lock_guard lk(g_reducer_mu);
    std::filesystem::path dir = cache_dir ? std::filesystem::path(*cache_dir) : default_cache_dir();
    if (!g_reducer) g_reducer = std::make_unique<Reducer>(cap, dir);
    else g_reducer->set_cap(cap);
}

}  // namespace gfp
