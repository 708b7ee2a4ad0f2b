#include "gfp/graphfn.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>

#include "json.hpp"

namespace gfp {

// ---------------------------------------------------------------- graphs

int GfGraph::add_vertex(const std::string& name) {
    if (find(name) >= 0) throw MathError("duplicate vertex '" + name + "'");
    names.push_back(name);
    return size() - 1;
}

int GfGraph::find(const std::string& name) const {
    for (int i = 0; i < size(); ++i)
        if (names[i] == name) return i;
    return -1;
}

void GfGraph::add_edge(int u, int v, int w) {
    if (u == v) throw MathError("self-loops are not allowed");
    edges.push_back({u, v, w});
}

std::vector<std::vector<int>> GfGraph::weights() const {
    std::vector<std::vector<int>> a(size(), std::vector<int>(size(), 0));
    for (const auto& e : edges) {
        a[e.u][e.v] += e.w;
        a[e.v][e.u] += e.w;
    }
    return a;
}

int GfGraph::valency(int v) const {
    int n = 0;
    for (const auto& e : edges)
        if (e.u == v || e.v == v) n += e.w;
    return n;
}

bool GfGraph::is_label(int v) const { return std::find(labels.begin(), labels.end(), v) != labels.end(); }

std::vector<int> GfGraph::internal() const {
    std::vector<int> r;
    for (int i = 0; i < size(); ++i)
        if (!is_label(i)) r.push_back(i);
    return r;
}

GfGraph GfGraph::normalized() const {
    GfGraph g;
    g.names = names;
    g.labels = labels;
    auto a = weights();
    for (int i = 0; i < size(); ++i)
        for (int j = i + 1; j < size(); ++j)
            if (a[i][j]) g.edges.push_back({i, j, a[i][j]});
    return g;
}

namespace {

const char* kLabelNames[4] = {"0", "1", "z", "inf"};

std::string fresh_name(const GfGraph& g, std::string base) {
    while (g.find(base) >= 0) base += "'";
    return base;
}

// Subgraph on the given vertices (in order), keeping labels that survive.
GfGraph induced(const GfGraph& g, const std::vector<int>& keep) {
    std::vector<int> idx(g.size(), -1);
    GfGraph h;
    for (int v : keep) idx[v] = h.add_vertex(g.names[v]);
    for (int l = 0; l < 4; ++l)
        if (g.labels[l] >= 0) h.labels[l] = idx[g.labels[l]];
    for (const auto& e : g.edges)
        if (idx[e.u] >= 0 && idx[e.v] >= 0 && e.w) h.edges.push_back({idx[e.u], idx[e.v], e.w});
    return h;
}

GfGraph without(const GfGraph& g, int v) {
    std::vector<int> keep;
    for (int i = 0; i < g.size(); ++i)
        if (i != v) keep.push_back(i);
    return induced(g, keep);
}

// Connected components of the internal vertices.
std::vector<std::vector<int>> internal_components(const GfGraph& g) {
    auto a = g.weights();
    auto in = g.internal();
    std::vector<int> comp(g.size(), -1);
    std::vector<std::vector<int>> out;
    for (int s : in) {
        if (comp[s] >= 0) continue;
        std::vector<int> stack{s}, members;
        comp[s] = int(out.size());
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            members.push_back(v);
            for (int u : in)
                if (a[v][u] && comp[u] < 0) {
                    comp[u] = comp[s];
                    stack.push_back(u);
                }
        }
        std::sort(members.begin(), members.end());
        out.push_back(members);
    }
    return out;
}

// Component plus the labeled vertices, keeping only component-to-label edges.
GfGraph component_graph(const GfGraph& g, const std::vector<int>& comp) {
    std::vector<int> keep;
    for (int l = 0; l < 4; ++l)
        if (g.labels[l] >= 0) keep.push_back(g.labels[l]);
    keep.insert(keep.end(), comp.begin(), comp.end());
    GfGraph h = induced(g, keep);
    std::vector<Edge> es;
    for (const auto& e : h.edges)
        if (!(h.is_label(e.u) && h.is_label(e.v))) es.push_back(e);
    h.edges = es;
    return h;
}

}  // namespace

GfGraph graph_from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    GfGraph g;
    for (const auto& v : j.at("vertices")) g.add_vertex(v.is_string() ? v.get<std::string>() : v.dump());
    auto vid = [&](const nlohmann::json& x) {
        std::string s = x.is_string() ? x.get<std::string>() : x.dump();
        int i = g.find(s);
        if (i < 0) throw MathError("unknown vertex '" + s + "'");
        return i;
    };
    for (const auto& e : j.at("edges")) g.add_edge(vid(e.at("u")), vid(e.at("v")), e.value("w", 1));
    if (j.contains("labels"))
        for (int l = 0; l < 4; ++l)
            if (j["labels"].contains(kLabelNames[l])) g.labels[l] = vid(j["labels"][kLabelNames[l]]);
    return g;
}

std::string graph_to_json(const GfGraph& g) {
    nlohmann::ordered_json j;
    j["vertices"] = g.names;
    j["edges"] = nlohmann::json::array();
    for (const auto& e : g.edges) j["edges"].push_back({{"u", g.names[e.u]}, {"v", g.names[e.v]}, {"w", e.w}});
    nlohmann::ordered_json lab = nlohmann::ordered_json::object();
    for (int l = 0; l < 4; ++l)
        if (g.labels[l] >= 0) lab[kLabelNames[l]] = g.names[g.labels[l]];
    j["labels"] = lab;
    return j.dump();
}

bool is_completed(const GfGraph& g) {
    if (g.labels[L0] < 0 || g.labels[L1] < 0 || g.labels[LZ] < 0 || g.labels[LInf] < 0) return false;
    for (int v = 0; v < g.size(); ++v)
        if (g.valency(v) != (g.is_label(v) ? 0 : 4)) return false;
    return true;
}

GfGraph complete(const GfGraph& g0) {
    GfGraph g = g0.normalized();
    if (g.labels[L0] < 0 || g.labels[L1] < 0 || g.labels[LZ] < 0) throw MathError("completion needs labels 0, 1, z");
    if (g.labels[LInf] >= 0) {
        if (!is_completed(g)) throw MathError("graph with inf is not completed");
        return g;
    }
    int inf = g.add_vertex(fresh_name(g, "inf"));
    g.labels[LInf] = inf;
    for (int v : g.internal())
        if (int n = g.valency(v); n != 4) g.edges.push_back({v, inf, 4 - n});
    int z = g.labels[LZ];
    if (int nz = g.valency(z)) g.edges.push_back({z, inf, -nz});
    int n0 = g.valency(g.labels[L0]), n1 = g.valency(g.labels[L1]), ni = g.valency(inf);
    if ((n0 + n1 + ni) % 2) throw MathError("completion needs integer weights");
    int w01 = (-n0 - n1 + ni) / 2, w0i = (-n0 + n1 - ni) / 2, w1i = (n0 - n1 - ni) / 2;
    if (w01) g.edges.push_back({g.labels[L0], g.labels[L1], w01});
    if (w0i) g.edges.push_back({g.labels[L0], inf, w0i});
    if (w1i) g.edges.push_back({g.labels[L1], inf, w1i});
    return g.normalized();
}

GfGraph complete_period_graph(const GfGraph& g0) {
    GfGraph g = g0.normalized();
    int V = g.size(), twoN = 0;
    for (const auto& e : g.edges) twoN += 2 * e.w;
    int inf_val = 4 * V - twoN;
    if (inf_val != 4) {
        if (g.labels[L0] < 0 || g.labels[L1] < 0) throw MathError("not a log-divergent period graph");
        int k = inf_val - 4;
        if (k % 2) throw MathError("not a log-divergent period graph");
        g.edges.push_back({g.labels[L0], g.labels[L1], k / 2});
        g = g.normalized();
    }
    int inf = g.add_vertex(fresh_name(g, "inf"));
    for (int v = 0; v < inf; ++v)
        if (int n = g.valency(v); n != 4) g.edges.push_back({v, inf, 4 - n});
    g.labels = {-1, -1, -1, -1};
    return g.normalized();
}

ConvergenceReport check_convergence(const GfGraph& g0) {
    GfGraph g = g0.normalized();
    auto a = g.weights();
    auto in = g.internal();
    ConvergenceReport r;
    int ni = int(in.size());
    if (ni > 20) throw MathError("graph too large for convergence check");
    // infrared: sets of internal vertices, weighted edges touching the set
    for (uint32_t mask = 1; mask < (1u << ni); ++mask) {
        std::vector<bool> inS(g.size(), false);
        std::vector<int> S;
        for (int i = 0; i < ni; ++i)
            if (mask >> i & 1) inS[in[i]] = true, S.push_back(in[i]);
        int N = 0;
        for (const auto& e : g.edges)
            if (inS[e.u] || inS[e.v]) N += e.w;
        if (2 * N <= 4 * int(S.size())) return {false, "IR", S};
    }
    // ultraviolet: vertex sets with at most one label
    int n = g.size();
    if (n > 22) throw MathError("graph too large for convergence check");
    for (uint32_t mask = 1; mask < (1u << n); ++mask) {
        if (__builtin_popcount(mask) < 2) continue;
        int labs = 0;
        std::vector<int> T;
        for (int i = 0; i < n; ++i)
            if (mask >> i & 1) {
                T.push_back(i);
                if (g.is_label(i)) ++labs;
            }
        if (labs > 1) continue;
        int N = 0;
        for (const auto& e : g.edges)
            if ((mask >> e.u & 1) && (mask >> e.v & 1)) N += e.w;
        if (2 * N >= 4 * (int(T.size()) - 1)) return {false, "UV", T};
    }
    return r;
}

// ---------------------------------------------------------------- S4 action

namespace {

// Moebius maps as permutations of the points (0, 1, inf).
std::array<int, 3> points_of(Moebius f) {
    switch (f) {
        case Moebius::id: return {0, 1, 2};
        case Moebius::one_minus_z: return {1, 0, 2};
        case Moebius::one_over_z: return {2, 1, 0};
        case Moebius::z_over_z_minus_1: return {0, 2, 1};
        case Moebius::z_minus_1_over_z: return {2, 0, 1};
        case Moebius::one_over_one_minus_z: return {1, 2, 0};
    }
    return {0, 1, 2};
}

Moebius from_points(std::array<int, 3> p) {
    for (Moebius f : {Moebius::id, Moebius::one_minus_z, Moebius::one_over_z, Moebius::z_over_z_minus_1,
                      Moebius::z_minus_1_over_z, Moebius::one_over_one_minus_z})
        if (points_of(f) == p) return f;
    throw MathError("bad Moebius permutation");
}

// f after g
Moebius compose(Moebius f, Moebius g) {
    auto pf = points_of(f), pg = points_of(g);
    return from_points({pf[pg[0]], pf[pg[1]], pf[pg[2]]});
}

struct PermTable {
    std::map<LabelPerm, Moebius> phi;
    PermTable() {
        std::vector<std::pair<LabelPerm, Moebius>> gens = {
            {{3, 1, 2, 0}, Moebius::one_over_z}, {{1, 0, 2, 3}, Moebius::one_minus_z}, {{0, 2, 1, 3}, Moebius::one_over_z}};
        LabelPerm id{0, 1, 2, 3};
        phi[id] = Moebius::id;
        std::vector<LabelPerm> queue{id};
        for (size_t i = 0; i < queue.size(); ++i) {
            LabelPerm p = queue[i];
            for (const auto& [g, m] : gens) {
                LabelPerm q;
                for (int l = 0; l < 4; ++l) q[l] = g[p[l]];
                if (!phi.count(q)) {
                    phi[q] = compose(m, phi[p]);
                    queue.push_back(q);
                }
            }
        }
    }
};

const PermTable& perm_table() {
    static PermTable t;
    return t;
}

}  // namespace

Moebius moebius_of(const LabelPerm& p) { return perm_table().phi.at(p); }

std::vector<LabelPerm> all_label_perms() {
    std::vector<LabelPerm> r;
    LabelPerm p{0, 1, 2, 3};
    do r.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return r;
}

std::pair<GfGraph, Moebius> permute_labels(const GfGraph& g, const LabelPerm& p) {
    GfGraph h = g;
    for (int l = 0; l < 4; ++l) h.labels[p[l]] = g.labels[l];
    return {h, moebius_of(p)};
}

namespace {

// Prefactor images under z -> 1 - z and z -> z/(z-1), for both variables.
AExpr pf_image(Pf p, bool anti, bool tau) {
    auto mono = [&](int x, int y) {
        // x^x (x-1)^y in the given variable
        return anti ? AExpr::monomial(0, x, 0, y) : AExpr::monomial(x, 0, y, 0);
    };
    if (tau) {
        // z^a -> (-1)^a (z-1)^a ; (z-1)^e -> (-1)^e z^e
        Q s = (p.e % 2) ? Q(-1) : Q(1);
        return (p.kind == 0 ? mono(0, p.e) : mono(p.e, 0)) * s;
    }
    // z^a -> z^a (z-1)^-a ; (z-1)^e -> (z-1)^-e
    return p.kind == 0 ? mono(p.e, -p.e) : mono(0, -p.e);
}

AExpr elementary(const AExpr& e, bool tau) {
    AExpr r;
    for (const auto& [p, s] : e.terms()) {
        SvExpr s2 = tau ? map_one_minus(s) : map_z_over_z_minus_1(s);
        AExpr pre = pf_image(p.h, false, tau) * pf_image(p.a, true, tau);
        r += pre * AExpr(s2);
    }
    return r;
}

BElement elementary_B(const BElement& f, bool tau) {
    AExpr g = elementary(f.g, tau);
    if (tau) return {-g};
    return {-(AExpr::monomial(0, 0, 1, 1) * g)};
}

}  // namespace

BElement moebius_B(const BElement& f, Moebius phi) {
    switch (phi) {
        case Moebius::id: return f;
        case Moebius::one_minus_z: return elementary_B(f, true);
        case Moebius::z_over_z_minus_1: return elementary_B(f, false);
        case Moebius::z_minus_1_over_z: return elementary_B(elementary_B(f, false), true);
        case Moebius::one_over_one_minus_z: return elementary_B(elementary_B(f, true), false);
        case Moebius::one_over_z: return elementary_B(elementary_B(elementary_B(f, true), false), true);
    }
    return f;
}

BElement rational_B(const AExpr& r) { return {AExpr::monomial(1, 0, 0, 0) * r - AExpr::monomial(0, 1, 0, 0) * r}; }

// ---------------------------------------------------------------- appending

BElement append_edge(const BElement& f) {
    AExpr out;
    for (const auto& [p, s] : f.g.terms()) {
        if (p.h.e != -1 || p.a.e != -1) throw MathError("not appendable");
        int a = p.h.kind, b = p.a.kind;
        SvExpr x = integrate(integrate(s, Var::antihol, b), Var::hol, a);
        SvExpr y = integrate(integrate(s, Var::hol, a), Var::antihol, b);
        out += AExpr(x + y) * Q(-1, 2);
    }
    return {out};
}

BElement append_inverse(const BElement& f1) { return {-derive_A(derive_A(f1.g, Var::hol), Var::antihol)}; }

AExpr sequential_factor(char letter) {
    switch (letter) {
        case '0': return AExpr::monomial(-1, -1, 0, 0);
        case '1': return AExpr::monomial(0, 0, -1, -1);
        case '2': return AExpr::monomial(-1, -1, -1, -1);
    }
    throw MathError(std::string("bad letter '") + letter + "'");
}

BElement sequential_function(const std::string& w) {
    static std::map<std::string, BElement> memo;
    static std::recursive_mutex mu;
    std::lock_guard lk(mu);
    if (w.empty() || w[0] != '2') throw MathError("divergent (word must begin with 2)");
    auto it = memo.find(w);
    if (it != memo.end()) return it->second;
    BElement prev = w.size() == 1 ? rational_B(AExpr(sv_constant(mzv_constant(1)))) : sequential_function(w.substr(0, w.size() - 1));
    BElement r = append_edge({prev.g * sequential_factor(w.back())});
    memo.emplace(w, r);
    return r;
}

GfGraph sequential_graph(const std::string& w) {
    GfGraph g;
    g.labels[L0] = g.add_vertex("0");
    g.labels[L1] = g.add_vertex("1");
    int prev = -1;
    for (size_t i = 0; i < w.size(); ++i) {
        int v = g.add_vertex("v" + std::to_string(i + 1));
        if (prev >= 0) g.add_edge(prev, v);
        if (w[i] == '0' || w[i] == '2') g.add_edge(g.labels[L0], v);
        if (w[i] == '1' || w[i] == '2') g.add_edge(g.labels[L1], v);
        if (w[i] < '0' || w[i] > '2') throw MathError(std::string("bad letter '") + w[i] + "'");
        prev = v;
    }
    return g;
}

GfGraph sequential_function_graph(const std::string& w) {
    GfGraph g = sequential_graph(w);
    int z = g.add_vertex("z");
    g.labels[LZ] = z;
    if (w.empty()) {
        g.add_edge(g.labels[L0], z);
        g.add_edge(g.labels[L1], z);
    } else g.add_edge(g.size() - 2, z);
    return g;
}

// ---------------------------------------------------------------- construction

namespace {

std::string canonical_key(const GfGraph& g0) {
    GfGraph g = g0.normalized();
    auto a = g.weights();
    int n = g.size();
    std::vector<long> color(n);
    for (int v = 0; v < n; ++v) {
        color[v] = 4;
        for (int l = 0; l < 4; ++l)
            if (g.labels[l] == v) color[v] = l;
    }
    for (int round = 0; round < n; ++round) {
        std::vector<std::vector<long>> sig(n);
        for (int v = 0; v < n; ++v) {
            sig[v].push_back(color[v]);
            std::vector<long> nb;
            for (int u = 0; u < n; ++u)
                if (a[v][u]) nb.push_back(color[u] * 1000 + a[v][u] + 500);
            std::sort(nb.begin(), nb.end());
            sig[v].insert(sig[v].end(), nb.begin(), nb.end());
        }
        std::vector<std::vector<long>> uniq = sig;
        std::sort(uniq.begin(), uniq.end());
        uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
        std::vector<long> nc(n);
        for (int v = 0; v < n; ++v) nc[v] = std::lower_bound(uniq.begin(), uniq.end(), sig[v]) - uniq.begin();
        bool same = std::set<long>(nc.begin(), nc.end()).size() == std::set<long>(color.begin(), color.end()).size();
        color = nc;
        if (same) break;
    }
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return color[x] < color[y]; });
    auto encode = [&](const std::vector<int>& ord) {
        std::string s;
        for (int l = 0; l < 4; ++l) {
            int pos = -1;
            for (int i = 0; i < n; ++i)
                if (ord[i] == g.labels[l]) pos = i;
            s += std::to_string(pos) + ",";
        }
        s += "|";
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) s += std::to_string(a[ord[i]][ord[j]]) + ",";
        return s;
    };
    // break ties exhaustively while cheap
    std::vector<std::pair<int, int>> groups;
    long work = 1;
    for (int i = 0; i < n;) {
        int j = i;
        while (j < n && color[order[j]] == color[order[i]]) ++j;
        if (j - i > 1) groups.push_back({i, j});
        for (int k = 2; k <= j - i; ++k) work *= k;
        i = j;
    }
    if (groups.empty() || work > 5040) return encode(order);
    std::string best;
    std::function<void(size_t, std::vector<int>&)> rec = [&](size_t gi, std::vector<int>& ord) {
        if (gi == groups.size()) {
            std::string s = encode(ord);
            if (best.empty() || s < best) best = s;
            return;
        }
        auto [b, e] = groups[gi];
        std::sort(ord.begin() + b, ord.begin() + e);
        do rec(gi + 1, ord);
        while (std::next_permutation(ord.begin() + b, ord.begin() + e));
    };
    rec(0, order);
    return best;
}

struct Builder {
    std::map<std::string, std::optional<BElement>> memo;
    std::map<std::string, std::optional<MzvPoly>> const_memo;
    std::vector<std::string>* trace = nullptr;
    int depth = 0;

    void note(const std::string& s) {
        if (trace) trace->push_back(std::string(2 * depth, ' ') + s);
    }

    // Graph with labels 0, 1, z and no inf; strips label edges into a prefactor.
    static AExpr strip_labels(GfGraph& g) {
        int z = g.labels[LZ], o = g.labels[L0], one = g.labels[L1];
        int w0 = 0, w1 = 0;
        std::vector<Edge> keep;
        for (const auto& e : g.edges) {
            bool lu = g.is_label(e.u), lv = g.is_label(e.v);
            if (lu && lv) {
                auto has = [&](int x, int y) { return (e.u == x && e.v == y) || (e.u == y && e.v == x); };
                if (has(o, z)) w0 += e.w;
                else if (has(one, z)) w1 += e.w;
                continue;
            }
            keep.push_back(e);
        }
        g.edges = keep;
        return AExpr::monomial(-w0, -w0, -w1, -w1);
    }

    // Integral over all internal vertices of a graph with labels 0, 1 only.
    std::optional<MzvPoly> constant(const GfGraph& h) {
        std::string key = canonical_key(h);
        auto it = const_memo.find(key);
        if (it != const_memo.end()) return it->second;
        std::optional<MzvPoly> result;
        auto in = h.internal();
        if (in.empty()) result = mzv_constant(1);
        else {
            std::vector<int> cand = in;
            std::stable_sort(cand.begin(), cand.end(), [&](int x, int y) { return h.valency(x) > h.valency(y); });
            for (int v : cand) {
                GfGraph hz = h;
                hz.labels[LZ] = v;
                if (auto p = plane_period(hz)) {
                    result = p;
                    note("constant via z = " + h.names[v]);
                    break;
                }
            }
        }
        const_memo[key] = result;
        return result;
    }

    // (1/pi^2) int d^4z f_G(z) for G with labels 0, 1, z and no inf.
    std::optional<MzvPoly> plane_period(const GfGraph& g0) {
        GfGraph g = g0.normalized();
        AExpr R = strip_labels(g);
        auto comps = internal_components(g);
        int z = g.labels[LZ];
        auto a = g.weights();
        std::vector<AExpr> nums;
        MzvPoly c = mzv_constant(1);
        for (const auto& comp : comps) {
            bool touches = false;
            for (int v : comp) touches |= a[v][z] != 0;
            GfGraph cg = component_graph(g, comp);
            if (!touches) {
                GfGraph h = without(cg, cg.labels[LZ]);
                auto k = constant(h);
                if (!k) return std::nullopt;
                c = c * *k;
                continue;
            }
            if (!check_convergence(cg).ok) return std::nullopt;
            auto f = build(cg);
            if (!f) return std::nullopt;
            nums.push_back(f->g);
        }
        if (nums.size() > 2) return std::nullopt;
        AExpr zz = AExpr::monomial(1, 0, 0, 0) - AExpr::monomial(0, 1, 0, 0);
        AExpr integrand = R.scaled(c) * Q(-1, 2);
        for (const auto& n : nums) integrand = integrand * n;
        for (size_t i = nums.size(); i < 2; ++i) integrand = integrand * zz;
        auto r = integrate_plane(integrand);
        if (!r.convergent) return std::nullopt;
        return r.value;
    }

    // Graphical function of G (labels 0, 1, z, no inf).
    std::optional<BElement> build(const GfGraph& g0) {
        GfGraph g = g0.normalized();
        std::string key = canonical_key(g);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        ++depth;
        std::optional<BElement> result;
        GfGraph full = complete(g);
        for (const auto& perm : all_label_perms()) {
            auto [pg, phi] = permute_labels(full, perm);
            GfGraph h = without(pg, pg.labels[LInf]);
            h.labels[LInf] = -1;
            AExpr R = strip_labels(h);
            auto f = peel(h);
            if (!f) continue;
            BElement fz{f->g * R};
            result = moebius_B(fz, phi);
            if (phi != Moebius::id) note("relabel, z -> " + moebius_name(phi));
            break;
        }
        --depth;
        memo[key] = result;
        return result;
    }

    // G without label edges: constant components, at most one peelable component at z.
    std::optional<BElement> peel(const GfGraph& g) {
        int z = g.labels[LZ];
        auto a = g.weights();
        auto comps = internal_components(g);
        MzvPoly c = mzv_constant(1);
        std::optional<GfGraph> next;
        for (const auto& comp : comps) {
            int touch = 0, v = -1;
            for (int u : comp)
                if (a[u][z]) touch += a[u][z], v = u;
            int nb = 0;
            for (int u : comp) nb += a[u][z] != 0;
            GfGraph cg = component_graph(g, comp);
            if (touch == 0) {
                auto k = constant(without(cg, cg.labels[LZ]));
                if (!k) return std::nullopt;
                c = c * *k;
                continue;
            }
            if (next || nb != 1 || touch != 1) return std::nullopt;
            // v becomes the new z
            GfGraph h = without(g, z);
            std::vector<int> ids{h.labels[L0], h.labels[L1]};
            for (int u : comp) ids.push_back(h.find(g.names[u]));
            GfGraph sub = induced(h, ids);
            sub.labels[LZ] = sub.find(g.names[v]);
            next = sub;
        }
        AExpr one(sv_constant(c));
        if (!next) {
            note("constant " + to_string(c));
            return rational_B(one);
        }
        auto f = build(*next);
        if (!f) return std::nullopt;
        note("append edge at " + g.names[g.labels[LZ]]);
        try {
            BElement r = append_edge(*f);
            return BElement{r.g * one};
        } catch (const MathError&) {
            return std::nullopt;
        }
    }
};

}  // namespace

Construction construct_graphical_function(const GfGraph& g0) {
    GfGraph g = g0.normalized();
    if (g.labels[LInf] >= 0) {
        g = without(g, g.labels[LInf]);
        g.labels[LInf] = -1;
    }
    if (g.labels[L0] < 0 || g.labels[L1] < 0 || g.labels[LZ] < 0) throw MathError("graph needs labels 0, 1, z");
    if (auto c = check_convergence(g); !c.ok) throw MathError("divergent (" + c.kind + ")");
    Construction out;
    Builder b;
    b.trace = &out.trace;
    auto f = b.build(g);
    if (!f) throw MathError("not constructible");
    out.f = *f;
    return out;
}

namespace {

std::optional<MzvPoly> period_with_labels(Builder& b, const GfGraph& completed, const std::array<int, 4>& lab) {
    GfGraph g = completed;
    g.labels = lab;
    GfGraph h = without(g, lab[LInf]);
    h.labels[LInf] = -1;
    return b.plane_period(h);
}

}  // namespace

PeriodResult period_of_graph(const GfGraph& completed0, std::optional<std::array<int, 4>> labels) {
    GfGraph completed = completed0.normalized();
    for (int v = 0; v < completed.size(); ++v)
        if (completed.valency(v) != 4) throw MathError("graph is not completed");
    PeriodResult out;
    Builder b;
    b.trace = &out.provenance;
    auto describe = [&](const std::array<int, 4>& lab) {
        std::string s = "labels";
        for (int l = 0; l < 4; ++l) s += std::string(" ") + kLabelNames[l] + "=" + completed.names[lab[l]];
        return s;
    };
    if (labels) {
        out.provenance.push_back(describe(*labels));
        auto v = period_with_labels(b, completed, *labels);
        if (!v) throw MathError("not constructible");
        out.value = *v;
        return out;
    }
    // candidate labelings: four vertices whose removal leaves at most two balanced components
    int n = completed.size();
    struct Cand {
        std::array<int, 4> lab;
        int score;
    };
    std::vector<Cand> cands;
    auto a = completed.weights();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k)
                for (int l = k + 1; l < n; ++l) {
                    GfGraph g = completed;
                    g.labels = {i, j, k, l};
                    auto comps = internal_components(g);
                    if (comps.size() > 2) continue;
                    int mn = comps.empty() ? 0 : int(comps[0].size());
                    for (const auto& c : comps) mn = std::min(mn, int(c.size()));
                    std::array<int, 4> s{i, j, k, l};
                    for (int zi = 0; zi < 4; ++zi) {
                        // z must be adjacent to the chosen 0 and 1
                        std::vector<int> rest;
                        for (int t = 0; t < 4; ++t)
                            if (t != zi) rest.push_back(s[t]);
                        int z = s[zi];
                        for (int inf = 0; inf < 3; ++inf) {
                            std::vector<int> r01;
                            for (int t = 0; t < 3; ++t)
                                if (t != inf) r01.push_back(rest[t]);
                            int sc = 100 * int(comps.size()) + 10 * mn + (a[z][r01[0]] > 0) + (a[z][r01[1]] > 0);
                            cands.push_back({{r01[0], r01[1], z, rest[inf]}, sc});
                        }
                    }
                }
    std::stable_sort(cands.begin(), cands.end(), [](const Cand& x, const Cand& y) { return x.score > y.score; });
    for (const auto& c : cands) {
        std::vector<std::string> saved = out.provenance;
        out.provenance.push_back(describe(c.lab));
        std::optional<MzvPoly> v;
        try {
            v = period_with_labels(b, completed, c.lab);
        } catch (const MathError&) {
            v.reset();
        }
        if (v) {
            out.value = *v;
            return out;
        }
        out.provenance = saved;
    }
    throw MathError("not constructible");
}

PeriodResult sequential_period(const std::string& w) {
    if (w.size() < 2 || w.front() != '2' || w.back() != '2') throw MathError("divergent (word must begin and end with 2)");
    PeriodResult out;
    std::string v = w.substr(0, w.size() - 1) + "1";
    out.value = value_at_B(sequential_function(v), 0);
    out.provenance.push_back("f_" + v + "(0)");
    return out;
}

// ---------------------------------------------------------------- closed forms

MzvPoly period_mod_products(const std::string& w) {
    std::string wt(w.rbegin(), w.rend());
    MzvExpr e;
    for (const auto& [x, c] : expand_letter2(wt + "01" + w + "0")) e.add(x, c);
    for (const auto& [x, c] : expand_letter2(wt + "10" + w + "0")) e.add(x, -c);
    MzvPoly r;
    for (const auto& [x, c] : e) r.add(reducer().zeta(x), c);
    return r * Q(w.size() % 2 ? -2 : 2);
}

Q zigzag_coefficient(int n) {
    if (n < 3) throw MathError("zig-zag needs n >= 3");
    mpz_class f2 = 1, fn = 1, fn1 = 1;
    for (int i = 2; i <= 2 * n - 2; ++i) f2 *= i;
    for (int i = 2; i <= n; ++i) fn *= i;
    for (int i = 2; i <= n - 1; ++i) fn1 *= i;
    Q c = Q(4 * f2) / Q(fn * fn1);
    if (n % 2) {
        mpz_class p = 1;
        p <<= (2 * n - 3);
        c *= 1 - Q(2) / Q(p);
    }
    c.canonicalize();
    return c;
}

namespace {

MzvPoly single_zeta(int k) { return reducer().reduce_composition({k}); }

MzvPoly zeta_232(int a, int b) {
    Composition c(a, 2);
    c.push_back(3);
    c.insert(c.end(), b, 2);
    return reducer().reduce_composition(c);
}

}  // namespace

MzvPoly zigzag_closed_form(int n) { return single_zeta(2 * n - 3) * zigzag_coefficient(n); }

Q zagier_coefficient(int a, int b) {
    int r = a + b + 1;
    mpz_class bin1, bin2, p = 1;
    mpz_bin_uiui(bin1.get_mpz_t(), 2 * r, 2 * a + 2);
    mpz_bin_uiui(bin2.get_mpz_t(), 2 * r, 2 * b + 1);
    p <<= 2 * r;
    Q c = Q(bin1) - (1 - Q(1) / Q(p)) * Q(bin2);
    c *= (r % 2 ? -2 : 2);
    c.canonicalize();
    return c;
}

MzvPoly zigzag_mod_products(int n) {
    if (n < 4) throw MathError("mod-products formula needs n >= 4");
    if (n % 2) return zeta_232((n - 3) / 2, (n - 3) / 2) * Q(2) - zeta_232((n - 5) / 2, (n - 1) / 2) * Q(2);
    return zeta_232((n - 4) / 2, (n - 2) / 2) * Q(2) - zeta_232((n - 2) / 2, (n - 4) / 2) * Q(2);
}

std::string zigzag_word(int n) {
    if (n < 3) throw MathError("zig-zag needs n >= 3");
    std::string w = "2";
    for (int i = 0; i < (n - 3) / 2; ++i) w += "01";
    if (n % 2 == 0) w += "0";
    return w + "2";
}

std::string Phi4Class::str() const {
    if (kind == "zigzag") return "zigzag(" + std::to_string(n) + ")";
    if (kind == "A" || kind == "B") return kind + "(" + std::to_string(m) + "," + std::to_string(n) + ")";
    return "none";
}

Phi4Class classify_phi4_word(const std::string& w) {
    if (w.size() < 2 || w.front() != '2' || w.back() != '2') throw MathError("word must begin and end with 2");
    auto alternating = [](const std::string& s) {
        for (size_t i = 0; i + 1 < s.size(); ++i)
            if (s[i] == s[i + 1]) return false;
        return s.find('2') == std::string::npos;
    };
    std::string mid = w.substr(1, w.size() - 2);
    size_t p = mid.find('2');
    if (p == std::string::npos) {
        if (!alternating(mid)) return {"none"};
        return {"zigzag", 0, int(mid.size()) + 3};
    }
    if (mid.find('2', p + 1) != std::string::npos) return {"none"};
    std::string left = mid.substr(0, p), right = mid.substr(p + 1);
    if (!alternating(left) || !alternating(right)) return {"none"};
    int m = int(left.size()), n = int(right.size());
    if (m == 0 || n == 0) return {"A", m, n};
    return {left.back() != right.front() ? "A" : "B", m, n};
}

}  // namespace gfp
