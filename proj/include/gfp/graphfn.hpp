#pragma once
#include <array>
#include <optional>
#include <string>
#include <vector>

#include "gfp/ratfield.hpp"

namespace gfp {

enum Label { L0 = 0, L1 = 1, LZ = 2, LInf = 3 };

struct Edge {
    int u, v, w;
};

// Weighted graph with up to four labeled vertices (0, 1, z, inf).
struct GfGraph {
    std::vector<std::string> names;
    std::vector<Edge> edges;
    std::array<int, 4> labels{-1, -1, -1, -1};

    int size() const { return int(names.size()); }
    int add_vertex(const std::string& name);
    int find(const std::string& name) const;
    void add_edge(int u, int v, int w = 1);
    // Adjacency with merged multi-edges; zero weights dropped.
    std::vector<std::vector<int>> weights() const;
    int valency(int v) const;
    bool is_label(int v) const;
    std::vector<int> internal() const;
    // Copy with merged edges and without zero-weight edges.
    GfGraph normalized() const;
};

GfGraph graph_from_json(const std::string& text);
std::string graph_to_json(const GfGraph& g);

// Adds inf with integer edges so internal vertices have valency 4 and labels valency 0.
GfGraph complete(const GfGraph& g);
// Completion of a period graph with labels 0, 1: all vertices valency 4, adding an edge 01 if needed.
GfGraph complete_period_graph(const GfGraph& g);
bool is_completed(const GfGraph& g);

struct ConvergenceReport {
    bool ok = true;
    std::string kind;            // "IR" or "UV"
    std::vector<int> witness;    // violating vertex set
};
ConvergenceReport check_convergence(const GfGraph& g);

// Label permutation p: vertex labeled l gets label p[l].
using LabelPerm = std::array<int, 4>;
Moebius moebius_of(const LabelPerm& p);
std::pair<GfGraph, Moebius> permute_labels(const GfGraph& g, const LabelPerm& p);
std::vector<LabelPerm> all_label_perms();

// f(z) -> f(phi(z)) for B-elements.
BElement moebius_B(const BElement& f, Moebius phi);
// Numerator (z - zb) r for a rational function r.
BElement rational_B(const AExpr& r);

BElement append_edge(const BElement& f);
// Inverse: -(z-zb)^{-1} d_z d_zb (z-zb) f, as a numerator over (z-zb).
BElement append_inverse(const BElement& f1);

// Prefactor of edges from z to 0 and 1.
AExpr sequential_factor(char letter);
BElement sequential_function(const std::string& w);
GfGraph sequential_function_graph(const std::string& w);
GfGraph sequential_graph(const std::string& w);

struct Construction {
    BElement f;
    std::vector<std::string> trace;
};
Construction construct_graphical_function(const GfGraph& g);

struct PeriodResult {
    MzvPoly value;
    std::vector<std::string> provenance;
};
// Completed graph; labels optional (auto-search when omitted).
PeriodResult period_of_graph(const GfGraph& completed, std::optional<std::array<int, 4>> labels = std::nullopt);
PeriodResult sequential_period(const std::string& w);

MzvPoly period_mod_products(const std::string& w);
// 4 (2n-2)!/(n!(n-1)!) (1 - (1-(-1)^n)/2^(2n-3)) as coefficient of zeta(2n-3).
Q zigzag_coefficient(int n);
MzvPoly zigzag_closed_form(int n);
// Coefficient of zeta(2r+1) in zeta(2^a, 3, 2^b) modulo products, r = a + b + 1.
Q zagier_coefficient(int a, int b);
// zeta(2^a,3,2^b) combination of the zig-zag mod-products formula, fully reduced.
MzvPoly zigzag_mod_products(int n);

struct Phi4Class {
    std::string kind;  // "zigzag", "A", "B", "none"
    int m = 0, n = 0;
    std::string str() const;
};
Phi4Class classify_phi4_word(const std::string& w);

// Dual sequential word of the zig-zag graph Z_n.
std::string zigzag_word(int n);

}  // namespace gfp
