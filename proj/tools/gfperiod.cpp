#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "gfp/numeric.hpp"
#include "gfp/parse.hpp"
#include "json.hpp"

using namespace gfp;
using json = nlohmann::ordered_json;

namespace {

struct Options {
    bool json = false;
    int weight_cap = 12;
    int prec = 40;
};

struct Output {
    std::string input;
    std::string value;
    std::string reduced;
    std::string numeric;
    std::vector<std::string> provenance;
    json extra = json::object();
    std::vector<std::string> lines;  // plain-text output; defaults to value
};

void emit(const Options& o, const Output& out) {
    if (o.json) {
        json j;
        j["schema"] = 1;
        j["input"] = out.input;
        j["value"] = out.value;
        j["reduced"] = out.reduced.empty() ? json(nullptr) : json(out.reduced);
        j["numeric"] = out.numeric.empty() ? json(nullptr) : json(out.numeric);
        j["provenance"] = out.provenance;
        for (const auto& [k, v] : out.extra.items()) j[k] = v;
        std::cout << j.dump() << "\n";
        return;
    }
    if (out.lines.empty()) std::cout << out.value << "\n";
    for (const auto& l : out.lines) std::cout << l << "\n";
}

std::string numeric_of(const MzvPoly& p, const Options& o) {
    num::Context ctx(o.prec);
    return num::to_decimal(num::mzv_numeric(p, ctx), o.prec);
}

std::string read_graph_text(const std::string& arg) {
    if (!arg.empty() && arg[0] == '{') return arg;
    if (arg == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
    std::ifstream in(arg);
    if (!in) throw CLI::ValidationError("graph", "cannot read '" + arg + "'");
    return {std::istreambuf_iterator<char>(in), {}};
}

GfGraph load_graph(const std::string& arg) {
    try {
        return graph_from_json(read_graph_text(arg));
    } catch (const nlohmann::json::exception& e) {
        throw CLI::ValidationError("graph", std::string("bad graph JSON: ") + e.what());
    }
}

Var parse_var(const std::string& s) {
    if (s == "z") return Var::hol;
    if (s == "zb") return Var::antihol;
    throw CLI::ValidationError("--var", "must be z or zb");
}

int parse_point(const std::string& s) {
    if (s == "0") return 0;
    if (s == "1") return 1;
    if (s == "inf") return 2;
    throw CLI::ValidationError("--at", "must be 0, 1 or inf");
}

const char* point_name(int p) { return p == 0 ? "0" : p == 1 ? "1" : "inf"; }

std::string csv_field(const std::string& s) { return s.find(',') == std::string::npos ? s : "\"" + s + "\""; }

std::string value_string(const Parsed& p) { return print(p); }

}  // namespace

int main(int argc, char** argv) {
    Options opt;
    CLI::App app{"Graphical functions and periods in four dimensions"};
    app.set_help_all_flag("--help-all");
    app.require_subcommand(1);
    app.fallthrough();
    app.add_flag("--json", opt.json, "Emit one JSON object");
    app.add_option("--weight-cap", opt.weight_cap, "Largest MZV weight the reducer handles")->check(CLI::Range(2, 16));
    app.add_option("--prec", opt.prec, "Decimal digits for numerics")->check(CLI::Range(10, 2000));

    std::function<Output()> action;
    std::string expr, word, var = "zb", at, graph, labels, grid, base = "0";
    int pole = -1, order = 4, n = 0;
    bool p0 = false;

    // mzv
    auto* mzv = app.add_subcommand("mzv", "Multiple zeta values");
    mzv->require_subcommand(1);
    auto* mzv_reduce = mzv->add_subcommand("reduce", "Reduce to the generator basis");
    mzv_reduce->add_option("expr", expr, "Expression, e.g. 'z(2,3)' or 'zeta[10100]'")->required();
    mzv_reduce->callback([&] {
        action = [&] {
            Output o;
            o.input = expr;
            Parsed p = parse_expression(expr);
            o.value = value_string(p);
            MzvPoly r = p.as_constant();
            o.reduced = to_string(r);
            o.numeric = numeric_of(r, opt);
            o.lines = {o.reduced};
            return o;
        };
    });
    auto* mzv_eval = mzv->add_subcommand("eval", "Numeric value");
    mzv_eval->add_option("expr", expr)->required();
    mzv_eval->callback([&] {
        action = [&] {
            Output o;
            o.input = expr;
            Parsed p = parse_expression(expr);
            o.value = value_string(p);
            num::Context ctx(opt.prec);
            if (p.kind == Parsed::Mzv) {
                o.numeric = num::to_decimal(num::mzv_numeric(p.mzv, ctx), opt.prec);
                o.reduced = to_string(p.as_constant());
            } else {
                MzvPoly r = p.as_constant();
                o.reduced = to_string(r);
                o.numeric = num::to_decimal(num::mzv_numeric(r, ctx), opt.prec);
            }
            o.lines = {o.numeric};
            return o;
        };
    });

    // svmp
    auto* svmp = app.add_subcommand("svmp", "Single-valued multiple polylogarithms");
    svmp->require_subcommand(1);
    auto* basis = svmp->add_subcommand("basis", "P_w in terms of L_u(zb) L_v(z)");
    basis->add_option("word", word, "Word over 0,1,2")->required();
    basis->add_flag("--p0", p0, "Print the naive P0_w instead");
    basis->callback([&] {
        action = [&] {
            Output o;
            o.input = word;
            Word012 w = parse_word012(word);
            o.value = to_string(p0 ? p_zero(w) : P(w));
            if (!p0) o.extra["c"] = w.size() >= 2 ? to_string(c_constant(w)) : "0";
            return o;
        };
    });
    auto* diff = svmp->add_subcommand("diff", "Derivative in z or zb");
    diff->add_option("expr", expr)->required();
    diff->add_option("--var", var, "z or zb")->capture_default_str();
    diff->callback([&] {
        action = [&] {
            Output o;
            o.input = expr;
            o.value = to_string(derive_A(parse_expression(expr).as_A(), parse_var(var)));
            return o;
        };
    });
    auto* integ = svmp->add_subcommand("int", "Primitive in z or zb");
    integ->add_option("expr", expr)->required();
    integ->add_option("--var", var, "z or zb")->capture_default_str();
    integ->add_option("--pole", pole, "Divide the integrand by (var - a) first")->check(CLI::IsMember({0, 1}));
    integ->add_option("--base", base, "Basepoint 0, 1 or inf")->capture_default_str();
    integ->callback([&] {
        action = [&] {
            Output o;
            o.input = expr;
            Var v = parse_var(var);
            AExpr e = parse_expression(expr).as_A();
            if (pole >= 0) {
                bool anti = v == Var::antihol;
                int i = pole == 0 ? -1 : 0, k = pole == 1 ? -1 : 0;
                e = e * AExpr::monomial(anti ? 0 : i, anti ? i : 0, anti ? 0 : k, anti ? k : 0);
            }
            o.value = to_string(integrate_A(e, v, parse_point(base)));
            o.provenance.push_back("basepoint " + base);
            return o;
        };
    });
    auto* sveval = svmp->add_subcommand("eval", "Evaluate at a point or on a grid");
    sveval->add_option("expr", expr)->required();
    auto* at_opt = sveval->add_option("--at", at, "Complex point a+bi");
    sveval->add_option("--grid", grid, "x0,x1,nx,y0,y1,ny; prints CSV rows x,y,re,im")->excludes(at_opt);
    sveval->callback([&] {
        action = [&] {
            Output o;
            o.input = expr;
            Parsed p = parse_expression(expr);
            o.value = value_string(p);
            num::Context ctx(opt.prec);
            auto eval = [&](const num::Complex& z) {
                if (p.kind == Parsed::B) return num::eval_B(p.as_B(), z, ctx);
                return num::eval_A(p.as_A(), z, ctx);
            };
            if (!grid.empty()) {
                std::vector<double> g;
                std::stringstream ss(grid);
                for (std::string t; std::getline(ss, t, ',');) g.push_back(std::stod(t));
                if (g.size() != 6 || g[2] < 1 || g[5] < 1) throw CLI::ValidationError("--grid", "expected x0,x1,nx,y0,y1,ny");
                o.lines.push_back("x,y,re,im");
                json rows = json::array();
                int nx = int(g[2]), ny = int(g[5]);
                for (int i = 0; i < nx; ++i)
                    for (int j = 0; j < ny; ++j) {
                        double x = nx == 1 ? g[0] : g[0] + (g[1] - g[0]) * i / (nx - 1);
                        double y = ny == 1 ? g[3] : g[3] + (g[4] - g[3]) * j / (ny - 1);
                        num::Complex z{num::Real(x), num::Real(y)};
                        num::Complex v = eval(z);
                        std::string re = num::to_decimal(v.re, 17), im = num::to_decimal(v.im, 17);
                        o.lines.push_back(num::to_decimal(z.re, 17) + "," + num::to_decimal(z.im, 17) + "," + re + "," + im);
                        rows.push_back({x, y, re, im});
                    }
                o.extra["grid"] = rows;
                return o;
            }
            if (at.empty()) throw CLI::ValidationError("--at", "a point or --grid is required");
            num::Complex v = eval(num::parse_complex(at));
            o.numeric = num::to_string(v, opt.prec);
            o.lines = {o.numeric};
            return o;
        };
    });

    // graphical functions
    auto* gf = app.add_subcommand("gf", "Graphical functions");
    gf->require_subcommand(1);
    auto* gfseq = gf->add_subcommand("seq", "Sequential graphical function f_w");
    gfseq->add_option("word", word)->required();
    gfseq->callback([&] {
        action = [&] {
            Output o;
            o.input = word;
            Word012 w = parse_word012(word);
            o.value = to_string(sequential_function(w));
            for (size_t i = 1; i <= w.size(); ++i) o.provenance.push_back("append edge after letter " + w.substr(i - 1, 1));
            return o;
        };
    });
    auto* gfgraph = gf->add_subcommand("graph", "Graphical function of a labeled graph (JSON file, '-' or inline)");
    gfgraph->add_option("graph", graph)->required();
    gfgraph->callback([&] {
        action = [&] {
            Output o;
            o.input = graph;
            auto c = construct_graphical_function(load_graph(graph));
            o.value = to_string(c.f);
            o.provenance = c.trace;
            return o;
        };
    });

    // periods
    auto* period = app.add_subcommand("period", "Periods of primitive graphs");
    period->require_subcommand(1);
    auto finish_period = [&](Output& o, const PeriodResult& r) {
        o.value = to_string(r.value);
        o.reduced = o.value;
        o.numeric = numeric_of(r.value, opt);
        o.provenance = r.provenance;
    };
    auto* pseq = period->add_subcommand("seq", "Period of the sequential graph G_w");
    pseq->add_option("word", word)->required();
    pseq->callback([&] {
        action = [&] {
            Output o;
            o.input = word;
            finish_period(o, sequential_period(parse_word012(word)));
            return o;
        };
    });
    auto* pgraph = period->add_subcommand("graph", "Period of a graph (completed if needed)");
    pgraph->add_option("graph", graph)->required();
    pgraph->add_option("--labels", labels, "Vertices for 0,1,z,inf, comma separated");
    pgraph->callback([&] {
        action = [&] {
            Output o;
            o.input = graph;
            GfGraph g = load_graph(graph);
            bool done = true;
            for (int v = 0; v < g.size(); ++v) done &= g.valency(v) == 4;
            if (!done) g = complete_period_graph(g);
            std::optional<std::array<int, 4>> lab;
            if (!labels.empty()) {
                std::array<int, 4> l{};
                std::stringstream ss(labels);
                int i = 0;
                for (std::string t; std::getline(ss, t, ',');) {
                    if (i >= 4) throw CLI::ValidationError("--labels", "expected four vertices");
                    l[i] = g.find(t);
                    if (l[i] < 0) throw CLI::ValidationError("--labels", "unknown vertex '" + t + "'");
                    ++i;
                }
                if (i != 4) throw CLI::ValidationError("--labels", "expected four vertices");
                lab = l;
            }
            finish_period(o, period_of_graph(g, lab));
            return o;
        };
    });
    auto* pzz = period->add_subcommand("zigzag", "Zig-zag period P(Z_n) by the sequential route");
    pzz->add_option("n", n)->required()->check(CLI::Range(3, 12));
    pzz->callback([&] {
        action = [&] {
            Output o;
            o.input = std::to_string(n);
            std::string w = zigzag_word(n);
            finish_period(o, sequential_period(w));
            o.provenance.insert(o.provenance.begin(), "dual word " + w);
            o.extra["closed_form"] = to_string(zigzag_closed_form(n));
            return o;
        };
    });
    auto* pmod = period->add_subcommand("modprod", "Period of G_{2w2} modulo products from zeta words");
    pmod->add_option("word", word)->required();
    pmod->callback([&] {
        action = [&] {
            Output o;
            o.input = word;
            MzvPoly r = period_mod_products(parse_word012(word));
            o.value = to_string(r);
            o.reduced = to_string(mod_products(r));
            o.lines = {o.value};
            return o;
        };
    });

    // expansions and integrals
    auto* expand = app.add_subcommand("expand", "Log-Laurent expansion as CSV rows point,k,m,n,coeff");
    expand->add_option("expr", expr)->required();
    expand->add_option("--at", at, "0, 1 or inf")->required();
    expand->add_option("--order", order, "Largest |m|, |n|")->capture_default_str()->check(CLI::Range(0, 40));
    expand->callback([&] {
        action = [&] {
            Output o;
            o.input = expr;
            Parsed p = parse_expression(expr);
            o.value = value_string(p);
            ExpansionBlock b = expand_at(p.kind == Parsed::B ? p.a : p.as_A(), parse_point(at), order);
            o.lines.push_back("point,k,m,n,coeff");
            json rows = json::array();
            for (const auto& [key, c] : b.c) {
                auto [k, m, nn] = key;
                std::string cs = to_string(c);
                o.lines.push_back(std::string(point_name(b.point)) + "," + std::to_string(k) + "," + std::to_string(m) + "," +
                                  std::to_string(nn) + "," + csv_field(cs));
                rows.push_back({point_name(b.point), k, m, nn, cs});
            }
            if (p.kind == Parsed::B) o.provenance.push_back("expansion of the numerator");
            o.extra["rows"] = rows;
            return o;
        };
    });
    auto* iplane = app.add_subcommand("integrate-plane", "(1/pi) integral over C d^2z by residues");
    iplane->add_option("expr", expr)->required();
    iplane->callback([&] {
        action = [&] {
            Output o;
            o.input = expr;
            auto r = integrate_plane(parse_expression(expr).as_A());
            o.value = to_string(r.value);
            o.reduced = o.value;
            o.numeric = numeric_of(r.value, opt);
            o.extra["convergent"] = r.convergent;
            o.lines = {o.value};
            if (!r.convergent) o.lines.push_back("divergent: formal value");
            return o;
        };
    });

    // checks
    auto* check = app.add_subcommand("check", "Convergence and classification");
    check->require_subcommand(1);
    auto* cgraph = check->add_subcommand("graph", "Power counting and completion of a labeled graph");
    cgraph->add_option("graph", graph)->required();
    cgraph->callback([&] {
        action = [&] {
            Output o;
            o.input = graph;
            GfGraph g = load_graph(graph);
            auto rep = check_convergence(g);
            std::string wit;
            for (int v : rep.witness) wit += (wit.empty() ? "" : ",") + g.names[v];
            o.value = rep.ok ? "convergent" : "divergent (" + rep.kind + "): " + wit;
            o.extra["convergent"] = rep.ok;
            if (g.labels[L0] >= 0 && g.labels[L1] >= 0 && g.labels[LZ] >= 0)
                o.extra["completion"] = json::parse(graph_to_json(complete(g)));
            return o;
        };
    });
    auto* cword = check->add_subcommand("word", "Classify a sequential word as zig-zag, A(m,n), B(m,n) or none");
    cword->add_option("word", word)->required();
    cword->callback([&] {
        action = [&] {
            Output o;
            o.input = word;
            o.value = classify_phi4_word(parse_word012(word)).str();
            return o;
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        configure_reducer(opt.weight_cap, std::nullopt);
        emit(opt, action());
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const MathError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
