// Command-line front end. Reads graphs, measures, cut families and vertex
// maps from plain text files and prints exact results (with a decimal
// rendering alongside) as 'key: value' lines, or as JSON with --json.
//
// Exit codes: 0 success, 1 internal failure, 2 unreadable or malformed
// input, 3 input violating a precondition, 4 an enumeration guard tripped,
// 5 a mathematical applicability condition failed.

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <kantor/kantor.hpp>

using namespace kantor;
using nlohmann::json;

namespace {

enum class Method { automatic, tree, cycle, split, envelope, lp };

Method parse_method(const std::string& name) {
    static const std::map<std::string, Method> names = {
        {"auto", Method::automatic},     {"tree", Method::tree},
        {"cycle", Method::cycle},        {"split", Method::split},
        {"envelope", Method::envelope},  {"lp", Method::lp},
    };
    auto it = names.find(name);
    if (it == names.end())
        throw ParseError("unknown method '" + name + "' (auto tree cycle split envelope lp)");
    return it->second;
}

// exact value, with a decimal approximation when it is not an integer
std::string show(const Rational& q) {
    if (q.get_den() == 1) return to_string(q);
    return to_string(q) + " (" + to_decimal(q) + ")";
}

json json_number(const Rational& q) {
    json j{{"exact", to_string(q)}};
    try {
        j["approx"] = std::stod(to_decimal(q));
    } catch (const std::exception&) {
        j["approx"] = to_decimal(q);
    }
    return j;
}

// Collects 'key: value' lines and a JSON object side by side; exactly one
// of them is printed at the end.
struct Report {
    bool as_json = false;
    json j;
    std::ostringstream text;

    void put(const std::string& key, const std::string& value) {
        text << key << ": " << value << "\n";
    }
    void put(const std::string& key, const Rational& value) { put(key, show(value)); }
    void flush() const {
        if (as_json)
            std::cout << j.dump(2) << "\n";
        else
            std::cout << text.str();
    }
};

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    return in;
}

WeightedGraph load_graph(const std::string& path) {
    std::ifstream in = open_input(path);
    return read_graph(in);
}

std::vector<Rational> load_measure(const std::string& path, const WeightedGraph& g) {
    std::ifstream in = open_input(path);
    return read_measure(in, g);
}

int resolve_root(const WeightedGraph& g, const std::string& label) {
    if (label.empty()) return 0;
    if (auto v = g.find_vertex(label)) return *v;
    throw ValidationError("unknown root vertex '" + label + "'");
}

std::string edge_name(const WeightedGraph& g, int e) {
    return g.label(g.edge(e).u) + "-" + g.label(g.edge(e).v);
}

// ---- norms and distances ----------------------------------------------

struct CycleCoordinates {
    std::vector<int> order;         // vertices in cyclic order, starting at vertex 0
    std::vector<Rational> weights;  // weights[i] joins order[i] to order[i+1 mod n]
};

CycleCoordinates cycle_coordinates(const WeightedGraph& g) {
    if (!g.is_cycle()) throw ValidationError("graph is not a single cycle");
    CycleCoordinates c;
    int prev = -1, cur = 0;
    do {
        c.order.push_back(cur);
        int next = -1, eid = -1;
        for (auto [y, e] : g.neighbors(cur))
            if (y != prev) {
                next = y;
                eid = e;
                break;
            }
        c.weights.push_back(g.edge(eid).w);
        prev = cur;
        cur = next;
    } while (cur != 0);
    return c;
}

Method resolve_auto(const WeightedGraph& g, Method m) {
    if (m != Method::automatic) return m;
    if (g.is_tree()) return Method::tree;
    if (g.is_cycle()) return Method::cycle;
    if (!articulation_vertices(g).empty()) return Method::split;
    return Method::envelope;
}

// Shared by `dist` and `norm`: picks the route, computes the exact value,
// and reports route-specific detail (dual potential, omitted edge, ...).
void run_value(const std::string& value_key, const WeightedGraph& g, const ZeroMassVector& xi,
               Method requested, const std::string& root_label, int sign0,
               unsigned long long limit, Report& out) {
    Method m = resolve_auto(g, requested);
    for (;;) {
        try {
            switch (m) {
                case Method::tree: {
                    RootedTree t = root_tree(g, resolve_root(g, root_label));
                    TreeNorm n = tree_norm(t, xi);
                    LipschitzFunction u = aligned_dual(t, xi, sign0);
                    if (dot(xi.values(), u.values()) != n.value)
                        throw Error("dual potential failed to certify the value");
                    out.put("method", "tree");
                    out.put("root", g.label(t.root));
                    out.put(value_key, n.value);
                    out.j["method"] = "tree";
                    out.j["root"] = g.label(t.root);
                    out.j[value_key] = json_number(n.value);
                    for (int v = 0; v < g.vertex_count(); ++v) {
                        out.put("potential " + g.label(v), u(v));
                        out.j["potential"][g.label(v)] = to_string(u(v));
                    }
                    return;
                }
                case Method::cycle: {
                    CycleCoordinates cc = cycle_coordinates(g);
                    std::vector<Rational> turned;
                    for (int v : cc.order) turned.push_back(xi(v));
                    CycleNorm n = cycle_norm(cc.weights, ZeroMassVector(std::move(turned)));
                    int a = cc.order[n.deleted_edge];
                    int b = cc.order[(n.deleted_edge + 1) % g.vertex_count()];
                    out.put("method", "cycle");
                    out.put(value_key, n.value);
                    out.put("shift", n.minimizer);
                    out.put("omitted edge", g.label(a) + "-" + g.label(b));
                    out.j["method"] = "cycle";
                    out.j[value_key] = json_number(n.value);
                    out.j["shift"] = json_number(n.minimizer);
                    out.j["omitted_edge"] = {g.label(a), g.label(b)};
                    return;
                }
                case Method::split: {
                    Rational value = decomposed_norm(g, xi, limit);
                    std::vector<int> cuts = articulation_vertices(g);
                    std::string at;
                    for (int v : cuts) at += (at.empty() ? "" : " ") + g.label(v);
                    out.put("method", "split");
                    out.put(value_key, value);
                    out.put("articulation vertices", at.empty() ? "none" : at);
                    out.j["method"] = "split";
                    out.j[value_key] = json_number(value);
                    out.j["articulation_vertices"] = json::array();
                    for (int v : cuts) out.j["articulation_vertices"].push_back(g.label(v));
                    return;
                }
                case Method::envelope: {
                    EnvelopeNorm n = envelope_norm(g, xi, limit);
                    std::string edges;
                    for (int e : n.tree_edges) edges += (edges.empty() ? "" : " ") + edge_name(g, e);
                    out.put("method", "envelope");
                    out.put(value_key, n.value);
                    out.put("spanning trees", std::to_string(n.tree_count));
                    out.put("tree edges", edges);
                    out.j["method"] = "envelope";
                    out.j[value_key] = json_number(n.value);
                    out.j["spanning_trees"] = n.tree_count;
                    out.j["tree_edges"] = json::array();
                    for (int e : n.tree_edges)
                        out.j["tree_edges"].push_back({g.edge(e).u, g.edge(e).v});
                    return;
                }
                case Method::lp:
                case Method::automatic: {
                    Rational value = kb_norm(all_pairs_shortest_paths(g), xi);
                    out.put("method", "lp");
                    out.put(value_key, value);
                    out.j["method"] = "lp";
                    out.j[value_key] = json_number(value);
                    return;
                }
            }
        } catch (const CapacityError&) {
            // only the automatic route may retreat to the generic program
            if (requested != Method::automatic ||
                (m != Method::envelope && m != Method::split))
                throw;
            out.put("note", "enumeration exceeded the limit; using the transport program");
            out.j["note"] = "enumeration exceeded the limit; using the transport program";
            m = Method::lp;
        }
    }
}

// ---- subcommand drivers -------------------------------------------------

struct CommonArgs {
    std::string graph, mu, nu, xi, cuts, map_file, eta, root, method = "auto";
    int sign0 = 1;
    unsigned long long limit = default_tree_limit;
    bool as_json = false;
    bool verify = false;
};

void run_dist(const CommonArgs& a, Report& out) {
    WeightedGraph g = load_graph(a.graph);
    ProbabilityFunction mu(load_measure(a.mu, g));
    ProbabilityFunction nu(load_measure(a.nu, g));
    run_value("distance", g, zero_mass_from_pair(mu, nu), parse_method(a.method), a.root,
              a.sign0, a.limit, out);
}

void run_norm(const CommonArgs& a, Report& out) {
    WeightedGraph g = load_graph(a.graph);
    ZeroMassVector xi(load_measure(a.xi, g));
    run_value("norm", g, xi, parse_method(a.method), a.root, a.sign0, a.limit, out);
}

void run_cycle(const CommonArgs& a, Report& out) {
    WeightedGraph g = load_graph(a.graph);
    ZeroMassVector xi(load_measure(a.xi, g));
    run_value("norm", g, xi, Method::cycle, a.root, a.sign0, a.limit, out);
}

void print_plan(const WeightedGraph& g, const Coupling& plan, Report& out) {
    out.j["plan"] = json::array();
    for (const CouplingEntry& e : plan.entries()) {
        if (e.x == e.y)
            out.put("stay " + g.label(e.x), e.mass);
        else
            out.put("move " + g.label(e.x) + " -> " + g.label(e.y), e.mass);
        out.j["plan"].push_back(
            {{"from", g.label(e.x)}, {"to", g.label(e.y)}, {"mass", json_number(e.mass)}});
    }
}

void run_plan(const CommonArgs& a, Report& out) {
    Method m = parse_method(a.method);
    if (m != Method::automatic && m != Method::tree && m != Method::lp)
        throw ValidationError("plan supports methods auto, tree and lp");
    WeightedGraph g = load_graph(a.graph);
    ProbabilityFunction mu(load_measure(a.mu, g));
    ProbabilityFunction nu(load_measure(a.nu, g));

    std::optional<Coupling> plan;
    Rational cost;
    if (m == Method::tree || (m == Method::automatic && g.is_tree())) {
        RootedTree t = root_tree(g, resolve_root(g, a.root));
        TreeCoupling tc = optimal_tree_coupling(t, mu, nu);
        if (tc.plan) {
            out.put("method", "tree");
            out.j["method"] = "tree";
            plan = std::move(tc.plan);
            cost = std::move(tc.cost);
        } else if (m == Method::tree) {
            // forced: report the failed per-vertex condition, then give up
            out.j["method"] = "tree";
            out.j["feasible"] = false;
            out.j["condition"] = json::array();
            for (const VertexCondition& c : tc.report.mu_side) {
                out.put("condition " + g.label(c.x),
                        "available " + show(c.available) + ", required " + show(c.required) +
                            (c.ok ? ", ok" : ", VIOLATED"));
                out.j["condition"].push_back({{"vertex", g.label(c.x)},
                                              {"available", json_number(c.available)},
                                              {"required", json_number(c.required)},
                                              {"ok", c.ok}});
            }
            out.flush();
            throw ConditionError("the closed-form coupling does not exist for these measures");
        } else {
            out.put("note", "closed form infeasible here; using the transport program");
            out.j["note"] = "closed form infeasible here; using the transport program";
        }
    }
    if (!plan) {
        LpDistance lp = primal_lp_distance(all_pairs_shortest_paths(g), mu, nu);
        if (!out.j.contains("method")) {
            out.put("method", "lp");
            out.j["method"] = "lp";
        }
        plan = std::move(lp.plan);
        cost = std::move(lp.value);
    }
    out.put("cost", cost);
    out.j["cost"] = json_number(cost);
    out.j["feasible"] = true;
    print_plan(g, *plan, out);
    if (a.verify) {
        CouplingCheck check = verify_coupling(*plan, all_pairs_shortest_paths(g));
        if (!check.feasible || check.cost != cost)
            throw Error("emitted plan failed its own verification");
        out.put("verified", "margins and cost confirmed");
        out.j["verified"] = true;
    }
}

void run_barycenter(const CommonArgs& a, Report& out) {
    WeightedGraph g = load_graph(a.graph);
    ProbabilityFunction mu(load_measure(a.mu, g));
    Barycenter b = barycenter(all_pairs_shortest_paths(g), mu);
    out.put("vertex", g.label(b.vertex));
    out.put("mean distance", b.value);
    out.j["vertex"] = g.label(b.vertex);
    out.j["mean_distance"] = json_number(b.value);
    for (int v = 0; v < g.vertex_count(); ++v) {
        out.put("mean at " + g.label(v), b.transport[v]);
        out.j["means"][g.label(v)] = to_string(b.transport[v]);
    }
}

void run_cutnorm(const CommonArgs& a, Report& out) {
    std::vector<std::string> labels;
    std::vector<CutEntry> entries;
    std::vector<Rational> mass;

    if (!a.graph.empty()) {
        WeightedGraph g = load_graph(a.graph);
        std::ifstream cuts_in = open_input(a.cuts);
        CutFamily c = read_cut_family(cuts_in, g);
        labels = g.labels();
        entries = c.entries();
        mass = load_measure(a.xi, g);
    } else {
        // ambient vertex set: labels as they appear, cut file first
        std::ifstream cuts_in = open_input(a.cuts);
        std::vector<CutLine> cut_lines = read_cut_lines(cuts_in);
        std::ifstream xi_in = open_input(a.xi);
        std::vector<MeasureLine> mass_lines = read_measure_lines(xi_in);
        std::map<std::string, int> index;
        auto intern = [&](const std::string& label) {
            auto [it, fresh] = index.try_emplace(label, static_cast<int>(labels.size()));
            if (fresh) labels.push_back(label);
            return it->second;
        };
        for (const CutLine& line : cut_lines)
            for (const std::string& label : line.labels) intern(label);
        for (const MeasureLine& line : mass_lines) intern(line.label);
        if (labels.size() > 64)
            throw CapacityError("cut subsets are stored as 64-bit masks; vertex count " +
                                    std::to_string(labels.size()) + " exceeds that",
                                labels.size());
        for (const CutLine& line : cut_lines) {
            CutEntry e{0, line.lambda};
            for (const std::string& label : line.labels)
                e.members |= std::uint64_t(1) << index.at(label);
            entries.push_back(std::move(e));
        }
        mass.assign(labels.size(), Rational(0));
        for (MeasureLine& line : mass_lines) mass[index.at(line.label)] = std::move(line.mass);
    }

    CutFamily c(static_cast<int>(labels.size()), std::move(entries));
    ZeroMassVector xi(std::move(mass));
    CutNorm n = cut_norm(c, xi);
    out.put("subsets", std::to_string(c.entries().size()));
    out.put("norm", n.value);
    out.j["subsets"] = c.entries().size();
    out.j["norm"] = json_number(n.value);
    out.j["cuts"] = json::array();
    for (std::size_t i = 0; i < c.entries().size(); ++i) {
        const CutEntry& e = c.entries()[i];
        std::string members;
        json member_list = json::array();
        for (std::size_t v = 0; v < labels.size(); ++v)
            if (e.members >> v & 1) {
                members += (members.empty() ? "" : " ") + labels[v];
                member_list.push_back(labels[v]);
            }
        out.put("cut " + std::to_string(i + 1) + " {" + members + "}",
                "weight " + show(e.lambda) + ", catches " + show(cut_mass(e, xi)) +
                    ", contributes " + show(n.contributions[i]));
        out.j["cuts"].push_back({{"members", member_list},
                                 {"lambda", json_number(e.lambda)},
                                 {"mass", json_number(cut_mass(e, xi))},
                                 {"contribution", json_number(n.contributions[i])}});
    }
    if (a.verify) {
        Rational via = cut_norm_via_potentials(adapt_realization(c, 0), xi, a.sign0);
        if (via != n.value) throw Error("potential route disagrees with the cut norm");
        out.put("verified", "potential route agrees");
        out.j["verified"] = true;
    }
}

void run_quotient(const CommonArgs& a, Report& out) {
    WeightedGraph source = load_graph(a.graph);
    std::ifstream map_in = open_input(a.map_file);
    std::vector<MapLine> lines = read_map_lines(map_in);

    std::vector<int> q(source.vertex_count(), -1);
    std::vector<std::string> target_labels;
    std::map<std::string, int> target_index;
    for (const MapLine& line : lines) {
        auto sv = source.find_vertex(line.source);
        if (!sv) throw ParseError("unknown vertex '" + line.source + "'", line.line);
        auto [it, fresh] =
            target_index.try_emplace(line.target, static_cast<int>(target_labels.size()));
        if (fresh) target_labels.push_back(line.target);
        q[*sv] = it->second;
    }
    for (int v = 0; v < source.vertex_count(); ++v)
        if (q[v] < 0)
            throw ValidationError("map gives no image for vertex '" + source.label(v) + "'");

    WeightedGraph target = quotient_graph(source, q, std::move(target_labels));
    ZeroMassVector eta(load_measure(a.eta, target));
    QuotientMap qm(std::move(source), std::move(target), std::move(q));
    DistanceMatrix dX = all_pairs_shortest_paths(qm.source);
    DistanceMatrix dY = all_pairs_shortest_paths(qm.target);
    QuotientNorm qn = quotient_norm(qm, dX, dY, eta);

    out.put("target vertices", std::to_string(qm.target.vertex_count()));
    out.put("target edges", std::to_string(qm.target.edge_count()));
    out.put("value", qn.value);
    out.j["target"]["vertices"] = qm.target.vertex_count();
    out.j["target"]["edges"] = json::array();
    for (const Edge& e : qm.target.edges())
        out.j["target"]["edges"].push_back(
            {{"from", qm.target.label(e.u)}, {"to", qm.target.label(e.v)}, {"weight", to_string(e.w)}});
    out.j["value"] = json_number(qn.value);
    for (int v = 0; v < qm.source.vertex_count(); ++v)
        if (sgn(qn.lift[v]) != 0) {
            out.put("lift " + qm.source.label(v), qn.lift[v]);
            out.j["lift"][qm.source.label(v)] = to_string(qn.lift[v]);
        }
}

void run_check(const CommonArgs& a, Report& out) {
    WeightedGraph g = load_graph(a.graph);
    out.put("vertices", std::to_string(g.vertex_count()));
    out.put("edges", std::to_string(g.edge_count()));
    std::string shape = g.is_tree() ? "tree" : g.is_cycle() ? "cycle" : "general";
    out.put("shape", shape);
    out.j["vertices"] = g.vertex_count();
    out.j["edges"] = g.edge_count();
    out.j["shape"] = shape;

    DistanceMatrix d = all_pairs_shortest_paths(g);
    MetricReport metric = validate_metric(d);
    out.put("metric", metric.ok() ? "ok" : metric.describe());
    out.j["metric"] = metric.ok() ? "ok" : metric.describe();

    std::vector<int> close = close_edges(g, d);
    out.put("close edges", std::to_string(close.size()) + " of " + std::to_string(g.edge_count()));
    out.j["close_edges"] = close.size();

    std::vector<int> cuts = articulation_vertices(g);
    std::string at;
    for (int v : cuts) at += (at.empty() ? "" : " ") + g.label(v);
    out.put("articulation vertices", at.empty() ? "none" : at);
    out.j["articulation_vertices"] = json::array();
    for (int v : cuts) out.j["articulation_vertices"].push_back(g.label(v));

    try {
        unsigned long long count = count_spanning_trees(g, a.limit);
        out.put("spanning trees", std::to_string(count));
        out.j["spanning_trees"] = count;
    } catch (const CapacityError&) {
        out.put("spanning trees", "more than " + std::to_string(a.limit));
        out.j["spanning_trees"] = "more than " + std::to_string(a.limit);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact transport distances, couplings and norms on finite weighted graphs"};
    app.require_subcommand(1);
    CommonArgs a;

    auto add_method = [&](CLI::App* cmd) {
        cmd->add_option("--method", a.method, "auto, tree, cycle, split, envelope or lp");
        cmd->add_option("--root", a.root, "root vertex for tree computations");
        cmd->add_option("--sign0", a.sign0, "sign for vanishing masses, +1 or -1");
        cmd->add_option("--limit", a.limit, "spanning tree enumeration cap");
    };
    auto add_json = [&](CLI::App* cmd) { cmd->add_flag("--json", a.as_json, "emit JSON"); };

    CLI::App* dist = app.add_subcommand("dist", "distance between two probability measures");
    dist->add_option("--graph", a.graph, "graph file")->required();
    dist->add_option("--mu", a.mu, "first probability measure")->required();
    dist->add_option("--nu", a.nu, "second probability measure")->required();
    add_method(dist);
    add_json(dist);

    CLI::App* norm = app.add_subcommand("norm", "norm of a zero-mass vector");
    norm->add_option("--graph", a.graph, "graph file")->required();
    norm->add_option("--xi", a.xi, "zero-mass vector")->required();
    add_method(norm);
    add_json(norm);

    CLI::App* cycle = app.add_subcommand("cycle", "cycle closed form for the norm");
    cycle->add_option("--graph", a.graph, "graph file, must be a single cycle")->required();
    cycle->add_option("--xi", a.xi, "zero-mass vector")->required();
    add_json(cycle);

    CLI::App* plan = app.add_subcommand("plan", "optimal coupling between two measures");
    plan->add_option("--graph", a.graph, "graph file")->required();
    plan->add_option("--mu", a.mu, "source probability measure")->required();
    plan->add_option("--nu", a.nu, "target probability measure")->required();
    plan->add_flag("--verify", a.verify, "re-check margins and cost");
    add_method(plan);
    add_json(plan);

    CLI::App* bary = app.add_subcommand("barycenter", "vertex minimizing the mean distance");
    bary->add_option("--graph", a.graph, "graph file")->required();
    bary->add_option("--mu", a.mu, "probability measure")->required();
    add_json(bary);

    CLI::App* cutnorm = app.add_subcommand("cutnorm", "norm induced by a weighted cut family");
    cutnorm->add_option("--cuts", a.cuts, "cut family file")->required();
    cutnorm->add_option("--xi", a.xi, "zero-mass vector")->required();
    cutnorm->add_option("--graph", a.graph, "optional ambient graph for the labels");
    cutnorm->add_option("--sign0", a.sign0, "sign for vanishing masses, +1 or -1");
    cutnorm->add_flag("--verify", a.verify, "re-derive the norm through signed potentials");
    add_json(cutnorm);

    CLI::App* quotient = app.add_subcommand("quotient", "norm on an image graph, via lifting");
    quotient->add_option("--graph", a.graph, "source graph file")->required();
    quotient->add_option("--map", a.map_file, "source-to-target label map")->required();
    quotient->add_option("--eta", a.eta, "zero-mass vector on the target labels")->required();
    add_json(quotient);

    CLI::App* check = app.add_subcommand("check", "report a graph's shape and metric facts");
    check->add_option("--graph", a.graph, "graph file")->required();
    check->add_option("--limit", a.limit, "spanning tree enumeration cap");
    add_json(check);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    Report out;
    out.as_json = a.as_json;
    try {
        if (a.sign0 != 1 && a.sign0 != -1) throw ValidationError("sign0 must be +1 or -1");
        if (dist->parsed()) run_dist(a, out);
        else if (norm->parsed()) run_norm(a, out);
        else if (cycle->parsed()) run_cycle(a, out);
        else if (plan->parsed()) run_plan(a, out);
        else if (bary->parsed()) run_barycenter(a, out);
        else if (cutnorm->parsed()) run_cutnorm(a, out);
        else if (quotient->parsed()) run_quotient(a, out);
        else if (check->parsed()) run_check(a, out);
        out.flush();
        return 0;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const CapacityError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const ConditionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 5;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
