#include "qca/cayley.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

namespace qca::cayley {

Word concat(const Word& a, const Word& b) {
    Word out = a;
    out.letters.insert(out.letters.end(), b.letters.begin(), b.letters.end());
    return out;
}

Word inverse_word(const Word& w) {
    Word out;
    out.letters.reserve(w.letters.size());
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
        out.letters.push_back({it->gen, -it->exp});
    return out;
}

Word reduce_word(const Word& w) {
    Word out;
    out.letters.reserve(w.letters.size());
    for (const Letter& l : w.letters) {
        if (l.exp != 1 && l.exp != -1) throw GraphError("word letter exponent must be +1 or -1");
        if (!out.letters.empty() && out.letters.back().gen == l.gen &&
            out.letters.back().exp == -l.exp) {
            out.letters.pop_back();
        } else {
            out.letters.push_back(l);
        }
    }
    return out;
}

const Generator* GroupPresentation::find_generator(int id) const {
    for (const Generator& g : generators)
        if (g.id == id) return &g;
    return nullptr;
}

IVec GroupPresentation::letter_vector(const Letter& l) const {
    auto it = vectors.find(l.gen);
    if (it == vectors.end()) throw GraphError("no integer vector declared for generator " + std::to_string(l.gen));
    return l.exp > 0 ? it->second : IVec(-it->second);
}

IVec GroupPresentation::word_vector(const Word& w) const {
    if (!abelian_rank) throw GraphError("word_vector requires a declared-Abelian presentation");
    IVec sum = IVec::Zero(*abelian_rank);
    for (const Letter& l : w.letters) sum += letter_vector(l);
    return sum;
}

void GroupPresentation::validate() const {
    std::set<int> ids;
    for (const Generator& g : generators) {
        if (!ids.insert(g.id).second) throw GraphError("duplicate generator id " + std::to_string(g.id));
    }
    for (const Generator& g : generators) {
        if (g.inverse_of) {
            const Generator* inv = find_generator(*g.inverse_of);
            if (!inv) throw GraphError("inverse_of references unknown generator");
            if (!inv->inverse_of || *inv->inverse_of != g.id)
                throw GraphError("inverse pairing is not an involution");
        }
    }
    for (const Word& r : relators)
        for (const Letter& l : r.letters)
            if (!ids.count(l.gen)) throw GraphError("relator uses undeclared generator");
    if (abelian_rank) {
        for (const Generator& g : generators) {
            auto it = vectors.find(g.id);
            if (it == vectors.end() || it->second.size() != *abelian_rank)
                throw GraphError("declared-Abelian presentation lacks an integer vector for a generator");
        }
        for (const Word& r : relators) {
            if (word_vector(r).cwiseAbs().sum() != 0)
                throw GraphError("relator vector sum is nonzero in a declared-Abelian presentation");
        }
    }
}

Word reduce_word(const GroupPresentation& p, const Word& w) {
    for (const Letter& l : w.letters)
        if (!p.find_generator(l.gen)) throw GraphError("unknown generator id " + std::to_string(l.gen));
    return reduce_word(w);
}

void ColoredGraph::build_index() {
    out_.clear();
    in_.clear();
    degree_.clear();
    for (int v : vertices) degree_[v] = 0;
    for (const Edge& e : edges) {
        if (e.directed) {
            out_[{e.tail, e.color}] = e.head;
            in_[{e.head, e.color}] = e.tail;
        } else {
            // Undirected edges are navigable from both endpoints in either sense.
            out_[{e.tail, e.color}] = e.head;
            out_[{e.head, e.color}] = e.tail;
            in_[{e.tail, e.color}] = e.head;
            in_[{e.head, e.color}] = e.tail;
        }
        degree_[e.tail] += 1;
        if (e.head != e.tail) degree_[e.head] += 1;
    }
}

std::optional<int> ColoredGraph::neighbor(int vertex_label, int color, int exp) const {
    const auto& table = (exp >= 0) ? out_ : in_;
    auto it = table.find({vertex_label, color});
    if (it == table.end()) return std::nullopt;
    return it->second;
}

std::size_t ColoredGraph::degree(int vertex_label) const {
    auto it = degree_.find(vertex_label);
    return it == degree_.end() ? 0 : it->second;
}

std::string ColoredGraph::to_edge_list() const {
    std::ostringstream os;
    for (const Edge& e : edges)
        os << e.tail << ' ' << e.head << ' ' << e.color << ' '
           << (e.directed ? "directed" : "undirected") << '\n';
    return os.str();
}

int apply_word(const ColoredGraph& g, int v, const Word& w) {
    int cur = v;
    for (const Letter& l : w.letters) {
        auto next = g.neighbor(cur, l.gen, l.exp);
        if (!next)
            throw GraphError("missing edge: vertex " + std::to_string(cur) + ", color " +
                             std::to_string(l.gen) + ", exponent " + std::to_string(l.exp));
        cur = *next;
    }
    return cur;
}

HomogeneityReport homogeneity_path_check(const ColoredGraph& g, const Word& w,
                                         const std::vector<int>& sample) {
    HomogeneityReport report;
    for (int v : sample) {
        if (apply_word(g, v, w) == v)
            report.closed_vertices.push_back(v);
        else
            report.open_vertices.push_back(v);
    }
    report.uniform = report.closed_vertices.empty() || report.open_vertices.empty();
    return report;
}

namespace {

struct IVecLess {
    bool operator()(const IVec& a, const IVec& b) const {
        if (a.size() != b.size()) return a.size() < b.size();
        for (int i = 0; i < a.size(); ++i)
            if (a[i] != b[i]) return a[i] < b[i];
        return false;
    }
};

/// Generator moves of a declared-Abelian presentation: one (color, exponent,
/// vector) entry per navigable direction, inverses included once.
struct Move {
    int color;
    int exp;
    IVec vec;
};

std::vector<Move> moves_of(const GroupPresentation& p) {
    std::vector<Move> moves;
    for (const Generator& g : p.generators) {
        IVec v = p.vectors.at(g.id);
        moves.push_back({g.id, +1, v});
        if (!g.self_inverse()) moves.push_back({g.id, -1, IVec(-v)});
    }
    return moves;
}

}  // namespace

ColoredGraph cayley_ball(const GroupPresentation& p, int radius) {
    if (!p.is_abelian_declared())
        throw GraphError("cayley_ball supports only declared-Abelian presentations");
    p.validate();
    if (radius < 0) throw GraphError("negative ball radius");

    const int d = *p.abelian_rank;
    const std::vector<Move> moves = moves_of(p);

    std::map<IVec, int, IVecLess> label_of;  // coordinate -> vertex label (BFS order)
    std::vector<IVec> coords;
    std::deque<std::pair<IVec, int>> frontier;  // (coordinate, depth)
    IVec origin = IVec::Zero(d);
    label_of[origin] = 0;
    coords.push_back(origin);
    frontier.push_back({origin, 0});
    while (!frontier.empty()) {
        auto [c, depth] = frontier.front();
        frontier.pop_front();
        if (depth == radius) continue;
        for (const Move& m : moves) {
            IVec n = c + m.vec;
            if (!label_of.count(n)) {
                int label = static_cast<int>(coords.size());
                label_of[n] = label;
                coords.push_back(n);
                frontier.push_back({n, depth + 1});
            }
        }
    }

    ColoredGraph g;
    g.vertices.resize(coords.size());
    for (std::size_t i = 0; i < coords.size(); ++i) {
        g.vertices[i] = static_cast<int>(i);
        g.coordinates[static_cast<int>(i)] = coords[i];
    }
    for (const Generator& gen : p.generators) g.color_directed[gen.id] = !gen.self_inverse();
    for (std::size_t i = 0; i < coords.size(); ++i) {
        for (const Generator& gen : p.generators) {
            IVec head = coords[i] + p.vectors.at(gen.id);
            auto it = label_of.find(head);
            if (it == label_of.end()) continue;  // boundary: edge absent by design
            if (!gen.self_inverse()) {
                g.edges.push_back({static_cast<int>(i), it->second, gen.id, true});
            } else if (static_cast<int>(i) <= it->second) {
                g.edges.push_back({static_cast<int>(i), it->second, gen.id, false});
            }
        }
    }
    g.build_index();
    return g;
}

int word_metric(const GroupPresentation& p, const IVec& g1, const IVec& g2, int max_radius) {
    if (!p.is_abelian_declared())
        throw GraphError("word_metric supports only declared-Abelian presentations");
    IVec target = g2 - g1;
    if (target.cwiseAbs().sum() == 0) return 0;
    const std::vector<Move> moves = moves_of(p);
    std::set<IVec, IVecLess> seen;
    std::deque<std::pair<IVec, int>> frontier;
    IVec origin = IVec::Zero(target.size());
    seen.insert(origin);
    frontier.push_back({origin, 0});
    while (!frontier.empty()) {
        auto [c, depth] = frontier.front();
        frontier.pop_front();
        if (depth >= max_radius) break;
        for (const Move& m : moves) {
            IVec n = c + m.vec;
            if (n == target) return depth + 1;
            if (seen.insert(n).second) frontier.push_back({n, depth + 1});
        }
    }
    throw GraphError("word_metric: target unreachable within radius " + std::to_string(max_radius));
}

namespace {

/// Standard-labeling Petersen edges: outer 5-cycle 0..4, spokes i-(i+5),
/// inner pentagram 5+i to 5+((i+2) mod 5).
std::vector<std::pair<int, int>> petersen_edges() {
    std::set<std::pair<int, int>> edges;
    auto add = [&edges](int a, int b) { edges.insert({std::min(a, b), std::max(a, b)}); };
    for (int i = 0; i < 5; ++i) {
        add(i, (i + 1) % 5);
        add(i, i + 5);
        add(5 + i, 5 + (i + 2) % 5);
    }
    return {edges.begin(), edges.end()};
}

/// Decomposes a 2-regular edge set into cycles; each cycle starts at its
/// smallest vertex and walks towards that vertex's smallest-index neighbor.
std::vector<std::vector<int>> cycles_of(const std::vector<std::pair<int, int>>& edges) {
    std::map<int, std::vector<int>> adj;
    std::vector<std::pair<int, int>> sorted = edges;
    std::sort(sorted.begin(), sorted.end());
    for (auto [a, b] : sorted) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    std::set<int> seen;
    std::vector<std::vector<int>> cycles;
    for (const auto& [v, _] : adj) {
        if (seen.count(v)) continue;
        std::vector<int> cyc{v};
        seen.insert(v);
        int prev = -1, cur = v;
        while (true) {
            int next = -1;
            for (int w : adj[cur])
                if (w != prev) {
                    next = w;
                    break;
                }
            if (next == v) break;
            cyc.push_back(next);
            seen.insert(next);
            prev = cur;
            cur = next;
        }
        cycles.push_back(cyc);
    }
    return cycles;
}

int walk_brrbr(const std::map<int, int>& bmap, const std::map<int, int>& rmap, int v) {
    v = bmap.at(v);
    v = rmap.at(v);
    v = rmap.at(v);
    v = bmap.at(v);
    v = rmap.at(v);
    return v;
}

std::vector<PetersenColoring> search_petersen_colorings() {
    const std::vector<std::pair<int, int>> all_edges = petersen_edges();
    const int m = static_cast<int>(all_edges.size());
    std::vector<PetersenColoring> solutions;

    // Enumerate 5-subsets of the 15 edges; keep perfect matchings.
    std::vector<int> idx{0, 1, 2, 3, 4};
    auto next_combination = [&]() -> bool {
        int i = 4;
        while (i >= 0 && idx[i] == m - 5 + i) --i;
        if (i < 0) return false;
        ++idx[i];
        for (int j = i + 1; j < 5; ++j) idx[j] = idx[j - 1] + 1;
        return true;
    };
    do {
        std::set<int> covered;
        bool matching = true;
        for (int i : idx) {
            auto [a, b] = all_edges[i];
            if (!covered.insert(a).second || !covered.insert(b).second) {
                matching = false;
                break;
            }
        }
        if (!matching || covered.size() != 10) continue;

        std::map<int, int> bmap;
        std::vector<std::pair<int, int>> b_edges;
        for (int i : idx) {
            auto [a, b] = all_edges[i];
            bmap[a] = b;
            bmap[b] = a;
            b_edges.push_back({a, b});
        }
        std::vector<std::pair<int, int>> rest;
        for (int i = 0; i < m; ++i)
            if (std::find(idx.begin(), idx.end(), i) == idx.end()) rest.push_back(all_edges[i]);
        const std::vector<std::vector<int>> cycles = cycles_of(rest);

        for (int bits = 0; bits < (1 << cycles.size()); ++bits) {
            std::map<int, int> rmap;
            for (std::size_t ci = 0; ci < cycles.size(); ++ci) {
                std::vector<int> cyc = cycles[ci];
                if ((bits >> ci) & 1) std::reverse(cyc.begin(), cyc.end());
                for (std::size_t i = 0; i < cyc.size(); ++i)
                    rmap[cyc[i]] = cyc[(i + 1) % cyc.size()];
            }
            PetersenColoring sol;
            sol.b_edges = b_edges;
            for (const auto& [a, b] : rmap) sol.r_arcs.push_back({a, b});
            for (int v = 0; v < 10; ++v) {
                if (walk_brrbr(bmap, rmap, v) == v)
                    sol.closed_vertices.push_back(v);
                else
                    sol.open_vertices.push_back(v);
            }
            if (sol.closed_vertices.empty() || sol.open_vertices.empty()) continue;
            std::sort(sol.b_edges.begin(), sol.b_edges.end());
            std::sort(sol.r_arcs.begin(), sol.r_arcs.end());
            solutions.push_back(std::move(sol));
        }
    } while (next_combination());

    std::sort(solutions.begin(), solutions.end(), [](const PetersenColoring& x, const PetersenColoring& y) {
        if (x.b_edges != y.b_edges) return x.b_edges < y.b_edges;
        return x.r_arcs < y.r_arcs;
    });
    return solutions;
}

}  // namespace

std::vector<PetersenColoring> petersen_colorings() {
    static const std::vector<PetersenColoring> solutions = search_petersen_colorings();
    return solutions;
}

ColoredGraph petersen_graph() {
    const std::vector<PetersenColoring> solutions = petersen_colorings();
    if (solutions.empty()) throw GraphError("Petersen coloring search found no admissible solution");
    const PetersenColoring& canonical = solutions.front();

    std::map<int, int> bmap, rmap, rinv;
    for (auto [a, b] : canonical.b_edges) {
        bmap[a] = b;
        bmap[b] = a;
    }
    for (auto [a, b] : canonical.r_arcs) {
        rmap[a] = b;
        rinv[b] = a;
    }

    // Deterministic relabeling to 1..10: least closed vertex -> 1, least open
    // vertex -> 2, endpoint of brrbr from the new 2 -> 3, remainder by BFS
    // from the seed queue over sorted neighbor sets.
    const int v1 = *std::min_element(canonical.closed_vertices.begin(), canonical.closed_vertices.end());
    const int v2 = *std::min_element(canonical.open_vertices.begin(), canonical.open_vertices.end());
    const int v3 = walk_brrbr(bmap, rmap, v2);
    std::vector<int> order{v1, v2, v3};
    std::set<int> seen(order.begin(), order.end());
    std::deque<int> queue(order.begin(), order.end());
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        std::set<int> nbrs{bmap.at(v), rmap.at(v), rinv.at(v)};
        for (int w : nbrs) {
            if (seen.insert(w).second) {
                order.push_back(w);
                queue.push_back(w);
            }
        }
    }
    std::map<int, int> relabel;
    for (std::size_t i = 0; i < order.size(); ++i) relabel[order[i]] = static_cast<int>(i) + 1;

    ColoredGraph g;
    for (int v = 1; v <= 10; ++v) g.vertices.push_back(v);
    g.color_directed[petersen_color_b] = false;
    g.color_directed[petersen_color_r] = true;
    for (auto [a, b] : canonical.b_edges) {
        int x = relabel[a], y = relabel[b];
        g.edges.push_back({std::min(x, y), std::max(x, y), petersen_color_b, false});
    }
    for (auto [a, b] : canonical.r_arcs) g.edges.push_back({relabel[a], relabel[b], petersen_color_r, true});
    std::sort(g.edges.begin(), g.edges.end(), [](const ColoredGraph::Edge& x, const ColoredGraph::Edge& y) {
        return std::tie(x.color, x.tail, x.head) < std::tie(y.color, y.tail, y.head);
    });
    g.build_index();
    return g;
}

Word petersen_test_word() {
    Word w;
    w.letters = {{petersen_color_b, +1}, {petersen_color_r, +1}, {petersen_color_r, +1},
                 {petersen_color_b, +1}, {petersen_color_r, +1}};
    return w;
}

GroupPresentation presentation_line() {
    GroupPresentation p;
    p.generators = {{0, std::nullopt}};
    p.abelian_rank = 1;
    p.vectors[0] = IVec::Constant(1, 1);
    return p;
}

GroupPresentation presentation_square() {
    GroupPresentation p;
    p.generators = {{0, std::nullopt}, {1, std::nullopt}};
    p.abelian_rank = 2;
    p.vectors[0] = (IVec(2) << 1, 0).finished();
    p.vectors[1] = (IVec(2) << 0, 1).finished();
    Word commutator;
    commutator.letters = {{0, +1}, {1, +1}, {0, -1}, {1, -1}};
    p.relators.push_back(commutator);
    return p;
}

GroupPresentation presentation_bcc() {
    GroupPresentation p;
    p.generators = {{0, std::nullopt}, {1, std::nullopt}, {2, std::nullopt}, {3, std::nullopt}};
    p.abelian_rank = 3;
    p.vectors[0] = (IVec(3) << 1, 1, 1).finished();
    p.vectors[1] = (IVec(3) << 1, -1, -1).finished();
    p.vectors[2] = (IVec(3) << -1, 1, -1).finished();
    p.vectors[3] = (IVec(3) << -1, -1, 1).finished();
    Word zero_sum;
    zero_sum.letters = {{0, +1}, {1, +1}, {2, +1}, {3, +1}};
    p.relators.push_back(zero_sum);
    return p;
}

Word random_word(const GroupPresentation& p, int length, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::size_t> pick_gen(0, p.generators.size() - 1);
    std::uniform_int_distribution<int> pick_exp(0, 1);
    Word w;
    w.letters.reserve(length);
    for (int i = 0; i < length; ++i) {
        const Generator& g = p.generators[pick_gen(rng)];
        int exp = g.self_inverse() ? +1 : (pick_exp(rng) ? +1 : -1);
        w.letters.push_back({g.id, exp});
    }
    return w;
}

}  // namespace qca::cayley
