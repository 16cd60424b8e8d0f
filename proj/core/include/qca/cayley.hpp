/**
 * Free-group words over colored generators, integer-vector group presentations,
 * finite Cayley-graph balls, the closed-path homogeneity test, the word metric,
 * and the colored/directed Petersen graph found by exhaustive search.
 */
#pragma once

#include "qca/common.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qca::cayley {

/// A generator label; self-inverse generators have inverse_of == id.
struct Generator {
    int id = 0;
    std::optional<int> inverse_of;  ///< id of the inverse generator, if declared
    bool self_inverse() const { return inverse_of && *inverse_of == id; }
};

/// One letter of a word: a generator id and an exponent in {-1, +1}.
struct Letter {
    int gen = 0;
    int exp = +1;
    friend bool operator==(const Letter&, const Letter&) = default;
};

/// A word over the generator alphabet; not necessarily freely reduced.
struct Word {
    std::vector<Letter> letters;
    friend bool operator==(const Word&, const Word&) = default;
    bool empty() const { return letters.empty(); }
    std::size_t size() const { return letters.size(); }
};

/// Juxtaposition of two words (no reduction applied).
Word concat(const Word& a, const Word& b);

/// Formal inverse: letters reversed with exponents flipped.
Word inverse_word(const Word& w);

/// Free reduction: repeatedly cancels adjacent (g,+1)(g,-1) and (g,-1)(g,+1)
/// pairs. Idempotent; never increases the length.
Word reduce_word(const Word& w);

/// A group presentation over declared generators. Only presentations that
/// declare integer coordinate vectors (a Z^d normal form) support ball
/// construction and the word metric; the general word problem is out of scope.
struct GroupPresentation {
    std::vector<Generator> generators;
    std::vector<Word> relators;
    std::optional<int> abelian_rank;       ///< d for declared-Z^d presentations
    std::map<int, IVec> vectors;           ///< generator id -> integer vector in Z^d

    bool is_abelian_declared() const { return abelian_rank.has_value(); }
    const Generator* find_generator(int id) const;
    /// Integer vector of one letter (vector of the generator times the exponent).
    IVec letter_vector(const Letter& l) const;
    /// Sum of letter vectors of a word.
    IVec word_vector(const Word& w) const;
    /// Checks invariants: unique ids, involutive inverse pairing, relators over
    /// declared generators, and (if declared Abelian) zero relator vectors.
    void validate() const;
};

/// Validating reduction: rejects letters that reference undeclared generators.
Word reduce_word(const GroupPresentation& p, const Word& w);

/// A colored (multi)graph with directed color classes; self-inverse colors are
/// stored as undirected edges. Vertices carry external integer labels.
struct ColoredGraph {
    struct Edge {
        int tail = 0;
        int head = 0;
        int color = 0;
        bool directed = true;
    };

    std::vector<int> vertices;            ///< external labels
    std::vector<Edge> edges;
    std::map<int, bool> color_directed;   ///< color id -> directed?
    std::map<int, IVec> coordinates;      ///< optional: label -> lattice vector (balls)

    /// Rebuilds the adjacency index; called automatically by the factories.
    void build_index();

    /// One step along a color. exp=+1 follows the outgoing edge, exp=-1 the
    /// incoming one; undirected colors ignore the exponent sign.
    /// Returns nothing when the edge is absent (ball boundary).
    std::optional<int> neighbor(int vertex_label, int color, int exp) const;

    std::size_t degree(int vertex_label) const;

    /// Edge-list text export: one "tail head color direction" record per line,
    /// direction being "directed" or "undirected".
    std::string to_edge_list() const;

  private:
    std::map<std::pair<int, int>, int> out_;  // (vertex,color) -> head
    std::map<std::pair<int, int>, int> in_;   // (vertex,color) -> tail
    std::map<int, std::size_t> degree_;
};

/// Endpoint of the path spelled by w starting at vertex v.
/// Throws GraphError when a required edge is missing.
int apply_word(const ColoredGraph& g, int v, const Word& w);

/// Closed-at-every-vertex / open-at-every-vertex report for a word over a
/// sample of vertices.
struct HomogeneityReport {
    bool uniform = true;
    std::vector<int> closed_vertices;
    std::vector<int> open_vertices;
};
HomogeneityReport homogeneity_path_check(const ColoredGraph& g, const Word& w,
                                         const std::vector<int>& sample);

/// Breadth-first ball of the given word-metric radius around the identity of a
/// declared-Abelian presentation. Vertex 0 is the identity; labels follow BFS
/// discovery order; coordinates are stored per vertex. Edges whose endpoint
/// falls outside the ball are absent (boundary), and apply_word reports them
/// as errors rather than wrapping.
ColoredGraph cayley_ball(const GroupPresentation& p, int radius);

/// Word-metric distance between two integer vectors of a declared-Abelian
/// presentation (minimal generator count, inverses allowed), via breadth-first
/// search. Throws GraphError when the target is unreachable within max_radius.
int word_metric(const GroupPresentation& p, const IVec& g1, const IVec& g2,
                int max_radius = 64);

/// One admissible coloring of the Petersen graph: a perfect matching for the
/// undirected color b plus an orientation of the two remaining 5-cycles for
/// the directed color r, such that the word brrbr is closed at some vertices
/// and open at others.
struct PetersenColoring {
    std::vector<std::pair<int, int>> b_edges;  ///< 5 undirected edges
    std::vector<std::pair<int, int>> r_arcs;   ///< 10 directed arcs (tail, head)
    std::vector<int> closed_vertices;          ///< brrbr closed here
    std::vector<int> open_vertices;            ///< brrbr open here
};

/// All admissible colorings over the standard labeling, in canonical encoding
/// order (lexicographic over sorted b-edges, then sorted r-arcs).
std::vector<PetersenColoring> petersen_colorings();

/// Color ids used by petersen_graph().
inline constexpr int petersen_color_b = 0;  ///< self-inverse, undirected
inline constexpr int petersen_color_r = 1;  ///< directed

/// The canonically colored/directed Petersen graph on vertices 1..10.
/// The coloring is the lexicographically first admissible solution of the
/// exhaustive search, relabeled deterministically so that vertex 1 is the
/// least closed vertex, vertex 2 the least open one, vertex 3 the endpoint of
/// brrbr from vertex 2, and the rest follow breadth-first order.
ColoredGraph petersen_graph();

/// The word brrbr over the Petersen colors.
Word petersen_test_word();

// Ready-made presentations used throughout the tests and the CLI.
GroupPresentation presentation_line();        ///< Z, one generator, vector (1)
GroupPresentation presentation_square();      ///< Z^2, generators a,b, commutator relator
GroupPresentation presentation_bcc();         ///< Z^3, four generators summing to zero

/// Uniformly random (unreduced) word of the given length over the presentation
/// alphabet S together with inverses.
Word random_word(const GroupPresentation& p, int length, std::mt19937_64& rng);

}  // namespace qca::cayley
