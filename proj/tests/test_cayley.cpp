/**
 * Word algebra, presentations, Cayley balls, the homogeneity test, and the
 * colored Petersen graph with its closed/open counterexample word.
 */
#include "qca/cayley.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <set>

namespace {

using namespace qca;
using namespace qca::cayley;

Word word_of(std::initializer_list<Letter> letters) {
    Word w;
    w.letters = letters;
    return w;
}

TEST(Words, ConcatAndInverse) {
    const Word ab = word_of({{0, +1}, {1, +1}});
    const Word c = word_of({{2, -1}});
    const Word abc = concat(ab, c);
    ASSERT_EQ(abc.size(), 3u);
    EXPECT_EQ(abc.letters[2], (Letter{2, -1}));

    const Word inv = inverse_word(abc);
    ASSERT_EQ(inv.size(), 3u);
    EXPECT_EQ(inv.letters[0], (Letter{2, +1}));
    EXPECT_EQ(inv.letters[2], (Letter{0, -1}));
}

TEST(Words, FreeReductionCancelsAdjacentPairs) {
    // a b b^-1 a^-1 a -> a
    const Word w = word_of({{0, +1}, {1, +1}, {1, -1}, {0, -1}, {0, +1}});
    const Word r = reduce_word(w);
    EXPECT_EQ(r, word_of({{0, +1}}));
    EXPECT_EQ(reduce_word(r), r);  // idempotent

    const Word ww = concat(w, inverse_word(w));
    EXPECT_TRUE(reduce_word(ww).empty());
}

TEST(Words, ReductionRejectsBadExponents) {
    Word w = word_of({{0, +2}});
    EXPECT_THROW(reduce_word(w), GraphError);
}

TEST(Presentations, LineSquareBccValidate) {
    for (const GroupPresentation& p :
         {presentation_line(), presentation_square(), presentation_bcc()})
        EXPECT_NO_THROW(p.validate());

    const GroupPresentation bcc = presentation_bcc();
    EXPECT_EQ(bcc.abelian_rank, 3);
    EXPECT_EQ(bcc.vectors.size(), 4u);  // one vector per generator; inverses
                                        // are exponent -1 letters
    IVec sum = IVec::Zero(3);
    for (const auto& [id, v] : bcc.vectors) sum += v;
    EXPECT_EQ(sum.cwiseAbs().sum(), 0);  // the four generators sum to zero
}

TEST(Presentations, WordVectorSumsLetterVectors) {
    const GroupPresentation p = presentation_square();
    const int a = p.generators[0].id;
    const int b = p.generators[1].id;
    const Word w = word_of({{a, +1}, {b, +1}, {a, +1}, {b, -1}});
    const IVec v = p.word_vector(w);
    EXPECT_EQ(v[0], 2);
    EXPECT_EQ(v[1], 0);
}

TEST(Presentations, RelatorVectorsVanish) {
    for (const GroupPresentation& p : {presentation_square(), presentation_bcc()})
        for (const Word& rel : p.relators)
            EXPECT_EQ(p.word_vector(rel).cwiseAbs().sum(), 0);
}

TEST(CayleyBall, LineBallIsASegment) {
    const ColoredGraph g = cayley_ball(presentation_line(), 3);
    EXPECT_EQ(g.vertices.size(), 7u);  // {-3..3}
    // Identity is vertex 0 at the origin.
    EXPECT_EQ(g.coordinates.at(0)[0], 0);
}

TEST(CayleyBall, BallSizesMatchLatticeCounts) {
    EXPECT_EQ(cayley_ball(presentation_square(), 2).vertices.size(), 13u);
    EXPECT_EQ(cayley_ball(presentation_bcc(), 1).vertices.size(), 9u);
    EXPECT_EQ(cayley_ball(presentation_bcc(), 2).vertices.size(), 35u);
    EXPECT_EQ(cayley_ball(presentation_bcc(), 3).vertices.size(), 91u);
}

TEST(CayleyBall, BoundaryEdgesAreAbsent) {
    const GroupPresentation p = presentation_line();
    const ColoredGraph g = cayley_ball(p, 2);
    const int gen = p.generators[0].id;
    // Walk right three times from the origin: the third edge leaves the ball.
    const Word w3 = word_of({{gen, +1}, {gen, +1}, {gen, +1}});
    EXPECT_THROW(apply_word(g, 0, w3), GraphError);
    const Word w2 = word_of({{gen, +1}, {gen, +1}});
    const int v = apply_word(g, 0, w2);
    EXPECT_EQ(g.coordinates.at(v)[0], 2);
}

TEST(WordMetric, CountsMinimalGeneratorSteps) {
    const GroupPresentation line = presentation_line();
    EXPECT_EQ(word_metric(line, ivec({0}), ivec({5})), 5);
    EXPECT_EQ(word_metric(line, ivec({2}), ivec({-1})), 3);

    const GroupPresentation bcc = presentation_bcc();
    EXPECT_EQ(word_metric(bcc, ivec({0, 0, 0}), ivec({1, 1, 1})), 1);
    EXPECT_EQ(word_metric(bcc, ivec({0, 0, 0}), ivec({2, 0, 0})), 2);
}

TEST(WordMetric, MixedParityTargetsAreUnreachable) {
    // Every generator changes all three coordinates by ±1, so any reachable
    // point has all coordinates of equal parity.
    const GroupPresentation bcc = presentation_bcc();
    EXPECT_THROW(word_metric(bcc, ivec({0, 0, 0}), ivec({1, 0, 0}), 8), GraphError);
}

TEST(Homogeneity, AbelianBallsAreUniform) {
    // On Z^d the endpoint displacement of a word is vertex-independent, so a
    // word is closed everywhere or open everywhere.
    const GroupPresentation p = presentation_bcc();
    const ColoredGraph g = cayley_ball(p, 8);
    std::vector<int> interior;
    for (int v : g.vertices) {
        const IVec& c = g.coordinates.at(v);
        if (c.cwiseAbs().maxCoeff() <= 2) interior.push_back(v);
    }
    ASSERT_GE(interior.size(), 9u);

    std::mt19937_64 rng(7);
    int closed_count = 0, open_count = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const Word w = random_word(p, 4, rng);
        const HomogeneityReport rep = homogeneity_path_check(g, w, interior);
        EXPECT_TRUE(rep.uniform);
        const bool closed = p.word_vector(w).cwiseAbs().sum() == 0;
        if (closed) {
            ++closed_count;
            EXPECT_EQ(rep.closed_vertices.size(), interior.size());
        } else {
            ++open_count;
            EXPECT_EQ(rep.open_vertices.size(), interior.size());
        }
    }
    EXPECT_GT(closed_count, 0);
    EXPECT_GT(open_count, 0);
}

TEST(Petersen, SearchFindsTwentyFourAdmissibleColorings) {
    const auto& all = petersen_colorings();
    EXPECT_EQ(all.size(), 24u);
    for (const PetersenColoring& c : all) {
        EXPECT_EQ(c.b_edges.size(), 5u);
        EXPECT_EQ(c.r_arcs.size(), 10u);
        EXPECT_FALSE(c.closed_vertices.empty());
        EXPECT_FALSE(c.open_vertices.empty());
        EXPECT_EQ(c.closed_vertices.size() + c.open_vertices.size(), 10u);
    }
    // Canonical (first) solution over the standard labeling.
    const PetersenColoring& first = all.front();
    const std::vector<std::pair<int, int>> b = {{0, 1}, {2, 3}, {4, 9}, {5, 7}, {6, 8}};
    EXPECT_EQ(first.b_edges, b);
    EXPECT_EQ(first.closed_vertices, (std::vector<int>{0, 3, 4, 5, 8}));
}

TEST(Petersen, CanonicalGraphTables) {
    const ColoredGraph g = petersen_graph();
    EXPECT_EQ(g.vertices.size(), 10u);
    for (int v : g.vertices) EXPECT_EQ(g.degree(v), 3u);

    const std::set<std::pair<int, int>> b_expected = {
        {1, 2}, {3, 5}, {4, 8}, {6, 9}, {7, 10}};
    const std::map<int, int> r_expected = {{1, 4}, {2, 6}, {3, 8}, {4, 9}, {5, 1},
                                           {6, 3}, {7, 2}, {8, 7}, {9, 10}, {10, 5}};
    std::set<std::pair<int, int>> b_got;
    std::map<int, int> r_got;
    for (const ColoredGraph::Edge& e : g.edges) {
        if (e.color == petersen_color_b)
            b_got.insert({std::min(e.tail, e.head), std::max(e.tail, e.head)});
        else
            r_got[e.tail] = e.head;
    }
    EXPECT_EQ(b_got, b_expected);
    EXPECT_EQ(r_got, r_expected);
}

TEST(Petersen, UndirectedColorNavigatesBothWays) {
    const ColoredGraph g = petersen_graph();
    EXPECT_EQ(g.neighbor(1, petersen_color_b, +1), 2);
    EXPECT_EQ(g.neighbor(2, petersen_color_b, +1), 1);
    EXPECT_EQ(g.neighbor(1, petersen_color_b, -1), 2);
    EXPECT_EQ(g.neighbor(1, petersen_color_r, +1), 4);
    EXPECT_EQ(g.neighbor(4, petersen_color_r, -1), 1);
}

TEST(Petersen, TestWordClosedAtOneOpenAtTwo) {
    const ColoredGraph g = petersen_graph();
    const Word w = petersen_test_word();
    ASSERT_EQ(w.size(), 5u);
    EXPECT_EQ(apply_word(g, 1, w), 1);
    EXPECT_EQ(apply_word(g, 2, w), 3);

    const HomogeneityReport rep =
        homogeneity_path_check(g, w, std::vector<int>(g.vertices));
    EXPECT_FALSE(rep.uniform);
    EXPECT_EQ(rep.closed_vertices, (std::vector<int>{1, 4, 5, 9, 10}));
    EXPECT_EQ(rep.open_vertices, (std::vector<int>{2, 3, 6, 7, 8}));
}

TEST(Petersen, EdgeListExportRoundsTrip) {
    const std::string text = petersen_graph().to_edge_list();
    EXPECT_NE(text.find("1 2 0 undirected"), std::string::npos);
    EXPECT_NE(text.find("1 4 1 directed"), std::string::npos);
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 15);  // 5 b + 10 r
}

}  // namespace
