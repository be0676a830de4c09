#include <gtest/gtest.h>

#include <set>

#include "kgc/graphs.hpp"
#include "oracles.hpp"

namespace kgc {
namespace {

DirectedGraph loop(const std::string& label) { return DirectedGraph(1, {{label, 0, 0}}); }

DirectedGraph rose(const std::string& prefix, std::size_t count) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < count; ++i) edges.push_back({prefix + std::to_string(i), 0, 0});
  return DirectedGraph(1, std::move(edges));
}

TEST(DirectedGraph, RejectsBadEdges) {
  EXPECT_THROW(DirectedGraph(0, {}), std::invalid_argument);
  EXPECT_THROW(DirectedGraph(2, {{"a", 2, 0}}), std::invalid_argument);
  EXPECT_THROW(DirectedGraph(2, {{"a", 0, 5}}), std::invalid_argument);
  EXPECT_THROW(DirectedGraph(1, {{"a", 0, 0}, {"a", 0, 0}}), std::invalid_argument);
}

TEST(DirectedGraph, AdjacencyAndLookup) {
  const DirectedGraph g(2, {{"x", 0, 1}, {"y", 0, 1}, {"z", 1, 1}});
  EXPECT_EQ(g.adjacency(), (DimMatrix{{0, 2}, {0, 1}}));
  EXPECT_EQ(g.find("y"), 1u);
  EXPECT_FALSE(g.find("w"));
  EXPECT_EQ(g.block_position(0), 0u);
  EXPECT_EQ(g.block_position(1), 1u);
  EXPECT_EQ(g.block_position(2), 0u);
}

TEST(FibredProduct, SingleLoops) {
  const auto p = fibred_product(loop("e"), loop("f"));
  ASSERT_EQ(p.graph.edge_count(), 1u);
  EXPECT_EQ(p.graph.edge(0).label, "(e,f)");
  EXPECT_EQ(p.graph.edge(0).range, 0u);
  EXPECT_EQ(p.graph.edge(0).source, 0u);
}

TEST(FibredProduct, TwoVertexExample) {
  const DirectedGraph e(2, {{"e1", 0, 1}, {"e2", 0, 0}});
  const DirectedGraph f(2, {{"f1", 1, 0}, {"f2", 0, 0}});
  const auto p = fibred_product(e, f);
  const auto expected = oracle::composable_pairs(e, f);
  ASSERT_EQ(p.graph.edge_count(), expected.size());
  ASSERT_EQ(expected.size(), 2u);
  for (std::size_t i = 0; i < expected.size(); ++i) {
    EXPECT_EQ(p.left_index[i], expected[i].first);
    EXPECT_EQ(p.right_index[i], expected[i].second);
  }
  EXPECT_EQ(p.graph.edge(0).label, "(e1,f1)");
  EXPECT_EQ(p.graph.edge(1).label, "(e2,f2)");
}

TEST(FibredProduct, VertexMismatchThrows) {
  EXPECT_THROW(fibred_product(loop("e"), DirectedGraph(2, {})), std::invalid_argument);
}

TEST(FibredProduct, IdentityGraphIsUnit) {
  const DirectedGraph e(3, {{"a", 0, 1}, {"b", 1, 2}, {"c", 2, 2}, {"d", 0, 1}});
  const auto p = fibred_product(e, identity_graph(3));
  ASSERT_EQ(p.graph.edge_count(), e.edge_count());
  for (std::size_t i = 0; i < e.edge_count(); ++i) {
    EXPECT_EQ(p.left_index[i], i);
    EXPECT_EQ(p.graph.edge(p.right_index[i]).range, e.edge(i).source);
  }
  const auto iso = vertex_fixing_iso(p.graph, e);
  ASSERT_TRUE(iso);
}

TEST(IdentityGraph, Shapes) {
  EXPECT_EQ(identity_graph(1).edge_count(), 1u);
  const auto g = identity_graph(3);
  EXPECT_EQ(g.adjacency(), DimMatrix::identity(3));
  EXPECT_EQ(g.edge(2).label, "v2");
  EXPECT_EQ(fibred_product(g, g).graph.edge_count(), 3u);
  EXPECT_THROW(identity_graph(0), std::invalid_argument);
}

TEST(FibredProduct, PropertiesOnRandomGraphs) {
  Rng rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + trial % 4;
    const auto e = oracle::random_graph(n, 1, rng, "a");
    const auto f = oracle::random_graph(n, 1, rng, "b");
    const auto g = oracle::random_graph(n, 1, rng, "c");
    const auto ef = fibred_product(e, f);
    EXPECT_EQ(ef.graph.adjacency(), oracle::matmul(oracle::count_edges(e), oracle::count_edges(f)));
    EXPECT_EQ(ef.graph.edge_count(), oracle::composable_pairs(e, f).size());
    // ((e,f),g) and (e,(f,g)) are related by a vertex-fixing bijection.
    const auto left = fibred_product(ef.graph, g);
    const auto fg = fibred_product(f, g);
    const auto right = fibred_product(e, fg.graph);
    ASSERT_EQ(left.graph.edge_count(), right.graph.edge_count());
    std::set<std::size_t> hit;
    for (std::size_t x = 0; x < left.graph.edge_count(); ++x) {
      const std::size_t a = ef.left_index[left.left_index[x]];
      const std::size_t b = ef.right_index[left.left_index[x]];
      const std::size_t c = left.right_index[x];
      const auto inner = fg.find(b, c);
      ASSERT_TRUE(inner);
      const auto y = right.find(a, *inner);
      ASSERT_TRUE(y);
      EXPECT_EQ(left.graph.edge(x).range, right.graph.edge(*y).range);
      EXPECT_EQ(left.graph.edge(x).source, right.graph.edge(*y).source);
      hit.insert(*y);
    }
    EXPECT_EQ(hit.size(), right.graph.edge_count());
  }
}

TEST(VertexFixingIso, Cases) {
  const DirectedGraph g(2, {{"a", 0, 1}, {"b", 1, 1}});
  const auto same = vertex_fixing_iso(g, g);
  ASSERT_TRUE(same);
  EXPECT_EQ(*same, (std::vector<std::size_t>{0, 1}));
  EXPECT_FALSE(vertex_fixing_iso(loop("e"), DirectedGraph(1, {})));
  EXPECT_FALSE(vertex_fixing_iso(DirectedGraph(2, {{"a", 0, 0}}), DirectedGraph(2, {{"b", 0, 1}})));
  EXPECT_THROW(vertex_fixing_iso(loop("e"), g), std::invalid_argument);
}

TEST(VertexFixingIso, ParallelEdges) {
  const DirectedGraph e(2, {{"a", 0, 1}, {"b", 0, 1}});
  const DirectedGraph f(2, {{"c", 0, 1}, {"d", 0, 1}});
  const auto iso = vertex_fixing_iso(e, f);
  ASSERT_TRUE(iso);
  // Two bijections exist; the returned one must be one of them.
  std::vector<std::size_t> sorted = *iso;
  std::sort(sorted.begin(), sorted.end());
  EXPECT_EQ(sorted, (std::vector<std::size_t>{0, 1}));
}

TEST(Squares, EnumerationCounts) {
  EXPECT_EQ(enumerate_squares(loop("e"), loop("f")).squares.size(), 1u);
  EXPECT_EQ(enumerate_squares(rose("e", 1), rose("f", 2)).squares.size(), 2u);
  EXPECT_EQ(enumerate_squares(rose("e", 2), rose("f", 2)).squares.size(), 24u);
  EXPECT_EQ(oracle::square_count_brute(rose("e", 2), rose("f", 2)), 24u);
}

TEST(Squares, EnumerationMatchesBruteForce) {
  Rng rng(5);
  int nonempty = 0;
  for (int trial = 0; trial < 80; ++trial) {
    const std::size_t n = 1 + trial % 3;
    const auto e = oracle::random_graph(n, 1, rng, "a");
    const auto f = oracle::random_graph(n, 1, rng, "b");
    if (oracle::composable_pairs(e, f).size() > 7) continue;
    const auto got = enumerate_squares(e, f);
    EXPECT_FALSE(got.truncated);
    EXPECT_EQ(got.squares.size(), oracle::square_count_brute(e, f));
    EXPECT_EQ(got.squares.size(), oracle::square_count(e, f));
    const bool commute = oracle::matmul(oracle::count_edges(e), oracle::count_edges(f)) ==
                         oracle::matmul(oracle::count_edges(f), oracle::count_edges(e));
    EXPECT_EQ(!got.squares.empty(), commute);
    nonempty += !got.squares.empty();
    std::set<std::vector<std::size_t>> distinct;
    for (const auto& s : got.squares) distinct.insert(s.image);
    EXPECT_EQ(distinct.size(), got.squares.size());
  }
  EXPECT_GT(nonempty, 10);
}

TEST(Squares, OrderAndLimit) {
  const auto all = enumerate_squares(rose("e", 1), rose("f", 3));
  ASSERT_EQ(all.squares.size(), 6u);
  EXPECT_EQ(all.squares.front().image, (std::vector<std::size_t>{0, 1, 2}));
  EXPECT_EQ(all.squares[1].image, (std::vector<std::size_t>{0, 2, 1}));
  EXPECT_EQ(all.squares.back().image, (std::vector<std::size_t>{2, 1, 0}));
  const auto some = enumerate_squares(rose("e", 1), rose("f", 3), 4);
  EXPECT_TRUE(some.truncated);
  ASSERT_EQ(some.squares.size(), 4u);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(some.squares[i], all.squares[i]);
  EXPECT_FALSE(enumerate_squares(rose("e", 1), rose("f", 3), 6).truncated);
  EXPECT_THROW(enumerate_squares(loop("e"), DirectedGraph(2, {})), std::invalid_argument);
  EXPECT_TRUE(enumerate_squares(DirectedGraph(2, {{"a", 0, 1}}), DirectedGraph(2, {{"b", 0, 0}}))
                  .squares.empty());
}

TEST(Squares, BlocksOrderedByRangeSource) {
  // Two vertices; the (0,0) block has two pairs, the (1,1) block has two.
  const DirectedGraph e(2, {{"a", 0, 0}, {"b", 1, 1}});
  const DirectedGraph f(2, {{"c", 0, 0}, {"d", 0, 0}, {"x", 1, 1}, {"y", 1, 1}});
  const auto all = enumerate_squares(e, f);
  ASSERT_EQ(all.squares.size(), 4u);
  // The last block varies fastest.
  EXPECT_EQ(all.squares[0].image, (std::vector<std::size_t>{0, 1, 2, 3}));
  EXPECT_EQ(all.squares[1].image, (std::vector<std::size_t>{0, 1, 3, 2}));
  EXPECT_EQ(all.squares[2].image, (std::vector<std::size_t>{1, 0, 2, 3}));
}

KGraphPresentation single_loops(std::size_t k) {
  std::vector<DirectedGraph> graphs;
  for (std::size_t i = 0; i < k; ++i) graphs.push_back(loop(std::string(1, char('e' + i))));
  std::vector<Square> squares;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) squares.push_back(Square{{0}});
  return KGraphPresentation(graphs, squares);
}

TEST(ValidateKGraph, SingleLoopsValid) {
  for (std::size_t k = 1; k <= 4; ++k) EXPECT_TRUE(validate_kgraph(single_loops(k)).valid) << k;
}

TEST(ValidateKGraph, StructuralErrors) {
  EXPECT_THROW(KGraphPresentation({}, {}), std::invalid_argument);
  EXPECT_THROW(KGraphPresentation({loop("e"), loop("f")}, {}), std::invalid_argument);
  EXPECT_THROW(KGraphPresentation({loop("e"), DirectedGraph(2, {})}, {Square{{}}}),
               std::invalid_argument);
  EXPECT_THROW(KGraphPresentation({loop("e"), loop("f")}, {Square{{0, 0}}}),
               std::invalid_argument);
  EXPECT_THROW(KGraphPresentation({loop("e"), loop("f")}, {Square{{3}}}), std::invalid_argument);
}

TEST(ValidateKGraph, ReportsViolations) {
  const KGraphPresentation unassigned({loop("e"), loop("f")}, {Square{{npos}}});
  auto v = validate_kgraph(unassigned);
  ASSERT_FALSE(v.valid);
  EXPECT_EQ(v.violations.front().kind, Violation::Kind::unassigned);

  const KGraphPresentation not_injective({rose("e", 2), loop("f")}, {Square{{0, 0}}});
  v = validate_kgraph(not_injective);
  ASSERT_FALSE(v.valid);
  EXPECT_EQ(v.violations.front().kind, Violation::Kind::not_injective);

  // Two vertices: (a,c) has r=0,s=0; the target pair (d,b) has r=1,s=1.
  const DirectedGraph e(2, {{"a", 0, 0}, {"b", 1, 1}});
  const DirectedGraph f(2, {{"c", 0, 0}, {"d", 1, 1}});
  const KGraphPresentation crossed({e, f}, {Square{{1, 0}}});
  v = validate_kgraph(crossed);
  ASSERT_FALSE(v.valid);
  EXPECT_EQ(v.violations.front().kind, Violation::Kind::range_source);
  EXPECT_FALSE(v.violations.front().message.empty());
}

TEST(ValidateKGraph, EveryRankTwoBijectionIsValid) {
  Rng rng(9);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 1 + trial % 2;
    const auto e = oracle::random_graph(n, 1, rng, "a");
    const auto f = oracle::random_graph(n, 2, rng, "b");
    SquareEnumerator squares(e, f, 50);
    while (auto sq = squares.next())
      EXPECT_TRUE(validate_kgraph(KGraphPresentation({e, f}, {*sq})).valid);
  }
}

// Single vertex, one loop in colors 1 and 2, n loops in color 3. Every
// choice of squares is checked against the label oracle.
void classify_cube(std::size_t loops3, std::size_t expected_valid) {
  const auto e1 = loop("e"), e2 = loop("f"), e3 = rose("g", loops3);
  const Square s12{{0}};
  const auto all13 = enumerate_squares(e1, e3).squares;
  const auto all23 = enumerate_squares(e2, e3).squares;
  std::size_t valid = 0;
  for (const auto& s13 : all13)
    for (const auto& s23 : all23) {
      const KGraphPresentation p({e1, e2, e3}, {s12, s13, s23});
      const bool expected = oracle::cube_holds(e1, e2, e3, oracle::label_square(e1, e2, s12),
                                               oracle::label_square(e1, e3, s13),
                                               oracle::label_square(e2, e3, s23));
      const auto verdict = validate_kgraph(p);
      EXPECT_EQ(verdict.valid, expected);
      if (!verdict.valid) {
        EXPECT_EQ(verdict.violations.front().kind, Violation::Kind::cube);
        EXPECT_NE(verdict.violations.front().first_route, verdict.violations.front().second_route);
      }
      valid += expected;
    }
  EXPECT_EQ(valid, expected_valid);
}

TEST(ValidateKGraph, CubeClassificationTwoLoops) { classify_cube(2, 4); }

TEST(ValidateKGraph, CubeClassificationThreeLoops) { classify_cube(3, 18); }

TEST(ValidateKGraph, CubeOracleOnRandomRankThree) {
  Rng rng(21);
  std::size_t checked = 0;
  for (int trial = 0; trial < 200 && checked < 400; ++trial) {
    // One-vertex graphs always commute; two-vertex ones exercise the ranges.
    const std::size_t n = 1 + static_cast<std::size_t>(trial % 2);
    const auto e1 = oracle::random_graph(n, 2 / n, rng, "a");
    const auto e2 = oracle::random_graph(n, 2 / n, rng, "b");
    const auto e3 = oracle::random_graph(n, 2 / n, rng, "c");
    const auto s12 = enumerate_squares(e1, e2, 6).squares;
    const auto s13 = enumerate_squares(e1, e3, 6).squares;
    const auto s23 = enumerate_squares(e2, e3, 6).squares;
    for (const auto& a : s12)
      for (const auto& b : s13)
        for (const auto& c : s23) {
          const bool expected =
              oracle::cube_holds(e1, e2, e3, oracle::label_square(e1, e2, a),
                                 oracle::label_square(e1, e3, b), oracle::label_square(e2, e3, c));
          EXPECT_EQ(validate_kgraph(KGraphPresentation({e1, e2, e3}, {a, b, c})).valid, expected);
          ++checked;
        }
  }
  EXPECT_GT(checked, 50u);
}

TEST(Factor, ReadsSquares) {
  const auto p = single_loops(2);
  EXPECT_EQ(factor(p, 0, 1, 0, 0), std::make_pair(std::size_t{0}, std::size_t{0}));

  const auto e = loop("e"), f = rose("f", 2);
  const Square sq = make_square(e, f, {{{0, 0}, {1, 0}}, {{0, 1}, {0, 0}}});
  const KGraphPresentation q({e, f}, {sq});
  EXPECT_EQ(factor(q, 0, 1, 0, 0), std::make_pair(std::size_t{1}, std::size_t{0}));
  // Through the inverse square and back.
  for (std::size_t fi = 0; fi < 2; ++fi) {
    const auto [ft, et] = factor(q, 0, 1, 0, fi);
    EXPECT_EQ(factor(q, 1, 0, ft, et), std::make_pair(std::size_t{0}, fi));
  }
  const DirectedGraph a(2, {{"a", 0, 1}}), b(2, {{"b", 0, 1}});
  const KGraphPresentation none({a, b}, {Square{{}}});
  EXPECT_THROW(factor(none, 0, 1, 0, 0), std::invalid_argument);
}

TEST(MakeSquare, RejectsBadRules) {
  const auto e = loop("e"), f = rose("f", 2);
  EXPECT_THROW(make_square(e, f, {{{0, 5}, {0, 0}}}), std::invalid_argument);
  EXPECT_THROW(make_square(e, f, {{{0, 0}, {0, 0}}, {{0, 0}, {1, 0}}}), std::invalid_argument);
}

TEST(PresentationEnumerator, CountsAndFilter) {
  PresentationEnumerator two({loop("e"), loop("f")});
  std::size_t count = 0;
  while (two.next()) ++count;
  EXPECT_EQ(count, 1u);

  PresentationEnumerator roses({rose("e", 2), rose("f", 2)});
  count = 0;
  while (roses.next()) ++count;
  EXPECT_EQ(count, 24u);

  // Rank 3 with one loop, one loop, two loops: 4 valid of 4.
  PresentationEnumerator three({loop("e"), loop("f"), rose("g", 3)});
  count = 0;
  while (auto p = three.next()) {
    EXPECT_TRUE(validate_kgraph(*p).valid);
    ++count;
  }
  EXPECT_EQ(count, 18u);
  EXPECT_EQ(three.examined(), 36u);

  PresentationEnumerator limited({rose("e", 2), rose("f", 2)}, 5);
  count = 0;
  while (limited.next()) ++count;
  EXPECT_EQ(count, 5u);
  EXPECT_TRUE(limited.truncated());
}

}  // namespace
}  // namespace kgc
