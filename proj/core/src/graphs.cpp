#include "kgc/graphs.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

namespace kgc {

DirectedGraph::DirectedGraph(std::size_t vertex_count, std::vector<Edge> edges)
    : vertex_count_(vertex_count), edges_(std::move(edges)) {
  if (vertex_count_ == 0) throw std::invalid_argument("graph needs at least one vertex");
  std::unordered_set<std::string_view> seen;
  std::map<std::pair<Vertex, Vertex>, std::size_t> counts;
  block_position_.reserve(edges_.size());
  for (const Edge& e : edges_) {
    if (e.range >= vertex_count_ || e.source >= vertex_count_)
      throw std::invalid_argument("edge '" + e.label + "' has an endpoint out of range");
    if (e.label.empty()) throw std::invalid_argument("edge labels must be nonempty");
    if (!seen.insert(e.label).second)
      throw std::invalid_argument("duplicate edge label '" + e.label + "'");
    block_position_.push_back(counts[{e.range, e.source}]++);
  }
}

std::optional<std::size_t> DirectedGraph::find(std::string_view label) const {
  for (std::size_t e = 0; e < edges_.size(); ++e)
    if (edges_[e].label == label) return e;
  return std::nullopt;
}

DimMatrix DirectedGraph::adjacency() const {
  DimMatrix a(vertex_count_);
  for (const Edge& e : edges_) ++a(e.range, e.source);
  return a;
}

std::optional<std::size_t> FibredProductGraph::find(std::size_t e, std::size_t f) const {
  if (f >= right_edge_count) return std::nullopt;
  const std::size_t key = e * right_edge_count + f;
  if (key >= pair_lookup.size() || pair_lookup[key] == npos) return std::nullopt;
  return pair_lookup[key];
}

FibredProductGraph fibred_product(const DirectedGraph& left, const DirectedGraph& right) {
  if (left.vertex_count() != right.vertex_count())
    throw std::invalid_argument("fibred product: vertex count mismatch");
  std::vector<Edge> edges;
  std::vector<std::size_t> li, ri;
  std::vector<std::size_t> lookup(left.edge_count() * right.edge_count(), npos);
  for (std::size_t e = 0; e < left.edge_count(); ++e) {
    const Edge& a = left.edge(e);
    for (std::size_t f = 0; f < right.edge_count(); ++f) {
      const Edge& b = right.edge(f);
      if (a.source != b.range) continue;
      lookup[e * right.edge_count() + f] = edges.size();
      edges.push_back({"(" + a.label + "," + b.label + ")", a.range, b.source});
      li.push_back(e);
      ri.push_back(f);
    }
  }
  return {DirectedGraph(left.vertex_count(), std::move(edges)), std::move(li), std::move(ri),
          right.edge_count(), std::move(lookup)};
}

DirectedGraph identity_graph(std::size_t vertex_count) {
  std::vector<Edge> edges;
  for (Vertex v = 0; v < vertex_count; ++v) edges.push_back({"v" + std::to_string(v), v, v});
  return DirectedGraph(vertex_count, std::move(edges));
}

std::optional<std::vector<std::size_t>> vertex_fixing_iso(const DirectedGraph& from,
                                                          const DirectedGraph& to) {
  if (from.vertex_count() != to.vertex_count())
    throw std::invalid_argument("vertex_fixing_iso: vertex count mismatch");
  if (from.adjacency() != to.adjacency()) return std::nullopt;
  std::map<std::pair<Vertex, Vertex>, std::vector<std::size_t>> targets;
  for (std::size_t f = 0; f < to.edge_count(); ++f)
    targets[{to.edge(f).range, to.edge(f).source}].push_back(f);
  std::vector<std::size_t> phi(from.edge_count());
  for (std::size_t e = 0; e < from.edge_count(); ++e) {
    const Edge& a = from.edge(e);
    phi[e] = targets.at({a.range, a.source})[from.block_position(e)];
  }
  return phi;
}

std::size_t pair_index(std::size_t i, std::size_t j, std::size_t k) {
  if (!(i < j && j < k)) throw std::out_of_range("pair_index: need i < j < k");
  return i * k - i * (i + 1) / 2 + (j - i - 1);
}

KGraphPresentation::KGraphPresentation(std::vector<DirectedGraph> graphs,
                                       std::vector<Square> squares)
    : graphs_(std::move(graphs)), squares_(std::move(squares)) {
  const std::size_t k = graphs_.size();
  if (k == 0) throw std::invalid_argument("k-graph presentation needs rank >= 1");
  for (const auto& g : graphs_)
    if (g.vertex_count() != graphs_.front().vertex_count())
      throw std::invalid_argument("skeleton graphs must share the vertex set");
  if (squares_.size() != k * (k - 1) / 2)
    throw std::invalid_argument("squares missing: need one square per color pair i < j");
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      const Square& sq = squares_[pair_index(i, j, k)];
      const auto from = fibred_product(graphs_[i], graphs_[j]);
      const auto to = fibred_product(graphs_[j], graphs_[i]);
      if (sq.image.size() != from.graph.edge_count())
        throw std::invalid_argument("square " + std::to_string(i + 1) + " " +
                                    std::to_string(j + 1) +
                                    " does not cover the fibred product");
      for (std::size_t x : sq.image)
        if (x != npos && x >= to.graph.edge_count())
          throw std::invalid_argument("square image index out of range");
    }
}

const Square& KGraphPresentation::square(std::size_t i, std::size_t j) const {
  return squares_.at(pair_index(i, j, rank()));
}

namespace {

std::string describe_pair(const DirectedGraph& a, std::size_t e, const DirectedGraph& b,
                          std::size_t f) {
  return a.edge(e).label + " " + b.edge(f).label;
}

// theta_ij applied to a composable pair, via precomputed fibred products.
struct SquareTable {
  FibredProductGraph from;
  FibredProductGraph to;
  const Square* square;

  std::optional<std::pair<std::size_t, std::size_t>> apply(std::size_t e, std::size_t f) const {
    const auto p = from.find(e, f);
    if (!p || square->image[*p] == npos) return std::nullopt;
    const std::size_t q = square->image[*p];
    return std::pair{to.left_index[q], to.right_index[q]};
  }
};

}  // namespace

KGraphVerdict validate_kgraph(const KGraphPresentation& presentation) {
  KGraphVerdict verdict;
  const std::size_t k = presentation.rank();
  std::vector<SquareTable> tables;
  bool squares_ok = true;

  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      const DirectedGraph& gi = presentation.graph(i);
      const DirectedGraph& gj = presentation.graph(j);
      SquareTable t{fibred_product(gi, gj), fibred_product(gj, gi), &presentation.square(i, j)};
      std::vector<std::size_t> hit(t.to.graph.edge_count(), npos);
      for (std::size_t p = 0; p < t.from.graph.edge_count(); ++p) {
        const std::size_t e = t.from.left_index[p], f = t.from.right_index[p];
        const std::size_t q = t.square->image[p];
        auto violation = [&](Violation::Kind kind, std::string msg) {
          verdict.violations.push_back({kind, i, j, 0, {e, f}, {}, {}, std::move(msg)});
          squares_ok = false;
        };
        const std::string where = "square " + std::to_string(i + 1) + " " +
                                  std::to_string(j + 1) + ": " + describe_pair(gi, e, gj, f);
        if (q == npos) {
          violation(Violation::Kind::unassigned, where + " has no image");
          continue;
        }
        const Edge& src = t.from.graph.edge(p);
        const Edge& dst = t.to.graph.edge(q);
        if (src.range != dst.range || src.source != dst.source)
          violation(Violation::Kind::range_source,
                    where + " -> " + describe_pair(gj, t.to.left_index[q], gi,
                                                   t.to.right_index[q]) +
                        " changes range or source");
        if (hit[q] != npos)
          violation(Violation::Kind::not_injective,
                    where + " shares its image with " +
                        describe_pair(gi, t.from.left_index[hit[q]], gj,
                                      t.from.right_index[hit[q]]));
        else
          hit[q] = p;
      }
      if (t.from.graph.edge_count() != t.to.graph.edge_count()) {
        verdict.violations.push_back(
            {Violation::Kind::not_injective, i, j, 0, {}, {}, {},
             "square " + std::to_string(i + 1) + " " + std::to_string(j + 1) +
                 ": fibred products have different sizes, no bijection exists"});
        squares_ok = false;
      }
      tables.push_back(std::move(t));
    }

  if (squares_ok && k >= 3) {
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j)
        for (std::size_t l = j + 1; l < k; ++l) {
          const SquareTable& ij = tables[pair_index(i, j, k)];
          const SquareTable& il = tables[pair_index(i, l, k)];
          const SquareTable& jl = tables[pair_index(j, l, k)];
          const DirectedGraph& gi = presentation.graph(i);
          const DirectedGraph& gj = presentation.graph(j);
          const DirectedGraph& gl = presentation.graph(l);
          for (std::size_t pe = 0; pe < ij.from.graph.edge_count(); ++pe) {
            const std::size_t e = ij.from.left_index[pe], f = ij.from.right_index[pe];
            for (std::size_t g = 0; g < gl.edge_count(); ++g) {
              if (gj.edge(f).source != gl.edge(g).range) continue;
              // e f g -> e g1 f1 -> g2 e1 f1 -> g2 f2 e2
              const auto [g1, f1] = *jl.apply(f, g);
              const auto [g2, e1] = *il.apply(e, g1);
              const auto [f2, e2] = *ij.apply(e1, f1);
              // e f g -> f3 e3 g -> f3 g3 e4 -> g4 f4 e4
              const auto [f3, e3] = *ij.apply(e, f);
              const auto [g3, e4] = *il.apply(e3, g);
              const auto [g4, f4] = *jl.apply(f3, g3);
              if (g2 == g4 && f2 == f4 && e2 == e4) continue;
              verdict.violations.push_back(
                  {Violation::Kind::cube, i, j, l, {e, f, g}, {g2, f2, e2}, {g4, f4, e4},
                   "cube " + std::to_string(i + 1) + " " + std::to_string(j + 1) + " " +
                       std::to_string(l + 1) + ": " + gi.edge(e).label + " " +
                       gj.edge(f).label + " " + gl.edge(g).label + " -> " +
                       gl.edge(g2).label + " " + gj.edge(f2).label + " " +
                       gi.edge(e2).label + " vs " + gl.edge(g4).label + " " +
                       gj.edge(f4).label + " " + gi.edge(e4).label});
            }
          }
        }
  }
  verdict.valid = verdict.violations.empty();
  return verdict;
}

std::pair<std::size_t, std::size_t> factor(const KGraphPresentation& presentation,
                                           std::size_t i, std::size_t j, std::size_t e,
                                           std::size_t f) {
  if (i == j || i >= presentation.rank() || j >= presentation.rank())
    throw std::invalid_argument("factor: need two distinct colors");
  const DirectedGraph& gi = presentation.graph(i);
  const DirectedGraph& gj = presentation.graph(j);
  if (e >= gi.edge_count() || f >= gj.edge_count())
    throw std::invalid_argument("factor: edge index out of range");
  if (gi.edge(e).source != gj.edge(f).range)
    throw std::invalid_argument("factor: " + gi.edge(e).label + " " + gj.edge(f).label +
                                " is not composable");
  if (i < j) {
    SquareTable t{fibred_product(gi, gj), fibred_product(gj, gi), &presentation.square(i, j)};
    if (auto r = t.apply(e, f)) return *r;
    throw std::invalid_argument("factor: square undefined at this pair");
  }
  // Inverse of theta_ji : E_j*E_i -> E_i*E_j.
  const auto from = fibred_product(gj, gi);
  const auto to = fibred_product(gi, gj);
  const std::size_t target = *to.find(e, f);
  const Square& sq = presentation.square(j, i);
  for (std::size_t p = 0; p < sq.image.size(); ++p)
    if (sq.image[p] == target) return {from.left_index[p], from.right_index[p]};
  throw std::invalid_argument("factor: pair is not in the image of the square");
}

SquareEnumerator::SquareEnumerator(const DirectedGraph& left, const DirectedGraph& right,
                                   std::size_t limit)
    : limit_(limit) {
  if (left.vertex_count() != right.vertex_count())
    throw std::invalid_argument("enumerate_squares: vertex count mismatch");
  const auto from = fibred_product(left, right);
  const auto to = fibred_product(right, left);
  source_edge_count_ = from.graph.edge_count();
  std::map<std::pair<Vertex, Vertex>, Block> by_block;
  for (std::size_t p = 0; p < from.graph.edge_count(); ++p) {
    const Edge& x = from.graph.edge(p);
    by_block[{x.range, x.source}].sources.push_back(p);
  }
  for (std::size_t q = 0; q < to.graph.edge_count(); ++q) {
    const Edge& x = to.graph.edge(q);
    by_block[{x.range, x.source}].targets.push_back(q);
  }
  for (auto& [key, block] : by_block) {
    if (block.sources.size() != block.targets.size()) {
      exhausted_ = true;
      blocks_.clear();
      return;
    }
    block.perm.resize(block.sources.size());
    std::iota(block.perm.begin(), block.perm.end(), std::size_t{0});
    blocks_.push_back(std::move(block));
  }
}

bool SquareEnumerator::advance() {
  for (std::size_t b = blocks_.size(); b-- > 0;)
    if (std::next_permutation(blocks_[b].perm.begin(), blocks_[b].perm.end())) return true;
  return false;
}

Square SquareEnumerator::current() const {
  Square sq{std::vector<std::size_t>(source_edge_count_, npos)};
  for (const Block& b : blocks_)
    for (std::size_t t = 0; t < b.sources.size(); ++t) sq.image[b.sources[t]] = b.targets[b.perm[t]];
  return sq;
}

std::optional<Square> SquareEnumerator::next() {
  if (exhausted_) return std::nullopt;
  if (started_ && !advance()) {
    exhausted_ = true;
    return std::nullopt;
  }
  if (yielded_ == limit_) {
    // One more square exists beyond the limit.
    truncated_ = true;
    exhausted_ = true;
    return std::nullopt;
  }
  started_ = true;
  ++yielded_;
  return current();
}

SquareEnumeration enumerate_squares(const DirectedGraph& left, const DirectedGraph& right,
                                    std::size_t limit) {
  SquareEnumerator en(left, right, limit);
  SquareEnumeration out;
  while (auto sq = en.next()) out.squares.push_back(std::move(*sq));
  out.truncated = en.truncated();
  return out;
}

Square make_square(const DirectedGraph& first, const DirectedGraph& second,
                   const std::vector<std::pair<std::pair<std::size_t, std::size_t>,
                                               std::pair<std::size_t, std::size_t>>>& rules) {
  const auto from = fibred_product(first, second);
  const auto to = fibred_product(second, first);
  Square sq{std::vector<std::size_t>(from.graph.edge_count(), npos)};
  for (const auto& [src, dst] : rules) {
    const auto p = from.find(src.first, src.second);
    const auto q = to.find(dst.first, dst.second);
    if (!p || !q) throw std::invalid_argument("make_square: pair is not composable");
    if (sq.image[*p] != npos) throw std::invalid_argument("make_square: pair assigned twice");
    sq.image[*p] = *q;
  }
  return sq;
}

PresentationEnumerator::PresentationEnumerator(std::vector<DirectedGraph> graphs,
                                               std::size_t limit)
    : graphs_(std::move(graphs)), limit_(limit) {
  if (graphs_.empty()) throw std::invalid_argument("presentation enumeration needs k >= 1");
  for (std::size_t i = 0; i < graphs_.size(); ++i)
    for (std::size_t j = i + 1; j < graphs_.size(); ++j) pairs_.emplace_back(i, j);
}

std::optional<std::vector<Square>> PresentationEnumerator::next_combination() {
  if (exhausted_) return std::nullopt;
  if (!started_) {
    started_ = true;
    for (const auto& [i, j] : pairs_) {
      streams_.emplace_back(graphs_[i], graphs_[j]);
      auto sq = streams_.back().next();
      if (!sq) {
        exhausted_ = true;
        return std::nullopt;
      }
      current_.push_back(std::move(*sq));
    }
    return current_;
  }
  for (std::size_t p = pairs_.size(); p-- > 0;) {
    if (auto sq = streams_[p].next()) {
      current_[p] = std::move(*sq);
      return current_;
    }
    // Wrap this pair around and carry into the previous one.
    const auto [i, j] = pairs_[p];
    streams_[p] = SquareEnumerator(graphs_[i], graphs_[j]);
    current_[p] = *streams_[p].next();
  }
  exhausted_ = true;
  return std::nullopt;
}

std::optional<KGraphPresentation> PresentationEnumerator::next() {
  while (auto squares = next_combination()) {
    KGraphPresentation candidate(graphs_, std::move(*squares));
    ++examined_;
    if (graphs_.size() >= 3 && !validate_kgraph(candidate).valid) continue;
    if (yielded_ == limit_) {
      truncated_ = true;
      exhausted_ = true;
      return std::nullopt;
    }
    ++yielded_;
    return candidate;
  }
  return std::nullopt;
}

}  // namespace kgc
