#include "kgc/formats.hpp"

#include <charconv>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <sstream>

namespace kgc {

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) +
                         ": " + message),
      line_(line),
      column_(column) {}

std::string_view tag_name(FormatTag tag) {
  switch (tag) {
    case FormatTag::graph: return "kgc-graph";
    case FormatTag::corr: return "kgc-corr";
    case FormatTag::two_graph: return "kgc-2graph";
    case FormatTag::kgraph: return "kgc-kgraph";
    case FormatTag::skeleton: return "kgc-skeleton";
  }
  return "";
}

namespace {

struct Token {
  std::string_view text;
  std::size_t column;
};

struct Line {
  std::size_t number;
  std::vector<Token> tokens;
};

class Reader {
 public:
  explicit Reader(std::string_view text) {
    std::size_t number = 0;
    std::size_t start = 0;
    while (start < text.size() || (start == 0 && text.empty())) {
      std::size_t stop = text.find('\n', start);
      if (stop == std::string_view::npos) stop = text.size();
      std::string_view raw = text.substr(start, stop - start);
      ++number;
      if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
      Line line{number, {}};
      std::size_t i = 0;
      while (i < raw.size()) {
        while (i < raw.size() && is_space(raw[i])) ++i;
        const std::size_t begin = i;
        while (i < raw.size() && !is_space(raw[i])) ++i;
        if (i > begin) line.tokens.push_back({raw.substr(begin, i - begin), begin + 1});
      }
      if (!line.tokens.empty()) lines_.push_back(std::move(line));
      last_line_ = number;
      if (stop == text.size()) break;
      start = stop + 1;
    }
  }

  bool done() const noexcept { return pos_ == lines_.size(); }

  const Line& peek() const {
    if (done()) throw ParseError(last_line_, 1, "unexpected end of input");
    return lines_[pos_];
  }

  const Line& take() {
    const Line& l = peek();
    ++pos_;
    return l;
  }

  [[noreturn]] static void fail(const Line& line, std::size_t token, const std::string& msg) {
    const std::size_t column = token < line.tokens.size() ? line.tokens[token].column : 1;
    throw ParseError(line.number, column, msg);
  }

  static std::size_t count(const Line& line, std::size_t token) {
    if (token >= line.tokens.size()) fail(line, token, "missing number");
    const std::string_view t = line.tokens[token].text;
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec != std::errc() || ptr != t.data() + t.size())
      fail(line, token, "expected a nonnegative integer, got '" + std::string(t) + "'");
    return value;
  }

  static void arity(const Line& line, std::size_t n) {
    if (line.tokens.size() != n)
      fail(line, std::min(n, line.tokens.size()),
           "expected " + std::to_string(n) + " tokens, got " + std::to_string(line.tokens.size()));
  }

  const Line& keyword(std::string_view word, std::size_t tokens) {
    const Line& l = take();
    if (l.tokens.front().text != word)
      fail(l, 0, "expected '" + std::string(word) + "', got '" +
                     std::string(l.tokens.front().text) + "'");
    arity(l, tokens);
    return l;
  }

  std::size_t keyword_count(std::string_view word) { return count(keyword(word, 2), 1); }

  void expect_done() const {
    if (!done()) fail(lines_[pos_], 0, "unexpected content after the document");
  }

 private:
  static bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r'; }

  std::vector<Line> lines_;
  std::size_t pos_ = 0;
  std::size_t last_line_ = 0;
};

std::size_t prefixed(const Line& line, std::size_t token, std::string_view prefix) {
  const std::string_view t = line.tokens.at(token).text;
  if (t.substr(0, prefix.size()) != prefix)
    Reader::fail(line, token, "expected '" + std::string(prefix) + "<n>'");
  Line sub{line.number, {{t.substr(prefix.size()), line.tokens[token].column + prefix.size()}}};
  return Reader::count(sub, 0);
}

FormatTag read_header(Reader& in) {
  const Line& l = in.take();
  static const std::map<std::string_view, FormatTag> tags = {
      {"kgc-graph", FormatTag::graph},      {"kgc-corr", FormatTag::corr},
      {"kgc-2graph", FormatTag::two_graph}, {"kgc-kgraph", FormatTag::kgraph},
      {"kgc-skeleton", FormatTag::skeleton}};
  const auto it = tags.find(l.tokens.front().text);
  if (it == tags.end()) Reader::fail(l, 0, "unknown header '" + std::string(l.tokens[0].text) + "'");
  Reader::arity(l, 2);
  if (l.tokens[1].text != "v1")
    Reader::fail(l, 1, "unsupported version '" + std::string(l.tokens[1].text) + "'");
  return it->second;
}

void expect_tag(FormatTag got, std::initializer_list<FormatTag> allowed) {
  for (FormatTag t : allowed)
    if (t == got) return;
  throw ParseError(1, 1, "unexpected document type '" + std::string(tag_name(got)) + "'");
}

std::size_t read_vertices(Reader& in) {
  const Line& l = in.keyword("vertices", 2);
  const std::size_t n = Reader::count(l, 1);
  if (n == 0) Reader::fail(l, 1, "vertex count must be positive");
  return n;
}

DirectedGraph read_graph_body(Reader& in, std::size_t n) {
  const std::size_t m = in.keyword_count("edges");
  std::vector<Edge> edges;
  std::set<std::string_view> seen;
  for (std::size_t e = 0; e < m; ++e) {
    const Line& l = in.take();
    Reader::arity(l, 3);
    const std::string_view label = l.tokens[0].text;
    const std::size_t r = prefixed(l, 1, "r=");
    const std::size_t s = prefixed(l, 2, "s=");
    if (r >= n) Reader::fail(l, 1, "range vertex out of range");
    if (s >= n) Reader::fail(l, 2, "source vertex out of range");
    if (!seen.insert(label).second) Reader::fail(l, 0, "duplicate edge label");
    edges.push_back({std::string(label), r, s});
  }
  return DirectedGraph(n, std::move(edges));
}

DimMatrix read_dim_rows(Reader& in, std::size_t n) {
  DimMatrix d(n);
  for (std::size_t v = 0; v < n; ++v) {
    const Line& l = in.take();
    Reader::arity(l, n);
    for (std::size_t w = 0; w < n; ++w) d(v, w) = Reader::count(l, w);
  }
  return d;
}

DirectedGraph parse_graph_doc(Reader& in) {
  const std::size_t n = read_vertices(in);
  return read_graph_body(in, n);
}

Correspondence parse_corr_doc(Reader& in) {
  const std::size_t n = read_vertices(in);
  in.keyword("dim", 1);
  return Correspondence(read_dim_rows(in, n));
}

std::size_t lookup_edge(const DirectedGraph& g, const Line& l, std::size_t token) {
  const auto e = g.find(l.tokens[token].text);
  if (!e) Reader::fail(l, token, "unknown edge '" + std::string(l.tokens[token].text) + "'");
  return *e;
}

KGraphPresentation parse_presentation_doc(Reader& in, FormatTag tag) {
  const std::size_t n = read_vertices(in);
  const Line& kline = in.keyword("k", 2);
  const std::size_t k = Reader::count(kline, 1);
  if (k == 0) Reader::fail(kline, 1, "rank must be positive");
  if (tag == FormatTag::two_graph && k != 2) Reader::fail(kline, 1, "kgc-2graph requires k 2");

  std::vector<DirectedGraph> graphs;
  for (std::size_t i = 0; i < k; ++i) {
    const Line& g = in.keyword("graph", 2);
    if (Reader::count(g, 1) != i + 1)
      Reader::fail(g, 1, "expected graph " + std::to_string(i + 1));
    graphs.push_back(read_graph_body(in, n));
    in.keyword("end", 1);
  }

  std::vector<std::optional<Square>> squares(k * (k - 1) / 2);
  for (std::size_t b = 0; b < squares.size(); ++b) {
    const Line& h = in.keyword("squares", 3);
    const std::size_t i = Reader::count(h, 1), j = Reader::count(h, 2);
    if (i == 0 || j == 0 || i >= j || j > k) Reader::fail(h, 1, "need colors 1 <= i < j <= k");
    const std::size_t slot = pair_index(i - 1, j - 1, k);
    if (squares[slot]) Reader::fail(h, 0, "duplicate squares block");
    const DirectedGraph& gi = graphs[i - 1];
    const DirectedGraph& gj = graphs[j - 1];
    const auto from = fibred_product(gi, gj);
    const auto to = fibred_product(gj, gi);
    Square sq{std::vector<std::size_t>(from.graph.edge_count(), npos)};
    for (;;) {
      const Line& l = in.take();
      if (l.tokens.front().text == "end") {
        Reader::arity(l, 1);
        break;
      }
      Reader::arity(l, 5);
      if (l.tokens[2].text != "->") Reader::fail(l, 2, "expected '->'");
      const std::size_t e = lookup_edge(gi, l, 0), f = lookup_edge(gj, l, 1);
      const std::size_t ft = lookup_edge(gj, l, 3), et = lookup_edge(gi, l, 4);
      const auto p = from.find(e, f);
      if (!p) Reader::fail(l, 0, "pair is not composable");
      const auto q = to.find(ft, et);
      if (!q) Reader::fail(l, 3, "image pair is not composable");
      if (sq.image[*p] != npos) Reader::fail(l, 0, "pair assigned twice");
      sq.image[*p] = *q;
    }
    squares[slot] = std::move(sq);
  }
  std::vector<Square> out;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      auto& sq = squares[pair_index(i, j, k)];
      if (!sq)
        throw ParseError(kline.number, 1,
                         "squares missing for " + std::to_string(i + 1) + " " +
                             std::to_string(j + 1));
      out.push_back(std::move(*sq));
    }
  return KGraphPresentation(std::move(graphs), std::move(out));
}

Skeleton parse_skeleton_doc(Reader& in) {
  const std::size_t n = read_vertices(in);
  const Line& kline = in.keyword("k", 2);
  const std::size_t k = Reader::count(kline, 1);
  if (k == 0) Reader::fail(kline, 1, "rank must be positive");

  std::vector<Correspondence> fibers;
  for (std::size_t i = 0; i < k; ++i) {
    const Line& d = in.keyword("dim", 2);
    if (d.tokens[1].text != "Y" + std::to_string(i + 1))
      Reader::fail(d, 1, "expected Y" + std::to_string(i + 1));
    fibers.push_back(Correspondence(read_dim_rows(in, n)));
  }

  std::vector<std::optional<CorrMorphism>> braids(k * (k - 1) / 2);
  for (std::size_t b = 0; b < braids.size(); ++b) {
    const Line& h = in.keyword("T", 3);
    const std::size_t i = Reader::count(h, 1), j = Reader::count(h, 2);
    if (i == 0 || j == 0 || i >= j || j > k) Reader::fail(h, 1, "need fibers 1 <= i < j <= k");
    const std::size_t slot = pair_index(i - 1, j - 1, k);
    if (braids[slot]) Reader::fail(h, 0, "duplicate T block");
    const Correspondence src = tensor(fibers[i - 1], fibers[j - 1]).space;
    const Correspondence dst = tensor(fibers[j - 1], fibers[i - 1]).space;
    CorrMorphism t(src, dst);
    std::vector<bool> seen(n * n, false);
    while (!in.done() && in.peek().tokens.front().text == "block") {
      const Line& bl = in.take();
      Reader::arity(bl, 3);
      const std::size_t v = prefixed(bl, 1, "r="), w = prefixed(bl, 2, "s=");
      if (v >= n || w >= n) Reader::fail(bl, 1, "block vertex out of range");
      if (seen[v * n + w]) Reader::fail(bl, 0, "duplicate block");
      seen[v * n + w] = true;
      Block& m = t.block(v, w);
      for (Eigen::Index r = 0; r < m.rows(); ++r) {
        const Line& row = in.take();
        Reader::arity(row, static_cast<std::size_t>(m.cols()));
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
          try {
            m(r, c) = parse_complex(row.tokens[static_cast<std::size_t>(c)].text);
          } catch (const std::invalid_argument& e) {
            Reader::fail(row, static_cast<std::size_t>(c), e.what());
          }
        }
      }
    }
    for (Vertex v = 0; v < n; ++v)
      for (Vertex w = 0; w < n; ++w)
        if (!seen[v * n + w] && t.block(v, w).size() > 0)
          Reader::fail(h, 0,
                       "missing block r=" + std::to_string(v) + " s=" + std::to_string(w));
    braids[slot] = std::move(t);
  }
  std::vector<CorrMorphism> out;
  for (auto& b : braids) out.push_back(std::move(*b));
  try {
    return Skeleton(std::move(fibers), std::move(out));
  } catch (const std::invalid_argument& e) {
    throw ParseError(kline.number, 1, e.what());
  }
}

template <class F>
auto parse_with(std::string_view text, F&& body) {
  Reader in(text);
  try {
    auto value = body(in);
    in.expect_done();
    return value;
  } catch (const ParseError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ParseError(1, 1, e.what());
  }
}

}  // namespace

FormatTag peek_format(std::string_view text) {
  Reader in(text);
  return read_header(in);
}

Document parse_document(std::string_view text) {
  return parse_with(text, [](Reader& in) -> Document {
    const FormatTag tag = read_header(in);
    switch (tag) {
      case FormatTag::graph: return {tag, parse_graph_doc(in)};
      case FormatTag::corr: return {tag, parse_corr_doc(in)};
      case FormatTag::two_graph:
      case FormatTag::kgraph: return {tag, parse_presentation_doc(in, tag)};
      case FormatTag::skeleton: return {tag, parse_skeleton_doc(in)};
    }
    throw ParseError(1, 1, "unknown header");
  });
}

DirectedGraph parse_graph(std::string_view text) {
  return parse_with(text, [](Reader& in) {
    expect_tag(read_header(in), {FormatTag::graph});
    return parse_graph_doc(in);
  });
}

Correspondence parse_correspondence(std::string_view text) {
  return parse_with(text, [](Reader& in) {
    expect_tag(read_header(in), {FormatTag::corr});
    return parse_corr_doc(in);
  });
}

KGraphPresentation parse_presentation(std::string_view text) {
  return parse_with(text, [](Reader& in) {
    const FormatTag tag = read_header(in);
    expect_tag(tag, {FormatTag::two_graph, FormatTag::kgraph});
    return parse_presentation_doc(in, tag);
  });
}

Skeleton parse_skeleton(std::string_view text) {
  return parse_with(text, [](Reader& in) {
    expect_tag(read_header(in), {FormatTag::skeleton});
    return parse_skeleton_doc(in);
  });
}

std::string format_double(double x) {
  if (x == 0.0) x = 0.0;  // drop the sign of -0
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc()) throw std::runtime_error("format_double failed");
  return std::string(buf, ptr);
}

std::string format_complex(Complex z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw std::invalid_argument("cannot format a non-finite complex number");
  const double im = z.imag();
  return format_double(z.real()) + (std::signbit(im) && im != 0.0 ? "-" : "+") +
         format_double(std::abs(im)) + "i";
}

Complex parse_complex(std::string_view token) {
  const char* begin = token.data();
  const char* end = begin + token.size();
  double re = 0.0, im = 0.0;
  auto [p1, e1] = std::from_chars(begin, end, re);
  if (e1 != std::errc() || p1 == end)
    throw std::invalid_argument("malformed complex entry '" + std::string(token) + "'");
  const char sign = *p1;
  if (sign != '+' && sign != '-')
    throw std::invalid_argument("malformed complex entry '" + std::string(token) + "'");
  const char* q = p1 + 1;
  if (q < end && (*q == '+' || *q == '-'))
    throw std::invalid_argument("malformed complex entry '" + std::string(token) + "'");
  auto [p2, e2] = std::from_chars(q, end, im);
  if (e2 != std::errc() || p2 + 1 != end || *p2 != 'i')
    throw std::invalid_argument("malformed complex entry '" + std::string(token) + "'");
  return {re, sign == '-' ? -im : im};
}

std::string serialize(const DirectedGraph& graph) {
  std::ostringstream out;
  out << "kgc-graph v1\nvertices " << graph.vertex_count() << "\nedges " << graph.edge_count()
      << "\n";
  for (const Edge& e : graph.edges())
    out << e.label << " r=" << e.range << " s=" << e.source << "\n";
  return out.str();
}

namespace {

void write_dims(std::ostringstream& out, const DimMatrix& d) {
  for (std::size_t v = 0; v < d.size(); ++v) {
    for (std::size_t w = 0; w < d.size(); ++w) out << (w ? " " : "") << d(v, w);
    out << "\n";
  }
}

}  // namespace

std::string serialize(const Correspondence& x) {
  std::ostringstream out;
  out << "kgc-corr v1\nvertices " << x.vertex_count() << "\ndim\n";
  write_dims(out, x.dims());
  return out.str();
}

std::string serialize(const KGraphPresentation& presentation) {
  return serialize(presentation,
                   presentation.rank() == 2 ? FormatTag::two_graph : FormatTag::kgraph);
}

std::string serialize(const KGraphPresentation& presentation, FormatTag tag) {
  if (tag != FormatTag::two_graph && tag != FormatTag::kgraph)
    throw std::invalid_argument("presentations serialize as kgc-2graph or kgc-kgraph");
  if (tag == FormatTag::two_graph && presentation.rank() != 2)
    throw std::invalid_argument("kgc-2graph requires rank 2");
  const std::size_t k = presentation.rank();
  std::ostringstream out;
  out << tag_name(tag) << " v1\nvertices " << presentation.vertex_count() << "\nk " << k << "\n";
  for (std::size_t i = 0; i < k; ++i) {
    const DirectedGraph& g = presentation.graph(i);
    out << "graph " << i + 1 << "\nedges " << g.edge_count() << "\n";
    for (const Edge& e : g.edges()) out << e.label << " r=" << e.range << " s=" << e.source << "\n";
    out << "end\n";
  }
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      const DirectedGraph& gi = presentation.graph(i);
      const DirectedGraph& gj = presentation.graph(j);
      const auto from = fibred_product(gi, gj);
      const auto to = fibred_product(gj, gi);
      const Square& sq = presentation.square(i, j);
      out << "squares " << i + 1 << " " << j + 1 << "\n";
      for (std::size_t p = 0; p < sq.image.size(); ++p) {
        if (sq.image[p] == npos) continue;
        const std::size_t q = sq.image[p];
        out << gi.edge(from.left_index[p]).label << " " << gj.edge(from.right_index[p]).label
            << " -> " << gj.edge(to.left_index[q]).label << " "
            << gi.edge(to.right_index[q]).label << "\n";
      }
      out << "end\n";
    }
  return out.str();
}

std::string serialize(const Skeleton& skeleton) {
  const std::size_t k = skeleton.rank();
  const std::size_t n = skeleton.vertex_count();
  std::ostringstream out;
  out << "kgc-skeleton v1\nvertices " << n << "\nk " << k << "\n";
  for (std::size_t i = 0; i < k; ++i) {
    out << "dim Y" << i + 1 << "\n";
    write_dims(out, skeleton.fiber(i).dims());
  }
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      out << "T " << i + 1 << " " << j + 1 << "\n";
      const CorrMorphism& t = skeleton.braid(i, j);
      for (Vertex v = 0; v < n; ++v)
        for (Vertex w = 0; w < n; ++w) {
          const Block& b = t.block(v, w);
          if (b.size() == 0) continue;
          out << "block r=" << v << " s=" << w << "\n";
          for (Eigen::Index r = 0; r < b.rows(); ++r) {
            for (Eigen::Index c = 0; c < b.cols(); ++c)
              out << (c ? " " : "") << format_complex(b(r, c));
            out << "\n";
          }
        }
    }
  return out.str();
}

std::string serialize(const Document& document) {
  return std::visit(
      [&](const auto& value) -> std::string {
        using T = std::decay_t<decltype(value)>;
        if constexpr (std::is_same_v<T, KGraphPresentation>)
          return serialize(value, document.tag);
        else
          return serialize(value);
      },
      document.value);
}

}  // namespace kgc
