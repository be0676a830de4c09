#pragma once

// Line-oriented text formats. Every document starts with `<tag> v1`; '#'
// starts a comment; tokens are separated by whitespace. Colors and fibers are
// numbered from 1 in files.
//
//   kgc-graph v1         vertices <n> / edges <m> / m lines `<label> r=<v> s=<w>`
//   kgc-corr v1          vertices <n> / dim / n rows of n integers
//   kgc-2graph v1,       vertices <n> / k <k> / k blocks `graph <i>` .. `end`
//   kgc-kgraph v1          (each: edges <m> + edge lines), then per i < j
//                          `squares <i> <j>` / `<e> <f> -> <ftilde> <etilde>` / `end`
//   kgc-skeleton v1      vertices <n> / k <k> / per fiber `dim Y<i>` + rows /
//                          per i < j `T <i> <j>` then `block r=<v> s=<w>` + rows
//
// Complex entries are written `<re><sign><im>i`, e.g. `0.5-0.5i`, with the
// shortest decimal strings that round-trip. serialize() output is canonical:
// parse followed by serialize reproduces it byte for byte.

#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include "kgc/correspondence.hpp"
#include "kgc/graphs.hpp"
#include "kgc/product_system.hpp"

namespace kgc {

enum class FormatTag { graph, corr, two_graph, kgraph, skeleton };

std::string_view tag_name(FormatTag tag);

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message);
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

using DocumentValue = std::variant<DirectedGraph, Correspondence, KGraphPresentation, Skeleton>;

struct Document {
  FormatTag tag;
  DocumentValue value;
};

/// Reads the header line only.
FormatTag peek_format(std::string_view text);

Document parse_document(std::string_view text);
DirectedGraph parse_graph(std::string_view text);
Correspondence parse_correspondence(std::string_view text);
/// Accepts both kgc-2graph (k must be 2) and kgc-kgraph.
KGraphPresentation parse_presentation(std::string_view text);
Skeleton parse_skeleton(std::string_view text);

std::string serialize(const DirectedGraph& graph);
std::string serialize(const Correspondence& x);
/// kgc-2graph for k = 2 and kgc-kgraph otherwise, unless a tag is given.
std::string serialize(const KGraphPresentation& presentation);
std::string serialize(const KGraphPresentation& presentation, FormatTag tag);
std::string serialize(const Skeleton& skeleton);
std::string serialize(const Document& document);

/// Shortest round-trip decimal; -0 is written as 0.
std::string format_double(double x);
std::string format_complex(Complex z);
/// Throws std::invalid_argument on malformed input.
Complex parse_complex(std::string_view token);

}  // namespace kgc
