#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "kgc/formats.hpp"
#include "kgc/imprimitivity.hpp"

namespace kgc::cli {

namespace {

struct Options {
  std::optional<double> tol;
  std::size_t restarts = 20;
  std::size_t max_candidates = 1'000'000;
  std::uint64_t seed = 0;
  std::optional<std::size_t> limit;
  std::string output;
  std::vector<std::string> files;
};

// Input problems that end the run with kUsage.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Loaded {
  std::string path;
  Document doc;
};

Loaded load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return {path, parse_document(buf.str())};
  } catch (const ParseError& e) {
    throw InputError(path + ":" + std::to_string(e.line()) + ":" + std::to_string(e.column()) +
                     ": " + e.what());
  }
}

template <class T>
const T& expect(const Loaded& f, std::string_view what) {
  if (const T* value = std::get_if<T>(&f.doc.value)) return *value;
  throw InputError(f.path + ": expected " + std::string(what) + ", got " +
                   std::string(tag_name(f.doc.tag)));
}

Skeleton skeleton_of(const Loaded& f) {
  if (const auto* s = std::get_if<Skeleton>(&f.doc.value)) return *s;
  if (const auto* p = std::get_if<KGraphPresentation>(&f.doc.value))
    return skeleton_from_squares_unchecked(*p);
  throw InputError(f.path + ": expected a skeleton or a presentation, got " +
                   std::string(tag_name(f.doc.tag)));
}

Correspondence correspondence_of(const Loaded& f) {
  if (const auto* x = std::get_if<Correspondence>(&f.doc.value)) return *x;
  if (const auto* g = std::get_if<DirectedGraph>(&f.doc.value)) return graph_correspondence(*g);
  throw InputError(f.path + ": expected a correspondence or a graph, got " +
                   std::string(tag_name(f.doc.tag)));
}

// Writes to -o when given, else appends to stdout.
void emit(const Options& o, std::ostream& out, const std::string& text) {
  if (o.output.empty()) {
    out << text;
    return;
  }
  std::ofstream file(o.output, std::ios::binary);
  if (!file) throw InputError(o.output + ": cannot write file");
  file << text;
}

void print_violations(std::ostream& out, const KGraphVerdict& v) {
  out << "violations " << v.violations.size() << "\n";
  for (const Violation& x : v.violations) out << "violation " << x.message << "\n";
}

void print_blocks(std::ostream& out, const CorrMorphism& m) {
  const std::size_t n = m.vertex_count();
  for (Vertex v = 0; v < n; ++v)
    for (Vertex w = 0; w < n; ++w) {
      const Block& b = m.block(v, w);
      if (b.size() == 0) continue;
      out << "block r=" << v << " s=" << w << "\n";
      for (Eigen::Index r = 0; r < b.rows(); ++r) {
        for (Eigen::Index c = 0; c < b.cols(); ++c)
          out << (c ? " " : "") << format_complex(b(r, c));
        out << "\n";
      }
    }
}

int cmd_validate(const Options& o, std::ostream& out) {
  const Loaded f = load(o.files.at(0));
  if (const auto* p = std::get_if<KGraphPresentation>(&f.doc.value)) {
    const KGraphVerdict v = validate_kgraph(*p);
    out << (v.valid ? "VALID" : "INVALID") << "\nformat " << tag_name(f.doc.tag) << "\n";
    print_violations(out, v);
    return v.valid ? kAffirmative : kNegative;
  }
  if (const auto* s = std::get_if<Skeleton>(&f.doc.value)) {
    const HexagonVerdict h = hexagon_check(*s, o.tol.value_or(kStructuralTolerance));
    out << (h.pass ? "VALID" : "INVALID") << "\nformat " << tag_name(f.doc.tag) << "\nhexagon "
        << (h.pass ? "PASS" : "FAIL") << "\n";
    return h.pass ? kAffirmative : kNegative;
  }
  out << "VALID\nformat " << tag_name(f.doc.tag) << "\n";
  return kAffirmative;
}

int cmd_skeleton(const Options& o, std::ostream& out) {
  const Loaded f = load(o.files.at(0));
  const auto& p = expect<KGraphPresentation>(f, "a presentation");
  const KGraphVerdict v = validate_kgraph(p);
  if (!v.valid) {
    out << "INVALID\n";
    print_violations(out, v);
    return kNegative;
  }
  emit(o, out, serialize(skeleton_from_kgraph(p)));
  return kAffirmative;
}

int cmd_hexagon(const Options& o, std::ostream& out) {
  const Skeleton s = skeleton_of(load(o.files.at(0)));
  const HexagonVerdict h = hexagon_check(s, o.tol.value_or(kStructuralTolerance));
  out << (h.pass ? "PASS" : "FAIL") << "\nvacuous " << (h.vacuous ? "yes" : "no")
      << "\nmax_residual " << format_double(h.max_residual) << "\n";
  for (const HexagonResidual& t : h.triples)
    out << "triple " << t.i + 1 << " " << t.j + 1 << " " << t.l + 1 << " "
        << format_double(t.residual) << "\n";
  return h.pass ? kAffirmative : kNegative;
}

int cmd_omega(const Options& o, std::ostream& out) {
  const Skeleton s = skeleton_of(load(o.files.at(0)));
  try {
    out << "omega = " << format_complex(omega(s).value) << "\n";
  } catch (const std::logic_error& e) {
    throw InputError(e.what());
  }
  return kAffirmative;
}

int cmd_iso(const Options& o, std::ostream& out) {
  if (o.files.size() != 2) throw InputError("iso needs exactly two files");
  const Skeleton a = skeleton_of(load(o.files[0]));
  const Skeleton b = skeleton_of(load(o.files[1]));
  IsoSearchOptions opts;
  opts.restarts = o.restarts;
  opts.seed = o.seed;
  opts.tol = o.tol.value_or(1e-6);
  const IsoVerdict v = skeleton_iso_search(a, b, opts);
  std::ostringstream report;
  report << to_string(v.status) << "\nresidual " << format_double(v.residual) << "\nrestarts "
         << v.restarts_used << "\nreason " << v.reason << "\n";
  if (v.witness)
    for (std::size_t i = 0; i < v.witness->size(); ++i) {
      report << "theta " << i + 1 << "\n";
      print_blocks(report, (*v.witness)[i]);
    }
  out << report.str();
  switch (v.status) {
    case IsoStatus::isomorphic: return kAffirmative;
    case IsoStatus::not_isomorphic: return kNegative;
    case IsoStatus::unknown: return kUnknown;
  }
  return kUnknown;
}

int cmd_realize(const Options& o, std::ostream& out) {
  const Skeleton s = skeleton_of(load(o.files.at(0)));
  RealizeOptions opts;
  opts.max_candidates = o.max_candidates;
  opts.seed = o.seed;
  opts.search.restarts = o.restarts;
  opts.search.tol = o.tol.value_or(1e-6);
  const RealizabilityVerdict v = realizability(s, opts);
  out << to_string(v.status) << "\ncandidates " << v.candidates_examined << "\nresidual "
      << format_double(v.residual) << "\nreason " << v.reason << "\n";
  if (v.witness) {
    if (o.output.empty()) out << "# witness\n";
    emit(o, out, serialize(*v.witness));
  }
  switch (v.status) {
    case RealizeStatus::realizable: return kAffirmative;
    case RealizeStatus::not_realizable: return kNegative;
    case RealizeStatus::unknown: return kUnknown;
  }
  return kUnknown;
}

int cmd_enumerate(const Options& o, std::ostream& out) {
  std::vector<DirectedGraph> graphs;
  for (const auto& path : o.files) graphs.push_back(expect<DirectedGraph>(load(path), "a graph"));
  const std::size_t n = graphs.front().vertex_count();
  for (const auto& g : graphs)
    if (g.vertex_count() != n) throw InputError("graphs have different vertex counts");
  PresentationEnumerator e(std::move(graphs), o.limit.value_or(npos));
  std::ostringstream text;
  std::size_t count = 0;
  while (auto p = e.next()) text << "# presentation " << ++count << "\n" << serialize(*p);
  text << "# count " << count << "\n";
  if (e.truncated()) text << "# truncated\n";
  emit(o, out, text.str());
  return kAffirmative;
}

int cmd_imprimitivity(const Options& o, std::ostream& out) {
  const Correspondence x = correspondence_of(load(o.files.at(0)));
  const ImprimitivityReport r = analyze(x);
  out << (r.is_imprimitivity ? "IMPRIMITIVITY" : "NOT_IMPRIMITIVITY") << "\nsymmetric "
      << (r.is_symmetric ? "yes" : "no") << "\n";
  if (r.rieffel_permutation) {
    out << "permutation";
    for (Vertex v : *r.rieffel_permutation) out << " " << v;
    out << "\n";
  }
  out << "reason " << r.reason << "\n";
  if (r.is_imprimitivity && !o.output.empty()) emit(o, out, serialize(realize_as_graph(x).graph));
  return r.is_imprimitivity ? kAffirmative : kNegative;
}

int cmd_tensor(const Options& o, std::ostream& out) {
  std::vector<Loaded> files;
  for (const auto& path : o.files) files.push_back(load(path));
  const bool all_graphs = std::all_of(files.begin(), files.end(), [](const Loaded& f) {
    return std::holds_alternative<DirectedGraph>(f.doc.value);
  });
  if (all_graphs) {
    DirectedGraph g = std::get<DirectedGraph>(files.front().doc.value);
    for (std::size_t i = 1; i < files.size(); ++i) {
      const auto& next = std::get<DirectedGraph>(files[i].doc.value);
      if (next.vertex_count() != g.vertex_count())
        throw InputError("graphs have different vertex counts");
      g = fibred_product(g, next).graph;
    }
    emit(o, out, serialize(g));
    return kAffirmative;
  }
  Correspondence x(correspondence_of(files.front()).dims());
  for (std::size_t i = 1; i < files.size(); ++i) {
    const Correspondence y(correspondence_of(files[i]).dims());
    if (y.vertex_count() != x.vertex_count())
      throw InputError("correspondences have different vertex counts");
    x = Correspondence(tensor(x, y).space.dims());
  }
  emit(o, out, serialize(x));
  return kAffirmative;
}

using Handler = int (*)(const Options&, std::ostream&);

struct Command {
  const char* name;
  const char* help;
  std::size_t min_files;
  std::size_t max_files;  // 0 = unbounded
  Handler run;
};

constexpr Command kCommands[] = {
    {"validate", "Check a document; presentations are checked as k-graphs", 1, 1, cmd_validate},
    {"skeleton", "Print the skeleton of a k-graph presentation", 1, 1, cmd_skeleton},
    {"hexagon", "Check the hexagon equations of a skeleton", 1, 1, cmd_hexagon},
    {"omega", "Print the phase invariant of a rank-2 one-dimensional skeleton", 1, 1, cmd_omega},
    {"iso", "Search for an isomorphism between two skeletons", 2, 2, cmd_iso},
    {"realize", "Decide whether a skeleton comes from a k-graph", 1, 1, cmd_realize},
    {"enumerate", "List all k-graph presentations on the given graphs", 1, 0, cmd_enumerate},
    {"imprimitivity", "Test whether a correspondence is an imprimitivity bimodule", 1, 1,
     cmd_imprimitivity},
    {"tensor", "Balanced tensor product of correspondences or graphs", 1, 0, cmd_tensor},
};

}  // namespace

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Toolkit for k-graphs, correspondences and product systems", "kgc"};
  app.require_subcommand(1);
  Options o;
  const Command* chosen = nullptr;
  for (const Command& c : kCommands) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    sub->add_option("files", o.files, "Input files")->required();
    sub->add_option("--tol", o.tol, "Tolerance (1e-9 structural, 1e-6 search)");
    sub->add_option("--restarts", o.restarts, "Search restarts")->capture_default_str();
    sub->add_option("--max-candidates", o.max_candidates, "Realizability candidate cap")
        ->capture_default_str();
    sub->add_option("--seed", o.seed, "Random seed")->capture_default_str();
    sub->add_option("--limit", o.limit, "Enumeration limit");
    sub->add_option("-o", o.output, "Output file");
    sub->callback([&chosen, &c] { chosen = &c; });
  }

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kAffirmative;
  } catch (const CLI::ParseError& e) {
    err << "kgc: " << e.what() << "\n";
    return kUsage;
  }

  if (o.files.size() < chosen->min_files ||
      (chosen->max_files && o.files.size() > chosen->max_files)) {
    err << "kgc " << chosen->name << ": wrong number of files\n";
    return kUsage;
  }
  try {
    return chosen->run(o, out);
  } catch (const InputError& e) {
    err << "kgc " << chosen->name << ": " << e.what() << "\n";
  } catch (const std::invalid_argument& e) {
    err << "kgc " << chosen->name << ": " << e.what() << "\n";
  } catch (const std::domain_error& e) {
    err << "kgc " << chosen->name << ": " << e.what() << "\n";
  }
  return kUsage;
}

}  // namespace kgc::cli
