#include "bmatch/io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>

namespace bmatch {
namespace {

std::vector<std::string> split(const std::string& line) {
  std::istringstream is(line);
  std::vector<std::string> out;
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

template <typename T>
T parse_number(const std::string& tok, std::size_t line) {
  T value{};
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) throw ParseError(line, "malformed number '" + tok + "'");
  return value;
}

std::ifstream open(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  return in;
}

}  // namespace

BInstance read_instance(std::istream& in) {
  BInstance inst;
  std::optional<std::size_t> n, m;
  std::vector<std::optional<DegreeSet>> sets;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto tok = split(line);
    if (tok.empty() || tok[0][0] == '#') continue;
    if (tok[0] == "p") {
      if (n) throw ParseError(lineno, "duplicate problem line");
      if (tok.size() != 4 || tok[1] != "bm") throw ParseError(lineno, "expected 'p bm <n> <m>'");
      n = parse_number<std::size_t>(tok[2], lineno);
      m = parse_number<std::size_t>(tok[3], lineno);
      inst.graph = MultiGraph(*n);
      sets.assign(*n, std::nullopt);
    } else if (!n) {
      throw ParseError(lineno, "expected problem line before '" + tok[0] + "'");
    } else if (tok[0] == "e") {
      if (tok.size() != 3 && tok.size() != 4) throw ParseError(lineno, "expected 'e <u> <v> [w]'");
      if (inst.graph.edge_count() == *m) throw ParseError(lineno, "more edge lines than declared");
      const auto u = parse_number<std::size_t>(tok[1], lineno);
      const auto v = parse_number<std::size_t>(tok[2], lineno);
      const Weight w = tok.size() == 4 ? parse_number<Weight>(tok[3], lineno) : 1;
      if (u >= *n || v >= *n) throw ParseError(lineno, "edge endpoint out of range");
      inst.graph.add_edge(u, v, w);
    } else if (tok[0] == "b") {
      if (tok.size() < 2) throw ParseError(lineno, "expected 'b <v> <d1> ... <dk>'");
      const auto v = parse_number<std::size_t>(tok[1], lineno);
      if (v >= *n) throw ParseError(lineno, "vertex out of range");
      if (sets[v]) throw ParseError(lineno, "duplicate degree set for vertex " + std::to_string(v));
      std::vector<int> values;
      for (std::size_t i = 2; i < tok.size(); ++i) values.push_back(parse_number<int>(tok[i], lineno));
      try {
        sets[v] = DegreeSet(std::move(values));
      } catch (const Error& e) {
        throw ParseError(lineno, e.what());
      }
    } else {
      throw ParseError(lineno, "unknown line type '" + tok[0] + "'");
    }
  }
  if (!n) throw ParseError(lineno, "missing problem line");
  if (inst.graph.edge_count() != *m)
    throw ParseError(lineno, "declared " + std::to_string(*m) + " edges, found " +
                                 std::to_string(inst.graph.edge_count()));
  for (std::size_t v = 0; v < *n; ++v) {
    if (!sets[v]) throw ParseError(lineno, "missing degree set for vertex " + std::to_string(v));
    inst.degree_sets.push_back(*sets[v]);
  }
  return inst;
}

BInstance read_instance_file(const std::string& path) {
  auto in = open(path);
  return read_instance(in);
}

void write_instance(std::ostream& out, const BInstance& instance, const std::vector<std::string>& header_comments,
                    const std::vector<std::string>& edge_notes) {
  for (const auto& c : header_comments) out << "# " << c << '\n';
  const MultiGraph& g = instance.graph;
  out << "p bm " << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (e < edge_notes.size() && !edge_notes[e].empty()) out << "# " << edge_notes[e] << '\n';
    out << "e " << g.edge(e).u << ' ' << g.edge(e).v << ' ' << g.edge(e).w << '\n';
  }
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    out << "b " << v;
    for (int k : instance.degree_sets[v].values()) out << ' ' << k;
    out << '\n';
  }
}

Certificate read_certificate(std::istream& in) {
  Certificate cert;
  bool have_s = false, have_m = false;
  std::string line;
  std::size_t lineno = 0;
  std::vector<EdgeId> edges;
  while (std::getline(in, line)) {
    ++lineno;
    const auto tok = split(line);
    if (tok.empty() || tok[0][0] == '#') continue;
    if (tok[0] == "s") {
      if (have_s) throw ParseError(lineno, "duplicate size line");
      if (tok.size() != 3) throw ParseError(lineno, "expected 's <size> <weight>'");
      cert.size = parse_number<std::size_t>(tok[1], lineno);
      cert.weight = parse_number<Weight>(tok[2], lineno);
      have_s = true;
    } else if (tok[0] == "m") {
      if (!have_s) throw ParseError(lineno, "matching line before size line");
      if (have_m) throw ParseError(lineno, "duplicate matching line");
      for (std::size_t i = 1; i < tok.size(); ++i) edges.push_back(parse_number<EdgeId>(tok[i], lineno));
      have_m = true;
    } else {
      throw ParseError(lineno, "unknown line type '" + tok[0] + "'");
    }
  }
  if (!have_s) throw ParseError(lineno, "missing size line");
  if (!have_m) throw ParseError(lineno, "missing matching line");
  cert.matching = Matching(edges);
  if (cert.matching.size() != edges.size()) throw ParseError(lineno, "duplicate edge index in matching");
  if (cert.matching.size() != cert.size) throw ParseError(lineno, "size line disagrees with matching line");
  return cert;
}

Certificate read_certificate_file(const std::string& path) {
  auto in = open(path);
  return read_certificate(in);
}

void write_certificate(std::ostream& out, const MultiGraph& g, const Matching& f) {
  out << "s " << f.size() << ' ' << total_weight(g, f) << '\n';
  out << 'm';
  for (EdgeId e : f.edges()) out << ' ' << e;
  out << '\n';
}

}  // namespace bmatch
