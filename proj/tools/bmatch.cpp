// bmatch: exact B-matching solver front end.
//
// Exit codes: 0 optimal / feasible / valid, 2 infeasible, 1 usage or
// internal error.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "bmatch/core.hpp"
#include "bmatch/generator.hpp"
#include "bmatch/harness.hpp"
#include "bmatch/io.hpp"
#include "bmatch/neighbourhood.hpp"
#include "bmatch/oracle.hpp"
#include "bmatch/reduce.hpp"
#include "bmatch/structure.hpp"

using namespace bmatch;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kError = 1;
constexpr int kInfeasible = 2;

struct Common {
  std::string input;
  std::string output;
  std::string objective;
  std::string format = "text";
};

BInstance load(const Common& c) {
  BInstance inst = c.input == "-" ? read_instance(std::cin) : read_instance_file(c.input);
  if (!c.objective.empty()) inst.objective = parse_objective(c.objective);
  const auto issues = validate(inst);
  if (!issues.empty()) throw InvalidInstance(issues);
  return inst;
}

// Writes to --output when given, stdout otherwise.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_.open(path);
      if (!file_) throw Error("cannot open " + path + " for writing");
    }
  }
  std::ostream& out() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

std::string join(const std::vector<EdgeId>& v) {
  std::ostringstream s;
  for (std::size_t i = 0; i < v.size(); ++i) s << (i ? " " : "") << v[i];
  return s.str();
}

std::string edge_text(const MultiGraph& g, EdgeId e) {
  return "e" + std::to_string(e) + "(" + std::to_string(g.edge(e).u) + "," + std::to_string(g.edge(e).v) + ")";
}

std::string walk_text(const MultiGraph& g, const AlternatingWalk& w) {
  std::string s = std::to_string(w.start());
  for (const auto& st : w.steps) s += " -" + edge_text(g, st.edge) + "- " + std::to_string(st.to);
  return s;
}

// ---------------------------------------------------------------------------

struct SolveFlags {
  Common c;
  bool trace = false;
  unsigned jobs = 1;
};

int cmd_solve(const SolveFlags& f) {
  const BInstance inst = load(f.c);
  const auto t0 = std::chrono::steady_clock::now();
  SolveOptions opts;
  opts.jobs = f.jobs;
  if (f.trace) opts.trace = &std::cerr;
  const SolveResult r = solve(inst, opts);
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();

  const bool ok = r.status == SolveStatus::Optimal;
  const auto deg = degrees(inst.graph, r.matching);
  Sink sink(f.c.output);
  std::ostream& out = sink.out();
  if (f.c.format == "structured") {
    json j;
    j["status"] = ok ? "optimal" : "infeasible";
    j["objective"] = to_string(inst.objective);
    j["size"] = r.matching.size();
    j["weight"] = total_weight(inst.graph, r.matching);
    j["edges"] = r.matching.edges();
    j["degrees"] = deg;
    j["iterations"] = r.iterations;
    j["candidates_solved"] = r.candidates_solved;
    j["wall_time_ms"] = ms;
    out << j.dump() << '\n';
  } else {
    out << "status " << (ok ? "optimal" : "infeasible") << '\n';
    if (ok) {
      out << "objective " << to_string(inst.objective) << '\n';
      out << "size " << r.matching.size() << '\n';
      out << "weight " << total_weight(inst.graph, r.matching) << '\n';
      out << "edges " << join(r.matching.edges()) << '\n';
      out << "degrees";
      for (int d : deg) out << ' ' << d;
      out << '\n';
      out << "iterations " << r.iterations << '\n';
      out << "candidates_solved " << r.candidates_solved << '\n';
    }
    out << "wall_time_ms " << ms << '\n';
  }
  return ok ? kOk : kInfeasible;
}

// ---------------------------------------------------------------------------

struct CheckFlags {
  Common c;
  std::string certificate;
  bool assert_optimal = false;
};

// A certificate file, or the output of `solve` in either format.
Certificate load_matching(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  Certificate c;
  if (first != std::string::npos && text[first] == '{') {
    const json report = json::parse(text);
    if (report.value("status", "") != "optimal") throw Error(path + ": report carries no matching");
    c.size = report.at("size").get<std::size_t>();
    c.weight = report.at("weight").get<Weight>();
    c.matching = Matching(report.at("edges").get<std::vector<EdgeId>>());
    return c;
  }
  if (text.rfind("status ", first) == first) {
    std::istringstream lines(text);
    std::string line, key;
    bool has_edges = false;
    while (std::getline(lines, line)) {
      std::istringstream ls(line);
      ls >> key;
      if (key == "status") {
        std::string status;
        ls >> status;
        if (status != "optimal") throw Error(path + ": report carries no matching");
      } else if (key == "size") {
        ls >> c.size;
      } else if (key == "weight") {
        ls >> c.weight;
      } else if (key == "edges") {
        std::vector<EdgeId> edges;
        for (EdgeId e; ls >> e;) edges.push_back(e);
        c.matching = Matching(std::move(edges));
        has_edges = true;
      }
    }
    if (!has_edges) throw Error(path + ": report has no edges line");
    return c;
  }
  std::istringstream cert(text);
  return read_certificate(cert);
}

int cmd_check(const CheckFlags& f) {
  const BInstance inst = load(f.c);
  const Certificate cert = load_matching(f.certificate);
  check_edges(inst.graph, cert.matching);
  Sink sink(f.c.output);
  std::ostream& out = sink.out();

  if (cert.size != cert.matching.size() || cert.weight != total_weight(inst.graph, cert.matching)) {
    out << "invalid: header does not match the listed edges\n";
    return kError;
  }
  const auto deg = degrees(inst.graph, cert.matching);
  for (Vertex v = 0; v < inst.vertex_count(); ++v) {
    if (!inst.degree_sets[v].contains(deg[v])) {
      out << "invalid: vertex " << v << " has degree " << deg[v] << " outside its degree set\n";
      return kInfeasible;
    }
  }
  out << "valid size " << cert.matching.size() << " weight " << cert.weight << '\n';
  if (f.assert_optimal) {
    const StepResult step = improvement_step(inst, cert.matching);
    if (step.improved) {
      out << "not optimal: candidate " << *step.chosen << " reaches " << reported_value(inst, *step.improved) << '\n';
      return kError;
    }
    out << "optimal\n";
  }
  return kOk;
}

// ---------------------------------------------------------------------------

struct OracleFlags {
  Common c;
  std::string verify;
  std::uint64_t seed = 1;
  std::size_t count = 100;
  std::size_t limit = kDefaultOracleEdgeLimit;
};

int verify_harness(const OracleFlags& f, std::ostream& out) {
  Rng rng(f.seed);
  SmallInstanceOptions o;
  if (f.verify == "theorem") {
    o.max_n = 6;
    o.max_m = 10;
  }
  std::size_t checked = 0;
  for (std::size_t i = 0; i < f.count; ++i) {
    std::optional<Counterexample> bad;
    BInstance inst;
    if (f.verify == "theorem") {
      inst = random_small_instance(rng, o);
      bad = verify_improvement_theorem(inst, f.limit);
    } else {
      MatchingPair p = random_pair(rng, o);
      inst = p.instance;
      if (f.verify == "exchange") {
        bad = verify_exchange_lemma(inst, p.m, p.n);
      } else {
        const auto seq = extract_canonical_sequence(inst, p.m, p.n);
        if (auto why = check_sequence(inst, p.m, p.n, seq)) bad = Counterexample{p.m, p.n, *why};
      }
    }
    ++checked;
    if (bad) {
      out << "counterexample " << i << ": " << bad->detail << '\n';
      out << "M " << join(bad->m.edges()) << '\n';
      if (bad->n) out << "N " << join(bad->n->edges()) << '\n';
      write_instance(out, inst);
      return kError;
    }
  }
  out << "ok " << f.verify << ' ' << checked << '\n';
  return kOk;
}

int cmd_oracle(const OracleFlags& f) {
  Sink sink(f.c.output);
  if (!f.verify.empty()) return verify_harness(f, sink.out());
  if (f.c.input.empty()) throw CLI::ValidationError("--input", "required unless --verify is given");
  const BInstance inst = load(f.c);
  const auto r = oracle_optimum(inst, f.limit);
  if (!r) {
    sink.out() << "status infeasible\n";
    return kInfeasible;
  }
  sink.out() << "value " << r->value << '\n' << "witness " << join(r->witness.edges()) << '\n';
  return kOk;
}

// ---------------------------------------------------------------------------

struct DecomposeFlags {
  Common c;
  std::string a, b;
};

void print_canonical(std::ostream& out, const MultiGraph& g, const CanonicalPath& s) {
  out << "  endpoints " << s.first << ' ' << s.last << '\n';
  if (s.path)
    for (const auto& p : s.path->parts) out << "  path " << walk_text(g, p) << '\n';
  for (const auto* list : {&s.cycles_first, &s.cycles_last})
    for (const auto& c : *list) {
      out << "  meta-cycle at " << c.start() << '\n';
      for (const auto& p : c.parts) out << "    " << walk_text(g, p) << '\n';
    }
}

int cmd_decompose(const DecomposeFlags& f) {
  const BInstance inst = load(f.c);
  const Matching m = load_matching(f.a).matching;
  const Matching n = load_matching(f.b).matching;
  Sink sink(f.c.output);
  std::ostream& out = sink.out();
  if (!is_b_matching(inst, m) || !is_b_matching(inst, n)) {
    out << "status infeasible\n";
    return kInfeasible;
  }
  const MultiGraph& g = inst.graph;
  const Decomposition dec = decompose_symmetric_difference(inst, m, n);
  out << "symmetric difference " << join(symmetric_difference(m, n).edges()) << '\n';
  for (const auto& p : dec.paths) out << "path " << walk_text(g, p) << '\n';
  for (const auto& c : dec.cycles) out << "cycle " << walk_text(g, c) << '\n';

  const CanonicalSequence seq = extract_canonical_sequence(inst, m, n);
  Matching cur = apply(m, Matching([&] {
                         std::vector<EdgeId> e;
                         for (const auto& c : seq.cycles)
                           for (EdgeId x : c.edge_ids()) e.push_back(x);
                         return e;
                       }()));
  for (std::size_t i = 0; i < seq.seq.size(); ++i) {
    const auto& s = seq.seq[i];
    out << "step " << i << " weight " << weight_of(inst, cur, s.edges()) << '\n';
    print_canonical(out, g, s);
    cur = apply(cur, s.edges());
  }
  return kOk;
}

// ---------------------------------------------------------------------------

struct GadgetFlags {
  Common c;
  std::string stage = "pm";
  std::string certificate;
};

// Uniform spec of the type of the given B-matching, or of the first parity
// interval of every degree set.
UniformSpec gadget_spec(const BInstance& inst, const std::string& certificate) {
  UniformSpec spec;
  if (!certificate.empty()) {
    const TypeAssignment t = current_type(inst, load_matching(certificate).matching);
    return candidate_spec(inst, t, {});
  }
  const BInstance norm = normalized(inst);
  for (const auto& b : norm.degree_sets) spec.push_back(UniformVertexSpec::from(parity_intervals(b).front()));
  return spec;
}

int cmd_gadget(const GadgetFlags& f) {
  const BInstance inst = load(f.c);
  const UniformSpec spec = gadget_spec(inst, f.certificate);
  Sink sink(f.c.output);
  std::ostream& out = sink.out();

  BInstance staged;
  staged.objective = inst.objective;
  std::vector<std::string> notes;
  std::vector<std::string> header{"stage " + f.stage};
  auto provenance = [&](const LiftMap& map) {
    for (std::size_t i = 0; i < map.origin.size(); ++i) {
      notes.push_back(map.origin[i] ? "edge " + std::to_string(i) + " <- original " + std::to_string(*map.origin[i])
                                    : "edge " + std::to_string(i) + " <- gadget");
    }
  };

  if (f.stage == "uniform") {
    staged.graph = inst.graph;
    for (const auto& s : spec) staged.degree_sets.push_back(s.values());
  } else {
    auto [ab, to_source] = uniform_to_ab(inst.graph, spec);
    if (f.stage == "ab") {
      staged.graph = ab.graph;
      for (Vertex v = 0; v < ab.graph.vertex_count(); ++v) staged.degree_sets.push_back(DegreeSet::interval(ab.a[v], ab.b[v]));
      provenance(to_source);
    } else if (f.stage == "pm") {
      const GadgetGraph gadget = ab_to_pm(ab);
      staged.graph = MultiGraph(gadget.graph.vertex_count);
      for (const Edge& e : gadget.graph.edges) staged.graph.add_edge(e.u, e.v, e.w);
      staged.degree_sets.assign(gadget.graph.vertex_count, DegreeSet{1});
      provenance(compose(gadget.lift, to_source));
      header.push_back("perfect matching gadget; degree sets {1}");
    } else {
      throw CLI::ValidationError("--stage", "expected uniform, ab or pm");
    }
  }
  write_instance(out, staged, header, notes);
  return kOk;
}

// ---------------------------------------------------------------------------

struct GenFlags {
  std::string output;
  GeneratorOptions g;
  std::string profile = "mixed";
  bool free = false;
};

int cmd_gen(GenFlags f) {
  f.g.profile = parse_profile(f.profile);
  f.g.planted = !f.free;
  const BInstance inst = generate(f.g);
  Sink sink(f.output);
  write_instance(sink.out(), inst,
                 {"generated n " + std::to_string(f.g.n) + " m " + std::to_string(f.g.m) + " seed " +
                  std::to_string(f.g.seed) + " profile " + f.profile});
  return kOk;
}

void add_common(CLI::App* app, Common& c, bool input_required = true) {
  auto* in = app->add_option("--input,-i", c.input, "instance file ('-' for stdin)");
  if (input_required) in->required();
  app->add_option("--output,-o", c.output, "output file (default stdout)");
  app->add_option("--objective", c.objective, "override the objective")
      ->check(CLI::IsMember({"max-card", "min-card", "max-weight", "min-weight"}));
  app->add_option("--format", c.format, "text or structured")->check(CLI::IsMember({"text", "structured"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact B-matching for degree sets without gaps longer than one"};
  app.require_subcommand(1);

  SolveFlags solve_f;
  auto* solve_cmd = app.add_subcommand("solve", "optimal B-matching");
  add_common(solve_cmd, solve_f.c);
  solve_cmd->add_flag("--trace", solve_f.trace, "per-iteration progress on stderr");
  solve_cmd->add_option("--jobs,-j", solve_f.jobs, "threads for candidate evaluation")->check(CLI::PositiveNumber);

  CheckFlags check_f;
  auto* check_cmd = app.add_subcommand("check", "validate a certificate");
  add_common(check_cmd, check_f.c);
  check_cmd->add_option("--certificate,-c", check_f.certificate, "certificate file")->required();
  check_cmd->add_flag("--assert-optimal", check_f.assert_optimal, "fail unless no improvement exists");

  OracleFlags oracle_f;
  auto* oracle_cmd = app.add_subcommand("oracle", "brute force optimum or property harnesses");
  add_common(oracle_cmd, oracle_f.c, false);
  oracle_cmd->add_option("--verify", oracle_f.verify, "harness")->check(CLI::IsMember({"theorem", "exchange", "lemma2"}));
  oracle_cmd->add_option("--seed", oracle_f.seed, "harness seed");
  oracle_cmd->add_option("--count", oracle_f.count, "harness instances");
  oracle_cmd->add_option("--oracle-limit", oracle_f.limit, "maximum edge count for enumeration");

  DecomposeFlags dec_f;
  auto* dec_cmd = app.add_subcommand("decompose", "alternating decomposition and canonical sequence of M + N");
  add_common(dec_cmd, dec_f.c);
  dec_cmd->add_option("--matching-a", dec_f.a, "certificate for M")->required();
  dec_cmd->add_option("--matching-b", dec_f.b, "certificate for N")->required();

  GadgetFlags gad_f;
  auto* gad_cmd = app.add_subcommand("gadget", "dump a reduction stage as an instance file");
  add_common(gad_cmd, gad_f.c);
  gad_cmd->add_option("--stage", gad_f.stage, "uniform, ab or pm")->check(CLI::IsMember({"uniform", "ab", "pm"}));
  gad_cmd->add_option("--certificate,-c", gad_f.certificate, "use the uniform type of this B-matching");

  GenFlags gen_f;
  auto* gen_cmd = app.add_subcommand("gen", "seeded random instance");
  gen_cmd->add_option("--n", gen_f.g.n, "vertices")->required();
  gen_cmd->add_option("--m", gen_f.g.m, "edges")->required();
  gen_cmd->add_option("--seed", gen_f.g.seed, "seed");
  gen_cmd->add_option("--profile", gen_f.profile, "degree-set profile")
      ->check(CLI::IsMember({"interval", "parity", "mixed"}));
  gen_cmd->add_option("--min-weight", gen_f.g.min_weight, "smallest edge weight");
  gen_cmd->add_option("--max-weight", gen_f.g.max_weight, "largest edge weight");
  gen_cmd->add_flag("--multigraph", gen_f.g.multigraph, "allow loops and parallel edges");
  gen_cmd->add_flag("--unplanted", gen_f.free, "do not guarantee feasibility");
  gen_cmd->add_option("--output,-o", gen_f.output, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kError;
  }

  try {
    if (*solve_cmd) return cmd_solve(solve_f);
    if (*check_cmd) return cmd_check(check_f);
    if (*oracle_cmd) return cmd_oracle(oracle_f);
    if (*dec_cmd) return cmd_decompose(dec_f);
    if (*gad_cmd) return cmd_gadget(gad_f);
    if (*gen_cmd) return cmd_gen(gen_f);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kError;
  } catch (const InvalidInstance& e) {
    std::cerr << "error: invalid instance\n";
    for (const auto& issue : e.issues()) std::cerr << "  " << issue.message << '\n';
    return kError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kError;
  }
  return kError;
}
