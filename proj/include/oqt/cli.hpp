#pragma once

// Command-line front end. `run` is the whole program minus main(), so tests
// can drive it with string streams.
//
// Exit codes: 0 YES / success, 1 NO / invalid witness, 2 usage or input
// error, 3 resource budget exceeded.

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <new>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "oqt/graph.hpp"
#include "oqt/io.hpp"
#include "oqt/qt.hpp"
#include "oqt/reduction.hpp"
#include "oqt/solver.hpp"
#include "oqt/structure.hpp"

namespace oqt::cli {

enum ExitStatus : int { kYes = 0, kNo = 1, kUsage = 2, kBudget = 3 };

inline int exit_for(Outcome o) {
  switch (o) {
    case Outcome::Yes: return kYes;
    case Outcome::No: return kNo;
    case Outcome::BudgetExceeded: return kBudget;
  }
  return kUsage;
}

namespace detail {

struct Common {
  bool json = false;
  std::uint64_t seed = 0;  // reserved; every algorithm here is deterministic
};

/// Writes `text` to `path`, or to `out` when no path was given and JSON is
/// off (JSON output embeds it instead).
inline void emit(const std::string& path, const std::string& text, std::ostream& out, bool json) {
  if (!path.empty()) write_file(path, text);
  else if (!json) out << text;
}

inline nlohmann::json graph_summary(const Graph& g) {
  return {{"vertices", g.order()}, {"edges", g.size()}, {"max_degree", g.max_degree()}};
}

// ---------------------------------------------------------------------------

struct DecideArgs {
  std::string graph;
  std::string method = "auto";
  std::string witness;
  std::string dot;
  std::string trace;
  std::uint64_t node_limit = SolveOptions{}.node_limit;
  bool no_decompose = false;
  unsigned threads = 1;
};

inline int decide(const DecideArgs& a, const Common& c, std::ostream& out, std::ostream& err) {
  const Graph g = parse_graph(read_file(a.graph));
  SolveOptions opts;
  opts.node_limit = a.node_limit;
  opts.decompose = !a.no_decompose;
  opts.threads = a.threads == 0 ? 1 : a.threads;

  std::string method = a.method;
  if (method == "auto") {
    const auto gi = girth(g);
    if (g.max_degree() <= 3) method = "deg3";
    else if (!gi || *gi >= 4) method = "girth4";
    else method = "exact";
  }
  const bool want_witness = !a.witness.empty() || !a.dot.empty();

  Outcome outcome = Outcome::No;
  std::optional<PartialOrientation> witness;
  SolveStats stats;
  nlohmann::json extra = nlohmann::json::object();

  if (method == "deg3") {
    const ReducedGraph r = reduce_removable(g);  // throws DegreeBoundError when Δ > 3
    Deg3Work work;
    const bool yes = decide_deg3(g, &work);
    outcome = yes ? Outcome::Yes : Outcome::No;
    extra["removed"] = r.trace.size();
    extra["steps"] = work.steps;
    if (!a.trace.empty()) write_file(a.trace, format_trace(r.trace));
    if (yes && want_witness) {
      SolveResult res = deg3_witness(g, opts);
      stats = res.stats;
      if (res.outcome == Outcome::BudgetExceeded) {
        err << "witness construction exceeded the node budget\n";
        outcome = Outcome::BudgetExceeded;
      } else if (res.outcome != Outcome::Yes) {
        throw std::logic_error("solver found no witness although the degree-3 test says YES");
      } else {
        witness = std::move(res.witness);
      }
    }
  } else if (method == "girth4") {
    auto w = decide_girth4(g);
    outcome = w ? Outcome::Yes : Outcome::No;
    if (w) witness = std::move(w);
  } else {
    SolveResult res = decide_qt(g, opts);
    outcome = res.outcome;
    stats = res.stats;
    witness = std::move(res.witness);
  }

  if (outcome == Outcome::Yes && witness) {
    if (!a.witness.empty()) write_file(a.witness, format_mixed(witness->mixed()));
    if (!a.dot.empty()) write_file(a.dot, to_dot(witness->mixed()));
  }

  if (c.json) {
    nlohmann::json j{{"command", "decide"},
                     {"result", to_string(outcome)},
                     {"method", method},
                     {"graph", graph_summary(g)},
                     {"nodes", stats.nodes},
                     {"decompositions", stats.decompositions},
                     {"memo_hits", stats.memo_hits}};
    j.update(extra);
    if (witness && a.witness.empty()) j["witness"] = format_mixed(witness->mixed());
    out << j.dump(2) << '\n';
  } else {
    out << to_string(outcome) << '\n';
  }
  return exit_for(outcome);
}

inline int verify(const std::string& graph, const std::string& witness, const Common& c, std::ostream& out) {
  const Graph g = parse_graph(read_file(graph));
  const MixedGraph m = parse_mixed(read_file(witness));
  const WitnessReport report = verify_witness(g, m);
  const auto lines = report.lines();
  if (c.json) {
    out << nlohmann::json{{"command", "verify"}, {"valid", report.ok()}, {"report", lines}}.dump(2) << '\n';
  } else if (report.ok()) {
    out << "OK\n";
  } else {
    for (const auto& l : lines) out << l << '\n';
  }
  return report.ok() ? kYes : kNo;
}

inline int square(const std::string& input, const std::string& output, const std::string& dot, bool mixed,
                  const Common& c, std::ostream& out) {
  const MixedGraph m = parse_mixed(read_file(input));
  nlohmann::json j{{"command", "square"}};
  std::string text;
  if (mixed) {
    const MixedGraph sq = mixed_square(m);
    text = format_mixed(sq);
    if (!dot.empty()) write_file(dot, to_dot(sq));
    j["vertices"] = sq.order();
    j["edges"] = sq.edges().size();
    j["arcs"] = sq.arcs().size();
  } else {
    const Graph sq = undirected_square(m);
    text = format_graph(sq);
    if (!dot.empty()) write_file(dot, to_dot(sq));
    j["graph"] = graph_summary(sq);
  }
  emit(output, text, out, c.json);
  if (c.json) {
    if (output.empty()) j["output"] = text;
    out << j.dump(2) << '\n';
  }
  return kYes;
}

inline int embed(const std::string& input, const std::string& output, const std::string& root,
                 const std::string& dot, const Common& c, std::ostream& out) {
  const Graph g = parse_graph(read_file(input));
  const UniversalEmbedding emb = embed_universal(g);
  std::vector<Vertex> keep(g.order());
  for (Vertex v = 0; v < g.order(); ++v) keep[v] = v;
  if (!(induced_subgraph(emb.square, keep).graph == g)) throw std::logic_error("embedding does not contain the input");
  const std::string text = format_graph(emb.square);
  emit(output, text, out, c.json);
  if (!root.empty()) write_file(root, format_mixed(emb.root));
  if (!dot.empty()) write_file(dot, to_dot(emb.square));
  if (c.json) {
    nlohmann::json j{{"command", "embed"}, {"graph", graph_summary(emb.square)}};
    if (output.empty()) j["output"] = text;
    out << j.dump(2) << '\n';
  }
  return kYes;
}

inline int reduce(const std::string& input, const std::string& output, const std::string& map,
                  const std::string& dot, bool drop_pendants, const Common& c, std::ostream& out) {
  const CnfInstance y = parse_cnf(read_file(input));
  const Reduction red = build_reduction(y, {.keep_pendants = !drop_pendants});
  const std::string text = format_graph(red.graph);
  emit(output, text, out, c.json);
  if (!map.empty()) write_file(map, format_reduction_map(red.map));
  if (!dot.empty()) write_file(dot, to_dot(red.graph));
  if (c.json) {
    nlohmann::json j{{"command", "reduce"},
                     {"variables", y.variables()},
                     {"clauses", y.clauses().size()},
                     {"graph", graph_summary(red.graph)}};
    if (output.empty()) j["output"] = text;
    out << j.dump(2) << '\n';
  }
  return kYes;
}

inline int extract(const std::string& map, const std::string& witness, const Common& c, std::ostream& out,
                   std::ostream& err) {
  const ReductionMap rm = parse_reduction_map(read_file(map));
  const CnfInstance y = instance_from_map(rm);
  const MixedGraph m = parse_mixed(read_file(witness));
  Assignment f;
  try {
    f = witness_to_assignment(rm, m);
  } catch (const InvalidWitness& e) {
    err << e.what() << '\n';
    if (c.json) out << nlohmann::json{{"command", "extract"}, {"valid", false}, {"error", e.what()}}.dump(2) << '\n';
    return kNo;
  }
  const bool nae = verify_nae(y, f);
  if (!nae) throw std::logic_error("extracted assignment is not NAE-satisfying");
  if (c.json) {
    std::vector<int> bits(f.begin(), f.end());
    out << nlohmann::json{{"command", "extract"}, {"valid", true}, {"nae", nae}, {"assignment", bits}}.dump(2) << '\n';
  } else {
    out << format_assignment(f);
  }
  return kYes;
}

inline int gadget(const Common& c, std::ostream& out) {
  const GadgetSignatureReport& r = gadget_signatures();
  const Signature ppp = Signature::parse("+++");
  const Signature mmm = Signature::parse("---");
  if (c.json) {
    nlohmann::json sigs = nlohmann::json::object();
    for (const auto& [s, n] : r.counts) sigs[to_string(s)] = n;
    out << nlohmann::json{{"command", "gadget"},
                          {"orientations", r.orientations},
                          {"signatures", sigs},
                          {"excluded", {{"+++", r.count(ppp)}, {"---", r.count(mmm)}}}}
               .dump(2)
        << '\n';
  } else {
    for (const auto& [s, n] : r.counts) {
      if (!s.constant()) out << to_string(s) << ' ' << n << '\n';
    }
    out << "excluded: +++ ---; counts: " << r.count(ppp) << ' ' << r.count(mmm) << '\n';
  }
  return r.count(ppp) == 0 && r.count(mmm) == 0 ? kYes : kNo;
}

}  // namespace detail

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Squares of oriented graphs: decide, verify, reduce"};
  app.name("oqt");
  app.require_subcommand(1);
  detail::Common common;
  app.add_flag("--json", common.json, "Machine-readable output");
  app.add_option("--seed", common.seed, "Reserved; all algorithms are deterministic");

  detail::DecideArgs da;
  auto* dec = app.add_subcommand("decide", "Does the graph admit a quasi-transitive partial orientation?");
  dec->add_option("graph", da.graph, "Graph file")->required();
  dec->add_option("--method", da.method, "auto|exact|deg3|girth4")
      ->check(CLI::IsMember({"auto", "exact", "deg3", "girth4"}));
  dec->add_option("--witness", da.witness, "Write the witness (mixed format)");
  dec->add_option("--dot", da.dot, "Write the witness as DOT");
  dec->add_option("--trace", da.trace, "Write the removal trace (deg3)");
  dec->add_option("--node-limit", da.node_limit, "Search node budget per component");
  dec->add_flag("--no-decompose", da.no_decompose, "Disable cut decomposition");
  dec->add_option("--threads", da.threads, "Worker threads across components");
  dec->add_flag("--json", common.json);

  std::string ver_graph, ver_witness;
  auto* ver = app.add_subcommand("verify", "Check a witness against a graph");
  ver->add_option("graph", ver_graph)->required();
  ver->add_option("witness", ver_witness)->required();
  ver->add_flag("--json", common.json);

  std::string sq_in, sq_out, sq_dot;
  bool sq_mixed = false;
  auto* sq = app.add_subcommand("square", "Square of a mixed graph");
  sq->add_option("input", sq_in, "Mixed graph file")->required();
  sq->add_option("-o,--output", sq_out);
  sq->add_option("--dot", sq_dot);
  sq->add_flag("--mixed", sq_mixed, "Emit the mixed square instead of the undirected one");
  sq->add_flag("--json", common.json);

  std::string em_in, em_out, em_root, em_dot;
  auto* em = app.add_subcommand("embed", "Embed a graph in the square of an oriented graph");
  em->add_option("graph", em_in)->required();
  em->add_option("-o,--output", em_out);
  em->add_option("--root", em_root, "Write the oriented root graph");
  em->add_option("--dot", em_dot);
  em->add_flag("--json", common.json);

  std::string rd_in, rd_out, rd_map, rd_dot;
  bool rd_drop = false;
  auto* rd = app.add_subcommand("reduce", "Build the graph of a monotone NAE-3SAT instance");
  rd->add_option("cnf", rd_in)->required();
  rd->add_option("-o,--output", rd_out);
  rd->add_option("--map", rd_map, "Write the reduction map");
  rd->add_option("--dot", rd_dot);
  rd->add_flag("--drop-pendants", rd_drop, "Delete the gadget leaves next to identified vertices");
  rd->add_flag("--json", common.json);

  std::string ex_map, ex_witness;
  auto* ex = app.add_subcommand("extract", "Read an assignment off a witness");
  ex->add_option("map", ex_map)->required();
  ex->add_option("witness", ex_witness)->required();
  ex->add_flag("--json", common.json);

  bool gd_sigs = false;
  auto* gd = app.add_subcommand("gadget", "Clause gadget report");
  gd->add_flag("--signatures", gd_sigs, "Enumerate achievable signatures")->required();
  gd->add_flag("--json", common.json);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kYes : kUsage;
  }

  try {
    if (*dec) return detail::decide(da, common, out, err);
    if (*ver) return detail::verify(ver_graph, ver_witness, common, out);
    if (*sq) return detail::square(sq_in, sq_out, sq_dot, sq_mixed, common, out);
    if (*em) return detail::embed(em_in, em_out, em_root, em_dot, common, out);
    if (*rd) return detail::reduce(rd_in, rd_out, rd_map, rd_dot, rd_drop, common, out);
    if (*ex) return detail::extract(ex_map, ex_witness, common, out, err);
    if (*gd) return detail::gadget(common, out);
  } catch (const std::length_error& e) {
    err << "error: " << e.what() << '\n';
    return kBudget;
  } catch (const std::bad_alloc&) {
    err << "error: out of memory\n";
    return kBudget;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace oqt::cli
