#pragma once

// Command-line front end. `run` takes the arguments after the program name
// and writes to the given streams, so tests can drive it in-process.
//
// Exit codes: 0 success, 1 validation failure or bad input, 2 usage error.

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mlgraph/mlgraph.hpp"

namespace mlgraph::cli {

using io::json;

// Thrown for input that is readable but fails a check; maps to exit code 1.
struct ValidationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::schema, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline io::ModelFile load(const std::string& path) {
  try {
    return io::parse(read_file(path));
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + std::string(e.what()).substr(std::string(to_string(e.code())).size() + 2));
  }
}

inline OpenGraph load_open(const std::string& path) {
  auto m = load(path);
  if (!m.open_graph) throw Error(ErrorCode::schema, path + ": expected an open graph");
  return *m.open_graph;
}

inline void write_output(const std::string& text, const std::string& out_path, std::ostream& out) {
  if (out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw Error(ErrorCode::schema, "cannot write '" + out_path + "'");
  f << text;
}

namespace detail {

inline std::string edge_list(const SimpleLoop& l, const Graph& g) {
  std::string s;
  for (auto e : l.edges) s += (s.empty() ? "" : " ") + g.edge_name(e);
  return s;
}

inline std::string vertex_cycle(const SimpleLoop& l, const Graph& g) {
  std::string s;
  for (auto v : path_vertices(l.path(g), g)) s += (s.empty() ? "" : " -> ") + g.vertex_name(v);
  return s;
}

inline json vertex_names(const SimpleLoop& l, const Graph& g) {
  json a = json::array();
  for (auto v : path_vertices(l.path(g), g)) a.push_back(g.vertex_name(v));
  return a;
}

inline json edge_names(const std::vector<std::size_t>& edges, const Graph& g) {
  json a = json::array();
  for (auto e : edges) a.push_back(g.edge_name(e));
  return a;
}

// Reinforcing / balancing for sign-like polarities, empty otherwise.
inline std::string loop_tag(const LabelAlgebra& a, const Element& polarity) {
  if (!a.is_finite()) return "";
  const std::string p = a.format(polarity);
  if (p == "+") return "reinforcing";
  if (p == "-") return "balancing";
  return "";
}

inline void print_table(std::ostream& out, const std::vector<std::string>& header,
                        const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
  for (const auto& r : rows)
    for (std::size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], r[c].size());
  auto line = [&](const std::vector<std::string>& r) {
    std::string s;
    for (std::size_t c = 0; c < r.size(); ++c) {
      s += r[c];
      if (c + 1 < r.size()) s += std::string(width[c] - r[c].size() + 2, ' ');
    }
    while (!s.empty() && s.back() == ' ') s.pop_back();
    out << s << "\n";
  };
  line(header);
  for (const auto& r : rows) line(r);
}

inline json relation_json(const Relation& r) {
  auto vec = [](const std::vector<Integer>& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(x.convert_to<long long>());
    return a;
  };
  return {{"lhs", vec(r.lhs)}, {"rhs", vec(r.rhs)}};
}

inline std::string relation_text(const Relation& r) {
  auto side = [](const std::vector<Integer>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i] == 0) continue;
      if (!s.empty()) s += " + ";
      s += (v[i] == 1 ? "" : v[i].str() + "*") + "L" + std::to_string(i + 1);
    }
    return s.empty() ? std::string("0") : s;
  };
  return side(r.lhs) + " = " + side(r.rhs);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Commands

struct Options {
  bool json = false;
  std::string file;
  std::string left, right;
  std::string out;
  std::string mode;
  std::string builtin;
  std::string motif_file;
  std::size_t max_len = 6;
  std::size_t max_results = 10000;
  std::size_t bound = 1;
  std::size_t cap = kLoopCap;
  std::string hom;
  std::string chain;
};

inline int cmd_validate(const Options& o, std::ostream& out) {
  const auto m = load(o.file);
  json report;
  std::vector<std::string> problems;
  std::vector<std::string> notes;

  auto check_algebra = [&](const LabelAlgebra& a) {
    const auto r = validate_algebra(a);
    json v = json::array();
    for (const auto& x : r.violations) {
      v.push_back({{"axiom", x.axiom}, {"witness", x.witness}});
      problems.push_back(a.name() + ": " + x.axiom + " fails at " + x.witness);
    }
    report["algebra"] = {{"name", a.name()}, {"ok", r.ok()}, {"violations", v}, {"confirmed", r.confirmed}};
    for (const auto& c : r.confirmed) notes.push_back(a.name() + ": " + c + " confirmed");
  };

  if (m.algebra) {
    check_algebra(*m.algebra);
  } else {
    const LabeledGraph& g = m.labeled_graph();
    check_algebra(g.algebra);
    report["vertices"] = g.graph.vertex_count();
    report["edges"] = g.graph.edge_count();
    notes.push_back(std::to_string(g.graph.vertex_count()) + " vertices, " + std::to_string(g.graph.edge_count()) +
                    " edges over " + g.algebra.name());
    if (m.open_graph) {
      report["left_foot"] = m.open_graph->left_foot.size();
      report["right_foot"] = m.open_graph->right_foot.size();
    }
    if (m.morphism) {
      const auto& mm = *m.morphism;
      const auto squares = validate_morphism(mm.map, g.graph, mm.target.graph);
      json mj;
      mj["graph_morphism"] = squares.ok();
      for (const auto& v : squares.violations) problems.push_back("morphism: " + v.axiom + " fails at " + v.witness);
      if (squares.ok()) {
        const bool same = g.algebra == mm.target.algebra;
        const bool preserving = same && is_label_preserving(mm.map, g, mm.target).ok;
        const bool additive = same && g.algebra.additive_commutative() && is_additive_morphism(mm.map, g, mm.target).ok;
        mj["label_preserving"] = preserving;
        mj["additive"] = additive;
        notes.push_back(std::string("morphism: label-preserving ") + (preserving ? "yes" : "no") + ", additive " +
                        (additive ? "yes" : "no"));
        if (!o.mode.empty()) {
          const auto mode = parse_mode(o.mode);
          const bool holds = mode == MorphismMode::set        ? preserving
                             : mode == MorphismMode::additive ? additive
                                                              : same && is_kleisli_morphism(KleisliMorphism::from_graph_morphism(mm.map, mm.target.graph), g, mm.target).ok;
          mj["requested_mode_holds"] = holds;
          if (!holds) problems.push_back("morphism is not a " + o.mode + " morphism");
        } else if (!preserving && !additive) {
          problems.push_back("morphism is neither label-preserving nor additive");
        }
      }
      report["morphism"] = mj;
    }
  }
  report["ok"] = problems.empty();
  if (o.json) {
    out << report.dump(2) << "\n";
  } else {
    for (const auto& n : notes) out << n << "\n";
    for (const auto& p : problems) out << "FAIL " << p << "\n";
    out << (problems.empty() ? "valid" : "invalid") << "\n";
  }
  return problems.empty() ? 0 : 1;
}

inline int cmd_loops(const Options& o, std::ostream& out) {
  const auto m = load(o.file);
  const LabeledGraph& g = m.labeled_graph();
  const auto loops = simple_loops(g.graph, o.cap);
  const bool additive = g.algebra.additive_commutative();
  json arr = json::array();
  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 0; i < loops.loops.size(); ++i) {
    const auto& l = loops.loops[i];
    const Element pol = loop_polarity(l, g);
    const std::string tag = detail::loop_tag(g.algebra, pol);
    const std::string fb = additive ? g.algebra.format(feedback(l, g)) : "";
    json j = {{"edges", detail::edge_names(l.edges, g.graph)},
              {"vertices", detail::vertex_names(l, g.graph)},
              {"polarity", g.algebra.format(pol)}};
    if (additive) j["feedback"] = fb;
    if (!tag.empty()) j["tag"] = tag;
    arr.push_back(j);
    rows.push_back({std::to_string(i + 1), detail::vertex_cycle(l, g.graph), detail::edge_list(l, g.graph),
                    g.algebra.format(pol), fb, tag});
  }
  if (o.json) {
    out << json{{"count", loops.loops.size()}, {"truncated", loops.truncated}, {"loops", arr}}.dump(2) << "\n";
  } else {
    out << loops.loops.size() << " loop" << (loops.loops.size() == 1 ? "" : "s")
        << (loops.truncated ? " (truncated)" : "") << "\n";
    if (!rows.empty()) detail::print_table(out, {"#", "cycle", "edges", "polarity", "feedback", "tag"}, rows);
  }
  return 0;
}

inline int cmd_motif(const Options& o, std::ostream& out) {
  const auto host = load(o.file).labeled_graph();
  LabeledGraph motif;
  if (!o.builtin.empty())
    motif = builtin_motif(o.builtin);
  else
    motif = load(o.motif_file).labeled_graph();
  MotifOptions opt;
  opt.max_path_len = o.max_len;
  opt.max_results = o.max_results;
  const auto res = find_motifs(motif, host, opt);
  json arr = json::array();
  for (const auto& k : res.matches) {
    json vm = json::object(), ep = json::object(), gr = json::object();
    for (std::size_t v = 0; v < k.vertex_map.size(); ++v)
      vm[motif.graph.vertex_name(v)] = host.graph.vertex_name(k.vertex_map[v]);
    for (std::size_t e = 0; e < k.edge_paths.size(); ++e) {
      ep[motif.graph.edge_name(e)] = detail::edge_names(k.edge_paths[e].edges, host.graph);
      gr[motif.graph.edge_name(e)] = host.algebra.format(grade(k.edge_paths[e], host));
    }
    arr.push_back({{"vertex_map", vm}, {"edge_paths", ep}, {"grades", gr}});
  }
  if (o.json) {
    out << json{{"count", res.matches.size()}, {"truncated", res.truncated}, {"matches", arr}}.dump(2) << "\n";
  } else {
    out << res.matches.size() << " match" << (res.matches.size() == 1 ? "" : "es")
        << (res.truncated ? " (truncated)" : "") << "\n";
    for (std::size_t i = 0; i < res.matches.size(); ++i) {
      const auto& k = res.matches[i];
      out << "#" << i + 1 << ":";
      for (std::size_t v = 0; v < k.vertex_map.size(); ++v)
        out << " " << motif.graph.vertex_name(v) << "->" << host.graph.vertex_name(k.vertex_map[v]);
      out << " |";
      for (std::size_t e = 0; e < k.edge_paths.size(); ++e) {
        const auto vs = path_vertices(k.edge_paths[e], host.graph);
        out << " " << motif.graph.edge_name(e) << "=";
        for (std::size_t i2 = 0; i2 < vs.size(); ++i2) out << (i2 ? ">" : "") << host.graph.vertex_name(vs[i2]);
        out << "(" << host.algebra.format(grade(k.edge_paths[e], host)) << ")";
      }
      out << "\n";
    }
  }
  return 0;
}

inline int cmd_combine(const Options& o, std::ostream& out, bool is_compose) {
  const OpenGraph x = load_open(o.left), y = load_open(o.right);
  const OpenGraph r = is_compose ? compose(x, y) : tensor(x, y);
  const std::string text = io::emit(r);
  if (!o.out.empty() || o.json) {
    write_output(text, o.out, out);
    if (!o.out.empty() && !o.json)
      out << "wrote " << o.out << ": " << r.inner.graph.vertex_count() << " vertices, " << r.inner.graph.edge_count()
          << " edges\n";
  } else {
    out << r.inner.graph.vertex_count() << " vertices, " << r.inner.graph.edge_count() << " edges, feet "
        << r.left_foot.size() << " -> " << r.right_foot.size() << "\n";
    out << text;
  }
  return 0;
}

inline int cmd_homology(const Options& o, std::ostream& out) {
  const LabeledGraph g = load(o.file).labeled_graph();
  const auto rep = homology_report(g, o.bound);
  if (o.json) {
    json loops = json::array();
    for (std::size_t i = 0; i < rep.minimal_cycles.size(); ++i) {
      json j = {{"edges", detail::edge_names(rep.minimal_cycles[i].edges, g.graph)},
                {"polarity", g.algebra.format(rep.polarities[i])}};
      if (!rep.feedbacks.empty()) j["feedback"] = g.algebra.format(rep.feedbacks[i]);
      loops.push_back(j);
    }
    json rels = json::array();
    for (const auto& r : rep.relations) rels.push_back(detail::relation_json(r));
    out << json{{"h0", {{"components", rep.h0.components}, {"description", rep.h0.description}}},
                {"h1", {{"generators", loops}, {"relations", rels}, {"bound", o.bound}, {"truncated", rep.truncated}}}}
               .dump(2)
        << "\n";
    return 0;
  }
  out << "H0: " << rep.h0.components << " component" << (rep.h0.components == 1 ? "" : "s") << ", H0 = "
      << rep.h0.description << "\n";
  out << "H1 over NatAdd: " << rep.minimal_cycles.size() << " minimal cycle"
      << (rep.minimal_cycles.size() == 1 ? "" : "s") << (rep.truncated ? " (truncated)" : "") << "\n";
  for (std::size_t i = 0; i < rep.minimal_cycles.size(); ++i)
    out << "  L" << i + 1 << ": " << detail::edge_list(rep.minimal_cycles[i], g.graph) << "  ("
        << detail::vertex_cycle(rep.minimal_cycles[i], g.graph) << ")\n";
  out << "relations with coefficients <= " << o.bound << ": " << rep.relations.size() << "\n";
  for (const auto& r : rep.relations) out << "  " << detail::relation_text(r) << "\n";
  return 0;
}

inline int cmd_emergence(const Options& o, std::ostream& out) {
  const GluedGraph g = glue(load_open(o.left), load_open(o.right));
  const auto rep = emergence_report(g);
  const Graph& u = g.composite.graph;
  if (o.json) {
    json loops = json::array();
    for (const auto& l : rep.loops)
      loops.push_back({{"edges", detail::edge_names(l.loop.edges, u)},
                       {"vertices", detail::vertex_names(l.loop, u)},
                       {"status", l.inherited ? "inherited" : "emergent"},
                       {"word", l.word.to_string()},
                       {"polarity", g.composite.algebra.format(l.polarity)}});
    out << json{{"left_loops", rep.x_loops},
                {"right_loops", rep.y_loops},
                {"composite_loops", rep.loops.size()},
                {"emergent", rep.emergent_count()},
                {"truncated", rep.truncated},
                {"loops", loops}}
               .dump(2)
        << "\n";
    return 0;
  }
  out << "left alone: " << rep.x_loops << " loops; right alone: " << rep.y_loops << " loops; composite: "
      << rep.loops.size() << " loops, " << rep.emergent_count() << " emergent\n";
  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 0; i < rep.loops.size(); ++i) {
    const auto& l = rep.loops[i];
    rows.push_back({std::to_string(i + 1), detail::vertex_cycle(l.loop, u), l.inherited ? "inherited" : "emergent",
                    l.word.to_string(), g.composite.algebra.format(l.polarity)});
  }
  if (!rows.empty()) detail::print_table(out, {"#", "cycle", "status", "word", "polarity"}, rows);
  return 0;
}

inline int cmd_change_labels(const Options& o, std::ostream& out) {
  auto m = load(o.file);
  const LabeledGraph& g = m.labeled_graph();
  MonoidHom h = o.hom == "sign"             ? MonoidHom::sign()
                : o.hom == "sign-embedding" ? MonoidHom::sign_embedding()
                                            : MonoidHom::collapse(g.algebra);
  LabeledGraph r = change_labels(h, g);
  std::string text;
  if (m.open_graph) {
    OpenGraph og = *m.open_graph;
    og.inner = r;
    text = io::emit(og);
  } else {
    text = io::emit(r);
  }
  write_output(text, o.out, out);
  return 0;
}

inline int cmd_decompose(const Options& o, std::ostream& out) {
  const LabeledGraph g = load(o.file).labeled_graph();
  const Chain c = io::parse_chain(o.chain, g.graph);
  if (!is_cycle(c, g.graph)) throw ValidationFailure("chain " + c.format([&](std::size_t e) {
                                                       return g.graph.edge_name(e);
                                                     }) + " is not a cycle");
  const auto parts = decompose_cycle(c, g.graph);
  if (o.json) {
    json arr = json::array();
    for (const auto& [loop, mult] : parts)
      arr.push_back({{"edges", detail::edge_names(loop.edges, g.graph)}, {"multiplicity", mult.convert_to<long long>()}});
    out << json{{"parts", arr}}.dump(2) << "\n";
  } else {
    out << parts.size() << " distinct loop" << (parts.size() == 1 ? "" : "s") << "\n";
    for (const auto& [loop, mult] : parts)
      out << "  " << mult << " x " << detail::edge_list(loop, g.graph) << "  (" << detail::vertex_cycle(loop, g.graph)
          << ")\n";
  }
  return 0;
}

inline int cmd_export_dot(const Options& o, std::ostream& out) {
  const auto m = load(o.file);
  std::string dot = m.open_graph ? io::to_dot(*m.open_graph) : io::to_dot(m.labeled_graph());
  write_output(dot, o.out, out);
  return 0;
}

// ---------------------------------------------------------------------------

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Labeled graphs: loops, motifs, open-graph composition, homology and emergence", "mlgraph"};
  app.require_subcommand(1);
  Options o;
  app.add_flag("--json", o.json, "machine-readable output");

  auto file_cmd = [&](const char* name, const char* help) {
    auto* c = app.add_subcommand(name, help);
    c->add_option("file", o.file, "input JSON file")->required();
    c->add_flag("--json", o.json, "machine-readable output");
    return c;
  };
  auto* validate = file_cmd("validate", "check a model file and its algebra");
  validate->add_option("--mode", o.mode, "morphism kind to require")->check(CLI::IsMember({"set", "additive", "kleisli"}));
  auto* loops = file_cmd("loops", "list simple loops with polarity and feedback");
  loops->add_option("--cap", o.cap, "maximum number of loops");
  auto* motif = file_cmd("motif", "find motif occurrences (Kleisli morphisms) in a host graph");
  auto* mg = motif->add_option_group("motif source");
  mg->add_option("--builtin", o.builtin, "named motif")->check(CLI::IsMember(builtin_motif_names()));
  mg->add_option("--motif", o.motif_file, "motif graph file");
  mg->require_option(1);
  motif->add_option("--max-len", o.max_len, "longest path an edge may map to")->check(CLI::PositiveNumber);
  motif->add_option("--max-results", o.max_results, "stop after this many matches");

  auto two_cmd = [&](const char* name, const char* help) {
    auto* c = app.add_subcommand(name, help);
    auto* l = c->add_option("--left", o.left, "left open graph");
    auto* r = c->add_option("--right", o.right, "right open graph");
    c->add_option("left_pos", o.left, "left open graph")->excludes(l);
    c->add_option("right_pos", o.right, "right open graph")->excludes(r);
    c->add_flag("--json", o.json, "machine-readable output");
    return c;
  };
  auto* compose_cmd = two_cmd("compose", "glue two open graphs along the shared foot");
  compose_cmd->add_option("--out", o.out, "write the composite here");
  auto* tensor_cmd = two_cmd("tensor", "disjoint union of two open graphs");
  tensor_cmd->add_option("--out", o.out, "write the result here");
  auto* emergence = two_cmd("emergence", "classify loops of a glued graph as inherited or emergent");

  auto* homology = file_cmd("homology", "H0 and the H1 generator/relation report over N");
  homology->add_option("--bound", o.bound, "coefficient bound for relation search")->check(CLI::PositiveNumber);
  auto* change = file_cmd("change-labels", "push labels through a homomorphism");
  change->add_option("--hom", o.hom, "homomorphism")
      ->required()
      ->check(CLI::IsMember({"sign", "collapse", "sign-embedding"}));
  change->add_option("--out", o.out, "write the result here");
  auto* decompose = file_cmd("decompose", "split an N-cycle into simple loops");
  decompose->add_option("--chain", o.chain, "edge:coefficient list, e.g. e1:2,e3:1")->required();
  auto* dot = file_cmd("export-dot", "Graphviz DOT export");
  dot->add_option("--out", o.out, "write the DOT text here");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  for (auto* c : {compose_cmd, tensor_cmd, emergence})
    if (c->parsed() && (o.left.empty() || o.right.empty())) {
      err << "usage error: " << c->get_name() << " needs a left and a right open graph\n";
      return 2;
    }

  try {
    if (validate->parsed()) return cmd_validate(o, out);
    if (loops->parsed()) return cmd_loops(o, out);
    if (motif->parsed()) return cmd_motif(o, out);
    if (compose_cmd->parsed()) return cmd_combine(o, out, true);
    if (tensor_cmd->parsed()) return cmd_combine(o, out, false);
    if (homology->parsed()) return cmd_homology(o, out);
    if (emergence->parsed()) return cmd_emergence(o, out);
    if (change->parsed()) return cmd_change_labels(o, out);
    if (decompose->parsed()) return cmd_decompose(o, out);
    if (dot->parsed()) return cmd_export_dot(o, out);
  } catch (const Error& e) {
    if (o.json)
      out << json{{"ok", false}, {"error", std::string(to_string(e.code()))}, {"message", e.what()}}.dump(2) << "\n";
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const ValidationFailure& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace mlgraph::cli
