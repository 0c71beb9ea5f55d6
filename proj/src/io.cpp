#include "tempconn/io.hpp"

#include <charconv>
#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "tempconn/error.hpp"

namespace tempconn {

namespace {

struct Record {
  std::size_t line = 0;
  std::vector<std::string_view> tokens;
};

std::vector<Record> records(std::string_view text) {
  std::vector<Record> out;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    Record rec{line_no, {}};
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
      std::size_t j = i;
      while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
      if (j > i) rec.tokens.push_back(line.substr(i, j - i));
      i = j;
    }
    if (!rec.tokens.empty()) out.push_back(std::move(rec));
  }
  return out;
}

std::int64_t to_int(const Record& rec, std::size_t idx) {
  std::string_view tok = rec.tokens[idx];
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    throw ParseError(rec.line, "expected an integer, got '" + std::string(tok) + "'");
  }
  return v;
}

int to_small(const Record& rec, std::size_t idx) {
  auto v = to_int(rec, idx);
  if (v < INT32_MIN || v > INT32_MAX) throw ParseError(rec.line, "integer out of range");
  return static_cast<int>(v);
}

void expect_arity(const Record& rec, std::size_t n) {
  if (rec.tokens.size() != n) {
    throw ParseError(rec.line, "'" + std::string(rec.tokens[0]) + "' takes " + std::to_string(n - 1) + " fields");
  }
}

// Runs `body` per record after the header, rewrapping invariant violations
// with the offending line.
void each_body(const std::vector<Record>& recs, const std::function<void(const Record&)>& body) {
  for (std::size_t i = 1; i < recs.size(); ++i) {
    try {
      body(recs[i]);
    } catch (const ParseError&) {
      throw;
    } catch (const InputError& e) {
      throw ParseError(recs[i].line, e.what());
    }
  }
}

const Record& header(const std::vector<Record>& recs, std::string_view tag, std::size_t arity) {
  if (recs.empty()) throw ParseError(1, "empty input, expected '" + std::string(tag) + "' header");
  const Record& h = recs.front();
  if (h.tokens[0] != tag) {
    throw ParseError(h.line, "expected '" + std::string(tag) + "' header, got '" + std::string(h.tokens[0]) + "'");
  }
  expect_arity(h, arity);
  return h;
}

[[noreturn]] void unknown(const Record& rec) {
  throw ParseError(rec.line, "unknown record '" + std::string(rec.tokens[0]) + "'");
}

Digraph digraph_header(const Record& h) {
  int n = to_small(h, 1);
  if (n < 0) throw ParseError(h.line, "negative node count");
  return Digraph(n);
}

}  // namespace

TemporalGraph parse_temporal_graph(std::string_view text) {
  auto recs = records(text);
  const Record& h = header(recs, "tg", 3);
  const int n = to_small(h, 1);
  const auto scale = to_int(h, 2);
  if (n < 0) throw ParseError(h.line, "negative vertex count");
  if (scale <= 0) throw ParseError(h.line, "scale must be positive");
  TemporalGraph g(n, scale);
  each_body(recs, [&](const Record& r) {
    if (r.tokens[0] != "e") unknown(r);
    expect_arity(r, 5);
    g.add_edge(to_small(r, 1), to_small(r, 2), TimeLabel{to_int(r, 3)}, to_int(r, 4));
  });
  return g;
}

std::string serialize(const TemporalGraph& g) {
  std::ostringstream out;
  out << "tg " << g.num_vertices() << ' ' << g.scale() << '\n';
  for (const auto& e : g.edges()) out << "e " << e.u << ' ' << e.v << ' ' << e.label.value << ' ' << e.weight << '\n';
  return out.str();
}

DstInstance parse_dst(std::string_view text) {
  auto recs = records(text);
  DstInstance inst{digraph_header(header(recs, "dst", 2)), 0, {}};
  bool have_root = false;
  each_body(recs, [&](const Record& r) {
    if (r.tokens[0] == "root") {
      expect_arity(r, 2);
      if (have_root) throw ParseError(r.line, "second root record");
      inst.root = to_small(r, 1);
      have_root = true;
    } else if (r.tokens[0] == "t") {
      expect_arity(r, 2);
      inst.terminals.push_back(to_small(r, 1));
    } else if (r.tokens[0] == "a") {
      expect_arity(r, 4);
      inst.graph.add_arc(to_small(r, 1), to_small(r, 2), to_int(r, 3));
    } else {
      unknown(r);
    }
  });
  if (!have_root) throw ParseError(recs.front().line, "missing root record");
  std::sort(inst.terminals.begin(), inst.terminals.end());
  validate(inst);
  return inst;
}

std::string serialize(const DstInstance& inst) {
  std::ostringstream out;
  out << "dst " << inst.graph.num_nodes() << "\nroot " << inst.root << '\n';
  for (Node t : inst.terminals) out << "t " << t << '\n';
  for (const auto& a : inst.graph.arcs()) out << "a " << a.from << ' ' << a.to << ' ' << a.weight << '\n';
  return out.str();
}

DsfInstance parse_dsf(std::string_view text) {
  auto recs = records(text);
  DsfInstance inst{digraph_header(header(recs, "dsf", 2)), {}};
  each_body(recs, [&](const Record& r) {
    if (r.tokens[0] == "pair") {
      expect_arity(r, 3);
      inst.demands.emplace_back(to_small(r, 1), to_small(r, 2));
    } else if (r.tokens[0] == "a") {
      expect_arity(r, 4);
      inst.graph.add_arc(to_small(r, 1), to_small(r, 2), to_int(r, 3));
    } else {
      unknown(r);
    }
  });
  validate(inst);
  return inst;
}

std::string serialize(const DsfInstance& inst) {
  std::ostringstream out;
  out << "dsf " << inst.graph.num_nodes() << '\n';
  for (auto [s, t] : inst.demands) out << "pair " << s << ' ' << t << '\n';
  for (const auto& a : inst.graph.arcs()) out << "a " << a.from << ' ' << a.to << ' ' << a.weight << '\n';
  return out.str();
}

SlcInstance parse_slc(std::string_view text) {
  auto recs = records(text);
  const Record& h = header(recs, "slc", 3);
  SlcInstance inst;
  inst.k = to_small(h, 1);
  inst.c = to_small(h, 2);
  each_body(recs, [&](const Record& r) {
    if (r.tokens[0] != "r") unknown(r);
    expect_arity(r, 5);
    auto& rel = inst.relations[{to_small(r, 1), to_small(r, 2)}];
    if (!rel.insert({to_small(r, 3), to_small(r, 4)}).second) throw ParseError(r.line, "duplicate relation entry");
  });
  validate(inst);
  return inst;
}

std::string serialize(const SlcInstance& inst) {
  std::ostringstream out;
  out << "slc " << inst.k << ' ' << inst.c << '\n';
  for (const auto& [key, rel] : inst.relations) {
    for (auto [a, b] : rel) out << "r " << key.first << ' ' << key.second << ' ' << a << ' ' << b << '\n';
  }
  return out.str();
}

SteinerInstance12 parse_st12(std::string_view text) {
  auto recs = records(text);
  const Record& h = header(recs, "st12", 2);
  SteinerInstance12 inst;
  inst.num_vertices = to_small(h, 1);
  each_body(recs, [&](const Record& r) {
    if (r.tokens[0] == "e") {
      expect_arity(r, 4);
      inst.edges.emplace_back(to_small(r, 1), to_small(r, 2), to_small(r, 3));
    } else if (r.tokens[0] == "t") {
      expect_arity(r, 2);
      inst.terminals.push_back(to_small(r, 1));
    } else {
      unknown(r);
    }
  });
  validate(inst);
  return inst;
}

std::string serialize(const SteinerInstance12& inst) {
  std::ostringstream out;
  out << "st12 " << inst.num_vertices << '\n';
  for (int t : inst.terminals) out << "t " << t << '\n';
  for (auto [u, v, w] : inst.edges) out << "e " << u << ' ' << v << ' ' << w << '\n';
  return out.str();
}

std::vector<EdgeIndex> parse_solution(std::string_view text) {
  auto recs = records(text);
  header(recs, "sol", 1);
  std::vector<EdgeIndex> out;
  each_body(recs, [&](const Record& r) {
    if (r.tokens[0] != "use") unknown(r);
    expect_arity(r, 2);
    out.push_back(to_small(r, 1));
  });
  return out;
}

std::string serialize_solution(const Solution& sol) {
  std::ostringstream out;
  out << "sol\n";
  for (EdgeIndex e : sol.edge_indices) out << "use " << e << '\n';
  return out.str();
}

std::string detect_format(std::string_view text) {
  auto recs = records(text);
  return recs.empty() ? std::string{} : std::string(recs.front().tokens[0]);
}

std::string write_map(const RtcToDst& red) {
  std::ostringstream out;
  out << "map rtc-to-dst\nmode " << to_string(red.mode) << "\nroot " << red.root << "\nnode " << red.root_node()
      << " root\n";
  for (EdgeIndex e = 0; e < red.source.num_edges(); ++e) out << "node " << red.edge_node(e) << " edge " << e << '\n';
  for (Vertex u = 0; u < red.source.num_vertices(); ++u) {
    if (u != red.root) out << "node " << red.terminal_node(u) << " terminal " << u << '\n';
  }
  return out.str();
}

std::string write_map(const TcToDsf& red) {
  std::ostringstream out;
  out << "map tc-to-dsf\nmode " << to_string(red.mode) << '\n';
  for (EdgeIndex e = 0; e < red.source.num_edges(); ++e) {
    out << "edge " << e << " h1 " << red.h1(e) << " h2 " << red.h2(e) << " arc " << red.use_arc[static_cast<std::size_t>(e)]
        << '\n';
  }
  for (Vertex i = 0; i < red.source.num_vertices(); ++i) out << "vertex " << i << " s " << red.s(i) << " t " << red.t(i) << '\n';
  return out.str();
}

std::string write_map(const DstToRtc& red) {
  std::ostringstream out;
  const int n = red.n();
  out << "map dst-to-rtc\nmode nonstrict\nroot " << red.root << '\n';
  for (Node u = 0; u < n; ++u) {
    for (int i = 1; i <= n - 1; ++i) {
      out << "aux " << u << ' ' << i << " vertex " << red.aux(u, i) << " edge " << red.entry_edge(u, i) << '\n';
    }
  }
  for (ArcIndex a = 0; a < red.source.graph.num_arcs(); ++a) {
    for (int i = 1; i <= n - 1; ++i) out << "arc " << a << ' ' << i << " edge " << red.exit_edge(a, i) << '\n';
  }
  return out.str();
}

std::string write_map(const SlcToTc& red) {
  std::ostringstream out;
  out << "map slc-to-tc\np " << red.p << "\nq " << red.q << '\n';
  for (int u = 0; u < red.source.k; ++u) {
    for (int a = 0; a < red.source.c; ++a) {
      out << "ucolor " << u << ' ' << a << " vertex " << red.u_color(u, a) << " edge "
          << red.u_color_edge[static_cast<std::size_t>(u)][static_cast<std::size_t>(a)] << '\n';
    }
  }
  for (int w = 0; w < red.source.k; ++w) {
    for (int b = 0; b < red.source.c; ++b) {
      out << "wcolor " << w << ' ' << b << " vertex " << red.w_color(w, b) << " edge "
          << red.w_color_edge[static_cast<std::size_t>(w)][static_cast<std::size_t>(b)] << '\n';
    }
  }
  for (std::size_t i = 0; i < red.x_tuples.size(); ++i) {
    auto [u, w, a, b] = red.x_tuples[i];
    out << "x " << u << ' ' << w << ' ' << a << ' ' << b << " vertex " << red.x_vertex(i) << '\n';
  }
  return out.str();
}

std::string write_map(const St12ToTc& red) {
  std::ostringstream out;
  out << "map st12-to-tc\np " << red.p << "\nq " << red.q << "\nx " << red.x << '\n';
  for (std::size_t i = 0; i < red.a.size(); ++i) out << "terminal " << i << " a " << red.a[i] << " b " << red.b[i] << '\n';
  for (std::size_t id = 0; id < red.parts.size(); ++id) {
    out << "steiner " << id;
    for (EdgeIndex e : red.parts[id]) out << ' ' << e;
    out << '\n';
  }
  for (std::size_t e = 0; e < red.gadget_edge.size(); ++e) {
    if (red.gadget_edge[e]) out << "gadget " << e << '\n';
  }
  return out.str();
}

std::string read_file(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
  if (path == "-") {
    std::cout << contents;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << contents;
}

}  // namespace tempconn
