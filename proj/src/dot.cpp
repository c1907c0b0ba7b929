#include "selfsim/dot.hpp"

#include "selfsim/group_analysis.hpp"
#include "selfsim/tree_action.hpp"

namespace selfsim {

namespace {

std::string quoted(const std::string& s) {
  std::string r = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') r += '\\';
    r += c;
  }
  return r + '"';
}

std::string vertex_name(std::size_t index, std::size_t d, std::size_t level) {
  if (level == 0) return "root";
  return format_vertex(vertex_at(index, d, level));
}

}  // namespace

void write_moore_dot(std::ostream& out, const Automaton& a, const std::string& name) {
  out << "digraph " << quoted(name) << " {\n";
  for (StateId s = 0; s < a.state_count(); ++s)
    out << "  s" << s << " [label=" << quoted(a.label(s) + ":" + cycle_notation(a.output(s))) << "];\n";
  for (StateId s = 0; s < a.state_count(); ++s)
    for (Letter x = 0; x < a.alphabet_size(); ++x)
      out << "  s" << s << " -> s" << a.transition(s, x) << " [label="
          << quoted(std::to_string(x) + "|" + std::to_string(a.output(s)[x])) << "];\n";
  out << "}\n";
}

void write_schreier_dot(std::ostream& out, const Automaton& a, const SchreierLevelGraph& g,
                        const std::string& name) {
  const std::size_t d = a.alphabet_size();
  out << "digraph " << quoted(name) << " {\n";
  for (std::size_t v = 0; v < g.vertex_count; ++v)
    out << "  v" << v << " [label=" << quoted(vertex_name(v, d, g.level)) << "];\n";
  for (const auto& arc : g.arcs)
    out << "  v" << arc.from << " -> v" << arc.to << " [label=" << quoted(a.label(arc.generator)) << "];\n";
  out << "}\n";
}

void write_tile_dot(std::ostream& out, const Automaton& a, const TileGraph& g, const std::string& name) {
  const std::size_t d = a.alphabet_size();
  out << "graph " << quoted(name) << " {\n";
  for (std::size_t v = 0; v < g.vertex_count; ++v)
    out << "  v" << v << " [label=" << quoted(vertex_name(v, d, g.level)) << "];\n";
  for (const auto& [u, v] : g.edges) out << "  v" << u << " -- v" << v << ";\n";
  out << "}\n";
}

}  // namespace selfsim
