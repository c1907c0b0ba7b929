#pragma once

#include <ostream>
#include <string>

#include "selfsim/automaton.hpp"
#include "selfsim/contraction.hpp"
#include "selfsim/schreier.hpp"

namespace selfsim {

/// Moore diagram: one node per state labeled "name:perm", one arc per
/// letter x labeled "x|y" where y is the output letter.
void write_moore_dot(std::ostream& out, const Automaton& a, const std::string& name = "moore");

/// Schreier graph with arcs labeled by generator name; self-loops kept.
void write_schreier_dot(std::ostream& out, const Automaton& a, const SchreierLevelGraph& g,
                        const std::string& name = "schreier");

void write_tile_dot(std::ostream& out, const Automaton& a, const TileGraph& g,
                    const std::string& name = "tiles");

}  // namespace selfsim
