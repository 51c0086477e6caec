#pragma once

#include <string>
#include <string_view>

#include "btn/net.hpp"

namespace btn {

/// Line-oriented netlist text:
///   BTN 1 <input_dim>
///   LAYER <node_count>
///   UNIT <theta> <w_0> ... <w_{m-1}>
/// Decimal signed integers, single spaces, '\n' line ends, no trailing
/// whitespace. netlist_from_text(netlist_to_text(n)) reproduces n exactly.
std::string netlist_to_text(const LayeredNet& net);

LayeredNet netlist_from_text(std::string_view text);

/// Parses one netlist starting at offset pos; advances pos past it.
LayeredNet netlist_from_text(std::string_view text, std::size_t& pos);

} // namespace btn
