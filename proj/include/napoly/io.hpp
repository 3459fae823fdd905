#pragma once

#include <string>
#include <vector>

#include "napoly/overlay.hpp"
#include "napoly/wfa.hpp"

namespace napoly {

/// Automaton interchange JSON:
///   {"states": <count>, "start": <id>, "accepts": [<id>...],
///    "transitions": [{"from", "to", "symbols", "weight"}...]}
/// "symbols" is either the literal "EPSILON" or a string whose code points
/// (each <= U+00FF) are the member bytes of the class; serialization writes
/// members in ascending byte order. Unknown fields are rejected.
WeightedAutomaton parse_wfa_json(const std::string& text);
std::string wfa_to_json(const WeightedAutomaton& wfa);

/// Design file JSON: params, mode, exactness flag, start cell, the full
/// cell array (symbol table as a 64-hex-char string, weight, flags, enabled
/// out targets) and the node-to-cell placement map. Deterministic output;
/// strict parsing. Loading rebuilds the simulation tables and re-validates.
PlacedDesign parse_design_json(const std::string& text);
std::string design_to_json(const PlacedDesign& design);

WeightedAutomaton load_wfa(const std::string& path);
void save_wfa(const WeightedAutomaton& wfa, const std::string& path);
PlacedDesign load_design(const std::string& path);
void save_design(const PlacedDesign& design, const std::string& path);

/// Plain-text sequences, one per line; lines starting with '>' (FASTA
/// headers) and blank lines are skipped.
std::vector<std::string> read_sequences(const std::string& path);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace napoly
