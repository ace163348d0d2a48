#pragma once

// Text formats: graph JSON, element literals, q specs.

#include <string>
#include <string_view>
#include <vector>

#include "rahecke/hecke.hpp"

namespace rahecke::io {

using coxeter::GraphPtr;
using hecke::HeckeElement;
using hecke::MultiParameter;

/// {"generators": [...], "commuting_pairs": [[a, b], ...], "label": optional}.
/// Syntax errors report line and column.
GraphPtr parse_graph_json(std::string_view text, const std::string& source = "<input>");
GraphPtr load_graph_file(const std::string& path);
std::string graph_to_json(const coxeter::CoxeterGraph& g);

/// "dihedral", "square" or "pentagon"; nullptr otherwise.
GraphPtr builtin_graph(std::string_view name);
std::vector<std::string> builtin_graph_names();
/// A built-in name or a path to a JSON file.
GraphPtr resolve_graph(const std::string& name_or_path);

/// Splits a run of generator names; longest names are tried first and the
/// split backtracks when a shorter choice is needed. "e" is the identity.
coxeter::Letters parse_letters(std::string_view text, const coxeter::CoxeterGraph& g);
coxeter::NormalWord parse_word(std::string_view text, const coxeter::CoxeterGraph& g);

/// "1.0*e + 0.5*st - 2*us", "2i*s", "(1-0.5i)*st", "-t". The minus sign may
/// be ASCII or U+2212. Words are normalised, repeated terms add up.
HeckeElement parse_element(std::string_view text, const MultiParameter& q);

/// "all=1.2" or "s=1.5,t=2" or both ("all=2,s=3"); every generator needs a value.
MultiParameter parse_q(std::string_view text, const GraphPtr& graph);

std::vector<double> parse_double_list(std::string_view text);

}  // namespace rahecke::io
