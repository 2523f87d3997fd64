#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "diamlab/group.hpp"

namespace diamlab {

/// Cayley table text format: first data line is the order m, followed by m
/// data lines of m space-separated 0-based element ids (row-major, element 0
/// is the identity). Lines whose first non-blank character is '#' are
/// comments. The parsed table is validated against the full group axioms.
inline FiniteGroup parse_cayley_table(const std::string& text, std::string name = {}) {
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  std::uint64_t m = 0;
  bool have_order = false;
  std::vector<std::uint32_t> table;
  std::uint64_t rows = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    if (!have_order) {
      if (!(ls >> m) || m == 0)
        throw table_parse_error("line " + std::to_string(lineno) +
                                ": expected the group order");
      std::string rest;
      if (ls >> rest)
        throw table_parse_error("line " + std::to_string(lineno) +
                                ": trailing data after the order");
      if (m > kDenseOrderCap)
        throw table_parse_error("line " + std::to_string(lineno) + ": order " +
                                std::to_string(m) + " exceeds the dense cap " +
                                std::to_string(kDenseOrderCap));
      have_order = true;
      table.reserve(m * m);
      continue;
    }
    if (rows == m)
      throw table_parse_error("line " + std::to_string(lineno) +
                              ": extra data after " + std::to_string(m) + " rows");
    std::uint64_t v = 0;
    std::uint64_t cols = 0;
    while (ls >> v) {
      if (cols == m)
        throw table_parse_error("row " + std::to_string(rows) + " (line " +
                                std::to_string(lineno) + "): more than " +
                                std::to_string(m) + " entries");
      table.push_back(static_cast<std::uint32_t>(v));
      ++cols;
    }
    if (!ls.eof())
      throw table_parse_error("row " + std::to_string(rows) + " (line " +
                              std::to_string(lineno) + "), col " +
                              std::to_string(cols) + ": not a number");
    if (cols != m)
      throw table_parse_error("row " + std::to_string(rows) + " (line " +
                              std::to_string(lineno) + "): expected " +
                              std::to_string(m) + " entries, got " +
                              std::to_string(cols));
    ++rows;
  }
  if (!have_order) throw table_parse_error("empty table file");
  if (rows != m)
    throw table_parse_error("expected " + std::to_string(m) + " rows, got " +
                            std::to_string(rows));
  if (name.empty()) name = "table(" + std::to_string(m) + ")";
  return FiniteGroup::from_table(std::move(name), m, std::move(table));
}

/// Canonical emission (no comments, single spaces); emit(parse(f)) == f for
/// canonically formatted f. Works for any group within the dense cap, table
/// or power backed.
inline std::string emit_cayley_table(const FiniteGroup& G) {
  const std::uint64_t m = G.order();
  if (m > kDenseOrderCap)
    throw std::invalid_argument("emit_cayley_table: order above the dense cap");
  std::string out = std::to_string(m);
  out += '\n';
  for (std::uint64_t a = 0; a < m; ++a) {
    for (std::uint64_t b = 0; b < m; ++b) {
      if (b) out += ' ';
      out += std::to_string(G.mul_nocheck(a, b));
    }
    out += '\n';
  }
  return out;
}

}  // namespace diamlab
