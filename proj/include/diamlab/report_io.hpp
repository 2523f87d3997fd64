#pragma once

#include <cstdio>
#include <limits>
#include <string>

#include <json.hpp>

#include "diamlab/bounds.hpp"

namespace diamlab {

namespace detail {

// u128 as a JSON value: a number while it fits 64 bits, a decimal string
// beyond that.
inline nlohmann::ordered_json u128_json(u128 v) {
  if (v <= std::numeric_limits<std::uint64_t>::max())
    return static_cast<std::uint64_t>(v);
  return u128_to_string(v);
}

inline std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

inline std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace detail

inline std::string emit_report_json(const BoundReport& r) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["schema"] = "diamlab/1";
  j["group"] = r.group;
  j["base_order"] = r.base_order;
  j["n"] = r.n;
  j["power_order"] = r.power_order;
  j["solvable"] = r.solvable;
  j["derived_length"] = r.solvable ? ordered_json(r.derived_length) : ordered_json();
  j["abelian"] = r.abelian;
  j["p_group"] = r.p_group;
  j["p"] = r.p_group ? ordered_json(r.p) : ordered_json();
  j["alpha"] = r.alpha;
  j["beta"] = r.beta;
  j["strategy"] = r.strategy;
  j["exhaustive"] = r.exhaustive;
  j["seed"] = r.seed;
  j["samples_requested"] = r.samples_requested;
  j["samples_found"] = r.samples_found;
  j["budget"] = r.budget;
  j["size_cap"] = r.size_cap;
  j["min_genset_size"] = r.min_genset_size;
  j["diameter"] = r.diameter;
  j["diameter_sym"] = r.diameter_sym;
  j["diameter_minsize"] = r.diameter_minsize;
  j["diameter_sym_minsize"] = r.diameter_sym_minsize;
  j["argmax"] = r.argmax;
  j["argmax_sym"] = r.argmax_sym;
  j["gensets_tested"] = r.gensets_tested;
  j["subsets_visited"] = r.subsets_visited;
  j["babai_checked"] = r.babai_checked;
  j["babai_violations"] = r.babai_violations;
  for (const auto& c : r.checks) {
    if (c.value_defined) {
      if (c.integral)
        j["bound_" + c.key] = detail::u128_json(c.bound_int);
      else
        j["bound_" + c.key] = c.bound_real;
      if (c.key == "diam") j["valid_from_n"] = c.valid_from_n;
      if (c.key == "ln" && c.valid_from_n > 1) j["valid_from_n_ln"] = c.valid_from_n;
    }
    if (c.applicable) {
      j["verdict_" + c.key] = c.verdict;
      j["measured_" + c.key] = c.measured;
    } else if (!c.note.empty()) {
      j["note_" + c.key] = c.note;
    }
  }
  j["all_pass"] = r.all_pass;
  return j.dump(2) + "\n";
}

inline const char* report_csv_header() {
  return "group,n,power_order,strategy,exhaustive,solvable,derived_length,abelian,"
         "p_group,alpha,beta,seed,samples_found,size_cap,min_genset_size,diameter,"
         "diameter_sym,diameter_minsize,diameter_sym_minsize,gensets_tested,"
         "subsets_visited,babai_checked,babai_violations,bound_sym,verdict_sym,"
         "bound_diam,valid_from_n,verdict_diam,bound_ln,verdict_ln,bound_abelian,"
         "verdict_abelian,bound_q8,verdict_q8,all_pass";
}

/// One CSV row per (group, n); cells for undefined bounds or unchecked
/// verdicts stay empty. include_header controls whether the fixed header line
/// is emitted first.
inline std::string emit_report_csv(const BoundReport& r, bool include_header = true) {
  std::string out;
  if (include_header) {
    out += report_csv_header();
    out += '\n';
  }
  auto cell = [&](const std::string& s) {
    out += detail::csv_quote(s);
    out += ',';
  };
  auto num = [&](std::uint64_t v) { cell(std::to_string(v)); };
  auto flag = [&](bool b) { cell(b ? "true" : "false"); };
  cell(r.group);
  num(r.n);
  num(r.power_order);
  cell(r.strategy);
  flag(r.exhaustive);
  flag(r.solvable);
  cell(r.solvable ? std::to_string(r.derived_length) : "");
  flag(r.abelian);
  flag(r.p_group);
  num(r.alpha);
  num(r.beta);
  num(r.seed);
  num(r.samples_found);
  num(r.size_cap);
  num(r.min_genset_size);
  num(r.diameter);
  num(r.diameter_sym);
  num(r.diameter_minsize);
  num(r.diameter_sym_minsize);
  num(r.gensets_tested);
  num(r.subsets_visited);
  num(r.babai_checked);
  num(r.babai_violations);
  for (const char* key : {"sym", "diam", "ln", "abelian", "q8"}) {
    const BoundCheck& c = find_check(r, key);
    if (!c.value_defined)
      cell("");
    else if (c.integral)
      cell(u128_to_string(c.bound_int));
    else
      cell(detail::format_real(c.bound_real));
    if (c.key == "diam") cell(c.value_defined ? std::to_string(c.valid_from_n) : "");
    cell(c.applicable ? c.verdict : "");
  }
  out += r.all_pass ? "true" : "false";
  out += '\n';
  return out;
}

inline std::string emit_report(const BoundReport& r, const std::string& format) {
  if (format == "json") return emit_report_json(r);
  if (format == "csv") return emit_report_csv(r);
  throw std::invalid_argument("unknown report format '" + format + "'");
}

}  // namespace diamlab
