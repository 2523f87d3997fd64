// diamlab command line front end.
//
// Exit codes: 0 success (verify: all bounds hold), 1 failed check or
// infeasible computation, 2 usage error, 3 search budget exceeded.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "diamlab/bounds.hpp"
#include "diamlab/catalog.hpp"
#include "diamlab/gensets.hpp"
#include "diamlab/group.hpp"
#include "diamlab/report_io.hpp"
#include "diamlab/schreier.hpp"
#include "diamlab/table_io.hpp"
#include "diamlab/wordlen.hpp"

namespace {

using namespace diamlab;

struct GlobalOpts {
  std::uint64_t budget = kDefaultBudget;
  std::uint64_t max_elements = kDefaultMaxElements;
  unsigned threads = 1;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open table file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

struct SpecParts {
  std::string base;
  std::uint64_t n = 1;
};

// "Q8^2" -> (quaternion(8), 2). Catalog aliases win over the caret notation,
// so Z2^3 stays the elementary abelian group; file: specs are taken verbatim.
SpecParts split_power_suffix(const std::string& spec) {
  const std::string aliased = resolve_alias(spec);
  if (aliased != spec) return {aliased, 1};
  if (spec.rfind("file:", 0) == 0) return {spec, 1};
  const auto caret = spec.rfind('^');
  if (caret == std::string::npos || caret + 1 == spec.size()) return {spec, 1};
  const std::string tail = spec.substr(caret + 1);
  if (tail.find_first_not_of("0123456789") != std::string::npos) return {spec, 1};
  const std::uint64_t n = std::stoull(tail);
  if (n == 0) throw std::invalid_argument("power suffix must be >= 1 in '" + spec + "'");
  return {resolve_alias(spec.substr(0, caret)), n};
}

FiniteGroup load_base(const std::string& base) {
  if (base.rfind("file:", 0) == 0) {
    const std::string path = base.substr(5);
    return parse_cayley_table(slurp(path), path);
  }
  return builtin_group(resolve_alias(base));
}

FiniteGroup load_group(const std::string& spec, const GlobalOpts& g) {
  const SpecParts parts = split_power_suffix(spec);
  FiniteGroup B = load_base(parts.base);
  if (parts.n == 1) return B;
  return FiniteGroup::direct_power(B, parts.n, g.max_elements);
}

std::vector<elem_t> parse_elem_list(const FiniteGroup& G, const ElementNamer& nm,
                                    const std::string& csv) {
  std::vector<elem_t> out;
  for (const auto& raw : detail::split_top_level(csv, ',')) {
    const std::string tok = trim(raw);
    if (tok.empty())
      throw std::invalid_argument("empty element in list '" + csv + "'");
    out.push_back(parse_element(G, nm, tok));
  }
  return out;
}

std::vector<std::string> names_of(const ElementNamer& nm, std::span<const elem_t> es) {
  std::vector<std::string> out;
  for (elem_t e : es) out.push_back(nm.name(e));
  return out;
}

std::string brace_list(const ElementNamer& nm, std::span<const elem_t> es) {
  std::string s = "{";
  for (std::size_t i = 0; i < es.size(); ++i) {
    if (i) s += ", ";
    s += nm.name(es[i]);
  }
  return s + "}";
}

int run_catalog() {
  std::printf("%-30s %-10s %6s %-8s %4s %4s\n", "group", "alias", "order", "solvable",
              "dlen", "rank");
  for (const auto& e : catalog()) {
    validate_entry(e);
    std::printf("%-30s %-10s %6llu %-8s %4s %4u\n", e.name.c_str(), e.aliases.c_str(),
                static_cast<unsigned long long>(e.order), e.solvable ? "yes" : "no",
                e.solvable ? std::to_string(e.derived_length).c_str() : "-", e.rank);
  }
  std::printf("%zu entries, all validated\n", catalog().size());
  return 0;
}

int run_info(const std::string& spec, const GlobalOpts& g) {
  FiniteGroup G = load_group(spec, g);
  std::printf("group:           %s\n", G.name().c_str());
  std::printf("order:           %llu\n", static_cast<unsigned long long>(G.order()));
  if (G.is_power()) {
    std::printf("base:            %s\n", G.base().name().c_str());
    std::printf("exponent:        %u\n", G.exponent());
  }
  std::printf("abelian:         %s\n", G.is_abelian() ? "yes" : "no");
  std::uint64_t p = 0;
  if (is_prime_power(G.order(), p))
    std::printf("p-group:         yes (p = %llu)\n", static_cast<unsigned long long>(p));
  else
    std::printf("p-group:         no\n");

  DerivedSeries s = derived_series(G);
  std::string orders;
  for (const auto& t : s.terms) orders += " " + std::to_string(t.size());
  std::printf("solvable:        %s\n", s.solvable() ? "yes" : "no");
  std::printf("derived series: %s%s\n", orders.c_str(), s.solvable() ? "" : " ...");
  if (s.solvable())
    std::printf("derived length:  %u\n", s.derived_length());

  try {
    std::printf("rank:            %u\n", rank(G, g.budget));
  } catch (const budget_exceeded_error&) {
    std::printf("rank:            ? (budget exceeded, raise --budget)\n");
  }
  try {
    std::printf("abelianized rank: %u\n", abelianization_rank(G, g.budget));
  } catch (const budget_exceeded_error&) {
    std::printf("abelianized rank: ? (budget exceeded, raise --budget)\n");
  }
  return 0;
}

int run_table(const std::string& spec, const GlobalOpts& g) {
  std::fputs(emit_cayley_table(load_group(spec, g)).c_str(), stdout);
  return 0;
}

int run_diam(const std::string& spec, const std::string& gens_csv, bool symmetric,
             bool show_table, const GlobalOpts& g) {
  FiniteGroup G = load_group(spec, g);
  ElementNamer nm = element_namer(G);
  const std::vector<elem_t> gens = parse_elem_list(G, nm, gens_csv);
  LengthTable t = length_table(G, gens, symmetric);
  const std::vector<std::string> gn = names_of(nm, gens);

  std::printf("group: %s (order %llu)\n", G.name().c_str(),
              static_cast<unsigned long long>(G.order()));
  std::printf("gens:  %s   mode: %s\n", brace_list(nm, gens).c_str(),
              symmetric ? "symmetric" : "positive");
  if (!t.generating) {
    std::uint64_t reached = 0;
    for (elem_t e = 0; e < G.order(); ++e)
      if (t.reached(e)) ++reached;
    std::printf("generating: no (reached %llu of %llu elements)\n",
                static_cast<unsigned long long>(reached),
                static_cast<unsigned long long>(G.order()));
    return 1;
  }
  std::printf("generating: yes\n");
  std::printf("diameter: %u\n", t.diameter);
  std::printf("witness:  %s = %s\n", nm.name(t.witness).c_str(),
              shortest_word(t, t.witness).str(gn).c_str());
  if (show_table) {
    std::printf("%6s %-12s %6s  word\n", "id", "element", "length");
    for (elem_t e = 0; e < G.order(); ++e)
      std::printf("%6llu %-12s %6u  %s\n", static_cast<unsigned long long>(e),
                  nm.name(e).c_str(), t.lengths[e], shortest_word(t, e).str(gn).c_str());
  }
  return 0;
}

int run_dmax(const std::string& spec, std::uint64_t power, bool exact,
             std::uint64_t samples, std::uint64_t seed, std::uint32_t size_cap,
             const GlobalOpts& g) {
  FiniteGroup G = load_group(spec, g);
  if (power > 1) G = FiniteGroup::direct_power(G, power, g.max_elements);
  MaxDiamOptions opts;
  opts.strategy = samples > 0 && !exact ? MaxDiamStrategy::sampled
                                        : MaxDiamStrategy::exact;
  opts.budget = g.budget;
  opts.size_cap = size_cap;
  if (samples > 0) opts.samples = samples;
  opts.seed = seed;
  DiameterCertificate cert = max_diameters(G, opts);
  ElementNamer nm = element_namer(G);

  std::printf("group: %s (order %llu)\n", G.name().c_str(),
              static_cast<unsigned long long>(G.order()));
  std::printf("strategy: %s%s\n",
              opts.strategy == MaxDiamStrategy::exact ? "exact" : "sampled",
              cert.exhaustive ? " (exhaustive over minimal generating sets)" : "");
  if (opts.strategy == MaxDiamStrategy::sampled)
    std::printf("samples: %llu found of %llu requested, seed %llu\n",
                static_cast<unsigned long long>(cert.samples_found),
                static_cast<unsigned long long>(cert.samples_requested),
                static_cast<unsigned long long>(cert.seed));
  std::printf("min genset size: %u\n", cert.min_genset_size);
  std::printf("max diameter:        %u  at %s\n", cert.diameter,
              brace_list(nm, cert.argmax).c_str());
  std::printf("max diameter (sym):  %u  at %s\n", cert.diameter_sym,
              brace_list(nm, cert.argmax_sym).c_str());
  std::printf("min-size restriction: %u / %u (positive / symmetric)\n",
              cert.diameter_minsize, cert.diameter_sym_minsize);
  std::printf("gensets tested: %llu   subsets visited: %llu\n",
              static_cast<unsigned long long>(cert.gensets_tested),
              static_cast<unsigned long long>(cert.subsets_visited));
  return 0;
}

void print_decomposition(const ElementNamer& nm, const std::vector<std::string>& gn,
                         const Decomposition& d) {
  std::printf("decompose %s: h = %s, rep = %s (coset %u)\n", nm.name(d.target).c_str(),
              nm.name(d.subgroup_part).c_str(), nm.name(d.rep_part).c_str(), d.coset);
  std::printf("  word: %s (length %zu <= bound %llu)\n", d.word.str(gn).c_str(),
              d.word.size(), static_cast<unsigned long long>(d.certified_bound));
}

int run_schreier(const std::string& spec, const std::string& gens_csv,
                 const std::string& normal_csv, bool series, bool symmetric,
                 const std::string& element, const GlobalOpts& g) {
  FiniteGroup G = load_group(spec, g);
  ElementNamer nm = element_namer(G);
  const std::vector<elem_t> gens = parse_elem_list(G, nm, gens_csv);
  const std::vector<std::string> gn = names_of(nm, gens);

  std::printf("group: %s (order %llu), gens %s, mode %s\n", G.name().c_str(),
              static_cast<unsigned long long>(G.order()),
              brace_list(nm, gens).c_str(), symmetric ? "symmetric" : "positive");

  if (series) {
    SeriesDecomposer sd(G, gens, symmetric);
    std::printf("derived series levels: %u, certified bound %llu\n", sd.level_count(),
                static_cast<unsigned long long>(sd.certified_bound()));
    for (std::uint32_t i = 0; i < sd.level_count(); ++i)
      std::printf("  level %u: quotient order %llu, transversal max length %u, "
                  "budget %llu\n",
                  i,
                  static_cast<unsigned long long>(
                      sd.level_context(i).transversal().quot.group.order()),
                  sd.level_context(i).transversal_max_length(),
                  static_cast<unsigned long long>(sd.level_budget(i)));
    if (!element.empty()) {
      const elem_t target = parse_element(G, nm, element);
      print_decomposition(nm, gn, sd.decompose(target));
    }
    return 0;
  }

  const std::vector<elem_t> ngens = parse_elem_list(G, nm, normal_csv);
  Subgroup H = closure(G, ngens);
  std::printf("subgroup <%s>: order %llu\n", brace_list(nm, ngens).c_str(),
              static_cast<unsigned long long>(H.size()));
  DecomposeContext ctx(G, H, gens, symmetric);
  std::printf("quotient order %llu, transversal max length %u\n",
              static_cast<unsigned long long>(ctx.transversal().quot.group.order()),
              ctx.transversal_max_length());
  std::printf("schreier generators: %zu distinct, subgroup diameter %u\n",
              ctx.generators().size(), ctx.subgroup_diameter());
  std::printf("certified bound: %llu\n",
              static_cast<unsigned long long>(ctx.certified_bound()));
  if (!element.empty()) {
    const elem_t target = parse_element(G, nm, element);
    Decomposition d = ctx.decompose(target);
    print_decomposition(nm, gn, d);
    Word hw = ctx.subgroup_word(d.subgroup_part);
    std::vector<std::string> hn;
    for (std::uint32_t k : ctx.subgroup_gen_indices())
      hn.push_back(nm.name(ctx.generators()[k].element));
    std::printf("  subgroup part over schreier gens: %s\n", hw.str(hn).c_str());
  }
  return 0;
}

int run_verify(const std::string& spec, std::uint64_t power, const std::string& format,
               const std::string& out_path, int strategy_sel, std::uint64_t samples,
               std::uint64_t seed, std::uint32_t size_cap, const GlobalOpts& g) {
  const SpecParts parts = split_power_suffix(spec);
  if (parts.n > 1 && power > 0)
    throw std::invalid_argument("give the power either as a ^n suffix or via --power");
  const std::uint64_t n = parts.n > 1 ? parts.n : (power > 0 ? power : 1);
  FiniteGroup base = load_base(parts.base);

  VerifyOptions vo;
  vo.strategy = strategy_sel == 1   ? VerifyStrategy::exact
                : strategy_sel == 2 ? VerifyStrategy::sampled
                                    : VerifyStrategy::automatic;
  vo.budget = g.budget;
  vo.max_elements = g.max_elements;
  if (samples > 0) vo.samples = samples;
  vo.seed = seed;
  vo.size_cap = size_cap;

  BoundReport rep = verify_report(base, static_cast<std::uint32_t>(n), vo);
  const std::string text = emit_report(rep, format);
  if (out_path.empty()) {
    std::fputs(text.c_str(), stdout);
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot write '" + out_path + "'");
    out << text;
  }

  std::string failures;
  for (const auto& c : rep.checks)
    if (c.applicable && c.verdict == "fail") failures += " " + c.key;
  if (rep.all_pass) {
    std::fprintf(stderr, "%s n=%u: all bounds hold\n", rep.group.c_str(), rep.n);
    return 0;
  }
  std::fprintf(stderr, "%s n=%u: FAILED checks:%s\n", rep.group.c_str(), rep.n,
               failures.c_str());
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact word-length diameters of finite groups"};
  app.require_subcommand(1);
  GlobalOpts g;
  app.add_option("--budget", g.budget, "subset-walk budget before giving up")
      ->envname("DIAMLAB_BUDGET")
      ->capture_default_str();
  app.add_option("--max-elements", g.max_elements, "largest group order to materialize")
      ->envname("DIAMLAB_MAX_ELEMENTS")
      ->capture_default_str();
  app.add_option("--threads", g.threads, "worker threads (reserved, runs sequentially)")
      ->envname("DIAMLAB_THREADS")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  auto* cat = app.add_subcommand("catalog", "list and revalidate the builtin groups");

  std::string info_spec;
  auto* info = app.add_subcommand("info", "orders, series and ranks of one group");
  info->add_option("group", info_spec, "group spec (name, alias, ^n, file:PATH)")
      ->required();

  std::string table_spec;
  auto* tab = app.add_subcommand("table", "print the Cayley table of a group");
  tab->add_option("group", table_spec, "group spec")->required();

  std::string diam_spec, diam_gens;
  bool diam_sym = false, diam_table = false;
  auto* diam = app.add_subcommand("diam", "diameter for one generating list");
  diam->add_option("group", diam_spec, "group spec")->required();
  diam->add_option("--gens", diam_gens, "comma separated elements (names or ids)")
      ->required();
  diam->add_flag("--symmetric", diam_sym, "also use inverse generators");
  diam->add_flag("--table", diam_table, "print the full length table");

  std::string dmax_spec;
  std::uint64_t dmax_power = 0, dmax_samples = 0, dmax_seed = 0;
  std::uint32_t dmax_cap = 0;
  bool dmax_exact = false;
  auto* dmax = app.add_subcommand("dmax", "maximize the diameter over generating sets");
  dmax->add_option("group", dmax_spec, "group spec")->required();
  dmax->add_option("--power", dmax_power, "replace the group by its nth direct power");
  auto* dmax_exact_flag =
      dmax->add_flag("--exact", dmax_exact, "exhaustive over minimal generating sets");
  dmax->add_option("--sample", dmax_samples, "sample this many minimal generating sets")
      ->excludes(dmax_exact_flag);
  dmax->add_option("--seed", dmax_seed, "sampling seed");
  dmax->add_option("--size-cap", dmax_cap, "largest generating set size to consider");

  std::string sch_spec, sch_gens, sch_normal, sch_element;
  bool sch_series = false, sch_sym = false;
  auto* sch = app.add_subcommand("schreier",
                                 "transversals and certified word decompositions");
  sch->add_option("group", sch_spec, "group spec")->required();
  sch->add_option("--gens", sch_gens, "generating list for the whole group")->required();
  auto* sch_normal_opt =
      sch->add_option("--normal", sch_normal, "elements generating a normal subgroup");
  sch->add_flag("--series", sch_series, "decompose along the whole derived series")
      ->excludes(sch_normal_opt);
  sch->add_option("--element", sch_element, "element to decompose");
  sch->add_flag("--symmetric", sch_sym, "also use inverse generators");

  std::string ver_spec, ver_format = "json", ver_out;
  std::uint64_t ver_power = 0, ver_samples = 0, ver_seed = 0;
  std::uint32_t ver_cap = 0;
  bool ver_exact = false, ver_sampled = false;
  auto* ver = app.add_subcommand("verify", "check the diameter bounds for G^n");
  ver->add_option("group", ver_spec, "base group spec (a ^n suffix sets the power)")
      ->required();
  ver->add_option("--power", ver_power, "direct power to verify");
  ver->add_option("--format", ver_format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  ver->add_option("--out", ver_out, "write the report to a file");
  auto* ver_exact_flag = ver->add_flag("--exact", ver_exact, "force the exact strategy");
  ver->add_flag("--sampled", ver_sampled, "force the sampled strategy")
      ->excludes(ver_exact_flag);
  ver->add_option("--sample", ver_samples, "sample count for the sampled strategy")
      ->excludes(ver_exact_flag);
  ver->add_option("--seed", ver_seed, "sampling seed");
  ver->add_option("--size-cap", ver_cap, "largest generating set size to consider");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(cat)) return run_catalog();
    if (app.got_subcommand(info)) return run_info(info_spec, g);
    if (app.got_subcommand(tab)) return run_table(table_spec, g);
    if (app.got_subcommand(diam))
      return run_diam(diam_spec, diam_gens, diam_sym, diam_table, g);
    if (app.got_subcommand(dmax))
      return run_dmax(dmax_spec, dmax_power, dmax_exact, dmax_samples, dmax_seed,
                      dmax_cap, g);
    if (app.got_subcommand(sch)) {
      if (!sch_series && sch_normal.empty())
        throw std::invalid_argument("schreier needs --normal or --series");
      return run_schreier(sch_spec, sch_gens, sch_normal, sch_series, sch_sym,
                          sch_element, g);
    }
    if (app.got_subcommand(ver)) {
      const int strat = ver_exact ? 1 : (ver_sampled || ver_samples > 0 ? 2 : 0);
      return run_verify(ver_spec, ver_power, ver_format, ver_out, strat, ver_samples,
                        ver_seed, ver_cap, g);
    }
  } catch (const budget_exceeded_error& e) {
    std::fprintf(stderr, "budget exceeded: %s\n", e.what());
    return 3;
  } catch (const falsified_bound_error& e) {
    std::fprintf(stderr, "BOUND FALSIFIED: %s\n", e.what());
    return 1;
  } catch (const table_parse_error& e) {
    std::fprintf(stderr, "table error: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::out_of_range& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 2;
}
