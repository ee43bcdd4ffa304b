#include "strata/cli.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "strata/errors.hpp"
#include "strata/search.hpp"
#include "strata/stratify.hpp"
#include "strata/witness.hpp"

namespace strata::cli {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

RelSym parse_flavor(const std::string& name) {
  auto r = rel_from_keyword(name);
  if (!r || *r == RelSym::Eq) {
    throw Error("unknown membership flavor '" + name +
                "' (expected mem, mem*, mem' or memf)");
  }
  return *r;
}

std::string join_ids(const MembershipStructure& m, const std::vector<int>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ',';
    out += m.id_of(xs[i]);
  }
  return out;
}

struct Options {
  bool lines = false;  // --format lines
};

int run_stratify(const std::string& path, const Options& opt,
                 std::ostream& out) {
  Formula phi = parse_formula(read_file(path));
  StratResult res = stratify(phi);
  if (auto* t = std::get_if<Typing>(&res)) {
    if (opt.lines) {
      out << "verdict kind=stratified\n";
      for (const auto& [var, level] : t->levels) {
        out << "level var=" << var << " value=" << level << "\n";
      }
    } else {
      out << "stratified\n";
      for (const auto& [var, level] : t->levels) {
        out << "  " << var << ": " << level << "\n";
      }
    }
    return 0;
  }
  const auto& fail = std::get<StratFailure>(res);
  if (opt.lines) {
    out << "verdict kind=unstratified offset=" << fail.offset() << "\n";
    for (const auto& s : fail.cycle) {
      out << "step from=" << s.from << " to=" << s.to << " weight=" << s.weight
          << " atom=" << print_formula(s.atom) << "\n";
    }
  } else {
    out << "not stratifiable (cycle offset " << fail.offset() << ")\n";
    for (const auto& s : fail.cycle) {
      out << "  " << print_formula(s.atom) << "  [" << s.from << " -> " << s.to
          << ", " << (s.weight >= 0 ? "+" : "") << s.weight << "]\n";
    }
  }
  return 1;
}

int run_eval(const std::string& structure_path, const std::string& formula_path,
             const std::vector<std::string>& assigns, const Options& opt,
             std::ostream& out) {
  MembershipStructure m = MembershipStructure::parse(read_file(structure_path));
  Formula phi = parse_formula(read_file(formula_path));
  Assignment asg;
  for (const auto& a : assigns) {
    auto eq = a.find('=');
    if (eq == std::string::npos) {
      throw Error("--assign expects var=id, got '" + a + "'");
    }
    asg[a.substr(0, eq)] = m.index_of(a.substr(eq + 1));
  }
  bool value = eval(m, phi, asg);
  if (opt.lines) {
    out << "eval verdict=" << (value ? "true" : "false") << "\n";
  } else {
    out << (value ? "true" : "false") << "\n";
  }
  return value ? 0 : 1;
}

void print_axiom_report(const MembershipStructure& m, const AxiomReport& r,
                        const Options& opt, std::ostream& out) {
  std::string flavor = rel_keyword(r.flavor);
  if (opt.lines) {
    out << "axiom name=" << r.check << " flavor=" << flavor
        << " verdict=" << (r.holds ? "holds" : "fails");
    if (r.holds) {
      out << " witnesses=" << r.witnesses.size();
    } else if (r.counterexample) {
      out << " counterexample=" << join_ids(m, *r.counterexample);
    }
    out << "\n";
  } else {
    out << "  " << r.check << " [" << flavor << "]: "
        << (r.holds ? "holds" : "FAILS");
    if (r.holds) {
      out << " (witnesses: " << r.witnesses.size() << ")";
    } else if (r.counterexample) {
      out << "  counterexample: (" << join_ids(m, *r.counterexample) << ")";
    }
    out << "\n";
  }
}

int run_axioms(const std::string& path, const std::string& flavor_name,
               const std::string& ext_scope, const Options& opt,
               std::ostream& out) {
  MembershipStructure m = MembershipStructure::parse(read_file(path));
  RelSym flavor = parse_flavor(flavor_name);
  bool all_hold = true;
  for (AxiomId id : kAllAxioms) {
    AxiomReport r = check_axiom(m, id, flavor);
    all_hold = all_hold && r.holds;
    print_axiom_report(m, r, opt, out);
  }
  ExtScope scope = ext_scope == "sets" ? ExtScope::SetsOnly : ExtScope::All;
  AxiomReport ext = check_extensionality(m, flavor, scope);
  all_hold = all_hold && ext.holds;
  if (opt.lines) {
    out << "ext scope=" << (scope == ExtScope::All ? "all" : "sets")
        << " flavor=" << rel_keyword(flavor)
        << " verdict=" << (ext.holds ? "holds" : "fails");
    if (!ext.holds && ext.counterexample) {
      out << " counterexample=" << join_ids(m, *ext.counterexample);
    }
    out << "\n";
  } else {
    out << "  extensionality [" << rel_keyword(flavor) << ", "
        << (scope == ExtScope::All ? "all" : "sets-only")
        << "]: " << (ext.holds ? "holds" : "FAILS");
    if (!ext.holds && ext.counterexample) {
      out << "  counterexample: (" << join_ids(m, *ext.counterexample) << ")";
    }
    out << "\n";
  }
  return all_hold ? 0 : 1;
}

int run_witness(const std::string& path, const std::string& axiom,
                const std::vector<std::string>& input_ids,
                const std::string& recipe, const std::string& variant,
                const Options& opt, std::ostream& out) {
  MembershipStructure m = MembershipStructure::parse(read_file(path));
  auto id = axiom_from_name(axiom);
  if (!id) throw Error("unknown axiom '" + axiom + "'");
  RecipeFamily family =
      recipe == "prime" ? RecipeFamily::Prime : RecipeFamily::Star;
  PiVariant pivot = variant == "b" ? PiVariant::B : PiVariant::A;

  std::vector<int> inputs;
  for (const auto& s : input_ids) inputs.push_back(m.index_of(s));
  auto need = [&](std::size_t k) {
    if (inputs.size() != k) {
      throw Error("axiom '" + axiom + "' needs " + std::to_string(k) +
                  " input(s), got " + std::to_string(inputs.size()));
    }
  };

  WitnessSession session(m);
  WitnessOutcome o;
  switch (*id) {
    case AxiomId::Complements:
      need(1);
      o = session.complement(inputs[0]);
      break;
    case AxiomId::Pairing:
      need(2);
      o = session.pair(inputs[0], inputs[1]);
      break;
    case AxiomId::SetUnion:
      need(1);
      o = session.set_union(inputs[0], family);
      break;
    case AxiomId::UnorderedComposition:
      need(2);
      o = session.compose(inputs[0], inputs[1], family);
      break;
    case AxiomId::IntersectionRelationSet:
      need(0);
      o = session.intersection_set(family, pivot);
      break;
  }

  std::string family_name = o.family == RecipeFamily::Prime ? "prime" : "star";
  if (opt.lines) {
    out << "witness axiom=" << axiom_name(o.axiom) << " family=" << family_name
        << " inputs=" << join_ids(m, o.inputs);
    if (o.witness) {
      out << " element=" << m.id_of(*o.witness)
          << " validated=" << (o.validated ? "true" : "false");
    } else {
      out << " kind=" << o.failure_kind.value_or("failed");
    }
    out << "\n";
  } else {
    out << "axiom: " << axiom_name(o.axiom) << " (" << family_name
        << " recipe)\n";
    out << "inputs: "
        << (o.inputs.empty() ? std::string("none") : join_ids(m, o.inputs))
        << "\n";
    out << "trace:\n";
    for (const auto& step : o.trace) {
      out << "  " << step.label << " = " << step.value << "\n";
    }
    if (o.witness) {
      out << "witness: " << m.id_of(*o.witness) << "\n";
      out << "validated: " << (o.validated ? "yes" : "no") << "\n";
      if (!o.validated && o.failure) out << "note: " << *o.failure << "\n";
    } else {
      out << "failed: " << o.failure.value_or("no witness") << "\n";
    }
  }
  return (o.witness && o.validated) ? 0 : 1;
}

std::vector<CheckItem> parse_check_items(const std::vector<std::string>& specs,
                                         RelSym default_flavor) {
  std::vector<CheckItem> items;
  for (const auto& raw : specs) {
    std::istringstream in(raw);
    std::string piece;
    while (std::getline(in, piece, ',')) {
      if (piece.empty()) continue;
      CheckItem item;
      item.flavor = default_flavor;
      std::string name = piece;
      auto colon = piece.find(':');
      if (colon != std::string::npos) {
        name = piece.substr(0, colon);
        item.flavor = parse_flavor(piece.substr(colon + 1));
      }
      if (name == "ext_all") {
        item.ext = ExtScope::All;
      } else if (name == "ext_sets") {
        item.ext = ExtScope::SetsOnly;
      } else {
        auto id = axiom_from_name(name);
        if (!id) throw Error("unknown check '" + name + "'");
        item.axiom = id;
      }
      items.push_back(item);
    }
  }
  return items;
}

int run_search(int size, const std::string& mode, bool total, bool injective,
               const std::vector<std::string>& axiom_specs,
               const std::string& flavor_name, std::uint64_t budget,
               bool randomized, std::uint64_t samples, std::uint64_t seed,
               std::ostream& out) {
  SearchSpec spec;
  spec.domain_size = size;
  spec.f_mode = mode == "element" ? FMode::Element : FMode::SetValued;
  spec.require_total = total;
  spec.require_injective = injective;
  spec.budget = budget;
  spec.mode = randomized ? SearchMode::Randomized : SearchMode::Exhaustive;
  spec.samples = samples;
  spec.seed = seed;
  spec.checks = parse_check_items(axiom_specs, parse_flavor(flavor_name));

  SearchResult res = find_model(spec);
  if (res.model) {
    out << "search verdict=found examined=" << res.examined << "\n";
    out << res.model->to_text();
    return 0;
  }
  out << "search verdict=exhausted examined=" << res.examined << "\n";
  return 1;
}

int run_cantor(int max_n, std::ostream& out) {
  CantorReport report = cantor_check(max_n);
  for (const auto& row : report.rows) {
    out << "cantor n=" << row.n << " maps=" << row.maps_checked
        << " surjections=" << row.surjections
        << " diagonal-missing=" << row.diagonal_confirmed << "\n";
  }
  out << (report.any_surjection ? "surjection found (unexpected)\n"
                                : "no surjection onto the power set\n");
  return report.any_surjection ? 1 : 0;
}

int run_translate(const std::string& path, const std::string& from_name,
                  const std::string& to_name, const std::string& guard,
                  const Options& opt, std::ostream& out) {
  Formula phi = parse_formula(read_file(path));
  auto from = rel_from_keyword(from_name);
  auto to = rel_from_keyword(to_name);
  if (!from || !to) {
    throw Error("unknown relation symbol in --from/--to");
  }
  std::optional<std::string> g;
  if (!guard.empty()) g = guard;
  Formula translated = recode_translate(phi, *from, *to, g);
  if (opt.lines) {
    out << "formula=" << print_formula(translated) << "\n";
  } else {
    out << print_formula(translated) << "\n";
  }
  return 0;
}

int run_encode(const std::string& notation, bool has_code, std::uint64_t code,
               const Options& opt, std::ostream& out) {
  if (!notation.empty() && has_code) {
    throw Error("give either a set notation or --code, not both");
  }
  if (notation.empty() && !has_code) {
    throw Error("give a set notation or --code");
  }
  if (has_code) {
    HFSet s = ack_decode(code);
    if (opt.lines) {
      out << "encode code=" << code << " set=" << s.to_string() << "\n";
    } else {
      out << s.to_string() << "\n";
    }
  } else {
    HFSet s = HFSet::parse(notation);
    std::uint64_t c = ack_encode(s);
    if (opt.lines) {
      out << "encode code=" << c << " set=" << s.to_string() << "\n";
    } else {
      out << c << "\n";
    }
  }
  return 0;
}

int run_transposition(int stage, const Options& opt, std::ostream& out) {
  TranspositionReport r = transposition_example(stage);
  bool affirmative = !r.automorphism && r.upward_agrees && r.downward_agrees &&
                     r.partition_agrees;
  if (opt.lines) {
    out << "transposition stage=" << r.stage
        << " automorphism=" << (r.automorphism ? "true" : "false");
    if (r.violation) {
      out << " violation=" << r.violation->first << ","
          << r.violation->second;
    }
    out << " pairsets=" << r.pair_sets_checked
        << " upward=" << (r.upward_agrees ? "true" : "false")
        << " downward=" << (r.downward_agrees ? "true" : "false")
        << " split=" << (r.partition_agrees ? "true" : "false") << "\n";
  } else {
    out << "stage: " << r.stage << "\n";
    out << "automorphism: " << (r.automorphism ? "yes (unexpected)" : "no")
        << (r.violation ? "  violated at " + r.violation_ids : "") << "\n";
    out << "pair sets checked: " << r.pair_sets_checked << "\n";
    out << "upward oracle: " << (r.upward_agrees ? "agree" : "DISAGREE")
        << "\n";
    out << "downward oracle: " << (r.downward_agrees ? "agree" : "DISAGREE")
        << "\n";
    out << "split computation: " << (r.partition_agrees ? "agree" : "DISAGREE")
        << "\n";
  }
  return affirmative ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"workbench for stratified comprehension over finite "
               "membership structures"};
  app.require_subcommand(1);

  std::string format = "text";

  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", format, "output format: text or lines")
        ->check(CLI::IsMember({"text", "lines"}));
  };

  // stratify
  std::string formula_path;
  auto* sub_stratify =
      app.add_subcommand("stratify", "type a formula or show a failure cycle");
  sub_stratify->add_option("formula", formula_path, "formula file")->required();
  add_format(sub_stratify);

  // eval
  std::string eval_structure, eval_formula;
  std::vector<std::string> eval_assigns;
  auto* sub_eval =
      app.add_subcommand("eval", "evaluate a formula over a structure");
  sub_eval->add_option("structure", eval_structure, "structure file")
      ->required();
  sub_eval->add_option("formula", eval_formula, "formula file")->required();
  sub_eval->add_option("--assign", eval_assigns,
                       "free-variable assignment var=id (repeatable)");
  add_format(sub_eval);

  // axioms
  std::string ax_structure, ax_flavor = "mem", ax_ext = "all";
  auto* sub_axioms = app.add_subcommand(
      "axioms", "check the five axioms plus extensionality");
  sub_axioms->add_option("structure", ax_structure, "structure file")
      ->required();
  sub_axioms->add_option("--flavor", ax_flavor, "membership flavor")
      ->check(CLI::IsMember({"mem", "mem*", "mem'", "memf"}));
  sub_axioms->add_option("--ext", ax_ext, "extensionality scope")
      ->check(CLI::IsMember({"all", "sets"}));
  add_format(sub_axioms);

  // witness
  std::string w_structure, w_axiom, w_recipe = "star", w_variant = "a";
  std::vector<std::string> w_inputs;
  auto* sub_witness =
      app.add_subcommand("witness", "run a witness recipe and its trace");
  sub_witness->add_option("structure", w_structure, "structure file")
      ->required();
  sub_witness->add_option("--axiom", w_axiom, "axiom id")->required();
  sub_witness->add_option("--inputs", w_inputs, "input element ids");
  sub_witness->add_option("--recipe", w_recipe, "recipe family")
      ->check(CLI::IsMember({"prime", "star"}));
  sub_witness->add_option("--variant", w_variant,
                          "intersection-set reading (a or b)")
      ->check(CLI::IsMember({"a", "b"}));
  add_format(sub_witness);

  // search
  int s_size = 0;
  std::string s_mode = "set", s_flavor = "memf";
  bool s_total = false, s_injective = false, s_random = false;
  std::uint64_t s_budget = 5'000'000, s_samples = 1000, s_seed = 0;
  std::vector<std::string> s_axioms;
  auto* sub_search =
      app.add_subcommand("search", "search small structures for models");
  sub_search->add_option("--size", s_size, "domain size")->required();
  sub_search->add_option("--mode", s_mode, "f mode: set or element")
      ->check(CLI::IsMember({"set", "element"}));
  sub_search->add_flag("--total", s_total, "require f total");
  sub_search->add_flag("--injective", s_injective, "require f injective");
  sub_search->add_option(
      "--axioms", s_axioms,
      "checks, e.g. complements,pairing:memf,ext_sets (repeatable)");
  sub_search->add_option("--flavor", s_flavor, "default flavor for checks")
      ->check(CLI::IsMember({"mem", "mem*", "mem'", "memf"}));
  sub_search->add_option("--budget", s_budget, "exhaustive space cap");
  sub_search->add_flag("--random", s_random, "sample instead of enumerating");
  sub_search->add_option("--samples", s_samples, "random sample count");
  sub_search->add_option("--seed", s_seed, "random seed (default 0)");
  add_format(sub_search);

  // cantor
  int c_max_n = 3;
  auto* sub_cantor = app.add_subcommand(
      "cantor", "confirm no map is onto its power set (n = 1..max-n)");
  sub_cantor->add_option("--max-n", c_max_n, "largest domain size")
      ->required();
  add_format(sub_cantor);

  // translate
  std::string t_path, t_from = "mem", t_to, t_guard;
  auto* sub_translate =
      app.add_subcommand("translate", "recode membership atoms in a formula");
  sub_translate->add_option("formula", t_path, "formula file")->required();
  sub_translate->add_option("--from", t_from, "source relation");
  sub_translate->add_option("--to", t_to, "target relation")->required();
  sub_translate->add_option("--guard", t_guard,
                            "relativize quantifiers to this set name");
  add_format(sub_translate);

  // encode
  std::string e_notation;
  std::uint64_t e_code = 0;
  bool e_has_code = false;
  auto* sub_encode = app.add_subcommand(
      "encode", "convert between brace notation and codes");
  sub_encode->add_option("set", e_notation, "set in brace notation");
  sub_encode->add_option("--code", e_code, "decode this code instead");
  add_format(sub_encode);

  // transposition
  int tr_stage = 3;
  auto* sub_transposition = app.add_subcommand(
      "transposition", "swap the two smallest codes and audit it");
  sub_transposition->add_option("--stage", tr_stage, "stage (2..4)");
  add_format(sub_transposition);

  std::vector<const char*> argv;
  argv.push_back("strata");
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  Options opt;
  opt.lines = format == "lines";

  try {
    if (*sub_stratify) return run_stratify(formula_path, opt, out);
    if (*sub_eval)
      return run_eval(eval_structure, eval_formula, eval_assigns, opt, out);
    if (*sub_axioms) return run_axioms(ax_structure, ax_flavor, ax_ext, opt, out);
    if (*sub_witness)
      return run_witness(w_structure, w_axiom, w_inputs, w_recipe, w_variant,
                         opt, out);
    if (*sub_search)
      return run_search(s_size, s_mode, s_total, s_injective, s_axioms,
                        s_flavor, s_budget, s_random, s_samples, s_seed, out);
    if (*sub_cantor) return run_cantor(c_max_n, out);
    if (*sub_translate)
      return run_translate(t_path, t_from, t_to, t_guard, opt, out);
    if (*sub_encode) {
      e_has_code = sub_encode->count("--code") > 0;
      return run_encode(e_notation, e_has_code, e_code, opt, out);
    }
    if (*sub_transposition) return run_transposition(tr_stage, opt, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  err << "error: no subcommand\n";
  return 2;
}

}  // namespace strata::cli
