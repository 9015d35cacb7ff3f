// Command-line front end for the ellwp shared library.  All engine work goes
// through the C interface in ellwp/ellwp.h; this file only parses flags,
// shuttles strings, and formats output.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "ellwp/ellwp.h"

namespace {

using nlohmann::json;

constexpr int kExitVerdict = 0;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

struct StringFree {
  void operator()(char* p) const { ellwp_string_free(p); }
};
using CStr = std::unique_ptr<char, StringFree>;

struct AlphabetFree {
  void operator()(ellwp_alphabet* a) const { ellwp_alphabet_free(a); }
};
using AlphabetHandle = std::unique_ptr<ellwp_alphabet, AlphabetFree>;

struct TermFree {
  void operator()(ellwp_term* t) const { ellwp_term_free(t); }
};
using TermHandle = std::unique_ptr<ellwp_term, TermFree>;

int status_exit(ellwp_status st) {
  std::cerr << "error: " << ellwp_last_error() << "\n";
  switch (st) {
    case ELLWP_ERR_PARSE:
    case ELLWP_ERR_ARG:
      return kExitUsage;
    case ELLWP_ERR_BUDGET:
    case ELLWP_ERR_ITER:
      return kExitBudget;
    default:
      return 1;
  }
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::size_t at = 0;
  while (at <= s.size()) {
    std::size_t comma = s.find(',', at);
    if (comma == std::string::npos) comma = s.size();
    if (comma > at) out.push_back(s.substr(at, comma - at));
    at = comma + 1;
  }
  return out;
}

std::string slurp_stdin() {
  std::ostringstream os;
  os << std::cin.rdbuf();
  return os.str();
}

std::string term_text_or_stdin(const std::string& arg) {
  if (arg != "-") return arg;
  std::string s = slurp_stdin();
  while (!s.empty() && (s.back() == '\n' || s.back() == '\r' || s.back() == ' ')) s.pop_back();
  return s;
}

std::string read_file(const std::string& path) {
  if (path == "-") return slurp_stdin();
  std::FILE* f = std::fopen(path.c_str(), "rb");
  if (!f) throw CLI::ValidationError("cannot open file: " + path);
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, f)) > 0) out.append(buf, n);
  std::fclose(f);
  return out;
}

AlphabetHandle make_alphabet(const std::vector<std::string>& names, ellwp_status& st) {
  std::vector<const char*> ptrs;
  ptrs.reserve(names.size());
  for (const auto& n : names) ptrs.push_back(n.c_str());
  ellwp_alphabet* a = nullptr;
  st = ellwp_alphabet_new(ptrs.data(), static_cast<int>(ptrs.size()), &a);
  return AlphabetHandle(a);
}

void emit(const json& doc, bool as_json, const std::string& human) {
  if (as_json)
    std::cout << doc.dump() << "\n";
  else
    std::cout << human;
}

std::string render_diagram(const json& d) {
  std::ostringstream os;
  os << "  chain:";
  for (const auto& p : d.at("chain")) os << " p" << p.get<int>();
  os << "  (left to right ascending; p0 is the base point)\n";
  for (const auto& [gen, pairs] : d.at("maps").items()) {
    os << "  " << gen << ":";
    if (pairs.empty()) os << " (empty)";
    for (const auto& pr : pairs) os << " p" << pr[0].get<int>() << "->p" << pr[1].get<int>();
    os << "\n";
  }
  os << "  traced endpoints:";
  for (const auto& p : d.at("trace")) os << " p" << p.get<int>();
  os << "\n";
  return os.str();
}

// Shared per-subcommand state.
struct CommonFlags {
  std::string gens = "x";
  bool as_json = false;
  std::uint64_t max_diagrams = 0;
  int jobs = 1;
  bool deterministic = false;
};

void add_common(CLI::App* cmd, CommonFlags& f, bool with_decide_knobs = true) {
  cmd->add_option("--gens", f.gens, "comma-separated generator names");
  cmd->add_flag("--json", f.as_json, "emit one JSON document");
  if (with_decide_knobs) {
    cmd->add_option("--max-diagrams", f.max_diagrams, "diagram budget (0 = default)");
    cmd->add_option("--jobs", f.jobs, "worker threads")->check(CLI::PositiveNumber);
    cmd->add_flag("--deterministic", f.deterministic, "sequential, reproducible search");
  }
}

ellwp_decide_options decide_opts(const CommonFlags& f) {
  return ellwp_decide_options{f.max_diagrams, f.jobs, f.deterministic ? 1 : 0};
}

int run_decide(const CommonFlags& f, const std::string& term_arg) {
  ellwp_status st;
  AlphabetHandle alpha = make_alphabet(split_commas(f.gens), st);
  if (!alpha) return status_exit(st);
  std::string text = term_text_or_stdin(term_arg);
  ellwp_term* traw = nullptr;
  if ((st = ellwp_term_parse(alpha.get(), text.c_str(), &traw)) != ELLWP_OK)
    return status_exit(st);
  TermHandle term(traw);

  ellwp_decide_options opts = decide_opts(f);
  int verdict = 0;
  char* witness_raw = nullptr;
  std::uint64_t diagrams = 0;
  st = ellwp_decide(term.get(), &opts, &verdict, &witness_raw, &diagrams);
  if (st != ELLWP_OK) return status_exit(st);
  CStr witness(witness_raw);

  char* nf_raw = nullptr;
  if ((st = ellwp_term_normal_form(term.get(), &nf_raw)) != ELLWP_OK) return status_exit(st);
  CStr nf(nf_raw);

  json doc;
  doc["command"] = "decide";
  doc["verdict"] = verdict ? "equals-identity" : "not-identity";
  doc["normal_form"] = nf.get();
  doc["diagrams"] = diagrams;
  doc["witness"] = witness ? json::parse(witness.get()) : json(nullptr);

  std::ostringstream human;
  human << (verdict ? "EqualsIdentity" : "NotIdentity") << "\n";
  human << "normal form: " << nf.get() << "\n";
  human << "diagrams explored: " << diagrams << "\n";
  if (witness) human << "witness diagram:\n" << render_diagram(doc["witness"]);
  emit(doc, f.as_json, human.str());
  return kExitVerdict;
}

int run_sign(const CommonFlags& f, const std::string& term_arg) {
  ellwp_status st;
  AlphabetHandle alpha = make_alphabet(split_commas(f.gens), st);
  if (!alpha) return status_exit(st);
  std::string text = term_text_or_stdin(term_arg);
  ellwp_term* traw = nullptr;
  if ((st = ellwp_term_parse(alpha.get(), text.c_str(), &traw)) != ELLWP_OK)
    return status_exit(st);
  TermHandle term(traw);

  ellwp_decide_options opts = decide_opts(f);
  int sign = 0;
  if ((st = ellwp_sign(term.get(), &opts, &sign)) != ELLWP_OK) return status_exit(st);
  const char* name = sign == 0   ? "zero"
                     : sign == 1 ? "positive"
                     : sign == -1 ? "negative"
                                  : "incomparable";
  json doc;
  doc["command"] = "sign";
  doc["sign"] = name;
  emit(doc, f.as_json, std::string(name) + "\n");
  return kExitVerdict;
}

int run_witness(const CommonFlags& f, const std::string& term_arg, std::uint64_t budget,
                std::uint64_t seed) {
  ellwp_status st;
  AlphabetHandle alpha = make_alphabet(split_commas(f.gens), st);
  if (!alpha) return status_exit(st);
  std::string text = term_text_or_stdin(term_arg);
  ellwp_term* traw = nullptr;
  if ((st = ellwp_term_parse(alpha.get(), text.c_str(), &traw)) != ELLWP_OK)
    return status_exit(st);
  TermHandle term(traw);

  int found = 0;
  char* w_raw = nullptr;
  if ((st = ellwp_find_witness(term.get(), budget, seed, &found, &w_raw)) != ELLWP_OK)
    return status_exit(st);
  CStr w(w_raw);

  json doc;
  doc["command"] = "witness";
  doc["found"] = found != 0;
  doc["budget"] = budget;
  doc["seed"] = seed;
  doc["witness"] = w ? json::parse(w.get()) : json(nullptr);

  std::ostringstream human;
  if (found) {
    human << "witness found: moves " << doc["witness"]["point"].get<std::string>() << " to "
          << doc["witness"]["image"].get<std::string>() << "\n";
    human << "assignment:\n";
    for (const auto& [gen, bps] : doc["witness"]["assignment"].items())
      human << "  " << gen << " = " << bps.dump() << "\n";
  } else {
    human << "no witness in " << budget << " samples (proves nothing)\n";
  }
  emit(doc, f.as_json, human.str());
  return kExitVerdict;
}

int run_wreath(const CommonFlags& f, const std::string& term_arg, const std::string& tower,
               const std::string& g_oracle, const std::string& shift_gen,
               const std::string& inner_gen) {
  std::vector<std::string> names = split_commas(f.gens);
  if (tower == "zlexz") names.push_back(inner_gen);
  names.push_back(shift_gen);
  ellwp_status st;
  AlphabetHandle alpha = make_alphabet(names, st);
  if (!alpha) return status_exit(st);
  std::string text = term_text_or_stdin(term_arg);
  ellwp_term* traw = nullptr;
  if ((st = ellwp_term_parse(alpha.get(), text.c_str(), &traw)) != ELLWP_OK)
    return status_exit(st);
  TermHandle term(traw);

  int verdict = 0;
  if (tower == "z")
    st = ellwp_wreath_decide(term.get(), shift_gen.c_str(), g_oracle.c_str(), f.max_diagrams,
                             &verdict);
  else
    st = ellwp_lex_wreath_decide(term.get(), inner_gen.c_str(), shift_gen.c_str(),
                                 g_oracle.c_str(), f.max_diagrams, &verdict);
  if (st != ELLWP_OK) return status_exit(st);

  json doc;
  doc["command"] = "wreath-decide";
  doc["tower"] = tower;
  doc["oracle"] = g_oracle;
  doc["verdict"] = verdict ? "equals-identity" : "not-identity";
  emit(doc, f.as_json, std::string(verdict ? "EqualsIdentity" : "NotIdentity") + "\n");
  return kExitVerdict;
}

int run_sum_factor(const CommonFlags& f, const std::string& term_arg,
                   const std::string& partition) {
  ellwp_status st;
  AlphabetHandle alpha = make_alphabet(split_commas(f.gens), st);
  if (!alpha) return status_exit(st);
  std::string text = term_text_or_stdin(term_arg);
  ellwp_term* traw = nullptr;
  if ((st = ellwp_term_parse(alpha.get(), text.c_str(), &traw)) != ELLWP_OK)
    return status_exit(st);
  TermHandle term(traw);

  char* factors_raw = nullptr;
  if ((st = ellwp_sum_factor(term.get(), partition.c_str(), &factors_raw)) != ELLWP_OK)
    return status_exit(st);
  CStr factors(factors_raw);

  json doc;
  doc["command"] = "sum-factor";
  doc["factors"] = json::parse(factors.get());
  std::ostringstream human;
  for (const auto& [comp, t] : doc["factors"].items())
    human << comp << ": " << t.get<std::string>() << "\n";
  emit(doc, f.as_json, human.str());
  return kExitVerdict;
}

int run_solve(const CommonFlags& f, const std::string& term_arg, const std::string& pres_path,
              std::uint64_t budget, bool semidecide_only) {
  std::string pres = read_file(pres_path);
  std::string text = term_text_or_stdin(term_arg);
  char* cert_raw = nullptr;
  ellwp_status st =
      semidecide_only
          ? ellwp_ideal_semidecide(pres.c_str(), text.c_str(), budget, f.max_diagrams, f.jobs,
                                   &cert_raw)
          : ellwp_solve(pres.c_str(), text.c_str(), budget, f.max_diagrams, f.jobs, &cert_raw);
  if (st != ELLWP_OK) return status_exit(st);
  CStr cert(cert_raw);

  json doc;
  doc["command"] = "solve";
  doc["certificate"] = json::parse(cert.get());
  const std::string kind = doc["certificate"]["kind"].get<std::string>();

  std::ostringstream human;
  human << kind << "\n";
  if (kind == "proved") {
    human << "dominator: " << doc["certificate"]["dominator"].get<std::string>() << "\n";
  } else if (kind == "refuted") {
    human << "target: " << doc["certificate"]["target"].get<std::string>() << "\n";
    human << "witness: " << doc["certificate"]["witness"].get<std::string>() << "\n";
  }
  human << "budget spent: " << doc["certificate"]["budget_spent"].get<std::uint64_t>() << "\n";
  emit(doc, f.as_json, human.str());
  return kind == "unknown" ? kExitBudget : kExitVerdict;
}

int run_gdagger(const CommonFlags& f, const std::string& pairs_path, int m, int k) {
  std::string pairs = read_file(pairs_path);
  std::vector<std::string> gens = split_commas(f.gens);
  std::vector<const char*> ptrs;
  for (const auto& g : gens) ptrs.push_back(g.c_str());
  char* pres_raw = nullptr;
  ellwp_status st = ellwp_gdagger(ptrs.data(), static_cast<int>(ptrs.size()), pairs.c_str(), m,
                                  k, &pres_raw);
  if (st != ELLWP_OK) return status_exit(st);
  CStr pres(pres_raw);

  json doc;
  doc["command"] = "gdagger";
  doc["presentation"] = json::parse(pres.get());
  std::ostringstream human;
  human << "generators:";
  for (const auto& g : doc["presentation"]["generators"]) human << " " << g.get<std::string>();
  human << "\nrelators:\n";
  for (const auto& r : doc["presentation"]["relators"])
    human << "  " << r.get<std::string>() << "\n";
  emit(doc, f.as_json, human.str());
  return kExitVerdict;
}

int run_godel(const CommonFlags& f, const std::string& decode_index,
              const std::string& encode_term, const std::string& pad) {
  ellwp_status st;
  AlphabetHandle alpha = make_alphabet(split_commas(f.gens), st);
  if (!alpha) return status_exit(st);

  json doc;
  doc["command"] = "godel";
  std::ostringstream human;
  if (!decode_index.empty()) {
    char* text_raw = nullptr;
    if ((st = ellwp_godel_decode(alpha.get(), decode_index.c_str(), &text_raw)) != ELLWP_OK)
      return status_exit(st);
    CStr text(text_raw);
    doc["mode"] = "decode";
    doc["index"] = decode_index;
    doc["term"] = text.get();
    human << text.get() << "\n";
  } else {
    std::string text = term_text_or_stdin(encode_term);
    char* index_raw = nullptr;
    if ((st = ellwp_godel_encode(alpha.get(), text.c_str(), pad.c_str(), &index_raw)) != ELLWP_OK)
      return status_exit(st);
    CStr index(index_raw);
    doc["mode"] = "encode";
    doc["pad"] = pad;
    doc["index"] = index.get();
    human << index.get() << "\n";
  }
  emit(doc, f.as_json, human.str());
  return kExitVerdict;
}

int run_conjugator(bool as_json, const std::string& f_json, const std::string& g_json,
                   const std::string& alpha, const std::string& beta, const std::string& h0,
                   const std::string& apply_x, bool inverse, std::uint64_t iter_budget) {
  ellwp_conjugator* c_raw = nullptr;
  ellwp_status st;
  if (!alpha.empty() || !beta.empty()) {
    if (alpha.empty() || beta.empty()) {
      std::cerr << "error: --alpha and --beta go together\n";
      return kExitUsage;
    }
    st = ellwp_conjugator_new_anchored(f_json.c_str(), g_json.c_str(), alpha.c_str(),
                                       beta.c_str(), h0.empty() ? nullptr : h0.c_str(), &c_raw);
  } else {
    st = ellwp_conjugator_new(f_json.c_str(), g_json.c_str(), &c_raw);
  }
  if (st != ELLWP_OK) return status_exit(st);
  std::unique_ptr<ellwp_conjugator, decltype(&ellwp_conjugator_free)> conj(
      c_raw, &ellwp_conjugator_free);

  char* y_raw = nullptr;
  st = ellwp_conjugator_apply(conj.get(), apply_x.c_str(), inverse ? -1 : 1, iter_budget, &y_raw);
  if (st != ELLWP_OK) return status_exit(st);
  CStr y(y_raw);

  json doc;
  doc["command"] = "conjugator";
  doc["direction"] = inverse ? "inverse" : "forward";
  doc["x"] = apply_x;
  doc["y"] = y.get();
  emit(doc, as_json, std::string(y.get()) + "\n");
  return kExitVerdict;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"word problems in free and presented lattice-ordered groups"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(ellwp_version()));

  CommonFlags decide_f;
  std::string decide_term;
  auto* decide_cmd = app.add_subcommand("decide", "is the term the identity?");
  add_common(decide_cmd, decide_f);
  decide_cmd->add_option("term", decide_term, "term text, or - for stdin")->required();

  CommonFlags sign_f;
  std::string sign_term;
  auto* sign_cmd = app.add_subcommand("sign", "position against the identity");
  add_common(sign_cmd, sign_f);
  sign_cmd->add_option("term", sign_term, "term text, or - for stdin")->required();

  CommonFlags wit_f;
  std::string wit_term;
  std::uint64_t wit_budget = 1000, wit_seed = 0;
  auto* wit_cmd = app.add_subcommand("witness", "random order-permutation witness search");
  add_common(wit_cmd, wit_f, false);
  wit_cmd->add_option("--budget", wit_budget, "assignments to sample");
  wit_cmd->add_option("--seed", wit_seed, "random seed");
  wit_cmd->add_option("term", wit_term, "term text, or - for stdin")->required();

  CommonFlags wr_f;
  std::string wr_term, wr_tower = "z", wr_oracle = "free", wr_shift = "c", wr_inner = "a";
  auto* wr_cmd = app.add_subcommand("wreath-decide", "decide in a wreath product");
  wr_cmd->add_option("--g-gens", wr_f.gens, "coefficient group generators");
  wr_cmd->add_flag("--json", wr_f.as_json, "emit one JSON document");
  wr_cmd->add_option("--max-diagrams", wr_f.max_diagrams, "diagram budget for the free oracle");
  wr_cmd->add_option("--tower", wr_tower, "z or zlexz")
      ->check(CLI::IsMember({"z", "zlexz"}));
  wr_cmd->add_option("--g-oracle", wr_oracle, "free or z2")
      ->check(CLI::IsMember({"free", "z2"}));
  wr_cmd->add_option("--shift-gen", wr_shift, "outer shift generator name");
  wr_cmd->add_option("--inner-gen", wr_inner, "inner shift generator name (zlexz)");
  wr_cmd->add_option("term", wr_term, "term text, or - for stdin")->required();

  CommonFlags sf_f;
  std::string sf_term, sf_partition;
  auto* sf_cmd = app.add_subcommand("sum-factor", "factor over a cardinal sum");
  add_common(sf_cmd, sf_f, false);
  sf_cmd->add_option("--partition", sf_partition, "gen=component,... for every generator")
      ->required();
  sf_cmd->add_option("term", sf_term, "term text, or - for stdin")->required();

  CommonFlags solve_f;
  std::string solve_term, solve_pres;
  std::uint64_t solve_budget = 10000;
  bool solve_semi = false;
  auto* solve_cmd = app.add_subcommand("solve", "prove or refute w = 1 in a presented group");
  solve_cmd->add_flag("--json", solve_f.as_json, "emit one JSON document");
  solve_cmd->add_option("--presentation", solve_pres, "presentation JSON file, or -")->required();
  solve_cmd->add_option("--budget", solve_budget, "dovetail steps");
  solve_cmd->add_option("--max-diagrams", solve_f.max_diagrams, "per-candidate diagram cap");
  solve_cmd->add_option("--jobs", solve_f.jobs, "worker threads")->check(CLI::PositiveNumber);
  solve_cmd->add_flag("--semidecide-only", solve_semi, "run only the proving half");
  solve_cmd->add_option("term", solve_term, "term text, or - for stdin")->required();

  CommonFlags gd_f;
  gd_f.gens = "g0";
  std::string gd_pairs;
  int gd_m = 1, gd_k = 1;
  auto* gd_cmd = app.add_subcommand("gdagger", "emit the conjugator relation schema");
  gd_cmd->add_option("--g-gens", gd_f.gens, "coefficient group generators");
  gd_cmd->add_flag("--json", gd_f.as_json, "emit one JSON document");
  gd_cmd->add_option("--pairs", gd_pairs, "JSON file of [u,v] term pairs, or -")->required();
  gd_cmd->add_option("--m", gd_m, "conjugator count m_max")->required();
  gd_cmd->add_option("--k", gd_k, "exponent bound k_max")->required();

  CommonFlags godel_f;
  std::string godel_decode, godel_encode, godel_pad = "0";
  auto* godel_cmd = app.add_subcommand("godel", "meet-string numbering");
  add_common(godel_cmd, godel_f, false);
  auto* dec_opt = godel_cmd->add_option("--decode", godel_decode, "index to decode");
  auto* enc_opt =
      godel_cmd->add_option("--encode", godel_encode, "meet-string term text, or - for stdin");
  godel_cmd->add_option("--pad", godel_pad, "padding component for encode");
  dec_opt->excludes(enc_opt);

  bool conj_json = false, conj_inverse = false;
  std::string conj_f, conj_g, conj_alpha, conj_beta, conj_h0, conj_x;
  std::uint64_t conj_iters = 0;
  auto* conj_cmd = app.add_subcommand("conjugator", "apply the bump-matching conjugator");
  conj_cmd->add_flag("--json", conj_json, "emit one JSON document");
  conj_cmd->add_option("--f", conj_f, "breakpoints JSON of f")->required();
  conj_cmd->add_option("--g", conj_g, "breakpoints JSON of g")->required();
  conj_cmd->add_option("--alpha", conj_alpha, "anchor in supp(f) (single-bump form)");
  conj_cmd->add_option("--beta", conj_beta, "anchor in supp(g) (single-bump form)");
  conj_cmd->add_option("--h0", conj_h0, "seed segment breakpoints JSON");
  conj_cmd->add_option("--apply", conj_x, "rational point to map")->required();
  conj_cmd->add_flag("--inverse", conj_inverse, "apply h^-1 instead of h");
  conj_cmd->add_option("--iter-budget", conj_iters, "orbit step budget (0 = default)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (decide_cmd->parsed()) return run_decide(decide_f, decide_term);
    if (sign_cmd->parsed()) return run_sign(sign_f, sign_term);
    if (wit_cmd->parsed()) return run_witness(wit_f, wit_term, wit_budget, wit_seed);
    if (wr_cmd->parsed())
      return run_wreath(wr_f, wr_term, wr_tower, wr_oracle, wr_shift, wr_inner);
    if (sf_cmd->parsed()) return run_sum_factor(sf_f, sf_term, sf_partition);
    if (solve_cmd->parsed())
      return run_solve(solve_f, solve_term, solve_pres, solve_budget, solve_semi);
    if (gd_cmd->parsed()) return run_gdagger(gd_f, gd_pairs, gd_m, gd_k);
    if (godel_cmd->parsed()) {
      if (godel_decode.empty() && godel_encode.empty()) {
        std::cerr << "error: godel needs --decode or --encode\n";
        return kExitUsage;
      }
      return run_godel(godel_f, godel_decode, godel_encode, godel_pad);
    }
    if (conj_cmd->parsed())
      return run_conjugator(conj_json, conj_f, conj_g, conj_alpha, conj_beta, conj_h0, conj_x,
                            conj_inverse, conj_iters);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitUsage;
}
