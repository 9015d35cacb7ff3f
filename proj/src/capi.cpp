#include "ellwp/ellwp.h"

#include <cctype>
#include <cstdlib>
#include <cstring>
#include <memory>
#include <string>

#include "ellwp/errors.hpp"
#include "ellwp/freedec.hpp"
#include "ellwp/json_io.hpp"
#include "ellwp/perm.hpp"
#include "ellwp/present.hpp"
#include "ellwp/term.hpp"
#include "ellwp/wreath.hpp"

using namespace ellwp;

struct ellwp_alphabet {
  AlphabetPtr alpha;
};
struct ellwp_term {
  Term term;
};
struct ellwp_plmap {
  PLMap map;
};
struct ellwp_conjugator {
  LazyConjugator conj;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <class F>
ellwp_status guarded(F&& f) {
  try {
    return f();
  } catch (const ParseError& e) {
    g_last_error = e.what();
    return ELLWP_ERR_PARSE;
  } catch (const ResourceExhausted& e) {
    g_last_error = e.what();
    return ELLWP_ERR_BUDGET;
  } catch (const IterationLimit& e) {
    g_last_error = e.what();
    return ELLWP_ERR_ITER;
  } catch (const InvalidAssignment& e) {
    g_last_error = e.what();
    return ELLWP_ERR_ARG;
  } catch (const Error& e) {
    g_last_error = e.what();
    return ELLWP_ERR_ARG;
  } catch (const nlohmann::json::exception& e) {
    g_last_error = e.what();
    return ELLWP_ERR_PARSE;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return ELLWP_ERR_FAIL;
  }
}

ellwp_status arg_error(const std::string& msg) {
  g_last_error = msg;
  return ELLWP_ERR_ARG;
}

DecideOptions to_options(const ellwp_decide_options* opts) {
  DecideOptions d;
  if (opts) {
    if (opts->max_diagrams != 0) d.max_diagrams = opts->max_diagrams;
    d.jobs = opts->jobs;
    d.deterministic = opts->deterministic != 0;
  }
  return d;
}

std::unique_ptr<GroupOracle> make_oracle(const std::string& kind, uint64_t max_diagrams) {
  if (kind == "z2") return std::make_unique<Z2Oracle>();
  if (kind == "free") {
    DecideOptions d;
    if (max_diagrams != 0) d.max_diagrams = max_diagrams;
    return std::make_unique<FreeOracle>(d);
  }
  throw Error("unknown coefficient oracle '" + kind + "' (expected free or z2)");
}

Integer parse_natural(const char* text) {
  if (!text || !*text) throw ParseError("empty integer");
  for (const char* p = text; *p; ++p)
    if (!std::isdigit(static_cast<unsigned char>(*p)))
      throw ParseError(std::string("bad natural number '") + text + "'");
  return Integer(text);
}

}  // namespace

extern "C" {

const char* ellwp_version(void) { return "1.0.0"; }

const char* ellwp_last_error(void) { return g_last_error.c_str(); }

void ellwp_string_free(char* s) { std::free(s); }

/* --- alphabets and terms ------------------------------------------------ */

ellwp_status ellwp_alphabet_new(const char* const* names, int count, ellwp_alphabet** out) {
  if (!out || (count > 0 && !names)) return arg_error("alphabet_new: null argument");
  return guarded([&] {
    std::vector<std::string> v;
    v.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
      if (!names[i]) throw Error("alphabet_new: null name");
      v.emplace_back(names[i]);
    }
    *out = new ellwp_alphabet{Alphabet::make(std::move(v))};
    return ELLWP_OK;
  });
}

void ellwp_alphabet_free(ellwp_alphabet* a) { delete a; }

int ellwp_alphabet_size(const ellwp_alphabet* a) { return a ? a->alpha->size() : 0; }

const char* ellwp_alphabet_name(const ellwp_alphabet* a, int i) {
  if (!a || i < 0 || i >= a->alpha->size()) return nullptr;
  return a->alpha->name(i).c_str();
}

ellwp_status ellwp_term_parse(const ellwp_alphabet* a, const char* text, ellwp_term** out) {
  if (!a || !text || !out) return arg_error("term_parse: null argument");
  return guarded([&] {
    *out = new ellwp_term{parse_term(text, a->alpha)};
    return ELLWP_OK;
  });
}

void ellwp_term_free(ellwp_term* t) { delete t; }

ellwp_status ellwp_term_print(const ellwp_term* t, char** out) {
  if (!t || !out) return arg_error("term_print: null argument");
  return guarded([&] {
    *out = dup_string(print(t->term));
    return ELLWP_OK;
  });
}

ellwp_status ellwp_term_normal_form(const ellwp_term* t, char** out) {
  if (!t || !out) return arg_error("term_normal_form: null argument");
  return guarded([&] {
    *out = dup_string(print(normalize(t->term), *t->term.alphabet()));
    return ELLWP_OK;
  });
}

/* --- free lattice-group decision ---------------------------------------- */

ellwp_status ellwp_decide(const ellwp_term* t, const ellwp_decide_options* opts,
                          int* verdict, char** witness_json, uint64_t* diagrams) {
  if (!t || !verdict) return arg_error("decide: null argument");
  return guarded([&] {
    DecideResult r = decide(t->term, to_options(opts));
    *verdict = r.verdict.kind == VerdictKind::EqualsIdentity ? 1 : 0;
    if (witness_json) {
      *witness_json = r.verdict.witness
                          ? dup_string(diagram_json(*r.verdict.witness, *t->term.alphabet()).dump())
                          : nullptr;
    }
    if (diagrams) *diagrams = r.diagram_count;
    return ELLWP_OK;
  });
}

ellwp_status ellwp_sign(const ellwp_term* t, const ellwp_decide_options* opts, int* sign) {
  if (!t || !sign) return arg_error("sign: null argument");
  return guarded([&] {
    switch (sign_of(t->term, to_options(opts))) {
      case Sign::Zero: *sign = 0; break;
      case Sign::Positive: *sign = 1; break;
      case Sign::Negative: *sign = -1; break;
      case Sign::Incomparable: *sign = 2; break;
    }
    return ELLWP_OK;
  });
}

ellwp_status ellwp_find_witness(const ellwp_term* t, uint64_t budget, uint64_t seed,
                                int* found, char** witness_json) {
  if (!t || !found || !witness_json) return arg_error("find_witness: null argument");
  return guarded([&] {
    auto w = find_witness(t->term, budget, seed);
    if (!w) {
      *found = 0;
      *witness_json = nullptr;
      return ELLWP_OK;
    }
    Json obj = Json::object();
    obj["assignment"] = assignment_json(w->assignment);
    obj["point"] = rational_string(w->point);
    obj["image"] = rational_string(w->image);
    *found = 1;
    *witness_json = dup_string(obj.dump());
    return ELLWP_OK;
  });
}

/* --- wreath products ----------------------------------------------------- */

ellwp_status ellwp_wreath_decide(const ellwp_term* t, const char* shift_gen,
                                 const char* g_oracle, uint64_t max_diagrams, int* verdict) {
  if (!t || !shift_gen || !g_oracle || !verdict) return arg_error("wreath_decide: null argument");
  return guarded([&] {
    auto oracle = make_oracle(g_oracle, max_diagrams);
    Verdict v = w_decide(t->term, shift_gen, *oracle);
    *verdict = v.kind == VerdictKind::EqualsIdentity ? 1 : 0;
    return ELLWP_OK;
  });
}

ellwp_status ellwp_lex_wreath_decide(const ellwp_term* t, const char* inner_shift_gen,
                                     const char* outer_shift_gen, const char* g_oracle,
                                     uint64_t max_diagrams, int* verdict) {
  if (!t || !inner_shift_gen || !outer_shift_gen || !g_oracle || !verdict)
    return arg_error("lex_wreath_decide: null argument");
  return guarded([&] {
    auto oracle = make_oracle(g_oracle, max_diagrams);
    Verdict v = lex_w_decide(t->term, inner_shift_gen, outer_shift_gen, *oracle);
    *verdict = v.kind == VerdictKind::EqualsIdentity ? 1 : 0;
    return ELLWP_OK;
  });
}

ellwp_status ellwp_sum_factor(const ellwp_term* t, const char* partition, char** factors_json) {
  if (!t || !partition || !factors_json) return arg_error("sum_factor: null argument");
  return guarded([&] {
    std::map<std::string, std::string> part;
    std::string text(partition);
    std::size_t at = 0;
    while (at < text.size()) {
      std::size_t comma = text.find(',', at);
      if (comma == std::string::npos) comma = text.size();
      std::string item = text.substr(at, comma - at);
      std::size_t eq = item.find('=');
      if (eq == std::string::npos || eq == 0 || eq + 1 == item.size())
        throw ParseError("partition items look like gen=component: '" + item + "'");
      part[item.substr(0, eq)] = item.substr(eq + 1);
      at = comma + 1;
    }
    Json obj = Json::object();
    for (const auto& [comp, factor] : sum_factor(t->term, part)) obj[comp] = print(factor);
    *factors_json = dup_string(obj.dump());
    return ELLWP_OK;
  });
}

/* --- finitely presented quotients ---------------------------------------- */

namespace {

ellwp_status run_presented(const char* presentation_json, const char* term_text,
                           uint64_t budget, uint64_t max_diagrams, int jobs,
                           char** certificate_json, bool dovetail) {
  if (!presentation_json || !term_text || !certificate_json)
    return arg_error("solve: null argument");
  return guarded([&] {
    Presentation p = presentation_from_json(Json::parse(presentation_json));
    Term w = parse_term(term_text, p.alphabet);
    Certificate c;
    if (dovetail) {
      SolveOptions opts;
      if (budget != 0) opts.budget = budget;
      if (max_diagrams != 0) opts.max_diagrams = max_diagrams;
      if (jobs > 0) opts.jobs = jobs;
      c = solve(p, w, opts);
    } else {
      SemidecideOptions opts;
      if (budget != 0) opts.budget = budget;
      if (max_diagrams != 0) opts.max_diagrams = max_diagrams;
      if (jobs > 0) opts.jobs = jobs;
      c = ideal_semidecide(p, w, opts);
    }
    *certificate_json = dup_string(ellwp::certificate_json(c).dump());
    return ELLWP_OK;
  });
}

}  // namespace

ellwp_status ellwp_ideal_semidecide(const char* presentation_json, const char* term_text,
                                    uint64_t budget, uint64_t max_diagrams, int jobs,
                                    char** certificate_json) {
  return run_presented(presentation_json, term_text, budget, max_diagrams, jobs,
                       certificate_json, false);
}

ellwp_status ellwp_solve(const char* presentation_json, const char* term_text,
                         uint64_t budget, uint64_t max_diagrams, int jobs,
                         char** certificate_json) {
  return run_presented(presentation_json, term_text, budget, max_diagrams, jobs,
                       certificate_json, true);
}

ellwp_status ellwp_gdagger(const char* const* g_gens, int gen_count, const char* pairs_json,
                           int m_max, int k_max, char** presentation_json) {
  if ((gen_count > 0 && !g_gens) || !pairs_json || !presentation_json)
    return arg_error("gdagger: null argument");
  return guarded([&] {
    std::vector<std::string> gens;
    for (int i = 0; i < gen_count; ++i) {
      if (!g_gens[i]) throw Error("gdagger: null generator name");
      gens.emplace_back(g_gens[i]);
    }
    AlphabetPtr g_alpha = Alphabet::make(gens);
    auto pairs = pairs_from_json(Json::parse(pairs_json), g_alpha);
    Presentation p = gdagger_schema(gens, pairs, m_max, k_max);
    *presentation_json = dup_string(ellwp::presentation_json(p).dump());
    return ELLWP_OK;
  });
}

/* --- meet-string numbering ------------------------------------------------ */

ellwp_status ellwp_godel_decode(const ellwp_alphabet* a, const char* index,
                                char** meet_string_text) {
  if (!a || !index || !meet_string_text) return arg_error("godel_decode: null argument");
  return guarded([&] {
    MeetString s = pseudo_godel(parse_natural(index), a->alpha);
    *meet_string_text = dup_string(print(meet_string_term(s, a->alpha)));
    return ELLWP_OK;
  });
}

ellwp_status ellwp_godel_encode(const ellwp_alphabet* a, const char* meet_string_text,
                                const char* pad, char** index) {
  if (!a || !meet_string_text || !index) return arg_error("godel_encode: null argument");
  return guarded([&] {
    MeetString s = meet_string_parse(meet_string_text, a->alpha);
    Integer k = pad ? parse_natural(pad) : Integer(0);
    *index = dup_string(godel_index_padded(s, a->alpha, k).str());
    return ELLWP_OK;
  });
}

/* --- PL maps and conjugators ---------------------------------------------- */

ellwp_status ellwp_plmap_parse(const char* breakpoints_json, ellwp_plmap** out) {
  if (!breakpoints_json || !out) return arg_error("plmap_parse: null argument");
  return guarded([&] {
    *out = new ellwp_plmap{plmap_from_json(Json::parse(breakpoints_json))};
    return ELLWP_OK;
  });
}

void ellwp_plmap_free(ellwp_plmap* m) { delete m; }

ellwp_status ellwp_plmap_print(const ellwp_plmap* m, char** breakpoints_json) {
  if (!m || !breakpoints_json) return arg_error("plmap_print: null argument");
  return guarded([&] {
    *breakpoints_json = dup_string(plmap_json(m->map).dump());
    return ELLWP_OK;
  });
}

ellwp_status ellwp_plmap_apply(const ellwp_plmap* m, const char* x, char** y) {
  if (!m || !x || !y) return arg_error("plmap_apply: null argument");
  return guarded([&] {
    *y = dup_string(rational_string(m->map(parse_rational(x))));
    return ELLWP_OK;
  });
}

ellwp_status ellwp_term_eval_plmap(const ellwp_term* t, const char* assignment_json,
                                   char** map_json) {
  if (!t || !assignment_json || !map_json) return arg_error("term_eval_plmap: null argument");
  return guarded([&] {
    PLAssignment a = assignment_from_json(Json::parse(assignment_json));
    *map_json = dup_string(plmap_json(eval_map(t->term, a)).dump());
    return ELLWP_OK;
  });
}

ellwp_status ellwp_conjugator_new(const char* f_json, const char* g_json,
                                  ellwp_conjugator** out) {
  if (!f_json || !g_json || !out) return arg_error("conjugator_new: null argument");
  return guarded([&] {
    PLMap f = plmap_from_json(Json::parse(f_json));
    PLMap g = plmap_from_json(Json::parse(g_json));
    *out = new ellwp_conjugator{LazyConjugator::matched(f, g)};
    return ELLWP_OK;
  });
}

ellwp_status ellwp_conjugator_new_anchored(const char* f_json, const char* g_json,
                                           const char* alpha, const char* beta,
                                           const char* h0_json, ellwp_conjugator** out) {
  if (!f_json || !g_json || !alpha || !beta || !out)
    return arg_error("conjugator_new_anchored: null argument");
  return guarded([&] {
    PLMap f = plmap_from_json(Json::parse(f_json));
    PLMap g = plmap_from_json(Json::parse(g_json));
    std::optional<std::vector<std::pair<Rational, Rational>>> h0;
    if (h0_json) {
      std::vector<std::pair<Rational, Rational>> bps;
      for (const auto& e : Json::parse(h0_json))
        bps.emplace_back(parse_rational(e.at(0).get<std::string>()),
                         parse_rational(e.at(1).get<std::string>()));
      h0 = std::move(bps);
    }
    *out = new ellwp_conjugator{
        LazyConjugator::make(f, g, parse_rational(alpha), parse_rational(beta), std::move(h0))};
    return ELLWP_OK;
  });
}

void ellwp_conjugator_free(ellwp_conjugator* c) { delete c; }

ellwp_status ellwp_conjugator_apply(const ellwp_conjugator* c, const char* x, int direction,
                                    uint64_t iter_budget, char** y) {
  if (!c || !x || !y) return arg_error("conjugator_apply: null argument");
  return guarded([&] {
    Rational q = parse_rational(x);
    uint64_t budget = iter_budget == 0 ? 1'000'000 : iter_budget;
    Rational r = direction >= 0 ? c->conj.apply(q, budget) : c->conj.apply_inverse(q, budget);
    *y = dup_string(rational_string(r));
    return ELLWP_OK;
  });
}

}  // extern "C"
