// Acceptance gate: one line per criterion, exit code = number of failures.
#include <chrono>
#include <cstdint>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ellwp/freedec.hpp"
#include "ellwp/perm.hpp"
#include "ellwp/present.hpp"
#include "ellwp/term.hpp"
#include "ellwp/wreath.hpp"
#include "test_util.hpp"

using namespace ellwp;

namespace {

int g_failures = 0;

void report(int index, const std::string& name, bool pass, const std::string& detail) {
  std::cout << (pass ? "[PASS] " : "[FAIL] ") << index << ". " << name;
  if (!detail.empty()) std::cout << " -- " << detail;
  std::cout << std::endl;
  if (!pass) ++g_failures;
}

template <class F>
void criterion(int index, const std::string& name, F&& body) {
  std::ostringstream detail;
  bool pass = false;
  try {
    pass = body(detail);
  } catch (const std::exception& e) {
    detail << "exception: " << e.what();
  }
  report(index, name, pass, detail.str());
}

bool c1_enumerated_oracle(std::ostringstream& detail) {
  auto start = std::chrono::steady_clock::now();
  auto a = Alphabet::make({"x"});
  testutil::TermEnumerator en(a);
  std::size_t total = 0, mismatches = 0;
  for (int n = 1; n <= 7; ++n) {
    for (const Term& t : en.of_size(n)) {
      ++total;
      bool by_eval = eval_z2(t) == Z2Element{};
      bool by_diagrams = decide(t).verdict.kind == VerdictKind::EqualsIdentity;
      if (by_eval != by_diagrams) {
        ++mismatches;
        if (mismatches == 1) detail << "first mismatch: " << print(t) << "; ";
      }
    }
  }
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - start)
                .count();
  detail << total << " terms, " << mismatches << " mismatches, " << ms << "ms";
  return mismatches == 0 && total == 5618 && ms < 300000;
}

bool c2_branch_counts(std::ostringstream& detail) {
  Diagram d0 = Diagram::initial(2);
  auto first = extend(d0, 0, 0, 1);
  int first_strict = 0;
  const Diagram* above = nullptr;
  for (const auto& d : first)
    if (d.chain.size() == 2) {
      ++first_strict;
      if (d.rank(d.image(0, 0, 1)) == 1) above = &d;
    }
  if (!above) {
    detail << "no strictly-above placement for the first letter";
    return false;
  }
  std::int16_t p1 = above->image(0, 0, 1);
  auto second = extend(*above, p1, 1, 1);
  int second_strict = 0;
  for (const auto& d : second)
    if (d.chain.size() == 3) ++second_strict;
  auto repeat = extend(*above, p1, 0, 1);
  bool repeat_forced = repeat.size() == 1 && repeat[0].chain.size() == 3;
  detail << "first strict " << first_strict << ", second strict " << second_strict
         << ", repeat " << repeat.size();
  return first_strict == 2 && second_strict == 3 && repeat_forced;
}

bool c3_identity_suite(std::ostringstream& detail) {
  auto a = Alphabet::make({"x", "y", "z", "t"});
  auto is_id = [&](const std::string& lhs, const std::string& rhs) {
    Term q = Term::product({parse_term(lhs, a), Term::inverse(parse_term(rhs, a))});
    return decide(q).verdict.kind == VerdictKind::EqualsIdentity;
  };
  struct Law {
    const char* lhs;
    const char* rhs;
  };
  const Law laws[] = {
      {"x (y /\\ z) t", "x y t /\\ x z t"},
      {"x (y \\/ z) t", "x y t \\/ x z t"},
      {"x \\/ y", "(x^-1 /\\ y^-1)^-1"},
      {"x /\\ y", "(x^-1 \\/ y^-1)^-1"},
      {"x \\/ (y /\\ z)", "(x \\/ y) /\\ (x \\/ z)"},
      {"x /\\ (y \\/ z)", "(x /\\ y) \\/ (x /\\ z)"},
      {"x", "(x \\/ e)(x /\\ e)"},
      {"(x \\/ e) /\\ (x^-1 \\/ e)", "e"},
  };
  int held = 0;
  for (const Law& l : laws)
    if (is_id(l.lhs, l.rhs))
      ++held;
    else
      detail << "failed: " << l.lhs << " = " << l.rhs << "; ";
  bool abs_moves = decide(parse_term("abs(x)", a)).verdict.kind == VerdictKind::NotIdentity;
  bool comm_moves = decide(parse_term("comm(x, y)", a)).verdict.kind == VerdictKind::NotIdentity;
  detail << held << "/8 laws, abs " << (abs_moves ? "moves" : "fixed") << ", comm "
         << (comm_moves ? "moves" : "fixed");
  return held == 8 && abs_moves && comm_moves;
}

bool c4_witness_consistency(std::ostringstream& detail) {
  auto a = Alphabet::make({"x", "y"});
  std::mt19937 rng(424242);
  int witnesses = 0, identities = 0;
  for (int i = 0; i < 200; ++i) {
    Term t = testutil::random_term(rng, a, 1 + static_cast<int>(rng() % 8));
    bool identity = decide(t).verdict.kind == VerdictKind::EqualsIdentity;
    auto w = find_witness(t, 1000, 1000 + static_cast<std::uint64_t>(i));
    if (identity) ++identities;
    if (w) ++witnesses;
    if (w && identity) {
      detail << "witness against an identity term: " << print(t);
      return false;
    }
  }
  detail << "200 terms, " << identities << " identities, " << witnesses << " witnesses";
  return true;
}

bool c5_conjugator_fixture(std::ostringstream& detail) {
  PLMap f = PLMap::from_breakpoints({{0, 0}, {1, 2}, {4, 4}});
  PLMap g = PLMap::from_breakpoints({{10, 10}, {11, 12}, {14, 14}});
  LazyConjugator h = LazyConjugator::make(f, g, 1, 11);
  if (h.apply(1) != 11 || h.apply(f(Rational(1))) != g(Rational(11))) {
    detail << "endpoint transport off";
    return false;
  }
  std::mt19937_64 rng(5150);
  for (int i = 0; i < 1000; ++i) {
    long long den = 1 + static_cast<long long>(rng() % 997);
    long long num = 1 + static_cast<long long>(rng() % (4 * den - 1));
    Rational x(num, den);
    if (h.apply(f(x)) != g(h.apply(x))) {
      detail << "conjugation identity fails at " << rational_string(x);
      return false;
    }
  }
  detail << "1000 rationals in (0,4), endpoints exact";
  return true;
}

PLMap random_plmap(std::mt19937_64& rng) {
  int bumps = 1 + static_cast<int>(rng() % 3);
  std::vector<std::pair<Rational, Rational>> bps;
  for (int j = 0; j < bumps; ++j) {
    Rational base = 5 * j;
    long long num = 1 + static_cast<long long>(rng() % 3);
    Rational delta(rng() % 2 == 0 ? num : -num, 4);
    bps.emplace_back(base, base);
    bps.emplace_back(base + 1, base + 1 + delta);
    bps.emplace_back(base + 2, base + 2);
  }
  return PLMap::from_breakpoints(std::move(bps));
}

bool c6_support_transport(std::ostringstream& detail) {
  std::mt19937_64 rng(616);
  for (int i = 0; i < 100; ++i) {
    PLMap f = random_plmap(rng);
    PLMap g = random_plmap(rng);
    PLMap conj = compose(compose(g.inverse(), f), g);
    auto sf = supports(f);
    auto sc = supports(conj);
    if (sf.size() != sc.size()) {
      detail << "bump count changed on pair " << i;
      return false;
    }
    for (std::size_t j = 0; j < sf.size(); ++j)
      if (sc[j].lo != g(sf[j].lo) || sc[j].hi != g(sf[j].hi)) {
        detail << "interval " << j << " of pair " << i << " is not the g-image";
        return false;
      }
  }
  detail << "100 pairs, interval lists exact";
  return true;
}

bool c7_wreath_equivalence(std::ostringstream& detail) {
  auto a = Alphabet::make({"g1", "g2", "c"});
  FreeOracle oracle;
  std::mt19937 rng(777);
  for (int i = 0; i < 500; ++i) {
    Term t = testutil::random_term(rng, a, 1 + static_cast<int>(rng() % 10));
    if (w_decide(t, "c", oracle).kind != w_decide_weight_route(t, "c", oracle).kind) {
      detail << "routes disagree on " << print(t);
      return false;
    }
  }

  Term g1 = Term::generator(a, 0), g2 = Term::generator(a, 1), c = Term::generator(a, 2);
  if (w_decide(Term::meet({c, Term::identity(a)}), "c", oracle).kind !=
      VerdictKind::EqualsIdentity) {
    detail << "c /\\ e != e";
    return false;
  }
  for (const Term& gn : {g1, g2})
    for (const Term& gm : {g1, g2})
      for (int m : {-2, -1, 1, 2})
        if (w_decide(Term::meet({abs_term(conj_term(gn, Term::power(c, m))), abs_term(gm)}),
                     "c", oracle)
                .kind != VerdictKind::EqualsIdentity) {
          detail << "conjugate-orthogonality fails at m=" << m;
          return false;
        }

  auto tower = Alphabet::make({"g", "a", "c"});
  Term a0 = Term::generator(tower, 1), ct = Term::generator(tower, 2);
  for (int m : {1, 2, 3})
    if (lex_w_decide(Term::meet({abs_term(conj_term(a0, Term::power(ct, m))), abs_term(a0)}),
                     "a", "c", oracle)
            .kind != VerdictKind::EqualsIdentity) {
      detail << "inner-shift orthogonality fails at m=" << m;
      return false;
    }

  auto af = Alphabet::make({"gx1", "gw2", "gx3"});
  Term t = parse_term("gx1 gw2^-1 /\\ gx3", af);
  auto factors = sum_factor(t, {{"gx1", "x"}, {"gw2", "w"}, {"gx3", "x"}});
  std::string want_x = print(embed(normalize(parse_term("gx1 /\\ gx3", af)), af));
  std::string want_w = print(embed(normalize(parse_term("gw2^-1 /\\ e", af)), af));
  if (print(factors.at("x")) != want_x || print(factors.at("w")) != want_w) {
    detail << "factorization prints diverge: " << print(factors.at("x")) << " | "
           << print(factors.at("w"));
    return false;
  }
  detail << "500 terms, relations hold, factorization token-exact";
  return true;
}

bool c8_presentation_toolkit(std::ostringstream& detail) {
  Presentation p1 = presentation_make({"x"}, {"abs(x)"});
  Term x1 = Term::generator(p1.alphabet, 0);
  Certificate proved = ideal_semidecide(p1, x1, {.budget = 100});
  if (proved.kind != Certificate::Kind::Proved || !verify_proved(p1, x1, proved)) {
    detail << "x = 1 in <x : |x|> not proved within budget 100";
    return false;
  }

  Presentation p2 = presentation_make({"x", "y"}, {"abs(x)"});
  Term y2 = Term::generator(p2.alphabet, 1);
  PLAssignment bump{{"x", PLMap{}},
                    {"y", PLMap::from_breakpoints({{0, 0}, {1, 2}, {4, 4}})}};
  Certificate refuted = hom_refute(p2, y2, bump);
  if (refuted.kind != Certificate::Kind::Refuted) {
    detail << "y = 1 in <x,y : |x|> not refuted";
    return false;
  }

  // Both halves across a small suite: a sound prover and a sound refuter can
  // never fire on the same instance.
  struct Case {
    Presentation p;
    Term w;
  };
  std::vector<Case> suite;
  suite.push_back({p1, x1});
  suite.push_back({p1, Term::identity(p1.alphabet)});
  suite.push_back({p2, y2});
  suite.push_back({p2, Term::generator(p2.alphabet, 0)});
  Presentation pc = presentation_make({"x", "y"}, {"comm(x, y)"});
  suite.push_back({pc, parse_term("comm(x, y)", pc.alphabet)});
  Presentation po = presentation_make({"x", "y"}, {"abs(x) /\\ abs(y)"});
  suite.push_back({po, parse_term("comm(x, y)", po.alphabet)});
  Presentation pf = presentation_make({"x", "y"}, {});
  suite.push_back({pf, Term::generator(pf.alphabet, 0)});
  int proved_n = 0, refuted_n = 0;
  for (const Case& cse : suite) {
    Certificate cp = ideal_semidecide(cse.p, cse.w, {.budget = 40});
    Certificate cs = solve(cse.p, cse.w, {.budget = 80});
    if (cp.kind == Certificate::Kind::Proved) {
      ++proved_n;
      if (!verify_proved(cse.p, cse.w, cp)) {
        detail << "a Proved certificate failed re-verification";
        return false;
      }
      if (cs.kind == Certificate::Kind::Refuted) {
        detail << "prover and refuter both fired on " << print(cse.w);
        return false;
      }
    }
    if (cs.kind == Certificate::Kind::Refuted) {
      ++refuted_n;
      if (hom_refute(cse.p, cse.w, cs.refuted->plmap_assignment).kind !=
          Certificate::Kind::Refuted) {
        detail << "a Refuted certificate failed re-verification";
        return false;
      }
    }
  }

  // Conjugator relation schema at (2,2) with its order-permutation model.
  auto ga = Alphabet::make({"g0"});
  Term u = abs_term(Term::generator(ga, 0));
  Term v = Term::product({u, u});
  Presentation gd = gdagger_schema({"g0"}, {{u, v}, {u, v}}, 2, 2);
  if (gd.relators.size() != 30) {
    detail << "schema truncation emits " << gd.relators.size() << " relators, expected 30";
    return false;
  }
  PLMap a0 = PLMap::from_breakpoints({{0, 0}, {Rational(1, 4), Rational(1, 2)}, {1, 1}});
  PLMap c1 = PLMap::from_breakpoints({{-1, -1}, {0, 2}, {8, Rational(19, 2)}, {10, 10}});
  PLMap g1 = PLMap::from_breakpoints(
      {{Rational(1, 4), Rational(1, 4)}, {Rational(5, 16), Rational(11, 32)},
       {Rational(3, 8), Rational(3, 8)}});
  PLAssignment model{{"g0", g1}, {"a0", a0}, {"c1", c1}, {"s0", g1}};
  Term cs_gen = Term::generator(gd.alphabet, gd.alphabet->index("c1"));
  Term gs_gen = Term::generator(gd.alphabet, gd.alphabet->index("g0"));
  model.emplace("s1", eval_map(conj_term(gs_gen, cs_gen), model));
  for (const Term& r : gd.relators)
    if (!eval_map(r, model).is_identity()) {
      detail << "model violates emitted relator " << print(r);
      return false;
    }
  Term a0t = Term::generator(gd.alphabet, gd.alphabet->index("a0"));
  auto s_gen = [&](int m) {
    return Term::generator(gd.alphabet, gd.alphabet->index("s" + std::to_string(m)));
  };
  for (int m = 0; m < 2; ++m)
    for (int m2 = 0; m2 < 2; ++m2) {
      Term orth = Term::meet(
          {abs_term(s_gen(m)), abs_term(conj_term(a0t, Term::power(cs_gen, m2)))});
      bool id = eval_map(orth, model).is_identity();
      if (m != m2 && !id) {
        detail << "derived orthogonality fails at m=" << m << ", m'=" << m2;
        return false;
      }
      if (m == m2 && id) {
        detail << "model degenerate: s" << m << " already orthogonal to its own level";
        return false;
      }
    }
  detail << proved_n << " proved, " << refuted_n << " refuted, never both; schema + model check";
  return true;
}

bool c9_numbering(std::ostringstream& detail) {
  auto a = Alphabet::make({"x", "y"});
  for (int n = 0; n < 10000; ++n) {
    MeetString s = pseudo_godel(n, a);
    if (pseudo_godel(godel_index(s, a), a) != s) {
      detail << "round trip fails at index " << n;
      return false;
    }
    if (n < 200) {
      Integer i0 = godel_index(s, a);
      Integer i1 = godel_index_padded(s, a, 1);
      if (i0 == i1 || pseudo_godel(i1, a) != s) {
        detail << "padding channel fails at index " << n;
        return false;
      }
    }
  }
  detail << "10000 indices round-trip, padded aliases decode identically";
  return true;
}

}  // namespace

int main() {
  criterion(1, "one-generator oracle equivalence", c1_enumerated_oracle);
  criterion(2, "diagram branch counts", c2_branch_counts);
  criterion(3, "defining identity suite", c3_identity_suite);
  criterion(4, "random witness soundness", c4_witness_consistency);
  criterion(5, "conjugator fixture", c5_conjugator_fixture);
  criterion(6, "support transport", c6_support_transport);
  criterion(7, "wreath route equivalence", c7_wreath_equivalence);
  criterion(8, "presentation toolkit", c8_presentation_toolkit);
  criterion(9, "meet-string numbering", c9_numbering);
  if (g_failures == 0)
    std::cout << "all criteria passed" << std::endl;
  else
    std::cout << g_failures << " criteria failed" << std::endl;
  return g_failures;
}
