#include "ellwp/present.hpp"

#include <boost/multiprecision/integer.hpp>

#include <algorithm>
#include <sstream>

namespace ellwp {

Presentation presentation_make(std::vector<std::string> generator_names,
                               const std::vector<std::string>& relator_texts) {
  Presentation p;
  p.alphabet = Alphabet::make(std::move(generator_names));
  for (const auto& text : relator_texts) p.relators.push_back(parse_term(text, p.alphabet));
  return p;
}

Term meet_string_term(const MeetString& s, const AlphabetPtr& alpha) {
  if (s.words.empty()) return Term::identity(alpha);
  std::vector<Term> parts;
  parts.reserve(s.words.size());
  for (const auto& w : s.words) parts.push_back(word_term(w, alpha));
  return Term::meet(std::move(parts));
}

MeetString meet_string_parse(const std::string& text, const AlphabetPtr& alpha) {
  JoinOfMeets jm = normalize(parse_term(text, alpha));
  if (jm.rows.size() != 1)
    throw Error("not a meet string: normal form has " + std::to_string(jm.rows.size()) +
                " join rows");
  MeetString s{jm.rows[0]};
  if (s.words.size() == 1 && s.words[0].letters().empty()) s.words.clear();
  return s;
}

// ---------------------------------------------------------------------------
// Meet-string numbering

namespace {

Integer pair_nat(const Integer& a, const Integer& b) {
  Integer s = a + b;
  return s * (s + 1) / 2 + b;
}

std::pair<Integer, Integer> unpair_nat(const Integer& n) {
  Integer disc = 8 * n + 1;
  Integer s = (boost::multiprecision::sqrt(disc) - 1) / 2;
  Integer tri = s * (s + 1) / 2;
  if (tri > n) {
    --s;
    tri = s * (s + 1) / 2;
  }
  Integer b = n - tri;
  return {s - b, b};
}

Integer list_encode(const std::vector<Integer>& xs) {
  Integer n = 0;
  for (auto it = xs.rbegin(); it != xs.rend(); ++it) n = pair_nat(*it, n) + 1;
  return n;
}

std::vector<Integer> list_decode(Integer n) {
  std::vector<Integer> out;
  while (n != 0) {
    auto [h, t] = unpair_nat(n - 1);
    out.push_back(std::move(h));
    n = std::move(t);
  }
  return out;
}

// Exponent channel: nonzero integers zig-zagged onto naturals.  Decoding
// reduces the channel mod 2^62 first so arbitrary codes stay in range.
const Integer kExpMod = Integer(1) << 62;

Integer zig(long long e) {
  return e > 0 ? 2 * (Integer(e) - 1) : -2 * Integer(e) - 1;
}

long long unzig(const Integer& z) {
  Integer zm = z % kExpMod;
  long long v = zm.convert_to<long long>();
  return v % 2 == 0 ? v / 2 + 1 : -(v + 1) / 2;
}

Integer letter_encode(const Letter& l, int num_gens) {
  return Integer(l.gen) + Integer(num_gens) * zig(l.exp);
}

GroupWord word_decode(const Integer& code, int num_gens) {
  GroupWord w;
  if (num_gens == 0) return w;
  for (const Integer& lc : list_decode(code)) {
    int gen = (lc % num_gens).convert_to<int>();
    w = w.mul(GroupWord::single(gen, unzig(lc / num_gens)));
  }
  return w;
}

Integer word_encode(const GroupWord& w, int num_gens) {
  std::vector<Integer> codes;
  codes.reserve(w.letters().size());
  for (const auto& l : w.letters()) codes.push_back(letter_encode(l, num_gens));
  return list_encode(codes);
}

}  // namespace

MeetString pseudo_godel(const Integer& n, const AlphabetPtr& alpha) {
  if (n < 0) throw Error("pseudo_godel: negative index");
  auto [pad, core] = unpair_nat(n);
  (void)pad;
  MeetString s;
  for (const Integer& wc : list_decode(core)) s.words.push_back(word_decode(wc, alpha->size()));
  return s;
}

Integer godel_index(const MeetString& s, const AlphabetPtr& alpha) {
  return godel_index_padded(s, alpha, 0);
}

Integer godel_index_padded(const MeetString& s, const AlphabetPtr& alpha, const Integer& k) {
  if (k < 0) throw Error("godel_index_padded: negative padding");
  std::vector<Integer> codes;
  codes.reserve(s.words.size());
  for (const auto& w : s.words) codes.push_back(word_encode(w, alpha->size()));
  return pair_nat(k, list_encode(codes));
}

// ---------------------------------------------------------------------------
// Ideal membership search

namespace {

// Conjugator tuples in cost order, cost = tuple size + total word length;
// index 0 is the empty tuple (the trivial bound |w| <= e).  Words of one
// length come out in generator order with the positive sign first, tuples of
// one cost by size then lexicographically in the word stream.
class ConjugatorStream {
 public:
  explicit ConjugatorStream(int num_gens) : num_gens_(num_gens) {}

  const std::vector<GroupWord>& get(std::size_t i) {
    while (tuples_.size() <= i) fill_cost(++cost_);
    return tuples_[i];
  }

 private:
  void fill_cost(int cost) {
    if (cost == 0) {
      tuples_.emplace_back();
      return;
    }
    for (int q = 1; q <= cost; ++q) {
      std::vector<int> lens;
      emit_lengths(cost - q, q, lens);
    }
  }

  void emit_lengths(int remaining, int slots, std::vector<int>& lens) {
    if (slots == 0) {
      if (remaining == 0) {
        std::vector<GroupWord> tuple;
        emit_words(lens, 0, tuple);
      }
      return;
    }
    for (int take = 0; take <= remaining; ++take) {
      lens.push_back(take);
      emit_lengths(remaining - take, slots - 1, lens);
      lens.pop_back();
    }
  }

  void emit_words(const std::vector<int>& lens, std::size_t at, std::vector<GroupWord>& tuple) {
    if (at == lens.size()) {
      tuples_.push_back(tuple);
      return;
    }
    for (const auto& w : words_of_length(lens[at])) {
      tuple.push_back(w);
      emit_words(lens, at + 1, tuple);
      tuple.pop_back();
    }
  }

  const std::vector<GroupWord>& words_of_length(int len) {
    while (static_cast<int>(words_.size()) <= len) {
      int l = static_cast<int>(words_.size());
      std::vector<GroupWord> out;
      if (l == 0) {
        out.emplace_back();
      } else {
        for (const auto& w : words_[l - 1]) {
          const auto& ls = w.letters();
          for (int g = 0; g < num_gens_; ++g)
            for (int sgn : {1, -1}) {
              if (!ls.empty()) {
                const Letter& last = ls.back();
                if (last.gen == g && (last.exp > 0) != (sgn > 0)) continue;
              }
              out.push_back(w.mul(GroupWord::single(g, sgn)));
            }
        }
      }
      words_.push_back(std::move(out));
    }
    return words_[static_cast<std::size_t>(len)];
  }

  int num_gens_;
  int cost_ = -1;
  std::vector<std::vector<GroupWord>> tuples_;
  std::vector<std::vector<GroupWord>> words_;
};

// Relator access with lazy tail.
class RelatorPool {
 public:
  explicit RelatorPool(const Presentation& p) : p_(p), tail_done_(!p.more) {}

  // Number of relators available after trying to extend to at least n.
  std::size_t extend_to(std::size_t n) {
    while (!tail_done_ && p_.relators.size() + tail_.size() < n) {
      auto t = p_.more(tail_.size());
      if (!t) {
        tail_done_ = true;
        break;
      }
      tail_.push_back(std::move(*t));
    }
    std::size_t avail = p_.relators.size() + tail_.size();
    return std::min(avail, n);
  }

  std::size_t eager_count() const { return p_.relators.size(); }
  bool has_tail() const { return static_cast<bool>(p_.more); }

  const Term& at(std::size_t i) const {
    return i < p_.relators.size() ? p_.relators[i] : tail_[i - p_.relators.size()];
  }

  // Join of absolute values of the first n relators.
  Term joined(std::size_t n) {
    while (joined_.size() < n) {
      std::size_t i = joined_.size();
      Term a = abs_term(at(i));
      joined_.push_back(i == 0 ? a : Term::join({joined_.back(), a}));
    }
    return joined_[n - 1];
  }

 private:
  const Presentation& p_;
  std::vector<Term> tail_;
  std::vector<Term> joined_;
  bool tail_done_;
};

Term build_dominator(RelatorPool& pool, std::size_t relator_count,
                     const std::vector<GroupWord>& conjugators, const AlphabetPtr& alpha) {
  if (conjugators.empty()) return Term::identity(alpha);
  Term r = pool.joined(relator_count);
  std::vector<Term> parts;
  parts.reserve(conjugators.size());
  for (const auto& h : conjugators)
    parts.push_back(h.empty() ? r : conj_term(r, word_term(h, alpha)));
  return parts.size() == 1 ? parts[0] : Term::product(std::move(parts));
}

bool check_dominates(const Term& w, const Term& dominator, const DecideOptions& opts) {
  Term gap = Term::join(
      {Term::product({abs_term(w), Term::inverse(dominator)}), Term::identity(w.alphabet())});
  try {
    return decide(gap, opts).verdict.kind == VerdictKind::EqualsIdentity;
  } catch (const ResourceExhausted&) {
    return false;
  }
}

// One candidate per step: step t maps to a (relator truncation, conjugator
// tuple) pair; with a finite relator list the truncation is always the whole
// list, with an enumerator tail the two coordinates dovetail.
class Prover {
 public:
  Prover(const Presentation& p, const Term& w, const DecideOptions& opts)
      : pool_(p), w_(w), opts_(opts), stream_(p.alphabet->size()) {}

  std::optional<Certificate> step() {
    std::size_t tuple_index, want;
    if (pool_.has_tail()) {
      auto [extra, i] = unpair_nat(Integer(step_));
      tuple_index = i.convert_to<std::size_t>();
      want = pool_.eager_count() + extra.convert_to<std::size_t>();
    } else {
      tuple_index = step_;
      want = pool_.eager_count();
    }
    ++step_;
    std::size_t relator_count = pool_.extend_to(std::max<std::size_t>(want, 1));
    const std::vector<GroupWord>& tuple = stream_.get(tuple_index);
    if (!tuple.empty() && relator_count == 0) return std::nullopt;
    Term dom = build_dominator(pool_, relator_count, tuple, w_.alphabet());
    if (!check_dominates(w_, dom, opts_)) return std::nullopt;
    Certificate c;
    c.kind = Certificate::Kind::Proved;
    c.proved = ProvedData{tuple, tuple.empty() ? 0 : relator_count, dom};
    return c;
  }

 private:
  RelatorPool pool_;
  const Term& w_;
  DecideOptions opts_;
  ConjugatorStream stream_;
  std::uint64_t step_ = 0;
};

}  // namespace

Certificate ideal_semidecide(const Presentation& p, const Term& w,
                             const SemidecideOptions& opts) {
  if (opts.budget == 0) throw Error("ideal_semidecide: budget must be positive");
  DecideOptions dopts;
  dopts.max_diagrams = opts.max_diagrams;
  dopts.jobs = opts.jobs;
  Prover prover(p, w, dopts);
  for (std::uint64_t t = 0; t < opts.budget; ++t) {
    auto c = prover.step();
    if (c) {
      c->budget_spent = t + 1;
      return *c;
    }
  }
  Certificate c;
  c.kind = Certificate::Kind::Unknown;
  c.budget_spent = opts.budget;
  return c;
}

bool verify_proved(const Presentation& p, const Term& w, const Certificate& cert,
                   const DecideOptions& opts) {
  if (cert.kind != Certificate::Kind::Proved || !cert.proved) return false;
  if (!cert.proved->conjugators.empty() && cert.proved->relator_count == 0) return false;
  RelatorPool pool(p);
  std::size_t have = pool.extend_to(std::max<std::size_t>(cert.proved->relator_count, 1));
  if (have < cert.proved->relator_count) return false;
  Term dom =
      build_dominator(pool, cert.proved->relator_count, cert.proved->conjugators, p.alphabet);
  return check_dominates(w, dom, opts);
}

// ---------------------------------------------------------------------------
// Homomorphism refutation

namespace {

std::vector<long long> eval_vec(const Term& t,
                                const std::map<std::string, std::vector<long long>>& a,
                                std::size_t k) {
  switch (t.kind()) {
    case TermKind::Identity:
      return std::vector<long long>(k, 0);
    case TermKind::Gen:
      return a.at(t.alphabet()->name(t.gen()));
    case TermKind::Inverse: {
      auto v = eval_vec(t.children()[0], a, k);
      for (auto& x : v) x = -x;
      return v;
    }
    case TermKind::Product: {
      std::vector<long long> v(k, 0);
      for (const auto& c : t.children()) {
        auto u = eval_vec(c, a, k);
        for (std::size_t i = 0; i < k; ++i) v[i] += u[i];
      }
      return v;
    }
    case TermKind::Join:
    case TermKind::Meet: {
      bool is_join = t.kind() == TermKind::Join;
      auto v = eval_vec(t.children()[0], a, k);
      for (std::size_t i = 1; i < t.children().size(); ++i) {
        auto u = eval_vec(t.children()[i], a, k);
        for (std::size_t j = 0; j < k; ++j)
          v[j] = is_join ? std::max(v[j], u[j]) : std::min(v[j], u[j]);
      }
      return v;
    }
  }
  throw Error("unreachable term kind");
}

bool all_zero(const std::vector<long long>& v) {
  return std::all_of(v.begin(), v.end(), [](long long x) { return x == 0; });
}

std::string vec_string(const std::vector<long long>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += std::to_string(v[i]);
  }
  return s + ")";
}

template <class Map>
void require_coverage(const Presentation& p, const Map& assignment) {
  for (const auto& name : p.alphabet->names())
    if (!assignment.count(name)) throw Error("assignment misses generator '" + name + "'");
}

Certificate zk_refute(const Presentation& p, const Term& w,
                      const std::map<std::string, std::vector<long long>>& assignment,
                      const std::string& target) {
  require_coverage(p, assignment);
  if (assignment.empty()) throw Error("assignment is empty");
  std::size_t k = assignment.begin()->second.size();
  if (k == 0) throw Error("assignment vectors must be non-empty");
  for (const auto& [name, v] : assignment)
    if (v.size() != k) throw Error("assignment vectors must share one length");

  for (const auto& r : p.relators)
    if (!all_zero(eval_vec(r, assignment, k)))
      throw InvalidAssignment("relator " + print(r) + " does not map to the identity");

  Certificate c;
  auto img = eval_vec(w, assignment, k);
  if (all_zero(img)) {
    c.kind = Certificate::Kind::Unknown;
    return c;
  }
  c.kind = Certificate::Kind::Refuted;
  RefutedData d;
  d.target = target;
  d.zk_assignment = assignment;
  d.witness = "image " + vec_string(img) + " is not the zero vector";
  c.refuted = std::move(d);
  return c;
}

}  // namespace

Certificate hom_refute(const Presentation& p, const Term& w,
                       const std::map<std::string, Z2Element>& assignment) {
  std::map<std::string, std::vector<long long>> vecs;
  for (const auto& [name, z] : assignment) vecs.emplace(name, std::vector<long long>{z.m1, z.m2});
  return zk_refute(p, w, vecs, "z2");
}

Certificate hom_refute(const Presentation& p, const Term& w,
                       const std::map<std::string, std::vector<long long>>& assignment) {
  return zk_refute(p, w, assignment, "zk");
}

Certificate hom_refute(const Presentation& p, const Term& w, const PLAssignment& assignment) {
  require_coverage(p, assignment);
  for (const auto& r : p.relators)
    if (!eval_map(r, assignment).is_identity())
      throw InvalidAssignment("relator " + print(r) + " does not map to the identity");

  Certificate c;
  PLMap img = eval_map(w, assignment);
  if (img.is_identity()) {
    c.kind = Certificate::Kind::Unknown;
    return c;
  }
  auto bumps = supports(img);
  Rational x = (bumps[0].lo + bumps[0].hi) / 2;
  c.kind = Certificate::Kind::Refuted;
  RefutedData d;
  d.target = "plmap";
  d.plmap_assignment = assignment;
  d.witness = "moves " + rational_string(x) + " to " + rational_string(img(x));
  c.refuted = std::move(d);
  return c;
}

Certificate hom_refute(const Presentation& p, const Term& w,
                       const std::map<std::string, WreathElement>& assignment,
                       GroupOracle& oracle) {
  require_coverage(p, assignment);
  for (const auto& r : p.relators) {
    WreathElement img = w_eval_assign(r, assignment, oracle);
    if (img.shift != 0 || !img.base.empty())
      throw InvalidAssignment("relator " + print(r) + " does not map to the identity");
  }

  Certificate c;
  WreathElement img = w_eval_assign(w, assignment, oracle);
  if (img.shift == 0 && img.base.empty()) {
    c.kind = Certificate::Kind::Unknown;
    return c;
  }
  std::ostringstream os;
  os << "image has shift " << img.shift << " and support {";
  bool first = true;
  for (const auto& [m, t] : img.base) {
    if (!first) os << ", ";
    os << m;
    first = false;
  }
  os << "}";
  c.kind = Certificate::Kind::Refuted;
  RefutedData d;
  d.target = "wreath";
  d.wreath_assignment = assignment;
  d.witness = os.str();
  c.refuted = std::move(d);
  return c;
}

// ---------------------------------------------------------------------------
// Dovetail

namespace {

// Deterministic refuting assignments: each generator goes to the identity or
// to one of two disjoint bumps, one pattern per base-3 digit string.
class Refuter {
 public:
  explicit Refuter(const Presentation& p, const Term& w) : p_(p), w_(w) {
    n_ = static_cast<std::size_t>(p.alphabet->size());
    total_ = 1;
    for (std::size_t i = 0; i < n_ && total_ < (1u << 20); ++i) total_ *= 3;
    bump_a_ = PLMap::from_breakpoints({{0, 0}, {1, 2}, {4, 4}});
    bump_b_ = PLMap::from_breakpoints({{6, 6}, {7, 9}, {10, 10}});
  }

  std::optional<Certificate> step() {
    if (at_ >= total_) return std::nullopt;
    std::uint64_t code = at_++;
    PLAssignment a;
    for (const auto& name : p_.alphabet->names()) {
      switch (code % 3) {
        case 0: a.emplace(name, PLMap{}); break;
        case 1: a.emplace(name, bump_a_); break;
        case 2: a.emplace(name, bump_b_); break;
      }
      code /= 3;
    }
    try {
      Certificate c = hom_refute(p_, w_, a);
      if (c.kind == Certificate::Kind::Refuted) return c;
    } catch (const InvalidAssignment&) {
    }
    return std::nullopt;
  }

 private:
  const Presentation& p_;
  const Term& w_;
  std::size_t n_;
  std::uint64_t total_;
  std::uint64_t at_ = 0;
  PLMap bump_a_, bump_b_;
};

}  // namespace

Certificate solve(const Presentation& p, const Term& w, const SolveOptions& opts) {
  if (opts.budget == 0) throw Error("solve: budget must be positive");
  DecideOptions dopts;
  dopts.max_diagrams = opts.max_diagrams;
  dopts.jobs = opts.jobs;
  Prover prover(p, w, dopts);
  Refuter refuter(p, w);
  for (std::uint64_t t = 0; t < opts.budget; ++t) {
    auto c = t % 2 == 0 ? prover.step() : refuter.step();
    if (c) {
      c->budget_spent = t + 1;
      return *c;
    }
  }
  Certificate c;
  c.kind = Certificate::Kind::Unknown;
  c.budget_spent = opts.budget;
  return c;
}

// ---------------------------------------------------------------------------
// Conjugator relation schema

namespace {

Term rehome(const Term& t, const AlphabetPtr& alpha) {
  switch (t.kind()) {
    case TermKind::Identity:
      return Term::identity(alpha);
    case TermKind::Gen: {
      const std::string& name = t.alphabet()->name(t.gen());
      int idx = alpha->index(name);
      if (idx < 0) throw Error("generator '" + name + "' missing from the schema alphabet");
      return Term::generator(alpha, idx);
    }
    case TermKind::Inverse:
      return Term::inverse(rehome(t.children()[0], alpha));
    case TermKind::Product:
    case TermKind::Join:
    case TermKind::Meet: {
      std::vector<Term> ch;
      ch.reserve(t.children().size());
      for (const auto& c : t.children()) ch.push_back(rehome(c, alpha));
      if (t.kind() == TermKind::Product) return Term::product(std::move(ch));
      if (t.kind() == TermKind::Join) return Term::join(std::move(ch));
      return Term::meet(std::move(ch));
    }
  }
  throw Error("unreachable term kind");
}

Term leq_relator(const Term& a, const Term& b) {
  return Term::join({Term::product({a, Term::inverse(b)}), Term::identity(a.alphabet())});
}

Term orth_relator(const Term& f, const Term& g) {
  return Term::meet({abs_term(f), abs_term(g)});
}

}  // namespace

Presentation gdagger_schema(const std::vector<std::string>& g_gens,
                            const std::vector<std::pair<Term, Term>>& uv_pairs,
                            int m_max, int k_max) {
  if (m_max <= 0 || k_max <= 0) throw Error("gdagger_schema: m_max and k_max must be positive");
  if (uv_pairs.size() < static_cast<std::size_t>(m_max))
    throw Error("gdagger_schema: need one (u, v) pair per conjugator");

  std::vector<std::string> names = g_gens;
  names.push_back("a0");
  names.push_back("c1");
  for (int m = 0; m < m_max; ++m) names.push_back("s" + std::to_string(m));
  Presentation p;
  p.alphabet = Alphabet::make(std::move(names));

  Term a0 = Term::generator(p.alphabet, p.alphabet->index("a0"));
  Term c1 = Term::generator(p.alphabet, p.alphabet->index("c1"));
  auto s = [&](int m) {
    return Term::generator(p.alphabet, p.alphabet->index("s" + std::to_string(m)));
  };
  auto signed_ks = [&]() {
    std::vector<int> ks;
    for (int k = 1; k <= k_max; ++k) {
      ks.push_back(k);
      ks.push_back(-k);
    }
    return ks;
  }();

  for (int m = 0; m < m_max; ++m)
    for (int k = 1; k <= k_max; ++k)
      p.relators.push_back(
          leq_relator(Term::power(abs_term(s(m)), k), conj_term(a0, Term::power(c1, m))));

  for (int m = 0; m < m_max; ++m)
    for (const auto& g_name : g_gens) {
      Term g = Term::generator(p.alphabet, p.alphabet->index(g_name));
      for (int k : signed_ks)
        p.relators.push_back(orth_relator(conj_term(s(m), Term::power(c1, -m)),
                                          conj_term(g, Term::power(a0, k))));
    }

  for (int m = 0; m < m_max; ++m)
    for (int m2 = 0; m2 < m_max; ++m2)
      for (int k : signed_ks)
        p.relators.push_back(orth_relator(
            conj_term(s(m), Term::power(c1, -m)),
            conj_term(s(m2), Term::product({Term::power(c1, -m2), Term::power(a0, k)}))));

  for (int m = 0; m < m_max; ++m) {
    Term u = rehome(uv_pairs[static_cast<std::size_t>(m)].first, p.alphabet);
    Term v = rehome(uv_pairs[static_cast<std::size_t>(m)].second, p.alphabet);
    Term lhs = Term::product({conj_term(u, Term::power(c1, m)), s(m)});
    Term rhs = conj_term(v, Term::power(c1, m));
    p.relators.push_back(Term::product({lhs, Term::inverse(rhs)}));
  }
  return p;
}

}  // namespace ellwp
