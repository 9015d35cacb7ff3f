#include "ellwp/wreath.hpp"

#include <algorithm>
#include <set>
#include <vector>

namespace ellwp {

bool GroupOracle::is_strictly_positive(const Term& t) {
  Term e = Term::identity(t.alphabet());
  return is_identity(Term::meet({t, e})) && !is_identity(t);
}

bool FreeOracle::is_identity(const Term& t) {
  std::string key = print(t);
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
  }
  bool ans = decide(t, opts_).verdict.kind == VerdictKind::EqualsIdentity;
  std::lock_guard<std::mutex> lock(mu_);
  memo_.emplace(std::move(key), ans);
  return ans;
}

bool Z2Oracle::is_identity(const Term& t) { return eval_z2(t) == Z2Element{}; }

bool Z2Oracle::is_strictly_positive(const Term& t) {
  Z2Element v = eval_z2(t);
  return v.m1 >= 0 && v.m2 >= 0 && !(v.m1 == 0 && v.m2 == 0);
}

// ---------------------------------------------------------------------------
// Wreath arithmetic

WreathElement w_identity() { return WreathElement{}; }

namespace {

const Term* base_at(const WreathElement& a, long long m) {
  auto it = a.base.find(m);
  return it == a.base.end() ? nullptr : &it->second;
}

void insert_pruned(WreathElement& r, long long m, Term t, GroupOracle& oracle) {
  if (!oracle.is_identity(t)) r.base.emplace(m, std::move(t));
}

}  // namespace

WreathElement w_mul(const WreathElement& a, const WreathElement& b, GroupOracle& oracle) {
  WreathElement r;
  r.shift = a.shift + b.shift;
  std::set<long long> idx;
  for (const auto& [m, t] : a.base) idx.insert(m);
  for (const auto& [m, t] : b.base) idx.insert(m - a.shift);
  for (long long m : idx) {
    const Term* ta = base_at(a, m);
    const Term* tb = base_at(b, m + a.shift);
    Term t = ta && tb ? Term::product({*ta, *tb}) : (ta ? *ta : *tb);
    insert_pruned(r, m, std::move(t), oracle);
  }
  return r;
}

WreathElement w_inv(const WreathElement& a, GroupOracle&) {
  WreathElement r;
  r.shift = -a.shift;
  for (const auto& [m, t] : a.base) r.base.emplace(m + a.shift, Term::inverse(t));
  return r;
}

namespace {

WreathElement lattice_same_shift(const WreathElement& a, const WreathElement& b,
                                 GroupOracle& oracle, bool is_join) {
  WreathElement r;
  r.shift = a.shift;
  std::set<long long> idx;
  for (const auto& [m, t] : a.base) idx.insert(m);
  for (const auto& [m, t] : b.base) idx.insert(m);
  for (long long m : idx) {
    const Term* ta = base_at(a, m);
    const Term* tb = base_at(b, m);
    Term lhs = ta ? *ta : Term::identity(tb->alphabet());
    Term rhs = tb ? *tb : Term::identity(ta->alphabet());
    Term t = is_join ? Term::join({lhs, rhs}) : Term::meet({lhs, rhs});
    insert_pruned(r, m, std::move(t), oracle);
  }
  return r;
}

}  // namespace

WreathElement w_join(const WreathElement& a, const WreathElement& b, GroupOracle& oracle) {
  if (a.shift != b.shift) return a.shift > b.shift ? a : b;
  return lattice_same_shift(a, b, oracle, true);
}

WreathElement w_meet(const WreathElement& a, const WreathElement& b, GroupOracle& oracle) {
  if (a.shift != b.shift) return a.shift < b.shift ? a : b;
  return lattice_same_shift(a, b, oracle, false);
}

bool w_equal(const WreathElement& a, const WreathElement& b, GroupOracle& oracle) {
  WreathElement d = w_mul(a, w_inv(b, oracle), oracle);
  return d.shift == 0 && d.base.empty();
}

bool w_geq_identity(const WreathElement& a, GroupOracle& oracle) {
  if (a.shift != 0) return a.shift > 0;
  for (const auto& [m, t] : a.base) {
    Term e = Term::identity(t.alphabet());
    if (!oracle.is_identity(Term::meet({t, e}))) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Evaluation and decision

namespace {

WreathElement eval_rec(const Term& t, int shift_idx, GroupOracle& oracle) {
  switch (t.kind()) {
    case TermKind::Identity:
      return w_identity();
    case TermKind::Gen: {
      WreathElement r;
      if (t.gen() == shift_idx) {
        r.shift = 1;
      } else if (!oracle.is_identity(t)) {
        r.base.emplace(0, t);
      }
      return r;
    }
    case TermKind::Inverse:
      return w_inv(eval_rec(t.children()[0], shift_idx, oracle), oracle);
    case TermKind::Product: {
      WreathElement r = w_identity();
      for (const auto& c : t.children()) r = w_mul(r, eval_rec(c, shift_idx, oracle), oracle);
      return r;
    }
    case TermKind::Join:
    case TermKind::Meet: {
      bool is_join = t.kind() == TermKind::Join;
      WreathElement r = eval_rec(t.children()[0], shift_idx, oracle);
      for (std::size_t i = 1; i < t.children().size(); ++i) {
        WreathElement c = eval_rec(t.children()[i], shift_idx, oracle);
        r = is_join ? w_join(r, c, oracle) : w_meet(r, c, oracle);
      }
      return r;
    }
  }
  throw Error("unreachable term kind");
}

int require_gen(const Term& t, const std::string& name) {
  int idx = t.alphabet()->index(name);
  if (idx < 0) throw Error("shift generator '" + name + "' is not in the alphabet");
  return idx;
}

}  // namespace

WreathElement w_eval(const Term& t, const std::string& shift_gen, GroupOracle& oracle) {
  return eval_rec(t, require_gen(t, shift_gen), oracle);
}

WreathElement w_prune(WreathElement a, GroupOracle& oracle) {
  for (auto it = a.base.begin(); it != a.base.end();) {
    if (oracle.is_identity(it->second))
      it = a.base.erase(it);
    else
      ++it;
  }
  return a;
}

namespace {

WreathElement eval_assign_rec(const Term& t,
                              const std::map<std::string, WreathElement>& assignment,
                              GroupOracle& oracle) {
  switch (t.kind()) {
    case TermKind::Identity:
      return w_identity();
    case TermKind::Gen: {
      const std::string& name = t.alphabet()->name(t.gen());
      auto it = assignment.find(name);
      if (it == assignment.end()) throw Error("generator '" + name + "' is unassigned");
      return w_prune(it->second, oracle);
    }
    case TermKind::Inverse:
      return w_inv(eval_assign_rec(t.children()[0], assignment, oracle), oracle);
    case TermKind::Product: {
      WreathElement r = w_identity();
      for (const auto& c : t.children())
        r = w_mul(r, eval_assign_rec(c, assignment, oracle), oracle);
      return r;
    }
    case TermKind::Join:
    case TermKind::Meet: {
      bool is_join = t.kind() == TermKind::Join;
      WreathElement r = eval_assign_rec(t.children()[0], assignment, oracle);
      for (std::size_t i = 1; i < t.children().size(); ++i) {
        WreathElement c = eval_assign_rec(t.children()[i], assignment, oracle);
        r = is_join ? w_join(r, c, oracle) : w_meet(r, c, oracle);
      }
      return r;
    }
  }
  throw Error("unreachable term kind");
}

}  // namespace

WreathElement w_eval_assign(const Term& t,
                            const std::map<std::string, WreathElement>& assignment,
                            GroupOracle& oracle) {
  return eval_assign_rec(t, assignment, oracle);
}

Verdict w_decide(const Term& t, const std::string& shift_gen, GroupOracle& oracle) {
  WreathElement v = w_eval(t, shift_gen, oracle);
  bool id = v.shift == 0 && v.base.empty();
  return Verdict{id ? VerdictKind::EqualsIdentity : VerdictKind::NotIdentity, std::nullopt};
}

long long word_weight(const GroupWord& w, int gen) { return w.weight(gen); }

namespace {

/// Splits a shift-weight-zero word into its conjugacy components: a non-shift
// letter behind a shift-prefix of weight s lands at index -s, and letters at
// one index multiply in their original order.
std::map<long long, GroupWord> word_components(const GroupWord& w, int shift_idx) {
  std::map<long long, GroupWord> comp;
  long long s = 0;
  for (const auto& l : w.letters()) {
    if (l.gen == shift_idx) {
      s += l.exp;
    } else {
      auto& g = comp[-s];
      g = g.mul(GroupWord::single(l.gen, l.exp));
    }
  }
  for (auto it = comp.begin(); it != comp.end();) {
    if (it->second.empty())
      it = comp.erase(it);
    else
      ++it;
  }
  return comp;
}

}  // namespace

Verdict w_decide_weight_route(const Term& t, const std::string& shift_gen,
                              GroupOracle& oracle) {
  int c = require_gen(t, shift_gen);
  const AlphabetPtr& alpha = t.alphabet();
  JoinOfMeets jm = normalize(t);

  long long maxmin = 0;
  std::vector<long long> row_min(jm.rows.size());
  for (std::size_t i = 0; i < jm.rows.size(); ++i) {
    long long mn = jm.rows[i][0].weight(c);
    for (const auto& w : jm.rows[i]) mn = std::min(mn, w.weight(c));
    row_min[i] = mn;
    if (i == 0 || mn > maxmin) maxmin = mn;
  }
  if (maxmin != 0)
    return Verdict{VerdictKind::NotIdentity, std::nullopt};

  // Shift-weight image is trivial.  A row whose minimum is negative sits
  // below every weight-zero row and drops out of the join; inside a kept row
  // the positive-weight words sit above the rest and drop out of the meet.
  std::vector<std::vector<const GroupWord*>> kept;
  for (std::size_t i = 0; i < jm.rows.size(); ++i) {
    if (row_min[i] != 0) continue;
    std::vector<const GroupWord*> row;
    for (const auto& w : jm.rows[i])
      if (w.weight(c) == 0) row.push_back(&w);
    kept.push_back(std::move(row));
  }

  std::map<const GroupWord*, std::map<long long, GroupWord>> comps;
  std::set<long long> indices;
  for (const auto& row : kept)
    for (const GroupWord* w : row) {
      auto cm = word_components(*w, c);
      for (const auto& [m, g] : cm) indices.insert(m);
      comps.emplace(w, std::move(cm));
    }

  for (long long m : indices) {
    std::vector<Term> row_terms;
    for (const auto& row : kept) {
      std::vector<Term> word_terms;
      for (const GroupWord* w : row) {
        const auto& cm = comps[w];
        auto it = cm.find(m);
        word_terms.push_back(it == cm.end() ? Term::identity(alpha)
                                            : word_term(it->second, alpha));
      }
      row_terms.push_back(Term::meet(std::move(word_terms)));
    }
    if (!oracle.is_identity(Term::join(std::move(row_terms))))
      return Verdict{VerdictKind::NotIdentity, std::nullopt};
  }
  return Verdict{VerdictKind::EqualsIdentity, std::nullopt};
}

// ---------------------------------------------------------------------------
// Cardinal sums

namespace {

Term keep_only(const Term& t, const std::vector<bool>& keep) {
  switch (t.kind()) {
    case TermKind::Identity:
      return t;
    case TermKind::Gen:
      return keep[static_cast<std::size_t>(t.gen())] ? t : Term::identity(t.alphabet());
    case TermKind::Inverse:
      return Term::inverse(keep_only(t.children()[0], keep));
    case TermKind::Product:
    case TermKind::Join:
    case TermKind::Meet: {
      std::vector<Term> ch;
      ch.reserve(t.children().size());
      for (const auto& c : t.children()) ch.push_back(keep_only(c, keep));
      if (t.kind() == TermKind::Product) return Term::product(std::move(ch));
      if (t.kind() == TermKind::Join) return Term::join(std::move(ch));
      return Term::meet(std::move(ch));
    }
  }
  throw Error("unreachable term kind");
}

}  // namespace

std::map<std::string, Term> sum_factor(const Term& t,
                                       const std::map<std::string, std::string>& partition) {
  const AlphabetPtr& alpha = t.alphabet();
  for (const auto& [name, comp] : partition)
    if (alpha->index(name) < 0)
      throw Error("partition names unknown generator '" + name + "'");
  for (const auto& name : alpha->names())
    if (!partition.count(name))
      throw Error("partition misses generator '" + name + "'");

  std::map<std::string, Term> out;
  for (const auto& [name, comp] : partition) {
    if (out.count(comp)) continue;
    std::vector<bool> keep(static_cast<std::size_t>(alpha->size()), false);
    for (const auto& [n2, c2] : partition)
      if (c2 == comp) keep[static_cast<std::size_t>(alpha->index(n2))] = true;
    out.emplace(comp, embed(normalize(keep_only(t, keep)), alpha));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Nesting

bool WreathOracle::is_identity(const Term& t) {
  return w_decide(t, shift_gen_, inner_).kind == VerdictKind::EqualsIdentity;
}

Verdict lex_w_decide(const Term& t, const std::string& inner_shift_gen,
                     const std::string& outer_shift_gen, GroupOracle& g_oracle) {
  WreathOracle inner(inner_shift_gen, g_oracle);
  return w_decide(t, outer_shift_gen, inner);
}

}  // namespace ellwp
