#include "ellwp/term.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <cstring>
#include <set>

namespace ellwp {

namespace {

const char* const kReserved[] = {"e", "abs", "conj", "comm"};

bool valid_name(const std::string& s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  for (const char* r : kReserved)
    if (s == r) return false;
  return true;
}

}  // namespace

std::shared_ptr<const Alphabet> Alphabet::make(std::vector<std::string> names) {
  auto a = std::shared_ptr<Alphabet>(new Alphabet());
  std::set<std::string> seen;
  for (const auto& n : names) {
    if (!valid_name(n)) throw Error("invalid generator name: '" + n + "'");
    if (!seen.insert(n).second) throw Error("duplicate generator name: '" + n + "'");
  }
  a->names_ = std::move(names);
  std::vector<int> order(a->names_.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(),
            [&](int x, int y) { return a->names_[x] < a->names_[y]; });
  a->name_rank_.assign(order.size(), 0);
  for (std::size_t r = 0; r < order.size(); ++r) a->name_rank_[order[r]] = static_cast<int>(r);
  return a;
}

int Alphabet::index(const std::string& name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return static_cast<int>(i);
  return -1;
}

// ---------------------------------------------------------------------------
// GroupWord

void GroupWord::push_reduced(int gen, long long exp) {
  if (exp == 0) return;
  if (!letters_.empty() && letters_.back().gen == gen) {
    letters_.back().exp += exp;
    if (letters_.back().exp == 0) letters_.pop_back();
    return;
  }
  letters_.push_back(Letter{gen, exp});
}

GroupWord GroupWord::single(int gen, long long exp) {
  GroupWord w;
  w.push_reduced(gen, exp);
  return w;
}

long long GroupWord::length() const {
  long long n = 0;
  for (const auto& l : letters_) n += std::llabs(l.exp);
  return n;
}

long long GroupWord::weight(int gen) const {
  long long n = 0;
  for (const auto& l : letters_)
    if (l.gen == gen) n += l.exp;
  return n;
}

GroupWord GroupWord::mul(const GroupWord& rhs) const {
  GroupWord out = *this;
  for (const auto& l : rhs.letters_) out.push_reduced(l.gen, l.exp);
  return out;
}

GroupWord GroupWord::inverse() const {
  GroupWord out;
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it)
    out.letters_.push_back(Letter{it->gen, -it->exp});
  return out;
}

GroupWord GroupWord::pow(long long k) const {
  GroupWord base = k < 0 ? inverse() : *this;
  long long n = k < 0 ? -k : k;
  GroupWord out;
  for (long long i = 0; i < n; ++i) out = out.mul(base);
  return out;
}

std::string GroupWord::print(const Alphabet& alpha) const {
  if (letters_.empty()) return "e";
  std::string out;
  for (const auto& l : letters_) {
    if (!out.empty()) out += ' ';
    out += alpha.name(l.gen);
    if (l.exp != 1) out += "^" + std::to_string(l.exp);
  }
  return out;
}

bool GroupWord::less(const GroupWord& a, const GroupWord& b, const Alphabet& alpha) {
  const auto& x = a.letters();
  const auto& y = b.letters();
  for (std::size_t i = 0; i < std::min(x.size(), y.size()); ++i) {
    int rx = alpha.name_rank(x[i].gen), ry = alpha.name_rank(y[i].gen);
    if (rx != ry) return rx < ry;
    if (x[i].exp != y[i].exp) return x[i].exp < y[i].exp;
  }
  return x.size() < y.size();
}

// ---------------------------------------------------------------------------
// Term construction

std::size_t Term::node_count() const {
  std::size_t n = 1;
  for (const auto& c : children()) n += c.node_count();
  return n;
}

Term Term::identity(AlphabetPtr alpha) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::Identity;
  n->alpha = std::move(alpha);
  return Term(n);
}

Term Term::generator(AlphabetPtr alpha, int gen) {
  if (gen < 0 || gen >= alpha->size()) throw Error("generator index out of range");
  auto n = std::make_shared<Node>();
  n->kind = TermKind::Gen;
  n->gen = gen;
  n->alpha = std::move(alpha);
  return Term(n);
}

Term Term::inverse(Term t) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::Inverse;
  n->alpha = t.alphabet();
  n->children.push_back(std::move(t));
  return Term(n);
}

Term Term::nary(TermKind kind, std::vector<Term> children) {
  if (children.empty()) throw Error("n-ary term node needs children");
  for (std::size_t i = 1; i < children.size(); ++i)
    if (children[i].alphabet() != children[0].alphabet())
      throw Error("terms combine only over one shared alphabet");
  // Flatten nested nodes of the same kind.
  std::vector<Term> flat;
  for (auto& c : children) {
    if (c.kind() == kind)
      flat.insert(flat.end(), c.children().begin(), c.children().end());
    else
      flat.push_back(std::move(c));
  }
  if (flat.size() == 1) return flat[0];
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->alpha = flat[0].alphabet();
  n->children = std::move(flat);
  return Term(n);
}

Term Term::product(std::vector<Term> children) { return nary(TermKind::Product, std::move(children)); }
Term Term::join(std::vector<Term> children) { return nary(TermKind::Join, std::move(children)); }
Term Term::meet(std::vector<Term> children) { return nary(TermKind::Meet, std::move(children)); }

Term Term::power(Term t, long long k) {
  if (k == 0) return identity(t.alphabet());
  Term base = k < 0 ? inverse(t) : t;
  long long n = k < 0 ? -k : k;
  if (n == 1) return base;
  std::vector<Term> copies(static_cast<std::size_t>(n), base);
  return product(std::move(copies));
}

bool Term::same(const Term& other) const {
  if (node_ == other.node_) return true;
  if (kind() != other.kind() || gen() != other.gen()) return false;
  if (children().size() != other.children().size()) return false;
  for (std::size_t i = 0; i < children().size(); ++i)
    if (!children()[i].same(other.children()[i])) return false;
  return true;
}

Term abs_term(const Term& t) { return Term::join({t, Term::inverse(t)}); }

Term conj_term(const Term& f, const Term& g) {
  return Term::product({Term::inverse(g), f, g});
}

Term comm_term(const Term& f, const Term& g) {
  return Term::product({Term::inverse(f), Term::inverse(g), f, g});
}

Term combine_relations(const std::vector<Term>& ws) {
  if (ws.empty()) throw Error("combine_relations: empty relation list");
  if (ws.size() == 1) return abs_term(ws[0]);
  std::vector<Term> parts;
  parts.reserve(ws.size());
  for (const auto& w : ws) parts.push_back(abs_term(w));
  return Term::join(std::move(parts));
}

// ---------------------------------------------------------------------------
// Normalization

namespace {

using Rows = std::vector<std::vector<GroupWord>>;

Rows product_rows(const Rows& a, const Rows& b) {
  Rows out;
  out.reserve(a.size() * b.size());
  for (const auto& ra : a)
    for (const auto& rb : b) {
      std::vector<GroupWord> row;
      row.reserve(ra.size() * rb.size());
      for (const auto& wa : ra)
        for (const auto& wb : rb) row.push_back(wa.mul(wb));
      out.push_back(std::move(row));
    }
  return out;
}

Rows meet_rows(const Rows& a, const Rows& b) {
  Rows out;
  out.reserve(a.size() * b.size());
  for (const auto& ra : a)
    for (const auto& rb : b) {
      std::vector<GroupWord> row = ra;
      row.insert(row.end(), rb.begin(), rb.end());
      out.push_back(std::move(row));
    }
  return out;
}

Rows normalize_rows(const Term& t);

// Distributed form of t^-1, pushing the inversion through the tree: products
// reverse, joins and meets swap.  Inverting an already distributed join of
// meets directly would multiply out one row per choice function.
Rows inverse_of(const Term& t) {
  switch (t.kind()) {
    case TermKind::Identity:
      return {{GroupWord{}}};
    case TermKind::Gen:
      return {{GroupWord::single(t.gen(), -1)}};
    case TermKind::Inverse:
      return normalize_rows(t.children()[0]);
    case TermKind::Product: {
      const auto& cs = t.children();
      Rows acc = inverse_of(cs.back());
      for (std::size_t i = cs.size() - 1; i-- > 0;) acc = product_rows(acc, inverse_of(cs[i]));
      return acc;
    }
    case TermKind::Join: {
      Rows acc = inverse_of(t.children()[0]);
      for (std::size_t i = 1; i < t.children().size(); ++i)
        acc = meet_rows(acc, inverse_of(t.children()[i]));
      return acc;
    }
    case TermKind::Meet: {
      Rows acc;
      for (const auto& c : t.children()) {
        Rows r = inverse_of(c);
        acc.insert(acc.end(), r.begin(), r.end());
      }
      return acc;
    }
  }
  throw Error("unreachable term kind");
}

Rows normalize_rows(const Term& t) {
  switch (t.kind()) {
    case TermKind::Identity:
      return {{GroupWord{}}};
    case TermKind::Gen:
      return {{GroupWord::single(t.gen(), 1)}};
    case TermKind::Inverse:
      return inverse_of(t.children()[0]);
    case TermKind::Product: {
      Rows acc = normalize_rows(t.children()[0]);
      for (std::size_t i = 1; i < t.children().size(); ++i)
        acc = product_rows(acc, normalize_rows(t.children()[i]));
      return acc;
    }
    case TermKind::Join: {
      Rows acc;
      for (const auto& c : t.children()) {
        Rows r = normalize_rows(c);
        acc.insert(acc.end(), r.begin(), r.end());
      }
      return acc;
    }
    case TermKind::Meet: {
      Rows acc = normalize_rows(t.children()[0]);
      for (std::size_t i = 1; i < t.children().size(); ++i)
        acc = meet_rows(acc, normalize_rows(t.children()[i]));
      return acc;
    }
  }
  throw Error("unreachable term kind");
}

void canonicalize(Rows& rows, const Alphabet& alpha) {
  auto word_less = [&](const GroupWord& x, const GroupWord& y) {
    return GroupWord::less(x, y, alpha);
  };
  for (auto& row : rows) {
    std::sort(row.begin(), row.end(), word_less);
    row.erase(std::unique(row.begin(), row.end()), row.end());
  }
  std::sort(rows.begin(), rows.end(), [&](const auto& x, const auto& y) {
    for (std::size_t i = 0; i < std::min(x.size(), y.size()); ++i) {
      if (x[i] == y[i]) continue;
      return word_less(x[i], y[i]);
    }
    return x.size() < y.size();
  });
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  // Absorption: meet(R') <= meet(R) when R is a subset of R', so the join
  // drops any row containing another row (rows are sorted, subset check ok).
  std::vector<std::vector<GroupWord>> kept;
  for (const auto& row : rows) {
    bool absorbed = false;
    for (const auto& small : rows) {
      if (&small == &row || small.size() >= row.size()) continue;
      if (std::includes(row.begin(), row.end(), small.begin(), small.end(),
                        [&](const GroupWord& x, const GroupWord& y) { return word_less(x, y); })) {
        absorbed = true;
        break;
      }
    }
    if (!absorbed) kept.push_back(row);
  }
  rows = std::move(kept);
}

}  // namespace

JoinOfMeets normalize(const Term& t) {
  JoinOfMeets jm{normalize_rows(t)};
  canonicalize(jm.rows, *t.alphabet());
  return jm;
}

Term word_term(const GroupWord& w, const AlphabetPtr& alpha) {
  if (w.empty()) return Term::identity(alpha);
  std::vector<Term> parts;
  for (const auto& l : w.letters())
    parts.push_back(Term::power(Term::generator(alpha, l.gen), l.exp));
  return Term::product(std::move(parts));
}

Term embed(const JoinOfMeets& jm, const AlphabetPtr& alpha) {
  std::vector<Term> rows;
  for (const auto& row : jm.rows) {
    std::vector<Term> words;
    for (const auto& w : row) words.push_back(word_term(w, alpha));
    rows.push_back(Term::meet(std::move(words)));
  }
  return Term::join(std::move(rows));
}

std::string print(const JoinOfMeets& jm, const Alphabet& alpha) {
  std::string out;
  for (std::size_t i = 0; i < jm.rows.size(); ++i) {
    if (i) out += " \\/ ";
    for (std::size_t j = 0; j < jm.rows[i].size(); ++j) {
      if (j) out += " /\\ ";
      out += jm.rows[i][j].print(alpha);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Printing general terms (minimal parentheses; reparses to the same tree).

namespace {

int precedence(TermKind k) {
  switch (k) {
    case TermKind::Join: return 0;
    case TermKind::Meet: return 1;
    case TermKind::Product: return 2;
    default: return 3;
  }
}

void print_rec(const Term& t, int context, std::string& out) {
  int prec = precedence(t.kind());
  bool parens = prec < context;
  if (parens) out += '(';
  switch (t.kind()) {
    case TermKind::Identity:
      out += 'e';
      break;
    case TermKind::Gen:
      out += t.alphabet()->name(t.gen());
      break;
    case TermKind::Inverse: {
      const Term& c = t.children()[0];
      if (c.kind() == TermKind::Gen) {
        out += t.alphabet()->name(c.gen());
        out += "^-1";
      } else {
        out += '(';
        print_rec(c, 0, out);
        out += ")^-1";
      }
      break;
    }
    case TermKind::Product:
      for (std::size_t i = 0; i < t.children().size(); ++i) {
        if (i) out += ' ';
        print_rec(t.children()[i], 3, out);
      }
      break;
    case TermKind::Join:
    case TermKind::Meet: {
      const char* op = t.kind() == TermKind::Join ? " \\/ " : " /\\ ";
      for (std::size_t i = 0; i < t.children().size(); ++i) {
        if (i) out += op;
        print_rec(t.children()[i], prec + 1, out);
      }
      break;
    }
  }
  if (parens) out += ')';
}

}  // namespace

std::string print(const Term& t) {
  std::string out;
  print_rec(t, 0, out);
  return out;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

struct Parser {
  const std::string& src;
  AlphabetPtr alpha;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& msg, std::size_t at) const {
    throw ParseError(msg + " at offset " + std::to_string(at), at);
  }

  void skip_ws() {
    while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
  }

  bool eat(const char* tok) {
    skip_ws();
    std::size_t n = std::strlen(tok);
    if (src.compare(pos, n, tok) == 0) {
      pos += n;
      return true;
    }
    return false;
  }

  bool peek(char c) {
    skip_ws();
    return pos < src.size() && src[pos] == c;
  }

  std::string ident() {
    skip_ws();
    std::size_t start = pos;
    if (pos < src.size() && std::isalpha(static_cast<unsigned char>(src[pos]))) {
      ++pos;
      while (pos < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_'))
        ++pos;
    }
    return src.substr(start, pos - start);
  }

  long long exponent() {
    skip_ws();
    std::size_t start = pos;
    bool neg = false;
    if (pos < src.size() && src[pos] == '-') {
      neg = true;
      ++pos;
    }
    if (pos >= src.size() || !std::isdigit(static_cast<unsigned char>(src[pos])))
      fail("expected integer exponent", start);
    long long v = 0;
    while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) {
      v = v * 10 + (src[pos] - '0');
      if (v > (1LL << 40)) fail("exponent too large", start);
      ++pos;
    }
    return neg ? -v : v;
  }

  Term term() {
    std::vector<Term> parts{meet_chain()};
    while (eat("\\/")) parts.push_back(meet_chain());
    return parts.size() == 1 ? parts[0] : Term::join(std::move(parts));
  }

  Term meet_chain() {
    std::vector<Term> parts{prod()};
    while (eat("/\\")) parts.push_back(prod());
    return parts.size() == 1 ? parts[0] : Term::meet(std::move(parts));
  }

  bool at_atom_start() {
    skip_ws();
    if (pos >= src.size()) return false;
    char c = src[pos];
    return c == '(' || std::isalpha(static_cast<unsigned char>(c));
  }

  Term prod() {
    std::vector<Term> parts{atom()};
    while (at_atom_start()) parts.push_back(atom());
    return parts.size() == 1 ? parts[0] : Term::product(std::move(parts));
  }

  Term call_args_1(std::size_t at) {
    if (!eat("(")) fail("expected '('", pos);
    Term a = term();
    if (!eat(")")) fail("expected ')'", pos);
    (void)at;
    return a;
  }

  std::pair<Term, Term> call_args_2(std::size_t at) {
    if (!eat("(")) fail("expected '('", pos);
    Term a = term();
    if (!eat(",")) fail("expected ','", pos);
    Term b = term();
    if (!eat(")")) fail("expected ')'", pos);
    (void)at;
    return {a, b};
  }

  Term atom() {
    skip_ws();
    std::size_t at = pos;
    if (pos >= src.size()) fail("unexpected end of input", at);
    if (src[pos] == '(') {
      ++pos;
      Term t = term();
      if (!eat(")")) fail("expected ')'", pos);
      return maybe_power(t);
    }
    std::string id = ident();
    if (id.empty()) fail("expected term", at);
    if (id == "e") return Term::identity(alpha);
    if (id == "abs") return maybe_power(abs_term(call_args_1(at)));
    if (id == "conj") {
      auto [f, g] = call_args_2(at);
      return maybe_power(conj_term(f, g));
    }
    if (id == "comm") {
      auto [f, g] = call_args_2(at);
      return maybe_power(comm_term(f, g));
    }
    int gen = alpha->index(id);
    if (gen < 0) fail("unknown generator '" + id + "'", at);
    return maybe_power(Term::generator(alpha, gen));
  }

  Term maybe_power(Term t) {
    skip_ws();
    if (pos < src.size() && src[pos] == '^') {
      ++pos;
      return Term::power(std::move(t), exponent());
    }
    return t;
  }
};

}  // namespace

Term parse_term(const std::string& text, AlphabetPtr alpha) {
  Parser p{text, std::move(alpha)};
  Term t = p.term();
  p.skip_ws();
  if (p.pos != text.size()) p.fail("trailing input", p.pos);
  return t;
}

// ---------------------------------------------------------------------------
// Evaluation in Z (+) Z

namespace {

void collect_gens(const Term& t, std::set<int>& gens) {
  if (t.kind() == TermKind::Gen) gens.insert(t.gen());
  for (const auto& c : t.children()) collect_gens(c, gens);
}

Z2Element eval_z2_rec(const Term& t) {
  switch (t.kind()) {
    case TermKind::Identity:
      return {0, 0};
    case TermKind::Gen:
      return {1, -1};
    case TermKind::Inverse: {
      Z2Element v = eval_z2_rec(t.children()[0]);
      return {-v.m1, -v.m2};
    }
    case TermKind::Product: {
      Z2Element acc{0, 0};
      for (const auto& c : t.children()) {
        Z2Element v = eval_z2_rec(c);
        acc.m1 += v.m1;
        acc.m2 += v.m2;
      }
      return acc;
    }
    case TermKind::Join:
    case TermKind::Meet: {
      bool join = t.kind() == TermKind::Join;
      Z2Element acc = eval_z2_rec(t.children()[0]);
      for (std::size_t i = 1; i < t.children().size(); ++i) {
        Z2Element v = eval_z2_rec(t.children()[i]);
        acc.m1 = join ? std::max(acc.m1, v.m1) : std::min(acc.m1, v.m1);
        acc.m2 = join ? std::max(acc.m2, v.m2) : std::min(acc.m2, v.m2);
      }
      return acc;
    }
  }
  throw Error("unreachable term kind");
}

}  // namespace

Z2Element eval_z2(const Term& t) {
  std::set<int> gens;
  collect_gens(t, gens);
  if (gens.size() > 1) throw Error("eval_z2: term uses more than one generator");
  return eval_z2_rec(t);
}

}  // namespace ellwp
