#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "ellwp/errors.hpp"

namespace ellwp {

// A fixed, ordered set of generator names.  Names must match
// [A-Za-z][A-Za-z0-9_]* and must avoid the reserved words e, abs, conj, comm.
class Alphabet {
 public:
  static std::shared_ptr<const Alphabet> make(std::vector<std::string> names);

  int size() const { return static_cast<int>(names_.size()); }
  const std::string& name(int i) const { return names_.at(i); }
  const std::vector<std::string>& names() const { return names_; }
  // Index of `name`, or -1 when absent.
  int index(const std::string& name) const;
  // Rank of generator i when generators are sorted by name; canonical orders
  // on words and rows are name-based, not index-based.
  int name_rank(int i) const { return name_rank_.at(i); }

 private:
  Alphabet() = default;
  std::vector<std::string> names_;
  std::vector<int> name_rank_;
};

using AlphabetPtr = std::shared_ptr<const Alphabet>;

// One maximal run g^exp inside a reduced word; exp is never 0 and adjacent
// letters never share a generator.
struct Letter {
  int gen;
  long long exp;
  friend bool operator==(const Letter&, const Letter&) = default;
};

// A freely reduced group word.  The empty word is the group identity.
class GroupWord {
 public:
  GroupWord() = default;
  static GroupWord single(int gen, long long exp);

  const std::vector<Letter>& letters() const { return letters_; }
  bool empty() const { return letters_.empty(); }
  // Total number of single-generator letters (sum of |exp|).
  long long length() const;
  // Exponent sum of one generator.
  long long weight(int gen) const;

  GroupWord mul(const GroupWord& rhs) const;
  GroupWord inverse() const;
  GroupWord pow(long long k) const;

  std::string print(const Alphabet& alpha) const;
  friend bool operator==(const GroupWord&, const GroupWord&) = default;

  // Canonical order: letter-by-letter on (name rank, exponent), prefixes first.
  static bool less(const GroupWord& a, const GroupWord& b, const Alphabet& alpha);

 private:
  std::vector<Letter> letters_;
  void push_reduced(int gen, long long exp);
};

enum class TermKind { Identity, Gen, Inverse, Product, Join, Meet };

// Immutable lattice-group term.  Product, Join and Meet are flattened n-ary
// nodes with at least two children; copying a Term is cheap.
class Term {
 public:
  TermKind kind() const { return node_->kind; }
  int gen() const { return node_->gen; }
  const std::vector<Term>& children() const { return node_->children; }
  const AlphabetPtr& alphabet() const { return node_->alpha; }
  std::size_t node_count() const;

  static Term identity(AlphabetPtr alpha);
  static Term generator(AlphabetPtr alpha, int gen);
  static Term inverse(Term t);
  static Term product(std::vector<Term> children);
  static Term join(std::vector<Term> children);
  static Term meet(std::vector<Term> children);
  // t^k via repeated product; k = 0 gives the identity, k < 0 inverts.
  static Term power(Term t, long long k);

  // Structural equality (same shape, same generators).
  bool same(const Term& other) const;

 private:
  struct Node {
    TermKind kind;
    int gen = -1;
    std::vector<Term> children;
    AlphabetPtr alpha;
  };
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Term nary(TermKind kind, std::vector<Term> children);
  std::shared_ptr<const Node> node_;
};

// Derived operators.
Term abs_term(const Term& t);                    // t v t^-1
Term conj_term(const Term& f, const Term& g);    // g^-1 f g
Term comm_term(const Term& f, const Term& g);    // f^-1 g^-1 f g
// Single term equivalent to the relation set {w = 1 : w in ws}: join of the
// absolute values.  Throws Error on an empty list.
Term combine_relations(const std::vector<Term>& ws);

// Join-of-meets normal form: non-empty rows, each a non-empty canonical list
// of reduced words.  Join across rows, meet within a row.
struct JoinOfMeets {
  std::vector<std::vector<GroupWord>> rows;
  friend bool operator==(const JoinOfMeets&, const JoinOfMeets&) = default;
};

// Rewrites t into join-of-meets normal form using the defining distribution
// laws; rows and words are sorted canonically, duplicates and absorbed rows
// dropped, so equal normal forms are structurally equal.
JoinOfMeets normalize(const Term& t);

// Embeds a normal form back into a Term (join of meets of letter products).
Term embed(const JoinOfMeets& jm, const AlphabetPtr& alpha);

// A single reduced word as a Term (identity for the empty word).
Term word_term(const GroupWord& w, const AlphabetPtr& alpha);

std::string print(const JoinOfMeets& jm, const Alphabet& alpha);
std::string print(const Term& t);

// Parses the whitespace-insensitive grammar
//   term := meet-chain { "\/" meet-chain }
//   meet := prod { "/\" prod }
//   prod := atom { atom }
//   atom := "e" | gen ["^" int] | "(" term ")" ["^" int]
//         | "abs(" term ")" | "conj(" term "," term ")" | "comm(" term "," term ")"
// Unknown generators and syntax errors raise ParseError with a byte position.
Term parse_term(const std::string& text, AlphabetPtr alpha);

// Image of a one-generator term in Z (+) Z under generator -> (1, -1), the
// free lattice-group on one generator ordered componentwise.
struct Z2Element {
  long long m1 = 0;
  long long m2 = 0;
  friend bool operator==(const Z2Element&, const Z2Element&) = default;
};
Z2Element eval_z2(const Term& t);

}  // namespace ellwp
