#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ellwp/freedec.hpp"
#include "ellwp/perm.hpp"
#include "ellwp/rational.hpp"
#include "ellwp/term.hpp"
#include "ellwp/wreath.hpp"

namespace ellwp {

// A quotient of the free lattice-group: every relator is asserted = 1.  When
// `more` is set the relator list continues past the eager vector: more(i)
// yields relator i of the tail, or nullopt when the tail is exhausted.
struct Presentation {
  AlphabetPtr alphabet;
  std::vector<Term> relators;
  std::function<std::optional<Term>(std::size_t)> more;
};

Presentation presentation_make(std::vector<std::string> generator_names,
                               const std::vector<std::string>& relator_texts);

// A meet of freely reduced group words; an empty list denotes the identity.
struct MeetString {
  std::vector<GroupWord> words;
  friend bool operator==(const MeetString&, const MeetString&) = default;
};

Term meet_string_term(const MeetString& s, const AlphabetPtr& alpha);

// Parses term text denoting a meet of group words and canonicalizes it.
// Throws Error when the term normalizes to anything with a join in it.
MeetString meet_string_parse(const std::string& text, const AlphabetPtr& alpha);

// Numbering of meet strings over a fixed alphabet.  decode is total (every
// natural is some meet string) and surjective; a padding channel in the top
// pairing gives every meet string infinitely many indices.  decode freely
// reduces, so unreduced letter codes still land on a canonical string.
MeetString pseudo_godel(const Integer& n, const AlphabetPtr& alpha);
Integer godel_index(const MeetString& s, const AlphabetPtr& alpha);
// The index whose padding component is k; k = 0 reproduces godel_index.
Integer godel_index_padded(const MeetString& s, const AlphabetPtr& alpha, const Integer& k);

struct ProvedData {
  // The dominating product: prod_k conj(R, h_k) with R the join of the
  // absolute values of the first relator_count relators; conjugators lists
  // the h_k.  Empty conjugator list means the trivial bound |w| <= e.
  std::vector<GroupWord> conjugators;
  std::size_t relator_count = 0;
  std::optional<Term> dominator;
};

struct RefutedData {
  // Target lattice-group and the assignment that kills every relator but
  // moves w; `witness` is a short human-readable account of the move.  Only
  // the assignment matching `target` is populated.
  std::string target;  // "z2" | "zk" | "plmap" | "wreath"
  PLAssignment plmap_assignment;
  std::map<std::string, std::vector<long long>> zk_assignment;
  std::map<std::string, WreathElement> wreath_assignment;
  std::string witness;
};

struct Certificate {
  enum class Kind { Proved, Refuted, Unknown };
  Kind kind = Kind::Unknown;
  std::optional<ProvedData> proved;
  std::optional<RefutedData> refuted;
  std::uint64_t budget_spent = 0;
};

struct SemidecideOptions {
  std::uint64_t budget = 1000;       // candidate dominators to try
  std::uint64_t max_diagrams = 200000;  // per-candidate diagram cap
  int jobs = 1;
};

// Sound semi-decision of membership of w in the lattice-ideal generated by
// the relators: searches for a product of conjugates of the join R of relator
// absolute values with |w| <= prod_k conj(R, h_k) in the free lattice-group,
// conjugating words h_k enumerated by total length then lexicographically.
// Relator truncations grow with the step count when the presentation has an
// enumerator tail.  A candidate whose free-group check exhausts its diagram
// cap is skipped, which preserves soundness.  Never returns Refuted.
Certificate ideal_semidecide(const Presentation& p, const Term& w,
                             const SemidecideOptions& opts = {});

// Rebuilds the dominating product of a Proved certificate and re-checks the
// inequality in the free lattice-group.
bool verify_proved(const Presentation& p, const Term& w, const Certificate& cert,
                   const DecideOptions& opts = {});

// Sound refutation through a lattice-homomorphism into a computable target:
// every relator must map to the identity (otherwise InvalidAssignment); if w
// maps off the identity the result is Refuted, else Unknown.  Assignments
// must cover the whole alphabet.
Certificate hom_refute(const Presentation& p, const Term& w,
                       const std::map<std::string, Z2Element>& assignment);
Certificate hom_refute(const Presentation& p, const Term& w,
                       const std::map<std::string, std::vector<long long>>& assignment);
Certificate hom_refute(const Presentation& p, const Term& w,
                       const PLAssignment& assignment);
Certificate hom_refute(const Presentation& p, const Term& w,
                       const std::map<std::string, WreathElement>& assignment,
                       GroupOracle& oracle);

struct SolveOptions {
  std::uint64_t budget = 10000;  // dovetail steps, shared by both halves
  std::uint64_t max_diagrams = 200000;
  int jobs = 1;
};

// Deterministic dovetail of ideal_semidecide against a stream of refuting
// order-permutation assignments (each generator sent to the identity or to
// one of two disjoint bumps).  First definitive certificate wins; both halves
// are sound, so they can never disagree.
Certificate solve(const Presentation& p, const Term& w, const SolveOptions& opts = {});

// Finite truncation of the conjugator relation schema over the alphabet
// g_gens + {a0, c1} + {s0 .. s(m_max-1)}:
//   (3) |s_m|^k <= conj(a0, c1^m)                       k in [1, k_max]
//   (4) conj(s_m, c1^-m) orthogonal to conj(g, a0^k)    k in [-k_max, k_max] \ {0}
//   (5) conj(s_m, c1^-m) orthogonal to conj(s_m', c1^-m' a0^k)
//   (6) conj(u_m, c1^m) s_m = conj(v_m, c1^m)
// with m, m' in [0, m_max).  Inequalities become (a b^-1 \/ e) relators,
// orthogonality becomes abs(f) /\ abs(g), equalities become a b^-1.  The
// uv_pairs are terms over g_gens, the first m_max of an enumeration of
// strictly positive pairs; positivity is the caller's contract.  Output is
// monotone: enlarging m_max or k_max appends and interleaves relators of the
// smaller truncation without altering them.
Presentation gdagger_schema(const std::vector<std::string>& g_gens,
                            const std::vector<std::pair<Term, Term>>& uv_pairs,
                            int m_max, int k_max);

}  // namespace ellwp
