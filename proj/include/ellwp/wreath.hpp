#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>

#include "ellwp/freedec.hpp"
#include "ellwp/term.hpp"

namespace ellwp {

// Decision oracle for a coefficient lattice-group G, consulted on terms over
// the shared alphabet (terms handed to it never mention shift generators).
class GroupOracle {
 public:
  virtual ~GroupOracle() = default;
  virtual bool is_identity(const Term& t) = 0;
  // Strictly positive: t >= 1 and t != 1.
  virtual bool is_strictly_positive(const Term& t);
};

// G = free lattice-group on the alphabet, decided by diagrams; calls are
// memoized by the structural print of the term.
class FreeOracle : public GroupOracle {
 public:
  explicit FreeOracle(DecideOptions opts = {}) : opts_(opts) {}
  bool is_identity(const Term& t) override;

 private:
  DecideOptions opts_;
  std::mutex mu_;
  std::unordered_map<std::string, bool> memo_;
};

// G = free lattice-group on one generator, decided through Z (+) Z.
class Z2Oracle : public GroupOracle {
 public:
  bool is_identity(const Term& t) override;
  bool is_strictly_positive(const Term& t) override;
};

// Element of the restricted wreath product W = G wr (<c>, Z): a finitely
// supported base map Z -> G together with the power of the shift generator.
// Product rule: (a.b).base[m] = a.base[m] . b.base[m + a.shift],
// (a.b).shift = a.shift + b.shift.  With this rule conjugating a base entry
// by c moves it from index m to index m + 1 (supports transport like points:
// supp(f*g) = supp(f)g).  Entries equal to 1 in G are pruned via the oracle.
struct WreathElement {
  long long shift = 0;
  std::map<long long, Term> base;
};

WreathElement w_identity();
WreathElement w_mul(const WreathElement& a, const WreathElement& b, GroupOracle& oracle);
WreathElement w_inv(const WreathElement& a, GroupOracle& oracle);
// Lattice operations: elements with different shifts are totally ordered
// (positive shift dominates, no fixed points on Z); equal shifts compare
// componentwise, with missing entries read as the identity of G.
WreathElement w_join(const WreathElement& a, const WreathElement& b, GroupOracle& oracle);
WreathElement w_meet(const WreathElement& a, const WreathElement& b, GroupOracle& oracle);
bool w_equal(const WreathElement& a, const WreathElement& b, GroupOracle& oracle);
// a >= identity: shift > 0, or shift == 0 and every entry >= 1 in G.
bool w_geq_identity(const WreathElement& a, GroupOracle& oracle);

// Evaluates t in W, sending `shift_gen` to the shift generator and every
// other generator g to the base singleton {0 -> g}.
WreathElement w_eval(const Term& t, const std::string& shift_gen, GroupOracle& oracle);

// Drops base entries the oracle recognizes as the identity of G.
WreathElement w_prune(WreathElement a, GroupOracle& oracle);

// Evaluates t under an explicit assignment of every generator to an element
// of W.  Throws Error when a generator of the alphabet is unassigned.
WreathElement w_eval_assign(const Term& t,
                            const std::map<std::string, WreathElement>& assignment,
                            GroupOracle& oracle);

// t = 1 in W iff the evaluated element has shift 0 and empty pruned base.
Verdict w_decide(const Term& t, const std::string& shift_gen, GroupOracle& oracle);

// Same verdict along the quotient route: kill the base (G -> 1) and check the
// image in <c> = Z via max/min of word weights; at weight zero drop the rows
// a negative-weight word forces below everything and the positive-weight
// words a meet never sees, then split what is left over the conjugacy-index
// components of the base and consult the oracle per component.
Verdict w_decide_weight_route(const Term& t, const std::string& shift_gen,
                              GroupOracle& oracle);

// Exponent sum of one generator in a reduced word.
long long word_weight(const GroupWord& w, int gen);

// Factorization over a cardinal sum: partition maps each generator name to a
// component id; the factor of a component is t with all other components'
// generators replaced by the identity, in canonical normal form.  t = 1 in
// the sum iff every factor is 1 in its component.
std::map<std::string, Term> sum_factor(const Term& t,
                                       const std::map<std::string, std::string>& partition);

// Wreath-decision oracle: decides W-terms so wreath products can be nested.
class WreathOracle : public GroupOracle {
 public:
  WreathOracle(std::string shift_gen, GroupOracle& inner)
      : shift_gen_(std::move(shift_gen)), inner_(inner) {}
  bool is_identity(const Term& t) override;

 private:
  std::string shift_gen_;
  GroupOracle& inner_;
};

// Decision over G wr (A, Z lex Z) via the tower
// (G wr (<a>, Z)) wr (<c>, Z): t ranges over {a, c} and the G-generators.
Verdict lex_w_decide(const Term& t, const std::string& inner_shift_gen,
                     const std::string& outer_shift_gen, GroupOracle& g_oracle);

}  // namespace ellwp
