#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ellwp/rational.hpp"
#include "ellwp/term.hpp"

namespace ellwp {

// An order-preserving piecewise-linear bijection of the rationals with
// bounded support: affine between consecutive breakpoints, the identity
// outside them.  Stored canonically (no collinear or identity-redundant
// breakpoints), so equal functions compare equal; the identity has no
// breakpoints at all.
class PLMap {
 public:
  PLMap() = default;  // identity

  // Validates: strictly increasing in both coordinates, endpoints fixed
  // (first.y == first.x, last.y == last.x).  Canonicalizes.
  static PLMap from_breakpoints(std::vector<std::pair<Rational, Rational>> bps);

  const std::vector<std::pair<Rational, Rational>>& breakpoints() const { return bps_; }
  bool is_identity() const { return bps_.empty(); }

  Rational operator()(const Rational& x) const;
  // Unique y with (*this)(y) == x.
  Rational inverse_at(const Rational& x) const;
  PLMap inverse() const;

  friend bool operator==(const PLMap&, const PLMap&) = default;

 private:
  std::vector<std::pair<Rational, Rational>> bps_;
};

// Right-action composition: compose(a, b)(x) = b(a(x)), i.e. the product a.b.
PLMap compose(const PLMap& a, const PLMap& b);
// Pointwise max / min; both are again PL order-bijections.
PLMap join(const PLMap& a, const PLMap& b);
PLMap meet(const PLMap& a, const PLMap& b);
// a(x) <= b(x) for every x (exact).
bool pointwise_leq(const PLMap& a, const PLMap& b);

// One maximal open interval of moved points, with the map restricted to it
// (identity elsewhere).
struct Bump {
  Rational lo;
  Rational hi;
  PLMap piece;
};

// Maximal open intervals where a moves points, in ascending order.
std::vector<Bump> supports(const PLMap& a);

using PLAssignment = std::map<std::string, PLMap>;

// Evaluates t as a PL map under the assignment (generators not assigned act
// as the identity).
PLMap eval_map(const Term& t, const PLAssignment& assignment);
// Image of the point x under eval_map.
Rational eval_term(const Term& t, const PLAssignment& assignment, const Rational& x);

struct PermWitness {
  PLAssignment assignment;
  Rational point;
  Rational image;  // != point
};

struct WitnessOptions {
  // Sampled maps live inside (support_lo, support_hi) with breakpoint
  // coordinates on the grid {i / d : d <= grid_denominator}.
  Rational support_lo = 0;
  Rational support_hi = 16;
  int grid_denominator = 4;
  int max_interior_points = 5;
};

// Random search for an assignment under which t moves a rational point.
// Returns the first witness in a deterministic seed-driven schedule, or
// nullopt after `budget` sampled assignments.  Finding a witness proves
// t != identity in the free lattice-group; not finding one proves nothing.
std::optional<PermWitness> find_witness(const Term& t, std::uint64_t budget,
                                        std::uint64_t seed,
                                        const WitnessOptions& opts = {});

// Conjugating bijection h with h^-1 f h = g, built lazily from matched
// pairs of bumps: on the m-th fundamental domain
// [alpha f^m, alpha f^(m+1)) the value is g^m(h0(f^-m(x))); outside the
// bumps, gap-to-gap affine transport.  h has infinitely many breakpoints
// accumulating at bump ends, hence evaluation only, no breakpoint list.
class LazyConjugator {
 public:
  // f, g: strictly positive single-bump maps; alpha in supp(f), beta in
  // supp(g); h0: monotone breakpoint list mapping [alpha, f(alpha)] onto
  // [beta, g(beta)] (affine when omitted).
  static LazyConjugator make(
      const PLMap& f, const PLMap& g, const Rational& alpha, const Rational& beta,
      std::optional<std::vector<std::pair<Rational, Rational>>> h0 = std::nullopt);

  // Generalization to equal finite bump counts: the j-th bump of f is
  // conjugated onto the j-th bump of g with affine defaults.
  static LazyConjugator matched(const PLMap& f, const PLMap& g);

  // h(x).  Throws IterationLimit when locating the fundamental domain of x
  // takes more than iter_budget orbit steps.
  Rational apply(const Rational& x, std::uint64_t iter_budget = 1'000'000) const;
  // h^-1(y), same budget discipline.
  Rational apply_inverse(const Rational& y, std::uint64_t iter_budget = 1'000'000) const;

  const PLMap& f() const { return f_; }
  const PLMap& g() const { return g_; }

 private:
  struct Piece {
    Rational f_lo, f_hi, g_lo, g_hi;  // matched bump intervals
    Rational alpha, beta;
    std::vector<std::pair<Rational, Rational>> h0;  // [alpha, f(alpha)] -> [beta, g(beta)]
  };
  PLMap f_, g_;
  std::vector<Piece> pieces_;
  Rational h0_at(const Piece&, const Rational&) const;
  Rational h0_inv_at(const Piece&, const Rational&) const;
};

}  // namespace ellwp
