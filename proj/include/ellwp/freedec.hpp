#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ellwp/term.hpp"

namespace ellwp {

// A finite chain of abstract points together with one partial order-
// isomorphism of the chain per generator.  Point ids are small non-negative
// integers allocated in creation order; the base point is always id 0.
// Position in `chain` is the order: chain[0] < chain[1] < ...
struct Diagram {
  std::vector<std::int16_t> chain{0};
  // maps[g] holds oriented pairs (p, p.g); both directions stay monotone.
  std::vector<std::vector<std::pair<std::int16_t, std::int16_t>>> maps;
  // Chain position of each traced word's endpoint, in trace order.
  std::vector<std::int16_t> trace;
  std::int16_t next_id = 1;

  static Diagram initial(int num_gens);

  // Chain position of a point (0 = least).  The point must be present.
  int rank(std::int16_t p) const;
  // Image of p under g (dir=+1) or g^-1 (dir=-1), or -1 when undefined.
  std::int16_t image(int gen, std::int16_t p, int dir) const;
  // True when every generator map is a partial order-isomorphism.
  bool legitimate() const;
};

// All legitimate one-step extensions defining the image of p under gen^dir:
// if the image is already forced, the diagram itself; otherwise one diagram
// per consistent placement of the new image, including placements equal to
// an existing point.  Never returns an empty set.
std::vector<Diagram> extend(const Diagram& d, std::int16_t p, int gen, int dir);

enum class VerdictKind { EqualsIdentity, NotIdentity };

struct Verdict {
  VerdictKind kind;
  // Present iff NotIdentity and the search produced a diagram witness.
  std::optional<Diagram> witness;
};

struct DecideOptions {
  std::uint64_t max_diagrams = 1'000'000;  // cap on diagrams created
  std::uint64_t max_points = 20'000'000;   // cap on chain points summed over created diagrams
  int jobs = 1;
  bool deterministic = false;  // force sequential exploration
  bool prune = true;           // drop order-isomorphic duplicates
};

struct DecideResult {
  Verdict verdict;
  JoinOfMeets normal_form;       // words traced, row-major
  std::uint64_t diagram_count;   // diagrams created during the search
};

// Decides whether t equals the identity of the free lattice-group on its
// alphabet, by exhausting diagram placements: EqualsIdentity iff the traced
// value returns to the base point in every legitimate diagram.  Throws
// ResourceExhausted when max_diagrams is hit before a verdict.
DecideResult decide(const Term& t, const DecideOptions& opts = {});

// t <= identity, via decide(t \/ e).
bool is_leq_identity(const Term& t, const DecideOptions& opts = {});

enum class Sign { Zero, Positive, Negative, Incomparable };

// Position of t against the identity in the free lattice-group.
Sign sign_of(const Term& t, const DecideOptions& opts = {});

}  // namespace ellwp
