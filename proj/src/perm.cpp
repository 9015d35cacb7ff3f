#include "ellwp/perm.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "ellwp/errors.hpp"

namespace ellwp {

namespace {

using BP = std::pair<Rational, Rational>;

Rational interpolate(const BP& a, const BP& b, const Rational& x) {
  return a.second + (b.second - a.second) * (x - a.first) / (b.first - a.first);
}

}  // namespace

PLMap PLMap::from_breakpoints(std::vector<BP> bps) {
  for (std::size_t i = 1; i < bps.size(); ++i) {
    if (!(bps[i - 1].first < bps[i].first) || !(bps[i - 1].second < bps[i].second))
      throw Error("PL map: breakpoints must increase strictly in both coordinates");
  }
  if (!bps.empty()) {
    if (bps.front().second != bps.front().first || bps.back().second != bps.back().first)
      throw Error("PL map: support must be bounded (endpoints fixed)");
  }
  // Drop interior points collinear with their neighbours.
  std::vector<BP> canon;
  for (const auto& p : bps) {
    while (canon.size() >= 2) {
      const BP& a = canon[canon.size() - 2];
      const BP& b = canon.back();
      if (interpolate(a, p, b.first) == b.second)
        canon.pop_back();
      else
        break;
    }
    canon.push_back(p);
  }
  // Trim leading/trailing identity segments, then degenerate remainders.
  auto on_diag = [](const BP& p) { return p.second == p.first; };
  while (canon.size() >= 2 && on_diag(canon[0]) && on_diag(canon[1]))
    canon.erase(canon.begin());
  while (canon.size() >= 2 && on_diag(canon[canon.size() - 1]) && on_diag(canon[canon.size() - 2]))
    canon.pop_back();
  if (canon.size() == 1) canon.clear();
  PLMap m;
  m.bps_ = std::move(canon);
  return m;
}

Rational PLMap::operator()(const Rational& x) const {
  if (bps_.empty() || x <= bps_.front().first || x >= bps_.back().first) return x;
  // Last breakpoint with bps_[i].first <= x.
  std::size_t lo = 0, hi = bps_.size() - 1;
  while (lo + 1 < hi) {
    std::size_t mid = (lo + hi) / 2;
    if (bps_[mid].first <= x)
      lo = mid;
    else
      hi = mid;
  }
  if (bps_[lo].first == x) return bps_[lo].second;
  return interpolate(bps_[lo], bps_[lo + 1], x);
}

Rational PLMap::inverse_at(const Rational& x) const {
  if (bps_.empty() || x <= bps_.front().second || x >= bps_.back().second) return x;
  std::size_t lo = 0, hi = bps_.size() - 1;
  while (lo + 1 < hi) {
    std::size_t mid = (lo + hi) / 2;
    if (bps_[mid].second <= x)
      lo = mid;
    else
      hi = mid;
  }
  if (bps_[lo].second == x) return bps_[lo].first;
  const BP& a = bps_[lo];
  const BP& b = bps_[lo + 1];
  return a.first + (b.first - a.first) * (x - a.second) / (b.second - a.second);
}

PLMap PLMap::inverse() const {
  std::vector<BP> flipped;
  flipped.reserve(bps_.size());
  for (const auto& [x, y] : bps_) flipped.emplace_back(y, x);
  return from_breakpoints(std::move(flipped));
}

namespace {

// Support hull [lo, hi] of one or two maps; nullopt when all are identity.
std::optional<std::pair<Rational, Rational>> hull(const PLMap& a, const PLMap& b) {
  std::optional<std::pair<Rational, Rational>> h;
  for (const PLMap* m : {&a, &b}) {
    if (m->is_identity()) continue;
    Rational lo = m->breakpoints().front().first;
    Rational hi = m->breakpoints().back().first;
    if (!h)
      h = {lo, hi};
    else
      h = {std::min(h->first, lo), std::max(h->second, hi)};
  }
  return h;
}

}  // namespace

PLMap compose(const PLMap& a, const PLMap& b) {
  if (a.is_identity()) return b;
  if (b.is_identity()) return a;
  auto h = hull(a, b);
  std::set<Rational> xs{h->first, h->second};
  for (const auto& [x, y] : a.breakpoints()) xs.insert(x);
  for (const auto& [x, y] : b.breakpoints()) xs.insert(a.inverse_at(x));
  std::vector<BP> bps;
  for (const auto& x : xs)
    if (x >= h->first && x <= h->second) bps.emplace_back(x, b(a(x)));
  return PLMap::from_breakpoints(std::move(bps));
}

namespace {

PLMap lattice_op(const PLMap& a, const PLMap& b, bool take_max) {
  if (a == b) return a;
  auto h = hull(a, b);
  if (!h) return PLMap{};
  std::set<Rational> xs{h->first, h->second};
  for (const auto& [x, y] : a.breakpoints())
    if (x > h->first && x < h->second) xs.insert(x);
  for (const auto& [x, y] : b.breakpoints())
    if (x > h->first && x < h->second) xs.insert(x);
  // Add crossing points: on each cell both maps are affine, so a sign change
  // of a-b across the cell pins one rational crossing inside it.
  std::vector<Rational> grid(xs.begin(), xs.end());
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    Rational d0 = a(grid[i]) - b(grid[i]);
    Rational d1 = a(grid[i + 1]) - b(grid[i + 1]);
    if ((d0 < 0 && d1 > 0) || (d0 > 0 && d1 < 0)) {
      Rational x = grid[i] + (grid[i + 1] - grid[i]) * (-d0) / (d1 - d0);
      xs.insert(x);
    }
  }
  std::vector<BP> bps;
  for (const auto& x : xs) {
    Rational va = a(x), vb = b(x);
    bps.emplace_back(x, take_max ? std::max(va, vb) : std::min(va, vb));
  }
  return PLMap::from_breakpoints(std::move(bps));
}

}  // namespace

PLMap join(const PLMap& a, const PLMap& b) { return lattice_op(a, b, true); }
PLMap meet(const PLMap& a, const PLMap& b) { return lattice_op(a, b, false); }

bool pointwise_leq(const PLMap& a, const PLMap& b) { return join(a, b) == b; }

std::vector<Bump> supports(const PLMap& a) {
  std::vector<Bump> out;
  if (a.is_identity()) return out;
  // Refine the breakpoint grid with the roots of a(x) - x, then walk cells;
  // afterwards each cell is either moved throughout or fixed throughout.
  std::set<Rational> xs;
  for (const auto& [x, y] : a.breakpoints()) xs.insert(x);
  std::vector<Rational> grid(xs.begin(), xs.end());
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    Rational d0 = a(grid[i]) - grid[i];
    Rational d1 = a(grid[i + 1]) - grid[i + 1];
    if ((d0 < 0 && d1 > 0) || (d0 > 0 && d1 < 0))
      xs.insert(grid[i] + (grid[i + 1] - grid[i]) * (-d0) / (d1 - d0));
  }
  grid.assign(xs.begin(), xs.end());
  std::optional<Rational> start;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    // A fixed grid point separates orbitals even when both adjacent cells move.
    if (start && a(grid[i]) == grid[i]) {
      out.push_back(Bump{*start, grid[i], PLMap{}});
      start.reset();
    }
    Rational mid = (grid[i] + grid[i + 1]) / 2;
    if (!start && a(mid) != mid) start = grid[i];
  }
  if (start) out.push_back(Bump{*start, grid.back(), PLMap{}});
  for (auto& bump : out) {
    std::vector<BP> piece{{bump.lo, bump.lo}};
    for (const auto& [x, y] : a.breakpoints())
      if (x > bump.lo && x < bump.hi) piece.emplace_back(x, y);
    piece.emplace_back(bump.hi, bump.hi);
    bump.piece = PLMap::from_breakpoints(std::move(piece));
  }
  return out;
}

PLMap eval_map(const Term& t, const PLAssignment& assignment) {
  switch (t.kind()) {
    case TermKind::Identity:
      return PLMap{};
    case TermKind::Gen: {
      auto it = assignment.find(t.alphabet()->name(t.gen()));
      return it == assignment.end() ? PLMap{} : it->second;
    }
    case TermKind::Inverse:
      return eval_map(t.children()[0], assignment).inverse();
    case TermKind::Product: {
      PLMap acc = eval_map(t.children()[0], assignment);
      for (std::size_t i = 1; i < t.children().size(); ++i)
        acc = compose(acc, eval_map(t.children()[i], assignment));
      return acc;
    }
    case TermKind::Join:
    case TermKind::Meet: {
      PLMap acc = eval_map(t.children()[0], assignment);
      for (std::size_t i = 1; i < t.children().size(); ++i) {
        PLMap rhs = eval_map(t.children()[i], assignment);
        acc = t.kind() == TermKind::Join ? join(acc, rhs) : meet(acc, rhs);
      }
      return acc;
    }
  }
  throw Error("unreachable term kind");
}

Rational eval_term(const Term& t, const PLAssignment& assignment, const Rational& x) {
  return eval_map(t, assignment)(x);
}

// ---------------------------------------------------------------------------
// Witness search

namespace {

class GridSampler {
 public:
  GridSampler(const WitnessOptions& opts, std::mt19937_64& rng) : opts_(opts), rng_(rng) {}

  PLMap sample() {
    for (int attempt = 0; attempt < 64; ++attempt) {
      // Sub-interval of the global support window with integer ends.
      long long glo = static_cast<long long>(opts_.support_lo);
      long long ghi = static_cast<long long>(opts_.support_hi);
      long long lo = pick(glo, ghi - 2);
      long long hi = pick(lo + 2, ghi);
      int k = static_cast<int>(pick(1, opts_.max_interior_points));
      auto xs = distinct_interior(lo, hi, k);
      auto ys = distinct_interior(lo, hi, k);
      if (xs.size() != static_cast<std::size_t>(k) || ys.size() != static_cast<std::size_t>(k))
        continue;
      std::vector<BP> bps{{Rational(lo), Rational(lo)}};
      bool moved = false;
      for (int i = 0; i < k; ++i) {
        if (xs[i] != ys[i]) moved = true;
        bps.emplace_back(xs[i], ys[i]);
      }
      bps.emplace_back(Rational(hi), Rational(hi));
      if (!moved) continue;
      return PLMap::from_breakpoints(std::move(bps));
    }
    throw Error("witness sampler failed to draw a non-identity map");
  }

  Rational grid_point(const Rational& lo, const Rational& hi) {
    // Any rational i/d strictly inside (lo, hi) with d <= grid_denominator.
    for (int attempt = 0; attempt < 256; ++attempt) {
      long long d = pick(1, opts_.grid_denominator);
      Rational flo = lo * d, fhi = hi * d;
      long long ilo = static_cast<long long>(boost::multiprecision::numerator(flo) /
                                             boost::multiprecision::denominator(flo)) + 1;
      long long ihi = static_cast<long long>(boost::multiprecision::numerator(fhi) /
                                             boost::multiprecision::denominator(fhi));
      if (Rational(ihi) == fhi) --ihi;
      if (ilo > ihi) continue;
      Rational r(pick(ilo, ihi), d);
      if (r > lo && r < hi) return r;
    }
    return (lo + hi) / 2;
  }

 private:
  long long pick(long long lo, long long hi) {
    return std::uniform_int_distribution<long long>(lo, hi)(rng_);
  }

  std::vector<Rational> distinct_interior(long long lo, long long hi, int k) {
    std::set<Rational> vals;
    for (int attempt = 0; attempt < 64 && static_cast<int>(vals.size()) < k; ++attempt) {
      long long d = pick(1, opts_.grid_denominator);
      long long num = pick(lo * d + 1, hi * d - 1);
      vals.insert(Rational(num, d));
    }
    return {vals.begin(), vals.end()};
  }

  const WitnessOptions& opts_;
  std::mt19937_64& rng_;
};

}  // namespace

std::optional<PermWitness> find_witness(const Term& t, std::uint64_t budget,
                                        std::uint64_t seed, const WitnessOptions& opts) {
  std::mt19937_64 rng(seed);
  GridSampler sampler(opts, rng);
  const auto& names = t.alphabet()->names();
  for (std::uint64_t i = 0; i < budget; ++i) {
    PLAssignment assignment;
    for (const auto& n : names) assignment[n] = sampler.sample();
    PLMap image = eval_map(t, assignment);
    if (image.is_identity()) continue;
    auto bumps = supports(image);
    Rational x = (bumps[0].lo + bumps[0].hi) / 2;
    return PermWitness{std::move(assignment), x, image(x)};
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Lazy conjugator

namespace {

// Validates a monotone fragment with prescribed corner points.
void check_fragment(const std::vector<BP>& h0, const Rational& x0, const Rational& y0,
                    const Rational& x1, const Rational& y1) {
  if (h0.size() < 2) throw Error("conjugator: seed fragment needs two breakpoints");
  for (std::size_t i = 1; i < h0.size(); ++i)
    if (!(h0[i - 1].first < h0[i].first) || !(h0[i - 1].second < h0[i].second))
      throw Error("conjugator: seed fragment must increase strictly");
  if (h0.front() != BP{x0, y0} || h0.back() != BP{x1, y1})
    throw Error("conjugator: seed fragment endpoints must be (alpha, beta) and "
                "(f(alpha), g(beta))");
}

Rational fragment_eval(const std::vector<BP>& f, const Rational& x) {
  for (std::size_t i = 1; i < f.size(); ++i)
    if (x <= f[i].first) return interpolate(f[i - 1], f[i], x);
  return f.back().second;
}

Rational fragment_eval_inv(const std::vector<BP>& f, const Rational& y) {
  for (std::size_t i = 1; i < f.size(); ++i)
    if (y <= f[i].second) {
      const BP& a = f[i - 1];
      const BP& b = f[i];
      return a.first + (b.first - a.first) * (y - a.second) / (b.second - a.second);
    }
  return f.back().first;
}

void require_positive(const PLMap& m, const char* who) {
  if (m.is_identity() || !pointwise_leq(PLMap{}, m))
    throw Error(std::string("conjugator: ") + who + " must be strictly positive");
}

}  // namespace

LazyConjugator LazyConjugator::make(const PLMap& f, const PLMap& g, const Rational& alpha,
                                    const Rational& beta,
                                    std::optional<std::vector<BP>> h0) {
  require_positive(f, "f");
  require_positive(g, "g");
  auto fb = supports(f);
  auto gb = supports(g);
  if (fb.size() != 1 || gb.size() != 1)
    throw Error("conjugator: f and g must each have a single bump");
  if (!(alpha > fb[0].lo && alpha < fb[0].hi))
    throw Error("conjugator: alpha must lie inside supp(f)");
  if (!(beta > gb[0].lo && beta < gb[0].hi))
    throw Error("conjugator: beta must lie inside supp(g)");
  std::vector<BP> frag = h0 ? std::move(*h0) : std::vector<BP>{{alpha, beta}, {f(alpha), g(beta)}};
  check_fragment(frag, alpha, beta, f(alpha), g(beta));
  LazyConjugator c;
  c.f_ = f;
  c.g_ = g;
  c.pieces_.push_back(Piece{fb[0].lo, fb[0].hi, gb[0].lo, gb[0].hi, alpha, beta, std::move(frag)});
  return c;
}

LazyConjugator LazyConjugator::matched(const PLMap& f, const PLMap& g) {
  require_positive(f, "f");
  require_positive(g, "g");
  auto fb = supports(f);
  auto gb = supports(g);
  if (fb.size() != gb.size() || fb.empty())
    throw Error("conjugator: bump counts must match and be positive");
  LazyConjugator c;
  c.f_ = f;
  c.g_ = g;
  for (std::size_t j = 0; j < fb.size(); ++j) {
    Rational alpha = (fb[j].lo + fb[j].hi) / 2;
    Rational beta = (gb[j].lo + gb[j].hi) / 2;
    c.pieces_.push_back(Piece{fb[j].lo, fb[j].hi, gb[j].lo, gb[j].hi, alpha, beta,
                              {{alpha, beta}, {f(alpha), g(beta)}}});
  }
  // Gaps between consecutive bumps must transport affinely; a degenerate gap
  // on one side forces a degenerate gap on the other.
  for (std::size_t j = 0; j + 1 < fb.size(); ++j) {
    bool f_flat = fb[j].hi == fb[j + 1].lo;
    bool g_flat = gb[j].hi == gb[j + 1].lo;
    if (f_flat != g_flat)
      throw Error("conjugator: gap structure of f and g is incompatible");
  }
  return c;
}

Rational LazyConjugator::h0_at(const Piece& p, const Rational& x) const {
  return fragment_eval(p.h0, x);
}

Rational LazyConjugator::h0_inv_at(const Piece& p, const Rational& y) const {
  return fragment_eval_inv(p.h0, y);
}

Rational LazyConjugator::apply(const Rational& x, std::uint64_t iter_budget) const {
  // Locate x against the bump list of f.
  if (x <= pieces_.front().f_lo) return x + (pieces_.front().g_lo - pieces_.front().f_lo);
  if (x >= pieces_.back().f_hi) return x + (pieces_.back().g_hi - pieces_.back().f_hi);
  for (std::size_t j = 0; j < pieces_.size(); ++j) {
    const Piece& p = pieces_[j];
    if (x > p.f_lo && x < p.f_hi) {
      // Walk the orbit of alpha to find m with alpha.f^m <= x < alpha.f^(m+1),
      // then h(x) = g^m(h0(f^-m(x))).
      std::uint64_t steps = 0;
      auto tick = [&steps, iter_budget]() {
        if (++steps > iter_budget)
          throw IterationLimit("conjugator: orbit search exceeded iteration budget");
      };
      long long m = 0;
      Rational cur = p.alpha;
      if (x >= p.alpha) {
        while (f_(cur) <= x) {
          cur = f_(cur);
          ++m;
          tick();
        }
      } else {
        while (cur > x) {
          cur = f_.inverse_at(cur);
          --m;
          tick();
        }
      }
      Rational z = x;
      for (long long i = 0; i < (m >= 0 ? m : -m); ++i) {
        z = m >= 0 ? f_.inverse_at(z) : f_(z);
        tick();
      }
      Rational w = h0_at(p, z);
      for (long long i = 0; i < (m >= 0 ? m : -m); ++i) {
        w = m >= 0 ? g_(w) : g_.inverse_at(w);
        tick();
      }
      return w;
    }
    // Gap between bump j and bump j+1: affine transport.
    if (j + 1 < pieces_.size() && x >= p.f_hi && x <= pieces_[j + 1].f_lo) {
      const Piece& q = pieces_[j + 1];
      if (p.f_hi == q.f_lo) return p.g_hi;
      return p.g_hi + (q.g_lo - p.g_hi) * (x - p.f_hi) / (q.f_lo - p.f_hi);
    }
  }
  return x;  // bump boundary points are fixed relative to the transport
}

Rational LazyConjugator::apply_inverse(const Rational& y, std::uint64_t iter_budget) const {
  if (y <= pieces_.front().g_lo) return y - (pieces_.front().g_lo - pieces_.front().f_lo);
  if (y >= pieces_.back().g_hi) return y - (pieces_.back().g_hi - pieces_.back().f_hi);
  for (std::size_t j = 0; j < pieces_.size(); ++j) {
    const Piece& p = pieces_[j];
    if (y > p.g_lo && y < p.g_hi) {
      std::uint64_t steps = 0;
      auto tick = [&steps, iter_budget]() {
        if (++steps > iter_budget)
          throw IterationLimit("conjugator: orbit search exceeded iteration budget");
      };
      long long m = 0;
      Rational cur = p.beta;
      if (y >= p.beta) {
        while (g_(cur) <= y) {
          cur = g_(cur);
          ++m;
          tick();
        }
      } else {
        while (cur > y) {
          cur = g_.inverse_at(cur);
          --m;
          tick();
        }
      }
      Rational z = y;
      for (long long i = 0; i < (m >= 0 ? m : -m); ++i) {
        z = m >= 0 ? g_.inverse_at(z) : g_(z);
        tick();
      }
      Rational w = h0_inv_at(p, z);
      for (long long i = 0; i < (m >= 0 ? m : -m); ++i) {
        w = m >= 0 ? f_(w) : f_.inverse_at(w);
        tick();
      }
      return w;
    }
    if (j + 1 < pieces_.size() && y >= p.g_hi && y <= pieces_[j + 1].g_lo) {
      const Piece& q = pieces_[j + 1];
      if (p.g_hi == q.g_lo) return p.f_hi;
      return p.f_hi + (q.f_lo - p.f_hi) * (y - p.g_hi) / (q.g_lo - p.g_hi);
    }
  }
  return y;
}

}  // namespace ellwp
