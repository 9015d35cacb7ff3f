#include "ellwp/freedec.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <string>
#include <thread>
#include <unordered_set>

#include "ellwp/errors.hpp"

namespace ellwp {

Diagram Diagram::initial(int num_gens) {
  Diagram d;
  d.maps.resize(static_cast<std::size_t>(num_gens));
  return d;
}

int Diagram::rank(std::int16_t p) const {
  for (std::size_t i = 0; i < chain.size(); ++i)
    if (chain[i] == p) return static_cast<int>(i);
  throw Error("diagram: point not on chain");
}

std::int16_t Diagram::image(int gen, std::int16_t p, int dir) const {
  for (const auto& [a, b] : maps[static_cast<std::size_t>(gen)]) {
    if (dir > 0 && a == p) return b;
    if (dir < 0 && b == p) return a;
  }
  return -1;
}

bool Diagram::legitimate() const {
  for (const auto& pairs : maps) {
    for (std::size_t i = 0; i < pairs.size(); ++i)
      for (std::size_t j = i + 1; j < pairs.size(); ++j) {
        int da = rank(pairs[i].first), db = rank(pairs[j].first);
        int ia = rank(pairs[i].second), ib = rank(pairs[j].second);
        if (da == db || ia == ib) return false;
        if ((da < db) != (ia < ib)) return false;
      }
  }
  return true;
}

std::vector<Diagram> extend(const Diagram& d, std::int16_t p, int gen, int dir) {
  if (d.image(gen, p, dir) != -1) return {d};

  // Orient every existing pair of this generator the way we are applying it;
  // monotonicity then pins the new image strictly between the images of the
  // nearest defined neighbours of p.
  int L = static_cast<int>(d.chain.size());
  int lo = -1, hi = L;  // exclusive bounds, as chain positions
  int rp = d.rank(p);
  for (const auto& [a, b] : d.maps[static_cast<std::size_t>(gen)]) {
    std::int16_t dom = dir > 0 ? a : b;
    std::int16_t img = dir > 0 ? b : a;
    if (d.rank(dom) < rp)
      lo = std::max(lo, d.rank(img));
    else
      hi = std::min(hi, d.rank(img));
  }

  auto with_pair = [&](Diagram dd, std::int16_t img) {
    auto& pairs = dd.maps[static_cast<std::size_t>(gen)];
    pairs.push_back(dir > 0 ? std::pair{p, img} : std::pair{img, p});
    return dd;
  };

  std::vector<Diagram> out;
  // Image equal to an existing point strictly inside the allowed window.
  for (int r = lo + 1; r < hi && r < L; ++r)
    if (r >= 0) out.push_back(with_pair(d, d.chain[r]));
  // Image as a fresh point in a gap: after position r (r = -1 puts it below
  // the whole chain, r = L-1 above it).
  for (int r = std::max(lo, -1); r <= std::min(hi - 1, L - 1); ++r) {
    Diagram dd = d;
    std::int16_t id = dd.next_id++;
    dd.chain.insert(dd.chain.begin() + (r + 1), id);
    out.push_back(with_pair(std::move(dd), id));
  }
  return out;
}

namespace {

struct WordPlan {
  std::vector<std::pair<int, int>> letters;  // (gen, +1/-1)
};

std::vector<WordPlan> plan_words(const JoinOfMeets& jm) {
  std::vector<WordPlan> plans;
  for (const auto& row : jm.rows)
    for (const auto& w : row) {
      WordPlan plan;
      for (const auto& l : w.letters()) {
        int dir = l.exp > 0 ? 1 : -1;
        long long n = l.exp > 0 ? l.exp : -l.exp;
        for (long long i = 0; i < n; ++i) plan.letters.emplace_back(l.gen, dir);
      }
      plans.push_back(std::move(plan));
    }
  return plans;
}

// Ranks are what future branching and the final evaluation see, so two
// diagrams with the same rank signature are interchangeable mid-search.
std::string signature(const Diagram& d) {
  std::string sig;
  sig.reserve(8 + 4 * d.chain.size());
  auto put = [&sig](int v) {
    sig.push_back(static_cast<char>(v & 0xff));
    sig.push_back(static_cast<char>((v >> 8) & 0xff));
  };
  put(static_cast<int>(d.chain.size()));
  put(d.rank(0));
  for (const auto& pairs : d.maps) {
    std::vector<std::pair<int, int>> rp;
    rp.reserve(pairs.size());
    for (const auto& [a, b] : pairs) rp.emplace_back(d.rank(a), d.rank(b));
    std::sort(rp.begin(), rp.end());
    put(-1);
    for (const auto& [a, b] : rp) {
      put(a);
      put(b);
    }
  }
  put(-2);
  for (std::int16_t t : d.trace) put(t >= 0 ? d.rank(static_cast<std::int16_t>(t)) : -3);
  return sig;
}

struct SearchShared {
  const std::vector<WordPlan>& words;
  const std::vector<std::size_t>& row_sizes;
  DecideOptions opts;
  std::atomic<std::uint64_t> created{0};
  std::atomic<std::uint64_t> points{0};
  std::atomic<bool> found{false};
  std::atomic<bool> exhausted{false};
  std::mutex witness_mu;
  std::optional<Diagram> witness;

  // Charges n diagrams carrying pts chain points; false once a budget is hit.
  bool charge(std::uint64_t n, std::uint64_t pts) {
    std::uint64_t made = created.fetch_add(n, std::memory_order_relaxed) + n;
    std::uint64_t held = points.fetch_add(pts, std::memory_order_relaxed) + pts;
    return made <= opts.max_diagrams && held <= opts.max_points;
  }
};

// Endpoint of the whole term in a fully traced diagram: max over rows of the
// min over the row's words, as chain positions.
bool value_is_base(const Diagram& d, const std::vector<std::size_t>& row_sizes) {
  int best = -1;
  std::size_t k = 0;
  for (std::size_t i = 0; i < row_sizes.size(); ++i) {
    int row_min = static_cast<int>(d.chain.size());
    for (std::size_t j = 0; j < row_sizes[i]; ++j, ++k)
      row_min = std::min(row_min, d.rank(d.trace[k]));
    best = std::max(best, row_min);
  }
  return best == d.rank(0);
}

struct Frame {
  Diagram d;
  std::size_t word;
  std::size_t letter;
  std::int16_t cur;
};

// Depth-first exploration with an explicit stack.  Stops early on the first
// fully traced diagram whose value leaves the base point.
void explore(SearchShared& sh, std::vector<Frame> stack) {
  std::vector<std::unordered_set<std::string>> seen(sh.words.size() + 1);
  while (!stack.empty()) {
    if (sh.found.load(std::memory_order_relaxed) ||
        sh.exhausted.load(std::memory_order_relaxed))
      return;
    Frame f = std::move(stack.back());
    stack.pop_back();

    if (f.word == sh.words.size()) {
      if (!value_is_base(f.d, sh.row_sizes)) {
        std::lock_guard<std::mutex> lk(sh.witness_mu);
        if (!sh.found.exchange(true)) sh.witness = std::move(f.d);
        return;
      }
      continue;
    }
    const auto& letters = sh.words[f.word].letters;
    if (f.letter == letters.size()) {
      f.d.trace.push_back(f.cur);
      if (sh.opts.prune && !seen[f.word + 1].insert(signature(f.d)).second) continue;
      stack.push_back(Frame{std::move(f.d), f.word + 1, 0, 0});
      continue;
    }
    auto [gen, dir] = letters[f.letter];
    std::vector<Diagram> exts = extend(f.d, f.cur, gen, dir);
    std::uint64_t pts = 0;
    for (const auto& e : exts) pts += e.chain.size();
    if (!sh.charge(exts.size(), pts)) {
      sh.exhausted.store(true, std::memory_order_relaxed);
      return;
    }
    for (auto& e : exts) {
      std::int16_t nxt = e.image(gen, f.cur, dir);
      stack.push_back(Frame{std::move(e), f.word, f.letter + 1, nxt});
    }
  }
}

}  // namespace

DecideResult decide(const Term& t, const DecideOptions& opts) {
  JoinOfMeets jm = normalize(t);
  std::vector<WordPlan> words = plan_words(jm);
  std::vector<std::size_t> row_sizes;
  for (const auto& row : jm.rows) row_sizes.push_back(row.size());

  SearchShared sh{words, row_sizes, opts};
  Diagram init = Diagram::initial(t.alphabet()->size());

  int jobs = (opts.deterministic || opts.jobs <= 1) ? 1 : opts.jobs;
  if (jobs == 1) {
    explore(sh, {Frame{init, 0, 0, 0}});
  } else {
    // Split the frontier after the first traced word across workers; the
    // verdict does not depend on who finds a witness first.  normalize always
    // yields at least one word, so words[0] exists.
    std::vector<Diagram> frontier;
    {
      const auto& letters = words[0].letters;
      std::vector<Frame> stack{Frame{init, 0, 0, 0}};
      std::unordered_set<std::string> seen;
      while (!stack.empty()) {
        Frame f = std::move(stack.back());
        stack.pop_back();
        if (f.letter == letters.size()) {
          f.d.trace.push_back(f.cur);
          if (opts.prune && !seen.insert(signature(f.d)).second) continue;
          frontier.push_back(std::move(f.d));
          continue;
        }
        auto [gen, dir] = letters[f.letter];
        std::vector<Diagram> exts = extend(f.d, f.cur, gen, dir);
        std::uint64_t pts = 0;
        for (const auto& e : exts) pts += e.chain.size();
        if (!sh.charge(exts.size(), pts)) throw ResourceExhausted("diagram budget exhausted");
        for (auto& e : exts) {
          std::int16_t nxt = e.image(gen, f.cur, dir);
          stack.push_back(Frame{std::move(e), 0, f.letter + 1, nxt});
        }
      }
    }
    const std::size_t start_word = 1;
    std::vector<std::thread> pool;
    std::size_t per = (frontier.size() + jobs - 1) / static_cast<std::size_t>(jobs);
    for (int j = 0; j < jobs; ++j) {
      std::size_t a = std::min(frontier.size(), static_cast<std::size_t>(j) * per);
      std::size_t b = std::min(frontier.size(), a + per);
      if (a == b) continue;
      std::vector<Frame> part;
      for (std::size_t i = a; i < b; ++i)
        part.push_back(Frame{frontier[i], start_word, 0, 0});
      pool.emplace_back([&sh, part = std::move(part)]() mutable {
        explore(sh, std::move(part));
      });
    }
    for (auto& th : pool) th.join();
  }

  if (sh.exhausted.load() && !sh.found.load()) {
    bool by_count = sh.created.load() > opts.max_diagrams;
    throw ResourceExhausted(
        by_count ? "diagram budget exhausted (max_diagrams = " +
                       std::to_string(opts.max_diagrams) + ")"
                 : "diagram budget exhausted (max_points = " +
                       std::to_string(opts.max_points) + ")");
  }

  DecideResult res{Verdict{VerdictKind::EqualsIdentity, std::nullopt}, std::move(jm),
                   sh.created.load()};
  if (sh.found.load()) {
    res.verdict.kind = VerdictKind::NotIdentity;
    res.verdict.witness = std::move(sh.witness);
  }
  return res;
}

bool is_leq_identity(const Term& t, const DecideOptions& opts) {
  Term test = Term::join({t, Term::identity(t.alphabet())});
  return decide(test, opts).verdict.kind == VerdictKind::EqualsIdentity;
}

Sign sign_of(const Term& t, const DecideOptions& opts) {
  if (decide(t, opts).verdict.kind == VerdictKind::EqualsIdentity) return Sign::Zero;
  Term e = Term::identity(t.alphabet());
  bool geq = decide(Term::meet({t, e}), opts).verdict.kind == VerdictKind::EqualsIdentity;
  if (geq) return Sign::Positive;
  bool leq = decide(Term::join({t, e}), opts).verdict.kind == VerdictKind::EqualsIdentity;
  if (leq) return Sign::Negative;
  return Sign::Incomparable;
}

}  // namespace ellwp
