// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "compact_ilp/bad_tuples.hpp"
#include "compact_ilp/corpus.hpp"
#include "compact_ilp/exact.hpp"
#include "compact_ilp/failure_oracle.hpp"
#include "compact_ilp/modelers.hpp"
#include "compact_ilp/path_tables.hpp"
#include "compact_ilp/protocols.hpp"
#include "compact_ilp/solve.hpp"
#include "compact_ilp/string_store.hpp"
#include "test_support.hpp"

namespace ci = compact_ilp;
using ci::BigInt;
using ci::Graph;
using ci::IntegerProgram;
using ci::SeededRng;
using ci::Sense;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  std::vector<std::string> problems;

  void fail(const std::string& why) {
    pass = false;
    if (problems.size() < 5) problems.push_back(why);
  }
};

// ---- small-program families --------------------------------------------------

struct SmallProgram {
  std::vector<std::vector<long>> a;
  std::vector<long> b;
};

/// Every program with m <= 2 rows, n <= 3 columns, entries in [-2, 2] and
/// rhs in [-4, 4].
std::vector<SmallProgram> small_family() {
  std::vector<SmallProgram> out;
  for (std::size_t m = 1; m <= 2; ++m)
    for (std::size_t n = 1; n <= 3; ++n) {
      const std::size_t cells = m * n;
      std::uint64_t total = 1;
      for (std::size_t i = 0; i < cells; ++i) total *= 5;
      for (std::size_t i = 0; i < m; ++i) total *= 9;
      for (std::uint64_t code = 0; code < total; ++code) {
        std::uint64_t c = code;
        SmallProgram p{std::vector<std::vector<long>>(m, std::vector<long>(n)), std::vector<long>(m)};
        for (std::size_t i = 0; i < m; ++i)
          for (std::size_t j = 0; j < n; ++j) {
            p.a[i][j] = static_cast<long>(c % 5) - 2;
            c /= 5;
          }
        for (std::size_t i = 0; i < m; ++i) {
          p.b[i] = static_cast<long>(c % 9) - 4;
          c /= 9;
        }
        out.push_back(std::move(p));
      }
    }
  return out;
}

IntegerProgram to_program(const SmallProgram& p, Sense sense) {
  return ci::testing::program_from_rows(p.a, p.b, sense, p.a[0].size());
}

BigInt max_entry(const std::vector<BigInt>& x) {
  BigInt m = 0;
  for (const auto& v : x) m = std::max(m, ci::abs_value(v));
  return m;
}

// ---- set cover helpers -------------------------------------------------------

bool cover_exists(const ci::SetCoverInstance& inst) {
  const std::size_t f = inst.sets.size();
  const std::uint32_t full = (1u << inst.universe_size) - 1;
  std::vector<std::uint32_t> masks;
  for (const auto& s : inst.sets) {
    std::uint32_t m = 0;
    for (auto e : s) m |= 1u << e;
    masks.push_back(m);
  }
  for (std::uint32_t pick = 0; pick < (1u << f); ++pick) {
    if (static_cast<std::size_t>(__builtin_popcount(pick)) > inst.budget) continue;
    std::uint32_t covered = 0;
    for (std::size_t i = 0; i < f; ++i)
      if (pick >> i & 1) covered |= masks[i];
    if (covered == full) return true;
  }
  return false;
}

/// Every family of at most six distinct subsets of a universe of size u <= 5
/// with every budget in [0, |F|]. For u = 5 one family per relabeling class of
/// the universe is kept; u <= 4 is enumerated without reduction.
std::vector<ci::SetCoverInstance> set_cover_family() {
  std::vector<ci::SetCoverInstance> out;
  auto add_all_budgets = [&](std::size_t u, const std::vector<std::uint32_t>& family) {
    for (std::size_t l = 0; l <= family.size(); ++l) {
      ci::SetCoverInstance inst;
      inst.universe_size = u;
      for (auto mask : family) {
        std::vector<std::size_t> s;
        for (std::size_t e = 0; e < u; ++e)
          if (mask >> e & 1) s.push_back(e);
        inst.sets.push_back(s);
      }
      inst.budget = l;
      out.push_back(std::move(inst));
    }
  };
  for (std::size_t u = 0; u <= 5; ++u) {
    const std::uint32_t subsets = 1u << u;
    std::vector<std::vector<std::uint32_t>> relabel;
    if (u == 5) {
      std::vector<std::size_t> perm(u);
      std::iota(perm.begin(), perm.end(), 0);
      do {
        std::vector<std::uint32_t> table(subsets);
        for (std::uint32_t mask = 0; mask < subsets; ++mask)
          for (std::size_t e = 0; e < u; ++e)
            if (mask >> e & 1) table[mask] |= 1u << perm[e];
        relabel.push_back(std::move(table));
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
    auto canonical = [&](const std::vector<std::uint32_t>& family) {
      std::vector<std::uint32_t> image(family.size());
      for (const auto& table : relabel) {
        for (std::size_t i = 0; i < family.size(); ++i) image[i] = table[family[i]];
        std::sort(image.begin(), image.end());
        if (image < family) return false;
      }
      return true;
    };
    std::function<void(std::uint32_t, std::vector<std::uint32_t>&)> rec = [&](std::uint32_t next,
                                                                              std::vector<std::uint32_t>& family) {
      if (canonical(family)) add_all_budgets(u, family);
      if (family.size() == 6) return;
      for (std::uint32_t s = next; s < subsets; ++s) {
        family.push_back(s);
        rec(s + 1, family);
        family.pop_back();
      }
    };
    std::vector<std::uint32_t> family;
    rec(0, family);
  }
  return out;
}

// ---- criteria ----------------------------------------------------------------

Outcome criterion1() {
  Outcome o;
  std::size_t programs = 0;
  auto check = [&](const ci::SetCoverInstance& inst) {
    for (bool binary : {false, true}) {
      const auto p = ci::set_cover_to_ilp(inst, binary);
      const auto d = ci::compute_delta(p);
      ++programs;
      if (p.num_constraints != inst.universe_size + 1) o.fail("m != |U|+1");
      const BigInt expected_delta = inst.sets.empty() ? 0 : 1;
      if (d.delta_a != expected_delta) o.fail("delta " + d.delta_a.str());
      const BigInt bound = std::max<std::size_t>(1, inst.budget);
      if (d.b_inf_norm > bound) o.fail("||b|| exceeds max(1, l)");
      if (inst.budget <= inst.universe_size && inst.universe_size > 0 && bound > inst.universe_size)
        o.fail("max(1, l) exceeds |U|");
    }
  };
  for (const auto& inst : set_cover_family()) check(inst);
  for (std::uint64_t seed = 0; seed < 3000; ++seed) {
    ci::GenSpec spec{ci::Variant::SetCover, static_cast<ci::GenMode>(seed % 3), 1 + seed % 8, seed % 9,
                     1 + seed % 8, static_cast<std::uint32_t>(20 + seed % 60), seed};
    check(std::get<ci::SetCoverInstance>(ci::generate(spec)));
  }
  o.detail = std::to_string(programs) + " programs";
  return o;
}

Outcome criterion2() {
  Outcome o;
  std::size_t instances = 0, yes = 0;
  for (const auto& inst : set_cover_family()) {
    const bool truth = cover_exists(inst);
    const bool general = ci::brute_force_feasibility(ci::set_cover_to_ilp(inst, false), BigInt(inst.budget)).feasible();
    const bool binary = ci::brute_force_feasibility(ci::set_cover_to_ilp(inst, true), BigInt(1)).feasible();
    ++instances;
    yes += truth;
    if (general != truth || binary != truth)
      o.fail("u=" + std::to_string(inst.universe_size) + " |F|=" + std::to_string(inst.sets.size()) +
             " l=" + std::to_string(inst.budget));
  }
  o.detail = std::to_string(instances) + " instances (" + std::to_string(yes) + " yes), exhaustive for u<=5, |F|<=6, u=5 up to relabeling";
  return o;
}

constexpr long kBox = 12;

Outcome criterion3() {
  Outcome o;
  std::size_t count = 0, feasible = 0;
  for (const auto& sp : small_family()) {
    const auto p = to_program(sp, Sense::LessEq);
    const auto q = ci::to_equality_form(p);
    const auto dp = ci::compute_delta(p), dq = ci::compute_delta(q);
    ++count;
    if (q.num_constraints != p.num_constraints || q.num_vars != p.num_vars + p.num_constraints)
      o.fail("shape");
    if (dq.delta_a != std::max(BigInt(1), dp.delta_a)) o.fail("delta law");
    const auto box = ci::brute_force_feasibility(p, BigInt(kBox));
    const auto lat = ci::lattice_feasibility(q);
    if (lat.status == ci::SolveStatus::BoundExhausted) {
      o.fail("lattice node cap");
      continue;
    }
    if (box.feasible() != lat.feasible()) {
      o.fail("feasibility differs");
      continue;
    }
    if (lat.feasible()) {
      ++feasible;
      auto x = lat.integer_certificate();
      if (!ci::testing::rows_hold(q, x)) o.fail("equality certificate");
      x.resize(p.num_vars);
      if (!ci::testing::rows_hold(p, x)) o.fail("projected certificate");
    }
  }
  o.detail = std::to_string(count) + " programs (" + std::to_string(feasible) +
             " feasible), brute box " + std::to_string(kBox) + " vs lattice on equality form";
  return o;
}

BigInt brute_min_weight(const Graph& g, const std::vector<BigInt>& w) {
  BigInt best = -1;
  for (std::uint32_t mask = 0; mask < (1u << g.num_vertices()); ++mask) {
    bool ok = true;
    for (const auto& [u, v] : g.edges()) ok = ok && ((mask >> u & 1) || (mask >> v & 1));
    if (!ok) continue;
    BigInt total = 0;
    for (std::size_t v = 0; v < g.num_vertices(); ++v)
      if (mask >> v & 1) total += w[v];
    if (best < 0 || total < best) best = total;
  }
  return best;
}

Outcome criterion4() {
  Outcome o;
  SeededRng rng(4);
  std::vector<Graph> graphs;
  for (std::size_t n = 1; n <= 5; ++n)
    for (auto& g : ci::testing::all_graphs(n)) graphs.push_back(std::move(g));
  const std::size_t small = graphs.size();
  for (int i = 0; i < 50; ++i) graphs.push_back(ci::random_graph(rng, 6 + rng.below(2), 45));
  std::size_t decisions = 0, weightings = 0;
  for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
    const Graph& g = graphs[gi];
    const std::size_t n = g.num_vertices();
    std::vector<std::vector<BigInt>> weight_sets;
    if (n <= 4) {
      std::size_t total = 1;
      for (std::size_t v = 0; v < n; ++v) total *= 3;
      for (std::size_t code = 0; code < total; ++code) {
        std::vector<BigInt> w;
        for (std::size_t v = 0, c = code; v < n; ++v, c /= 3) w.push_back(1 + c % 3);
        weight_sets.push_back(w);
      }
    } else {
      weight_sets.push_back(std::vector<BigInt>(n, BigInt(1)));
      for (int r = 0; r < 4; ++r) {
        std::vector<BigInt> w;
        for (std::size_t v = 0; v < n; ++v) w.push_back(1 + rng.below(3));
        weight_sets.push_back(w);
      }
    }
    const auto y = ci::vc_2approx(g);
    const BigInt k = brute_min_weight(g, std::vector<BigInt>(n, BigInt(1)));
    for (const auto& w : weight_sets) {
      ++weightings;
      const BigInt opt = brute_min_weight(g, w);
      BigInt total = 0;
      for (const auto& v : w) total += v;
      for (BigInt l = 0; l <= total; ++l) {
        ci::WvcInstance inst{g, w, l};
        const auto milp = ci::wvc_to_milp(inst, y);
        const auto bin = ci::wvc_to_binary_ilp(inst, y);
        ++decisions;
        if (milp.num_constraints != y.vertices.size() + 1 || bin.num_constraints != y.vertices.size() + 1)
          o.fail("constraint count");
        if (milp.integral_count() != y.vertices.size() || BigInt(y.vertices.size()) > 2 * k)
          o.fail("integral count");
        if (!ci::wvc_entry_audit(inst, bin).within_bound) o.fail("entry bound");
        const bool truth = opt <= l;
        const bool a = ci::milp_feasibility(milp).feasible();
        const bool b = ci::brute_force_feasibility(bin, BigInt(1)).feasible();
        if (a != truth || b != truth) o.fail("verdict mismatch on graph " + std::to_string(gi) + " l=" + l.str());
      }
    }
  }
  o.detail = std::to_string(small) + " graphs on <=5 vertices + 50 random, " + std::to_string(weightings) +
             " weightings (all of {1,2,3}^V for n<=4), " + std::to_string(decisions) + " decisions";
  return o;
}

Outcome criterion5() {
  Outcome o;
  std::size_t count = 0, feasible = 0;
  BigInt widest = 0;
  auto compare = [&](const IntegerProgram& p, long box, const std::string& tag) {
    const auto lat = ci::lattice_feasibility(p);
    auto brute = ci::brute_force_feasibility(p, BigInt(box));
    // A feasible verdict outside the box is re-checked in a box that holds it.
    if (lat.feasible() && !brute.feasible() && max_entry(lat.integer_certificate()) > box)
      brute = ci::brute_force_feasibility(p, max_entry(lat.integer_certificate()));
    ++count;
    if (lat.status == ci::SolveStatus::BoundExhausted) return o.fail(tag + ": lattice node cap");
    if (lat.feasible() != brute.feasible()) {
      std::ostringstream why;
      why << tag << ": lattice " << lat.feasible() << " brute " << brute.feasible();
      if (lat.feasible()) why << " (lattice certificate max entry " << max_entry(lat.integer_certificate()) << ")";
      return o.fail(why.str());
    }
    if (lat.feasible()) {
      ++feasible;
      const auto x = lat.integer_certificate();
      widest = std::max(widest, max_entry(x));
      if (!ci::testing::rows_hold(p, x)) o.fail(tag + ": lattice certificate");
      if (!ci::testing::rows_hold(p, brute.integer_certificate())) o.fail(tag + ": brute certificate");
    }
  };
  for (const auto& sp : small_family()) compare(to_program(sp, Sense::Eq), kBox, "exhaustive");
  const std::size_t exhaustive = count;
  SeededRng rng(5);
  for (int i = 0; i < 500; ++i) {
    const auto p = ci::testing::random_program(rng, 1 + rng.below(3), 1 + rng.below(5), 2, 4, Sense::Eq);
    compare(p, 8, "random " + std::to_string(i));
  }
  o.detail = std::to_string(exhaustive) + " exhaustive programs + 500 random, " + std::to_string(feasible) +
             " feasible, largest certificate entry " + widest.str();
  return o;
}

Outcome criterion6() {
  Outcome o;
  SeededRng rng(6);
  std::size_t trials = 0, within = 0, logged = 0;
  std::ostringstream log;
  while (trials < 400) {
    const auto m = 1 + rng.below(2), n = 2 + rng.below(3);
    const auto p = ci::testing::random_program(rng, m, n, 3, 30, Sense::Eq);
    const auto before = ci::lattice_feasibility(p);
    if (!before.feasible()) continue;
    ++trials;
    const auto red = ci::reduce_rhs(p);
    if (red.lp_infeasible) {
      o.fail("LP reported infeasible on a feasible program");
      continue;
    }
    const auto after = ci::lattice_feasibility(red.program);
    if (!after.feasible()) {
      o.fail("reduced program lost feasibility");
      continue;
    }
    auto x = after.integer_certificate();
    for (std::size_t j = 0; j < x.size(); ++j) x[j] += red.shift[j];
    if (!ci::testing::rows_hold(p, x)) o.fail("translated certificate");
    BigInt b_inf = 0;
    for (const auto& v : red.program.rhs) b_inf = std::max(b_inf, ci::abs_value(v));
    if (b_inf <= red.reported_bound) {
      ++within;
    } else if (++logged <= 10) {
      log << "  bound exceeded: m=" << m << " delta=" << ci::compute_delta(p).delta_a << " ||b'||=" << b_inf
          << " bound=" << red.reported_bound << "\n";
    }
    if (red.exceeds_bound != (b_inf > red.reported_bound)) o.fail("exceeds_bound flag");
  }
  const double share = static_cast<double>(within) / static_cast<double>(trials);
  if (share < 0.95) o.fail("bound held on only " + std::to_string(share));
  if (logged > 0)
    std::cerr << "criterion 6: " << logged << " bound violations (first 10 shown):\n" << log.str();
  o.detail = std::to_string(trials) + " feasible trials, status and certificates " +
             (o.problems.empty() || o.problems.front().rfind("bound held", 0) == 0 ? "preserved on all" : "NOT preserved") +
             ", norm bound held on " + std::to_string(within);
  return o;
}

// ---- protocol corpus ---------------------------------------------------------

std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t min_size, std::size_t max_size) {
  std::vector<std::vector<std::size_t>> out;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    const auto c = static_cast<std::size_t>(__builtin_popcount(mask));
    if (c < min_size || c > max_size) continue;
    std::vector<std::size_t> s;
    for (std::size_t v = 0; v < n; ++v)
      if (mask >> v & 1) s.push_back(v);
    out.push_back(s);
  }
  return out;
}

std::vector<ci::ProblemInstance> protocol_corpus(ci::Variant v) {
  std::vector<ci::ProblemInstance> out;
  const auto p = ci::make_protocol(v);
  auto push = [&](ci::ProblemInstance inst, std::size_t max_ell) {
    if (p->length_formula(inst) <= max_ell) out.push_back(std::move(inst));
  };
  SeededRng rng(70 + static_cast<std::uint64_t>(v));
  switch (v) {
    case ci::Variant::RWayCut:
      for (std::size_t n = 1; n <= 4; ++n)
        for (const auto& g : ci::testing::all_graphs(n))
          for (std::size_t r = 1; r <= n; ++r)
            for (std::size_t k = 0; k <= 2; ++k) push(ci::RWayCutInstance{g, r, k}, 20);
      break;
    case ci::Variant::MultiwayCut:
      for (std::size_t n = 2; n <= 4; ++n)
        for (const auto& g : ci::testing::all_graphs(n))
          for (const auto& t : subsets(n, 2, n))
            for (std::size_t k = (t.size() + 1) / 2; k <= 3; ++k) push(ci::MultiwayCutInstance{g, t, k}, 20);
      for (int i = 0; i < 200; ++i) {
        const auto n = 5 + rng.below(4);
        const auto g = ci::random_graph(rng, n, 40);
        std::vector<std::size_t> all(n);
        std::iota(all.begin(), all.end(), 0);
        rng.shuffle(all);
        const auto k = 1 + rng.below(3);
        all.resize(2 + rng.below(std::min<std::size_t>(2 * k, 4) - 1));
        std::sort(all.begin(), all.end());
        push(ci::MultiwayCutInstance{g, all, k}, 20);
      }
      break;
    case ci::Variant::Mcsp:
      for (std::size_t len = 1; len <= 5; ++len)
        for (std::uint32_t xm = 0; xm < (1u << len); ++xm)
          for (std::uint32_t ym = 0; ym < (1u << len); ++ym) {
            std::string x, y;
            for (std::size_t i = 0; i < len; ++i) {
              x += (xm >> i & 1) ? 'b' : 'a';
              y += (ym >> i & 1) ? 'b' : 'a';
            }
            if (x[0] != 'a' || x > y) continue;
            for (std::size_t k = 1; k <= 3; ++k) push(ci::McspInstance{x, y, k}, 20);
          }
      break;
    case ci::Variant::LongPath:
      for (std::size_t n = 1; n <= 4; ++n)
        for (const auto& g : ci::testing::all_graphs(n)) {
          if (ci::fvs_2approx(g).size() > 1) continue;
          for (std::size_t l = 0; l <= n + 1; ++l) push(ci::LongPathInstance{g, l}, 20);
        }
      for (int i = 0; i < 30; ++i) {
        const auto g = ci::testing::random_tree(rng, 5 + rng.below(4));
        for (std::size_t l = 0; l <= g.num_vertices() + 1; ++l) push(ci::LongPathInstance{g, l}, 20);
      }
      break;
    case ci::Variant::Steiner:
      for (std::size_t n = 1; n <= 4; ++n)
        for (const auto& g : ci::testing::all_graphs(n))
          for (const auto& t : subsets(n, 1, 2))
            for (std::size_t l = 0; l <= n; ++l) push(ci::SteinerInstance{g, t, l}, 20);
      for (const auto& g : ci::testing::all_graphs(4))
        for (std::size_t l = 2; l <= 3; ++l) push(ci::SteinerInstance{g, {0, 1, 2}, l}, 20);
      break;
    case ci::Variant::Discretization:
      for (int i = 0; i < 300; ++i) {
        ci::GenSpec spec{v, static_cast<ci::GenMode>(i % 3), 4 + rng.below(5), rng.below(4), 3 + rng.below(3), 0,
                         9000 + static_cast<std::uint64_t>(i)};
        push(ci::generate(spec), 20);
      }
      break;
    default:
      break;
  }
  for (const auto& e : ci::default_corpus())
    if (e.spec.variant == v) push(ci::generate(e.spec), 24);
  return out;
}

std::size_t c2(std::size_t v) { return ci::ceil_log2(v); }

/// Closed-form witness lengths, restated independently of the protocol code.
std::size_t published_length(const ci::ProblemInstance& inst) {
  return std::visit(
      [](const auto& i) -> std::size_t {
        using T = std::decay_t<decltype(i)>;
        if constexpr (std::is_same_v<T, ci::RWayCutInstance>) {
          const auto n = i.graph.num_vertices(), m = i.graph.num_edges(), k = i.k;
          return 2 * c2(k + 1) + k * c2(m) + k * c2(2 * k + 1) + 2 * k * c2(n);
        } else if constexpr (std::is_same_v<T, ci::MultiwayCutInstance>) {
          return c2(i.k + 1) + i.k * c2(i.graph.num_vertices());
        } else if constexpr (std::is_same_v<T, ci::McspInstance>) {
          return i.k * c2(i.x.size() + 1) + i.k * c2(i.k);
        } else if constexpr (std::is_same_v<T, ci::LongPathInstance>) {
          const auto x = ci::fvs_2approx(i.graph).size();
          return c2(2 * x + 2) + (2 * x + 1) * (1 + 2 * c2(i.graph.num_vertices()));
        } else if constexpr (std::is_same_v<T, ci::SteinerInstance>) {
          const auto k = i.terminals.size(), n = i.graph.num_vertices();
          return c2(k) + (k - 1) * c2(n) + (2 * k - 2) * c2(2 * k - 1);
        } else if constexpr (std::is_same_v<T, ci::DiscretizationInstance>) {
          std::set<ci::Rational> xs, ys;
          for (const auto* s : {&i.w1, &i.w2})
            for (const auto& pt : *s) {
              xs.insert(pt.x);
              ys.insert(pt.y);
            }
          const std::size_t px = xs.size() - 1, py = ys.size() - 1;
          return 2 * c2(i.k + 1) + i.k * c2(std::max(px, py));
        } else {
          return 0;
        }
      },
      inst);
}

const ci::Variant kProtocolVariants[] = {ci::Variant::RWayCut, ci::Variant::MultiwayCut, ci::Variant::Mcsp,
                                         ci::Variant::LongPath, ci::Variant::Steiner, ci::Variant::Discretization};

Outcome criterion7() {
  Outcome o;
  std::ostringstream detail;
  for (auto v : kProtocolVariants) {
    const auto p = ci::make_protocol(v);
    std::size_t count = 0, yes = 0;
    for (const auto& inst : protocol_corpus(v)) {
      const bool truth = ci::decide_exact(inst);
      const auto e = ci::enumerate_decide(*p, inst);
      ++count;
      yes += truth;
      if (e.yes != truth) o.fail(p->name() + ": " + ci::write_instance(inst));
      if (e.yes && !p->load(p->preprocess(inst).advice)->verify(*e.witness).accept)
        o.fail(p->name() + ": reported witness rejected");
    }
    detail << p->name() << " " << yes << "/" << count << " yes; ";
  }
  o.detail = detail.str();
  return o;
}

Outcome criterion8() {
  Outcome o;
  std::size_t count = 0;
  for (auto v : kProtocolVariants) {
    const auto p = ci::make_protocol(v);
    for (const auto& inst : protocol_corpus(v)) {
      ++count;
      const auto expected = published_length(inst);
      const auto report = ci::audit_costs(*p, inst, {}, 10, 32);
      if (report.ell != expected || report.ell_formula != expected || p->preprocess(inst).ell != expected)
        o.fail(p->name() + ": ell " + std::to_string(report.ell) + " vs " + std::to_string(expected));
      if (!report.ok()) o.fail(report.failures.front());
    }
  }
  for (std::size_t n = 1; n <= 64; n *= 2)
    for (std::size_t k = 1; k <= 6; ++k) {
      const ci::McspInstance inst{std::string(n, 'a'), std::string(n, 'a'), k};
      ++count;
      if (ci::mcsp_protocol()->preprocess(inst).ell != k * c2(n + 1) + k * c2(k)) o.fail("mcsp closed form");
    }
  o.detail = std::to_string(count) + " instances audited";
  return o;
}

// ---- locality ------------------------------------------------------------------

struct LocalityCase {
  ci::ProblemInstance inst;
  ci::BitString witness;  // an accepted witness exercising every check
};

using CaseMaker = std::function<LocalityCase(std::size_t)>;

LocalityCase rway_case(std::size_t n) {
  ci::RWayCutInstance inst{ci::testing::path_graph(n), 3, 2};
  const ci::RWayCutWitness w{{n / 3, 2 * n / 3}, {{0, n / 2, n - 1}}};
  return {inst, ci::encode(ci::RWayCutLayout::of(inst), w)};
}

LocalityCase multiway_case(std::size_t n) {
  ci::MultiwayCutInstance inst{ci::testing::path_graph(n), {0, n / 3, 2 * n / 3, n - 1}, 3};
  const ci::MultiwayCutWitness w{{n / 6, n / 2, 5 * n / 6}};
  return {inst, ci::encode(ci::MultiwayCutLayout::of(inst), w)};
}

LocalityCase mcsp_case(std::size_t n) {
  SeededRng rng(n);
  std::string x;
  for (std::size_t i = 0; i < n; ++i) x += static_cast<char>('a' + rng.below(2));
  const std::size_t a = n / 4, b = n / 2;
  const std::string y = x.substr(b) + x.substr(a, b - a) + x.substr(0, a);
  ci::McspInstance inst{x, y, 3};
  return {inst, ci::encode(ci::McspLayout::of(inst), ci::McspWitness{{a, b, n}, {2, 1, 0}})};
}

LocalityCase longpath_case(std::size_t n) {
  const Graph g = ci::testing::cycle_graph(n);
  ci::LongPathInstance inst{g, n};
  const auto x = ci::fvs_2approx(g);
  std::vector<std::size_t> path;
  for (std::size_t i = 1; i <= n; ++i) path.push_back((x.front() + i) % n);
  return {inst, ci::encode(ci::LongPathLayout{n, x.size()}, ci::longpath_items(path, x))};
}

LocalityCase steiner_case(std::size_t n) {
  ci::SteinerInstance inst{ci::testing::path_graph(n), {0, n / 2, n - 1}, n - 1};
  return {inst, ci::encode(ci::SteinerLayout::of(inst), ci::SteinerWitness{{}, {0, 1}})};
}

LocalityCase discretization_case(std::size_t n) {
  std::size_t sx = 1, sy = 1;
  while (sx * sy < n) (sx <= sy ? sx : sy) *= 2;
  ci::DiscretizationInstance inst;
  for (std::size_t i = 0; i < sx; ++i)
    for (std::size_t j = 0; j < sy; ++j)
      (2 * i < sx ? inst.w1 : inst.w2).push_back({ci::Rational(static_cast<long>(i)), ci::Rational(static_cast<long>(j))});
  inst.k = 2;
  const auto L = ci::discretization_layout(inst);
  return {inst, ci::encode(L, ci::DiscretizationWitness{{sx / 2 - 1}, {}})};
}

Outcome criterion9() {
  Outcome o;
  const std::vector<std::pair<ci::Variant, CaseMaker>> families = {
      {ci::Variant::RWayCut, rway_case},     {ci::Variant::MultiwayCut, multiway_case},
      {ci::Variant::Mcsp, mcsp_case},        {ci::Variant::LongPath, longpath_case},
      {ci::Variant::Steiner, steiner_case},  {ci::Variant::Discretization, discretization_case}};
  std::ostringstream detail;
  for (const auto& [v, make] : families) {
    const auto p = ci::make_protocol(v);
    const std::size_t top = v == ci::Variant::LongPath ? 7 : 10;
    std::set<std::uint64_t> seen;
    std::uint64_t budget = 0;
    for (std::size_t e = 4; e <= top; ++e) {
      const std::size_t n = std::size_t{1} << e;
      const auto c = make(n);
      const auto pre = p->preprocess(c.inst);
      const auto report = p->load(pre.advice)->verify(c.witness);
      if (!report.accept) o.fail(p->name() + " n=" + std::to_string(n) + ": witness rejected (" + report.reason + ")");
      budget = p->call_budget(c.inst);
      seen.insert(report.total_calls());
      if (report.total_calls() > budget) o.fail(p->name() + ": over budget at n=" + std::to_string(n));
    }
    if (seen.size() != 1) o.fail(p->name() + ": call count varies with n");
    if (v == ci::Variant::Mcsp && *seen.begin() != 2 * 3 + 1) o.fail("mcsp: not exactly 2k+1 operations");
    if (v == ci::Variant::MultiwayCut && *seen.begin() > 1 + 6) o.fail("multiway cut: over 1 + C(|T|,2)");
    detail << p->name() << " " << *seen.begin() << "/" << budget << " (n<=2^" << top << "); ";
  }
  o.detail = detail.str();
  return o;
}

// ---- structure twins -----------------------------------------------------------

Outcome criterion10() {
  Outcome o;
  constexpr int kTrials = 10000;
  SeededRng rng(10);
  std::uint64_t checks[4] = {0, 0, 0, 0};

  for (int trial = 0; trial < kTrials; ++trial) {
    const auto n = 2 + rng.below(9);
    const auto g = ci::random_graph(rng, n, static_cast<std::uint32_t>(15 + rng.below(50)));
    const auto mode = rng.below(2) ? ci::FailureMode::Edge : ci::FailureMode::Vertex;
    const std::size_t pool = mode == ci::FailureMode::Edge ? g.num_edges() : n;
    std::vector<std::size_t> failed(pool);
    std::iota(failed.begin(), failed.end(), 0);
    rng.shuffle(failed);
    failed.resize(rng.below(std::min<std::size_t>(pool, 4) + 1));
    auto oracle = ci::FailureOracle::build(g, mode, 4);
    ci::ConnectivityTwin twin(g, mode, 4);
    oracle.update(failed);
    twin.update(failed);
    for (int q = 0; q < 8; ++q) {
      const auto u = rng.below(n), w = rng.below(n);
      if (mode == ci::FailureMode::Vertex &&
          (std::count(failed.begin(), failed.end(), u) || std::count(failed.begin(), failed.end(), w)))
        continue;
      ++checks[0];
      if (oracle.query(u, w) != twin.query(u, w)) o.fail("failure oracle trial " + std::to_string(trial));
    }
  }

  for (int trial = 0; trial < kTrials; ++trial) {
    ci::StringStore store;
    ci::StringStoreTwin twin;
    std::vector<std::pair<ci::StringHandle, ci::StringHandle>> h{{store.empty(), 0}};
    for (int op = 0; op < 12; ++op) {
      const auto kind = rng.below(4);
      const auto [a, ta] = h[rng.below(h.size())];
      if (kind == 0) {
        const auto c = static_cast<std::uint8_t>('a' + rng.below(2));
        h.emplace_back(store.singleton(c), twin.singleton(c));
      } else if (kind == 1) {
        const auto [b, tb] = h[rng.below(h.size())];
        h.emplace_back(store.concat(a, b), twin.concat(ta, tb));
      } else if (kind == 2) {
        const auto at = rng.below(store.length(a) + 1);
        const auto [l, r] = store.split(a, at);
        const auto [tl, tr] = twin.split(ta, at);
        h.emplace_back(l, tl);
        h.emplace_back(r, tr);
      } else {
        const auto [b, tb] = h[rng.below(h.size())];
        ++checks[1];
        if (store.equal(a, b) != twin.equal(ta, tb)) o.fail("string store trial " + std::to_string(trial));
      }
    }
  }

  for (int trial = 0; trial < kTrials; ++trial) {
    const auto g = ci::testing::random_tree(rng, 1 + rng.below(10));
    const auto tables = ci::TreePathTables::build(g);
    ci::PathTablesTwin twin(g);
    ci::PathTableCounters c;
    const auto n = g.num_vertices();
    for (int q = 0; q < 4; ++q) {
      const auto a = rng.below(n), b = rng.below(n), x = rng.below(n), y = rng.below(n);
      checks[2] += 2;
      if (tables.length(a, b, c) != twin.length(a, b)) o.fail("path tables length trial " + std::to_string(trial));
      if (tables.disjoint(a, b, x, y, c) != twin.disjoint(a, b, x, y))
        o.fail("path tables disjoint trial " + std::to_string(trial));
    }
  }

  for (int trial = 0; trial < kTrials; ++trial) {
    std::vector<ci::Point> w1, w2;
    std::vector<ci::Rational> xs, ys;
    std::set<std::pair<long, long>> used;
    const auto count = 2 + rng.below(7);
    for (std::size_t i = 0; i < count; ++i) {
      const long x = static_cast<long>(rng.below(6)), y = static_cast<long>(rng.below(6));
      if (!used.insert({x, y}).second) continue;
      (rng.below(2) ? w2 : w1).push_back({ci::Rational(x), ci::Rational(y)});
      xs.push_back(x);
      ys.push_back(y);
    }
    const auto hx = ci::midpoint_pool(xs), hy = ci::midpoint_pool(ys);
    const auto index = ci::BadTupleIndex::build(w1, w2, hx, hy);
    ci::BadTupleTwin twin(w1, w2, hx, hy);
    ci::BadTupleCounters c;
    const auto px = static_cast<std::uint32_t>(hx.size() + 2), py = static_cast<std::uint32_t>(hy.size() + 2);
    for (int q = 0; q < 8; ++q) {
      std::uint32_t a = static_cast<std::uint32_t>(rng.below(px)), b = static_cast<std::uint32_t>(rng.below(px));
      std::uint32_t d = static_cast<std::uint32_t>(rng.below(py)), e = static_cast<std::uint32_t>(rng.below(py));
      if (a == b || d == e) continue;
      if (a > b) std::swap(a, b);
      if (d > e) std::swap(d, e);
      ++checks[3];
      if (index.lookup({a, b, d, e}, c) != twin.lookup({a, b, d, e})) o.fail("bad tuples trial " + std::to_string(trial));
    }
  }

  o.detail = std::to_string(kTrials) + " trials per structure; comparisons: oracle " + std::to_string(checks[0]) +
             ", store " + std::to_string(checks[1]) + ", tables " + std::to_string(checks[2]) + ", tuples " +
             std::to_string(checks[3]);
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"Set Cover reduction shape", criterion1},
      {"Set Cover reduction correctness", criterion2},
      {"Equality-form law", criterion3},
      {"WVC formulations", criterion4},
      {"Lattice solver vs brute force", criterion5},
      {"Proximity reduction", criterion6},
      {"Protocol soundness/completeness", criterion7},
      {"Witness-length formulas", criterion8},
      {"Verifier locality", criterion9},
      {"Structure differential tests", criterion10},
  };
  std::set<std::size_t> only;
  for (int i = 1; i < argc; ++i) only.insert(std::stoul(argv[i]));
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (!only.empty() && !only.count(i + 1)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %zu: %s - %s [%s] (%.1fs)\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first.c_str(),
                o.detail.c_str(), secs);
    for (const auto& p : o.problems) std::printf("    %s\n", p.c_str());
    std::fflush(stdout);
    failures += !o.pass;
  }
  return failures == 0 ? 0 : 1;
}
