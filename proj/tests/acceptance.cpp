#include <sys/resource.h>

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "hfk/bimodules.hpp"
#include "oracles.hpp"
#include "report.hpp"

using namespace hfk;

namespace {

const std::vector<std::string> kKnots = {"unknot", "trefoil", "trefoil_mirror", "figure_eight", "5_1",
                                         "5_2",    "6_1",     "6_2",            "6_3",          "7_1",
                                         "ten_crossing"};
const std::vector<std::string> kAll = {"unknot", "trefoil", "trefoil_mirror", "figure_eight", "5_1",
                                       "5_2",    "6_1",     "6_2",            "6_3",          "7_1",
                                       "ten_crossing", "trefoil_braid",
                                       "trefoil_r2", "trefoil_maxswap"};

Diagram corpus(const std::string& name) {
  Diagram d = load_diagram(std::string(HFK_CORPUS_DIR) + "/" + name + ".knot");
  if (d.name.empty()) d.name = name;
  return d;
}

double seconds(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

PipelineOptions over(int p) {
  PipelineOptions o;
  o.ring = Ring{p};
  return o;
}

// Collects failure details for one criterion.
struct Criterion {
  int id;
  std::string title;
  std::vector<std::string> issues;
  void expect(bool ok, const std::string& what) {
    if (!ok) issues.push_back(what);
  }
};

int g_failed = 0;

void run(int id, const std::string& title, const std::function<void(Criterion&)>& body) {
  Criterion c{id, title, {}};
  auto t0 = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.issues.push_back(std::string("exception: ") + e.what());
  }
  std::ostringstream o;
  o << (c.issues.empty() ? "PASS" : "FAIL") << " criterion " << id << ": " << title << " (" << seconds(t0)
    << " s)";
  for (std::size_t i = 0; i < c.issues.size() && i < 8; ++i) o << "\n    " << c.issues[i];
  if (c.issues.size() > 8) o << "\n    ... " << c.issues.size() - 8 << " more";
  std::cout << o.str() << std::endl;
  if (!c.issues.empty()) ++g_failed;
}

using HatTable = std::map<std::pair<int, int>, int>;

HatTable hat_table(const std::vector<HatEntry>& hat) {
  HatTable t;
  for (auto& h : hat)
    if (h.dim) t[{h.a, h.m}] = h.dim;
  return t;
}

// Graded tensor product of two hat tables over a field.
HatTable tensor_tables(const HatTable& x, const HatTable& y) {
  HatTable t;
  for (auto& [k1, d1] : x)
    for (auto& [k2, d2] : y) t[{k1.first + k2.first, k1.second + k2.second}] += d1 * d2;
  return t;
}

std::string table_str(const HatTable& t) {
  std::string s;
  for (auto& [k, v] : t) s += "(" + std::to_string(k.first) + "," + std::to_string(k.second) + "):" + std::to_string(v) + " ";
  return s;
}

// Applies the events before the first minimum of d, reducing after each one.
DStructure top_structure(const Diagram& d, Ring r) {
  OrientedDiagram od = orient(d);
  DStructure x = unit_structure(r);
  int k = 0;
  for (std::size_t t = 0; t < d.events.size() && d.events[t].kind != EventKind::Min; ++t) {
    const Event& e = d.events[t];
    auto kind = e.kind == EventKind::Max ? BimoduleKind::Max : crossing_bimodule(e.kind);
    auto b = make_bimodule(kind, e.pos, od.slices[t], od.slices[t + 1], k);
    x = box_tensor(*b, x);
    k = b->out.k;
    x.reduce();
    x.compact();
  }
  return x;
}

// (source tag, target tag, weight) -> coefficient mod p.
using ArrowTable = std::map<std::tuple<std::uint64_t, std::uint64_t, std::vector<int>>, Coeff>;

ArrowTable arrows_mod(const DStructure& x, int p) {
  ArrowTable t;
  for (int i = 0; i < x.size(); ++i) {
    if (!x.alive(i)) continue;
    for (auto& [k, c] : x.out(i)) {
      Coeff v = Ring{p}.norm(c);
      if (!v) continue;
      std::vector<int> w;
      for (int s = 1; s <= 2 * x.amb.n; ++s) w.push_back(k.w[s]);
      t[{x.gen(i).tag, x.gen(k.to).tag, w}] = v;
    }
  }
  return t;
}

// Minimum at position 1 on a slice with matching m (strands 1 and 2 unmatched).
std::unique_ptr<Bimodule> min_bimodule(const Matching& m, int n) {
  Matching below;
  for (auto [a, b] : m.pairs())
    if (a > 2 && b > 2) below.pair(a - 2, b - 2);
  below.pair(m.of(1) - 2, m.of(2) - 2);
  return make_bimodule(BimoduleKind::Min, 1, SliceData{n, m, 0}, SliceData{n - 1, below, 0}, n);
}

// Perfect matchings of 1..2n that do not pair 1 with 2.
std::vector<Matching> min_matchings(int n) {
  std::vector<Matching> out;
  Matching m;
  std::function<void()> rec = [&] {
    int i = 1;
    while (i <= 2 * n && m.of(i)) ++i;
    if (i > 2 * n) {
      if (!m.contains(1, 2)) out.push_back(m);
      return;
    }
    for (int j = i + 1; j <= 2 * n; ++j) {
      if (m.of(j)) continue;
      m.pair(i, j);
      rec();
      m.partner[i] = m.partner[j] = 0;
    }
  };
  rec();
  return out;
}

// Calls f on every weight over 2n strands with doubled total at most cap.
void for_weights(int n, int cap, const std::function<void(const Weight&)>& f) {
  Weight w;
  std::function<void(int, int)> rec = [&](int s, int left) {
    if (s > 2 * n) {
      f(w);
      return;
    }
    for (int v = 0; v <= left; ++v) {
      w.set(s, v);
      rec(s + 1, left - v);
    }
    w.set(s, 0);
  };
  rec(1, cap);
}

long peak_rss_mb() {
  rusage u{};
  getrusage(RUSAGE_SELF, &u);
  return u.ru_maxrss / 1024;
}

}  // namespace

int main() {
  run(1, "unknot homology is R with trivial invariants", [](Criterion& c) {
    auto t0 = std::chrono::steady_clock::now();
    KnotReport r = compute_report(corpus("unknot"), over(2));
    double t = seconds(t0);
    c.expect(t < 0.1, "unknot took " + std::to_string(t) + " s");
    c.expect(table_str(hat_table(r.hat)) == "(0,0):1 ", "hat is " + table_str(hat_table(r.hat)));
    c.expect(r.tau == 0 && r.nu == 0 && r.epsilon == 0, "tau, nu or epsilon nonzero");
    // R = F[U,V]/(UV): one class at (-a, -a) for U^a and at (-b, b) for V^b.
    const int depth = 6;
    auto dims = hwz_dims(r.res.complex, -depth, 0, -depth, depth);
    for (auto& [k, v] : dims) {
      auto [delta, s] = k;
      int expect = std::abs(s) == -delta ? 1 : 0;
      c.expect(v == expect, "dim at (" + std::to_string(delta) + "," + std::to_string(s) + ") is " +
                                std::to_string(v));
      if (!v || delta == -depth) continue;
      ActionRanks a = hwz_action_ranks(r.res.complex, delta, s);
      c.expect(a.u == (s <= 0 ? 1 : 0), "U rank at (" + std::to_string(delta) + "," + std::to_string(s) + ")");
      c.expect(a.v == (s >= 0 ? 1 : 0), "V rank at (" + std::to_string(delta) + "," + std::to_string(s) + ")");
    }
  });

  run(2, "unreduced generators are the Kauffman states", [](Criterion& c) {
    for (auto& name : kAll) {
      Diagram d = corpus(name);
      PipelineOptions opt;
      opt.interleaved = false;
      long got = run_pipeline(orient(d), opt).unreduced_generators;
      long want = oracle::kauffman_states(d);
      c.expect(got == want, name + ": " + std::to_string(got) + " generators, " + std::to_string(want) + " states");
    }
  });

  run(3, "Euler characteristic is the Alexander polynomial", [](Criterion& c) {
    for (auto& name : kAll) {
      Diagram d = corpus(name);
      auto got = alexander_polynomial(run_pipeline(orient(d), over(2)).complex);
      auto want = oracle::fox_alexander(d);
      c.expect(got == want, name + ": " + poly_str(got) + " vs " + poly_str(want));
    }
  });

  run(4, "isotopic diagrams give identical homology and invariants over F2 and Z", [](Criterion& c) {
    std::map<std::string, std::vector<std::string>> alternates = {
        {"trefoil", {"trefoil_braid", "trefoil_r2", "trefoil_maxswap"}}};
    for (auto& name : kKnots) {
      auto t0 = std::chrono::steady_clock::now();
      Diagram d = corpus(name);
      std::vector<std::pair<std::string, Diagram>> others = diagram_variants(d);
      for (auto& a : alternates[name]) others.push_back({a, corpus(a)});
      c.expect(others.size() >= 2, name + ": fewer than two alternative diagrams");
      for (int p : {2, 0}) {
        KnotReport base = compute_report(d, over(p));
        for (auto& [what, v] : others) {
          Comparison cmp = compare_reports(base, compute_report(v, over(p)));
          c.expect(cmp.equal, name + " vs " + what + " over " + Ring{p}.name() + ": " +
                                  (cmp.differences.empty() ? "" : cmp.differences.front()));
        }
      }
      double t = seconds(t0);
      c.expect(t <= 10, name + " took " + std::to_string(t) + " s");
    }
  });

  run(5, "dimensions are symmetric under orientation reversal", [](Criterion& c) {
    for (auto& name : kAll) {
      Comparison cmp = verify_symmetry(corpus(name), over(2));
      c.expect(cmp.equal, name + ": " + (cmp.differences.empty() ? "" : cmp.differences.front()));
    }
  });

  run(6, "hat of a connected sum is the tensor product of the factors", [](Criterion& c) {
    Diagram t = corpus("trefoil"), f = corpus("figure_eight");
    for (auto& [a, b] : {std::pair{t, t}, std::pair{t, f}}) {
      auto ha = hat_table(compute_report(a, over(2)).hat);
      auto hb = hat_table(compute_report(b, over(2)).hat);
      auto hs = hat_table(compute_report(connected_sum(a, b), over(2)).hat);
      auto want = tensor_tables(ha, hb);
      c.expect(hs == want, a.name + " # " + b.name + ": " + table_str(hs) + "vs " + table_str(want));
    }
  });

  run(7, "unknotting bounds, tau <= nu and mirror negation", [](Criterion& c) {
    for (auto& name : {"trefoil", "trefoil_mirror", "figure_eight"}) {
      KnotReport r = compute_report(corpus(name), over(2));
      c.expect(std::abs(r.tau) <= 1 && std::abs(r.nu) <= 1, std::string(name) + ": |tau| or |nu| exceeds 1");
    }
    for (auto& name : kKnots) {
      Diagram d = corpus(name);
      KnotReport r = compute_report(d, over(2)), m = compute_report(mirror(d), over(2));
      c.expect(r.tau <= r.nu, name + ": tau " + std::to_string(r.tau) + " > nu " + std::to_string(r.nu));
      c.expect(m.tau == -r.tau, name + ": mirror tau " + std::to_string(m.tau) + ", tau " + std::to_string(r.tau));
      c.expect(m.nu == -r.nu, name + ": mirror nu " + std::to_string(m.nu) + ", nu " + std::to_string(r.nu));
    }
  });

  run(8, "crossing bimodules satisfy inverse, far and braid relations on counts", [](Criterion& c) {
    std::mt19937 rng(20261016);
    using K = BimoduleKind;
    auto red = [](DStructure y) {
      y.reduce();
      return graded_counts(y);
    };
    int tops = 0;
    while (tops < 12) {
      // Random top on four strands closed by the inverse word, so the diagram is a knot.
      std::vector<Event> top = {{EventKind::Max, 1}, {EventKind::Max, rng() % 2 ? 1 : 3}};
      int len = 1 + static_cast<int>(rng() % 4);
      std::vector<Event> word;
      for (int i = 0; i < len; ++i)
        word.push_back({rng() % 2 ? EventKind::CrossOver : EventKind::CrossUnder, 1 + static_cast<int>(rng() % 3)});
      Diagram d;
      d.events = top;
      d.events.insert(d.events.end(), word.begin(), word.end());
      for (auto it = word.rbegin(); it != word.rend(); ++it)
        d.events.push_back({it->kind == EventKind::CrossOver ? EventKind::CrossUnder : EventKind::CrossOver, it->pos});
      d.events.push_back({EventKind::Min, 2});
      validate(d);
      ++tops;
      for (int p : {2, 0}) {
        DStructure x = top_structure(d, Ring{p});
        auto base = red(x);
        std::string tag = to_text(d) + " over " + Ring{p}.name();
        for (int i = 1; i <= 3; ++i) {
          c.expect(red(apply_crossing(K::Pos, i, apply_crossing(K::Neg, i, x))) == base,
                   "Pos Neg at " + std::to_string(i) + " on " + tag);
          c.expect(red(apply_crossing(K::Neg, i, apply_crossing(K::Pos, i, x))) == base,
                   "Neg Pos at " + std::to_string(i) + " on " + tag);
        }
        for (K a : {K::Pos, K::Neg})
          for (K b : {K::Pos, K::Neg}) {
            c.expect(red(apply_crossing(a, 1, apply_crossing(b, 3, x))) ==
                         red(apply_crossing(b, 3, apply_crossing(a, 1, x))),
                     "far commutation on " + tag);
          }
        for (K kind : {K::Pos, K::Neg})
          c.expect(red(apply_crossing(kind, 1, apply_crossing(kind, 2, apply_crossing(kind, 1, x)))) ==
                       red(apply_crossing(kind, 2, apply_crossing(kind, 1, apply_crossing(kind, 2, x)))),
                   "braid relation at 1, 2 on " + tag);
        for (K kind : {K::Pos, K::Neg})
          c.expect(red(apply_crossing(kind, 2, apply_crossing(kind, 3, apply_crossing(kind, 2, x)))) ==
                       red(apply_crossing(kind, 3, apply_crossing(kind, 2, apply_crossing(kind, 3, x)))),
                   "braid relation at 2, 3 on " + tag);
      }
    }
  });

  run(9, "integer signs are consistent with F2", [](Criterion& c) {
    for (auto& name : kKnots) {
      Diagram d = corpus(name);
      PipelineOptions z = over(0), f = over(2);
      z.check = f.check = true;
      KnotReport rz = compute_report(d, z), rf = compute_report(d, f);
      c.expect(rz.alexander == rf.alexander, name + ": Euler characteristics differ");
      std::map<int, long> ez, ef;
      for (auto& h : rz.hat) ez[h.a] += (h.m % 2 ? -1 : 1) * h.dim;
      for (auto& h : rf.hat) ef[h.a] += (h.m % 2 ? -1 : 1) * h.dim;
      std::erase_if(ez, [](auto& e) { return e.second == 0; });
      std::erase_if(ef, [](auto& e) { return e.second == 0; });
      c.expect(ez == ef, name + ": hat Euler characteristics differ");
      c.expect(rz.nu_p.at(2) == rf.nu, name + ": nu_2 " + std::to_string(rz.nu_p.at(2)) + ", nu " +
                                           std::to_string(rf.nu));

      std::vector<ArrowTable> tz, tf;
      PipelineOptions raw = over(0);
      raw.interleaved = false;
      raw.final_reduce = false;
      raw.on_slice = [&](const DStructure& x) { tz.push_back(arrows_mod(x, 2)); };
      run_pipeline(orient(d), raw);
      raw.ring = Ring{2};
      raw.on_slice = [&](const DStructure& x) { tf.push_back(arrows_mod(x, 2)); };
      run_pipeline(orient(d), raw);
      c.expect(tz == tf, name + ": Z mod 2 differs from F2 arrow tables");
    }
  });

  run(10, "nonzero predicate and minimum operations match brute-force oracles", [](Criterion& c) {
    long checked = 0;
    for (int n = 1; n <= 2; ++n)
      for (int k = 0; k <= 2 * n + 1; ++k) {
        Ambient a{n, k, {}};
        for (State x : a.states())
          for (State y : a.states())
            for_weights(n, 8, [&](const Weight& w) {
              if (!admissible_weight(x, y, w, n)) return;
              ++checked;
              bool impl = is_nonzero_b(x, y, w, n), ref = oracle::nonzero_by_closure(x, y, w, n, k);
              c.expect(impl == ref, "nonzero predicate at x=" + state_str(x) + " y=" + state_str(y) +
                                        " n=" + std::to_string(n) + " k=" + std::to_string(k));
            });
      }
    c.expect(checked > 1000, "too few nonzero queries");
    long queries = 0;
    for (int n = 2; n <= 3; ++n)
      for (const Matching& m : min_matchings(n)) {
        auto b = min_bimodule(m, n);
        Ambient amb{n, n, m};
        std::map<State, std::vector<Pure>> from;
        for (State x : amb.states())
          for (State y : amb.states())
            for_weights(n, 8, [&](const Weight& w) {
              if (w.total2() > 0 && b_exists(x, y, w, n)) from[x].push_back(Pure{x, y, w, 0});
            });
        for (State r : amb.states()) {
          auto gens = b->generators(r);
          if (gens.empty()) continue;
          std::vector<Pure> seq;
          std::function<void(State, int)> dfs = [&](State cur, int left) {
            for (auto& e : from[cur]) {
              if (e.w.total2() > left) continue;
              seq.push_back(e);
              bool alive = false;
              auto ref = oracle::min_gamma(m, n, r, seq, &alive);
              auto got = b->gamma(gens[0], seq);
              ++queries;
              bool same = ref.size() == got.size();
              for (std::size_t i = 0; same && i < ref.size(); ++i)
                same = ref[i].sign == got[i].sign && ref[i].w == got[i].b.w &&
                       ref[i].x_label == (got[i].target.label == kXL1);
              c.expect(same, "minimum operation on matching " + m.str() + " with " +
                                 std::to_string(seq.size()) + " inputs");
              if (alive) dfs(e.y, left - e.w.total2());
              seq.pop_back();
            }
          };
          dfs(r, 8);
        }
      }
    c.expect(queries > 1000, "too few minimum queries");
  });

  run(11, "corpus computes within the time and memory budget", [](Criterion& c) {
    auto t0 = std::chrono::steady_clock::now();
    compute_report(corpus("trefoil"), over(2));
    double t = seconds(t0);
    c.expect(t < 1, "trefoil took " + std::to_string(t) + " s");
    for (auto& name : kAll) {
      auto t1 = std::chrono::steady_clock::now();
      compute_report(corpus(name), over(2));
      double s = seconds(t1);
      c.expect(s < 60, name + " took " + std::to_string(s) + " s");
    }
    long mb = peak_rss_mb();
    c.expect(mb < 2048, "peak memory " + std::to_string(mb) + " MB");
  });

  std::cout << (g_failed ? std::to_string(g_failed) + " criteria failed" : "all criteria passed") << std::endl;
  return g_failed ? 1 : 0;
}
