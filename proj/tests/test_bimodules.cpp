#include <functional>
#include <set>

#include "doctest.h"
#include "hfk/bimodules.hpp"
#include "hfk/tensor.hpp"
#include "oracles.hpp"

using namespace hfk;

namespace {

Matching matching(std::initializer_list<std::pair<int, int>> pairs) {
  Matching m;
  for (auto [a, b] : pairs) m.pair(a, b);
  return m;
}

// Minimum at position 1 on a slice with matching m (strands 1 and 2 unmatched).
std::unique_ptr<Bimodule> min_bimodule(const Matching& m, int n) {
  Matching below;
  for (auto [a, b] : m.pairs())
    if (a > 2 && b > 2) below.pair(a - 2, b - 2);
  below.pair(m.of(1) - 2, m.of(2) - 2);
  return make_bimodule(BimoduleKind::Min, 1, SliceData{n, m, 0}, SliceData{n - 1, below, 0}, n);
}

Pure elt(State x, State y, std::initializer_list<int> doubled) {
  Pure p{x, y, {}, 0};
  int s = 1;
  for (int v : doubled) p.w.set(s++, v);
  return p;
}

}  // namespace

TEST_CASE("transpose_matching swaps the two strands of a crossing") {
  Matching m = matching({{1, 3}, {2, 4}});
  CHECK(transpose_matching(m, 2) == matching({{1, 2}, {3, 4}}));
  CHECK(transpose_matching(transpose_matching(m, 1), 1) == m);
}

TEST_CASE("local types of two-strand elements") {
  CHECK(local_type(elt(0b010, 0b001, {1, 0}), 1).e == kL1);
  CHECK(local_type(elt(0b001, 0b010, {1, 0}), 1).e == kR1);
  CHECK(local_type(elt(0b010, 0b100, {0, 1}), 1).e == kR2);
  CHECK(local_type(elt(0b100, 0b001, {1, 1}), 1).e == kL1L2);
  LocalElt t = local_type(elt(0b010, 0b010, {4, 2}), 1);
  CHECK(t.e == kOne);
  CHECK(t.p == 2);
  CHECK(t.q == 1);
  CHECK(local_str(t) == "1 U1^2 U2^1");
}

TEST_CASE("crossing generators follow the occupancy of the three gaps") {
  Matching m = matching({{1, 2}, {3, 4}});
  SliceData above{2, m, 0b0010 | 0b1000};
  SliceData below{2, transpose_matching(m, 2), 0b0010 | 0b0100};
  for (BimoduleKind kind : {BimoduleKind::Pos, BimoduleKind::Neg}) {
    auto b = make_bimodule(kind, 2, above, below, 2);
    for (State r : b->in.states()) {
      std::set<int> labels;
      for (auto& g : b->generators(r)) labels.insert(g.label);
      std::set<int> expect;
      if (has(r, 2)) {
        expect.insert(kN);
      } else {
        expect.insert(kS);
        if (has(r, 1)) expect.insert(kW);
        if (has(r, 3)) expect.insert(kE);
      }
      CHECK(labels == expect);
    }
  }
}

TEST_CASE("maximum bimodule has one generator per input idempotent and two new strands") {
  Matching m = matching({{1, 2}});
  SliceData above{1, m, 0b10};
  SliceData below{2, matching({{1, 2}, {3, 4}}), 0b1010};
  auto b = make_bimodule(BimoduleKind::Max, 1, above, below, 1);
  CHECK(b->out.n == 2);
  CHECK(b->out.k == 2);
  for (State r : b->in.states()) CHECK_FALSE(b->generators(r).empty());
}

TEST_CASE("minimum rejects a matched pair and deep positions") {
  Matching m = matching({{1, 2}, {3, 4}});
  SliceData above{2, m, 0};
  SliceData below{1, matching({{1, 2}}), 0};
  CHECK_THROWS_AS(make_bimodule(BimoduleKind::Min, 1, above, below, 2), DiagramError);
  CHECK_THROWS_AS(make_bimodule(BimoduleKind::Min, 2, above, below, 2), std::invalid_argument);
}

TEST_CASE("signed minimum operation on YR2 with L2, U1, R2") {
  Matching m = matching({{1, 3}, {2, 4}});
  auto b = min_bimodule(m, 2);
  const State r = 0b01100;  // gaps {2,3}
  auto gens = b->generators(r);
  REQUIRE(gens.size() == 1);
  CHECK(gens[0].label == kYR2);
  std::vector<Pure> seq = {elt(0b01100, 0b01010, {0, 1, 0, 0}), elt(0b01010, 0b01010, {2, 0, 0, 0}),
                           elt(0b01010, 0b01100, {0, 1, 0, 0})};
  auto terms = b->gamma(gens[0], seq);
  REQUIRE(terms.size() == 1);
  CHECK(terms[0].sign == -1);
  CHECK(terms[0].target.label == kYR2);
  CHECK(terms[0].b.w.zero());
  auto ref = oracle::min_gamma(m, 2, r, seq);
  REQUIRE(ref.size() == 1);
  CHECK(ref[0].sign == -1);
}

TEST_CASE("minimum operations match the perturbation model on four strands") {
  for (Matching m : {matching({{1, 3}, {2, 4}}), matching({{1, 4}, {2, 3}})}) {
    auto b = min_bimodule(m, 2);
    Ambient amb{2, 2, m};
    std::map<State, std::vector<Pure>> from;
    for (State x : amb.states())
      for (State y : amb.states()) {
        Weight w;
        std::function<void(int, int)> rec = [&](int s, int left) {
          if (s > 4) {
            if (w.total2() > 0 && b_exists(x, y, w, 2)) from[x].push_back(Pure{x, y, w, 0});
            return;
          }
          for (int v = 0; v <= left; ++v) {
            w.set(s, v);
            rec(s + 1, left - v);
          }
          w.set(s, 0);
        };
        rec(1, 6);
      }
    long nonzero = 0;
    for (State r : amb.states()) {
      auto gens = b->generators(r);
      if (gens.empty()) continue;
      std::vector<Pure> seq;
      std::function<void(State, int)> dfs = [&](State cur, int left) {
        for (auto& e : from[cur]) {
          if (e.w.total2() > left) continue;
          seq.push_back(e);
          bool alive = false;
          auto ref = oracle::min_gamma(m, 2, r, seq, &alive);
          auto got = b->gamma(gens[0], seq);
          REQUIRE(ref.size() == got.size());
          for (std::size_t i = 0; i < ref.size(); ++i) {
            CHECK(ref[i].sign == got[i].sign);
            CHECK(ref[i].w == got[i].b.w);
            CHECK(ref[i].x_label == (got[i].target.label == kXL1));
          }
          nonzero += !ref.empty();
          if (alive) dfs(e.y, left - e.w.total2());
          seq.pop_back();
        }
      };
      dfs(r, 6);
    }
    CHECK(nonzero > 50);
  }
}

TEST_CASE("Pos and Neg are inverse on graded counts of a two-bridge top") {
  // Top half of the figure-eight diagram: two maxima and three crossings.
  Diagram d = parse_diagram("max 1\nmax 1\no 2\no 2\nu 1\no 2\nmin 1\n");
  OrientedDiagram od = orient(d);
  for (Ring r : {Ring{2}, Ring{0}}) {
    DStructure x = unit_structure(r);
    int k = 0;
    for (std::size_t t = 0; t < 5; ++t) {
      const Event& e = d.events[t];
      auto kind = e.kind == EventKind::Max ? BimoduleKind::Max : crossing_bimodule(e.kind);
      auto b = make_bimodule(kind, e.pos, od.slices[t], od.slices[t + 1], k);
      x = box_tensor(*b, x);
      k = b->out.k;
      x.reduce();
      x.compact();
    }
    auto base = graded_counts(x);
    for (int i = 1; i <= 3; ++i) {
      DStructure y = apply_crossing(BimoduleKind::Pos, i, apply_crossing(BimoduleKind::Neg, i, x));
      CHECK(check_structure(y).ok);
      y.reduce();
      CHECK(graded_counts(y) == base);
    }
  }
}
