#include "hfk/dstructure.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <tuple>

namespace hfk {

int DStructure::add_gen(const DGen& g) {
  gens_.push_back(g);
  alive_.push_back(1);
  out_.emplace_back();
  in_.emplace_back();
  ++live_;
  return static_cast<int>(gens_.size()) - 1;
}

void DStructure::add_arrow(int from, int to, const Weight& w, Coeff c) {
  c = ring.norm(c);
  if (c == 0) return;
  auto& row = out_[from];
  ArrowKey key{to, w};
  auto it = row.find(key);
  if (it == row.end()) {
    if (!is_nonzero_b(gens_[from].idem, gens_[to].idem, w, amb.n)) return;
    row.emplace(key, c);
    in_[to].insert(from);
    return;
  }
  it->second = ring.add(it->second, c);
  if (it->second == 0) {
    row.erase(it);
    bool still = false;
    for (auto& [k, v] : row)
      if (k.to == to) {
        still = true;
        break;
      }
    if (!still) in_[to].erase(from);
  }
}

std::size_t DStructure::arrow_count() const {
  std::size_t n = 0;
  for (std::size_t i = 0; i < out_.size(); ++i)
    if (alive_[i]) n += out_[i].size();
  return n;
}

void DStructure::cancel(int x1, int x2) {
  if (x1 == x2) throw IntegrityError("cannot cancel a generator with itself");
  if (gens_[x1].idem != gens_[x2].idem) throw IntegrityError("idempotent mismatch in cancellation");
  auto pit = out_[x1].find(ArrowKey{x2, Weight{}});
  if (pit == out_[x1].end()) throw IntegrityError("no weight-zero arrow to cancel");
  Coeff cinv = ring.inv(pit->second);

  std::vector<std::tuple<int, Weight, Coeff>> row1;
  for (auto& [k, v] : out_[x1])
    if (k.to != x1 && k.to != x2) row1.emplace_back(k.to, k.w, v);
  std::sort(row1.begin(), row1.end(), [](auto& a, auto& b) {
    return std::tie(std::get<0>(a), std::get<1>(a)) < std::tie(std::get<0>(b), std::get<1>(b));
  });
  std::vector<int> sources(in_[x2].begin(), in_[x2].end());
  std::sort(sources.begin(), sources.end());
  for (int i : sources) {
    if (i == x1 || i == x2) continue;
    std::vector<std::pair<Weight, Coeff>> col;
    for (auto& [k, v] : out_[i])
      if (k.to == x2) col.emplace_back(k.w, v);
    std::sort(col.begin(), col.end(), [](auto& a, auto& b) { return a.first < b.first; });
    for (auto& [w1, a] : col) {
      Coeff f = ring.neg(ring.mul(a, cinv));
      for (auto& [j, w2, b] : row1) add_arrow(i, j, w1 + w2, ring.mul(f, b));
    }
  }
  for (int x : {x1, x2}) {
    for (auto& [k, v] : out_[x]) in_[k.to].erase(x);
    std::vector<int> src(in_[x].begin(), in_[x].end());
    for (int s : src) {
      auto& row = out_[s];
      for (auto it = row.begin(); it != row.end();)
        it = it->first.to == x ? row.erase(it) : std::next(it);
    }
    out_[x].clear();
    in_[x].clear();
    alive_[x] = 0;
    --live_;
  }
}

int DStructure::reduce() {
  int cancelled = 0;
  while (true) {
    struct Cand {
      std::size_t cost;
      int x1, x2;
    };
    std::vector<Cand> cands;
    for (int x1 = 0; x1 < size(); ++x1) {
      if (!alive_[x1]) continue;
      for (auto& [k, v] : out_[x1]) {
        if (!k.w.zero() || k.to == x1 || !ring.invertible(v)) continue;
        std::size_t cost = (in_[k.to].size() - 1) * (out_[x1].size() - 1);
        cands.push_back({cost, x1, k.to});
      }
    }
    if (cands.empty()) break;
    std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
      return std::tie(a.cost, a.x1, a.x2) < std::tie(b.cost, b.x1, b.x2);
    });
    std::vector<char> touched(size(), 0);
    int batch = 0;
    for (auto& c : cands) {
      if (!alive_[c.x1] || !alive_[c.x2] || touched[c.x1] || touched[c.x2]) continue;
      auto it = out_[c.x1].find(ArrowKey{c.x2, Weight{}});
      if (it == out_[c.x1].end() || !ring.invertible(it->second)) continue;
      // neighbours receive fill-in; later candidates touching them wait for the next round
      for (auto& [k, v] : out_[c.x1]) touched[k.to] = 1;
      for (int s : in_[c.x2]) touched[s] = 1;
      touched[c.x1] = touched[c.x2] = 1;
      cancel(c.x1, c.x2);
      ++batch;
    }
    cancelled += batch;
    if (batch == 0) break;
  }
  return cancelled;
}

void DStructure::compact() {
  std::vector<int> remap(size(), -1);
  DStructure out(amb, ring, upwards);
  for (int i = 0; i < size(); ++i)
    if (alive_[i]) remap[i] = out.add_gen(gens_[i]);
  for (int i = 0; i < size(); ++i) {
    if (!alive_[i]) continue;
    for (auto& [k, v] : out_[i]) {
      out.out_[remap[i]].emplace(ArrowKey{remap[k.to], k.w}, v);
      out.in_[remap[k.to]].insert(remap[i]);
    }
  }
  *this = std::move(out);
}

DStructure DStructure::reduced_mod(int p) const {
  DStructure out(amb, Ring{p}, upwards);
  std::vector<int> remap(size(), -1);
  for (int i = 0; i < size(); ++i)
    if (alive_[i]) remap[i] = out.add_gen(gens_[i]);
  for (int i = 0; i < size(); ++i) {
    if (!alive_[i]) continue;
    for (auto& [k, v] : out_[i]) out.add_arrow(remap[i], remap[k.to], k.w, v);
  }
  return out;
}

StructureReport check_structure(const DStructure& X) {
  StructureReport rep;
  const int n = X.amb.n;
  for (int x = 0; x < X.size(); ++x) {
    if (!X.alive(x)) continue;
    const DGen& gx = X.gen(x);
    if (popcount(gx.idem) != X.amb.k) rep.fail("generator " + std::to_string(x) + " has idempotent of wrong size");
    std::map<std::pair<int, Weight>, Coeff> sq;
    for (auto& [k, a] : X.out(x)) {
      const DGen& gy = X.gen(k.to);
      if (!X.alive(k.to)) rep.fail("arrow into a dead generator from " + std::to_string(x));
      if (!admissible_weight(gx.idem, gy.idem, k.w, n) || !is_nonzero_b(gx.idem, gy.idem, k.w, n))
        rep.fail("arrow " + std::to_string(x) + "->" + std::to_string(k.to) + " is not a nonzero element");
      if (gx.delta2 - 2 != -k.w.total2() + gy.delta2)
        rep.fail("Delta grading law fails on arrow " + std::to_string(x) + "->" + std::to_string(k.to));
      if (gx.alex2 != alex_scalar2(k.w, X.upwards, n) + gy.alex2)
        rep.fail("Alexander grading law fails on arrow " + std::to_string(x) + "->" + std::to_string(k.to));
      for (auto& [k2, b] : X.out(k.to)) {
        Weight w = k.w + k2.w;
        if (!is_nonzero_b(gx.idem, X.gen(k2.to).idem, w, n)) continue;
        auto& s = sq[{k2.to, w}];
        s = X.ring.add(s, X.ring.mul(a, b));
      }
    }
    for (auto [i, j] : X.amb.m.pairs()) {
      Weight w;
      w.set(i, 2);
      w.set(j, 2);
      if (!is_nonzero_b(gx.idem, gx.idem, w, n)) continue;
      auto& s = sq[{x, w}];
      s = X.ring.sub(s, 1);
    }
    for (auto& [key, c] : sq)
      if (X.ring.norm(c) != 0)
        rep.fail("curved relation fails at generator " + std::to_string(x) + " towards " + std::to_string(key.first) +
                 " (coefficient " + std::to_string(c) + ", element " +
                 pure_str(X.amb, Pure{gx.idem, X.gen(key.first).idem, key.second, 0}) + ")");
  }
  return rep;
}

std::string dump(const DStructure& X) {
  std::ostringstream os;
  os << "ambient n=" << X.amb.n << " k=" << X.amb.k << " M=" << X.amb.m.str() << " ring=" << X.ring.name() << "\n";
  for (int x = 0; x < X.size(); ++x) {
    if (!X.alive(x)) continue;
    const DGen& g = X.gen(x);
    os << "gen " << x << " idem=" << state_str(g.idem) << " delta2=" << g.delta2 << " alex2=" << g.alex2 << "\n";
  }
  for (int x = 0; x < X.size(); ++x) {
    if (!X.alive(x)) continue;
    std::vector<std::pair<ArrowKey, Coeff>> row(X.out(x).begin(), X.out(x).end());
    std::sort(row.begin(), row.end(), [](auto& a, auto& b) {
      return std::tie(a.first.to, a.first.w) < std::tie(b.first.to, b.first.w);
    });
    for (auto& [k, c] : row)
      os << "arrow " << x << " -> " << k.to << " " << c << " "
         << pure_str(X.amb, Pure{X.gen(x).idem, X.gen(k.to).idem, k.w, 0}) << "\n";
  }
  return os.str();
}

}  // namespace hfk
