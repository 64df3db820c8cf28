#include "hfk/tensor.hpp"

#include <atomic>
#include <map>
#include <mutex>
#include <thread>

namespace hfk {

namespace {

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  h ^= h >> 31;
  h *= 0xbf58476d1ce4e5b9ULL;
  return h ^ (h >> 29);
}

std::string event_str(const Event& e) {
  switch (e.kind) {
    case EventKind::Max: return "max " + std::to_string(e.pos);
    case EventKind::Min: return "min " + std::to_string(e.pos);
    case EventKind::CrossOver: return "o " + std::to_string(e.pos);
    case EventKind::CrossUnder: return "u " + std::to_string(e.pos);
  }
  return "?";
}

}  // namespace

BimoduleKind crossing_bimodule(EventKind k) { return k == kPosGeometry ? BimoduleKind::Pos : BimoduleKind::Neg; }

DStructure unit_structure(Ring r) {
  DStructure x(Ambient{0, 0, Matching{}}, r, 0);
  x.add_gen(DGen{0, 0, 0, 1});
  return x;
}

DStructure box_tensor(const Bimodule& b, const DStructure& x, int threads) {
  if (!(b.in == x.amb)) throw IntegrityError("bimodule input ambient does not match the structure");
  DStructure out(b.out, x.ring, b.out_upwards);
  struct Src {
    BGen g;
    int y;
  };
  std::vector<Src> srcs;
  std::map<std::pair<int, int>, int> index;  // (y, label) -> generator
  for (int y = 0; y < x.size(); ++y) {
    if (!x.alive(y)) continue;
    const DGen& gy = x.gen(y);
    for (const BGen& g : b.generators(gy.idem)) {
      DGen ng{g.left, g.delta2 + gy.delta2, g.alex2 + gy.alex2,
              mix(mix(gy.tag, static_cast<std::uint64_t>(g.label) + 1), g.left)};
      index[{y, g.label}] = out.add_gen(ng);
      srcs.push_back({g, y});
    }
  }
  std::vector<std::vector<TensorArrow>> arrows(srcs.size());
  auto work = [&](std::size_t i) { b.arrows(srcs[i].g, x, srcs[i].y, arrows[i]); };
  if (threads <= 1 || srcs.size() < 64) {
    for (std::size_t i = 0; i < srcs.size(); ++i) work(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr err;
    std::mutex err_mu;
    for (int t = 0; t < threads; ++t)
      pool.emplace_back([&] {
        try {
          for (std::size_t i; (i = next.fetch_add(1)) < srcs.size();) work(i);
        } catch (...) {
          std::lock_guard<std::mutex> lk(err_mu);
          if (!err) err = std::current_exception();
        }
      });
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
  }
  for (std::size_t i = 0; i < srcs.size(); ++i) {
    int from = static_cast<int>(i);
    for (const TensorArrow& a : arrows[i]) {
      auto it = index.find({a.y_end, a.label});
      if (it == index.end() || out.gen(it->second).idem != a.left)
        throw IntegrityError("tensor arrow lands on a missing generator in " + b.name());
      out.add_arrow(from, it->second, a.w, a.c);
    }
  }
  return out;
}

DStructure apply_crossing(BimoduleKind kind, int i, const DStructure& x, int threads) {
  if (kind != BimoduleKind::Pos && kind != BimoduleKind::Neg) throw std::invalid_argument("not a crossing bimodule");
  if (i < 1 || i >= 2 * x.amb.n) throw std::invalid_argument("crossing position out of range");
  SliceData above{x.amb.n, x.amb.m, x.upwards};
  SliceData below{x.amb.n, transpose_matching(x.amb.m, i), x.upwards & ~(bit(i) | bit(i + 1))};
  if (x.upwards & bit(i)) below.upwards |= bit(i + 1);
  if (x.upwards & bit(i + 1)) below.upwards |= bit(i);
  auto bim = make_bimodule(kind, i, above, below, x.amb.k);
  return box_tensor(*bim, x, threads);
}

std::map<std::tuple<State, int, int>, int> graded_counts(const DStructure& x) {
  std::map<std::tuple<State, int, int>, int> out;
  for (int i = 0; i < x.size(); ++i)
    if (x.alive(i)) ++out[{x.gen(i).idem, x.gen(i).delta2, x.gen(i).alex2}];
  return out;
}

BigradedComplex terminal_min(const DStructure& x) {
  if (x.amb.n != 1 || x.amb.k != 1 || !x.amb.m.contains(1, 2))
    throw IntegrityError("terminal minimum needs two matched strands and one occupied gap");
  BigradedComplex c;
  c.ring = x.ring;
  const State mid = bit(1);
  const bool first_up = x.upwards & bit(1);
  std::vector<int> remap(x.size(), -1);
  // Delta is only defined up to an overall shift here; normalize_gradings fixes it later
  int dpar = -1;
  for (int i = 0; i < x.size(); ++i) {
    if (!x.alive(i) || x.gen(i).idem != mid) continue;
    const DGen& g = x.gen(i);
    if (dpar < 0) dpar = g.delta2 & 1;
    if ((g.alex2 & 1) || (g.delta2 & 1) != dpar) throw IntegrityError("half-integral grading on a closed generator");
    remap[i] = static_cast<int>(c.gens.size());
    c.gens.push_back(CGen{g.alex2 / 2, (g.delta2 - dpar) / 2, g.tag});
  }
  for (int i = 0; i < x.size(); ++i) {
    if (remap[i] < 0) continue;
    for (auto& [k, v] : x.out(i)) {
      if (remap[k.to] < 0) continue;
      int h1 = k.w[1], h2 = k.w[2];
      if (h1 && h2) continue;
      int u = first_up ? h1 / 2 : h2 / 2;
      int vv = first_up ? h2 / 2 : h1 / 2;
      c.diff.push_back(CEntry{remap[i], remap[k.to], v, u, vv});
    }
  }
  return c;
}

PipelineResult run_pipeline(const OrientedDiagram& od_in, const PipelineOptions& opt) {
  OrientedDiagram od = od_in;
  bool deep_min = false;
  for (auto& e : od.diagram.events)
    if (e.kind == EventKind::Min && e.pos > 1) deep_min = true;
  if (deep_min) {
    OrientedDiagram ex = orient(expand_minima(od.diagram, kPosGeometry));
    if (ex.slices.back().upwards != od.slices.back().upwards) ex = reverse(ex);
    od = ex;
  }
  PipelineResult res;
  DStructure cur = unit_structure(opt.ring);
  int k = 0;
  const auto& events = od.diagram.events;
  for (std::size_t t = 0; t < events.size(); ++t) {
    const Event& e = events[t];
    BimoduleKind kind = e.kind == EventKind::Max   ? BimoduleKind::Max
                        : e.kind == EventKind::Min ? BimoduleKind::Min
                                                   : crossing_bimodule(e.kind);
    auto bim = make_bimodule(kind, e.pos, od.slices[t], od.slices[t + 1], k);
    if (!(bim->out.m == od.slices[t + 1].matching))
      throw IntegrityError("derived matching disagrees with the diagram after " + event_str(e));
    cur = box_tensor(*bim, cur, opt.threads);
    k = bim->out.k;
    SliceStat st;
    st.event = event_str(e);
    st.generators = cur.live_count();
    if (opt.interleaved) {
      cur.reduce();
      cur.compact();
    }
    st.reduced = cur.live_count();
    st.arrows = cur.arrow_count();
    res.stats.push_back(st);
    if (opt.check) {
      auto rep = check_structure(cur);
      if (!rep.ok)
        throw IntegrityError("structure check failed after " + st.event + ": " + rep.violations.front());
    }
    if (opt.on_slice) opt.on_slice(cur);
    if (opt.dump) res.dumps.push_back("# after " + st.event + "\n" + dump(cur));
  }
  for (int i = 0; i < cur.size(); ++i)
    if (cur.alive(i) && cur.gen(i).idem == bit(1)) ++res.unreduced_generators;
  if (opt.final_reduce) {
    cur.reduce();
    cur.compact();
  }
  res.complex = terminal_min(cur);
  check_complex(res.complex);
  normalize_gradings(res.complex);
  res.last = std::move(cur);
  return res;
}

}  // namespace hfk
