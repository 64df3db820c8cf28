#include "report.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <sstream>

namespace hfk {

namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

std::string event_text(const Event& e) {
  switch (e.kind) {
    case EventKind::Max: return "max " + std::to_string(e.pos);
    case EventKind::Min: return "min " + std::to_string(e.pos);
    case EventKind::CrossOver: return "o " + std::to_string(e.pos);
    case EventKind::CrossUnder: return "u " + std::to_string(e.pos);
  }
  return "";
}

std::string hat_key(const HatEntry& h) {
  std::string s = "(" + std::to_string(h.a) + "," + std::to_string(h.m) + "):" + std::to_string(h.dim);
  for (auto& t : h.torsion) s += " Z/" + t;
  return s;
}

}  // namespace

KnotReport compute_report(const Diagram& d, const PipelineOptions& opt) {
  KnotReport r;
  r.knot = d.name;
  r.ring = opt.ring;
  r.od = orient(d);
  auto t0 = std::chrono::steady_clock::now();
  r.res = run_pipeline(r.od, opt);
  r.pipeline_ms = ms_since(t0);
  t0 = std::chrono::steady_clock::now();
  const BigradedComplex& c = r.res.complex;
  r.hat = hfk_hat(c);
  r.alexander = alexander_polynomial(c);
  r.tau = tau(c);
  r.nu = nu(c);
  r.epsilon = epsilon(c);
  if (opt.ring.is_z()) {
    for (int p : {2, 3}) r.nu_p[p] = nu_p(c, p);
  } else {
    r.nu_p[opt.ring.p] = r.nu;
  }
  r.homology_ms = ms_since(t0);
  return r;
}

nlohmann::json diagram_json(const OrientedDiagram& od) {
  nlohmann::json j;
  j["name"] = od.diagram.name;
  nlohmann::json ev = nlohmann::json::array();
  for (auto& e : od.diagram.events) ev.push_back(event_text(e));
  j["events"] = ev;
  j["crossing_signs"] = od.crossing_signs;
  j["writhe"] = od.writhe;
  nlohmann::json sl = nlohmann::json::array();
  for (auto& s : od.slices) {
    nlohmann::json m = nlohmann::json::array();
    for (auto [a, b] : s.matching.pairs()) m.push_back({a, b});
    std::vector<int> up;
    for (int i = 1; i <= 2 * s.n; ++i)
      if (s.upwards & bit(i)) up.push_back(i);
    sl.push_back({{"n", s.n}, {"matching", m}, {"upwards", up}});
  }
  j["slices"] = sl;
  return j;
}

nlohmann::json report_json(const KnotReport& r, bool timings) {
  nlohmann::json j;
  j["knot"] = r.knot;
  j["ring"] = r.ring.name();
  j["diagram"] = diagram_json(r.od);
  nlohmann::json hat = nlohmann::json::array();
  for (auto& h : r.hat) hat.push_back({{"a", h.a}, {"m", h.m}, {"dim", h.dim}, {"torsion", h.torsion}});
  j["hfk_hat"] = hat;
  nlohmann::json alex = nlohmann::json::object();
  for (auto [e, c] : r.alexander) alex[std::to_string(e)] = c;
  j["alexander"] = alex;
  j["alexander_text"] = poly_str(r.alexander);
  j["tau"] = r.tau;
  j["nu"] = r.nu;
  j["epsilon"] = r.epsilon;
  nlohmann::json np = nlohmann::json::object();
  for (auto [p, v] : r.nu_p) np[std::to_string(p)] = v;
  j["nu_p"] = np;
  j["generators"] = {{"unreduced", r.res.unreduced_generators}, {"complex", r.res.complex.gens.size()}};
  if (timings) j["timings"] = {{"pipeline_ms", r.pipeline_ms}, {"homology_ms", r.homology_ms}};
  return j;
}

std::string report_text(const KnotReport& r) {
  std::ostringstream o;
  o << "knot: " << (r.knot.empty() ? "(unnamed)" : r.knot) << "\n";
  o << "ring: " << r.ring.name() << "\n";
  o << "writhe: " << r.od.writhe << "\n";
  o << "generators: " << r.res.unreduced_generators << " unreduced, " << r.res.complex.gens.size() << " in complex\n";
  o << "alexander: " << poly_str(r.alexander) << "\n";
  o << "hfk_hat (a, m): dim\n";
  for (auto& h : r.hat) o << "  " << hat_key(h) << "\n";
  o << "tau: " << r.tau << "\nnu: " << r.nu << "\nepsilon: " << r.epsilon << "\n";
  for (auto [p, v] : r.nu_p) o << "nu_" << p << ": " << v << "\n";
  return o.str();
}

std::map<std::pair<int, int>, int> hwz_table(const BigradedComplex& c) {
  int dlo = 0, dhi = 0, s = 0;
  bool first = true;
  for (auto& g : c.gens) {
    dlo = first ? g.delta : std::min(dlo, g.delta);
    dhi = first ? g.delta : std::max(dhi, g.delta);
    s = std::max(s, std::abs(g.alex));
    first = false;
  }
  const int pad = 3;
  return hwz_dims(c, dlo - pad, dhi, -s - pad, s + pad);
}

Comparison compare_reports(const KnotReport& a, const KnotReport& b) {
  Comparison cmp;
  auto diff = [&](const std::string& what, const std::string& x, const std::string& y) {
    if (x == y) return;
    cmp.equal = false;
    cmp.differences.push_back(what + ": " + x + " vs " + y);
  };
  auto hat_str = [](const KnotReport& r) {
    std::string s;
    for (auto& h : r.hat) s += hat_key(h) + " ";
    return s;
  };
  diff("hfk_hat", hat_str(a), hat_str(b));
  diff("alexander", poly_str(a.alexander), poly_str(b.alexander));
  diff("tau", std::to_string(a.tau), std::to_string(b.tau));
  diff("nu", std::to_string(a.nu), std::to_string(b.nu));
  diff("epsilon", std::to_string(a.epsilon), std::to_string(b.epsilon));
  auto ta = hwz_table(a.res.complex), tb = hwz_table(b.res.complex);
  auto table_str = [](const std::map<std::pair<int, int>, int>& t) {
    std::string s;
    for (auto& [k, v] : t)
      if (v) s += "(" + std::to_string(k.first) + "," + std::to_string(k.second) + "):" + std::to_string(v) + " ";
    return s;
  };
  // Tables are compared on the common box; both boxes contain all generators.
  std::map<std::pair<int, int>, int> ca, cb;
  for (auto& [k, v] : ta)
    if (tb.count(k)) ca[k] = v, cb[k] = tb.at(k);
  diff("hwz", table_str(ca), table_str(cb));
  return cmp;
}

Comparison verify_symmetry(const Diagram& d, const PipelineOptions& opt) {
  Comparison cmp;
  OrientedDiagram od = orient(d);
  BigradedComplex c = run_pipeline(od, opt).complex;
  BigradedComplex r = run_pipeline(reverse(od), opt).complex;
  auto tc = hwz_table(c), tr = hwz_table(r);
  for (auto& [k, v] : tc) {
    auto it = tr.find({k.first, -k.second});
    if (it == tr.end()) continue;
    if (it->second != v) {
      cmp.equal = false;
      cmp.differences.push_back("dim at (" + std::to_string(k.first) + "," + std::to_string(k.second) +
                                "): " + std::to_string(v) + " vs " + std::to_string(it->second));
    }
    if (!v) continue;
    ActionRanks a = hwz_action_ranks(c, k.first, k.second);
    ActionRanks b = hwz_action_ranks(r, k.first, -k.second);
    if (a.u != b.v || a.v != b.u) {
      cmp.equal = false;
      cmp.differences.push_back("action ranks at (" + std::to_string(k.first) + "," + std::to_string(k.second) +
                                ") do not swap");
    }
  }
  return cmp;
}

std::vector<std::pair<std::string, Diagram>> diagram_variants(const Diagram& d) {
  std::vector<std::pair<std::string, Diagram>> out;
  auto named = [&](const std::string& what, std::vector<Event> ev) {
    Diagram v;
    v.name = d.name + " (" + what + ")";
    v.events = std::move(ev);
    validate(v);
    out.push_back({what, v});
  };
  const auto& ev = d.events;
  std::size_t lead = 0;
  while (lead < ev.size() && ev[lead].kind == EventKind::Max) ++lead;
  if (lead < 2) {
    // Single maximum: isotopic diagrams with an extra bubble.
    named("extra cap pair", {{EventKind::Max, 1}, {EventKind::Max, 3}, {EventKind::Min, 2}});
    named("kink and cancelling pair", {{EventKind::Max, 1},
                                      {EventKind::Max, 1},
                                      {EventKind::CrossOver, 1},
                                      {EventKind::CrossUnder, 1},
                                      {EventKind::CrossOver, 2},
                                      {EventKind::Min, 1}});
    return out;
  }
  auto insert = [&](std::vector<Event> mid) {
    std::vector<Event> v(ev.begin(), ev.begin() + static_cast<long>(lead));
    v.insert(v.end(), mid.begin(), mid.end());
    v.insert(v.end(), ev.begin() + static_cast<long>(lead), ev.end());
    return v;
  };
  using K = EventKind;
  named("cancelling pairs", insert({{K::CrossOver, 1}, {K::CrossOver, 3}, {K::CrossUnder, 3}, {K::CrossUnder, 1}}));
  named("distant commutation",
        insert({{K::CrossOver, 3}, {K::CrossOver, 1}, {K::CrossUnder, 3}, {K::CrossUnder, 1}}));
  if (ev[0].pos == 1 && ev[1].pos == 1) {
    std::vector<Event> v = ev;
    v[1].pos = 3;
    named("commuted maxima", v);
  }
  return out;
}

std::string conventions_text() {
  return "hfk " HFK_VERSION
         "\n"
         "conventions:\n"
         "  events are read top to bottom; 'o i': the strand entering position i from below leaves at i+1 over\n"
         "    the other strand; 'u i': it passes under\n"
         "  'o' crossings use the Pos bimodule and 'u' crossings use Neg; the all-'o' plat trefoil\n"
         "    (max 1, max 1, o 2 x3, min 1) has writhe +3 and tau = +1\n"
         "  orientation: the left strand of the final cap points up\n"
         "  gradings: Delta = #C - total weight, Maslov M = Delta + A; U lowers (M, A) by (2, 1), V keeps M and\n"
         "    raises A by 1 (Delta(U) = Delta(V) = -1)\n"
         "  normalization: the U-nontorsion tower of H(C/V) sits at M = 2A; the unknot is at (A, M) = (0, 0)\n"
         "  tau = -max s with U-nontorsion in H(C/V); nu likewise in H(C); epsilon = (tau - nu) - (tau' - nu')\n"
         "    with primes on the dual complex\n";
}

}  // namespace hfk
