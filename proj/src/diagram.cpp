#include "hfk/diagram.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace hfk {

namespace {

std::vector<Matching> slice_matchings(const Diagram& d) {
  std::vector<Matching> ms;
  Matching m;
  int strands = 0;
  ms.push_back(m);
  for (std::size_t t = 0; t < d.events.size(); ++t) {
    const Event& e = d.events[t];
    std::string where = "event " + std::to_string(t + 1) + ": ";
    Matching nm;
    if (e.kind == EventKind::Max) {
      if (e.pos < 1 || e.pos > strands + 1) throw DiagramError(where + "max position out of range");
      if (strands + 2 > kMaxStrands) throw DiagramError(where + "too many strands");
      auto sh = [&](int j) { return j < e.pos ? j : j + 2; };
      for (int j = 1; j <= strands; ++j) nm.partner[sh(j)] = static_cast<std::int8_t>(sh(m.of(j)));
      nm.pair(e.pos, e.pos + 1);
      strands += 2;
    } else if (e.kind == EventKind::Min) {
      if (strands < 4 || e.pos < 1 || e.pos > strands - 1)
        throw DiagramError(where + (strands == 2 ? "early closure: min caps the last matched pair"
                                                 : "min position out of range"));
      int c = e.pos;
      if (m.of(c) == c + 1) throw DiagramError(where + "early closure: min caps a matched pair");
      auto sh = [&](int j) { return j < c ? j : j - 2; };
      int a = m.of(c), b = m.of(c + 1);
      for (int j = 1; j <= strands; ++j) {
        if (j == c || j == c + 1 || j == a || j == b) continue;
        nm.partner[sh(j)] = static_cast<std::int8_t>(sh(m.of(j)));
      }
      nm.pair(sh(a), sh(b));
      strands -= 2;
    } else {
      if (e.pos < 1 || e.pos > strands - 1) throw DiagramError(where + "crossing position out of range");
      auto sw = [&](int j) { return j == e.pos ? j + 1 : j == e.pos + 1 ? j - 1 : j; };
      for (int j = 1; j <= strands; ++j) nm.partner[sw(j)] = static_cast<std::int8_t>(sw(m.of(j)));
    }
    m = nm;
    ms.push_back(m);
  }
  if (strands != 2) throw DiagramError("diagram must end with exactly two strands, found " + std::to_string(strands));
  return ms;
}

}  // namespace

std::vector<int> strand_counts(const Diagram& d) {
  std::vector<int> out{0};
  for (auto& e : d.events) {
    int s = out.back();
    if (e.kind == EventKind::Max) s += 2;
    if (e.kind == EventKind::Min) s -= 2;
    out.push_back(s);
  }
  return out;
}

void validate(const Diagram& d) { slice_matchings(d); }

Diagram braid_closure(int n, const std::vector<int>& word) {
  Diagram d;
  for (int i = 0; i < n; ++i) d.events.push_back({EventKind::Max, 1});
  for (int g : word) d.events.push_back({g > 0 ? EventKind::CrossOver : EventKind::CrossUnder, std::abs(g)});
  for (int i = 0; i + 1 < n; ++i) d.events.push_back({EventKind::Min, 1});
  return d;
}

Diagram parse_diagram(const std::string& text, const std::string& name) {
  Diagram d;
  d.name = name;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  bool braid = false;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::vector<std::pair<std::string, int>> toks;
    for (std::size_t i = 0; i < line.size();) {
      if (std::isspace(static_cast<unsigned char>(line[i]))) {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
      toks.emplace_back(line.substr(i, j - i), static_cast<int>(i + 1));
      i = j;
    }
    if (toks.empty()) continue;
    auto num = [&](std::size_t k) {
      if (k >= toks.size()) throw ParseError("missing integer argument", lineno, static_cast<int>(line.size() + 1));
      const auto& [s, col] = toks[k];
      std::size_t used = 0;
      int v = 0;
      try {
        v = std::stoi(s, &used);
      } catch (...) {
        used = 0;
      }
      if (used != s.size() || s.empty()) throw ParseError("expected integer, got '" + s + "'", lineno, col);
      return v;
    };
    const std::string& kw = toks[0].first;
    if (braid) throw ParseError("braid shorthand must be the only statement", lineno, toks[0].second);
    if (kw == "braid") {
      if (!d.events.empty()) throw ParseError("braid shorthand must be the only statement", lineno, toks[0].second);
      int n = num(1);
      if (n < 1) throw ParseError("braid needs at least one strand pair", lineno, toks[1].second);
      std::vector<int> word;
      for (std::size_t k = 2; k < toks.size(); ++k) {
        int g = num(k);
        if (g == 0 || std::abs(g) > 2 * n - 1) throw ParseError("braid generator out of range", lineno, toks[k].second);
        word.push_back(g);
      }
      auto b = braid_closure(n, word);
      d.events = b.events;
      braid = true;
      continue;
    }
    EventKind kind;
    if (kw == "max") kind = EventKind::Max;
    else if (kw == "min") kind = EventKind::Min;
    else if (kw == "o") kind = EventKind::CrossOver;
    else if (kw == "u") kind = EventKind::CrossUnder;
    else throw ParseError("unknown keyword '" + kw + "'", lineno, toks[0].second);
    int pos = num(1);
    if (toks.size() > 2) throw ParseError("unexpected token '" + toks[2].first + "'", lineno, toks[2].second);
    d.events.push_back({kind, pos});
  }
  if (d.events.empty()) throw ParseError("empty diagram", lineno, 1);
  validate(d);
  return d;
}

Diagram load_diagram(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open " + path, 0, 0);
  std::stringstream ss;
  ss << f.rdbuf();
  std::string name = path;
  auto slash = name.find_last_of('/');
  if (slash != std::string::npos) name = name.substr(slash + 1);
  auto dot = name.find_last_of('.');
  if (dot != std::string::npos) name = name.substr(0, dot);
  return parse_diagram(ss.str(), name);
}

std::string to_text(const Diagram& d) {
  std::string s;
  if (!d.name.empty()) s += "# " + d.name + "\n";
  for (auto& e : d.events) {
    const char* kw = e.kind == EventKind::Max ? "max" : e.kind == EventKind::Min ? "min" : e.kind == EventKind::CrossOver ? "o" : "u";
    s += std::string(kw) + " " + std::to_string(e.pos) + "\n";
  }
  return s;
}

int crossing_sign(EventKind kind, bool lower_i_up, bool lower_i1_up) {
  // P runs from lower position i to upper position i+1, Q from lower i+1 to upper i.
  int px = lower_i_up ? 1 : -1, py = px;
  int qx = lower_i1_up ? -1 : 1, qy = -qx;
  bool p_over = kind == EventKind::CrossOver;
  int ox = p_over ? px : qx, oy = p_over ? py : qy;
  int ux = p_over ? qx : px, uy = p_over ? qy : py;
  return ox * uy - oy * ux > 0 ? 1 : -1;
}

OrientedDiagram orient(const Diagram& d) {
  auto ms = slice_matchings(d);
  auto counts = strand_counts(d);
  const int T = static_cast<int>(d.events.size());
  // up[t][j]: strand j of slice t travels upward; -1 unvisited
  std::vector<std::vector<int>> up(T + 1);
  for (int t = 0; t <= T; ++t) up[t].assign(counts[t] + 1, -1);
  int t = T, j = 1;
  bool going_up = true;
  std::size_t steps = 0, total = 0;
  for (int s = 0; s <= T; ++s) total += counts[s];
  while (true) {
    if (up[t][j] != -1) {
      if (t == T && j == 1 && going_up && up[t][j] == 1) break;
      throw DiagramError("orientation traversal revisited a strand");
    }
    up[t][j] = going_up ? 1 : 0;
    if (++steps > total) throw DiagramError("orientation traversal did not close");
    if (going_up) {
      const Event& e = d.events[t - 1];
      if (e.kind == EventKind::Max) {
        if (j == e.pos || j == e.pos + 1) {
          j = j == e.pos ? e.pos + 1 : e.pos;
          going_up = false;
          continue;
        }
        j = j < e.pos ? j : j - 2;
      } else if (e.kind == EventKind::Min) {
        j = j < e.pos ? j : j + 2;
      } else {
        j = j == e.pos ? j + 1 : j == e.pos + 1 ? j - 1 : j;
      }
      --t;
    } else {
      if (t == T) {
        j = 3 - j;
        going_up = true;
        continue;
      }
      const Event& e = d.events[t];
      if (e.kind == EventKind::Min) {
        if (j == e.pos || j == e.pos + 1) {
          j = j == e.pos ? e.pos + 1 : e.pos;
          going_up = true;
          continue;
        }
        j = j < e.pos ? j : j - 2;
      } else if (e.kind == EventKind::Max) {
        j = j < e.pos ? j : j + 2;
      } else {
        j = j == e.pos ? j + 1 : j == e.pos + 1 ? j - 1 : j;
      }
      ++t;
    }
  }
  if (steps != total) throw DiagramError("diagram has more than one component");
  OrientedDiagram od;
  od.diagram = d;
  for (int s = 0; s <= T; ++s) {
    SliceData sd;
    sd.n = counts[s] / 2;
    sd.matching = ms[s];
    for (int k = 1; k <= counts[s]; ++k)
      if (up[s][k] == 1) sd.upwards |= bit(k);
    od.slices.push_back(sd);
  }
  for (int s = 0; s < T; ++s) {
    const Event& e = d.events[s];
    int sg = 0;
    if (e.kind == EventKind::CrossOver || e.kind == EventKind::CrossUnder)
      sg = crossing_sign(e.kind, up[s + 1][e.pos] == 1, up[s + 1][e.pos + 1] == 1);
    od.crossing_signs.push_back(sg);
    od.writhe += sg;
  }
  return od;
}

Diagram mirror(const Diagram& d) {
  Diagram m = d;
  for (auto& e : m.events) {
    if (e.kind == EventKind::CrossOver) e.kind = EventKind::CrossUnder;
    else if (e.kind == EventKind::CrossUnder) e.kind = EventKind::CrossOver;
  }
  if (!m.name.empty()) m.name = "mirror(" + d.name + ")";
  return m;
}

OrientedDiagram reverse(const OrientedDiagram& od) {
  OrientedDiagram r = od;
  for (auto& s : r.slices) {
    std::uint32_t all = 0;
    for (int k = 1; k <= 2 * s.n; ++k) all |= bit(k);
    s.upwards = all & ~s.upwards;
  }
  return r;
}

Diagram connected_sum(const Diagram& a, const Diagram& b) {
  Diagram d;
  d.name = a.name + "#" + b.name;
  d.events = a.events;
  for (auto e : b.events) {
    e.pos += 1;
    d.events.push_back(e);
  }
  d.events.push_back({EventKind::Min, 1});
  validate(d);
  return d;
}

Diagram expand_minima(const Diagram& d, EventKind slide) {
  Diagram out;
  out.name = d.name;
  for (auto& e : d.events) {
    if (e.kind != EventKind::Min || e.pos == 1) {
      out.events.push_back(e);
      continue;
    }
    for (int c = e.pos; c > 1; --c) {
      out.events.push_back({slide, c - 1});
      out.events.push_back({slide, c});
    }
    out.events.push_back({EventKind::Min, 1});
  }
  validate(out);
  return out;
}

}  // namespace hfk
