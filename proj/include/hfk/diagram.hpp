#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "hfk/algebra.hpp"

namespace hfk {

enum class EventKind { Max, Min, CrossOver, CrossUnder };

struct Event {
  EventKind kind;
  int pos;  // c for critical points, i for crossings (strands i and i+1)
  bool operator==(const Event& o) const = default;
};

struct Diagram {
  std::string name;
  std::vector<Event> events;
  bool operator==(const Diagram& o) const = default;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, int line, int col)
      : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + msg),
        line_(line),
        col_(col) {}
  int line() const { return line_; }
  int col() const { return col_; }

 private:
  int line_, col_;
};

class DiagramError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SliceData {
  int n = 0;
  Matching matching;
  std::uint32_t upwards = 0;  // bit s: strand s oriented into the upper part
};

struct OrientedDiagram {
  Diagram diagram;
  std::vector<SliceData> slices;    // slices[t] lies below the first t events
  std::vector<int> crossing_signs;  // per event; 0 for critical points
  int writhe = 0;
};

Diagram parse_diagram(const std::string& text, const std::string& name = "");
Diagram load_diagram(const std::string& path);
void validate(const Diagram& d);
std::string to_text(const Diagram& d);

// Strand counts of every slice (size events+1).
std::vector<int> strand_counts(const Diagram& d);

OrientedDiagram orient(const Diagram& d);
Diagram mirror(const Diagram& d);
OrientedDiagram reverse(const OrientedDiagram& od);

Diagram braid_closure(int n, const std::vector<int>& word);
Diagram connected_sum(const Diagram& a, const Diagram& b);

// Replaces every Min(c) with c > 1 by crossings of the given kind at c-1 and c followed by
// Min(c-1), recursively, producing an isotopic diagram with all minima at position 1.
Diagram expand_minima(const Diagram& d, EventKind slide);

// Oriented crossing sign (+1/-1) of a crossing event given the orientation below it.
int crossing_sign(EventKind kind, bool lower_i_up, bool lower_i1_up);

}  // namespace hfk
