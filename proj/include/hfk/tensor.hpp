#pragma once

#include <functional>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "hfk/bimodules.hpp"
#include "hfk/diagram.hpp"
#include "hfk/dstructure.hpp"
#include "hfk/homology.hpp"

namespace hfk {

// Geometric crossing type evaluated by the Pos bimodule; the other type uses Neg.
constexpr EventKind kPosGeometry = EventKind::CrossOver;

BimoduleKind crossing_bimodule(EventKind k);

// One generator over the empty boundary.
DStructure unit_structure(Ring r);

DStructure box_tensor(const Bimodule& b, const DStructure& x, int threads = 1);

// Tensors x with Pos^i or Neg^i; the slice below is derived from x's matching and orientation.
DStructure apply_crossing(BimoduleKind kind, int i, const DStructure& x, int threads = 1);

// Generator counts per (idempotent, doubled Delta, doubled Alexander).
std::map<std::tuple<State, int, int>, int> graded_counts(const DStructure& x);

// Final minimum: keeps the generators over the middle idempotent and maps weights to U, V
// according to the orientation of strand 1.
BigradedComplex terminal_min(const DStructure& x);

struct PipelineOptions {
  Ring ring;
  bool interleaved = true;   // reduce after every slice
  bool final_reduce = true;  // reduce before the terminal minimum
  bool check = false;        // run check_structure after every slice
  bool dump = false;         // keep a text dump of every intermediate structure
  int threads = 1;
  // Called with every intermediate structure after the optional reduction.
  std::function<void(const DStructure&)> on_slice;
};

struct SliceStat {
  std::string event;
  int generators = 0;  // after tensoring, before reduction
  int reduced = 0;     // after reduction
  std::size_t arrows = 0;
};

struct PipelineResult {
  DStructure last;              // structure before the terminal minimum
  BigradedComplex complex;      // normalized complex over R
  int unreduced_generators = 0; // generators entering the terminal minimum
  std::vector<SliceStat> stats;
  std::vector<std::string> dumps;
};

PipelineResult run_pipeline(const OrientedDiagram& od, const PipelineOptions& opt);

}  // namespace hfk
