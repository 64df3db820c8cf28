#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hfk/tensor.hpp"
#include "json.hpp"

namespace hfk {

struct KnotReport {
  std::string knot;
  Ring ring;
  OrientedDiagram od;
  PipelineResult res;
  std::vector<HatEntry> hat;
  std::map<int, long> alexander;
  int tau = 0, nu = 0, epsilon = 0;
  std::map<int, int> nu_p;
  double pipeline_ms = 0, homology_ms = 0;
};

KnotReport compute_report(const Diagram& d, const PipelineOptions& opt);

nlohmann::json diagram_json(const OrientedDiagram& od);
nlohmann::json report_json(const KnotReport& r, bool timings);
std::string report_text(const KnotReport& r);

// Dimensions of H(C) over a box symmetric in s that contains every generator's grading.
std::map<std::pair<int, int>, int> hwz_table(const BigradedComplex& c);

struct Comparison {
  bool equal = true;
  std::vector<std::string> differences;
};
Comparison compare_reports(const KnotReport& a, const KnotReport& b);

// dim H_delta(K, s) = dim H_delta(-K, -s) and U/V action ranks swap.
Comparison verify_symmetry(const Diagram& d, const PipelineOptions& opt);

// Isotopic rewrites of d: cancelling crossing pairs, a commutation of distant crossings and a
// commutation of maxima. Each entry is (description, diagram).
std::vector<std::pair<std::string, Diagram>> diagram_variants(const Diagram& d);

std::string conventions_text();

}  // namespace hfk
