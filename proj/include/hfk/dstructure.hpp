#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "hfk/algebra.hpp"

namespace hfk {

struct DGen {
  State idem = 0;
  int delta2 = 0;  // doubled Delta grading
  int alex2 = 0;   // doubled scalar Alexander grading
  std::uint64_t tag = 0;  // provenance, stable across rings
};

struct ArrowKey {
  int to;
  Weight w;
  bool operator==(const ArrowKey& o) const = default;
};

struct ArrowKeyHash {
  std::size_t operator()(const ArrowKey& k) const { return k.w.hash() * 31 + static_cast<std::size_t>(k.to); }
};

using ArrowMap = std::unordered_map<ArrowKey, Coeff, ArrowKeyHash>;

// Standard type D structure over A(n,k,M): delta^1 = -sum_p C_p + eps with eps valued in B(2n,k).
// The curved relation reads eps o eps = sum_p U_{p1} U_{p2} (signs vanish mod 2).
class DStructure {
 public:
  DStructure() = default;
  DStructure(const Ambient& a, Ring r, std::uint32_t upwards) : amb(a), ring(r), upwards(upwards) {}

  Ambient amb;
  Ring ring;
  std::uint32_t upwards = 0;

  int add_gen(const DGen& g);
  // Adds c * (idem(from) -> idem(to), weight w) to eps; drops terms that vanish in B.
  void add_arrow(int from, int to, const Weight& w, Coeff c);
  int size() const { return static_cast<int>(gens_.size()); }
  int live_count() const { return live_; }
  bool alive(int i) const { return alive_[i]; }
  const DGen& gen(int i) const { return gens_[i]; }
  const ArrowMap& out(int i) const { return out_[i]; }
  const std::unordered_set<int>& in(int i) const { return in_[i]; }
  std::size_t arrow_count() const;

  // Cancels the weight-zero arrow x1 -> x2.
  void cancel(int x1, int x2);
  // Cancels weight-zero arrows until none with invertible coefficient remain. Returns the
  // number of cancelled pairs.
  int reduce();
  // Renumbers live generators densely preserving order.
  void compact();
  DStructure reduced_mod(int p) const;

 private:
  std::vector<DGen> gens_;
  std::vector<char> alive_;
  std::vector<ArrowMap> out_;
  std::vector<std::unordered_set<int>> in_;
  int live_ = 0;
};

struct StructureReport {
  bool ok = true;
  std::vector<std::string> violations;
  void fail(const std::string& s) {
    ok = false;
    if (violations.size() < 50) violations.push_back(s);
  }
};

// Verifies idempotent compatibility, both grading laws and the curved structure relation.
StructureReport check_structure(const DStructure& X);

std::string dump(const DStructure& X);

}  // namespace hfk
