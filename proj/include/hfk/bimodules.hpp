#pragma once

#include <memory>
#include <string>
#include <vector>

#include "hfk/algebra.hpp"
#include "hfk/diagram.hpp"
#include "hfk/dstructure.hpp"

namespace hfk {

enum class BimoduleKind { Pos, Neg, Max, Min };

// Crossing labels.
enum : int { kN = 0, kS = 1, kW = 2, kE = 3 };
// Max labels.
enum : int { kMaxX = 0, kMaxY = 1, kMaxZ = 2 };
// Min labels: generator with 0 in its right idempotent starts at XL1, otherwise at YR2.
enum : int { kXL1 = 0, kYR2 = 1 };

struct BGen {
  int label = 0;
  State left = 0, right = 0;
  int delta2 = 0;  // local doubled Delta
  int alex2 = 0;   // local doubled scalar Alexander (output Upwards)
  int ext = 0;     // exterior grading mod 2
  bool operator==(const BGen& o) const { return label == o.label && left == o.left && right == o.right; }
};

// One term b (x) g' of a gamma operation; b lies in the output B-algebra.
struct GammaTerm {
  int sign = 1;
  Pure b;
  BGen target;
};

// eps-arrow of a tensor generator (g, y) towards (target, y_end).
struct TensorArrow {
  int label;
  State left;
  int y_end;
  Weight w;
  Coeff c;
};

class Bimodule {
 public:
  virtual ~Bimodule() = default;
  BimoduleKind kind;
  int pos = 0;
  Ambient in, out;
  std::uint32_t in_upwards = 0, out_upwards = 0;

  // Generators whose right idempotent is r.
  virtual std::vector<BGen> generators(State r) const = 0;
  // Curvature-augmented gamma on an explicit sequence of pure input B elements.
  virtual std::vector<GammaTerm> gamma(const BGen& g, const std::vector<Pure>& betas) const = 0;
  // All eps-arrows out of g (x) y in the box tensor with X.
  virtual void arrows(const BGen& g, const DStructure& X, int y, std::vector<TensorArrow>& out) const;
  std::string name() const;

 protected:
  virtual int max_inputs(const BGen& g) const = 0;
};

// Builds the bimodule for a crossing (Pos/Neg), Max(c) or Min(1) with the given slice data above
// (input) and below (output).
std::unique_ptr<Bimodule> make_bimodule(BimoduleKind kind, int pos, const SliceData& above, const SliceData& below,
                                        int k_in);

// Matching below a slice event.
Matching transpose_matching(const Matching& m, int i);

// Local type of a two-strand element restricted to strands i, i+1.
struct LocalElt {
  int e = 0;  // 0:1 1:L1 2:R1 3:L2 4:R2 5:L1L2 6:R2R1
  int p = 0, q = 0;  // U1 and U2 exponents
  bool operator==(const LocalElt& o) const = default;
};
enum : int { kOne = 0, kL1, kR1, kL2, kR2, kL1L2, kR2R1 };

LocalElt local_type(const Pure& a, int i);
std::string local_str(const LocalElt& t);

// Membership tests in the local crossing model (labels N,S,W,E).
bool local_delta2(int xt, const LocalElt& a, const LocalElt& b, int yt);
int local_delta3(const LocalElt& a1, const LocalElt& a2, const LocalElt& b, int yt);  // 0 if absent, else sign

}  // namespace hfk
