#pragma once

#include <map>
#include <vector>

#include "hfk/algebra.hpp"
#include "hfk/diagram.hpp"

namespace oracle {

// Symmetrized Alexander polynomial (exponent -> coefficient, Delta(1) = 1) from a Wirtinger
// presentation and Fox calculus; uses only the event list.
std::map<int, long> fox_alexander(const hfk::Diagram& d);

// Number of Kauffman states of the diagram with the marked edge at the final minimum.
long kauffman_states(const hfk::Diagram& d);

// Whether the monomial of weight w between x and y survives in B(2n,k), decided by closing the
// relation ideal under multiplication by elementary generators up to the weight of w.
bool nonzero_by_closure(hfk::State x, hfk::State y, const hfk::Weight& w, int n, int k);

// One term of the curvature-summed operation of the minimum bimodule: sign * b (x) generator,
// where b runs from out_left to out_right with doubled weight w.
struct MinTerm {
  int sign = 1;
  hfk::State out_left = 0, out_right = 0;
  hfk::Weight w;
  bool x_label = false;  // generator X*L1 (else Y*R2)
  hfk::State in_right = 0;
  bool operator==(const MinTerm& o) const = default;
};

// Operations of the minimum capping strands 1 and 2 of a slice with 2n strands and matching m,
// evaluated on the generator with right idempotent r and the input sequence betas. Computed from
// the two-generator module with homotopy h and projection onto X*L1, Y*R2, summing over every
// insertion of the C generators of the capped pairs.
// If alive is given it reports whether some path survives all of betas and can be extended.
std::vector<MinTerm> min_gamma(const hfk::Matching& m, int n, hfk::State r, const std::vector<hfk::Pure>& betas,
                               bool* alive = nullptr);

}  // namespace oracle
