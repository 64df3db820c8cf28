#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hfk/ring.hpp"

namespace hfk {

struct CGen {
  int alex = 0;
  int delta = 0;  // Maslov = delta + alex
  std::uint64_t tag = 0;
  int maslov() const { return delta + alex; }
};

// d(from) contains c * U^u V^v * to; never both u > 0 and v > 0.
struct CEntry {
  int from, to;
  Coeff c;
  int u, v;
};

// Free complex over R = F[U,V]/(UV) (or its Z lift).
struct BigradedComplex {
  Ring ring;
  std::vector<CGen> gens;
  std::vector<CEntry> diff;
};

// Throws IntegrityError if d does not square to zero or an entry breaks the grading laws.
void check_complex(const BigradedComplex& c);

// Shifts Delta so that the U-nontorsion class satisfies Delta = Alexander (Maslov = 2A).
void normalize_gradings(BigradedComplex& c);

BigradedComplex reduce_mod(const BigradedComplex& c, int p);
// Hom(C, R) with gradings negated and renormalized.
BigradedComplex dual(const BigradedComplex& c);

struct HatEntry {
  int a = 0, m = 0;
  int dim = 0;                       // free rank (dimension over a field)
  std::vector<std::string> torsion;  // invariant factors > 1 over Z
};

// Homology of C/(U=V=0), sorted by (a, m).
std::vector<HatEntry> hfk_hat(const BigradedComplex& c);

// Exponent -> coefficient of the graded Euler characteristic.
std::map<int, long> alexander_polynomial(const BigradedComplex& c);
std::string poly_str(const std::map<int, long>& p);

// Dimensions of H(C) in bigradings (delta, s) over the box of Delta values [dlo, dhi] and
// Alexander values [slo, shi]; over Z the rank over Q.
std::map<std::pair<int, int>, int> hwz_dims(const BigradedComplex& c, int dlo, int dhi, int slo, int shi);

// Rank of U and V acting on H(C) from bigrading (delta, s).
struct ActionRanks {
  int u = 0, v = 0;
};
ActionRanks hwz_action_ranks(const BigradedComplex& c, int delta, int s);

int tau(const BigradedComplex& c);
int nu(const BigradedComplex& c);
int epsilon(const BigradedComplex& c);
// nu computed over F_p after reducing the coefficients of a Z complex.
int nu_p(const BigradedComplex& c, int p);

}  // namespace hfk
