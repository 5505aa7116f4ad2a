#pragma once

#include <string>
#include <vector>

#include "jacred/certlab.hpp"

namespace jacred {

struct CubeTerm {
  Rational coefficient;
  Poly form;  ///< linear form, first nonzero coefficient 1
};

/// h = sum c_i l_i^3 for a cubic form h (zero gives an empty list). Forms
/// equal up to a scalar are merged.
std::vector<CubeTerm> decompose_cubes(const Poly& h);

/// X + (A X)^{*3}.
PolyMap cubic_linear_map(const RatMatrix& a);

/// G(x) = B F(C x) with B C = I and ker B = ker A, F = X + (AX)^{*3} in
/// dimension n and G = X + H in dimension m.
struct GZPairing {
  RatMatrix A;  ///< n x n
  RatMatrix B;  ///< m x n
  RatMatrix C;  ///< n x m
  PolyMap F;
  PolyMap G;
  std::size_t r = 0;  ///< forms in the cube decomposition (pair_up only)
};

/// B = nonzero rows of rref(A), C = unit columns at the pivots.
GZPairing pair_down(const PolyMap& f, const RatMatrix& a);

/// Cubic linear partner of a cubic homogeneous map: n = m + r,
/// A = [[0, 0], [Q, QP]], B = [I | P], C = [I; 0].
GZPairing pair_up(const PolyMap& g);

struct PairingVerdict {
  bool valid = false;
  int failed_axiom = 0;  ///< 1: BC = I, 2: kernels, 3: G = B F(Cx), 4: F shape
  std::string reason;
};

PairingVerdict verify_pairing(const GZPairing& p);

/// Certificate from G to F: Extend(n - m), the shear (x, z + E'(ACx)^{*3}),
/// PostCompose C' = [C | D] and PreCompose B' = C'^-1.
Certificate pairing_to_equivalence(const GZPairing& p);

}  // namespace jacred
