#pragma once

namespace ddvv {

// Ambient inner-product signature. Lorentz means (+,...,+,-) with the LAST
// coordinate timelike.
enum class Signature { Euclidean, Lorentz };

// Central numeric thresholds. Scale-dependent ones (eps_hn, eps_reg, eps_min,
// tol_eq, tol_quadric) are multiplied by the relevant local scale at the use
// site; the values here are the dimensionless factors.
struct Tolerances {
  double eps_div = 1e-12;     // jet division / inversion denominators
  double eps_rank = 1e-9;     // Gram-Schmidt rank decisions
  double eps_hn = 1e-8;       // ||h^N|| degeneracy, scaled by ||h||+||g_u||
  double eps_a = 1e-6;        // a = ||h^N||/r degeneracy
  double eps_reg = 1e-8;      // immersion rank margin, scaled by metric size
  double eps_min = 1e-7;      // minimal-point rejection in canonical_frame
  double tol_eq = 1e-7;       // DDVV equality residual, scaled by max(1,|s|)
  double tol_frame = 1e-6;    // canonical-form reconstruction residual
  double tol_quadric = 1e-8;  // quadric constancy, scaled by max(1,4d^2)
};

}  // namespace ddvv
