#pragma once

#include <functional>

#include "mloop/cocycle.hpp"
#include "mloop/window.hpp"

namespace mloop {

/// Visits every windowed cocycle-condition row: for each unordered triple of
/// distinct window elements whose degrees sum to the weight with all
/// pairwise bracket degrees inside the box, the cyclic sum
/// psi([x,y],z) + psi([y,z],x) + psi([z,x],y) expressed over pair indices.
void for_each_cocycle_condition(const WindowBasis &window,
                                const std::function<void(const std::map<size_t, CycloField::Coeffs> &)> &fn);

struct H2Result {
  size_t dim_z = 0; // windowed cocycles
  size_t dim_b = 0; // windowed coboundaries
  size_t dim_h2 = 0;
  std::vector<CochainMatrix> representatives; // canonical complement of B in Z
};

/// Brute-force weight-w degree-graded H^2 with scalar coefficients on the
/// cutoff window. Throws WindowEmpty when the window carries no pairs.
/// Every representative is re-verified against the cocycle conditions
/// independently of the solver.
H2Result ce_h2_weight(const MultiloopPtr &M, const Multidegree &w, int cutoff);

struct StabilityReport {
  Multidegree weight;
  int cutoff = 0;
  size_t dim_at_d = 0;
  size_t dim_at_d1 = 0;
  bool stable = false;
};

/// Reruns ce_h2_weight at D and D+1; results are trusted only when the
/// dimensions agree.
StabilityReport cutoff_stability(const MultiloopPtr &M, const Multidegree &w, int cutoff);

struct TargetVerdict {
  Multidegree weight;
  int cutoff = 0;
  size_t h2_dim = 0;
  size_t target_dim = 0;
  bool match = false;
};

/// Compares the stabilised H^2 dimension against the invariant quotient
/// target (times dim V). Throws Unstable when the cutoff pair disagrees.
TargetVerdict compare_to_target(const MultiloopPtr &M, const Multidegree &w, int cutoff);

struct WeightCertificate {
  Multidegree weight;
  int cutoff = 0;
  StabilityReport stability;
  size_t dim_z = 0;
  size_t dim_b = 0;
  size_t h2_dim = 0;
  size_t target_dim = 0;
  bool match = false;
  size_t representative_count = 0;
  bool all_factored = false;     // vacuously true when no representatives
  std::vector<bool> phi_nonzero; // per representative
  std::vector<std::vector<CycloField::Coeffs>> phi_coords; // recovered functionals
};

/// Per-weight universality check: every H^2 representative must factor
/// through the universal cocycle. Requires stability at the given cutoff
/// (throws Unstable otherwise).
WeightCertificate universality_certificate_weight(const MultiloopPtr &M, const Multidegree &w, int cutoff);

std::vector<WeightCertificate> universality_certificate(const MultiloopPtr &M, const std::vector<Multidegree> &weights,
                                                        int cutoff);

} // namespace mloop
