#pragma once
// Seeded, self-contained generators for the property suites.  Everything
// derives from one mt19937_64 stream so a single seed reproduces a whole run;
// draws avoid distribution objects to keep the byte-level sequence stable.

#include <random>
#include <vector>

#include "henselkit/lifting.hpp"
#include "henselkit/milnor.hpp"
#include "henselkit/poly.hpp"

namespace henselkit {

class sampler {
public:
  explicit sampler(unsigned long long seed) : rng_(seed) {}

  long uniform(long lo, long hi); // inclusive bounds
  rat rational(long height, bool nonzero = false);
  field_elem elem(const field_desc& fd, bool nonzero = false);

  // Random truncated series with 1..4 nonzero terms on a 1/q grid, q <=
  // ram_cap.  `unit` pins the lowest term to exponent zero; `exact` forces
  // infinite precision, otherwise roughly a third of the draws are exact.
  puiseux_series series(const field_desc& fd, long ram_cap = 6, bool unit = false,
                        bool exact = false);

  admissible_quadruple quadruple();
  component_inputs components();

  unit_class_mod_d uclass(unsigned d, unsigned m);
  // pairwise distinct classes; throws when count exceeds the lattice size
  std::vector<unit_class_mod_d> distinct_uclasses(unsigned d, unsigned m, unsigned count);

  // Single-slope polynomial of degree d over m uniformizers with vanishing
  // X^{d-1} coefficient and primitively ramified constant term, so the slope
  // certificate always applies.
  monic_laurent_poly eisenstein(unsigned d, unsigned m);

  // Polynomial system with a planted exact root and an approximate point
  // perturbed beyond twice the Jacobian-minor valuation, so the quantitative
  // Newton contract applies as-is.
  struct smooth_instance {
    poly_system F;
    std::vector<puiseux_series> x;       // the approximate point
    std::vector<puiseux_series> planted; // the exact root it came from
  };
  smooth_instance planted_smooth(const field_desc& fd, unsigned n);

private:
  std::mt19937_64 rng_;
};

} // namespace henselkit
