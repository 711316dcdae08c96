#pragma once

#include "llab/matrix.hpp"
#include "llab/scalar_function.hpp"

namespace llab {

// (A + B) / 2
HermitianMatrix mean_arithmetic(const HermitianMatrix& a,
                                const HermitianMatrix& b);

// B^{1/2} (B^{-1/2} A B^{-1/2})^{1/2} B^{1/2}
HermitianMatrix mean_geometric(const HermitianMatrix& a,
                               const HermitianMatrix& b,
                               double floor = kDefaultEigFloor);

// ((A^{-1} + B^{-1}) / 2)^{-1}
HermitianMatrix mean_harmonic(const HermitianMatrix& a,
                              const HermitianMatrix& b,
                              double floor = kDefaultEigFloor);

// B^{1/2} h(B^{-1/2} A B^{-1/2}) B^{1/2} for a representing function h that
// is positive on (0, infinity); h(t) = sqrt(t), (1+t)/2, 2t/(1+t) recover the
// geometric, arithmetic, harmonic means.
HermitianMatrix kubo_ando_mean(const ScalarFunction& h,
                               const HermitianMatrix& a,
                               const HermitianMatrix& b,
                               double floor = kDefaultEigFloor);

// The perspective of f: same congruence formula, g(A, I) = f(A).
HermitianMatrix perspective(const ScalarFunction& f, const HermitianMatrix& a,
                            const HermitianMatrix& b,
                            double floor = kDefaultEigFloor);

}  // namespace llab
