#pragma once

#include <cstddef>
#include <vector>

#include "hm/complex.hpp"
#include "hm/modcat.hpp"

namespace hm {

/// Size summary of S_n(C).
struct BarTerm {
    std::size_t degree = 0;
    std::size_t tuples = 0;        // (n+1)-tuples with a nonzero inner factor
    std::size_t inner_dim = 0;     // Σ_p dim C(p1,p2)⊗…⊗C(pn,pn+1)
    std::size_t bimodule_dim = 0;  // total dimension of S_n as a bimodule
};

std::vector<BarTerm> bar_dims(const CatPtr& c, std::size_t max_deg);

/// Hom_{C^e}(S_•(C), X) reduced by adjunction to
/// C^n = ⊕_{(p1..pn+1)} Hom_K(C(p1,p2)⊗…⊗C(pn,pn+1), X(p1,pn+1)),
/// degrees 0..max_deg+1 so that cohomology is defined through max_deg.
/// Inside a tuple block the coordinate of basis tuple j and X-coordinate r is j*dim X + r,
/// with j read lexicographically. Throws Error(InvalidCoefficient).
CochainComplex hochschild_cochain_complex(const CatPtr& c, const CatModule& coeff, std::size_t max_deg,
                                          Exec exec = Exec::Parallel);

/// Degree of the first failing d∘d among d^0..d^top, or -1. Uses the block
/// structure of the differential instead of dense products.
long hochschild_square_check(const CatPtr& c, const CatModule& coeff, std::size_t top);

/// H^0..H^max_deg with regular coefficients.
std::vector<std::size_t> hochschild_cohomology(const CatPtr& c, std::size_t max_deg = kDefaultMaxDegree,
                                               Exec exec = Exec::Parallel);

/// Families (z_x ∈ C(x,x)) commuting with every morphism; columns in ⊕_x C(x,x).
struct Center {
    std::size_t dim = 0;
    Mat basis;
};

Center center(const CatPtr& c);

/// The standard resolution S_0..S_max_deg materialized as free modules over
/// `ce` = enveloping(c); generator (p, j) of S_n sits at object (p1, pn+1).
Resolution bar_resolution(const CatPtr& c, const CatPtr& ce, std::size_t max_deg);

}  // namespace hm
