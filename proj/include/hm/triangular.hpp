#pragma once

#include "hm/module.hpp"

namespace hm {

/// Λ = [T 0; M U] for a bimodule M over (U, T).
///
/// Objects are those of T, named "[t;0]", followed by those of U, named
/// "[0;u]". Hom(t,t') = T(t,t'), Hom(u,u') = U(u,u'), Hom(t,u) = M(u,t) and
/// Hom(u,t) = 0. Composites through the corner use the actions:
/// m∘f = M(1⊗f^op)(m) and g∘m = M(g⊗1)(m).
/// Throws Error(FieldMismatch) or Error(InvalidBimodule).
CatPtr triangular_matrix(const CatPtr& t, const CatPtr& u, const Bimodule& m);

/// triangular_matrix(K, U, M̲) for a left U-module M. Throws Error(InvalidModule).
CatPtr one_point_extension(const CatPtr& u, const CatModule& m);

}  // namespace hm
