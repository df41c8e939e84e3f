#pragma once

#include <cstdint>

#include "hm/category.hpp"

namespace hm::catalog {

/// The one-object category with Hom = K.
CatPtr point(const FieldSpec& f);
/// Two objects, identities only.
CatPtr product_kk(const FieldSpec& f);
/// Linear quiver 1 -> 2 -> ... -> n without relations. For n = 2 the arrow is "a".
CatPtr linear(const FieldSpec& f, std::size_t n);
CatPtr a2(const FieldSpec& f);
/// m parallel arrows x1..xm from 1 to 2.
CatPtr kronecker(const FieldSpec& f, std::size_t m = 2);
/// K[x]/(x^n) on one object "*".
CatPtr truncated_polynomial(const FieldSpec& f, std::size_t n);
CatPtr dual_numbers(const FieldSpec& f);

/// A small valid category on `objects` objects: a random finite quiver with
/// relations, followed by a random change of basis in every Hom space so that
/// identities and composites are no longer unit vectors.
CatPtr random_category(const FieldSpec& f, std::uint64_t seed, std::size_t objects = 2);

/// Conjugates the structure constants by invertible matrices; basis[x*n+y]
/// holds the new basis of Hom(x,y) as columns in old coordinates.
CatPtr change_basis(const CatPtr& c, const std::vector<Mat>& basis);

}  // namespace hm::catalog
