#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "hm/category.hpp"

namespace hm {

constexpr std::size_t kDefaultPathBound = 12;

struct QuiverArrow {
    std::string name;
    std::size_t src = 0;
    std::size_t dst = 0;
};

/// Arrows listed in traversal order; no arrows means the identity at src.
struct QuiverPath {
    std::size_t src = 0;
    std::size_t dst = 0;
    std::vector<std::size_t> arrows;
};

struct QuiverRelation {
    std::vector<std::pair<Scalar, QuiverPath>> terms;
};

struct Quiver {
    FieldSpec field;
    std::vector<std::string> objects;
    std::vector<QuiverArrow> arrows;
    std::vector<QuiverRelation> relations;
};

/// Written right to left: the path a then b reads "b*a"; identities are "e_<obj>".
std::string path_label(const Quiver& q, const QuiverPath& p);

/// The path category K Q / (relations). Relations must be homogeneous in path
/// length (Error(InvalidCategory) otherwise). The category is certified finite
/// by finding a length n <= bound + 1 at which every path lies in the ideal;
/// Error(FinitenessError) when there is none. Basis: surviving paths, ordered
/// by length, then by enumeration order. When `arrow_coords` is given it
/// receives the coordinates of every arrow in Hom(src,dst).
CatPtr path_category(const Quiver& q, std::size_t bound = kDefaultPathBound, std::vector<Mat>* arrow_coords = nullptr);

}  // namespace hm
