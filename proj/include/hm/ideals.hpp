#pragma once

#include <vector>

#include "hm/module.hpp"

namespace hm {

/// A two-sided ideal stored as an echelon basis of each I(x,y) inside Hom(x,y).
class TwoSidedIdeal {
public:
    TwoSidedIdeal() = default;
    /// Echelonizes the spans and checks closure; throws Error(InvalidIdeal).
    TwoSidedIdeal(CatPtr parent, const std::vector<Mat>& spans);
    static TwoSidedIdeal trusted(CatPtr parent, std::vector<Mat> echelon_spans);

    const CatPtr& parent() const { return parent_; }
    const Mat& span(std::size_t x, std::size_t y) const { return spans_[x * parent_->size() + y]; }
    const std::vector<Mat>& spans() const { return spans_; }
    std::size_t dim(std::size_t x, std::size_t y) const { return span(x, y).cols(); }
    std::size_t total_dim() const;

    friend bool operator==(const TwoSidedIdeal& a, const TwoSidedIdeal& b);

private:
    CatPtr parent_;
    std::vector<Mat> spans_;
};

ValidationReport validate(const TwoSidedIdeal& i);

TwoSidedIdeal zero_ideal(const CatPtr& c);
TwoSidedIdeal whole_ideal(const CatPtr& c);

struct IdealGenerator {
    std::size_t x;
    std::size_t y;
    Mat coords;  // dim Hom(x,y) x 1
};

/// The smallest ideal containing the generators. Throws Error(CoordinateMismatch).
TwoSidedIdeal ideal_from_generators(const CatPtr& c, const std::vector<IdealGenerator>& gens);
/// span(x,z) = Σ_y I(y,z)∘J(x,y). Throws Error(ParentMismatch).
TwoSidedIdeal ideal_product(const TwoSidedIdeal& i, const TwoSidedIdeal& j);
bool is_idempotent(const TwoSidedIdeal& i);
/// The morphisms out of the T-block of a triangular matrix category. Throws Error(NotTriangular).
TwoSidedIdeal triangular_ideal(const CatPtr& lambda);
/// I^op inside `c_op` = opposite(parent).
TwoSidedIdeal opposite_ideal(const TwoSidedIdeal& i, const CatPtr& c_op);

/// The left module y ↦ I(x,y). Throws Error(UnknownObject).
CatModule representable_ideal_module(const TwoSidedIdeal& i, std::size_t x);
/// The right module y ↦ I(y,x).
CatModule corepresentable_ideal_module(const TwoSidedIdeal& i, std::size_t x);
/// (x',x) ↦ I(x',x) as a submodule of the regular bimodule over `ce`.
SubModule ideal_bimodule(const TwoSidedIdeal& i, const CatPtr& ce);

struct QuotientCategory {
    CatPtr category;
    KFunctor projection;
    std::vector<Mat> section;  // per Hom pair, the chosen complement as columns
};

/// C/I with the complement of I(x,y) taken at the non-pivot basis positions.
/// Objects with I(x,x) = Hom(x,x) become zero objects. Throws Error(InvalidIdeal).
QuotientCategory quotient(const CatPtr& c, const TwoSidedIdeal& i);

}  // namespace hm
