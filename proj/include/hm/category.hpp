#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hm/mat.hpp"

namespace hm {

/// Block layout of a triangular matrix category: the first `t_objects`
/// objects come from T, the remaining `u_objects` from U.
struct TriangularBlocks {
    std::size_t t_objects = 0;
    std::size_t u_objects = 0;
};

/// Object (i,j) of a tensor product sits at index i*right_objects + j.
struct TensorFactors {
    std::size_t left_objects = 0;
    std::size_t right_objects = 0;
};

/// Raw structure constants of a finite K-linear category.
///
/// Indexing with n objects:
///   hom_labels[x*n+y]  basis labels of Hom(x,y)
///   comp[(x*n+y)*n+z]  dim(x,z) x (dim(y,z)*dim(x,y)); column g*dim(x,y)+f holds g∘f
///   identity[x]        dim(x,x) x 1
struct CategoryData {
    FieldSpec field;
    std::vector<std::string> objects;
    std::vector<std::vector<std::string>> hom_labels;
    std::vector<Mat> comp;
    std::vector<Mat> identity;
    std::optional<TriangularBlocks> triangular;
    std::optional<TensorFactors> tensor;

    std::size_t size() const { return objects.size(); }
    std::size_t dim(std::size_t x, std::size_t y) const { return hom_labels[x * size() + y].size(); }
    Mat& comp_at(std::size_t x, std::size_t y, std::size_t z) { return comp[(x * size() + y) * size() + z]; }

    /// Empty label lists, zero composition tensors of the right shapes.
    static CategoryData blank(const FieldSpec& field, std::vector<std::string> objects,
                              std::vector<std::vector<std::string>> hom_labels);
};

struct ValidationReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

/// Every violated associativity or unit constraint, named by basis labels.
ValidationReport validate(const CategoryData& data);

class FiniteKCategory {
public:
    struct Morphism {
        std::size_t src;
        std::size_t dst;
        std::size_t index;  // position inside Hom(src,dst)
    };

    /// Throws Error(InvalidCategory) listing the violations.
    explicit FiniteKCategory(CategoryData data);

    const FieldSpec& field() const { return data_.field; }
    std::size_t size() const { return data_.size(); }
    const std::vector<std::string>& objects() const { return data_.objects; }
    const std::string& object(std::size_t x) const { return data_.objects[x]; }
    std::size_t index_of(std::string_view name) const;

    std::size_t dim(std::size_t x, std::size_t y) const { return data_.dim(x, y); }
    const std::vector<std::string>& labels(std::size_t x, std::size_t y) const { return data_.hom_labels[x * size() + y]; }
    const Mat& comp(std::size_t x, std::size_t y, std::size_t z) const { return data_.comp[(x * size() + y) * size() + z]; }
    const Mat& identity(std::size_t x) const { return data_.identity[x]; }

    /// g∘f for coordinate columns f in Hom(x,y), g in Hom(y,z).
    Mat compose(std::size_t x, std::size_t y, std::size_t z, const Mat& g, const Mat& f) const;
    /// Matrix of f ↦ g∘f on Hom(x,y).
    Mat postcompose_matrix(std::size_t x, std::size_t y, std::size_t z, const Mat& g) const;
    /// Matrix of g ↦ g∘f on Hom(y,z).
    Mat precompose_matrix(std::size_t x, std::size_t y, std::size_t z, const Mat& f) const;

    /// Global numbering of basis morphisms, ordered by (src, dst, index).
    std::size_t hom_offset(std::size_t x, std::size_t y) const { return offsets_[x * size() + y]; }
    std::size_t total_hom_dim() const { return morphisms_.size(); }
    const Morphism& basis_morphism(std::size_t global) const { return morphisms_[global]; }
    Mat basis_vector(std::size_t global) const;

    const std::optional<TriangularBlocks>& triangular() const { return data_.triangular; }
    const std::optional<TensorFactors>& tensor() const { return data_.tensor; }
    const CategoryData& data() const { return data_; }

    /// Structural equality; block metadata is ignored.
    friend bool operator==(const FiniteKCategory& a, const FiniteKCategory& b);

private:
    CategoryData data_;
    std::vector<std::size_t> offsets_;
    std::vector<Morphism> morphisms_;
};

using CatPtr = std::shared_ptr<const FiniteKCategory>;

CatPtr make_category(CategoryData data);
bool same_category(const CatPtr& a, const CatPtr& b);

CatPtr opposite(const CatPtr& c);
/// Throws Error(FieldMismatch).
CatPtr tensor_category(const CatPtr& c, const CatPtr& d);
/// C^op ⊗ C; object (x',x) has index x'*n+x.
CatPtr enveloping(const CatPtr& c);

/// Drops objects whose identity is zero. The kept indices are returned too.
CatPtr drop_zero_objects(const CatPtr& c, std::vector<std::size_t>* kept = nullptr);

/// A K-linear functor given by an object map and one matrix per Hom pair:
/// maps[x*n+y] is dim_target(Fx,Fy) x dim_source(x,y).
struct KFunctor {
    CatPtr source;
    CatPtr target;
    std::vector<std::size_t> object_map;
    std::vector<Mat> maps;

    const Mat& map(std::size_t x, std::size_t y) const { return maps[x * source->size() + y]; }
};

ValidationReport validate(const KFunctor& f);
/// Validates; throws Error(InvalidFunctor).
KFunctor make_functor(CatPtr source, CatPtr target, std::vector<std::size_t> object_map, std::vector<Mat> maps);
KFunctor identity_functor(const CatPtr& c);
KFunctor opposite(const KFunctor& f, const CatPtr& source_op, const CatPtr& target_op);
/// F ⊗ G between tensor categories built by tensor_category.
KFunctor tensor_functor(const KFunctor& f, const KFunctor& g, const CatPtr& source, const CatPtr& target);

}  // namespace hm
