#pragma once

#include <cstddef>
#include <vector>

#include "hm/category.hpp"

namespace hm {

enum class Side { Left, Right };

const char* side_name(Side s);

/// A functor from a finite category to finite-dimensional vector spaces.
///
/// act(f) for a basis morphism f: x -> y (global numbering of the base) is
///   Left:  dim(y) x dim(x), the map M(x) -> M(y)
///   Right: dim(x) x dim(y), the map M(y) -> M(x)
class CatModule {
public:
    CatModule() = default;
    /// Validates functoriality; throws Error(InvalidModule).
    CatModule(CatPtr base, Side side, std::vector<std::size_t> dims, std::vector<Mat> act);
    /// Skips validation; for constructions that are functorial by design.
    static CatModule trusted(CatPtr base, Side side, std::vector<std::size_t> dims, std::vector<Mat> act);
    static CatModule zero(CatPtr base, Side side);

    const CatPtr& base() const { return base_; }
    const FieldSpec& field() const { return base_->field(); }
    Side side() const { return side_; }
    std::size_t dim(std::size_t x) const { return dims_[x]; }
    const std::vector<std::size_t>& dims() const { return dims_; }
    std::size_t total_dim() const { return offsets_.empty() ? 0 : offsets_.back(); }
    /// Position of M(x) inside the direct sum of all values.
    std::size_t offset(std::size_t x) const { return offsets_[x]; }
    bool is_zero() const { return total_dim() == 0; }

    const Mat& act(std::size_t global) const { return act_[global]; }
    const Mat& act(std::size_t x, std::size_t y, std::size_t k) const { return act_[base_->hom_offset(x, y) + k]; }
    /// The action of the morphism with coordinates `coeffs` in Hom(x,y).
    Mat act_vec(std::size_t x, std::size_t y, const Mat& coeffs) const;
    const std::vector<Mat>& actions() const { return act_; }

    /// A right module over C read as a left module over `base_op` = opposite(C).
    CatModule as_left(const CatPtr& base_op) const;

    friend bool operator==(const CatModule& a, const CatModule& b);

private:
    CatPtr base_;
    Side side_ = Side::Left;
    std::vector<std::size_t> dims_;
    std::vector<std::size_t> offsets_;
    std::vector<Mat> act_;
};

ValidationReport validate(const CatModule& m);

/// A natural transformation, one matrix per object: comp[x] is dim N(x) x dim M(x).
struct ModuleMap {
    std::vector<Mat> comp;
};

bool is_module_map(const CatModule& src, const CatModule& dst, const ModuleMap& f);
ModuleMap zero_map(const CatModule& src, const CatModule& dst);
ModuleMap identity_map(const CatModule& m);
ModuleMap compose(const ModuleMap& g, const ModuleMap& f);
/// Block matrix of f on the direct sums of all values.
Mat total_matrix(const CatModule& src, const CatModule& dst, const ModuleMap& f);

/// Throws Error(UnknownObject) for a bad index.
CatModule representable(const CatPtr& c, std::size_t x, Side side);
CatModule dualize(const CatModule& m);
CatModule direct_sum(const std::vector<CatModule>& parts);
/// M∘Φ for a functor Φ: C -> base(M).
CatModule pullback(const CatModule& m, const KFunctor& phi);

struct SubModule {
    CatModule module;
    ModuleMap inclusion;
};

struct QuotientModule {
    CatModule module;
    ModuleMap projection;
    std::vector<Mat> section;  // per object, right inverse of projection
};

/// span[x] has columns spanning a subspace of M(x); must be stable under the
/// action (Error(InvalidModule) otherwise). The basis is echelonized.
SubModule submodule(const CatModule& m, const std::vector<Mat>& span);
QuotientModule quotient_module(const CatModule& m, const std::vector<Mat>& span);
/// Smallest submodule containing the given vectors.
std::vector<Mat> generated_span(const CatModule& m, const std::vector<Mat>& gens);

/// A bimodule over (U, T): M(u,t) with a left U-action and a right T-action.
///
/// lact(g, t) for a basis g: u -> u' of U is dim M(u',t) x dim M(u,t);
/// ract(f, u) for a basis f: t' -> t of T is dim M(u,t') x dim M(u,t).
class Bimodule {
public:
    /// Validates both actions and their commutation; throws Error(InvalidBimodule).
    Bimodule(CatPtr u, CatPtr t, std::vector<std::size_t> dims, std::vector<Mat> lact, std::vector<Mat> ract);

    const CatPtr& u() const { return u_; }
    const CatPtr& t() const { return t_; }
    std::size_t dim(std::size_t u, std::size_t t) const { return dims_[u * t_->size() + t]; }
    std::size_t total_dim() const;
    const Mat& lact(std::size_t g_global, std::size_t t) const { return lact_[g_global * t_->size() + t]; }
    const Mat& ract(std::size_t f_global, std::size_t u) const { return ract_[f_global * u_->size() + u]; }
    Mat lact_vec(std::size_t u, std::size_t u2, std::size_t t, const Mat& g) const;
    Mat ract_vec(std::size_t t2, std::size_t t, std::size_t u, const Mat& f) const;

    /// The same data as a left module over `ut_op` = tensor_category(U, opposite(T)).
    CatModule to_module(const CatPtr& ut_op) const;

    static Bimodule zero(CatPtr u, CatPtr t);
    /// M̲ for a left U-module: a bimodule over (U, point) with trivial right action.
    static Bimodule from_left_module(const CatModule& m, const CatPtr& point);

private:
    CatPtr u_;
    CatPtr t_;
    std::vector<std::size_t> dims_;
    std::vector<Mat> lact_;
    std::vector<Mat> ract_;
};

/// The bimodule (x',x) ↦ B(Φx', Φx) over `ce` = enveloping(C), for Φ: C -> B.
/// With the identity functor this is the regular bimodule.
CatModule functor_bimodule(const CatPtr& ce, const KFunctor& phi);
CatModule regular_bimodule(const CatPtr& c, const CatPtr& ce);

/// M ⊗̄ N over `target` = tensor_category(opposite(C), D) for a right C-module M
/// and a left D-module N; with C = D the target is enveloping(C).
CatModule outer_tensor(const CatModule& m, const CatModule& n, const CatPtr& target);

}  // namespace hm
