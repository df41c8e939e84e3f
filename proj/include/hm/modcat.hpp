#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "hm/complex.hpp"
#include "hm/ideals.hpp"
#include "hm/module.hpp"

namespace hm {

constexpr std::size_t kDefaultMaxDegree = 4;

/// Basis of Hom(m, n). Throws Error(BaseMismatch).
std::vector<ModuleMap> module_hom(const CatModule& m, const CatModule& n);
std::size_t hom_dim(const CatModule& m, const CatModule& n);

/// N ⊗_C M as the quotient of ⊕_x N(x)⊗M(x); the summand at x starts at
/// offsets[x] and uses index i*dim M(x)+j for n_i ⊗ m_j.
struct TensorSpace {
    std::size_t dim = 0;
    std::vector<std::size_t> offsets;
    Mat projection;  // dim x ambient
    Mat section;     // ambient x dim
};

/// Throws Error(BaseMismatch) unless n is a right and m a left module over one category.
TensorSpace tensor_over_cat(const CatModule& n, const CatModule& m);

/// ⊕_g C(x_g,−) with generators at the listed objects.
struct FreeModule {
    CatPtr base;
    std::vector<std::size_t> gens;
    CatModule module;

    /// Row where the summand C(x_g, y) starts inside P(y).
    std::size_t block(std::size_t g, std::size_t y) const;
};

FreeModule free_module(const CatPtr& c, std::vector<std::size_t> gens);
/// The map P -> M sending generator g to images[g] ∈ M(x_g).
ModuleMap free_map(const FreeModule& p, const CatModule& m, const std::vector<Mat>& images);

/// 0 <- M <- P_0 <- P_1 <- ... with P_k free.
///
/// images[k][g] is the image of generator g of P_k: an element of M(x_g) for
/// k = 0 and of P_{k-1}(x_g) otherwise.
struct Resolution {
    CatModule module;
    std::vector<FreeModule> terms;
    std::vector<std::vector<Mat>> images;
    std::vector<ModuleMap> maps;  // maps[k]: P_{k+1} -> P_k
    ModuleMap augmentation;       // P_0 -> M

    std::size_t length() const { return terms.size() - 1; }
};

/// Resolution of a left module with terms P_0..P_{max_deg}. Generators come
/// from the echelon basis of each kernel, pruned to an irredundant set.
/// Throws Error(InvalidModule) for a right module.
Resolution projective_resolution(const CatModule& m, std::size_t max_deg);
/// Composites vanish, augmentation is onto, and each P_k is exact by rank count.
ValidationReport verify_resolution(const Resolution& r);

/// Hom(P_•, N) in the Yoneda form C^k = ⊕_g N(x_g), degrees 0..length.
CochainComplex hom_complex(const Resolution& r, const CatModule& n);
/// The cochain map Hom(P_•, f) for f: N -> N', one block-diagonal matrix per degree.
std::vector<Mat> hom_complex_map(const Resolution& r, const CatModule& n, const CatModule& n2, const ModuleMap& f);
/// R ⊗_C P_• in the co-Yoneda form C_k = ⊕_g R(x_g), degrees 0..length.
ChainComplex tensor_complex(const CatModule& right, const Resolution& r);

/// Ext^0..Ext^N. Right modules are handled over the opposite category.
/// Throws Error(BaseMismatch).
std::vector<std::size_t> ext(const CatModule& m, const CatModule& n, std::size_t max_deg = kDefaultMaxDegree);
std::vector<std::size_t> ext(const Resolution& r, const CatModule& n, std::size_t max_deg);
/// Tor_0..Tor_N for a right module n and a left module m. Throws Error(BaseMismatch).
std::vector<std::size_t> tor(const CatModule& n, const CatModule& m, std::size_t max_deg = kDefaultMaxDegree);

/// True iff the cover by generators splits.
bool is_projective(const CatModule& m);

/// A right module over C read as a left module over C^op, and back.
CatModule to_left(const CatModule& m);
/// m is a left module over `c_op`; the result is a right module over c.
CatModule to_right(const CatModule& m, const CatPtr& c);
/// Same arrays over a structurally identical numbering, e.g. K ⊗ C and C.
CatModule rebase(const CatModule& m, const CatPtr& base);

/// Left module over tensor_category(A, B): the slice at a fixed object.
CatModule slice_first(const CatModule& m, const CatPtr& a, const CatPtr& b, std::size_t at_b);
CatModule slice_second(const CatModule& m, const CatPtr& a, const CatPtr& b, std::size_t at_a);

/// F ⊠_C G for F over tensor(A, C) and G over tensor(C^op, B), a left module
/// over `target` = tensor(A, B) with (F ⊠ G)(a,b) = F(a,−) ⊗_C G(−,b).
/// `c_op` must be the first factor used for G. Throws Error(BaseMismatch).
CatModule boxtimes(const CatModule& f, const CatModule& g, const CatPtr& a, const CatPtr& c, const CatPtr& c_op,
                   const CatPtr& b, const CatPtr& target);
/// F ⊠_C G for a left C-module F; the result is a left module over B.
CatModule boxtimes(const CatModule& f, const CatModule& g, const CatPtr& c_op, const CatPtr& b);

/// The simple top of C(x,−). Throws Error(NotLocal) when End(x) is not local.
CatModule simple_module(const CatPtr& c, std::size_t x, Side side = Side::Left);

/// Rows per object x: Ext^i(C(x,−)/I(x,−), m) and Tor_i(C(−,x)/I(−,x), m).
struct BigExtTable {
    std::vector<std::vector<std::size_t>> ext;
    std::vector<std::vector<std::size_t>> tor;
};

/// Throws Error(InvalidIdeal) or Error(BaseMismatch).
BigExtTable big_ext_functor(const TwoSidedIdeal& i, const CatModule& m, std::size_t max_deg = kDefaultMaxDegree);
/// C(x,−)/I(x,−) as a left module.
CatModule ideal_quotient_module(const TwoSidedIdeal& i, std::size_t x, Side side);

/// A quotient of a random free module by a random submodule.
CatModule random_module(const CatPtr& c, std::uint64_t seed, Side side = Side::Left, std::size_t max_gens = 2);
/// A random finite direct sum of representables.
CatModule random_projective(const CatPtr& c, std::uint64_t seed, Side side = Side::Left, std::size_t max_gens = 2);

}  // namespace hm
