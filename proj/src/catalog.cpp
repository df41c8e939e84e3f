#include "hm/catalog.hpp"

#include <random>

#include "hm/error.hpp"
#include "hm/linalg.hpp"
#include "hm/quiver.hpp"

namespace hm::catalog {

namespace {

QuiverPath path(std::size_t src, std::size_t dst, std::vector<std::size_t> arrows) { return {src, dst, std::move(arrows)}; }

}  // namespace

CatPtr point(const FieldSpec& f) { return path_category(Quiver{f, {"*"}, {}, {}}); }

CatPtr product_kk(const FieldSpec& f) { return path_category(Quiver{f, {"1", "2"}, {}, {}}); }

CatPtr linear(const FieldSpec& f, std::size_t n)
{
    Quiver q{f, {}, {}, {}};
    for (std::size_t i = 1; i <= n; ++i) q.objects.push_back(std::to_string(i));
    for (std::size_t i = 0; i + 1 < n; ++i)
        q.arrows.push_back({n == 2 ? "a" : "a" + std::to_string(i + 1), i, i + 1});
    return path_category(q);
}

CatPtr a2(const FieldSpec& f) { return linear(f, 2); }

CatPtr kronecker(const FieldSpec& f, std::size_t m)
{
    Quiver q{f, {"1", "2"}, {}, {}};
    for (std::size_t i = 1; i <= m; ++i) q.arrows.push_back({"x" + std::to_string(i), 0, 1});
    return path_category(q);
}

CatPtr truncated_polynomial(const FieldSpec& f, std::size_t n)
{
    Quiver q{f, {"*"}, {{"x", 0, 0}}, {}};
    q.relations.push_back({{{one(f), path(0, 0, std::vector<std::size_t>(n, 0))}}});
    return path_category(q);
}

CatPtr dual_numbers(const FieldSpec& f) { return truncated_polynomial(f, 2); }

CatPtr change_basis(const CatPtr& c, const std::vector<Mat>& basis)
{
    const std::size_t n = c->size();
    const FieldSpec& f = c->field();
    std::vector<Mat> inverse;
    for (std::size_t i = 0; i < n * n; ++i) {
        auto inv = la::solve(basis[i], Mat::identity(f, basis[i].rows()));
        if (!inv || basis[i].rows() != basis[i].cols())
            throw Error(ErrorCode::DimensionMismatch, "change_basis needs invertible square matrices");
        inverse.push_back(*inv);
    }
    std::vector<std::vector<std::string>> labels(n * n);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            for (const auto& l : c->labels(x, y)) labels[x * n + y].push_back(l + "'");
    CategoryData d = CategoryData::blank(f, c->objects(), std::move(labels));
    for (std::size_t x = 0; x < n; ++x) {
        d.identity[x] = inverse[x * n + x] * c->identity(x);
        for (std::size_t y = 0; y < n; ++y)
            for (std::size_t z = 0; z < n; ++z)
                d.comp_at(x, y, z) = inverse[x * n + z] * c->comp(x, y, z) * kron(basis[y * n + z], basis[x * n + y]);
    }
    d.triangular = c->triangular();
    d.tensor = c->tensor();
    return make_category(std::move(d));
}

CatPtr random_category(const FieldSpec& f, std::uint64_t seed, std::size_t objects)
{
    std::mt19937_64 rng(seed);
    Quiver q{f, {}, {}, {}};
    for (std::size_t i = 1; i <= objects; ++i) q.objects.push_back(std::to_string(i));
    // forward arrows keep the quiver acyclic apart from square-zero loops
    std::size_t count = 0;
    for (std::size_t i = 0; i < objects; ++i)
        for (std::size_t j = i + 1; j < objects; ++j)
            for (std::size_t k = rng() % 3; k > 0; --k) q.arrows.push_back({"a" + std::to_string(++count), i, j});
    if (rng() % 2 == 0) {
        const std::size_t at = rng() % objects;
        q.arrows.push_back({"x", at, at});
        const std::size_t loop = q.arrows.size() - 1;
        q.relations.push_back({{{one(f), path(at, at, {loop, loop})}}});
        // sometimes also kill the composite of the loop with a neighbouring arrow
        for (std::size_t a = 0; a < loop; ++a) {
            if (rng() % 2) continue;
            if (q.arrows[a].src == at) q.relations.push_back({{{one(f), path(at, q.arrows[a].dst, {loop, a})}}});
            else if (q.arrows[a].dst == at) q.relations.push_back({{{one(f), path(q.arrows[a].src, at, {a, loop})}}});
        }
    }
    CatPtr c = path_category(q);
    const std::size_t n = c->size();
    std::vector<Mat> basis;
    for (std::size_t i = 0; i < n * n; ++i) {
        const std::size_t d = c->dim(i / n, i % n);
        Mat b;
        do {
            std::vector<long> v(d * d);
            for (auto& e : v) e = static_cast<long>(rng() % 5) - 2;
            b = Mat::from_ints(f, d, d, v);
        } while (la::rank(b) != d);
        basis.push_back(b);
    }
    return change_basis(c, basis);
}

}  // namespace hm::catalog
