#include "hm/triangular.hpp"

#include "hm/catalog.hpp"
#include "hm/error.hpp"

namespace hm {

CatPtr triangular_matrix(const CatPtr& t, const CatPtr& u, const Bimodule& m)
{
    if (!(t->field() == u->field())) throw Error(ErrorCode::FieldMismatch, "triangular matrix over different fields");
    if (!same_category(m.t(), t) || !same_category(m.u(), u))
        throw Error(ErrorCode::InvalidBimodule, "bimodule is not over (U, T)");
    const std::size_t nt = t->size(), nu = u->size(), n = nt + nu;
    std::vector<std::string> objects;
    for (const auto& o : t->objects()) objects.push_back("[" + o + ";0]");
    for (const auto& o : u->objects()) objects.push_back("[0;" + o + "]");
    std::vector<std::vector<std::string>> labels(n * n);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            auto& l = labels[x * n + y];
            if (x < nt && y < nt) l = t->labels(x, y);
            else if (x >= nt && y >= nt) l = u->labels(x - nt, y - nt);
            else if (x < nt)
                for (std::size_t k = 0; k < m.dim(y - nt, x); ++k)
                    l.push_back("m(" + u->object(y - nt) + "," + t->object(x) + ")_" + std::to_string(k + 1));
        }
    CategoryData d = CategoryData::blank(t->field(), std::move(objects), std::move(labels));
    for (std::size_t x = 0; x < n; ++x) {
        d.identity[x] = x < nt ? t->identity(x) : u->identity(x - nt);
        for (std::size_t y = 0; y < n; ++y)
            for (std::size_t z = 0; z < n; ++z) {
                const std::size_t dxy = d.dim(x, y), dyz = d.dim(y, z);
                if (dxy * dyz == 0) continue;
                Mat& c = d.comp_at(x, y, z);
                if (z < nt) c = t->comp(x, y, z);
                else if (x >= nt) c = u->comp(x - nt, y - nt, z - nt);
                else if (y < nt) {
                    // g in M(z,y), f in T(x,y): g∘f = ract(f)(g)
                    for (std::size_t f = 0; f < dxy; ++f) {
                        Mat r = m.ract(t->hom_offset(x, y) + f, z - nt);
                        for (std::size_t g = 0; g < dyz; ++g) c.set_block(0, g * dxy + f, r.column(g));
                    }
                } else {
                    // g in U(y,z), f in M(y,x): g∘f = lact(g)(f)
                    for (std::size_t g = 0; g < dyz; ++g) {
                        Mat l = m.lact(u->hom_offset(y - nt, z - nt) + g, x);
                        for (std::size_t f = 0; f < dxy; ++f) c.set_block(0, g * dxy + f, l.column(f));
                    }
                }
            }
    }
    d.triangular = TriangularBlocks{nt, nu};
    return make_category(std::move(d));
}

CatPtr one_point_extension(const CatPtr& u, const CatModule& m)
{
    if (!same_category(m.base(), u) || m.side() != Side::Left)
        throw Error(ErrorCode::InvalidModule, "one-point extension needs a left module over U");
    ValidationReport rep = validate(m);
    if (!rep.ok()) throw Error(ErrorCode::InvalidModule, rep.violations.front());
    CatPtr k = catalog::point(u->field());
    return triangular_matrix(k, u, Bimodule::from_left_module(m, k));
}

}  // namespace hm
