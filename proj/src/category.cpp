#include "hm/category.hpp"

#include <algorithm>

#include "hm/error.hpp"

namespace hm {

namespace {

bool is_unit_column(const Mat& v, std::size_t& k)
{
    std::size_t found = v.rows();
    for (std::size_t i = 0; i < v.rows(); ++i) {
        if (v.is_zero_at(i, 0)) continue;
        if (found != v.rows() || !(v.get(i, 0) == one(v.field()))) return false;
        found = i;
    }
    k = found;
    return found != v.rows();
}

std::string identity_label(const CategoryData& d, std::size_t x)
{
    std::size_t k = 0;
    if (is_unit_column(d.identity[x], k)) return d.hom_labels[x * d.size() + x][k];
    return "1_" + d.objects[x];
}

void check_shape(std::vector<std::string>& out, const std::string& what, const Mat& m, const FieldSpec& f,
                 std::size_t rows, std::size_t cols)
{
    if (!(m.field() == f)) out.push_back(what + " is over " + m.field().to_string() + ", expected " + f.to_string());
    if (m.rows() != rows || m.cols() != cols)
        out.push_back(what + " has shape " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + ", expected " +
                      std::to_string(rows) + "x" + std::to_string(cols));
}

}  // namespace

CategoryData CategoryData::blank(const FieldSpec& field, std::vector<std::string> objects,
                                 std::vector<std::vector<std::string>> hom_labels)
{
    CategoryData d;
    d.field = field;
    d.objects = std::move(objects);
    d.hom_labels = std::move(hom_labels);
    const std::size_t n = d.size();
    d.comp.reserve(n * n * n);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            for (std::size_t z = 0; z < n; ++z) d.comp.emplace_back(field, d.dim(x, z), d.dim(y, z) * d.dim(x, y));
    for (std::size_t x = 0; x < n; ++x) d.identity.emplace_back(field, d.dim(x, x), 1);
    return d;
}

ValidationReport validate(const CategoryData& d)
{
    ValidationReport rep;
    auto& out = rep.violations;
    const std::size_t n = d.size();
    if (n == 0) out.push_back("category has no objects");
    if (d.hom_labels.size() != n * n || d.comp.size() != n * n * n || d.identity.size() != n) {
        out.push_back("structure tables do not match the object count");
        return rep;
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (d.objects[i] == d.objects[j]) out.push_back("duplicate object '" + d.objects[i] + "'");
    for (std::size_t x = 0; x < n; ++x) {
        check_shape(out, "identity of " + d.objects[x], d.identity[x], d.field, d.dim(x, x), 1);
        for (std::size_t y = 0; y < n; ++y)
            for (std::size_t z = 0; z < n; ++z)
                check_shape(out, "composition " + d.objects[x] + "->" + d.objects[y] + "->" + d.objects[z],
                            d.comp[(x * n + y) * n + z], d.field, d.dim(x, z), d.dim(y, z) * d.dim(x, y));
    }
    if (!out.empty()) return rep;

    auto comp = [&](std::size_t x, std::size_t y, std::size_t z) -> const Mat& { return d.comp[(x * n + y) * n + z]; };
    auto label = [&](std::size_t x, std::size_t y, std::size_t k) -> const std::string& {
        return d.hom_labels[x * n + y][k];
    };

    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            const std::size_t dxy = d.dim(x, y);
            if (dxy == 0) continue;
            // f∘1_x and 1_y∘f for all basis f at once
            Mat right = comp(x, x, y) * kron(Mat::identity(d.field, dxy), d.identity[x]);
            Mat left = comp(x, y, y) * kron(d.identity[y], Mat::identity(d.field, dxy));
            for (std::size_t f = 0; f < dxy; ++f) {
                Mat e = Mat::unit(d.field, dxy, f);
                if (!(right.column(f) == e))
                    out.push_back("right unit law fails at (" + identity_label(d, x) + ", " + label(x, y, f) + ")");
                if (!(left.column(f) == e))
                    out.push_back("left unit law fails at (" + label(x, y, f) + ", " + identity_label(d, y) + ")");
            }
        }

    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            const std::size_t dxy = d.dim(x, y);
            if (dxy == 0) continue;
            for (std::size_t z = 0; z < n; ++z) {
                const std::size_t dyz = d.dim(y, z);
                if (dyz == 0) continue;
                for (std::size_t w = 0; w < n; ++w) {
                    const std::size_t dzw = d.dim(z, w);
                    if (dzw == 0) continue;
                    // column h*(dyz*dxy) + g*dxy + f
                    Mat hg_f = comp(x, y, w) * kron(comp(y, z, w), Mat::identity(d.field, dxy));
                    Mat h_gf = comp(x, z, w) * kron(Mat::identity(d.field, dzw), comp(x, y, z));
                    if (hg_f == h_gf) continue;
                    for (std::size_t h = 0; h < dzw; ++h)
                        for (std::size_t g = 0; g < dyz; ++g)
                            for (std::size_t f = 0; f < dxy; ++f) {
                                const std::size_t c = (h * dyz + g) * dxy + f;
                                if (!(hg_f.column(c) == h_gf.column(c)))
                                    out.push_back("associativity fails at (" + label(x, y, f) + ", " + label(y, z, g) +
                                                  ", " + label(z, w, h) + ")");
                            }
                }
            }
        }
    return rep;
}

FiniteKCategory::FiniteKCategory(CategoryData data) : data_(std::move(data))
{
    ValidationReport rep = validate(data_);
    if (!rep.ok()) {
        std::string msg = std::to_string(rep.violations.size()) + " violation(s)";
        for (std::size_t i = 0; i < rep.violations.size() && i < 8; ++i) msg += "; " + rep.violations[i];
        throw Error(ErrorCode::InvalidCategory, msg);
    }
    const std::size_t n = size();
    offsets_.resize(n * n);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            offsets_[x * n + y] = morphisms_.size();
            for (std::size_t k = 0; k < dim(x, y); ++k) morphisms_.push_back({x, y, k});
        }
}

std::size_t FiniteKCategory::index_of(std::string_view name) const
{
    auto it = std::find(data_.objects.begin(), data_.objects.end(), name);
    if (it == data_.objects.end()) throw Error(ErrorCode::UnknownObject, "no object named '" + std::string(name) + "'");
    return static_cast<std::size_t>(it - data_.objects.begin());
}

Mat FiniteKCategory::compose(std::size_t x, std::size_t y, std::size_t z, const Mat& g, const Mat& f) const
{
    return comp(x, y, z) * kron(g, f);
}

Mat FiniteKCategory::postcompose_matrix(std::size_t x, std::size_t y, std::size_t z, const Mat& g) const
{
    return comp(x, y, z) * kron(g, Mat::identity(field(), dim(x, y)));
}

Mat FiniteKCategory::precompose_matrix(std::size_t x, std::size_t y, std::size_t z, const Mat& f) const
{
    return comp(x, y, z) * kron(Mat::identity(field(), dim(y, z)), f);
}

Mat FiniteKCategory::basis_vector(std::size_t global) const
{
    const Morphism& m = morphisms_[global];
    return Mat::unit(field(), dim(m.src, m.dst), m.index);
}

bool operator==(const FiniteKCategory& a, const FiniteKCategory& b)
{
    return a.data_.field == b.data_.field && a.data_.objects == b.data_.objects &&
           a.data_.hom_labels == b.data_.hom_labels && a.data_.comp == b.data_.comp &&
           a.data_.identity == b.data_.identity;
}

CatPtr make_category(CategoryData data) { return std::make_shared<const FiniteKCategory>(std::move(data)); }

bool same_category(const CatPtr& a, const CatPtr& b) { return a == b || (a && b && *a == *b); }

CatPtr opposite(const CatPtr& c)
{
    const std::size_t n = c->size();
    std::vector<std::vector<std::string>> labels(n * n);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) labels[x * n + y] = c->labels(y, x);
    CategoryData d = CategoryData::blank(c->field(), c->objects(), std::move(labels));
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            for (std::size_t z = 0; z < n; ++z) {
                // g ∘op f = f ∘ g with f in C(y,x), g in C(z,y)
                const Mat& src = c->comp(z, y, x);
                const std::size_t df = c->dim(y, x), dg = c->dim(z, y);
                Mat& dst = d.comp_at(x, y, z);
                for (std::size_t g = 0; g < dg; ++g)
                    for (std::size_t f = 0; f < df; ++f) dst.set_block(0, g * df + f, src.column(f * dg + g));
            }
    for (std::size_t x = 0; x < n; ++x) d.identity[x] = c->identity(x);
    d.tensor = c->tensor();
    return make_category(std::move(d));
}

CatPtr tensor_category(const CatPtr& c, const CatPtr& e)
{
    if (!(c->field() == e->field()))
        throw Error(ErrorCode::FieldMismatch,
                    "tensor of categories over " + c->field().to_string() + " and " + e->field().to_string());
    const std::size_t nc = c->size(), ne = e->size(), n = nc * ne;
    std::vector<std::string> objects;
    for (std::size_t i = 0; i < nc; ++i)
        for (std::size_t j = 0; j < ne; ++j) objects.push_back("(" + c->object(i) + "," + e->object(j) + ")");
    std::vector<std::vector<std::string>> labels(n * n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            auto& l = labels[a * n + b];
            for (const auto& f : c->labels(a / ne, b / ne))
                for (const auto& g : e->labels(a % ne, b % ne)) l.push_back(f + "|" + g);
        }
    CategoryData d = CategoryData::blank(c->field(), std::move(objects), std::move(labels));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t z = 0; z < n; ++z) {
                const std::size_t a1 = a / ne, a2 = a % ne, b1 = b / ne, b2 = b % ne, z1 = z / ne, z2 = z % ne;
                const std::size_t df1 = c->dim(a1, b1), dg1 = e->dim(a2, b2);
                const std::size_t df2 = c->dim(b1, z1), dg2 = e->dim(b2, z2);
                if (df1 * dg1 == 0 || df2 * dg2 == 0) continue;
                const Mat& cc = c->comp(a1, b1, z1);
                const Mat& ce = e->comp(a2, b2, z2);
                Mat& dst = d.comp_at(a, b, z);
                for (std::size_t f2 = 0; f2 < df2; ++f2)
                    for (std::size_t g2 = 0; g2 < dg2; ++g2)
                        for (std::size_t f1 = 0; f1 < df1; ++f1)
                            for (std::size_t g1 = 0; g1 < dg1; ++g1) {
                                const std::size_t col = (f2 * dg2 + g2) * (df1 * dg1) + f1 * dg1 + g1;
                                dst.set_block(0, col, kron(cc.column(f2 * df1 + f1), ce.column(g2 * dg1 + g1)));
                            }
            }
    for (std::size_t a = 0; a < n; ++a) d.identity[a] = kron(c->identity(a / ne), e->identity(a % ne));
    d.tensor = TensorFactors{nc, ne};
    return make_category(std::move(d));
}

CatPtr enveloping(const CatPtr& c) { return tensor_category(opposite(c), c); }

CatPtr drop_zero_objects(const CatPtr& c, std::vector<std::size_t>* kept_out)
{
    std::vector<std::size_t> kept;
    for (std::size_t x = 0; x < c->size(); ++x)
        if (c->dim(x, x) > 0) kept.push_back(x);
    if (kept_out) *kept_out = kept;
    const std::size_t n = kept.size();
    std::vector<std::string> objects;
    std::vector<std::vector<std::string>> labels(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        objects.push_back(c->object(kept[i]));
        for (std::size_t j = 0; j < n; ++j) labels[i * n + j] = c->labels(kept[i], kept[j]);
    }
    CategoryData d = CategoryData::blank(c->field(), std::move(objects), std::move(labels));
    for (std::size_t i = 0; i < n; ++i) {
        d.identity[i] = c->identity(kept[i]);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) d.comp_at(i, j, k) = c->comp(kept[i], kept[j], kept[k]);
    }
    return make_category(std::move(d));
}

ValidationReport validate(const KFunctor& fn)
{
    ValidationReport rep;
    auto& out = rep.violations;
    const FiniteKCategory& s = *fn.source;
    const FiniteKCategory& t = *fn.target;
    const std::size_t n = s.size();
    if (!(s.field() == t.field())) out.push_back("source and target fields differ");
    if (fn.object_map.size() != n || fn.maps.size() != n * n) {
        out.push_back("functor tables do not match the source object count");
        return rep;
    }
    for (auto o : fn.object_map)
        if (o >= t.size()) {
            out.push_back("object map leaves the target");
            return rep;
        }
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            check_shape(out, "functor map " + s.object(x) + "->" + s.object(y), fn.map(x, y), s.field(),
                        t.dim(fn.object_map[x], fn.object_map[y]), s.dim(x, y));
    if (!out.empty()) return rep;
    for (std::size_t x = 0; x < n; ++x)
        if (!(fn.map(x, x) * s.identity(x) == t.identity(fn.object_map[x])))
            out.push_back("identity of " + s.object(x) + " is not preserved");
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            for (std::size_t z = 0; z < n; ++z) {
                if (s.dim(x, y) * s.dim(y, z) == 0) continue;
                const std::size_t fx = fn.object_map[x], fy = fn.object_map[y], fz = fn.object_map[z];
                Mat lhs = fn.map(x, z) * s.comp(x, y, z);
                Mat rhs = t.comp(fx, fy, fz) * kron(fn.map(y, z), fn.map(x, y));
                if (lhs == rhs) continue;
                for (std::size_t g = 0; g < s.dim(y, z); ++g)
                    for (std::size_t f = 0; f < s.dim(x, y); ++f) {
                        const std::size_t c = g * s.dim(x, y) + f;
                        if (!(lhs.column(c) == rhs.column(c)))
                            out.push_back("composition not preserved at (" + s.labels(x, y)[f] + ", " +
                                          s.labels(y, z)[g] + ")");
                    }
            }
    return rep;
}

KFunctor make_functor(CatPtr source, CatPtr target, std::vector<std::size_t> object_map, std::vector<Mat> maps)
{
    KFunctor f{std::move(source), std::move(target), std::move(object_map), std::move(maps)};
    ValidationReport rep = validate(f);
    if (!rep.ok()) throw Error(ErrorCode::InvalidFunctor, rep.violations.front());
    return f;
}

KFunctor identity_functor(const CatPtr& c)
{
    const std::size_t n = c->size();
    std::vector<std::size_t> obj(n);
    std::vector<Mat> maps;
    for (std::size_t x = 0; x < n; ++x) obj[x] = x;
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) maps.push_back(Mat::identity(c->field(), c->dim(x, y)));
    return KFunctor{c, c, std::move(obj), std::move(maps)};
}

KFunctor opposite(const KFunctor& f, const CatPtr& source_op, const CatPtr& target_op)
{
    const std::size_t n = f.source->size();
    std::vector<Mat> maps;
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) maps.push_back(f.map(y, x));
    return make_functor(source_op, target_op, f.object_map, std::move(maps));
}

KFunctor tensor_functor(const KFunctor& f, const KFunctor& g, const CatPtr& source, const CatPtr& target)
{
    const std::size_t ns = g.source->size(), nt = g.target->size(), n = source->size();
    std::vector<std::size_t> obj(n);
    std::vector<Mat> maps;
    for (std::size_t a = 0; a < n; ++a) obj[a] = f.object_map[a / ns] * nt + g.object_map[a % ns];
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) maps.push_back(kron(f.map(a / ns, b / ns), g.map(a % ns, b % ns)));
    return make_functor(source, target, std::move(obj), std::move(maps));
}

}  // namespace hm
