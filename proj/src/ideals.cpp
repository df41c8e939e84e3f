#include "hm/ideals.hpp"

#include "hm/error.hpp"
#include "hm/linalg.hpp"

namespace hm {

namespace {

Mat echelon(const FieldSpec& f, std::size_t ambient, const Mat& span) { return la::column_space(f, ambient, span).basis; }

bool contained(const Mat& sub, const Mat& v)
{
    if (v.cols() == 0) return true;
    return la::rank(hstack(sub, v)) == sub.cols();
}

}  // namespace

TwoSidedIdeal TwoSidedIdeal::trusted(CatPtr parent, std::vector<Mat> echelon_spans)
{
    TwoSidedIdeal i;
    i.parent_ = std::move(parent);
    i.spans_ = std::move(echelon_spans);
    return i;
}

TwoSidedIdeal::TwoSidedIdeal(CatPtr parent, const std::vector<Mat>& spans) : parent_(std::move(parent))
{
    const std::size_t n = parent_->size();
    if (spans.size() != n * n) throw Error(ErrorCode::InvalidIdeal, "ideal needs one span per Hom pair");
    for (std::size_t p = 0; p < n * n; ++p) {
        if (spans[p].rows() != parent_->dim(p / n, p % n))
            throw Error(ErrorCode::CoordinateMismatch, "span at " + parent_->object(p / n) + "->" + parent_->object(p % n) +
                                                           " has the wrong number of coordinates");
        spans_.push_back(echelon(parent_->field(), spans[p].rows(), spans[p]));
    }
    ValidationReport rep = validate(*this);
    if (!rep.ok()) throw Error(ErrorCode::InvalidIdeal, rep.violations.front());
}

std::size_t TwoSidedIdeal::total_dim() const
{
    std::size_t s = 0;
    for (const auto& m : spans_) s += m.cols();
    return s;
}

bool operator==(const TwoSidedIdeal& a, const TwoSidedIdeal& b)
{
    return same_category(a.parent_, b.parent_) && a.spans_ == b.spans_;
}

ValidationReport validate(const TwoSidedIdeal& i)
{
    ValidationReport rep;
    const FiniteKCategory& c = *i.parent();
    const std::size_t n = c.size();
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            const Mat& s = i.span(x, y);
            if (la::rank(s) != s.cols()) rep.violations.push_back("span at " + c.object(x) + "->" + c.object(y) + " is not reduced");
            if (s.cols() == 0) continue;
            for (std::size_t z = 0; z < n; ++z) {
                for (std::size_t g = 0; g < c.dim(y, z); ++g)
                    if (!contained(i.span(x, z), c.postcompose_matrix(x, y, z, Mat::unit(c.field(), c.dim(y, z), g)) * s))
                        rep.violations.push_back("not closed under postcomposition with " + c.labels(y, z)[g]);
                for (std::size_t f = 0; f < c.dim(z, x); ++f)
                    if (!contained(i.span(z, y), c.precompose_matrix(z, x, y, Mat::unit(c.field(), c.dim(z, x), f)) * s))
                        rep.violations.push_back("not closed under precomposition with " + c.labels(z, x)[f]);
            }
        }
    return rep;
}

TwoSidedIdeal zero_ideal(const CatPtr& c)
{
    const std::size_t n = c->size();
    std::vector<Mat> spans;
    for (std::size_t p = 0; p < n * n; ++p) spans.emplace_back(c->field(), c->dim(p / n, p % n), 0);
    return TwoSidedIdeal::trusted(c, std::move(spans));
}

TwoSidedIdeal whole_ideal(const CatPtr& c)
{
    const std::size_t n = c->size();
    std::vector<Mat> spans;
    for (std::size_t p = 0; p < n * n; ++p) spans.push_back(Mat::identity(c->field(), c->dim(p / n, p % n)));
    return TwoSidedIdeal::trusted(c, std::move(spans));
}

TwoSidedIdeal ideal_from_generators(const CatPtr& c, const std::vector<IdealGenerator>& gens)
{
    const std::size_t n = c->size();
    const FieldSpec& f = c->field();
    std::vector<Mat> spans;
    for (std::size_t p = 0; p < n * n; ++p) spans.emplace_back(f, c->dim(p / n, p % n), 0);
    for (const auto& g : gens) {
        if (g.x >= n || g.y >= n) throw Error(ErrorCode::UnknownObject, "generator at an unknown object");
        if (g.coords.rows() != c->dim(g.x, g.y) || g.coords.cols() != 1)
            throw Error(ErrorCode::CoordinateMismatch, "generator in Hom(" + c->object(g.x) + "," + c->object(g.y) + ") needs " +
                                                           std::to_string(c->dim(g.x, g.y)) + " coordinates");
        auto& s = spans[g.x * n + g.y];
        s = echelon(f, s.rows(), hstack(s, g.coords));
    }
    // saturate under both compositions; ranks only grow, so the cap is safe
    const std::size_t cap = c->total_hom_dim() + 1;
    std::size_t rounds = 0;
    for (bool grew = true; grew; ++rounds) {
        if (rounds > cap) throw Error(ErrorCode::Internal, "ideal closure did not stabilize");
        grew = false;
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y) {
                if (spans[x * n + y].cols() == 0) continue;
                for (std::size_t z = 0; z < n; ++z) {
                    std::vector<Mat> post, pre;
                    for (std::size_t g = 0; g < c->dim(y, z); ++g)
                        post.push_back(c->postcompose_matrix(x, y, z, Mat::unit(f, c->dim(y, z), g)) * spans[x * n + y]);
                    for (std::size_t h = 0; h < c->dim(z, x); ++h)
                        pre.push_back(c->precompose_matrix(z, x, y, Mat::unit(f, c->dim(z, x), h)) * spans[x * n + y]);
                    auto absorb = [&](std::size_t a, std::size_t b, std::vector<Mat>& vs) {
                        if (vs.empty()) return;
                        Mat& s = spans[a * n + b];
                        Mat all = hstack(s, hstack(f, s.rows(), vs));
                        Mat e = echelon(f, s.rows(), all);
                        if (e.cols() > s.cols()) {
                            s = e;
                            grew = true;
                        }
                    };
                    absorb(x, z, post);
                    absorb(z, y, pre);
                }
            }
    }
    return TwoSidedIdeal::trusted(c, std::move(spans));
}

TwoSidedIdeal ideal_product(const TwoSidedIdeal& i, const TwoSidedIdeal& j)
{
    if (!same_category(i.parent(), j.parent())) throw Error(ErrorCode::ParentMismatch, "ideals live in different categories");
    const CatPtr& c = i.parent();
    const std::size_t n = c->size();
    std::vector<Mat> spans;
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t z = 0; z < n; ++z) {
            std::vector<Mat> parts;
            for (std::size_t y = 0; y < n; ++y)
                if (i.dim(y, z) * j.dim(x, y) > 0) parts.push_back(c->comp(x, y, z) * kron(i.span(y, z), j.span(x, y)));
            const std::size_t d = c->dim(x, z);
            spans.push_back(echelon(c->field(), d, parts.empty() ? Mat(c->field(), d, 0) : hstack(c->field(), d, parts)));
        }
    return TwoSidedIdeal::trusted(c, std::move(spans));
}

bool is_idempotent(const TwoSidedIdeal& i) { return ideal_product(i, i) == i; }

TwoSidedIdeal triangular_ideal(const CatPtr& lambda)
{
    if (!lambda->triangular()) throw Error(ErrorCode::NotTriangular, "category carries no triangular block structure");
    const std::size_t nt = lambda->triangular()->t_objects, n = lambda->size();
    std::vector<Mat> spans;
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            const std::size_t d = lambda->dim(x, y);
            spans.push_back(x < nt ? Mat::identity(lambda->field(), d) : Mat(lambda->field(), d, 0));
        }
    return TwoSidedIdeal(lambda, spans);
}

TwoSidedIdeal opposite_ideal(const TwoSidedIdeal& i, const CatPtr& c_op)
{
    const std::size_t n = c_op->size();
    std::vector<Mat> spans;
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) spans.push_back(i.span(y, x));
    return TwoSidedIdeal::trusted(c_op, std::move(spans));
}

CatModule representable_ideal_module(const TwoSidedIdeal& i, std::size_t x)
{
    const CatPtr& c = i.parent();
    if (x >= c->size()) throw Error(ErrorCode::UnknownObject, "object index " + std::to_string(x));
    std::vector<Mat> span;
    for (std::size_t y = 0; y < c->size(); ++y) span.push_back(i.span(x, y));
    return submodule(representable(c, x, Side::Left), span).module;
}

CatModule corepresentable_ideal_module(const TwoSidedIdeal& i, std::size_t x)
{
    const CatPtr& c = i.parent();
    if (x >= c->size()) throw Error(ErrorCode::UnknownObject, "object index " + std::to_string(x));
    std::vector<Mat> span;
    for (std::size_t y = 0; y < c->size(); ++y) span.push_back(i.span(y, x));
    return submodule(representable(c, x, Side::Right), span).module;
}

SubModule ideal_bimodule(const TwoSidedIdeal& i, const CatPtr& ce)
{
    return submodule(regular_bimodule(i.parent(), ce), i.spans());
}

QuotientCategory quotient(const CatPtr& c, const TwoSidedIdeal& i)
{
    if (!same_category(i.parent(), c)) throw Error(ErrorCode::InvalidIdeal, "ideal of another category");
    ValidationReport rep = validate(i);
    if (!rep.ok()) throw Error(ErrorCode::InvalidIdeal, rep.violations.front());
    const std::size_t n = c->size();
    const FieldSpec& f = c->field();
    std::vector<la::Quotient> q;
    std::vector<std::vector<std::string>> labels(n * n);
    for (std::size_t p = 0; p < n * n; ++p) {
        const std::size_t x = p / n, y = p % n;
        q.push_back(la::quotient(la::column_space(f, c->dim(x, y), i.span(x, y))));
        for (auto k : q.back().free) labels[p].push_back(c->labels(x, y)[k]);
    }
    CategoryData d = CategoryData::blank(f, c->objects(), std::move(labels));
    for (std::size_t x = 0; x < n; ++x) {
        d.identity[x] = q[x * n + x].projection * c->identity(x);
        for (std::size_t y = 0; y < n; ++y)
            for (std::size_t z = 0; z < n; ++z)
                d.comp_at(x, y, z) = q[x * n + z].projection * c->comp(x, y, z) *
                                     kron(q[y * n + z].section, q[x * n + y].section);
    }
    QuotientCategory out;
    out.category = make_category(std::move(d));
    std::vector<std::size_t> obj(n);
    std::vector<Mat> maps;
    for (std::size_t x = 0; x < n; ++x) obj[x] = x;
    for (auto& qq : q) {
        maps.push_back(qq.projection);
        out.section.push_back(qq.section);
    }
    out.projection = make_functor(c, out.category, std::move(obj), std::move(maps));
    return out;
}

}  // namespace hm
