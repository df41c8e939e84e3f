#include "hm/module.hpp"

#include "hm/error.hpp"
#include "hm/linalg.hpp"

namespace hm {

namespace {

// Endpoints of the linear map a basis morphism induces on values.
std::size_t from_obj(Side s, const FiniteKCategory::Morphism& m) { return s == Side::Left ? m.src : m.dst; }
std::size_t to_obj(Side s, const FiniteKCategory::Morphism& m) { return s == Side::Left ? m.dst : m.src; }

std::vector<std::size_t> prefix_offsets(const std::vector<std::size_t>& dims)
{
    std::vector<std::size_t> off(dims.size() + 1, 0);
    for (std::size_t i = 0; i < dims.size(); ++i) off[i + 1] = off[i] + dims[i];
    return off;
}

}  // namespace

const char* side_name(Side s) { return s == Side::Left ? "left" : "right"; }

CatModule CatModule::trusted(CatPtr base, Side side, std::vector<std::size_t> dims, std::vector<Mat> act)
{
    CatModule m;
    m.base_ = std::move(base);
    m.side_ = side;
    m.dims_ = std::move(dims);
    m.offsets_ = prefix_offsets(m.dims_);
    m.act_ = std::move(act);
    return m;
}

CatModule::CatModule(CatPtr base, Side side, std::vector<std::size_t> dims, std::vector<Mat> act)
    : CatModule(trusted(std::move(base), side, std::move(dims), std::move(act)))
{
    ValidationReport rep = validate(*this);
    if (!rep.ok()) throw Error(ErrorCode::InvalidModule, rep.violations.front());
}

CatModule CatModule::zero(CatPtr base, Side side)
{
    std::vector<std::size_t> dims(base->size(), 0);
    std::vector<Mat> act(base->total_hom_dim(), Mat(base->field(), 0, 0));
    return trusted(std::move(base), side, std::move(dims), std::move(act));
}

Mat CatModule::act_vec(std::size_t x, std::size_t y, const Mat& coeffs) const
{
    Mat out = side_ == Side::Left ? Mat(field(), dims_[y], dims_[x]) : Mat(field(), dims_[x], dims_[y]);
    const std::size_t off = base_->hom_offset(x, y);
    for (std::size_t k = 0; k < coeffs.rows(); ++k)
        if (!coeffs.is_zero_at(k, 0)) out.add_block(0, 0, act_[off + k], coeffs.get(k, 0));
    return out;
}

CatModule CatModule::as_left(const CatPtr& base_op) const
{
    if (side_ == Side::Left) return *this;
    const FiniteKCategory& c = *base_;
    std::vector<Mat> act(c.total_hom_dim());
    for (std::size_t g = 0; g < c.total_hom_dim(); ++g) {
        const auto& m = c.basis_morphism(g);
        act[base_op->hom_offset(m.dst, m.src) + m.index] = act_[g];
    }
    return trusted(base_op, Side::Left, dims_, std::move(act));
}

bool operator==(const CatModule& a, const CatModule& b)
{
    return same_category(a.base_, b.base_) && a.side_ == b.side_ && a.dims_ == b.dims_ && a.act_ == b.act_;
}

ValidationReport validate(const CatModule& m)
{
    ValidationReport rep;
    auto& out = rep.violations;
    const FiniteKCategory& c = *m.base();
    const std::size_t n = c.size();
    if (m.dims().size() != n || m.actions().size() != c.total_hom_dim()) {
        out.push_back("module tables do not match the base category");
        return rep;
    }
    for (std::size_t g = 0; g < c.total_hom_dim(); ++g) {
        const auto& mor = c.basis_morphism(g);
        const Mat& a = m.act(g);
        if (a.rows() != m.dim(to_obj(m.side(), mor)) || a.cols() != m.dim(from_obj(m.side(), mor)) ||
            !(a.field() == c.field())) {
            out.push_back("action of " + c.labels(mor.src, mor.dst)[mor.index] + " has the wrong shape");
            return rep;
        }
    }
    for (std::size_t x = 0; x < n; ++x)
        if (!(m.act_vec(x, x, c.identity(x)) == Mat::identity(c.field(), m.dim(x))))
            out.push_back("identity of " + c.object(x) + " does not act as the identity");
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            for (std::size_t z = 0; z < n; ++z) {
                const std::size_t dxy = c.dim(x, y), dyz = c.dim(y, z);
                for (std::size_t g = 0; g < dyz; ++g)
                    for (std::size_t f = 0; f < dxy; ++f) {
                        Mat lhs = m.act_vec(x, z, c.comp(x, y, z).column(g * dxy + f));
                        Mat rhs = m.side() == Side::Left ? m.act(y, z, g) * m.act(x, y, f) : m.act(x, y, f) * m.act(y, z, g);
                        if (!(lhs == rhs))
                            out.push_back("action does not respect the composite of (" + c.labels(x, y)[f] + ", " +
                                          c.labels(y, z)[g] + ")");
                    }
            }
    return rep;
}

bool is_module_map(const CatModule& src, const CatModule& dst, const ModuleMap& f)
{
    const FiniteKCategory& c = *src.base();
    if (!same_category(src.base(), dst.base()) || src.side() != dst.side() || f.comp.size() != c.size()) return false;
    for (std::size_t x = 0; x < c.size(); ++x)
        if (f.comp[x].rows() != dst.dim(x) || f.comp[x].cols() != src.dim(x)) return false;
    for (std::size_t g = 0; g < c.total_hom_dim(); ++g) {
        const auto& m = c.basis_morphism(g);
        const std::size_t a = from_obj(src.side(), m), b = to_obj(src.side(), m);
        if (!(dst.act(g) * f.comp[a] == f.comp[b] * src.act(g))) return false;
    }
    return true;
}

ModuleMap zero_map(const CatModule& src, const CatModule& dst)
{
    ModuleMap f;
    for (std::size_t x = 0; x < src.dims().size(); ++x) f.comp.emplace_back(src.field(), dst.dim(x), src.dim(x));
    return f;
}

ModuleMap identity_map(const CatModule& m)
{
    ModuleMap f;
    for (auto d : m.dims()) f.comp.push_back(Mat::identity(m.field(), d));
    return f;
}

ModuleMap compose(const ModuleMap& g, const ModuleMap& f)
{
    ModuleMap h;
    for (std::size_t x = 0; x < f.comp.size(); ++x) h.comp.push_back(g.comp[x] * f.comp[x]);
    return h;
}

Mat total_matrix(const CatModule& src, const CatModule& dst, const ModuleMap& f)
{
    Mat out(src.field(), dst.total_dim(), src.total_dim());
    for (std::size_t x = 0; x < f.comp.size(); ++x) out.set_block(dst.offset(x), src.offset(x), f.comp[x]);
    return out;
}

CatModule representable(const CatPtr& c, std::size_t x, Side side)
{
    if (x >= c->size()) throw Error(ErrorCode::UnknownObject, "representable at object index " + std::to_string(x));
    const std::size_t n = c->size();
    std::vector<std::size_t> dims(n);
    for (std::size_t y = 0; y < n; ++y) dims[y] = side == Side::Left ? c->dim(x, y) : c->dim(y, x);
    std::vector<Mat> act;
    act.reserve(c->total_hom_dim());
    for (std::size_t g = 0; g < c->total_hom_dim(); ++g) {
        const auto& m = c->basis_morphism(g);
        Mat e = c->basis_vector(g);
        act.push_back(side == Side::Left ? c->postcompose_matrix(x, m.src, m.dst, e)
                                         : c->precompose_matrix(m.src, m.dst, x, e));
    }
    return CatModule::trusted(c, side, std::move(dims), std::move(act));
}

CatModule dualize(const CatModule& m)
{
    std::vector<Mat> act;
    for (const auto& a : m.actions()) act.push_back(a.transpose());
    return CatModule::trusted(m.base(), m.side() == Side::Left ? Side::Right : Side::Left, m.dims(), std::move(act));
}

CatModule direct_sum(const std::vector<CatModule>& parts)
{
    if (parts.empty()) throw Error(ErrorCode::InvalidModule, "direct sum of no modules");
    const CatPtr& c = parts[0].base();
    std::vector<std::size_t> dims(c->size(), 0);
    for (const auto& p : parts) {
        if (!same_category(p.base(), c) || p.side() != parts[0].side())
            throw Error(ErrorCode::BaseMismatch, "direct sum of modules over different bases");
        for (std::size_t x = 0; x < c->size(); ++x) dims[x] += p.dim(x);
    }
    std::vector<Mat> act;
    for (std::size_t g = 0; g < c->total_hom_dim(); ++g) {
        std::vector<Mat> blocks;
        for (const auto& p : parts) blocks.push_back(p.act(g));
        act.push_back(block_diag(c->field(), blocks));
    }
    return CatModule::trusted(c, parts[0].side(), std::move(dims), std::move(act));
}

CatModule pullback(const CatModule& m, const KFunctor& phi)
{
    if (!same_category(phi.target, m.base())) throw Error(ErrorCode::BaseMismatch, "pullback along a functor into another category");
    const FiniteKCategory& c = *phi.source;
    std::vector<std::size_t> dims(c.size());
    for (std::size_t x = 0; x < c.size(); ++x) dims[x] = m.dim(phi.object_map[x]);
    std::vector<Mat> act;
    for (std::size_t g = 0; g < c.total_hom_dim(); ++g) {
        const auto& mor = c.basis_morphism(g);
        act.push_back(m.act_vec(phi.object_map[mor.src], phi.object_map[mor.dst], phi.map(mor.src, mor.dst).column(mor.index)));
    }
    return CatModule::trusted(phi.source, m.side(), std::move(dims), std::move(act));
}

SubModule submodule(const CatModule& m, const std::vector<Mat>& span)
{
    const FiniteKCategory& c = *m.base();
    std::vector<Mat> basis;
    std::vector<std::size_t> dims;
    for (std::size_t x = 0; x < c.size(); ++x) {
        la::Subspace s = la::column_space(m.field(), m.dim(x), span[x]);
        basis.push_back(s.basis);
        dims.push_back(s.dim());
    }
    std::vector<Mat> act;
    for (std::size_t g = 0; g < c.total_hom_dim(); ++g) {
        const auto& mor = c.basis_morphism(g);
        const std::size_t a = from_obj(m.side(), mor), b = to_obj(m.side(), mor);
        auto sol = la::solve(basis[b], m.act(g) * basis[a]);
        if (!sol) throw Error(ErrorCode::InvalidModule, "subspace is not stable under " + c.labels(mor.src, mor.dst)[mor.index]);
        act.push_back(std::move(*sol));
    }
    return {CatModule::trusted(m.base(), m.side(), std::move(dims), std::move(act)), ModuleMap{std::move(basis)}};
}

QuotientModule quotient_module(const CatModule& m, const std::vector<Mat>& span)
{
    const FiniteKCategory& c = *m.base();
    std::vector<la::Quotient> q;
    std::vector<std::size_t> dims;
    for (std::size_t x = 0; x < c.size(); ++x) {
        q.push_back(la::quotient(la::column_space(m.field(), m.dim(x), span[x])));
        dims.push_back(q.back().dim());
    }
    std::vector<Mat> act;
    for (std::size_t g = 0; g < c.total_hom_dim(); ++g) {
        const auto& mor = c.basis_morphism(g);
        const std::size_t a = from_obj(m.side(), mor), b = to_obj(m.side(), mor);
        if (!(q[b].projection * m.act(g) * q[a].sub.basis).is_zero())
            throw Error(ErrorCode::InvalidModule, "subspace is not stable under " + c.labels(mor.src, mor.dst)[mor.index]);
        act.push_back(q[b].projection * m.act(g) * q[a].section);
    }
    QuotientModule out{CatModule::trusted(m.base(), m.side(), std::move(dims), std::move(act)), {}, {}};
    for (auto& qx : q) {
        out.projection.comp.push_back(qx.projection);
        out.section.push_back(qx.section);
    }
    return out;
}

std::vector<Mat> generated_span(const CatModule& m, const std::vector<Mat>& gens)
{
    const FiniteKCategory& c = *m.base();
    std::vector<Mat> span;
    std::vector<std::size_t> rk;
    for (std::size_t x = 0; x < c.size(); ++x) {
        span.push_back(la::column_space(m.field(), m.dim(x), gens[x]).basis);
        rk.push_back(span.back().cols());
    }
    for (bool grew = true; grew;) {
        grew = false;
        for (std::size_t g = 0; g < c.total_hom_dim(); ++g) {
            const auto& mor = c.basis_morphism(g);
            const std::size_t a = from_obj(m.side(), mor), b = to_obj(m.side(), mor);
            if (span[a].cols() == 0) continue;
            Mat img = m.act(g) * span[a];
            la::Subspace s = la::column_space(m.field(), m.dim(b), hstack(span[b], img));
            if (s.dim() > rk[b]) {
                span[b] = s.basis;
                rk[b] = s.dim();
                grew = true;
            }
        }
    }
    return span;
}

Bimodule::Bimodule(CatPtr u, CatPtr t, std::vector<std::size_t> dims, std::vector<Mat> left, std::vector<Mat> right)
    : u_(std::move(u)), t_(std::move(t)), dims_(std::move(dims)), lact_(std::move(left)), ract_(std::move(right))
{
    const std::size_t nu = u_->size(), nt = t_->size();
    if (!(u_->field() == t_->field())) throw Error(ErrorCode::FieldMismatch, "bimodule over categories on different fields");
    if (dims_.size() != nu * nt || lact_.size() != u_->total_hom_dim() * nt || ract_.size() != t_->total_hom_dim() * nu)
        throw Error(ErrorCode::InvalidBimodule, "bimodule tables do not match the base categories");
    for (std::size_t t0 = 0; t0 < nt; ++t0) {
        std::vector<std::size_t> d;
        std::vector<Mat> a;
        for (std::size_t u0 = 0; u0 < nu; ++u0) d.push_back(dim(u0, t0));
        for (std::size_t g = 0; g < u_->total_hom_dim(); ++g) a.push_back(lact(g, t0));
        ValidationReport rep = validate(CatModule::trusted(u_, Side::Left, d, a));
        if (!rep.ok()) throw Error(ErrorCode::InvalidBimodule, "left action at " + t_->object(t0) + ": " + rep.violations.front());
    }
    for (std::size_t u0 = 0; u0 < nu; ++u0) {
        std::vector<std::size_t> d;
        std::vector<Mat> a;
        for (std::size_t t0 = 0; t0 < nt; ++t0) d.push_back(dim(u0, t0));
        for (std::size_t f = 0; f < t_->total_hom_dim(); ++f) a.push_back(ract(f, u0));
        ValidationReport rep = validate(CatModule::trusted(t_, Side::Right, d, a));
        if (!rep.ok()) throw Error(ErrorCode::InvalidBimodule, "right action at " + u_->object(u0) + ": " + rep.violations.front());
    }
    for (std::size_t g = 0; g < u_->total_hom_dim(); ++g)
        for (std::size_t f = 0; f < t_->total_hom_dim(); ++f) {
            const auto& mg = u_->basis_morphism(g);
            const auto& mf = t_->basis_morphism(f);  // t' -> t
            if (!(lact(g, mf.src) * ract(f, mg.src) == ract(f, mg.dst) * lact(g, mf.dst)))
                throw Error(ErrorCode::InvalidBimodule, "actions of " + u_->labels(mg.src, mg.dst)[mg.index] + " and " +
                                                            t_->labels(mf.src, mf.dst)[mf.index] + " do not commute");
        }
}

std::size_t Bimodule::total_dim() const
{
    std::size_t s = 0;
    for (auto d : dims_) s += d;
    return s;
}

Mat Bimodule::lact_vec(std::size_t u, std::size_t u2, std::size_t t, const Mat& g) const
{
    Mat out(u_->field(), dim(u2, t), dim(u, t));
    for (std::size_t k = 0; k < g.rows(); ++k)
        if (!g.is_zero_at(k, 0)) out.add_block(0, 0, lact(u_->hom_offset(u, u2) + k, t), g.get(k, 0));
    return out;
}

Mat Bimodule::ract_vec(std::size_t t2, std::size_t t, std::size_t u, const Mat& f) const
{
    Mat out(u_->field(), dim(u, t2), dim(u, t));
    for (std::size_t k = 0; k < f.rows(); ++k)
        if (!f.is_zero_at(k, 0)) out.add_block(0, 0, ract(t_->hom_offset(t2, t) + k, u), f.get(k, 0));
    return out;
}

CatModule Bimodule::to_module(const CatPtr& ut_op) const
{
    const std::size_t nt = t_->size();
    std::vector<Mat> act;
    for (std::size_t gl = 0; gl < ut_op->total_hom_dim(); ++gl) {
        const auto& m = ut_op->basis_morphism(gl);
        const std::size_t u0 = m.src / nt, t0 = m.src % nt, u1 = m.dst / nt, t1 = m.dst % nt;
        const std::size_t dt = t_->dim(t1, t0);
        const std::size_t i = m.index / dt, j = m.index % dt;
        act.push_back(lact(u_->hom_offset(u0, u1) + i, t1) * ract(t_->hom_offset(t1, t0) + j, u0));
    }
    return CatModule::trusted(ut_op, Side::Left, dims_, std::move(act));
}

Bimodule Bimodule::zero(CatPtr u, CatPtr t)
{
    const FieldSpec f = u->field();
    std::vector<std::size_t> dims(u->size() * t->size(), 0);
    std::vector<Mat> l(u->total_hom_dim() * t->size(), Mat(f, 0, 0));
    std::vector<Mat> r(t->total_hom_dim() * u->size(), Mat(f, 0, 0));
    return Bimodule(std::move(u), std::move(t), std::move(dims), std::move(l), std::move(r));
}

Bimodule Bimodule::from_left_module(const CatModule& m, const CatPtr& point)
{
    if (m.side() != Side::Left) throw Error(ErrorCode::InvalidModule, "expected a left module");
    if (point->size() != 1 || point->dim(0, 0) != 1) throw Error(ErrorCode::InvalidCategory, "expected the one-object category K");
    std::vector<Mat> r;
    const Scalar s = point->identity(0).get(0, 0);
    // the single basis morphism is s^-1 times the identity
    for (std::size_t u = 0; u < m.base()->size(); ++u)
        r.push_back(Mat::identity(m.field(), m.dim(u)).scaled(inv(m.field(), s)));
    return Bimodule(m.base(), point, m.dims(), m.actions(), std::move(r));
}

CatModule functor_bimodule(const CatPtr& ce, const KFunctor& phi)
{
    const FiniteKCategory& c = *phi.source;
    const FiniteKCategory& b = *phi.target;
    const std::size_t n = c.size();
    if (ce->size() != n * n) throw Error(ErrorCode::BaseMismatch, "expected the enveloping category of the functor source");
    std::vector<std::size_t> dims(n * n);
    for (std::size_t a = 0; a < n * n; ++a) dims[a] = b.dim(phi.object_map[a / n], phi.object_map[a % n]);
    std::vector<Mat> act;
    act.reserve(ce->total_hom_dim());
    for (std::size_t gl = 0; gl < ce->total_hom_dim(); ++gl) {
        const auto& m = ce->basis_morphism(gl);
        const std::size_t x1 = m.src / n, x = m.src % n, y1 = m.dst / n, y = m.dst % n;
        const std::size_t d2 = c.dim(x, y);
        const std::size_t i = m.index / d2, j = m.index % d2;
        // m ↦ Φ(f_j) ∘ m ∘ Φ(f_i), f_i: y1 -> x1, f_j: x -> y
        const std::size_t px1 = phi.object_map[x1], px = phi.object_map[x], py1 = phi.object_map[y1], py = phi.object_map[y];
        Mat fi = phi.map(y1, x1).column(i);
        Mat fj = phi.map(x, y).column(j);
        act.push_back(b.postcompose_matrix(py1, px, py, fj) * b.precompose_matrix(py1, px1, px, fi));
    }
    return CatModule::trusted(ce, Side::Left, std::move(dims), std::move(act));
}

CatModule regular_bimodule(const CatPtr& c, const CatPtr& ce) { return functor_bimodule(ce, identity_functor(c)); }

CatModule outer_tensor(const CatModule& m, const CatModule& n, const CatPtr& target)
{
    if (m.side() != Side::Right || n.side() != Side::Left || !(m.field() == n.field()))
        throw Error(ErrorCode::BaseMismatch, "outer tensor needs a right and a left module over one field");
    const FiniteKCategory& c = *m.base();
    const FiniteKCategory& d = *n.base();
    const std::size_t kc = c.size(), kd = d.size();
    if (target->size() != kc * kd || target->total_hom_dim() != c.total_hom_dim() * d.total_hom_dim())
        throw Error(ErrorCode::BaseMismatch, "expected tensor_category(opposite(C), D) as the target");
    std::vector<std::size_t> dims(kc * kd);
    for (std::size_t a = 0; a < kc * kd; ++a) dims[a] = m.dim(a / kd) * n.dim(a % kd);
    std::vector<Mat> act;
    act.reserve(target->total_hom_dim());
    for (std::size_t gl = 0; gl < target->total_hom_dim(); ++gl) {
        const auto& mor = target->basis_morphism(gl);
        const std::size_t x1 = mor.src / kd, x = mor.src % kd, y1 = mor.dst / kd, y = mor.dst % kd;
        const std::size_t d2 = d.dim(x, y);
        const std::size_t i = mor.index / d2, j = mor.index % d2;
        act.push_back(kron(m.act(c.hom_offset(y1, x1) + i), n.act(d.hom_offset(x, y) + j)));
    }
    return CatModule::trusted(target, Side::Left, std::move(dims), std::move(act));
}

}  // namespace hm
