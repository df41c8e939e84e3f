#include "hm/modcat.hpp"

#include <random>

#include "hm/catalog.hpp"
#include "hm/error.hpp"
#include "hm/linalg.hpp"

namespace hm {

namespace {

std::size_t from_obj(Side s, const FiniteKCategory::Morphism& m) { return s == Side::Left ? m.src : m.dst; }
std::size_t to_obj(Side s, const FiniteKCategory::Morphism& m) { return s == Side::Left ? m.dst : m.src; }

void require_same(const CatModule& m, const CatModule& n, const char* what)
{
    if (!same_category(m.base(), n.base())) throw Error(ErrorCode::BaseMismatch, std::string(what) + " over different categories");
}

std::vector<std::size_t> prefix(const std::vector<std::size_t>& v)
{
    std::vector<std::size_t> off(v.size() + 1, 0);
    for (std::size_t i = 0; i < v.size(); ++i) off[i + 1] = off[i] + v[i];
    return off;
}

// A generating set for the submodule of x spanned by span[y], as
// (object, vector) pairs taken from the columns of span.
struct Generators {
    std::vector<std::size_t> objects;
    std::vector<Mat> vectors;
};

std::vector<std::size_t> span_dims(const CatModule& x, const Generators& g)
{
    const FiniteKCategory& c = *x.base();
    std::vector<Mat> gens;
    for (std::size_t y = 0; y < c.size(); ++y) gens.emplace_back(x.field(), x.dim(y), 0);
    for (std::size_t k = 0; k < g.objects.size(); ++k) gens[g.objects[k]] = hstack(gens[g.objects[k]], g.vectors[k]);
    std::vector<std::size_t> d;
    for (const auto& s : generated_span(x, gens)) d.push_back(s.cols());
    return d;
}

Generators choose_generators(const CatModule& x, const std::vector<Mat>& span)
{
    const FiniteKCategory& c = *x.base();
    std::vector<std::size_t> target;
    for (const auto& s : span) target.push_back(s.cols());
    Generators g;
    std::vector<std::size_t> have(c.size(), 0);
    std::vector<Mat> current;
    for (std::size_t y = 0; y < c.size(); ++y) current.emplace_back(x.field(), x.dim(y), 0);
    for (std::size_t y = 0; y < c.size() && have != target; ++y)
        for (std::size_t k = 0; k < span[y].cols() && have != target; ++k) {
            Mat v = span[y].column(k);
            if (la::rank(hstack(current[y], v)) == current[y].cols()) continue;
            g.objects.push_back(y);
            g.vectors.push_back(v);
            std::vector<Mat> gens;
            for (std::size_t z = 0; z < c.size(); ++z) gens.emplace_back(x.field(), x.dim(z), 0);
            for (std::size_t i = 0; i < g.objects.size(); ++i) gens[g.objects[i]] = hstack(gens[g.objects[i]], g.vectors[i]);
            current = generated_span(x, gens);
            for (std::size_t z = 0; z < c.size(); ++z) have[z] = current[z].cols();
        }
    if (have != target) throw Error(ErrorCode::Internal, "generator search did not cover the submodule");
    for (std::size_t i = g.objects.size(); i-- > 0;) {
        Generators t = g;
        t.objects.erase(t.objects.begin() + static_cast<long>(i));
        t.vectors.erase(t.vectors.begin() + static_cast<long>(i));
        if (span_dims(x, t) == target) g = std::move(t);
    }
    return g;
}

std::vector<Mat> kernel_spans(const ModuleMap& f)
{
    std::vector<Mat> out;
    for (const auto& m : f.comp) out.push_back(la::kernel_basis(m));
    return out;
}

// Coefficients of the generator-g summand of a vector in P(y).
Mat summand(const FreeModule& p, std::size_t g, std::size_t y, const Mat& v)
{
    return v.rows_range(p.block(g, y), p.base->dim(p.gens[g], y));
}

Scalar random_entry(const FieldSpec& f, std::mt19937_64& rng) { return from_int(f, static_cast<long>(rng() % 5) - 2); }

}  // namespace

std::vector<ModuleMap> module_hom(const CatModule& m, const CatModule& n)
{
    require_same(m, n, "Hom");
    if (m.side() != n.side()) throw Error(ErrorCode::BaseMismatch, "Hom between modules of different sides");
    const FiniteKCategory& c = *m.base();
    const FieldSpec& f = m.field();
    const std::size_t k = c.size();
    std::vector<std::size_t> sizes(k);
    for (std::size_t x = 0; x < k; ++x) sizes[x] = n.dim(x) * m.dim(x);
    const auto off = prefix(sizes);
    std::size_t rows = 0;
    for (std::size_t g = 0; g < c.total_hom_dim(); ++g) {
        const auto& mor = c.basis_morphism(g);
        rows += n.dim(to_obj(m.side(), mor)) * m.dim(from_obj(m.side(), mor));
    }
    Mat sys(f, rows, off.back());
    const Scalar minus = from_int(f, -1);
    std::size_t r = 0;
    for (std::size_t g = 0; g < c.total_hom_dim(); ++g) {
        const auto& mor = c.basis_morphism(g);
        const std::size_t a = from_obj(m.side(), mor), b = to_obj(m.side(), mor);
        const std::size_t h = n.dim(b) * m.dim(a);
        if (h == 0) continue;
        // N(g)·φ_a − φ_b·M(g) = 0, with φ stored row-major
        if (sizes[a] > 0) sys.add_block(r, off[a], kron(n.act(g), Mat::identity(f, m.dim(a))));
        if (sizes[b] > 0) sys.add_block(r, off[b], kron(Mat::identity(f, n.dim(b)), m.act(g).transpose()), minus);
        r += h;
    }
    Mat ker = la::kernel_basis(sys);
    std::vector<ModuleMap> out;
    for (std::size_t j = 0; j < ker.cols(); ++j) {
        ModuleMap phi;
        for (std::size_t x = 0; x < k; ++x) {
            Mat cx(f, n.dim(x), m.dim(x));
            for (std::size_t i = 0; i < sizes[x]; ++i)
                if (!ker.is_zero_at(off[x] + i, j)) cx.set(i / m.dim(x), i % m.dim(x), ker.get(off[x] + i, j));
            phi.comp.push_back(std::move(cx));
        }
        out.push_back(std::move(phi));
    }
    return out;
}

std::size_t hom_dim(const CatModule& m, const CatModule& n) { return module_hom(m, n).size(); }

TensorSpace tensor_over_cat(const CatModule& n, const CatModule& m)
{
    require_same(n, m, "tensor product");
    if (n.side() != Side::Right || m.side() != Side::Left)
        throw Error(ErrorCode::BaseMismatch, "tensor product needs a right module and a left module");
    const FiniteKCategory& c = *m.base();
    const FieldSpec& f = m.field();
    TensorSpace t;
    std::vector<std::size_t> sizes;
    for (std::size_t x = 0; x < c.size(); ++x) sizes.push_back(n.dim(x) * m.dim(x));
    t.offsets = prefix(sizes);
    const std::size_t ambient = t.offsets.back();
    std::vector<Mat> rel;
    const Scalar minus = from_int(f, -1);
    for (std::size_t g = 0; g < c.total_hom_dim(); ++g) {
        const auto& mor = c.basis_morphism(g);
        const std::size_t x = mor.src, y = mor.dst;
        const std::size_t w = n.dim(y) * m.dim(x);
        if (w == 0) continue;
        // (n·g) ⊗ m − n ⊗ (g·m) for n ∈ N(y), m ∈ M(x)
        Mat r(f, ambient, w);
        if (sizes[x] > 0) r.add_block(t.offsets[x], 0, kron(n.act(g), Mat::identity(f, m.dim(x))));
        if (sizes[y] > 0) r.add_block(t.offsets[y], 0, kron(Mat::identity(f, n.dim(y)), m.act(g)), minus);
        rel.push_back(std::move(r));
    }
    la::Quotient q = la::quotient(la::column_space(f, ambient, hstack(f, ambient, rel)));
    t.dim = q.dim();
    t.projection = std::move(q.projection);
    t.section = std::move(q.section);
    return t;
}

std::size_t FreeModule::block(std::size_t g, std::size_t y) const
{
    std::size_t s = 0;
    for (std::size_t i = 0; i < g; ++i) s += base->dim(gens[i], y);
    return s;
}

FreeModule free_module(const CatPtr& c, std::vector<std::size_t> gens)
{
    FreeModule p{c, std::move(gens), CatModule::zero(c, Side::Left)};
    if (!p.gens.empty()) {
        std::vector<CatModule> parts;
        for (auto x : p.gens) parts.push_back(representable(c, x, Side::Left));
        p.module = direct_sum(parts);
    }
    return p;
}

ModuleMap free_map(const FreeModule& p, const CatModule& m, const std::vector<Mat>& images)
{
    const FiniteKCategory& c = *p.base;
    ModuleMap f;
    for (std::size_t y = 0; y < c.size(); ++y) {
        Mat comp(m.field(), m.dim(y), p.module.dim(y));
        for (std::size_t g = 0; g < p.gens.size(); ++g) {
            const std::size_t x = p.gens[g], b = p.block(g, y);
            for (std::size_t k = 0; k < c.dim(x, y); ++k) comp.set_block(0, b + k, m.act(x, y, k) * images[g]);
        }
        f.comp.push_back(std::move(comp));
    }
    return f;
}

Resolution projective_resolution(const CatModule& m, std::size_t max_deg)
{
    if (m.side() != Side::Left) throw Error(ErrorCode::InvalidModule, "resolve the left module over the opposite category");
    const CatPtr& c = m.base();
    Resolution r;
    r.module = m;
    CatModule x = m;
    std::vector<Mat> span;
    for (std::size_t y = 0; y < c->size(); ++y) span.push_back(Mat::identity(m.field(), m.dim(y)));
    for (std::size_t k = 0; k <= max_deg; ++k) {
        Generators g = choose_generators(x, span);
        FreeModule p = free_module(c, g.objects);
        ModuleMap d = free_map(p, x, g.vectors);
        span = kernel_spans(d);
        if (k == 0) r.augmentation = d;
        else r.maps.push_back(d);
        r.images.push_back(std::move(g.vectors));
        x = p.module;
        r.terms.push_back(std::move(p));
    }
    return r;
}

ValidationReport verify_resolution(const Resolution& r)
{
    ValidationReport rep;
    const FiniteKCategory& c = *r.module.base();
    for (std::size_t y = 0; y < c.size(); ++y)
        if (la::rank(r.augmentation.comp[y]) != r.module.dim(y))
            rep.violations.push_back("augmentation is not onto at " + c.object(y));
    for (std::size_t k = 0; k < r.maps.size(); ++k) {
        const ModuleMap& prev = k == 0 ? r.augmentation : r.maps[k - 1];
        const CatModule& pk = r.terms[k].module;
        if (!is_module_map(r.terms[k + 1].module, pk, r.maps[k]))
            rep.violations.push_back("differential " + std::to_string(k + 1) + " is not a module map");
        for (std::size_t y = 0; y < c.size(); ++y) {
            if (!(prev.comp[y] * r.maps[k].comp[y]).is_zero())
                rep.violations.push_back("composite is nonzero at degree " + std::to_string(k) + ", object " + c.object(y));
            if (pk.dim(y) - la::rank(prev.comp[y]) != la::rank(r.maps[k].comp[y]))
                rep.violations.push_back("not exact at degree " + std::to_string(k) + ", object " + c.object(y));
        }
    }
    return rep;
}

CochainComplex hom_complex(const Resolution& r, const CatModule& n)
{
    CochainComplex cx{n.field(), {}, {}};
    std::vector<std::vector<std::size_t>> off;
    for (const auto& p : r.terms) {
        std::vector<std::size_t> d;
        for (auto x : p.gens) d.push_back(n.dim(x));
        off.push_back(prefix(d));
        cx.dims.push_back(off.back().back());
    }
    for (std::size_t k = 0; k + 1 < r.terms.size(); ++k) {
        const FreeModule& p = r.terms[k];
        const FreeModule& q = r.terms[k + 1];
        Mat d(n.field(), cx.dims[k + 1], cx.dims[k]);
        for (std::size_t h = 0; h < q.gens.size(); ++h) {
            const std::size_t xh = q.gens[h];
            for (std::size_t g = 0; g < p.gens.size(); ++g) {
                Mat v = summand(p, g, xh, r.images[k + 1][h]);
                if (v.is_zero() || n.dim(xh) * n.dim(p.gens[g]) == 0) continue;
                d.set_block(off[k + 1][h], off[k][g], n.act_vec(p.gens[g], xh, v));
            }
        }
        cx.diffs.push_back(std::move(d));
    }
    return cx;
}

std::vector<Mat> hom_complex_map(const Resolution& r, const CatModule& n, const CatModule& n2, const ModuleMap& f)
{
    (void)n;
    std::vector<Mat> out;
    for (const auto& p : r.terms) {
        std::vector<Mat> blocks;
        for (auto x : p.gens) blocks.push_back(f.comp[x]);
        if (blocks.empty()) out.emplace_back(n2.field(), 0, 0);
        else out.push_back(block_diag(n2.field(), blocks));
    }
    return out;
}

ChainComplex tensor_complex(const CatModule& right, const Resolution& r)
{
    ChainComplex cx{right.field(), {}, {}};
    std::vector<std::vector<std::size_t>> off;
    for (const auto& p : r.terms) {
        std::vector<std::size_t> d;
        for (auto x : p.gens) d.push_back(right.dim(x));
        off.push_back(prefix(d));
        cx.dims.push_back(off.back().back());
    }
    for (std::size_t k = 0; k + 1 < r.terms.size(); ++k) {
        const FreeModule& p = r.terms[k];
        const FreeModule& q = r.terms[k + 1];
        Mat d(right.field(), cx.dims[k], cx.dims[k + 1]);
        for (std::size_t h = 0; h < q.gens.size(); ++h) {
            const std::size_t xh = q.gens[h];
            for (std::size_t g = 0; g < p.gens.size(); ++g) {
                Mat v = summand(p, g, xh, r.images[k + 1][h]);
                if (v.is_zero() || right.dim(xh) * right.dim(p.gens[g]) == 0) continue;
                d.set_block(off[k][g], off[k + 1][h], right.act_vec(p.gens[g], xh, v));
            }
        }
        cx.diffs.push_back(std::move(d));
    }
    return cx;
}

std::vector<std::size_t> ext(const Resolution& r, const CatModule& n, std::size_t max_deg)
{
    if (r.length() < max_deg + 1) throw Error(ErrorCode::ResolutionTooShort, "Ext^" + std::to_string(max_deg) + " needs P_" +
                                                                                std::to_string(max_deg + 1));
    auto h = hom_complex(r, n).cohomology();
    h.resize(max_deg + 1);
    return h;
}

std::vector<std::size_t> ext(const CatModule& m, const CatModule& n, std::size_t max_deg)
{
    require_same(m, n, "Ext");
    if (m.side() != n.side()) throw Error(ErrorCode::BaseMismatch, "Ext between modules of different sides");
    if (m.side() == Side::Right) {
        CatPtr op = opposite(m.base());
        return ext(m.as_left(op), n.as_left(op), max_deg);
    }
    return ext(projective_resolution(m, max_deg + 1), n, max_deg);
}

std::vector<std::size_t> tor(const CatModule& n, const CatModule& m, std::size_t max_deg)
{
    require_same(n, m, "Tor");
    if (n.side() != Side::Right || m.side() != Side::Left)
        throw Error(ErrorCode::BaseMismatch, "Tor needs a right module and a left module");
    auto h = tensor_complex(n, projective_resolution(m, max_deg + 1)).homology();
    h.resize(max_deg + 1);
    return h;
}

bool is_projective(const CatModule& m0)
{
    const CatModule m = m0.side() == Side::Left ? m0 : to_left(m0);
    if (m.is_zero()) return true;
    const FiniteKCategory& c = *m.base();
    const FieldSpec& f = m.field();
    std::vector<Mat> all;
    for (std::size_t y = 0; y < c.size(); ++y) all.push_back(Mat::identity(f, m.dim(y)));
    Generators g = choose_generators(m, all);
    FreeModule p = free_module(m.base(), g.objects);
    ModuleMap eps = free_map(p, m, g.vectors);
    // unknown section s: M -> P with eps∘s = id, stored row-major per object
    const CatModule& pm = p.module;
    std::vector<std::size_t> sizes;
    for (std::size_t x = 0; x < c.size(); ++x) sizes.push_back(pm.dim(x) * m.dim(x));
    const auto off = prefix(sizes);
    std::size_t rows = 0;
    for (std::size_t gl = 0; gl < c.total_hom_dim(); ++gl) {
        const auto& mor = c.basis_morphism(gl);
        rows += pm.dim(mor.dst) * m.dim(mor.src);
    }
    for (std::size_t x = 0; x < c.size(); ++x) rows += m.dim(x) * m.dim(x);
    Mat a(f, rows, off.back());
    Mat b(f, rows, 1);
    const Scalar minus = from_int(f, -1);
    std::size_t r = 0;
    for (std::size_t gl = 0; gl < c.total_hom_dim(); ++gl) {
        const auto& mor = c.basis_morphism(gl);
        const std::size_t x = mor.src, y = mor.dst, h = pm.dim(y) * m.dim(x);
        if (h == 0) continue;
        if (sizes[x] > 0) a.add_block(r, off[x], kron(pm.act(gl), Mat::identity(f, m.dim(x))));
        if (sizes[y] > 0) a.add_block(r, off[y], kron(Mat::identity(f, pm.dim(y)), m.act(gl).transpose()), minus);
        r += h;
    }
    for (std::size_t x = 0; x < c.size(); ++x) {
        const std::size_t d = m.dim(x);
        if (d == 0) continue;
        a.set_block(r, off[x], kron(eps.comp[x], Mat::identity(f, d)));
        for (std::size_t i = 0; i < d; ++i) b.set(r + i * d + i, 0, one(f));
        r += d * d;
    }
    return la::solve(a, b).has_value();
}

CatModule to_left(const CatModule& m)
{
    if (m.side() == Side::Left) return m;
    return m.as_left(opposite(m.base()));
}

CatModule to_right(const CatModule& m, const CatPtr& c)
{
    if (m.side() != Side::Left || m.base()->size() != c->size() || m.base()->total_hom_dim() != c->total_hom_dim())
        throw Error(ErrorCode::BaseMismatch, "expected a left module over the opposite category");
    const FiniteKCategory& op = *m.base();
    std::vector<Mat> act(c->total_hom_dim());
    for (std::size_t g = 0; g < op.total_hom_dim(); ++g) {
        const auto& mor = op.basis_morphism(g);
        act[c->hom_offset(mor.dst, mor.src) + mor.index] = m.act(g);
    }
    return CatModule::trusted(c, Side::Right, m.dims(), std::move(act));
}

CatModule rebase(const CatModule& m, const CatPtr& base)
{
    const FiniteKCategory& c = *m.base();
    bool ok = base->size() == c.size() && base->total_hom_dim() == c.total_hom_dim();
    for (std::size_t x = 0; ok && x < c.size(); ++x)
        for (std::size_t y = 0; ok && y < c.size(); ++y) ok = base->dim(x, y) == c.dim(x, y);
    if (!ok) throw Error(ErrorCode::BaseMismatch, "rebase onto a category with another Hom layout");
    return CatModule::trusted(base, m.side(), m.dims(), m.actions());
}

CatModule slice_first(const CatModule& m, const CatPtr& a, const CatPtr& b, std::size_t at_b)
{
    const std::size_t nb = b->size();
    const FieldSpec& f = m.field();
    std::vector<std::size_t> dims;
    for (std::size_t x = 0; x < a->size(); ++x) dims.push_back(m.dim(x * nb + at_b));
    std::vector<Mat> act;
    for (std::size_t g = 0; g < a->total_hom_dim(); ++g) {
        const auto& mor = a->basis_morphism(g);
        Mat coeff = kron(Mat::unit(f, a->dim(mor.src, mor.dst), mor.index), b->identity(at_b));
        act.push_back(m.act_vec(mor.src * nb + at_b, mor.dst * nb + at_b, coeff));
    }
    return CatModule::trusted(a, Side::Left, std::move(dims), std::move(act));
}

CatModule slice_second(const CatModule& m, const CatPtr& a, const CatPtr& b, std::size_t at_a)
{
    const std::size_t nb = b->size();
    const FieldSpec& f = m.field();
    std::vector<std::size_t> dims;
    for (std::size_t y = 0; y < nb; ++y) dims.push_back(m.dim(at_a * nb + y));
    std::vector<Mat> act;
    for (std::size_t g = 0; g < b->total_hom_dim(); ++g) {
        const auto& mor = b->basis_morphism(g);
        Mat coeff = kron(a->identity(at_a), Mat::unit(f, b->dim(mor.src, mor.dst), mor.index));
        act.push_back(m.act_vec(at_a * nb + mor.src, at_a * nb + mor.dst, coeff));
    }
    return CatModule::trusted(b, Side::Left, std::move(dims), std::move(act));
}

CatModule boxtimes(const CatModule& f, const CatModule& g, const CatPtr& a, const CatPtr& c, const CatPtr& c_op,
                   const CatPtr& b, const CatPtr& target)
{
    const std::size_t na = a->size(), nc = c->size(), nb = b->size();
    if (f.side() != Side::Left || g.side() != Side::Left || f.base()->size() != na * nc ||
        g.base()->size() != nc * nb || target->size() != na * nb || c_op->size() != nc)
        throw Error(ErrorCode::BaseMismatch, "boxtimes needs F over A⊗C and G over C^op⊗B");
    const FieldSpec& field = f.field();
    // values (a,b) = G(−,b) ⊗_C F(a,−)
    std::vector<CatModule> fs, gs;
    for (std::size_t x = 0; x < na; ++x) fs.push_back(slice_second(f, a, c, x));
    for (std::size_t y = 0; y < nb; ++y) gs.push_back(to_right(slice_first(g, c_op, b, y), c));
    std::vector<TensorSpace> ts(na * nb);
    std::vector<std::size_t> dims(na * nb);
    for (std::size_t x = 0; x < na; ++x)
        for (std::size_t y = 0; y < nb; ++y) {
            ts[x * nb + y] = tensor_over_cat(gs[y], fs[x]);
            dims[x * nb + y] = ts[x * nb + y].dim;
        }
    std::vector<Mat> act;
    act.reserve(target->total_hom_dim());
    for (std::size_t gl = 0; gl < target->total_hom_dim(); ++gl) {
        const auto& mor = target->basis_morphism(gl);
        const std::size_t x = mor.src / nb, y = mor.src % nb, x2 = mor.dst / nb, y2 = mor.dst % nb;
        const std::size_t db = b->dim(y, y2);
        const std::size_t i = mor.index / db, j = mor.index % db;
        const TensorSpace& s = ts[x * nb + y];
        const TensorSpace& t = ts[x2 * nb + y2];
        Mat whole(field, t.offsets.back(), s.offsets.back());
        for (std::size_t z = 0; z < nc; ++z) {
            const std::size_t w = gs[y].dim(z) * fs[x].dim(z);
            const std::size_t w2 = gs[y2].dim(z) * fs[x2].dim(z);
            if (w == 0 || w2 == 0) continue;
            Mat fa = f.act_vec(x * nc + z, x2 * nc + z, kron(Mat::unit(field, a->dim(x, x2), i), c->identity(z)));
            Mat ga = g.act_vec(z * nb + y, z * nb + y2, kron(c_op->identity(z), Mat::unit(field, db, j)));
            whole.set_block(t.offsets[z], s.offsets[z], kron(ga, fa));
        }
        act.push_back(t.projection * whole * s.section);
    }
    return CatModule::trusted(target, Side::Left, std::move(dims), std::move(act));
}

CatModule boxtimes(const CatModule& f, const CatModule& g, const CatPtr& c_op, const CatPtr& b)
{
    if (f.side() != Side::Left) throw Error(ErrorCode::BaseMismatch, "boxtimes needs a left module F");
    const CatPtr& c = f.base();
    CatPtr k = catalog::point(c->field());
    CatPtr kc = tensor_category(k, c);
    CatPtr kb = tensor_category(k, b);
    CatModule out = boxtimes(rebase(f, kc), g, k, c, c_op, b, kb);
    return rebase(out, b);
}

CatModule simple_module(const CatPtr& c, std::size_t x, Side side)
{
    if (x >= c->size()) throw Error(ErrorCode::UnknownObject, "simple module at object index " + std::to_string(x));
    if (side == Side::Right) return to_right(simple_module(opposite(c), x, Side::Left), c);
    const FieldSpec& f = c->field();
    const std::size_t d = c->dim(x, x);
    const std::string where = "End(" + c->object(x) + ")";
    if (d == 0) throw Error(ErrorCode::NotLocal, where + " is zero");
    // radical of End(x) as the kernel of the trace form tr(L_a L_b)
    std::vector<Mat> left;
    for (std::size_t i = 0; i < d; ++i) left.push_back(c->postcompose_matrix(x, x, x, Mat::unit(f, d, i)));
    Mat form(f, d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            Mat p = left[i] * left[j];
            Scalar t = zero(f);
            for (std::size_t k = 0; k < d; ++k) t = add(f, t, p.get(k, k));
            form.set(i, j, t);
        }
    Mat rad = la::kernel_basis(form);
    if (rad.cols() + 1 != d) throw Error(ErrorCode::NotLocal, where + " has a radical of codimension " + std::to_string(d - rad.cols()));
    // nilpotent two-sided ideal
    for (std::size_t i = 0; i < d; ++i) {
        Mat e = Mat::unit(f, d, i);
        Mat both = hstack(c->postcompose_matrix(x, x, x, e) * rad, c->precompose_matrix(x, x, x, e) * rad);
        if (la::rank(hstack(rad, both)) != rad.cols()) throw Error(ErrorCode::NotLocal, where + ": trace radical is not an ideal");
    }
    Mat power = rad;
    for (std::size_t step = 0; step <= d && power.cols() > 0; ++step) {
        std::vector<Mat> prods;
        for (std::size_t j = 0; j < rad.cols(); ++j) prods.push_back(c->postcompose_matrix(x, x, x, rad.column(j)) * power);
        power = la::column_space(f, d, hstack(f, d, prods)).basis;
    }
    if (power.cols() > 0) throw Error(ErrorCode::NotLocal, where + ": trace radical is not nilpotent");
    Mat chi = la::kernel_basis(rad.transpose()).transpose();  // 1 x d
    Mat at_id = chi * c->identity(x);
    if (at_id.is_zero()) throw Error(ErrorCode::NotLocal, where + ": identity lies in the radical");
    chi = chi.scaled(inv(f, at_id.get(0, 0)));
    // rad C(x,y) = {h : χ(g∘h) = 0 for all g: y -> x}
    std::vector<Mat> spans;
    for (std::size_t y = 0; y < c->size(); ++y) {
        const std::size_t dxy = c->dim(x, y), dyx = c->dim(y, x);
        Mat eqs(f, dyx, dxy);
        for (std::size_t k = 0; k < dyx; ++k) eqs.set_block(k, 0, chi * c->postcompose_matrix(x, y, x, Mat::unit(f, dyx, k)));
        spans.push_back(la::kernel_basis(eqs));
    }
    return quotient_module(representable(c, x, Side::Left), spans).module;
}

CatModule ideal_quotient_module(const TwoSidedIdeal& i, std::size_t x, Side side)
{
    const CatPtr& c = i.parent();
    if (x >= c->size()) throw Error(ErrorCode::UnknownObject, "object index " + std::to_string(x));
    std::vector<Mat> spans;
    for (std::size_t y = 0; y < c->size(); ++y) spans.push_back(side == Side::Left ? i.span(x, y) : i.span(y, x));
    return quotient_module(representable(c, x, side), spans).module;
}

BigExtTable big_ext_functor(const TwoSidedIdeal& i, const CatModule& m, std::size_t max_deg)
{
    ValidationReport rep = validate(i);
    if (!rep.ok()) throw Error(ErrorCode::InvalidIdeal, rep.violations.front());
    if (!same_category(i.parent(), m.base()) || m.side() != Side::Left)
        throw Error(ErrorCode::BaseMismatch, "EXT table needs a left module over the ideal's category");
    BigExtTable t;
    for (std::size_t x = 0; x < m.base()->size(); ++x) {
        t.ext.push_back(ext(ideal_quotient_module(i, x, Side::Left), m, max_deg));
        t.tor.push_back(tor(ideal_quotient_module(i, x, Side::Right), m, max_deg));
    }
    return t;
}

CatModule random_module(const CatPtr& c, std::uint64_t seed, Side side, std::size_t max_gens)
{
    if (side == Side::Right) return to_right(random_module(opposite(c), seed, Side::Left, max_gens), c);
    std::mt19937_64 rng(seed);
    const FieldSpec& f = c->field();
    std::vector<std::size_t> gens;
    for (std::size_t k = 1 + rng() % max_gens; k > 0; --k) gens.push_back(rng() % c->size());
    FreeModule p = free_module(c, gens);
    std::vector<Mat> rel;
    for (std::size_t y = 0; y < c->size(); ++y) rel.emplace_back(f, p.module.dim(y), 0);
    for (std::size_t k = rng() % 3; k > 0; --k) {
        const std::size_t y = rng() % c->size();
        Mat v(f, p.module.dim(y), 1);
        for (std::size_t r = 0; r < v.rows(); ++r) v.set(r, 0, random_entry(f, rng));
        rel[y] = hstack(rel[y], v);
    }
    return quotient_module(p.module, generated_span(p.module, rel)).module;
}

CatModule random_projective(const CatPtr& c, std::uint64_t seed, Side side, std::size_t max_gens)
{
    std::mt19937_64 rng(seed);
    std::vector<CatModule> parts;
    for (std::size_t k = 1 + rng() % max_gens; k > 0; --k) parts.push_back(representable(c, rng() % c->size(), side));
    return direct_sum(parts);
}

}  // namespace hm
