#include "hm/hochschild.hpp"

#include <map>

#include "hm/error.hpp"
#include "hm/linalg.hpp"

namespace hm {

namespace {

using Row = std::vector<std::pair<std::size_t, Scalar>>;

struct Sparse {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<Row> r;
};

// All tuples of a fixed length, lexicographic with p1 most significant.
struct Level {
    std::size_t len = 0;
    std::size_t k = 0;
    std::vector<std::size_t> inner;   // Π dim C(p_i, p_i+1)
    std::vector<std::size_t> xd;      // dim X(p1, p_len)
    std::vector<std::size_t> offset;  // prefix sums of inner*xd

    std::size_t count() const { return inner.size(); }
    std::size_t total() const { return offset.back(); }
    std::size_t size(std::size_t t) const { return inner[t] * xd[t]; }
};

std::vector<std::size_t> decode(std::size_t idx, std::size_t len, std::size_t k)
{
    std::vector<std::size_t> p(len);
    for (std::size_t i = len; i-- > 0;) {
        p[i] = idx % k;
        idx /= k;
    }
    return p;
}

std::size_t encode(const std::vector<std::size_t>& p, std::size_t k)
{
    std::size_t idx = 0;
    for (auto v : p) idx = idx * k + v;
    return idx;
}

std::size_t mixed(const std::vector<std::size_t>& digits, const std::vector<std::size_t>& radix)
{
    std::size_t idx = 0;
    for (std::size_t i = 0; i < digits.size(); ++i) idx = idx * radix[i] + digits[i];
    return idx;
}

std::size_t ipow(std::size_t b, std::size_t e)
{
    std::size_t r = 1;
    while (e-- > 0) r *= b;
    return r;
}

// X(a,b) for the coefficient bimodule; a null coefficient means "count only".
Level make_level(const FiniteKCategory& c, const CatModule* x, std::size_t len)
{
    Level l;
    l.len = len;
    l.k = c.size();
    const std::size_t count = ipow(l.k, len);
    l.offset.push_back(0);
    for (std::size_t t = 0; t < count; ++t) {
        auto p = decode(t, len, l.k);
        std::size_t v = 1;
        for (std::size_t i = 0; i + 1 < len; ++i) v *= c.dim(p[i], p[i + 1]);
        l.inner.push_back(v);
        l.xd.push_back(x ? x->dim(p.front() * l.k + p.back()) : 1);
        l.offset.push_back(l.offset.back() + v * l.xd.back());
    }
    return l;
}

void accumulate(const FieldSpec& f, std::map<std::size_t, Scalar>& row, std::size_t col, const Scalar& v)
{
    if (v.is_zero()) return;
    auto it = row.find(col);
    if (it == row.end()) row.emplace(col, v);
    else it->second = add(f, it->second, v);
}

void add_dense(const FieldSpec& f, std::vector<std::map<std::size_t, Scalar>>& acc, std::size_t r0, std::size_t c0,
               const Mat& m, const Scalar& sign)
{
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (!m.is_zero_at(i, j)) accumulate(f, acc[r0 + i], c0 + j, mul(f, sign, m.get(i, j)));
}

// Rows of δ^n: C^n -> C^{n+1} belonging to the target tuple t.
void fill_rows(const FiniteKCategory& c, const CatModule& x, const Level& src, const Level& dst, std::size_t n, std::size_t t,
               std::vector<Row>& out)
{
    const FieldSpec& f = c.field();
    const std::size_t k = c.size();
    if (dst.size(t) == 0) return;
    const auto q = decode(t, n + 2, k);
    std::vector<std::size_t> d(n + 1);
    for (std::size_t i = 0; i <= n; ++i) d[i] = c.dim(q[i], q[i + 1]);
    const std::size_t vq = dst.inner[t], xq = dst.xd[t];
    const Scalar plus = one(f), minus = from_int(f, -1);
    auto sign = [&](std::size_t i) { return i % 2 == 0 ? plus : minus; };

    // face 0: right action of a1; face n+1: left action of a_{n+1}
    std::vector<std::size_t> s0(q.begin() + 1, q.end());
    std::vector<std::size_t> sl(q.begin(), q.end() - 1);
    const std::size_t i0 = encode(s0, k), il = encode(sl, k);
    std::vector<Mat> right, left;
    if (src.size(i0) > 0)
        for (std::size_t b = 0; b < d[0]; ++b)
            right.push_back(x.act_vec(q[1] * k + q[n + 1], q[0] * k + q[n + 1], kron(Mat::unit(f, d[0], b), c.identity(q[n + 1]))));
    if (src.size(il) > 0)
        for (std::size_t b = 0; b < d[n]; ++b)
            left.push_back(x.act_vec(q[0] * k + q[n], q[0] * k + q[n + 1], kron(c.identity(q[0]), Mat::unit(f, d[n], b))));

    std::vector<std::map<std::size_t, Scalar>> acc(vq * xq);
    std::vector<std::size_t> b(n + 1);
    for (std::size_t j = 0; j < vq; ++j) {
        for (std::size_t i = n + 1, rem = j; i-- > 0;) {
            b[i] = rem % d[i];
            rem /= d[i];
        }
        if (!right.empty()) {
            std::vector<std::size_t> digits(b.begin() + 1, b.end()), radix(d.begin() + 1, d.end());
            const std::size_t col = src.offset[i0] + mixed(digits, radix) * src.xd[i0];
            add_dense(f, acc, j * xq, col, right[b[0]], plus);
        }
        for (std::size_t i = 1; i <= n; ++i) {
            // compose b[i-1]: q[i-1] -> q[i] with b[i]: q[i] -> q[i+1]
            std::vector<std::size_t> s = q;
            s.erase(s.begin() + static_cast<long>(i));
            const std::size_t is = encode(s, k);
            if (src.size(is) == 0) continue;
            const Mat& comp = c.comp(q[i - 1], q[i], q[i + 1]);
            const std::size_t dm = c.dim(q[i - 1], q[i + 1]);
            std::vector<std::size_t> digits, radix;
            for (std::size_t a = 0; a + 1 < i; ++a) {
                digits.push_back(b[a]);
                radix.push_back(d[a]);
            }
            const std::size_t mid = digits.size();
            digits.push_back(0);
            radix.push_back(dm);
            for (std::size_t a = i + 1; a <= n; ++a) {
                digits.push_back(b[a]);
                radix.push_back(d[a]);
            }
            const std::size_t column = b[i] * d[i - 1] + b[i - 1];
            for (std::size_t m = 0; m < dm; ++m) {
                if (comp.is_zero_at(m, column)) continue;
                digits[mid] = m;
                const Scalar coeff = mul(f, sign(i), comp.get(m, column));
                const std::size_t col = src.offset[is] + mixed(digits, radix) * xq;
                for (std::size_t r = 0; r < xq; ++r) accumulate(f, acc[j * xq + r], col + r, coeff);
            }
        }
        if (!left.empty()) {
            std::vector<std::size_t> digits(b.begin(), b.end() - 1), radix(d.begin(), d.end() - 1);
            const std::size_t col = src.offset[il] + mixed(digits, radix) * src.xd[il];
            add_dense(f, acc, j * xq, col, left[b[n]], sign(n + 1));
        }
    }
    for (std::size_t r = 0; r < acc.size(); ++r) {
        Row& row = out[dst.offset[t] + r];
        for (auto& [col, v] : acc[r])
            if (!v.is_zero()) row.emplace_back(col, v);
    }
}

Sparse differential(const FiniteKCategory& c, const CatModule& x, const Level& src, const Level& dst, std::size_t n, Exec exec)
{
    Sparse s{dst.total(), src.total(), std::vector<Row>(dst.total())};
    const long count = static_cast<long>(dst.count());
#pragma omp parallel for schedule(dynamic) if (exec == Exec::Parallel)
    for (long t = 0; t < count; ++t) fill_rows(c, x, src, dst, n, static_cast<std::size_t>(t), s.r);
    return s;
}

Mat dense(const FieldSpec& f, const Sparse& s)
{
    Mat m(f, s.rows, s.cols);
    for (std::size_t i = 0; i < s.rows; ++i)
        for (const auto& [j, v] : s.r[i]) m.set(i, j, v);
    return m;
}

// True when b∘a = 0 for a: U -> V, b: V -> W.
bool product_vanishes(const FieldSpec& f, const Sparse& b, const Sparse& a)
{
    for (const auto& row : b.r) {
        std::map<std::size_t, Scalar> acc;
        for (const auto& [mid, v] : row)
            for (const auto& [col, w] : a.r[mid]) accumulate(f, acc, col, mul(f, v, w));
        for (const auto& [col, v] : acc)
            if (!v.is_zero()) return false;
    }
    return true;
}

void check_coefficient(const FiniteKCategory& c, const CatModule& x)
{
    const std::size_t k = c.size();
    const FiniteKCategory& e = *x.base();
    bool ok = x.side() == Side::Left && e.size() == k * k && x.field() == c.field();
    for (std::size_t a = 0; ok && a < k * k; ++a)
        for (std::size_t b = 0; ok && b < k * k; ++b) ok = e.dim(a, b) == c.dim(b / k, a / k) * c.dim(a % k, b % k);
    if (!ok) throw Error(ErrorCode::InvalidCoefficient, "coefficient is not a left module over the enveloping category");
}

}  // namespace

std::vector<BarTerm> bar_dims(const CatPtr& c, std::size_t max_deg)
{
    const std::size_t k = c->size();
    std::vector<std::size_t> into(k, 0), out(k, 0);
    for (std::size_t p = 0; p < k; ++p)
        for (std::size_t y = 0; y < k; ++y) {
            into[p] += c->dim(y, p);
            out[p] += c->dim(p, y);
        }
    std::vector<BarTerm> terms;
    for (std::size_t n = 0; n <= max_deg; ++n) {
        Level l = make_level(*c, nullptr, n + 1);
        BarTerm t{n, 0, 0, 0};
        for (std::size_t i = 0; i < l.count(); ++i) {
            if (l.inner[i] == 0) continue;
            auto p = decode(i, n + 1, k);
            ++t.tuples;
            t.inner_dim += l.inner[i];
            t.bimodule_dim += l.inner[i] * into[p.front()] * out[p.back()];
        }
        terms.push_back(t);
    }
    return terms;
}

CochainComplex hochschild_cochain_complex(const CatPtr& c, const CatModule& coeff, std::size_t max_deg, Exec exec)
{
    check_coefficient(*c, coeff);
    CochainComplex cx{c->field(), {}, {}};
    std::vector<Level> levels;
    for (std::size_t n = 0; n <= max_deg + 1; ++n) {
        levels.push_back(make_level(*c, &coeff, n + 1));
        cx.dims.push_back(levels.back().total());
    }
    for (std::size_t n = 0; n <= max_deg; ++n)
        cx.diffs.push_back(dense(c->field(), differential(*c, coeff, levels[n], levels[n + 1], n, exec)));
    return cx;
}

long hochschild_square_check(const CatPtr& c, const CatModule& coeff, std::size_t top)
{
    check_coefficient(*c, coeff);
    std::vector<Level> levels;
    for (std::size_t n = 0; n <= top + 1; ++n) levels.push_back(make_level(*c, &coeff, n + 1));
    Sparse prev = differential(*c, coeff, levels[0], levels[1], 0, Exec::Parallel);
    for (std::size_t n = 1; n <= top; ++n) {
        Sparse next = differential(*c, coeff, levels[n], levels[n + 1], n, Exec::Parallel);
        if (!product_vanishes(c->field(), next, prev)) return static_cast<long>(n - 1);
        prev = std::move(next);
    }
    return -1;
}

std::vector<std::size_t> hochschild_cohomology(const CatPtr& c, std::size_t max_deg, Exec exec)
{
    CatPtr ce = enveloping(c);
    return hochschild_cochain_complex(c, regular_bimodule(c, ce), max_deg, exec).cohomology(exec);
}

Center center(const CatPtr& c)
{
    const FieldSpec& f = c->field();
    const std::size_t k = c->size();
    std::vector<std::size_t> off(k + 1, 0);
    for (std::size_t x = 0; x < k; ++x) off[x + 1] = off[x] + c->dim(x, x);
    std::size_t rows = 0;
    for (std::size_t g = 0; g < c->total_hom_dim(); ++g) {
        const auto& m = c->basis_morphism(g);
        rows += c->dim(m.src, m.dst);
    }
    Mat sys(f, rows, off[k]);
    const Scalar minus = from_int(f, -1);
    std::size_t r = 0;
    for (std::size_t g = 0; g < c->total_hom_dim(); ++g) {
        const auto& m = c->basis_morphism(g);
        const std::size_t x = m.src, y = m.dst, h = c->dim(x, y);
        Mat e = c->basis_vector(g);
        // f∘z_x − z_y∘f = 0
        if (c->dim(x, x) > 0) sys.add_block(r, off[x], c->postcompose_matrix(x, x, y, e));
        if (c->dim(y, y) > 0) sys.add_block(r, off[y], c->precompose_matrix(x, y, y, e), minus);
        r += h;
    }
    Center z;
    z.basis = la::kernel_basis(sys);
    z.dim = z.basis.cols();
    return z;
}

Resolution bar_resolution(const CatPtr& c, const CatPtr& ce, std::size_t max_deg)
{
    const FiniteKCategory& cc = *c;
    const FieldSpec& f = cc.field();
    const std::size_t k = cc.size();
    Resolution r;
    r.module = regular_bimodule(c, ce);
    std::vector<Level> levels;
    // generator index of (tuple, j) inside S_n
    std::vector<std::vector<std::size_t>> first;
    for (std::size_t n = 0; n <= max_deg; ++n) {
        levels.push_back(make_level(cc, nullptr, n + 1));
        const Level& l = levels.back();
        std::vector<std::size_t> gens, start;
        for (std::size_t t = 0; t < l.count(); ++t) {
            start.push_back(gens.size());
            auto p = decode(t, n + 1, k);
            for (std::size_t j = 0; j < l.inner[t]; ++j) gens.push_back(p.front() * k + p.back());
        }
        first.push_back(std::move(start));
        r.terms.push_back(free_module(ce, std::move(gens)));
    }
    const Scalar minus = from_int(f, -1);
    for (std::size_t n = 0; n <= max_deg; ++n) {
        const Level& l = levels[n];
        std::vector<Mat> images;
        for (std::size_t t = 0; t < l.count(); ++t) {
            const auto p = decode(t, n + 1, k);
            if (n == 0) {
                if (l.inner[t] > 0) images.push_back(cc.identity(p[0]));
                continue;
            }
            std::vector<std::size_t> d(n);
            for (std::size_t i = 0; i < n; ++i) d[i] = cc.dim(p[i], p[i + 1]);
            const FreeModule& below = r.terms[n - 1];
            const std::size_t obj = p.front() * k + p.back();
            auto put = [&](std::size_t tuple, std::size_t j, const Mat& coeff, const Scalar& s, Mat& v) {
                const std::size_t g = first[n - 1][tuple] + j;
                v.add_block(below.block(g, obj), 0, coeff, s);
            };
            std::vector<std::size_t> b(n);
            for (std::size_t j = 0; j < l.inner[t]; ++j) {
                for (std::size_t i = n, rem = j; i-- > 0;) {
                    b[i] = rem % d[i];
                    rem /= d[i];
                }
                Mat v(f, below.module.dim(obj), 1);
                const Mat both = kron(cc.identity(p.front()), cc.identity(p.back()));
                {
                    std::vector<std::size_t> s(p.begin() + 1, p.end());
                    std::vector<std::size_t> digits(b.begin() + 1, b.end()), radix(d.begin() + 1, d.end());
                    put(encode(s, k), mixed(digits, radix), kron(Mat::unit(f, d[0], b[0]), cc.identity(p.back())), one(f), v);
                }
                for (std::size_t i = 1; i < n; ++i) {
                    std::vector<std::size_t> s = p;
                    s.erase(s.begin() + static_cast<long>(i));
                    const Mat& comp = cc.comp(p[i - 1], p[i], p[i + 1]);
                    const std::size_t dm = cc.dim(p[i - 1], p[i + 1]);
                    const std::size_t column = b[i] * d[i - 1] + b[i - 1];
                    std::vector<std::size_t> digits, radix;
                    for (std::size_t a = 0; a + 1 < i; ++a) {
                        digits.push_back(b[a]);
                        radix.push_back(d[a]);
                    }
                    const std::size_t mid = digits.size();
                    digits.push_back(0);
                    radix.push_back(dm);
                    for (std::size_t a = i + 1; a < n; ++a) {
                        digits.push_back(b[a]);
                        radix.push_back(d[a]);
                    }
                    for (std::size_t m = 0; m < dm; ++m) {
                        if (comp.is_zero_at(m, column)) continue;
                        digits[mid] = m;
                        Scalar s_i = i % 2 == 0 ? comp.get(m, column) : neg(f, comp.get(m, column));
                        put(encode(s, k), mixed(digits, radix), both, s_i, v);
                    }
                }
                {
                    std::vector<std::size_t> s(p.begin(), p.end() - 1);
                    std::vector<std::size_t> digits(b.begin(), b.end() - 1), radix(d.begin(), d.end() - 1);
                    put(encode(s, k), mixed(digits, radix), kron(cc.identity(p.front()), Mat::unit(f, d[n - 1], b[n - 1])),
                        n % 2 == 0 ? one(f) : minus, v);
                }
                images.push_back(std::move(v));
            }
        }
        if (n == 0) r.augmentation = free_map(r.terms[0], r.module, images);
        else r.maps.push_back(free_map(r.terms[n], r.terms[n - 1].module, images));
        r.images.push_back(std::move(images));
    }
    return r;
}

}  // namespace hm
