#include "hm/linalg.hpp"

#include <utility>

#include "hm/error.hpp"

namespace hm::la {

namespace {

// Row operations are only worth spreading over threads for bigger matrices.
constexpr std::size_t kParallelWork = 4096;

struct ZpResult {
    std::vector<std::uint32_t> data;
    std::vector<std::size_t> pivots;
};

// Gauss-Jordan over GF(p). With `reduce_above` false only rows below the
// pivot are cleared, which is enough for the rank.
ZpResult eliminate_zp(const Mat& m, bool reduce_above, Exec exec)
{
    const std::uint64_t p = m.field().characteristic;
    const std::size_t rows = m.rows(), cols = m.cols();
    ZpResult res{std::vector<std::uint32_t>(m.residues().begin(), m.residues().end()), {}};
    auto& a = res.data;
    const bool par = exec == Exec::Parallel && rows * cols >= kParallelWork;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && a[piv * cols + c] == 0) ++piv;
        if (piv == rows) continue;
        if (piv != r)
            for (std::size_t j = 0; j < cols; ++j) std::swap(a[piv * cols + j], a[r * cols + j]);
        const std::uint64_t inv = inv_mod(a[r * cols + c], static_cast<std::uint32_t>(p));
        for (std::size_t j = c; j < cols; ++j) a[r * cols + j] = static_cast<std::uint32_t>(a[r * cols + j] * inv % p);
        const std::size_t first = reduce_above ? 0 : r + 1;
#pragma omp parallel for schedule(static) if (par)
        for (std::size_t i = first; i < rows; ++i) {
            if (i == r) continue;
            const std::uint64_t f = a[i * cols + c];
            if (f == 0) continue;
            const std::uint64_t nf = p - f;
            for (std::size_t j = c; j < cols; ++j) {
                const std::uint32_t pr = a[r * cols + j];
                if (pr) a[i * cols + j] = static_cast<std::uint32_t>((a[i * cols + j] + nf * pr) % p);
            }
        }
        res.pivots.push_back(c);
        ++r;
    }
    return res;
}

struct BareissResult {
    std::vector<mpz_class> data;
    std::vector<std::size_t> pivots;
};

// Fraction-free forward elimination on rows scaled to integers. Each entry
// below the processed pivots is a minor of the scaled input, so the divisions
// by the previous pivot are exact.
BareissResult bareiss(const Mat& m, Exec exec)
{
    const std::size_t rows = m.rows(), cols = m.cols();
    BareissResult res{std::vector<mpz_class>(rows * cols), {}};
    auto& a = res.data;
    auto q = m.rationals();
    for (std::size_t i = 0; i < rows; ++i) {
        mpz_class l = 1;
        for (std::size_t j = 0; j < cols; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q[i * cols + j].get_den_mpz_t());
        for (std::size_t j = 0; j < cols; ++j) {
            const mpq_class& v = q[i * cols + j];
            a[i * cols + j] = v.get_num() * (l / v.get_den());
        }
    }
    const bool par = exec == Exec::Parallel && rows * cols >= kParallelWork / 8;
    mpz_class prev = 1;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && a[piv * cols + c] == 0) ++piv;
        if (piv == rows) continue;
        if (piv != r)
            for (std::size_t j = 0; j < cols; ++j) std::swap(a[piv * cols + j], a[r * cols + j]);
        const mpz_class pv = a[r * cols + c];
#pragma omp parallel for schedule(dynamic) if (par)
        for (std::size_t i = r + 1; i < rows; ++i) {
            const mpz_class f = a[i * cols + c];
            mpz_class t;
            for (std::size_t j = c + 1; j < cols; ++j) {
                t = pv * a[i * cols + j];
                if (f != 0) t -= f * a[r * cols + j];
                mpz_divexact(a[i * cols + j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            a[i * cols + c] = 0;
        }
        prev = pv;
        res.pivots.push_back(c);
        ++r;
    }
    return res;
}

Echelon rref_rational(const Mat& m, Exec exec)
{
    const std::size_t cols = m.cols();
    BareissResult b = bareiss(m, exec);
    const std::size_t rk = b.pivots.size();
    Echelon e{Mat(m.field(), rk, cols), b.pivots};
    auto out = e.rref.rationals();
    for (std::size_t i = 0; i < rk; ++i) {
        const mpz_class& pv = b.data[i * cols + b.pivots[i]];
        for (std::size_t j = 0; j < cols; ++j) {
            out[i * cols + j] = mpq_class(b.data[i * cols + j], pv);
            out[i * cols + j].canonicalize();
        }
    }
    const bool par = exec == Exec::Parallel && rk * cols >= kParallelWork / 8;
    for (std::size_t r = rk; r-- > 0;) {
        const std::size_t c = e.pivots[r];
#pragma omp parallel for schedule(dynamic) if (par)
        for (std::size_t i = 0; i < r; ++i) {
            const mpq_class f = out[i * cols + c];
            if (f == 0) continue;
            for (std::size_t j = c; j < cols; ++j)
                if (out[r * cols + j] != 0) out[i * cols + j] -= f * out[r * cols + j];
        }
    }
    return e;
}

}  // namespace

Echelon rref(const Mat& m, Exec exec)
{
    if (!m.field().is_prime_field()) return rref_rational(m, exec);
    ZpResult z = eliminate_zp(m, true, exec);
    const std::size_t rk = z.pivots.size(), cols = m.cols();
    Echelon e{Mat(m.field(), rk, cols), std::move(z.pivots)};
    auto out = e.rref.residues();
    std::copy(z.data.begin(), z.data.begin() + static_cast<std::ptrdiff_t>(rk * cols), out.begin());
    return e;
}

std::size_t rank(const Mat& m, Exec exec)
{
    if (m.empty()) return 0;
    if (m.field().is_prime_field()) return eliminate_zp(m, false, exec).pivots.size();
    return bareiss(m, exec).pivots.size();
}

Mat kernel_basis(const Mat& m)
{
    Echelon e = rref(m);
    const FieldSpec& f = m.field();
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : e.pivots) is_pivot[p] = true;
    std::vector<std::size_t> free;
    for (std::size_t j = 0; j < m.cols(); ++j)
        if (!is_pivot[j]) free.push_back(j);
    Mat k(f, m.cols(), free.size());
    for (std::size_t t = 0; t < free.size(); ++t) {
        k.set(free[t], t, one(f));
        for (std::size_t i = 0; i < e.rank(); ++i)
            if (!e.rref.is_zero_at(i, free[t])) k.set(e.pivots[i], t, neg(f, e.rref.get(i, free[t])));
    }
    return k;
}

std::optional<Mat> solve(const Mat& a, const Mat& b)
{
    if (a.rows() != b.rows())
        throw Error(ErrorCode::DimensionMismatch, "solve: a has " + std::to_string(a.rows()) + " rows, b has " +
                                                      std::to_string(b.rows()));
    Echelon e = rref(hstack(a, b));
    Mat x(a.field(), a.cols(), b.cols());
    for (std::size_t i = 0; i < e.rank(); ++i) {
        if (e.pivots[i] >= a.cols()) return std::nullopt;
        for (std::size_t k = 0; k < b.cols(); ++k) x.set(e.pivots[i], k, e.rref.get(i, a.cols() + k));
    }
    return x;
}

std::size_t subquotient_dim(const Mat& span_a, const Mat& span_b)
{
    if (span_a.rows() != span_b.rows()) throw Error(ErrorCode::DimensionMismatch, "subquotient_dim: ambient mismatch");
    const std::size_t ra = rank(span_a);
    if (rank(hstack(span_a, span_b)) != ra)
        throw Error(ErrorCode::ContainmentViolation, "span_b is not contained in span_a");
    return ra - rank(span_b);
}

bool Subspace::contains(const Mat& v) const
{
    if (v.rows() != ambient()) return false;
    return basis * coords(v) == v;
}

Subspace column_space(const Mat& spanning) { return column_space(spanning.field(), spanning.rows(), spanning); }

Subspace column_space(const FieldSpec& field, std::size_t ambient, const Mat& spanning)
{
    if (spanning.cols() == 0) return {Mat(field, ambient, 0), {}};
    Echelon e = rref(spanning.transpose());
    return {e.rref.transpose(), std::move(e.pivots)};
}

Quotient quotient(const Subspace& w)
{
    const FieldSpec& f = w.basis.field();
    const std::size_t n = w.ambient();
    std::vector<bool> is_pivot(n, false);
    for (auto p : w.pivots) is_pivot[p] = true;
    Quotient q{w, {}, {}, {}};
    for (std::size_t j = 0; j < n; ++j)
        if (!is_pivot[j]) q.free.push_back(j);
    // v - basis * v[pivots], read off at the free positions
    Mat reduce = Mat::identity(f, n) - w.basis * Mat::identity(f, n).select_rows(w.pivots);
    q.projection = reduce.select_rows(q.free);
    q.section = Mat(f, n, q.free.size());
    for (std::size_t t = 0; t < q.free.size(); ++t) q.section.set(q.free[t], t, one(f));
    return q;
}

Subquotient::Subquotient(const FieldSpec& field, std::size_t ambient, const Mat& z, const Mat& b)
{
    Subspace bs = column_space(field, ambient, b);
    mod_b_ = quotient(bs);
    Mat zbar = z.cols() ? mod_b_.projection * z : Mat(field, mod_b_.dim(), 0);
    if (rank(z.cols() ? hstack(z, b) : b) != rank(z))
        throw Error(ErrorCode::ContainmentViolation, "boundaries are not cycles");
    image_ = column_space(field, mod_b_.dim(), zbar);
    if (image_.dim() == 0) {
        reps_ = Mat(field, ambient, 0);
        return;
    }
    auto c = solve(zbar, image_.basis);
    if (!c) throw Error(ErrorCode::Internal, "subquotient representatives");
    reps_ = z * *c;
}

Mat Subquotient::coords(const Mat& v) const { return image_.coords(mod_b_.projection * v); }

namespace reference {

Echelon rref(const Mat& m)
{
    const FieldSpec& f = m.field();
    Mat a = m;
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
        std::size_t piv = r;
        while (piv < a.rows() && a.get(piv, c).is_zero()) ++piv;
        if (piv == a.rows()) continue;
        for (std::size_t j = 0; j < a.cols(); ++j) {
            Scalar t = a.get(piv, j);
            a.set(piv, j, a.get(r, j));
            a.set(r, j, t);
        }
        Scalar s = inv(f, a.get(r, c));
        for (std::size_t j = 0; j < a.cols(); ++j) a.set(r, j, mul(f, a.get(r, j), s));
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == r) continue;
            Scalar factor = a.get(i, c);
            if (factor.is_zero()) continue;
            for (std::size_t j = 0; j < a.cols(); ++j) a.set(i, j, sub(f, a.get(i, j), mul(f, factor, a.get(r, j))));
        }
        pivots.push_back(c);
        ++r;
    }
    return {a.rows_range(0, r), pivots};
}

Mat multiply(const Mat& a, const Mat& b)
{
    const FieldSpec& f = a.field();
    Mat out(f, a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) {
            Scalar s = zero(f);
            for (std::size_t t = 0; t < a.cols(); ++t) s = add(f, s, mul(f, a.get(i, t), b.get(t, j)));
            out.set(i, j, s);
        }
    return out;
}

}  // namespace reference

}  // namespace hm::la
