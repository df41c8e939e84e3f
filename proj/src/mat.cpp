#include "hm/mat.hpp"

#include <sstream>

#include "hm/error.hpp"

namespace hm {

namespace {

void require(bool ok, const char* what)
{
    if (!ok) throw Error(ErrorCode::DimensionMismatch, what);
}

// Reduction threshold: acc < 2^63 before adding a product < 2^62 keeps acc < 2^64.
constexpr std::uint64_t kReduceAt = std::uint64_t(1) << 63;

}  // namespace

Mat::Mat(const FieldSpec& field, std::size_t rows, std::size_t cols) : field_(field), rows_(rows), cols_(cols)
{
    if (field.is_prime_field())
        zp_.assign(rows * cols, 0u);
    else
        q_.resize(rows * cols);
}

Mat Mat::identity(const FieldSpec& field, std::size_t n)
{
    Mat m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, one(field));
    return m;
}

Mat Mat::from_ints(const FieldSpec& field, std::size_t rows, std::size_t cols, std::initializer_list<long> v)
{
    return from_ints(field, rows, cols, std::vector<long>(v));
}

Mat Mat::from_ints(const FieldSpec& field, std::size_t rows, std::size_t cols, const std::vector<long>& v)
{
    require(v.size() == rows * cols, "entry count does not match shape");
    Mat m(field, rows, cols);
    for (std::size_t i = 0; i < v.size(); ++i) m.set(i / cols, i % cols, from_int(field, v[i]));
    return m;
}

Mat Mat::from_rationals(const FieldSpec& field, std::size_t rows, std::size_t cols, const std::vector<mpq_class>& v)
{
    require(v.size() == rows * cols, "entry count does not match shape");
    Mat m(field, rows, cols);
    for (std::size_t i = 0; i < v.size(); ++i) m.set(i / cols, i % cols, from_rational(field, v[i]));
    return m;
}

Mat Mat::unit(const FieldSpec& field, std::size_t n, std::size_t i)
{
    Mat m(field, n, 1);
    m.set(i, 0, one(field));
    return m;
}

Scalar Mat::get(std::size_t r, std::size_t c) const
{
    std::size_t k = r * cols_ + c;
    return field_.is_prime_field() ? Scalar(zp_[k]) : Scalar(q_[k]);
}

void Mat::set(std::size_t r, std::size_t c, const Scalar& s)
{
    std::size_t k = r * cols_ + c;
    if (field_.is_prime_field())
        zp_[k] = s.residue();
    else
        q_[k] = s.rational();
}

void Mat::add_to(std::size_t r, std::size_t c, const Scalar& s)
{
    std::size_t k = r * cols_ + c;
    if (field_.is_prime_field())
        zp_[k] = static_cast<std::uint32_t>((std::uint64_t(zp_[k]) + s.residue()) % field_.characteristic);
    else
        q_[k] += s.rational();
}

bool Mat::is_zero_at(std::size_t r, std::size_t c) const
{
    std::size_t k = r * cols_ + c;
    return field_.is_prime_field() ? zp_[k] == 0 : q_[k] == 0;
}

bool Mat::is_zero() const
{
    if (field_.is_prime_field()) {
        for (auto v : zp_)
            if (v) return false;
        return true;
    }
    for (const auto& v : q_)
        if (v != 0) return false;
    return true;
}

Mat Mat::transpose() const
{
    Mat t(field_, cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) {
            if (field_.is_prime_field())
                t.zp_[c * rows_ + r] = zp_[r * cols_ + c];
            else
                t.q_[c * rows_ + r] = q_[r * cols_ + c];
        }
    return t;
}

Mat Mat::scaled(const Scalar& s) const
{
    Mat m(field_, rows_, cols_);
    if (field_.is_prime_field()) {
        for (std::size_t k = 0; k < zp_.size(); ++k)
            m.zp_[k] = static_cast<std::uint32_t>(std::uint64_t(zp_[k]) * s.residue() % field_.characteristic);
    } else {
        for (std::size_t k = 0; k < q_.size(); ++k) m.q_[k] = q_[k] * s.rational();
    }
    return m;
}

Mat Mat::column(std::size_t c) const { return block(0, c, rows_, 1); }
Mat Mat::columns(std::size_t c0, std::size_t n) const { return block(0, c0, rows_, n); }
Mat Mat::rows_range(std::size_t r0, std::size_t n) const { return block(r0, 0, n, cols_); }

Mat Mat::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const
{
    require(r0 + nr <= rows_ && c0 + nc <= cols_, "block out of range");
    Mat b(field_, nr, nc);
    for (std::size_t r = 0; r < nr; ++r)
        for (std::size_t c = 0; c < nc; ++c) {
            std::size_t src = (r0 + r) * cols_ + c0 + c;
            if (field_.is_prime_field())
                b.zp_[r * nc + c] = zp_[src];
            else
                b.q_[r * nc + c] = q_[src];
        }
    return b;
}

Mat Mat::select_rows(std::span<const std::size_t> idx) const
{
    Mat b(field_, idx.size(), cols_);
    for (std::size_t r = 0; r < idx.size(); ++r)
        for (std::size_t c = 0; c < cols_; ++c) b.set(r, c, get(idx[r], c));
    return b;
}

Mat Mat::select_columns(std::span<const std::size_t> idx) const
{
    Mat b(field_, rows_, idx.size());
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < idx.size(); ++c) b.set(r, c, get(r, idx[c]));
    return b;
}

void Mat::set_block(std::size_t r0, std::size_t c0, const Mat& b)
{
    require(r0 + b.rows_ <= rows_ && c0 + b.cols_ <= cols_, "block out of range");
    for (std::size_t r = 0; r < b.rows_; ++r)
        for (std::size_t c = 0; c < b.cols_; ++c) {
            std::size_t dst = (r0 + r) * cols_ + c0 + c;
            if (field_.is_prime_field())
                zp_[dst] = b.zp_[r * b.cols_ + c];
            else
                q_[dst] = b.q_[r * b.cols_ + c];
        }
}

void Mat::add_block(std::size_t r0, std::size_t c0, const Mat& b, const Scalar& coeff)
{
    require(r0 + b.rows_ <= rows_ && c0 + b.cols_ <= cols_, "block out of range");
    if (coeff.is_zero()) return;
    for (std::size_t r = 0; r < b.rows_; ++r)
        for (std::size_t c = 0; c < b.cols_; ++c) {
            std::size_t dst = (r0 + r) * cols_ + c0 + c;
            std::size_t src = r * b.cols_ + c;
            if (field_.is_prime_field()) {
                if (b.zp_[src] == 0) continue;
                std::uint64_t p = field_.characteristic;
                zp_[dst] = static_cast<std::uint32_t>((zp_[dst] + std::uint64_t(b.zp_[src]) * coeff.residue()) % p);
            } else {
                if (b.q_[src] == 0) continue;
                q_[dst] += b.q_[src] * coeff.rational();
            }
        }
}

void Mat::add_block(std::size_t r0, std::size_t c0, const Mat& b) { add_block(r0, c0, b, one(field_)); }

Mat& Mat::operator+=(const Mat& o)
{
    require(rows_ == o.rows_ && cols_ == o.cols_, "shape mismatch in +");
    add_block(0, 0, o);
    return *this;
}

Mat& Mat::operator-=(const Mat& o)
{
    require(rows_ == o.rows_ && cols_ == o.cols_, "shape mismatch in -");
    add_block(0, 0, o, neg(field_, one(field_)));
    return *this;
}

Mat multiply(const Mat& a, const Mat& b, Exec exec)
{
    require(a.cols() == b.rows(), "shape mismatch in *");
    require(a.field() == b.field(), "field mismatch in *");
    const FieldSpec& f = a.field();
    const std::size_t n = a.rows(), k = a.cols(), m = b.cols();
    Mat out(f, n, m);
    const bool par = exec == Exec::Parallel && n * k * m > 32768;
    if (f.is_prime_field()) {
        const std::uint64_t p = f.characteristic;
        auto A = a.residues();
        auto B = b.residues();
        auto C = out.residues();
#pragma omp parallel for schedule(static) if (par)
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<std::uint64_t> acc(m, 0);
            for (std::size_t t = 0; t < k; ++t) {
                std::uint64_t av = A[i * k + t];
                if (av == 0) continue;
                for (std::size_t j = 0; j < m; ++j) {
                    acc[j] += av * B[t * m + j];
                    if (acc[j] >= kReduceAt) acc[j] %= p;
                }
            }
            for (std::size_t j = 0; j < m; ++j) C[i * m + j] = static_cast<std::uint32_t>(acc[j] % p);
        }
    } else {
        auto A = a.rationals();
        auto B = b.rationals();
        auto C = out.rationals();
#pragma omp parallel for schedule(dynamic) if (par)
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t t = 0; t < k; ++t) {
                const mpq_class& av = A[i * k + t];
                if (av == 0) continue;
                for (std::size_t j = 0; j < m; ++j)
                    if (B[t * m + j] != 0) C[i * m + j] += av * B[t * m + j];
            }
        }
    }
    return out;
}

Mat operator*(const Mat& a, const Mat& b) { return multiply(a, b, Exec::Parallel); }

bool operator==(const Mat& a, const Mat& b)
{
    return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.zp_ == b.zp_ && a.q_ == b.q_;
}

std::string Mat::to_string() const
{
    std::ostringstream os;
    os << '[';
    for (std::size_t r = 0; r < rows_; ++r) {
        if (r) os << ',';
        os << '[';
        for (std::size_t c = 0; c < cols_; ++c) {
            if (c) os << ',';
            os << get(r, c).to_string();
        }
        os << ']';
    }
    os << ']';
    return os.str();
}

Mat hstack(const Mat& a, const Mat& b)
{
    require(a.rows() == b.rows(), "row mismatch in hstack");
    Mat m(a.field(), a.rows(), a.cols() + b.cols());
    m.set_block(0, 0, a);
    m.set_block(0, a.cols(), b);
    return m;
}

Mat vstack(const Mat& a, const Mat& b)
{
    require(a.cols() == b.cols(), "column mismatch in vstack");
    Mat m(a.field(), a.rows() + b.rows(), a.cols());
    m.set_block(0, 0, a);
    m.set_block(a.rows(), 0, b);
    return m;
}

Mat hstack(const FieldSpec& field, std::size_t rows, std::span<const Mat> parts)
{
    std::size_t cols = 0;
    for (const auto& p : parts) {
        require(p.rows() == rows, "row mismatch in hstack");
        cols += p.cols();
    }
    Mat m(field, rows, cols);
    std::size_t c = 0;
    for (const auto& p : parts) {
        m.set_block(0, c, p);
        c += p.cols();
    }
    return m;
}

Mat kron(const Mat& a, const Mat& b)
{
    Mat m(a.field(), a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (a.is_zero_at(i, j)) continue;
            m.add_block(i * b.rows(), j * b.cols(), b, a.get(i, j));
        }
    return m;
}

Mat block_diag(const FieldSpec& field, std::span<const Mat> parts)
{
    std::size_t r = 0, c = 0;
    for (const auto& p : parts) {
        r += p.rows();
        c += p.cols();
    }
    Mat m(field, r, c);
    r = c = 0;
    for (const auto& p : parts) {
        m.set_block(r, c, p);
        r += p.rows();
        c += p.cols();
    }
    return m;
}

}  // namespace hm
