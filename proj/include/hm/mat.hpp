#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "hm/field.hpp"

namespace hm {

/// Execution policy for the data-parallel kernels. Serial and Parallel run the
/// same pivot sequence and produce bit-identical results.
enum class Exec { Serial, Parallel };

/// Dense row-major matrix over Q or GF(p). Entries are always canonical.
class Mat {
public:
    Mat() = default;
    Mat(const FieldSpec& field, std::size_t rows, std::size_t cols);

    static Mat identity(const FieldSpec& field, std::size_t n);
    /// Row-major integer entries; handy for tests and catalogs.
    static Mat from_ints(const FieldSpec& field, std::size_t rows, std::size_t cols, std::initializer_list<long> v);
    static Mat from_ints(const FieldSpec& field, std::size_t rows, std::size_t cols, const std::vector<long>& v);
    static Mat from_rationals(const FieldSpec& field, std::size_t rows, std::size_t cols, const std::vector<mpq_class>& v);
    /// Column vector with a single one at position i.
    static Mat unit(const FieldSpec& field, std::size_t n, std::size_t i);

    const FieldSpec& field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    Scalar get(std::size_t r, std::size_t c) const;
    void set(std::size_t r, std::size_t c, const Scalar& s);
    void add_to(std::size_t r, std::size_t c, const Scalar& s);
    bool is_zero_at(std::size_t r, std::size_t c) const;

    bool is_zero() const;
    Mat transpose() const;
    Mat scaled(const Scalar& s) const;
    Mat column(std::size_t c) const;
    Mat columns(std::size_t c0, std::size_t n) const;
    Mat rows_range(std::size_t r0, std::size_t n) const;
    Mat block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
    Mat select_rows(std::span<const std::size_t> idx) const;
    Mat select_columns(std::span<const std::size_t> idx) const;
    void set_block(std::size_t r0, std::size_t c0, const Mat& b);
    /// this[r0.., c0..] += coeff * b
    void add_block(std::size_t r0, std::size_t c0, const Mat& b, const Scalar& coeff);
    void add_block(std::size_t r0, std::size_t c0, const Mat& b);

    Mat& operator+=(const Mat& o);
    Mat& operator-=(const Mat& o);
    friend Mat operator+(Mat a, const Mat& b) { return a += b; }
    friend Mat operator-(Mat a, const Mat& b) { return a -= b; }
    friend Mat operator*(const Mat& a, const Mat& b);
    friend bool operator==(const Mat& a, const Mat& b);

    std::string to_string() const;

    // raw storage for kernels; exactly one of the two is populated
    std::span<std::uint32_t> residues() { return zp_; }
    std::span<const std::uint32_t> residues() const { return zp_; }
    std::span<mpq_class> rationals() { return q_; }
    std::span<const mpq_class> rationals() const { return q_; }

private:
    FieldSpec field_;
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::uint32_t> zp_;
    std::vector<mpq_class> q_;
};

Mat hstack(const Mat& a, const Mat& b);
Mat vstack(const Mat& a, const Mat& b);
Mat hstack(const FieldSpec& field, std::size_t rows, std::span<const Mat> parts);
Mat kron(const Mat& a, const Mat& b);
Mat block_diag(const FieldSpec& field, std::span<const Mat> parts);
Mat multiply(const Mat& a, const Mat& b, Exec exec);

}  // namespace hm
