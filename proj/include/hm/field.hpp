#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace hm {

inline constexpr std::uint32_t kDefaultPrime = 32003;

/// The ground field: either Q or GF(p) with p prime and p < 2^31.
struct FieldSpec {
    enum class Kind { Rationals, PrimeField };

    Kind kind = Kind::Rationals;
    std::uint32_t characteristic = 0;

    static FieldSpec rationals() { return {}; }
    /// Throws Error(InvalidCoefficient) unless p is a prime below 2^31.
    static FieldSpec prime(std::uint32_t p);

    bool is_prime_field() const { return kind == Kind::PrimeField; }
    std::string to_string() const;

    friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

bool is_prime(std::uint64_t n);

/// A field element in canonical form: a reduced fraction over Q or the least
/// nonnegative residue over GF(p). Arithmetic goes through the field so the
/// same value type serves both.
class Scalar {
public:
    Scalar() = default;
    explicit Scalar(std::uint32_t residue) : residue_(residue) {}
    explicit Scalar(mpq_class q) : rational_(std::move(q)), is_rational_(true) {}

    bool is_rational() const { return is_rational_; }
    std::uint32_t residue() const { return residue_; }
    const mpq_class& rational() const { return rational_; }

    bool is_zero() const { return is_rational_ ? rational_ == 0 : residue_ == 0; }
    std::string to_string() const;

    friend bool operator==(const Scalar& a, const Scalar& b)
    {
        if (a.is_rational_ != b.is_rational_) return a.is_zero() && b.is_zero();
        return a.is_rational_ ? a.rational_ == b.rational_ : a.residue_ == b.residue_;
    }

private:
    std::uint32_t residue_ = 0;
    mpq_class rational_;
    bool is_rational_ = false;
};

// Field operations on canonical scalars.
Scalar zero(const FieldSpec& f);
Scalar one(const FieldSpec& f);
Scalar from_int(const FieldSpec& f, long v);
/// Throws Error(InvalidCoefficient) when the denominator vanishes mod p.
Scalar from_rational(const FieldSpec& f, const mpq_class& q);
Scalar add(const FieldSpec& f, const Scalar& a, const Scalar& b);
Scalar sub(const FieldSpec& f, const Scalar& a, const Scalar& b);
Scalar mul(const FieldSpec& f, const Scalar& a, const Scalar& b);
Scalar neg(const FieldSpec& f, const Scalar& a);
Scalar inv(const FieldSpec& f, const Scalar& a);

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p);

}  // namespace hm
