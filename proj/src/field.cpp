#include "hm/field.hpp"

#include "hm/error.hpp"

namespace hm {

const char* error_code_name(ErrorCode code)
{
    switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::ContainmentViolation: return "ContainmentViolation";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::InvalidCategory: return "InvalidCategory";
    case ErrorCode::InvalidBimodule: return "InvalidBimodule";
    case ErrorCode::InvalidModule: return "InvalidModule";
    case ErrorCode::InvalidIdeal: return "InvalidIdeal";
    case ErrorCode::InvalidFunctor: return "InvalidFunctor";
    case ErrorCode::CoordinateMismatch: return "CoordinateMismatch";
    case ErrorCode::ParentMismatch: return "ParentMismatch";
    case ErrorCode::NotTriangular: return "NotTriangular";
    case ErrorCode::UnknownObject: return "UnknownObject";
    case ErrorCode::BaseMismatch: return "BaseMismatch";
    case ErrorCode::ResolutionTooShort: return "ResolutionTooShort";
    case ErrorCode::HypothesisFailed: return "HypothesisFailed";
    case ErrorCode::SampleBaseMismatch: return "SampleBaseMismatch";
    case ErrorCode::ZeroModule: return "ZeroModule";
    case ErrorCode::InvalidCoefficient: return "InvalidCoefficient";
    case ErrorCode::NotLocal: return "NotLocal";
    case ErrorCode::FinitenessError: return "FinitenessError";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::UnresolvedName: return "UnresolvedName";
    case ErrorCode::Internal: return "Internal";
    }
    return "Unknown";
}

bool is_prime(std::uint64_t n)
{
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

FieldSpec FieldSpec::prime(std::uint32_t p)
{
    if (p >= (1u << 31) || !is_prime(p))
        throw Error(ErrorCode::InvalidCoefficient, "characteristic " + std::to_string(p) + " is not a prime below 2^31");
    return {Kind::PrimeField, p};
}

std::string FieldSpec::to_string() const
{
    return is_prime_field() ? "GF(" + std::to_string(characteristic) + ")" : "Q";
}

std::string Scalar::to_string() const
{
    return is_rational_ ? rational_.get_str() : std::to_string(residue_);
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p)
{
    // extended Euclid on signed 64-bit values
    std::int64_t t = 0, new_t = 1, r = p, new_r = a % p;
    while (new_r != 0) {
        std::int64_t q = r / new_r;
        std::int64_t tmp = t - q * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - q * new_r;
        r = new_r;
        new_r = tmp;
    }
    if (r != 1) throw Error(ErrorCode::InvalidCoefficient, "zero has no inverse");
    if (t < 0) t += p;
    return static_cast<std::uint32_t>(t);
}

Scalar zero(const FieldSpec& f) { return f.is_prime_field() ? Scalar(0u) : Scalar(mpq_class(0)); }
Scalar one(const FieldSpec& f) { return f.is_prime_field() ? Scalar(1u) : Scalar(mpq_class(1)); }

Scalar from_int(const FieldSpec& f, long v)
{
    if (!f.is_prime_field()) return Scalar(mpq_class(v));
    long r = v % static_cast<long>(f.characteristic);
    if (r < 0) r += f.characteristic;
    return Scalar(static_cast<std::uint32_t>(r));
}

Scalar from_rational(const FieldSpec& f, const mpq_class& q)
{
    if (!f.is_prime_field()) {
        mpq_class c = q;
        c.canonicalize();
        return Scalar(c);
    }
    mpz_class p = f.characteristic;
    mpz_class num = q.get_num() % p;
    if (num < 0) num += p;
    mpz_class den = q.get_den() % p;
    if (den == 0)
        throw Error(ErrorCode::InvalidCoefficient, "denominator of " + q.get_str() + " vanishes in " + f.to_string());
    auto n = static_cast<std::uint32_t>(num.get_ui());
    auto d = static_cast<std::uint32_t>(den.get_ui());
    return Scalar(static_cast<std::uint32_t>(std::uint64_t(n) * inv_mod(d, f.characteristic) % f.characteristic));
}

Scalar add(const FieldSpec& f, const Scalar& a, const Scalar& b)
{
    if (!f.is_prime_field()) return Scalar(mpq_class(a.rational() + b.rational()));
    std::uint64_t s = std::uint64_t(a.residue()) + b.residue();
    return Scalar(static_cast<std::uint32_t>(s % f.characteristic));
}

Scalar sub(const FieldSpec& f, const Scalar& a, const Scalar& b) { return add(f, a, neg(f, b)); }

Scalar mul(const FieldSpec& f, const Scalar& a, const Scalar& b)
{
    if (!f.is_prime_field()) return Scalar(mpq_class(a.rational() * b.rational()));
    return Scalar(static_cast<std::uint32_t>(std::uint64_t(a.residue()) * b.residue() % f.characteristic));
}

Scalar neg(const FieldSpec& f, const Scalar& a)
{
    if (!f.is_prime_field()) return Scalar(mpq_class(-a.rational()));
    return Scalar(a.residue() == 0 ? 0u : f.characteristic - a.residue());
}

Scalar inv(const FieldSpec& f, const Scalar& a)
{
    if (a.is_zero()) throw Error(ErrorCode::InvalidCoefficient, "zero has no inverse");
    if (!f.is_prime_field()) return Scalar(mpq_class(1 / a.rational()));
    return Scalar(inv_mod(a.residue(), f.characteristic));
}

}  // namespace hm
