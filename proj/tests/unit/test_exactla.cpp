#include <random>

#include "doctest.h"
#include "hm/error.hpp"
#include "hm/linalg.hpp"

using namespace hm;

namespace {

const FieldSpec Q = FieldSpec::rationals();
const FieldSpec F5 = FieldSpec::prime(5);

Mat random_mat(const FieldSpec& f, std::size_t r, std::size_t c, std::mt19937_64& rng, int range = 3)
{
    std::vector<long> v(r * c);
    for (auto& x : v) x = static_cast<long>(rng() % (2 * range + 1)) - range;
    return Mat::from_ints(f, r, c, v);
}

// product of random low-rank factors, so that rank deficiency is common
Mat random_low_rank(const FieldSpec& f, std::size_t r, std::size_t c, std::size_t k, std::mt19937_64& rng)
{
    return random_mat(f, r, k, rng) * random_mat(f, k, c, rng);
}

}  // namespace

TEST_CASE("rank of a dependent 2x2 matrix")
{
    CHECK(la::rank(Mat::from_ints(Q, 2, 2, {1, 2, 2, 4})) == 1);
    CHECK(la::rank(Mat::from_ints(F5, 2, 2, {1, 2, 2, 4})) == 1);
    CHECK(la::rank(Mat::from_ints(F5, 2, 2, {1, 2, 3, 1})) == 1);  // det = -5
    CHECK(la::rank(Mat::from_ints(Q, 2, 2, {1, 2, 3, 1})) == 2);
}

TEST_CASE("solve over GF(5)")
{
    auto x = la::solve(Mat::from_ints(F5, 1, 1, {2}), Mat::from_ints(F5, 1, 1, {1}));
    REQUIRE(x);
    CHECK(*x == Mat::from_ints(F5, 1, 1, {3}));
}

TEST_CASE("solve reports no solution and dimension errors")
{
    CHECK_FALSE(la::solve(Mat::from_ints(Q, 2, 1, {1, 0}), Mat::from_ints(Q, 2, 1, {0, 1})));
    CHECK_THROWS_AS(la::solve(Mat::from_ints(Q, 2, 1, {1, 0}), Mat::from_ints(Q, 1, 1, {0})), Error);
}

TEST_CASE("subquotient dimensions")
{
    Mat a = Mat::identity(Q, 2);
    Mat b = Mat::from_ints(Q, 2, 1, {1, 1});
    CHECK(la::subquotient_dim(a, b) == 1);
    CHECK(la::subquotient_dim(a, Mat(Q, 2, 0)) == 2);
    try {
        la::subquotient_dim(b, a);
        FAIL("expected ContainmentViolation");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ContainmentViolation);
    }
}

TEST_CASE("rational rref matches the textbook oracle")
{
    std::mt19937_64 rng(7);
    for (int t = 0; t < 60; ++t) {
        std::size_t r = 1 + rng() % 7, c = 1 + rng() % 7, k = rng() % 5;
        Mat m = random_low_rank(Q, r, c, k, rng);
        if (t % 3 == 0) m = random_mat(Q, r, c, rng);
        la::Echelon fast = la::rref(m, Exec::Serial);
        la::Echelon ref = la::reference::rref(m);
        CHECK(fast.rref == ref.rref);
        CHECK(fast.pivots == ref.pivots);
        CHECK(la::rref(m, Exec::Parallel).rref == fast.rref);
    }
}

TEST_CASE("rank properties over GF(p) and Q")
{
    std::mt19937_64 rng(11);
    for (const FieldSpec& f : {Q, F5, FieldSpec::prime(32003)}) {
        for (int t = 0; t < 40; ++t) {
            std::size_t r = 1 + rng() % 8, c = 1 + rng() % 8, k = rng() % 6;
            Mat m = random_low_rank(f, r, c, k, rng);
            std::size_t rk = la::rank(m);
            CHECK(rk == la::rank(m.transpose()));
            CHECK(rk == la::reference::rref(m).rank());
            CHECK(rk <= k);
            Mat ker = la::kernel_basis(m);
            CHECK(ker.cols() + rk == c);
            CHECK((m * ker).is_zero());
            CHECK(la::rank(ker) == ker.cols());
        }
    }
}

TEST_CASE("solve returns a genuine solution when one exists")
{
    std::mt19937_64 rng(3);
    for (int t = 0; t < 40; ++t) {
        std::size_t r = 1 + rng() % 6, c = 1 + rng() % 6;
        Mat a = random_low_rank(Q, r, c, 1 + rng() % 4, rng);
        Mat x0 = random_mat(Q, c, 2, rng);
        auto x = la::solve(a, a * x0);
        REQUIRE(x);
        CHECK(a * *x == a * x0);
    }
}

TEST_CASE("quotient and subquotient coordinates")
{
    std::mt19937_64 rng(5);
    for (int t = 0; t < 30; ++t) {
        const std::size_t n = 2 + rng() % 6;
        Mat z = random_low_rank(Q, n, 1 + rng() % 5, 1 + rng() % 4, rng);
        Mat b = z * random_mat(Q, z.cols(), 1 + rng() % 3, rng);
        la::Subquotient sq(Q, n, z, b);
        CHECK(sq.dim() == la::subquotient_dim(z, b));
        // representatives map to unit coordinates, boundaries to zero
        CHECK(sq.coords(sq.representatives()) == Mat::identity(Q, sq.dim()));
        CHECK(sq.coords(b).is_zero());
        la::Subspace w = la::column_space(b);
        la::Quotient q = la::quotient(w);
        CHECK(q.dim() + la::rank(b) == n);
        CHECK((q.projection * b).is_zero());
        CHECK(q.projection * q.section == Mat::identity(Q, q.dim()));
        CHECK(w.contains(b));
    }
}

TEST_CASE("large matrices: serial and parallel agree")
{
    std::mt19937_64 rng(99);
    for (const FieldSpec& f : {Q, FieldSpec::prime(32003)}) {
        Mat m = random_low_rank(f, 70, 80, 50, rng);
        la::Echelon s = la::rref(m, Exec::Serial), p = la::rref(m, Exec::Parallel);
        CHECK(s.rref == p.rref);
        CHECK(s.pivots == p.pivots);
        CHECK(s.rank() == 50);
        CHECK(multiply(m, m.transpose(), Exec::Serial) == multiply(m, m.transpose(), Exec::Parallel));
        CHECK(la::reference::multiply(m, m.transpose()) == m * m.transpose());
    }
}
