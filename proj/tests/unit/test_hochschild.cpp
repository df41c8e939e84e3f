#include "doctest.h"
#include "hm/catalog.hpp"
#include "hm/error.hpp"
#include "hm/hochschild.hpp"

using namespace hm;

namespace {

const FieldSpec Q = FieldSpec::rationals();
const FieldSpec P = FieldSpec::prime(kDefaultPrime);

using Dims = std::vector<std::size_t>;

// Brute-force count of nonzero inner factors, independent of the level machinery.
std::size_t count_inner(const FiniteKCategory& c, std::vector<std::size_t>& p, std::size_t len)
{
    if (p.size() == len) {
        std::size_t v = 1;
        for (std::size_t i = 0; i + 1 < p.size(); ++i) v *= c.dim(p[i], p[i + 1]);
        return v;
    }
    std::size_t s = 0;
    for (std::size_t x = 0; x < c.size(); ++x) {
        p.push_back(x);
        s += count_inner(c, p, len);
        p.pop_back();
    }
    return s;
}

}  // namespace

TEST_CASE("bar term sizes")
{
    auto k = catalog::point(Q);
    for (const auto& t : bar_dims(k, 4)) {
        CHECK(t.tuples == 1);
        CHECK(t.inner_dim == 1);
        CHECK(t.bimodule_dim == 1);
    }
    auto a2 = catalog::a2(Q);
    auto a = bar_dims(a2, 3);
    CHECK(a[0].tuples == 2);
    // S_0 = C(-,1)⊗C(1,-) ⊕ C(-,2)⊗C(2,-): 1*2 + 2*1
    CHECK(a[0].bimodule_dim == 4);
    CHECK(a[1].tuples == 3);
    auto c = catalog::random_category(Q, 5);
    auto t = bar_dims(c, 3);
    for (std::size_t n = 0; n <= 3; ++n) {
        std::vector<std::size_t> p;
        CHECK(t[n].inner_dim == count_inner(*c, p, n + 1));
    }
}

TEST_CASE("Hochschild cohomology of small categories")
{
    CHECK(hochschild_cohomology(catalog::point(Q), 3) == Dims{1, 0, 0, 0});
    CHECK(hochschild_cohomology(catalog::a2(Q), 3) == Dims{1, 0, 0, 0});
    CHECK(hochschild_cohomology(catalog::product_kk(Q), 2) == Dims{2, 0, 0});
    CHECK(hochschild_cohomology(catalog::dual_numbers(P), 3) == Dims{2, 1, 1, 1});
    CHECK(hochschild_cohomology(catalog::dual_numbers(Q), 3) == Dims{2, 1, 1, 1});
    CHECK(hochschild_cohomology(catalog::kronecker(Q, 2), 2) == Dims{1, 3, 0});
    auto l = catalog::linear(Q, 3);
    CHECK(hochschild_cohomology(l, 3) == Dims{1, 0, 0, 0});
}

TEST_CASE("H^0 is the center")
{
    CHECK(center(catalog::point(Q)).dim == 1);
    CHECK(center(catalog::a2(Q)).dim == 1);
    CHECK(center(catalog::product_kk(Q)).dim == 2);
    CHECK(center(catalog::dual_numbers(Q)).dim == 2);
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
        auto c = catalog::random_category(P, seed);
        CHECK(center(c).dim == hochschild_cohomology(c, 0)[0]);
    }
}

TEST_CASE("cochain complex squares to zero")
{
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        auto c = catalog::random_category(P, seed + 10);
        auto ce = enveloping(c);
        auto reg = regular_bimodule(c, ce);
        CHECK(hochschild_square_check(c, reg, 3) == -1);
        auto cx = hochschild_cochain_complex(c, reg, 2);
        CHECK(cx.first_nonzero_square() == -1);
        auto x = random_module(ce, seed);
        CHECK(hochschild_square_check(c, x, 3) == -1);
    }
}

TEST_CASE("reduced complex equals Hom out of the materialized bar resolution")
{
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        auto c = catalog::random_category(P, seed + 20);
        auto ce = enveloping(c);
        auto bar = bar_resolution(c, ce, 3);
        // exactness of S_• -> C
        CHECK(verify_resolution(bar).ok());
        for (const CatModule& x : {regular_bimodule(c, ce), random_module(ce, seed + 3)}) {
            auto yon = hom_complex(bar, x);
            auto red = hochschild_cochain_complex(c, x, 1);
            REQUIRE(yon.diffs.size() >= 2);
            for (std::size_t n = 0; n < 2; ++n) {
                CHECK(yon.dims[n] == red.dims[n]);
                CHECK(yon.diffs[n] == red.diffs[n]);
            }
        }
    }
}

TEST_CASE("serial and parallel assembly agree")
{
    auto c = catalog::random_category(P, 31);
    auto ce = enveloping(c);
    auto reg = regular_bimodule(c, ce);
    auto a = hochschild_cochain_complex(c, reg, 2, Exec::Serial);
    auto b = hochschild_cochain_complex(c, reg, 2, Exec::Parallel);
    for (std::size_t n = 0; n < a.diffs.size(); ++n) CHECK(a.diffs[n] == b.diffs[n]);
    CHECK(a.cohomology(Exec::Serial) == b.cohomology(Exec::Parallel));
}

TEST_CASE("HH agrees with Ext over the enveloping category")
{
    for (std::uint64_t seed = 1; seed <= 2; ++seed) {
        auto c = catalog::random_category(P, seed + 40);
        auto ce = enveloping(c);
        auto reg = regular_bimodule(c, ce);
        CHECK(hochschild_cohomology(c, 2) == ext(reg, reg, 2));
    }
    auto d = catalog::dual_numbers(Q);
    auto de = enveloping(d);
    auto reg = regular_bimodule(d, de);
    CHECK(hochschild_cohomology(d, 3) == ext(reg, reg, 3));
}

TEST_CASE("coefficient validation")
{
    auto a2 = catalog::a2(Q);
    auto k = catalog::kronecker(Q, 2);
    auto ke = enveloping(k);
    CHECK_THROWS_AS(hochschild_cochain_complex(a2, regular_bimodule(k, ke), 1), Error);
    CHECK_THROWS_AS(hochschild_cochain_complex(a2, representable(a2, 0, Side::Left), 1), Error);
}
