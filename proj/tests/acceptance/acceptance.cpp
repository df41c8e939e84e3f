// Acceptance run: one PASS/FAIL line per criterion, exit 1 if any line fails.
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>

#include "CLI11.hpp"

#include "hm/catalog.hpp"
#include "hm/error.hpp"
#include "hm/hochschild.hpp"
#include "hm/runner.hpp"
#include "hm/theorems.hpp"
#include "hm/triangular.hpp"

using namespace hm;

namespace {

using Dims = std::vector<std::size_t>;

const FieldSpec Q = FieldSpec::rationals();
const FieldSpec P = FieldSpec::prime(kDefaultPrime);

// Wall-clock budgets in seconds, one per criterion.
constexpr double kBudget[12] = {0, 30, 5, 60, 180, 120, 60, 10, 120, 120, 60, 120};
constexpr std::size_t kSquareTop = 5;
constexpr std::size_t kOracleDeg = 3;
constexpr std::size_t kOracleHomDim = 5;
constexpr std::size_t kLesDeg = 3;
constexpr std::size_t kAdjunctionSeeds = 20;
constexpr std::size_t kTorDeg = 3;

std::string dims(const Dims& d)
{
    std::string s = "(";
    for (std::size_t i = 0; i < d.size(); ++i) s += (i ? "," : "") + std::to_string(d[i]);
    return s + ")";
}

/// Collects mismatches for one criterion.
struct Item {
    std::vector<std::string> bad;
    std::size_t checks = 0;

    void expect(bool ok, const std::string& what)
    {
        ++checks;
        if (!ok) bad.push_back(what);
    }
};

CatModule k_module(const CatPtr& pt, std::size_t d) { return CatModule(pt, Side::Left, {d}, {Mat::identity(pt->field(), d)}); }

std::vector<std::pair<std::string, CatPtr>> test_categories(std::uint64_t seed)
{
    return {{"C_K", catalog::point(P)},
            {"KxK", catalog::product_kk(P)},
            {"A2", catalog::a2(P)},
            {"Kronecker", catalog::kronecker(P, 2)},
            {"dual numbers", catalog::dual_numbers(P)},
            {"random(" + std::to_string(seed) + ")", catalog::random_category(P, seed, 2)}};
}

void c1_square(Item& it, std::uint64_t seed)
{
    for (const auto& [name, c] : test_categories(seed)) {
        const auto ce = enveloping(c);
        const long reg = hochschild_square_check(c, regular_bimodule(c, ce), kSquareTop);
        it.expect(reg < 0, name + ": d*d != 0 at degree " + std::to_string(reg));
        const long rnd = hochschild_square_check(c, random_module(ce, seed), kSquareTop);
        it.expect(rnd < 0, name + " random coefficients: d*d != 0 at degree " + std::to_string(rnd));
    }
}

void c2_center(Item& it, std::uint64_t seed)
{
    auto cats = test_categories(seed);
    cats.emplace_back("truncated K[x]/x^3", catalog::truncated_polynomial(Q, 3));
    cats.emplace_back("linear(3)", catalog::linear(Q, 3));
    for (const auto& [name, c] : cats) {
        const std::size_t h0 = hochschild_cohomology(c, 0)[0];
        const std::size_t z = center(c).dim;
        it.expect(h0 == z, name + ": H^0 " + std::to_string(h0) + " vs center " + std::to_string(z));
    }
}

void c3_known(Item& it)
{
    const std::vector<std::tuple<std::string, CatPtr, Dims>> cases{
        {"C_K", catalog::point(Q), {1, 0, 0, 0}},
        {"A2", catalog::a2(Q), {1, 0, 0, 0}},
        {"dual numbers over GF(32003)", catalog::dual_numbers(P), {1, 1, 1, 1}},
    };
    for (const auto& [name, c, expected] : cases) {
        const auto ce = enveloping(c);
        const auto reg = regular_bimodule(c, ce);
        const Dims oracle = ext(reg, reg, 3);
        const Dims cochain = hochschild_cohomology(c, 3);
        it.expect(oracle == cochain, name + ": oracle " + dims(oracle) + " vs cochains " + dims(cochain));
        it.expect(cochain == expected, name + ": computed " + dims(cochain) + ", expected " + dims(expected));
    }
}

void c4_oracle(Item& it, std::uint64_t seed)
{
    std::vector<std::pair<std::string, CatPtr>> cats{
        {"C_K", catalog::point(Q)},
        {"KxK", catalog::product_kk(Q)},
        {"A2", catalog::a2(Q)},
        {"Kronecker", catalog::kronecker(Q, 2)},
        {"dual numbers", catalog::dual_numbers(P)},
        {"K[x]/x^3", catalog::truncated_polynomial(P, 3)},
        {"K[x]/x^4", catalog::truncated_polynomial(P, 4)},
        {"3 arrows", catalog::kronecker(Q, 3)},
    };
    for (std::uint64_t s = seed; s < seed + 10; ++s) cats.emplace_back("random(" + std::to_string(s) + ")", catalog::random_category(P, s, 2));
    std::size_t used = 0;
    for (const auto& [name, c] : cats) {
        if (c->total_hom_dim() > kOracleHomDim) continue;
        ++used;
        const auto ce = enveloping(c);
        const auto reg = regular_bimodule(c, ce);
        const Dims oracle = ext(reg, reg, kOracleDeg);
        const Dims cochain = hochschild_cohomology(c, kOracleDeg);
        it.expect(oracle == cochain, name + ": Ext over C^e " + dims(oracle) + " vs HH " + dims(cochain));
    }
    it.expect(used >= 8, "only " + std::to_string(used) + " categories within the Hom bound");
}

void les_case(Item& it, const std::string& name, const CatPtr& t, const CatPtr& u, const Bimodule& m)
{
    const PipelineReport r = cmp_pipeline(t, u, m, kLesDeg);
    it.expect(r.les.exact_at.size() == 3 * (kLesDeg + 1), name + ": wrong node count");
    for (std::size_t k = 0; k < r.les.exact_at.size(); ++k)
        it.expect(r.les.exact_at[k], name + ": not exact at node " + std::to_string(k));
    const Dims hu = hochschild_cohomology(u, kLesDeg);
    it.expect(r.les.ext_ch == hu, name + ": Ext(L,H) " + dims(r.les.ext_ch) + " vs H(U) " + dims(hu));
    for (const auto& id : r.identifications)
        it.expect(id.holds, name + ": " + id.name + " " + dims(id.lhs) + " vs " + dims(id.rhs));
    bool standalone = false;
    for (const auto& id : r.identifications) standalone = standalone || id.name == "Ext^n(C,I) standalone";
    it.expect(standalone, name + ": no standalone Ext(L,I)");
}

void c5_les(Item& it)
{
    const auto k = catalog::point(Q);
    les_case(it, "[K 0;K K]", k, k, Bimodule::from_left_module(k_module(k, 1), k));
    const auto d = catalog::dual_numbers(P);
    const auto kp = catalog::point(P);
    les_case(it, "one point extension of the dual numbers by S", kp, d, Bimodule::from_left_module(simple_module(d, 0), kp));
}

void c6_structural(Item& it)
{
    const auto k = catalog::point(Q);
    const auto a2 = catalog::a2(Q);
    const auto d = catalog::dual_numbers(Q);
    const std::vector<std::pair<std::string, CatPtr>> cases{
        {"t=K u=K m=K", triangular_matrix(k, k, Bimodule::from_left_module(k_module(k, 1), k))},
        {"t=K u=K m=K^2", triangular_matrix(k, k, Bimodule::from_left_module(k_module(k, 2), k))},
        {"t=K u=A2 m=S1", triangular_matrix(k, a2, Bimodule::from_left_module(simple_module(a2, 0), k))},
        {"t=K u=A2 m=P1", triangular_matrix(k, a2, Bimodule::from_left_module(representable(a2, 0, Side::Left), k))},
        {"t=K u=D m=S", triangular_matrix(k, d, Bimodule::from_left_module(simple_module(d, 0), k))},
        {"t=A2 u=D m=0", triangular_matrix(a2, d, Bimodule::zero(d, a2))},
    };
    for (const auto& [name, l] : cases) {
        const auto i = triangular_ideal(l);
        it.expect(is_idempotent(i), name + ": not idempotent");
        for (std::size_t x = 0; x < l->size(); ++x)
            it.expect(is_projective(representable_ideal_module(i, x)), name + ": I(" + l->object(x) + ",-) not projective");
    }
}

void c7_negative(Item& it)
{
    const auto a2 = catalog::a2(Q);
    const auto arrow = ideal_from_generators(a2, {{0, 1, Mat::identity(Q, 1)}});
    const auto audit = audit_hypotheses(arrow);
    it.expect(!audit.idempotent, "audit accepted <a> as idempotent");
    it.expect(!audit.ok(), "audit passed");
    bool threw = false;
    try {
        theorem_les_pipeline(a2, arrow, 2);
    } catch (const Error& e) {
        threw = e.code() == ErrorCode::HypothesisFailed;
    }
    it.expect(threw, "pipeline did not raise HypothesisFailed");
    const auto rep = strongly_idempotent_check(a2, arrow, 2);
    bool witness = false;
    for (const auto& f : rep.failures) witness = witness || (f.degree == 1 && f.dim > 0);
    it.expect(witness, "no nonvanishing Ext^1 witness");
}

void c8_happel(Item& it)
{
    const auto k = catalog::point(Q);
    const auto d = catalog::dual_numbers(P);
    const std::vector<std::tuple<std::string, CatPtr, CatModule>> cases{
        {"u=K m=K", k, k_module(k, 1)},
        {"u=K m=K^2", k, k_module(k, 2)},
        {"u=D m=S", d, simple_module(d, 0)},
    };
    for (const auto& [name, u, m] : cases) {
        const HappelReport h = happel_pipeline(u, m, 3);
        const Dims e = ext(m, m, 2);
        const Dims& ci = h.pipeline.les.ext_ci;
        it.expect(ci[0] == 0, name + ": Hom(L,I) = " + std::to_string(ci[0]));
        it.expect(ci[1] + 1 == hom_dim(m, m), name + ": Ext^1(L,I) = " + std::to_string(ci[1]));
        for (std::size_t n = 2; n <= 3; ++n)
            it.expect(ci[n] == e[n - 1], name + ": Ext^" + std::to_string(n) + "(L,I) = " + std::to_string(ci[n]) + " vs " +
                                             std::to_string(e[n - 1]));
        it.expect(h.ok(), name + ": pipeline checks failed");
    }
}

/// m plus the simple tops that exist, so that higher Tor is not forced to vanish.
CatModule with_simples(const CatModule& m)
{
    std::vector<CatModule> parts{m};
    for (std::size_t x = 0; x < m.base()->size(); ++x) {
        try {
            parts.push_back(simple_module(m.base(), x, m.side()));
        } catch (const Error&) {
        }
    }
    return direct_sum(parts);
}

void c9_adjunction(Item& it, std::uint64_t seed)
{
    std::size_t instances = 0, nonzero = 0, higher = 0;
    for (std::uint64_t s = seed; s < seed + kAdjunctionSeeds; ++s) {
        const auto c = catalog::random_category(P, 1000 + s, 2);
        // odd seeds take D = C and add the regular bimodule to G, so higher Tor can survive
        const bool same = s % 2 == 1;
        const auto d = same ? c : catalog::random_category(P, 2000 + s, 2);
        const auto pt = catalog::point(P);
        const auto cop = opposite(c);
        const auto dop = opposite(d);
        const auto cd = tensor_category(cop, d);
        const std::string tag = "seed " + std::to_string(s);

        // Hom(F ⊗_C G, K) = Hom(G, Hom(F, K))
        const auto f = random_module(c, s);
        const auto g = random_module(c, s + 1, Side::Right);
        it.expect(tensor_over_cat(g, f).dim == hom_dim(g, dualize(f)), tag + ": tensor adjunction");
        // Hom(F ⊠_C G, H) = Hom(G, Hom(F, H))
        const auto gg = random_module(cd, s + 2);
        const auto h = random_module(d, s + 3);
        it.expect(hom_dim(boxtimes(f, gg, cop, d), h) == hom_dim(gg, outer_tensor(dualize(f), h, cd)), tag + ": boxtimes adjunction");

        // Tor^D(F ⊠_C G, H) = Tor^C(F, G ⊠_D H) with E the point
        auto gp = outer_tensor(random_projective(c, s + 4, Side::Right, 3), random_projective(d, s + 5, Side::Left, 3), cd);
        if (same) gp = direct_sum({rebase(regular_bimodule(c, enveloping(c)), cd), gp});
        const auto hr = with_simples(random_module(d, s + 6, Side::Right, 3));
        const auto fs = with_simples(f);
        bool hyp = true;
        for (std::size_t y = 0; y < d->size(); ++y) {
            const auto col = to_right(slice_first(gp, cop, d, y), c);
            const Dims t = tor(col, fs, kTorDeg);
            for (std::size_t n = 1; n <= kTorDeg; ++n) hyp = hyp && t[n] == 0;
        }
        for (std::size_t x = 0; x < c->size(); ++x) {
            const Dims t = tor(hr, slice_second(gp, cop, d, x), kTorDeg);
            for (std::size_t n = 1; n <= kTorDeg; ++n) hyp = hyp && t[n] == 0;
        }
        it.expect(hyp, tag + ": vanishing hypotheses fail on the generated instance");
        if (!hyp) continue;
        ++instances;
        const Dims lhs = tor(hr, boxtimes(fs, gp, cop, d), kTorDeg);
        const auto dpt = tensor_category(dop, pt);
        const auto cpt = tensor_category(cop, pt);
        const auto h_left = rebase(to_left(hr), dpt);
        const auto gh = to_right(rebase(boxtimes(gp, h_left, cop, d, dop, pt, cpt), cop), c);
        const Dims rhs = tor(gh, fs, kTorDeg);
        it.expect(lhs == rhs, tag + ": Tor " + dims(lhs) + " vs " + dims(rhs));
        nonzero += std::accumulate(lhs.begin(), lhs.end(), std::size_t{0}) > 0 ? 1 : 0;
        higher += std::accumulate(lhs.begin() + 1, lhs.end(), std::size_t{0}) > 0 ? 1 : 0;
    }
    it.expect(instances == kAdjunctionSeeds, "only " + std::to_string(instances) + " Tor instances");
    it.expect(nonzero * 2 >= instances, "only " + std::to_string(nonzero) + " Tor instances are nonzero");
    it.expect(higher > 0, "no Tor instance has a nonzero higher group");
    std::printf("         Tor instances: %zu nonzero, %zu with higher Tor\n", nonzero, higher);
}

void c10_duality(Item& it, std::uint64_t seed)
{
    const std::vector<CatPtr> cats{catalog::a2(Q), catalog::kronecker(Q, 2), catalog::dual_numbers(P),
                                   catalog::truncated_polynomial(Q, 3), catalog::random_category(Q, seed, 2),
                                   catalog::random_category(P, seed + 1, 3)};
    for (std::size_t ci = 0; ci < cats.size(); ++ci) {
        const auto& c = cats[ci];
        std::vector<CatModule> left, right;
        for (std::size_t x = 0; x < c->size(); ++x) {
            left.push_back(representable(c, x, Side::Left));
            right.push_back(representable(c, x, Side::Right));
            left.push_back(simple_module(c, x, Side::Left));
            right.push_back(simple_module(c, x, Side::Right));
        }
        left.push_back(random_module(c, seed + 10 * ci));
        right.push_back(random_module(c, seed + 10 * ci + 1, Side::Right));
        for (std::size_t a = 0; a < left.size(); ++a)
            for (std::size_t b = 0; b < right.size(); ++b) {
                const Dims e = ext(left[a], dualize(right[b]), 3);
                const Dims t = tor(right[b], left[a], 3);
                it.expect(e == t, "category " + std::to_string(ci) + " M" + std::to_string(a) + " N" + std::to_string(b) + ": Ext " +
                                      dims(e) + " vs Tor " + dims(t));
            }
    }
}

std::string suite_json(const std::filesystem::path& dir, std::uint64_t seed)
{
    std::vector<std::filesystem::path> files;
    for (const auto& e : std::filesystem::directory_iterator(dir))
        if (e.path().extension() == ".kcat") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    std::string out;
    for (const auto& p : files) {
        std::ifstream in(p);
        std::stringstream buf;
        buf << in.rdbuf();
        cli::RunOptions o;
        o.max_degree = 3;
        o.seed = seed;
        o.verify_oracle = true;
        for (const auto& r : cli::run_source(buf.str(), o).reports) out += r.dump() + "\n";
    }
    return out;
}

std::string capture(const std::string& cmd)
{
    std::string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return out;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
    pclose(pipe);
    return out;
}

void c11_determinism(Item& it, std::uint64_t seed, const std::string& ws_dir, const std::string& kcat)
{
    const auto first = suite_json(ws_dir, seed);
    const auto second = suite_json(ws_dir, seed);
    it.expect(!first.empty(), "no workspaces under " + ws_dir);
    it.expect(first == second, "in-process runs differ");
    if (kcat.empty()) return;
    for (const auto& e : std::filesystem::directory_iterator(ws_dir)) {
        if (e.path().extension() != ".kcat") continue;
        const std::string cmd =
            kcat + " --json --verify-oracle --max-degree 3 --seed " + std::to_string(seed) + " " + e.path().string() + " 2>&1";
        const auto a = capture(cmd);
        const auto b = capture(cmd);
        it.expect(!a.empty() && a == b, e.path().filename().string() + ": kcat output differs between runs");
    }
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"acceptance criteria"};
    std::uint64_t seed = 1;
    std::string ws_dir = HM_WORKSPACES;
    std::string kcat = HM_KCAT;
    app.add_option("--seed", seed)->capture_default_str();
    app.add_option("--workspaces", ws_dir)->capture_default_str();
    app.add_option("--kcat", kcat, "kcat binary for the subprocess determinism check")->capture_default_str();
    CLI11_PARSE(app, argc, argv);

    const std::vector<std::pair<std::string, std::function<void(Item&)>>> items{
        {"bar complex d*d = 0 through degree 5", [&](Item& it) { c1_square(it, seed); }},
        {"H^0 equals the center", [&](Item& it) { c2_center(it, seed); }},
        {"known cohomologies", [&](Item& it) { c3_known(it); }},
        {"Ext over C^e equals HH, degrees <= 3", [&](Item& it) { c4_oracle(it, seed); }},
        {"long exact sequence for triangular categories", [&](Item& it) { c5_les(it); }},
        {"triangular ideals are idempotent with projective I(x,-)", [&](Item& it) { c6_structural(it); }},
        {"negative control A2 with <a>", [&](Item& it) { c7_negative(it); }},
        {"Happel consistency", [&](Item& it) { c8_happel(it); }},
        {"adjunction identities and Tor associativity", [&](Item& it) { c9_adjunction(it, seed); }},
        {"duality bridge Ext(M,DN) = Tor(N,M)", [&](Item& it) { c10_duality(it, seed); }},
        {"deterministic JSON for a fixed seed", [&](Item& it) { c11_determinism(it, seed, ws_dir, kcat); }},
    };

    int failed = 0;
    for (std::size_t k = 0; k < items.size(); ++k) {
        Item it;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            items[k].second(it);
        } catch (const std::exception& e) {
            it.bad.push_back(std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (secs > kBudget[k + 1]) it.bad.push_back("over budget: " + std::to_string(secs) + " s");
        const bool ok = it.bad.empty();
        failed += ok ? 0 : 1;
        std::printf("%-4s %2zu  %s  [%zu checks, %.2f s / %.0f s]\n", ok ? "PASS" : "FAIL", k + 1, items[k].first.c_str(), it.checks,
                    secs, kBudget[k + 1]);
        for (const auto& b : it.bad) std::printf("         %s\n", b.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria failed\n", failed, items.size());
    return failed == 0 ? 0 : 1;
}
