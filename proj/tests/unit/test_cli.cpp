#include "doctest.h"
#include "hm/error.hpp"
#include "hm/runner.hpp"

using namespace hm;
using nlohmann::json;

namespace {

using Dims = std::vector<std::size_t>;

const char* kA2 = R"(# A2
category A2 over Q
quiver
object 1 2
arrow a: 1 -> 2
end
ideal arrow in A2 gens: a
task les arrow
)";

const char* kDual = R"(category D over GF(32003)
quiver
object o
arrow x: o -> o
rel x*x = 0
end
module S over D left
dim o = 1
act x = [[0]]
end
task cohomology D
task happel D S
)";

const char* kTriangular = R"(category K over Q
table
object o
hom o o: e
comp e*e = e
id o = e
end
bimodule M over (K, K)
dim o o = 1
lact e at o = [[1]]
ract e at o = [[1]]
end
task cmp K K M
)";

const char* kCorrupted = R"(category Bad over Q
table
object o
hom o o: e
id o = e
end
task validate Bad
)";

const char* kSquare = R"(# commutative square with a two-term relation
category Sq over Q
quiver
object 1 2 3 4
arrow a: 1 -> 2
arrow b: 2 -> 4
arrow c: 1 -> 3
arrow d: 3 -> 4
rel b*a - 2*d*c = 0
end
module R over Sq right
dim 1 = 1
dim 2 = 1
act a = [[1]]
end
ideal I in Sq gens: 1/2*b*a + d*c, e_3
task validate R
)";

ws::Compiled build(const std::string& src) { return ws::compile(ws::parse(src)); }

void rejects(const std::string& src, ErrorCode code)
{
    try {
        build(src);
        FAIL("accepted: " << src);
    } catch (const Error& e) {
        CHECK_MESSAGE(e.code() == code, e.what());
    }
}

cli::RunOptions deg(std::size_t n)
{
    cli::RunOptions o;
    o.max_degree = n;
    return o;
}

}  // namespace

TEST_CASE("quiver workspaces")
{
    auto a2 = build(kA2).categories.at("A2").category;
    CHECK(a2->dim(0, 0) == 1);
    CHECK(a2->dim(0, 1) == 1);
    CHECK(a2->dim(1, 0) == 0);
    CHECK(a2->dim(1, 1) == 1);
    auto d = build(kDual);
    CHECK(d.categories.at("D").category->dim(0, 0) == 2);
    CHECK(d.categories.at("D").category->field() == FieldSpec::prime(32003));
    CHECK(d.modules.at("S").dims() == Dims{1});

    auto sq = build(kSquare);
    auto c = sq.categories.at("Sq").category;
    CHECK(c->dim(0, 3) == 1);
    CHECK(sq.modules.at("R").side() == Side::Right);
    CHECK(validate(sq.modules.at("R")).ok());
    // b*a = 2 d*c, so the first generator is 2 d*c in Hom(1,4)
    const auto& i = sq.ideals.at("I");
    CHECK(i.dim(0, 3) == 1);
    CHECK(i.dim(2, 2) == 1);
    CHECK(i.dim(2, 3) == 1);
    CHECK(i.dim(0, 1) == 0);
}

TEST_CASE("finiteness certification")
{
    rejects("category L over Q\nquiver\nobject o\narrow x: o -> o\n", ErrorCode::FinitenessError);
    ws::CompileOptions tight;
    tight.path_bound = 2;
    auto w = ws::parse("category T over Q\nquiver\nobject o\narrow x: o -> o\nrel x*x*x*x = 0\n");
    CHECK_THROWS_AS(ws::compile(w, tight), Error);
    CHECK(ws::compile(w).categories.at("T").category->dim(0, 0) == 4);
}

TEST_CASE("table workspaces and validation")
{
    auto t = build(kTriangular);
    CHECK(t.categories.at("K").category->dim(0, 0) == 1);
    CHECK(t.bimodules.at("M").dim(0, 0) == 1);
    auto bad = build(kCorrupted);
    CHECK_FALSE(bad.categories.at("Bad").violations.empty());
    CHECK_FALSE(bad.categories.at("Bad").category);
    auto r = cli::run_source(kCorrupted, deg(2));
    CHECK(r.status == cli::kExitInvalid);
    REQUIRE(r.reports.size() == 1);
    CHECK(r.reports[0]["task"] == "validate");
    CHECK_FALSE(r.reports[0]["violations"].empty());
}

TEST_CASE("every production accepts and rejects")
{
    auto syntax = [](const std::string& src) {
        try {
            ws::parse(src);
            FAIL("accepted: " << src);
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::SyntaxError);
            CHECK(std::string(e.what()).find("line") != std::string::npos);
        }
    };
    const std::string q = "category C over Q\nquiver\nobject 1 2\n";
    const std::string t = "category K over Q\ntable\nobject o\n";
    // category header
    CHECK_NOTHROW(ws::parse("category C over GF(7)\n"));
    syntax("category C over R\n");
    syntax("category C Q\n");
    // quiver / table keyword
    syntax("category C over Q\nobject 1\nquiver\n");
    // object
    CHECK(ws::parse(q).categories[0].objects.size() == 2);
    syntax("category C over Q\nquiver\nobject 1 -\n");
    // arrow
    CHECK_NOTHROW(ws::parse(q + "arrow a: 1 -> 2\n"));
    syntax(q + "arrow a 1 -> 2\n");
    syntax(q + "arrow a: 1 2\n");
    syntax(q + "arrow 1a: 1 -> 2\n");
    // rel
    CHECK(ws::parse(q + "arrow a: 1 -> 2\nrel a = 0\n").categories[0].relations.size() == 1);
    syntax(q + "rel a\n");
    syntax(q + "rel 2 = 0\n");
    syntax(q + "hom 1 2: a\n");
    // hom / comp / id
    CHECK_NOTHROW(ws::parse(t + "hom o o: e\ncomp e*e = e\nid o = e\n"));
    syntax(t + "hom o o e\n");
    syntax(t + "comp e e = e\n");
    syntax(t + "id o e\n");
    syntax(t + "arrow a: o -> o\n");
    // module
    CHECK_NOTHROW(ws::parse("module M over C left\ndim 1 = 2\nact a = [[1,0],[0,1]]\nend\n"));
    syntax("module M over C up\n");
    syntax("module M over C left\ndim 1 2\n");
    syntax("module M over C left\nact a = [[1,0]\n");
    syntax("module M over C left\nlact a at 1 = [[1]]\n");
    // bimodule
    CHECK_NOTHROW(ws::parse("bimodule M over (U, T)\ndim u t = 1\nlact g at t = [[1]]\nract f at u = [[1]]\nend\n"));
    syntax("bimodule M over U, T\n");
    syntax("bimodule M over (U, T)\nlact g = [[1]]\n");
    syntax("bimodule M over (U, T)\nact g = [[1]]\n");
    // ideal
    CHECK(ws::parse("ideal I in C gens: a, 2*b*a - c\n").ideals[0].gens.size() == 2);
    syntax("ideal I in C a\n");
    syntax("ideal I in C gens: 2\n");
    // task
    CHECK_NOTHROW(ws::parse("task cohomology C\n"));
    syntax("task homology C\n");
    // blocks
    syntax("end\n");
    syntax("dim 1 = 2\n");
}

TEST_CASE("name resolution")
{
    rejects("category C over Q\nquiver\nobject 1\narrow a: 1 -> 2\n", ErrorCode::UnresolvedName);
    rejects("module M over C left\n", ErrorCode::UnresolvedName);
    rejects(std::string(kA2) + "ideal J in A2 gens: b\n", ErrorCode::UnresolvedName);
    rejects(std::string(kA2) + "module M over A2 left\ndim 1 = 1\ndim 2 = 1\nend\n", ErrorCode::UnresolvedName);
    rejects(std::string(kA2) + "module M over A2 left\ndim 1 = 1\ndim 2 = 1\nact a = [[1,1]]\nend\n", ErrorCode::DimensionMismatch);
    rejects(std::string(kA2) + "category A2 over Q\nquiver\nobject 1\n", ErrorCode::SyntaxError);
    auto r = cli::run_source(std::string(kA2) + "task cohomology Nope\n", deg(1));
    CHECK(r.reports.back()["exit"] == cli::kExitInvalid);
    CHECK(r.reports.back()["status"] == "error");
}

TEST_CASE("print and parse form a fixpoint")
{
    for (const char* src : {kA2, kDual, kTriangular, kCorrupted, kSquare}) {
        auto w = ws::parse(src);
        auto text = ws::print(w);
        CHECK(ws::parse(text) == w);
        CHECK(ws::print(ws::parse(text)) == text);
    }
}

TEST_CASE("runner reports")
{
    auto d = cli::run_source(kDual, deg(3));
    CHECK(d.status == cli::kExitOk);
    REQUIRE(d.reports.size() == 2);
    CHECK(d.reports[0]["schema"] == 1);
    CHECK(d.reports[0]["dims"]["HC"].get<Dims>() == Dims{2, 1, 1, 1});
    CHECK(d.reports[1]["happel"]["e"].get<Dims>() == Dims{1, 1, 1, 1});

    auto t = cli::run_source(kTriangular, deg(3));
    CHECK(t.status == cli::kExitOk);
    for (const auto& e : t.reports[0]["exact_at"]) CHECK(e.get<bool>());
    CHECK(t.reports[0]["exact_at"].size() == 12);

    auto a = cli::run_source(kA2, deg(2));
    CHECK(a.status == cli::kExitHypothesis);
    CHECK(a.reports[0]["hypotheses"]["idempotent"] == false);

    // the machine form survives a text round trip and drives the human form
    for (const auto& r : d.reports) {
        CHECK(json::parse(r.dump()) == r);
        CHECK(cli::render_human(json::parse(r.dump())) == cli::render_human(r));
    }
}

TEST_CASE("JSON output is deterministic for a fixed seed")
{
    cli::RunOptions o = deg(2);
    o.seed = 7;
    o.verify_oracle = true;
    std::string first, second;
    for (const auto& r : cli::run_source(kDual, o).reports) first += r.dump() + "\n";
    for (const auto& r : cli::run_source(kDual, o).reports) second += r.dump() + "\n";
    CHECK(first == second);
    CHECK(first.find("materialized bar resolution") != std::string::npos);
}

TEST_CASE("field override")
{
    cli::RunOptions o = deg(1);
    o.field = ws::parse_field("gf:5");
    auto r = cli::run_source(kTriangular, o);
    CHECK(r.status == cli::kExitOk);
    ws::CompileOptions co;
    co.field = FieldSpec::prime(5);
    CHECK(ws::compile(ws::parse(kDual), co).categories.at("D").category->field() == FieldSpec::prime(5));
    CHECK_THROWS_AS(ws::parse_field("gf:6"), Error);
    CHECK_THROWS_AS(ws::parse_field("R"), Error);
}
