#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "hm/ideals.hpp"
#include "hm/module.hpp"
#include "hm/quiver.hpp"

namespace hm::ws {

/// c * path, the path written right to left ("b*a" is a then b).
struct Term {
    mpq_class coeff;
    std::vector<std::string> path;

    friend bool operator==(const Term&, const Term&) = default;
};
using LinComb = std::vector<Term>;

using MatLit = std::vector<std::vector<mpq_class>>;

struct ArrowDecl {
    std::string name, src, dst;
    friend bool operator==(const ArrowDecl&, const ArrowDecl&) = default;
};

struct HomDecl {
    std::string x, y;
    std::vector<std::string> labels;
    friend bool operator==(const HomDecl&, const HomDecl&) = default;
};

struct CompDecl {
    std::string g, f;
    LinComb value;
    friend bool operator==(const CompDecl&, const CompDecl&) = default;
};

struct IdDecl {
    std::string x;
    LinComb value;
    friend bool operator==(const IdDecl&, const IdDecl&) = default;
};

struct CategoryDecl {
    std::string name;
    std::string field;  // "Q" or "GF(p)"
    bool quiver = true;
    std::vector<std::string> objects;
    std::vector<ArrowDecl> arrows;
    std::vector<LinComb> relations;  // each = 0
    std::vector<HomDecl> homs;
    std::vector<CompDecl> comps;
    std::vector<IdDecl> ids;
    friend bool operator==(const CategoryDecl&, const CategoryDecl&) = default;
};

struct DimDecl {
    std::string a, b;  // b empty for modules
    std::size_t dim = 0;
    friend bool operator==(const DimDecl&, const DimDecl&) = default;
};

struct ActDecl {
    std::string morphism, at;  // at empty for modules
    MatLit matrix;
    friend bool operator==(const ActDecl&, const ActDecl&) = default;
};

struct ModuleDecl {
    std::string name, category;
    Side side = Side::Left;
    std::vector<DimDecl> dims;
    std::vector<ActDecl> acts;
    friend bool operator==(const ModuleDecl&, const ModuleDecl&) = default;
};

struct BimoduleDecl {
    std::string name, u, t;
    std::vector<DimDecl> dims;
    std::vector<ActDecl> lacts;
    std::vector<ActDecl> racts;
    friend bool operator==(const BimoduleDecl&, const BimoduleDecl&) = default;
};

struct IdealDecl {
    std::string name, category;
    std::vector<LinComb> gens;
    friend bool operator==(const IdealDecl&, const IdealDecl&) = default;
};

struct TaskDecl {
    std::string kind;
    std::vector<std::string> args;
    friend bool operator==(const TaskDecl&, const TaskDecl&) = default;
};

/// The parsed file; declarations keep their source order within each kind.
struct Workspace {
    std::vector<CategoryDecl> categories;
    std::vector<ModuleDecl> modules;
    std::vector<BimoduleDecl> bimodules;
    std::vector<IdealDecl> ideals;
    std::vector<TaskDecl> tasks;
    friend bool operator==(const Workspace&, const Workspace&) = default;
};

/// Throws Error(SyntaxError) with "line L, column C".
Workspace parse(const std::string& source);
/// Canonical text; parse(print(w)) == w.
std::string print(const Workspace& w);

/// A category as built, or the violations that kept it from being built.
struct BuiltCategory {
    CatPtr category;
    std::vector<std::string> violations;
    std::vector<std::vector<std::string>> words;  // per global basis morphism, generator names in traversal order
    std::map<std::string, std::size_t> generator_index;  // name -> position in generators
    std::vector<std::size_t> gen_src, gen_dst;
    std::vector<Mat> gen_coords;
};

struct Compiled {
    std::map<std::string, BuiltCategory> categories;
    std::map<std::string, CatModule> modules;
    std::map<std::string, Bimodule> bimodules;
    std::map<std::string, TwoSidedIdeal> ideals;
    std::map<std::string, std::string> ideal_category;
    std::map<std::string, std::pair<std::string, std::string>> bimodule_bases;
    std::map<std::string, std::string> module_category;
};

struct CompileOptions {
    std::optional<FieldSpec> field;  // overrides every declared field
    std::size_t path_bound = kDefaultPathBound;
};

/// Resolves names and builds every object. Invalid table categories are kept
/// with their violations; modules over them are skipped. Throws
/// Error(UnresolvedName), Error(FinitenessError) and construction errors.
Compiled compile(const Workspace& w, const CompileOptions& opts = {});

/// "Q" or "GF(p)" (also "gf:p" on the command line).
FieldSpec parse_field(const std::string& s);

}  // namespace hm::ws
