#include "hm/runner.hpp"

#include <algorithm>
#include <sstream>

#include "hm/error.hpp"
#include "hm/hochschild.hpp"
#include "hm/theorems.hpp"

namespace hm::cli {

using nlohmann::json;

namespace {

json base_report(const std::string& task, const std::vector<std::string>& args, std::size_t degrees)
{
    return json{{"schema", kReportSchema}, {"task", task},       {"args", args},      {"status", "pass"},
                {"exit", kExitOk},         {"hypotheses", nullptr}, {"degrees", degrees}, {"dims", json::object()},
                {"exact_at", json::array()}, {"notes", json::array()}};
}

void set_exit(json& r, int code)
{
    if (code > r["exit"].get<int>()) r["exit"] = code;
    if (code != kExitOk && r["status"] == "pass") r["status"] = "fail";
}

json identification(const Identification& i)
{
    return json{{"name", i.name}, {"lhs", i.lhs}, {"rhs", i.rhs}, {"holds", i.holds}};
}

json audit_json(const HypothesisAudit& a)
{
    return json{{"idempotent", a.idempotent}, {"projective", a.projective}, {"witness", a.witness}, {"ok", a.ok()}};
}

int error_exit(const Error& e)
{
    switch (e.code()) {
        case ErrorCode::HypothesisFailed: return kExitHypothesis;
        case ErrorCode::Internal:
        case ErrorCode::ResolutionTooShort: return kExitVerify;
        default: return kExitInvalid;
    }
}

void pipeline_into(json& r, const PipelineReport& p)
{
    r["hypotheses"] = audit_json(p.audit);
    r["dims"] = json{{"ExtCI", p.les.ext_ci}, {"HC", p.les.hc}, {"ExtCH", p.les.ext_ch}, {"HB", p.hb}};
    r["exact_at"] = p.les.exact_at;
    for (const auto& n : p.les.notes) r["notes"].push_back(n);
    json ids = json::array();
    for (const auto& i : p.identifications) ids.push_back(identification(i));
    r["identifications"] = ids;
    if (!p.ok()) set_exit(r, kExitVerify);
}

const ws::BuiltCategory& category_arg(const ws::Compiled& c, const std::string& name)
{
    auto it = c.categories.find(name);
    if (it == c.categories.end()) throw Error(ErrorCode::UnresolvedName, "unknown category '" + name + "'");
    return it->second;
}

const TwoSidedIdeal& ideal_arg(const ws::Compiled& c, const std::string& name)
{
    auto it = c.ideals.find(name);
    if (it == c.ideals.end()) throw Error(ErrorCode::UnresolvedName, "unknown ideal '" + name + "'");
    return it->second;
}

void need_args(const ws::TaskDecl& t, std::size_t n)
{
    if (t.args.size() != n)
        throw Error(ErrorCode::SyntaxError, "task " + t.kind + " takes " + std::to_string(n) + " argument(s)");
}

void task_cohomology(json& r, const ws::Compiled& c, const ws::TaskDecl& t, const RunOptions& o)
{
    need_args(t, 1);
    const CatPtr cat = category_arg(c, t.args[0]).category;
    const std::size_t n = o.max_degree;
    const auto hc = hochschild_cohomology(cat, n);
    r["dims"]["HC"] = hc;
    json ids = json::array();
    const std::size_t z = center(cat).dim;
    ids.push_back(identification({"H^0 = center", {hc[0]}, {z}, hc[0] == z}));
    const CatPtr ce = enveloping(cat);
    const long sq = hochschild_square_check(cat, regular_bimodule(cat, ce), n);
    ids.push_back(identification({"d*d = 0", {static_cast<std::size_t>(sq < 0 ? 0 : 1)}, {0}, sq < 0}));
    const long sr = hochschild_square_check(cat, random_module(ce, o.seed), n);
    ids.push_back(identification({"d*d = 0, random coefficients", {static_cast<std::size_t>(sr < 0 ? 0 : 1)}, {0}, sr < 0}));
    if (o.verify_oracle) {
        const std::size_t low = std::min<std::size_t>(n, 2);
        const auto reg = regular_bimodule(cat, ce);
        const auto e = ext(reg, reg, low);
        ids.push_back(identification({"Ext over the enveloping category", e, std::vector<std::size_t>(hc.begin(), hc.begin() + low + 1),
                                      std::equal(e.begin(), e.end(), hc.begin())}));
        const auto bar = hom_complex(bar_resolution(cat, ce, low + 1), reg).cohomology();
        ids.push_back(identification({"materialized bar resolution", bar, std::vector<std::size_t>(hc.begin(), hc.begin() + low + 1),
                                      std::equal(bar.begin(), bar.end(), hc.begin())}));
    }
    r["identifications"] = ids;
    for (const auto& i : ids)
        if (!i["holds"].get<bool>()) set_exit(r, kExitVerify);
    r["notes"].push_back("verified up to degree " + std::to_string(n));
}

void task_ideal_check(json& r, const ws::Compiled& c, const ws::TaskDecl& t, const RunOptions& o)
{
    need_args(t, 1);
    const TwoSidedIdeal& i = ideal_arg(c, t.args[0]);
    r["hypotheses"] = audit_json(audit_hypotheses(i));
    const CheckReport rep = strongly_idempotent_check(i.parent(), i, o.max_degree);
    json fails = json::array();
    for (const auto& f : rep.failures)
        fails.push_back(json{{"condition", f.condition}, {"mirrored", f.mirrored}, {"sample", f.sample},
                             {"object", i.parent()->object(f.object)}, {"degree", f.degree}, {"dim", f.dim}});
    r["failures"] = fails;
    r["checks"] = rep.checks;
    for (const auto& n : rep.notes) r["notes"].push_back(n);
    if (!rep.pass()) set_exit(r, kExitHypothesis);
}

void task_les(json& r, const ws::Compiled& c, const ws::TaskDecl& t, const RunOptions& o)
{
    need_args(t, 1);
    const TwoSidedIdeal& i = ideal_arg(c, t.args[0]);
    const HypothesisAudit audit = audit_hypotheses(i);
    r["hypotheses"] = audit_json(audit);
    if (!audit.ok()) {
        r["notes"].push_back("hypothesis failed: " + audit.witness);
        set_exit(r, kExitHypothesis);
        return;
    }
    pipeline_into(r, theorem_les_pipeline(i.parent(), i, o.max_degree));
}

void task_cmp(json& r, const ws::Compiled& c, const ws::TaskDecl& t, const RunOptions& o)
{
    need_args(t, 3);
    const CatPtr tc = category_arg(c, t.args[0]).category;
    const CatPtr uc = category_arg(c, t.args[1]).category;
    auto it = c.bimodules.find(t.args[2]);
    if (it == c.bimodules.end()) throw Error(ErrorCode::UnresolvedName, "unknown bimodule '" + t.args[2] + "'");
    const auto& bases = c.bimodule_bases.at(t.args[2]);
    if (bases.first != t.args[1] || bases.second != t.args[0])
        throw Error(ErrorCode::BaseMismatch, "bimodule " + t.args[2] + " is not over (" + t.args[1] + ", " + t.args[0] + ")");
    pipeline_into(r, cmp_pipeline(tc, uc, it->second, o.max_degree));
}

void task_happel(json& r, const ws::Compiled& c, const ws::TaskDecl& t, const RunOptions& o)
{
    need_args(t, 2);
    const CatPtr uc = category_arg(c, t.args[0]).category;
    auto it = c.modules.find(t.args[1]);
    if (it == c.modules.end()) throw Error(ErrorCode::UnresolvedName, "unknown module '" + t.args[1] + "'");
    if (c.module_category.at(t.args[1]) != t.args[0] || it->second.side() != Side::Left)
        throw Error(ErrorCode::BaseMismatch, "module " + t.args[1] + " is not a left module over " + t.args[0]);
    const HappelReport h = happel_pipeline(uc, it->second, o.max_degree);
    pipeline_into(r, h.pipeline);
    json checks = json::array();
    for (const auto& i : h.checks) checks.push_back(identification(i));
    r["happel"] = json{{"h", h.h}, {"e", h.e}, {"HU", h.h_u}, {"HL", h.h_lambda}, {"checks", checks}};
    if (!h.ok()) set_exit(r, kExitVerify);
}

void task_validate(json& r, const ws::Compiled& c, const ws::TaskDecl& t)
{
    need_args(t, 1);
    const std::string& name = t.args[0];
    std::vector<std::string> v;
    if (auto it = c.categories.find(name); it != c.categories.end()) v = it->second.violations;
    else if (auto m = c.modules.find(name); m != c.modules.end()) v = validate(m->second).violations;
    else if (auto i = c.ideals.find(name); i != c.ideals.end()) v = validate(i->second).violations;
    else if (!c.bimodules.count(name)) throw Error(ErrorCode::UnresolvedName, "unknown name '" + name + "'");
    // bimodules are validated on construction
    r["violations"] = v;
    if (!v.empty()) set_exit(r, kExitInvalid);
}

json run_task(const ws::Compiled& c, const ws::TaskDecl& t, const RunOptions& o)
{
    json r = base_report(t.kind, t.args, o.max_degree);
    try {
        if (t.kind == "cohomology") task_cohomology(r, c, t, o);
        else if (t.kind == "ideal-check") task_ideal_check(r, c, t, o);
        else if (t.kind == "les") task_les(r, c, t, o);
        else if (t.kind == "cmp") task_cmp(r, c, t, o);
        else if (t.kind == "happel") task_happel(r, c, t, o);
        else task_validate(r, c, t);
    } catch (const Error& e) {
        r["status"] = "error";
        r["error"] = e.what();
        set_exit(r, error_exit(e));
    }
    return r;
}

}  // namespace

RunResult run(const ws::Workspace& w, const RunOptions& opts)
{
    RunResult out;
    ws::CompileOptions co;
    co.field = opts.field;
    co.path_bound = opts.path_bound;
    ws::Compiled c;
    try {
        c = ws::compile(w, co);
    } catch (const Error& e) {
        json r = base_report("parse", {}, opts.max_degree);
        r["status"] = "error";
        r["error"] = e.what();
        r["exit"] = kExitInvalid;
        out.reports.push_back(r);
        out.status = kExitInvalid;
        return out;
    }
    for (const auto& d : w.categories) {
        const auto& b = c.categories.at(d.name);
        if (b.violations.empty()) continue;
        json r = base_report("validate", {d.name}, opts.max_degree);
        r["violations"] = b.violations;
        set_exit(r, kExitInvalid);
        out.reports.push_back(r);
    }
    if (!out.reports.empty()) {
        out.status = kExitInvalid;
        return out;
    }
    for (const auto& t : w.tasks) {
        out.reports.push_back(run_task(c, t, opts));
        out.status = std::max(out.status, out.reports.back()["exit"].get<int>());
    }
    return out;
}

RunResult run_source(const std::string& source, const RunOptions& opts)
{
    ws::Workspace w;
    try {
        w = ws::parse(source);
    } catch (const Error& e) {
        RunResult out;
        json r = base_report("parse", {}, opts.max_degree);
        r["status"] = "error";
        r["error"] = e.what();
        r["exit"] = kExitInvalid;
        out.reports.push_back(r);
        out.status = kExitInvalid;
        return out;
    }
    return run(w, opts);
}

std::string render_human(const json& r)
{
    std::ostringstream o;
    o << "task " << r["task"].get<std::string>();
    for (const auto& a : r["args"]) o << " " << a.get<std::string>();
    o << ": " << r["status"].get<std::string>() << " (exit " << r["exit"].get<int>() << ")\n";
    if (r.contains("error")) o << "  error: " << r["error"].get<std::string>() << "\n";
    if (r["hypotheses"].is_object()) {
        const auto& h = r["hypotheses"];
        o << "  idempotent: " << (h["idempotent"].get<bool>() ? "yes" : "no") << "; I(x,-) projective:";
        for (const auto& p : h["projective"]) o << (p.get<bool>() ? " yes" : " no");
        o << "\n";
        if (!h["witness"].get<std::string>().empty()) o << "  witness: " << h["witness"].get<std::string>() << "\n";
    }
    if (!r["dims"].empty()) {
        o << "  n";
        for (const auto& [k, v] : r["dims"].items()) o << "\t" << k;
        o << "\n";
        std::size_t rows = 0;
        for (const auto& [k, v] : r["dims"].items()) rows = std::max(rows, v.size());
        for (std::size_t n = 0; n < rows; ++n) {
            o << "  " << n;
            for (const auto& [k, v] : r["dims"].items()) o << "\t" << (n < v.size() ? std::to_string(v[n].get<std::size_t>()) : "");
            o << "\n";
        }
    }
    if (!r["exact_at"].empty()) {
        std::size_t good = 0;
        for (const auto& e : r["exact_at"]) good += e.get<bool>() ? 1 : 0;
        o << "  exact at " << good << "/" << r["exact_at"].size() << " nodes\n";
    }
    auto ids = [&](const json& list) {
        for (const auto& i : list) {
            o << "  " << (i["holds"].get<bool>() ? "ok  " : "FAIL") << " " << i["name"].get<std::string>() << ": " << i["lhs"].dump()
              << " vs " << i["rhs"].dump() << "\n";
        }
    };
    if (r.contains("identifications")) ids(r["identifications"]);
    if (r.contains("happel")) {
        const auto& h = r["happel"];
        o << "  h = " << h["h"].get<std::size_t>() << ", e = " << h["e"].dump() << "\n";
        ids(h["checks"]);
    }
    if (r.contains("failures")) {
        o << "  " << r["checks"].get<std::size_t>() << " groups checked, " << r["failures"].size() << " nonvanishing\n";
        for (const auto& f : r["failures"])
            o << "  condition (" << f["condition"].get<std::string>() << ")" << (f["mirrored"].get<bool>() ? " on the opposite" : "")
              << ": sample " << f["sample"].get<std::size_t>() << ", object " << f["object"].get<std::string>() << ", degree "
              << f["degree"].get<std::size_t>() << ", dim " << f["dim"].get<std::size_t>() << "\n";
    }
    if (r.contains("violations"))
        for (const auto& v : r["violations"]) o << "  violation: " << v.get<std::string>() << "\n";
    for (const auto& n : r["notes"]) o << "  note: " << n.get<std::string>() << "\n";
    return o.str();
}

}  // namespace hm::cli
