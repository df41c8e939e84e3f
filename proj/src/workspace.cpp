#include "hm/workspace.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>

#include "hm/error.hpp"

namespace hm::ws {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

class Cursor {
public:
    Cursor(const std::string& text, std::size_t line) : s_(text), line_(line) {}

    [[noreturn]] void fail(const std::string& msg) const
    {
        throw Error(ErrorCode::SyntaxError, "line " + std::to_string(line_) + ", column " + std::to_string(pos_ + 1) + ": " + msg);
    }

    void skip() { while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_; }
    bool done() { skip(); return pos_ >= s_.size(); }
    char peek() { skip(); return pos_ < s_.size() ? s_[pos_] : '\0'; }

    bool eat(char c)
    {
        if (peek() != c) return false;
        ++pos_;
        return true;
    }
    bool eat(const std::string& tok)
    {
        skip();
        if (s_.compare(pos_, tok.size(), tok) != 0) return false;
        pos_ += tok.size();
        return true;
    }
    void expect(char c)
    {
        if (!eat(c)) fail(std::string("expected '") + c + "'");
    }
    void expect(const std::string& tok)
    {
        if (!eat(tok)) fail("expected '" + tok + "'");
    }
    void finish()
    {
        if (!done()) fail("unexpected '" + s_.substr(pos_) + "'");
    }

    /// Object ids and names: a run of [A-Za-z0-9_'].
    std::string id()
    {
        skip();
        const std::size_t start = pos_;
        while (pos_ < s_.size() && ident_char(s_[pos_])) ++pos_;
        if (start == pos_) fail("expected a name");
        return s_.substr(start, pos_ - start);
    }
    /// Morphism names start with a letter or '_'.
    std::string morphism()
    {
        if (!ident_start(peek())) fail("expected a morphism name");
        return id();
    }
    std::string word()
    {
        skip();
        const std::size_t start = pos_;
        while (pos_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected a word");
        return s_.substr(start, pos_ - start);
    }
    std::size_t natural()
    {
        skip();
        const std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected a nonnegative integer");
        return std::stoul(s_.substr(start, pos_ - start));
    }
    mpq_class rational()
    {
        skip();
        bool negative = false;
        if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) negative = s_[pos_++] == '-';
        const std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected a number");
        std::string num = s_.substr(start, pos_ - start);
        if (pos_ < s_.size() && s_[pos_] == '/') {
            ++pos_;
            const std::size_t ds = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (ds == pos_) fail("expected a denominator");
            std::string den = s_.substr(ds, pos_ - ds);
            if (mpz_class(den) == 0) fail("zero denominator");
            num += "/" + den;
        }
        mpq_class q(num);
        q.canonicalize();
        return negative ? mpq_class(-q) : q;
    }
    bool digit_next() { return std::isdigit(static_cast<unsigned char>(peek())); }

    std::vector<std::string> path()
    {
        std::vector<std::string> p{morphism()};
        while (peek() == '*') {
            ++pos_;
            p.push_back(morphism());
        }
        return p;
    }

    LinComb lincomb()
    {
        LinComb lc;
        skip();
        if (peek() == '0') {
            const std::size_t save = pos_;
            ++pos_;
            if (done() || peek() == ',' || peek() == '=') return lc;
            pos_ = save;
        }
        bool first = true;
        while (true) {
            mpq_class sign = 1;
            if (eat('-')) sign = -1;
            else if (!eat('+') && !first) break;
            first = false;
            mpq_class c = 1;
            if (digit_next()) {
                c = rational();
                eat('*');
            }
            if (!ident_start(peek())) fail("expected a morphism after the coefficient");
            lc.push_back({mpq_class(sign * c), path()});
            const char n = peek();
            if (n != '+' && n != '-') break;
        }
        return lc;
    }

    MatLit matrix()
    {
        MatLit m;
        expect('[');
        if (eat(']')) return m;
        do {
            expect('[');
            std::vector<mpq_class> row;
            if (!eat(']')) {
                do row.push_back(rational());
                while (eat(','));
                expect(']');
            }
            m.push_back(std::move(row));
        } while (eat(','));
        expect(']');
        return m;
    }

private:
    const std::string& s_;
    std::size_t line_;
    std::size_t pos_ = 0;
};

enum class Block { None, Category, Module, Bimodule };

std::string print_rational(const mpq_class& q) { return q.get_str(); }

std::string print_lincomb(const LinComb& lc)
{
    if (lc.empty()) return "0";
    std::string s;
    for (std::size_t i = 0; i < lc.size(); ++i) {
        const auto& t = lc[i];
        const bool neg = t.coeff < 0;
        const mpq_class a = neg ? mpq_class(-t.coeff) : t.coeff;
        if (i == 0) s += neg ? "-" : "";
        else s += neg ? " - " : " + ";
        if (a != 1) s += print_rational(a) + "*";
        for (std::size_t j = 0; j < t.path.size(); ++j) s += (j ? "*" : "") + t.path[j];
    }
    return s;
}

std::string print_matrix(const MatLit& m)
{
    std::string s = "[";
    for (std::size_t i = 0; i < m.size(); ++i) {
        s += i ? ",[" : "[";
        for (std::size_t j = 0; j < m[i].size(); ++j) s += (j ? "," : "") + print_rational(m[i][j]);
        s += "]";
    }
    return s + "]";
}

}  // namespace

FieldSpec parse_field(const std::string& s)
{
    if (s == "Q" || s == "q") return FieldSpec::rationals();
    std::string digits;
    if (s.rfind("GF(", 0) == 0 && s.size() > 4 && s.back() == ')') digits = s.substr(3, s.size() - 4);
    else if (s.rfind("gf:", 0) == 0) digits = s.substr(3);
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos || digits.size() > 10)
        throw Error(ErrorCode::SyntaxError, "unknown field '" + s + "'");
    return FieldSpec::prime(static_cast<std::uint32_t>(std::stoull(digits)));
}

Workspace parse(const std::string& source)
{
    Workspace w;
    Block block = Block::None;
    std::istringstream in(source);
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const auto hash = raw.find('#');
        const std::string text = hash == std::string::npos ? raw : raw.substr(0, hash);
        Cursor c(text, lineno);
        if (c.done()) continue;
        const std::string kw = c.id();

        if (kw == "end") {
            if (block == Block::None) c.fail("'end' outside a block");
            block = Block::None;
            c.finish();
        } else if (kw == "category") {
            CategoryDecl d;
            d.name = c.id();
            c.expect("over");
            d.field = c.word();
            try {
                d.field = parse_field(d.field).to_string();
            } catch (const Error& e) {
                c.fail(e.what());
            }
            c.finish();
            w.categories.push_back(std::move(d));
            block = Block::Category;
        } else if (kw == "module") {
            ModuleDecl d;
            d.name = c.id();
            c.expect("over");
            d.category = c.id();
            const std::string side = c.id();
            if (side == "left") d.side = Side::Left;
            else if (side == "right") d.side = Side::Right;
            else c.fail("expected 'left' or 'right'");
            c.finish();
            w.modules.push_back(std::move(d));
            block = Block::Module;
        } else if (kw == "bimodule") {
            BimoduleDecl d;
            d.name = c.id();
            c.expect("over");
            c.expect('(');
            d.u = c.id();
            c.expect(',');
            d.t = c.id();
            c.expect(')');
            c.finish();
            w.bimodules.push_back(std::move(d));
            block = Block::Bimodule;
        } else if (kw == "ideal") {
            IdealDecl d;
            d.name = c.id();
            c.expect("in");
            d.category = c.id();
            c.expect("gens");
            c.expect(':');
            if (!c.done()) {
                do d.gens.push_back(c.lincomb());
                while (c.eat(','));
            }
            c.finish();
            w.ideals.push_back(std::move(d));
            block = Block::None;
        } else if (kw == "task") {
            TaskDecl d;
            d.kind = c.word();
            static const std::vector<std::string> kinds{"cohomology", "ideal-check", "les", "cmp", "happel", "validate"};
            if (std::find(kinds.begin(), kinds.end(), d.kind) == kinds.end()) c.fail("unknown task '" + d.kind + "'");
            while (!c.done()) d.args.push_back(c.id());
            w.tasks.push_back(std::move(d));
            block = Block::None;
        } else if (block == Block::Category) {
            CategoryDecl& d = w.categories.back();
            const bool fresh = d.objects.empty() && d.arrows.empty() && d.homs.empty();
            if (kw == "quiver" || kw == "table") {
                if (!fresh) c.fail("'" + kw + "' must precede the category body");
                d.quiver = kw == "quiver";
                c.finish();
            } else if (kw == "object") {
                while (!c.done()) d.objects.push_back(c.id());
            } else if (kw == "arrow" && d.quiver) {
                ArrowDecl a;
                a.name = c.morphism();
                c.expect(':');
                a.src = c.id();
                c.expect("->");
                a.dst = c.id();
                c.finish();
                d.arrows.push_back(std::move(a));
            } else if (kw == "rel" && d.quiver) {
                LinComb lhs = c.lincomb();
                c.expect('=');
                LinComb rhs = c.lincomb();
                c.finish();
                for (auto& t : rhs) lhs.push_back({mpq_class(-t.coeff), std::move(t.path)});
                d.relations.push_back(std::move(lhs));
            } else if (kw == "hom" && !d.quiver) {
                HomDecl h;
                h.x = c.id();
                h.y = c.id();
                c.expect(':');
                while (!c.done()) {
                    h.labels.push_back(c.morphism());
                    c.eat(',');
                }
                d.homs.push_back(std::move(h));
            } else if (kw == "comp" && !d.quiver) {
                CompDecl cd;
                cd.g = c.morphism();
                c.expect('*');
                cd.f = c.morphism();
                c.expect('=');
                cd.value = c.lincomb();
                c.finish();
                d.comps.push_back(std::move(cd));
            } else if (kw == "id" && !d.quiver) {
                IdDecl i;
                i.x = c.id();
                c.expect('=');
                i.value = c.lincomb();
                c.finish();
                d.ids.push_back(std::move(i));
            } else {
                Cursor(text, lineno).fail("'" + kw + "' is not allowed in a " + (d.quiver ? "quiver" : "table") + " block");
            }
        } else if (block == Block::Module || block == Block::Bimodule) {
            const bool bi = block == Block::Bimodule;
            if (kw == "dim") {
                DimDecl dd;
                dd.a = c.id();
                if (bi) dd.b = c.id();
                c.expect('=');
                dd.dim = c.natural();
                c.finish();
                (bi ? w.bimodules.back().dims : w.modules.back().dims).push_back(std::move(dd));
            } else if ((!bi && kw == "act") || (bi && (kw == "lact" || kw == "ract"))) {
                ActDecl a;
                a.morphism = c.morphism();
                if (bi) {
                    c.expect("at");
                    a.at = c.id();
                }
                c.expect('=');
                a.matrix = c.matrix();
                c.finish();
                if (!bi) w.modules.back().acts.push_back(std::move(a));
                else (kw == "lact" ? w.bimodules.back().lacts : w.bimodules.back().racts).push_back(std::move(a));
            } else {
                Cursor(text, lineno).fail("'" + kw + "' is not allowed in a " + (bi ? "bimodule" : "module") + " block");
            }
        } else {
            Cursor(text, lineno).fail("unknown declaration '" + kw + "'");
        }
    }
    return w;
}

std::string print(const Workspace& w)
{
    std::ostringstream o;
    auto objects = [&](const std::vector<std::string>& objs) {
        if (objs.empty()) return;
        o << "object";
        for (const auto& x : objs) o << " " << x;
        o << "\n";
    };
    for (const auto& d : w.categories) {
        o << "category " << d.name << " over " << d.field << "\n" << (d.quiver ? "quiver" : "table") << "\n";
        objects(d.objects);
        for (const auto& a : d.arrows) o << "arrow " << a.name << ": " << a.src << " -> " << a.dst << "\n";
        for (const auto& r : d.relations) o << "rel " << print_lincomb(r) << " = 0\n";
        for (const auto& h : d.homs) {
            o << "hom " << h.x << " " << h.y << ":";
            for (const auto& l : h.labels) o << " " << l;
            o << "\n";
        }
        for (const auto& cd : d.comps) o << "comp " << cd.g << "*" << cd.f << " = " << print_lincomb(cd.value) << "\n";
        for (const auto& i : d.ids) o << "id " << i.x << " = " << print_lincomb(i.value) << "\n";
        o << "end\n";
    }
    for (const auto& d : w.modules) {
        o << "module " << d.name << " over " << d.category << " " << side_name(d.side) << "\n";
        for (const auto& dd : d.dims) o << "dim " << dd.a << " = " << dd.dim << "\n";
        for (const auto& a : d.acts) o << "act " << a.morphism << " = " << print_matrix(a.matrix) << "\n";
        o << "end\n";
    }
    for (const auto& d : w.bimodules) {
        o << "bimodule " << d.name << " over (" << d.u << ", " << d.t << ")\n";
        for (const auto& dd : d.dims) o << "dim " << dd.a << " " << dd.b << " = " << dd.dim << "\n";
        for (const auto& a : d.lacts) o << "lact " << a.morphism << " at " << a.at << " = " << print_matrix(a.matrix) << "\n";
        for (const auto& a : d.racts) o << "ract " << a.morphism << " at " << a.at << " = " << print_matrix(a.matrix) << "\n";
        o << "end\n";
    }
    for (const auto& d : w.ideals) {
        o << "ideal " << d.name << " in " << d.category << " gens:";
        for (std::size_t i = 0; i < d.gens.size(); ++i) o << (i ? ", " : " ") << print_lincomb(d.gens[i]);
        o << "\n";
    }
    for (const auto& t : w.tasks) {
        o << "task " << t.kind;
        for (const auto& a : t.args) o << " " << a;
        o << "\n";
    }
    return o.str();
}

namespace {

std::size_t find_object(const std::vector<std::string>& objs, const std::string& name, const std::string& where)
{
    for (std::size_t i = 0; i < objs.size(); ++i)
        if (objs[i] == name) return i;
    throw Error(ErrorCode::UnresolvedName, "unknown object '" + name + "' in " + where);
}

Mat to_mat(const FieldSpec& f, const MatLit& m, std::size_t rows, std::size_t cols, const std::string& where)
{
    const bool shape_ok = m.empty() ? rows == 0 || cols == 0 : m.size() == rows;
    if (!shape_ok) throw Error(ErrorCode::DimensionMismatch, where + ": expected " + std::to_string(rows) + " rows");
    Mat out(f, rows, cols);
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i].size() != cols) throw Error(ErrorCode::DimensionMismatch, where + ": expected " + std::to_string(cols) + " columns");
        for (std::size_t j = 0; j < cols; ++j) out.set(i, j, from_rational(f, m[i][j]));
    }
    return out;
}

struct Evaluated {
    std::size_t src, dst;
    Mat coords;
};

// The path is written right to left.
Evaluated eval_path(const BuiltCategory& b, const std::vector<std::string>& path, const std::string& where)
{
    const auto& c = *b.category;
    std::optional<Evaluated> cur;
    for (std::size_t i = path.size(); i-- > 0;) {
        auto it = b.generator_index.find(path[i]);
        if (it == b.generator_index.end()) throw Error(ErrorCode::UnresolvedName, "unknown morphism '" + path[i] + "' in " + where);
        const std::size_t g = it->second;
        if (!cur) {
            cur = Evaluated{b.gen_src[g], b.gen_dst[g], b.gen_coords[g]};
            continue;
        }
        if (b.gen_src[g] != cur->dst) throw Error(ErrorCode::CoordinateMismatch, "path in " + where + " is not composable");
        cur->coords = c.compose(cur->src, cur->dst, b.gen_dst[g], b.gen_coords[g], cur->coords);
        cur->dst = b.gen_dst[g];
    }
    return *cur;
}

Evaluated eval_lincomb(const BuiltCategory& b, const LinComb& lc, const std::string& where)
{
    const FieldSpec& f = b.category->field();
    std::optional<Evaluated> sum;
    for (const auto& t : lc) {
        Evaluated e = eval_path(b, t.path, where);
        Mat v = e.coords.scaled(from_rational(f, t.coeff));
        if (!sum) sum = Evaluated{e.src, e.dst, v};
        else if (sum->src != e.src || sum->dst != e.dst)
            throw Error(ErrorCode::CoordinateMismatch, "terms of " + where + " lie in different Hom spaces");
        else sum->coords += v;
    }
    if (!sum) throw Error(ErrorCode::CoordinateMismatch, where + " is empty");
    return *sum;
}

void add_generator(BuiltCategory& b, const std::string& name, std::size_t src, std::size_t dst, Mat coords)
{
    if (b.generator_index.count(name)) return;
    b.generator_index[name] = b.gen_coords.size();
    b.gen_src.push_back(src);
    b.gen_dst.push_back(dst);
    b.gen_coords.push_back(std::move(coords));
}

BuiltCategory build_quiver(const CategoryDecl& d, const FieldSpec& f, std::size_t bound)
{
    const std::string where = "category " + d.name;
    Quiver q;
    q.field = f;
    q.objects = d.objects;
    std::map<std::string, std::size_t> arrow_index;
    for (const auto& a : d.arrows) {
        if (arrow_index.count(a.name)) throw Error(ErrorCode::InvalidCategory, "duplicate arrow '" + a.name + "' in " + where);
        arrow_index[a.name] = q.arrows.size();
        q.arrows.push_back({a.name, find_object(d.objects, a.src, where), find_object(d.objects, a.dst, where)});
    }
    for (const auto& r : d.relations) {
        QuiverRelation rel;
        for (const auto& t : r) {
            QuiverPath p;
            bool started = false;
            for (std::size_t i = t.path.size(); i-- > 0;) {
                const std::string& name = t.path[i];
                std::size_t src, dst;
                auto it = arrow_index.find(name);
                if (it != arrow_index.end()) {
                    src = q.arrows[it->second].src;
                    dst = q.arrows[it->second].dst;
                } else if (name.rfind("e_", 0) == 0) {
                    src = dst = find_object(d.objects, name.substr(2), where);
                } else {
                    throw Error(ErrorCode::UnresolvedName, "unknown arrow '" + name + "' in " + where);
                }
                if (!started) {
                    p.src = src;
                    p.dst = src;
                    started = true;
                }
                if (src != p.dst) throw Error(ErrorCode::InvalidCategory, "relation path in " + where + " is not composable");
                if (it != arrow_index.end()) p.arrows.push_back(it->second);
                p.dst = dst;
            }
            rel.terms.emplace_back(from_rational(f, t.coeff), std::move(p));
        }
        q.relations.push_back(std::move(rel));
    }
    BuiltCategory b;
    std::vector<Mat> arrow_coords;
    b.category = path_category(q, bound, &arrow_coords);
    const auto& c = *b.category;
    for (std::size_t a = 0; a < q.arrows.size(); ++a) add_generator(b, q.arrows[a].name, q.arrows[a].src, q.arrows[a].dst, arrow_coords[a]);
    for (std::size_t x = 0; x < c.size(); ++x) add_generator(b, "e_" + c.object(x), x, x, c.identity(x));
    for (std::size_t g = 0; g < c.total_hom_dim(); ++g) {
        const auto& m = c.basis_morphism(g);
        const std::string& label = c.labels(m.src, m.dst)[m.index];
        std::vector<std::string> word;
        if (label.rfind("e_", 0) != 0) {
            std::size_t start = 0;
            while (true) {
                const auto star = label.find('*', start);
                word.push_back(label.substr(start, star - start));
                if (star == std::string::npos) break;
                start = star + 1;
            }
            std::reverse(word.begin(), word.end());
        }
        b.words.push_back(std::move(word));
    }
    return b;
}

BuiltCategory build_table(const CategoryDecl& d, const FieldSpec& f)
{
    const std::string where = "category " + d.name;
    const std::size_t n = d.objects.size();
    if (n == 0) throw Error(ErrorCode::InvalidCategory, where + " has no objects");
    std::vector<std::vector<std::string>> labels(n * n);
    struct Loc {
        std::size_t x, y, i;
    };
    std::map<std::string, Loc> where_label;
    for (const auto& h : d.homs) {
        const std::size_t x = find_object(d.objects, h.x, where), y = find_object(d.objects, h.y, where);
        if (!labels[x * n + y].empty()) throw Error(ErrorCode::InvalidCategory, "Hom(" + h.x + "," + h.y + ") declared twice in " + where);
        for (const auto& l : h.labels) {
            if (where_label.count(l)) throw Error(ErrorCode::InvalidCategory, "duplicate basis label '" + l + "' in " + where);
            where_label[l] = {x, y, labels[x * n + y].size()};
            labels[x * n + y].push_back(l);
        }
    }
    CategoryData data = CategoryData::blank(f, d.objects, labels);
    auto locate = [&](const std::string& l) {
        auto it = where_label.find(l);
        if (it == where_label.end()) throw Error(ErrorCode::UnresolvedName, "unknown basis label '" + l + "' in " + where);
        return it->second;
    };
    auto vector_in = [&](const LinComb& lc, std::size_t x, std::size_t y) {
        Mat v(f, data.dim(x, y), 1);
        for (const auto& t : lc) {
            if (t.path.size() != 1) throw Error(ErrorCode::SyntaxError, "table values must be combinations of basis labels in " + where);
            const Loc l = locate(t.path[0]);
            if (l.x != x || l.y != y)
                throw Error(ErrorCode::CoordinateMismatch, "'" + t.path[0] + "' is not in Hom(" + d.objects[x] + "," + d.objects[y] + ")");
            v.add_to(l.i, 0, from_rational(f, t.coeff));
        }
        return v;
    };
    for (const auto& cd : d.comps) {
        const Loc g = locate(cd.g), fl = locate(cd.f);
        if (fl.y != g.x) throw Error(ErrorCode::InvalidCategory, "comp " + cd.g + "*" + cd.f + " is not composable");
        Mat v = vector_in(cd.value, fl.x, g.y);
        data.comp_at(fl.x, fl.y, g.y).set_block(0, g.i * data.dim(fl.x, fl.y) + fl.i, v);
    }
    BuiltCategory b;
    std::vector<bool> has_id(n, false);
    for (const auto& i : d.ids) {
        const std::size_t x = find_object(d.objects, i.x, where);
        data.identity[x] = vector_in(i.value, x, x);
        has_id[x] = true;
    }
    for (std::size_t x = 0; x < n; ++x)
        if (!has_id[x] && data.dim(x, x) > 0) b.violations.push_back("no identity declared for object " + d.objects[x]);
    if (b.violations.empty()) b.violations = validate(data).violations;
    if (!b.violations.empty()) return b;
    b.category = make_category(std::move(data));
    const auto& c = *b.category;
    for (const auto& [l, loc] : where_label) add_generator(b, l, loc.x, loc.y, Mat::unit(f, c.dim(loc.x, loc.y), loc.i));
    for (std::size_t x = 0; x < n; ++x) add_generator(b, "e_" + c.object(x), x, x, c.identity(x));
    for (std::size_t g = 0; g < c.total_hom_dim(); ++g) {
        const auto& m = c.basis_morphism(g);
        b.words.push_back({c.labels(m.src, m.dst)[m.index]});
    }
    return b;
}

// Action of a basis word from per-generator matrices; covariant multiplies on the left.
Mat word_action(const FieldSpec& f, const BuiltCategory& b, const std::vector<std::string>& word, std::size_t src,
                const std::function<std::size_t(std::size_t)>& dim, const std::map<std::string, Mat>& given, bool covariant,
                const std::string& where)
{
    Mat cur = Mat::identity(f, dim(src));
    for (const auto& name : word) {
        const std::size_t g = b.generator_index.at(name);
        const std::size_t s = b.gen_src[g], t = b.gen_dst[g];
        auto it = given.find(name);
        Mat m;
        if (it != given.end()) m = it->second;
        else if (dim(s) == 0 || dim(t) == 0) m = covariant ? Mat(f, dim(t), dim(s)) : Mat(f, dim(s), dim(t));
        else throw Error(ErrorCode::UnresolvedName, where + " gives no action for '" + name + "'");
        cur = covariant ? m * cur : cur * m;
    }
    return cur;
}

const BuiltCategory& need_category(const Compiled& out, const std::string& name, const std::string& where)
{
    auto it = out.categories.find(name);
    if (it == out.categories.end()) throw Error(ErrorCode::UnresolvedName, "unknown category '" + name + "' in " + where);
    if (!it->second.category) throw Error(ErrorCode::InvalidCategory, "category '" + name + "' failed validation");
    return it->second;
}

}  // namespace

Compiled compile(const Workspace& w, const CompileOptions& opts)
{
    Compiled out;
    auto taken = [&](const std::string& name) {
        return out.categories.count(name) || out.modules.count(name) || out.bimodules.count(name) || out.ideals.count(name);
    };
    for (const auto& d : w.categories) {
        if (taken(d.name)) throw Error(ErrorCode::SyntaxError, "name '" + d.name + "' declared twice");
        const FieldSpec f = opts.field ? *opts.field : parse_field(d.field);
        out.categories[d.name] = d.quiver ? build_quiver(d, f, opts.path_bound) : build_table(d, f);
    }
    std::vector<std::string> broken;
    for (const auto& [name, b] : out.categories)
        if (!b.category) broken.push_back(name);
    auto depends_on_broken = [&](const std::string& cat) { return std::find(broken.begin(), broken.end(), cat) != broken.end(); };

    for (const auto& d : w.modules) {
        const std::string where = "module " + d.name;
        if (taken(d.name)) throw Error(ErrorCode::SyntaxError, "name '" + d.name + "' declared twice");
        if (depends_on_broken(d.category)) continue;
        const BuiltCategory& b = need_category(out, d.category, where);
        const auto& c = *b.category;
        const FieldSpec& f = c.field();
        std::vector<std::size_t> dims(c.size(), 0);
        for (const auto& dd : d.dims) dims[find_object(c.objects(), dd.a, where)] = dd.dim;
        auto dim = [&](std::size_t x) { return dims[x]; };
        const bool left = d.side == Side::Left;
        std::map<std::string, Mat> given;
        for (const auto& a : d.acts) {
            auto it = b.generator_index.find(a.morphism);
            if (it == b.generator_index.end()) throw Error(ErrorCode::UnresolvedName, "unknown morphism '" + a.morphism + "' in " + where);
            const std::size_t s = b.gen_src[it->second], t = b.gen_dst[it->second];
            given[a.morphism] = left ? to_mat(f, a.matrix, dims[t], dims[s], where) : to_mat(f, a.matrix, dims[s], dims[t], where);
        }
        std::vector<Mat> act;
        for (std::size_t g = 0; g < c.total_hom_dim(); ++g)
            act.push_back(word_action(f, b, b.words[g], c.basis_morphism(g).src, dim, given, left, where));
        out.modules.emplace(d.name, CatModule(b.category, d.side, dims, std::move(act)));
        out.module_category[d.name] = d.category;
    }

    for (const auto& d : w.bimodules) {
        const std::string where = "bimodule " + d.name;
        if (taken(d.name)) throw Error(ErrorCode::SyntaxError, "name '" + d.name + "' declared twice");
        if (depends_on_broken(d.u) || depends_on_broken(d.t)) continue;
        const BuiltCategory& bu = need_category(out, d.u, where);
        const BuiltCategory& bt = need_category(out, d.t, where);
        const auto &u = *bu.category, &t = *bt.category;
        if (!(u.field() == t.field())) throw Error(ErrorCode::FieldMismatch, where + " mixes fields");
        const FieldSpec& f = u.field();
        const std::size_t nt = t.size(), nu = u.size();
        std::vector<std::size_t> dims(nu * nt, 0);
        for (const auto& dd : d.dims) dims[find_object(u.objects(), dd.a, where) * nt + find_object(t.objects(), dd.b, where)] = dd.dim;
        // per fixed object of the other side, generator matrices
        std::vector<std::map<std::string, Mat>> lgiven(nt), rgiven(nu);
        for (const auto& a : d.lacts) {
            auto it = bu.generator_index.find(a.morphism);
            if (it == bu.generator_index.end()) throw Error(ErrorCode::UnresolvedName, "unknown morphism '" + a.morphism + "' in " + where);
            const std::size_t at = find_object(t.objects(), a.at, where);
            const std::size_t s = bu.gen_src[it->second], e = bu.gen_dst[it->second];
            lgiven[at][a.morphism] = to_mat(f, a.matrix, dims[e * nt + at], dims[s * nt + at], where);
        }
        for (const auto& a : d.racts) {
            auto it = bt.generator_index.find(a.morphism);
            if (it == bt.generator_index.end()) throw Error(ErrorCode::UnresolvedName, "unknown morphism '" + a.morphism + "' in " + where);
            const std::size_t at = find_object(u.objects(), a.at, where);
            const std::size_t s = bt.gen_src[it->second], e = bt.gen_dst[it->second];
            rgiven[at][a.morphism] = to_mat(f, a.matrix, dims[at * nt + s], dims[at * nt + e], where);
        }
        std::vector<Mat> lact, ract;
        for (std::size_t g = 0; g < u.total_hom_dim(); ++g)
            for (std::size_t ti = 0; ti < nt; ++ti)
                lact.push_back(word_action(f, bu, bu.words[g], u.basis_morphism(g).src, [&](std::size_t x) { return dims[x * nt + ti]; },
                                           lgiven[ti], true, where));
        for (std::size_t g = 0; g < t.total_hom_dim(); ++g)
            for (std::size_t ui = 0; ui < nu; ++ui)
                ract.push_back(word_action(f, bt, bt.words[g], t.basis_morphism(g).src, [&](std::size_t x) { return dims[ui * nt + x]; },
                                           rgiven[ui], false, where));
        out.bimodules.emplace(d.name, Bimodule(bu.category, bt.category, dims, std::move(lact), std::move(ract)));
        out.bimodule_bases[d.name] = {d.u, d.t};
    }

    for (const auto& d : w.ideals) {
        const std::string where = "ideal " + d.name;
        if (taken(d.name)) throw Error(ErrorCode::SyntaxError, "name '" + d.name + "' declared twice");
        if (depends_on_broken(d.category)) continue;
        const BuiltCategory& b = need_category(out, d.category, where);
        std::vector<IdealGenerator> gens;
        for (const auto& lc : d.gens) {
            if (lc.empty()) continue;
            Evaluated e = eval_lincomb(b, lc, where);
            gens.push_back({e.src, e.dst, std::move(e.coords)});
        }
        out.ideals.emplace(d.name, ideal_from_generators(b.category, gens));
        out.ideal_category[d.name] = d.category;
    }
    return out;
}

}  // namespace hm::ws
