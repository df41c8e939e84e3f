#include "hm/quiver.hpp"

#include <map>

#include "hm/error.hpp"
#include "hm/linalg.hpp"

namespace hm {

namespace {

using PathKey = std::vector<std::size_t>;

// All paths of one length between one pair of objects, with their ideal part.
struct Layer {
    std::vector<PathKey> paths;
    std::map<PathKey, std::size_t> index;
    Mat ideal;  // spanning columns in path coordinates
    la::Quotient quotient;
};

void check_path(const Quiver& q, const QuiverPath& p)
{
    std::size_t at = p.src;
    for (auto a : p.arrows) {
        if (a >= q.arrows.size()) throw Error(ErrorCode::InvalidCategory, "relation uses an unknown arrow");
        if (q.arrows[a].src != at)
            throw Error(ErrorCode::InvalidCategory, "relation path " + path_label(q, p) + " is not composable");
        at = q.arrows[a].dst;
    }
    if (at != p.dst) throw Error(ErrorCode::InvalidCategory, "relation path " + path_label(q, p) + " has wrong endpoints");
}

}  // namespace

std::string path_label(const Quiver& q, const QuiverPath& p)
{
    if (p.arrows.empty()) return "e_" + q.objects[p.src];
    std::string s;
    for (std::size_t i = p.arrows.size(); i-- > 0;) {
        s += q.arrows[p.arrows[i]].name;
        if (i) s += "*";
    }
    return s;
}

CatPtr path_category(const Quiver& q, std::size_t bound, std::vector<Mat>* arrow_coords)
{
    const FieldSpec& f = q.field;
    const std::size_t n = q.objects.size();
    if (n == 0) throw Error(ErrorCode::InvalidCategory, "quiver has no objects");
    for (const auto& a : q.arrows)
        if (a.src >= n || a.dst >= n) throw Error(ErrorCode::InvalidCategory, "arrow " + a.name + " has unknown endpoints");

    // relations grouped by (length, src, dst), each as a coefficient list of paths
    struct Rel {
        std::size_t src, dst, length;
        std::vector<std::pair<Scalar, PathKey>> terms;
    };
    std::vector<Rel> rels;
    for (const auto& r : q.relations) {
        if (r.terms.empty()) continue;
        Rel rel{r.terms[0].second.src, r.terms[0].second.dst, r.terms[0].second.arrows.size(), {}};
        for (const auto& [c, p] : r.terms) {
            check_path(q, p);
            if (p.src != rel.src || p.dst != rel.dst)
                throw Error(ErrorCode::InvalidCategory, "relation mixes paths with different endpoints");
            if (p.arrows.size() != rel.length)
                throw Error(ErrorCode::InvalidCategory,
                            "relation is not homogeneous in path length (" + path_label(q, p) + ")");
            rel.terms.emplace_back(c, p.arrows);
        }
        rels.push_back(std::move(rel));
    }

    std::vector<std::vector<Layer>> layers;  // layers[length][x*n+y]
    std::size_t top = 0;                    // first length where everything vanishes
    bool finite = false;
    for (std::size_t len = 0; len <= bound + 1; ++len) {
        std::vector<Layer> cur(n * n);
        if (len == 0) {
            for (std::size_t x = 0; x < n; ++x) {
                cur[x * n + x].paths.push_back({});
                cur[x * n + x].index[{}] = 0;
            }
        } else {
            const auto& prev = layers.back();
            for (std::size_t x = 0; x < n; ++x)
                for (std::size_t w = 0; w < n; ++w)
                    for (const auto& p : prev[x * n + w].paths)
                        for (std::size_t a = 0; a < q.arrows.size(); ++a) {
                            if (q.arrows[a].src != w) continue;
                            Layer& l = cur[x * n + q.arrows[a].dst];
                            PathKey np = p;
                            np.push_back(a);
                            l.index[np] = l.paths.size();
                            l.paths.push_back(std::move(np));
                        }
        }
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y) {
                Layer& l = cur[x * n + y];
                std::vector<Mat> cols;
                auto push = [&](const std::vector<std::pair<Scalar, PathKey>>& terms) {
                    Mat v(f, l.paths.size(), 1);
                    for (const auto& [c, p] : terms) v.add_to(l.index.at(p), 0, c);
                    cols.push_back(std::move(v));
                };
                for (const auto& r : rels)
                    if (r.length == len && r.src == x && r.dst == y) push(r.terms);
                if (len > 0) {
                    const auto& prev = layers.back();
                    for (std::size_t a = 0; a < q.arrows.size(); ++a) {
                        const auto& arr = q.arrows[a];
                        // a after an ideal element ending at arr.src
                        if (arr.dst == y) {
                            const Layer& pl = prev[x * n + arr.src];
                            for (std::size_t c = 0; c < pl.ideal.cols(); ++c) {
                                std::vector<std::pair<Scalar, PathKey>> terms;
                                for (std::size_t i = 0; i < pl.paths.size(); ++i) {
                                    if (pl.ideal.is_zero_at(i, c)) continue;
                                    PathKey np = pl.paths[i];
                                    np.push_back(a);
                                    terms.emplace_back(pl.ideal.get(i, c), std::move(np));
                                }
                                push(terms);
                            }
                        }
                        // a before an ideal element starting at arr.dst
                        if (arr.src == x) {
                            const Layer& pl = prev[arr.dst * n + y];
                            for (std::size_t c = 0; c < pl.ideal.cols(); ++c) {
                                std::vector<std::pair<Scalar, PathKey>> terms;
                                for (std::size_t i = 0; i < pl.paths.size(); ++i) {
                                    if (pl.ideal.is_zero_at(i, c)) continue;
                                    PathKey np{a};
                                    np.insert(np.end(), pl.paths[i].begin(), pl.paths[i].end());
                                    terms.emplace_back(pl.ideal.get(i, c), std::move(np));
                                }
                                push(terms);
                            }
                        }
                    }
                }
                Mat span = cols.empty() ? Mat(f, l.paths.size(), 0) : hstack(f, l.paths.size(), cols);
                la::Subspace sub = la::column_space(f, l.paths.size(), span);
                l.ideal = sub.basis;
                l.quotient = la::quotient(sub);
            }
        bool vanished = true;
        for (const auto& l : cur)
            if (l.quotient.dim() != 0) vanished = false;
        layers.push_back(std::move(cur));
        if (vanished) {
            top = len;
            finite = true;
            break;
        }
    }
    if (!finite)
        throw Error(ErrorCode::FinitenessError,
                    "paths of length " + std::to_string(bound + 1) + " do not all vanish modulo the relations");

    // Hom(x,y) basis: surviving paths of each length below `top`
    std::vector<std::vector<std::string>> labels(n * n);
    std::vector<std::vector<std::size_t>> offset(n * n, std::vector<std::size_t>(top, 0));
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            for (std::size_t len = 0; len < top; ++len) {
                const Layer& l = layers[len][x * n + y];
                offset[x * n + y][len] = labels[x * n + y].size();
                for (auto i : l.quotient.free) labels[x * n + y].push_back(path_label(q, {x, y, l.paths[i]}));
            }
    CategoryData d = CategoryData::blank(f, q.objects, std::move(labels));
    // basis element at (x,y) number k as (length, path)
    auto basis_paths = [&](std::size_t x, std::size_t y) {
        std::vector<std::pair<std::size_t, PathKey>> out;
        for (std::size_t len = 0; len < top; ++len) {
            const Layer& l = layers[len][x * n + y];
            for (auto i : l.quotient.free) out.emplace_back(len, l.paths[i]);
        }
        return out;
    };
    for (std::size_t x = 0; x < n; ++x) {
        d.identity[x] = Mat(f, d.dim(x, x), 1);
        if (d.dim(x, x) > 0) d.identity[x].set(0, 0, one(f));
        for (std::size_t y = 0; y < n; ++y) {
            auto fp = basis_paths(x, y);
            for (std::size_t z = 0; z < n; ++z) {
                auto gp = basis_paths(y, z);
                Mat& dst = d.comp_at(x, y, z);
                for (std::size_t gi = 0; gi < gp.size(); ++gi)
                    for (std::size_t fi = 0; fi < fp.size(); ++fi) {
                        const std::size_t len = fp[fi].first + gp[gi].first;
                        if (len >= top) continue;
                        PathKey p = fp[fi].second;
                        p.insert(p.end(), gp[gi].second.begin(), gp[gi].second.end());
                        const Layer& l = layers[len][x * n + z];
                        Mat v = l.quotient.projection.column(l.index.at(p));
                        dst.set_block(offset[x * n + z][len], gi * fp.size() + fi, v);
                    }
            }
        }
    }
    if (arrow_coords) {
        arrow_coords->clear();
        for (std::size_t a = 0; a < q.arrows.size(); ++a) {
            const auto& arr = q.arrows[a];
            Mat v(f, d.dim(arr.src, arr.dst), 1);
            if (top > 1) {
                const Layer& l = layers[1][arr.src * n + arr.dst];
                v.set_block(offset[arr.src * n + arr.dst][1], 0, l.quotient.projection.column(l.index.at({a})));
            }
            arrow_coords->push_back(std::move(v));
        }
    }
    return make_category(std::move(d));
}

}  // namespace hm
