#include "cb/complex.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "cb/error.hpp"

namespace cb {

namespace {

std::string simplex_name(const std::vector<int>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += '-';
        s += std::to_string(v[i]);
    }
    return s;
}

std::string join(const std::vector<std::string>& lines) {
    std::string out;
    for (const auto& l : lines) out += "\n  " + l;
    return out;
}

}  // namespace

std::vector<std::string> validate(const ComplexSpec& spec) {
    std::vector<std::string> bad;
    if (spec.kind == ComplexKind::simplicial) {
        if (spec.vertices < 0) bad.push_back("grading: negative vertex count");
        for (const auto& s : spec.simplices) {
            if (s.empty()) {
                bad.push_back("grading: empty cell");
                continue;
            }
            std::set<int> uniq(s.begin(), s.end());
            if (uniq.size() != s.size()) bad.push_back("grading: cell " + simplex_name(s) + " repeats a vertex");
            for (int v : s)
                if (v < 0 || v >= spec.vertices)
                    bad.push_back("missing face: cell " + simplex_name(s) + " uses vertex " + std::to_string(v) +
                                  " which is not in the complex");
        }
        return bad;
    }

    std::map<std::string, const CwCellSpec*> by_id;
    for (const auto& c : spec.cells) {
        if (!by_id.emplace(c.id, &c).second) bad.push_back("duplicate: cell id '" + c.id + "'");
        if (c.dim < 0) bad.push_back("grading: cell '" + c.id + "' has negative dimension");
    }
    for (const auto& c : spec.cells) {
        if (c.dim == 0 && !c.facets.empty()) bad.push_back("grading: 0-cell '" + c.id + "' has facets");
        if (c.dim > 0 && c.facets.empty()) bad.push_back("missing face: cell '" + c.id + "' has no facets");
        std::set<std::string> seen;
        for (const auto& [fid, sign] : c.facets) {
            if (!seen.insert(fid).second) bad.push_back("duplicate: cell '" + c.id + "' lists facet '" + fid + "' twice");
            auto it = by_id.find(fid);
            if (it == by_id.end()) {
                bad.push_back("missing face: cell '" + c.id + "' refers to unknown facet '" + fid + "'");
                continue;
            }
            if (it->second->dim != c.dim - 1)
                bad.push_back("grading: facet '" + fid + "' of '" + c.id + "' has dimension " +
                              std::to_string(it->second->dim) + ", expected " + std::to_string(c.dim - 1));
            if (sign != 1 && sign != -1)
                bad.push_back("sign: incidence '" + c.id + "' -> '" + fid + "' is not +1 or -1");
        }
    }
    if (!bad.empty()) return bad;
    for (const auto& c : spec.cells) {
        std::map<std::string, long> dd;
        for (const auto& [fid, s1] : c.facets)
            for (const auto& [gid, s2] : by_id.at(fid)->facets) dd[gid] += long(s1) * s2;
        for (const auto& [gid, v] : dd)
            if (v != 0) bad.push_back("boundary: boundary of boundary of '" + c.id + "' is nonzero at '" + gid + "'");
    }
    return bad;
}

CellComplex CellComplex::simplicial(int vertices, const std::vector<std::vector<int>>& simplices) {
    ComplexSpec spec;
    spec.kind = ComplexKind::simplicial;
    spec.vertices = vertices;
    spec.simplices = simplices;
    return build(spec);
}

CellComplex CellComplex::build(const ComplexSpec& spec) {
    auto bad = validate(spec);
    if (!bad.empty()) throw InvalidComplex("invalid complex:" + join(bad));

    CellComplex c;
    c.kind_ = spec.kind;
    if (spec.kind == ComplexKind::simplicial) {
        c.nvertices_ = spec.vertices;
        std::set<std::vector<int>> all;
        for (int v = 0; v < spec.vertices; ++v) all.insert({v});
        for (auto s : spec.simplices) {
            std::sort(s.begin(), s.end());
            const unsigned k = unsigned(s.size());
            if (k > 16) throw InvalidComplex("simplex dimension too large");
            for (unsigned mask = 1; mask < (1u << k); ++mask) {
                std::vector<int> face;
                for (unsigned i = 0; i < k; ++i)
                    if (mask & (1u << i)) face.push_back(s[i]);
                all.insert(std::move(face));
            }
        }
        std::vector<std::vector<int>> cells(all.begin(), all.end());
        std::stable_sort(cells.begin(), cells.end(),
                         [](const auto& a, const auto& b) { return a.size() < b.size(); });
        for (std::size_t i = 0; i < cells.size(); ++i) c.by_verts_[cells[i]] = Cell(i);
        for (const auto& s : cells) {
            c.dim_.push_back(int(s.size()) - 1);
            c.name_.push_back(simplex_name(s));
            std::vector<Incidence> f;
            if (s.size() > 1) {
                for (std::size_t i = 0; i < s.size(); ++i) {
                    std::vector<int> face = s;
                    face.erase(face.begin() + long(i));
                    f.push_back({c.by_verts_.at(face), (i % 2) ? -1 : 1});
                }
            }
            c.facets_.push_back(std::move(f));
            c.verts_.push_back(s);
        }
    } else {
        std::map<std::string, Cell> ids;
        for (std::size_t i = 0; i < spec.cells.size(); ++i) ids[spec.cells[i].id] = Cell(i);
        for (const auto& cs : spec.cells) {
            c.dim_.push_back(cs.dim);
            c.name_.push_back(cs.id);
            std::vector<Incidence> f;
            for (const auto& [fid, sign] : cs.facets) f.push_back({ids.at(fid), sign});
            std::sort(f.begin(), f.end(), [](const Incidence& a, const Incidence& b) { return a.facet < b.facet; });
            c.facets_.push_back(std::move(f));
            c.verts_.emplace_back();
        }
    }
    c.finish();
    return c;
}

void CellComplex::finish() {
    std::vector<std::pair<Cell, Cell>> covers;
    for (std::size_t i = 0; i < facets_.size(); ++i)
        for (const auto& f : facets_[i]) covers.emplace_back(f.facet, Cell(i));
    poset_ = FinitePoset::from_covers(dim_.size(), covers);
    by_name_.clear();
    for (std::size_t i = 0; i < name_.size(); ++i) by_name_[name_[i]] = Cell(i);
    max_dim_ = dim_.empty() ? -1 : *std::max_element(dim_.begin(), dim_.end());
}

std::optional<Cell> CellComplex::find(const std::string& name) const {
    auto it = by_name_.find(name);
    if (it == by_name_.end()) return std::nullopt;
    return it->second;
}

Cell CellComplex::id(const std::string& name) const {
    auto c = find(name);
    if (!c) throw Error("unknown cell id '" + name + "'");
    return *c;
}

std::optional<Cell> CellComplex::find_simplex(std::vector<int> verts) const {
    std::sort(verts.begin(), verts.end());
    auto it = by_verts_.find(verts);
    if (it == by_verts_.end()) return std::nullopt;
    return it->second;
}

CellSet CellComplex::cells_of_dim(int k) const {
    CellSet out;
    for (std::size_t i = 0; i < dim_.size(); ++i)
        if (dim_[i] == k) out.push_back(Cell(i));
    return out;
}

std::vector<std::string> CellComplex::names(const CellSet& s) const {
    std::vector<std::string> out;
    out.reserve(s.size());
    for (Cell c : s) out.push_back(name(c));
    return out;
}

CellSet CellComplex::ids(const std::vector<std::string>& names) const {
    std::vector<Cell> out;
    out.reserve(names.size());
    for (const auto& n : names) out.push_back(id(n));
    return make_set(std::move(out));
}

ComplexSpec CellComplex::spec() const {
    ComplexSpec s;
    s.kind = kind_;
    if (kind_ == ComplexKind::simplicial) {
        s.vertices = nvertices_;
        for (Cell t : toplexes(*this))
            if (verts_[t].size() > 1) s.simplices.push_back(verts_[t]);
    } else {
        for (std::size_t i = 0; i < dim_.size(); ++i) {
            CwCellSpec cs;
            cs.id = name_[i];
            cs.dim = dim_[i];
            for (const auto& f : facets_[i]) cs.facets.emplace_back(name_[f.facet], f.sign);
            s.cells.push_back(std::move(cs));
        }
    }
    return s;
}

CellSet toplexes(const CellComplex& c) {
    CellSet out;
    for (Cell i = 0; i < Cell(c.size()); ++i)
        if (c.poset().upper_covers(i).empty()) out.push_back(i);
    return out;
}

CellSet frame(const CellComplex& c) { return set_difference(c.all(), toplexes(c)); }

CellSet skeleton_cells(const CellComplex& c, int k) {
    if (k < 0) throw PreconditionError("skeleton dimension must be nonnegative");
    CellSet out;
    for (Cell i = 0; i < Cell(c.size()); ++i)
        if (c.dim(i) <= k) out.push_back(i);
    return out;
}

CellComplex skeleton(const CellComplex& c, int k) {
    if (k < 0) throw PreconditionError("skeleton dimension must be nonnegative");
    ComplexSpec s;
    s.kind = c.kind();
    if (c.kind() == ComplexKind::simplicial) {
        s.vertices = int(c.cells_of_dim(0).size());
        for (Cell i : skeleton_cells(c, k))
            if (c.dim(i) > 0) s.simplices.push_back(c.vertices(i));
    } else {
        for (Cell i : skeleton_cells(c, k)) {
            CwCellSpec cs;
            cs.id = c.name(i);
            cs.dim = c.dim(i);
            for (const auto& f : c.facets(i)) cs.facets.emplace_back(c.name(f.facet), f.sign);
            s.cells.push_back(std::move(cs));
        }
    }
    return CellComplex::build(s);
}

ChainComplex chain_complex(const CellComplex& c, const CellSet& a, const CellSet& b) {
    const auto& p = c.poset();
    p.check_members(a);
    p.check_members(b);
    if (!p.is_closed(a)) throw PreconditionError("chain_complex: first set is not closed");
    if (!p.is_closed(b)) throw PreconditionError("chain_complex: second set is not closed");
    if (!is_subset(b, a)) throw PreconditionError("chain_complex: second set is not contained in the first");

    CellSet rel = set_difference(a, b);
    int top = -1;
    for (Cell x : rel) top = std::max(top, c.dim(x));
    ChainComplex cc;
    cc.basis.assign(std::size_t(top + 1), {});
    for (Cell x : rel) cc.basis[c.dim(x)].push_back(x);

    cc.d.resize(cc.basis.size());
    for (int k = 0; k <= top; ++k) {
        SparseMatrix& m = cc.d[k];
        m.cols = int(cc.basis[k].size());
        m.rows = k > 0 ? int(cc.basis[k - 1].size()) : 0;
        m.columns.assign(std::size_t(m.cols), {});
        if (k == 0) continue;
        const CellSet& lower = cc.basis[k - 1];
        for (int j = 0; j < m.cols; ++j) {
            for (const auto& f : c.facets(cc.basis[k][j])) {
                auto it = std::lower_bound(lower.begin(), lower.end(), f.facet);
                if (it == lower.end() || *it != f.facet) continue;  // facet lies in b
                m.columns[j].emplace_back(int(it - lower.begin()), mpq_class(f.sign));
            }
            std::sort(m.columns[j].begin(), m.columns[j].end(),
                      [](const auto& x, const auto& y) { return x.first < y.first; });
        }
    }
    return cc;
}

SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.cols != b.rows) throw Error("matrix dimension mismatch");
    SparseMatrix out;
    out.rows = a.rows;
    out.cols = b.cols;
    out.columns.assign(std::size_t(b.cols), {});
    for (int j = 0; j < b.cols; ++j) {
        std::map<int, mpq_class> acc;
        for (const auto& [k, v] : b.columns[j])
            for (const auto& [i, w] : a.columns[k]) acc[i] += w * v;
        for (auto& [i, v] : acc)
            if (v != 0) out.columns[j].emplace_back(i, v);
    }
    return out;
}

bool is_zero(const SparseMatrix& m) {
    for (const auto& col : m.columns)
        for (const auto& e : col)
            if (e.second != 0) return false;
    return true;
}

}  // namespace cb
