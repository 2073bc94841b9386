#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace cb {

using Cell = std::int32_t;

// Sorted, duplicate-free list of cell ids.
using CellSet = std::vector<Cell>;

CellSet make_set(std::vector<Cell> cells);
bool contains(const CellSet& s, Cell c);
bool is_subset(const CellSet& a, const CellSet& b);
CellSet set_union(const CellSet& a, const CellSet& b);
CellSet set_intersection(const CellSet& a, const CellSet& b);
CellSet set_difference(const CellSet& a, const CellSet& b);
bool intersects(const CellSet& a, const CellSet& b);

// Finite T0 space given as a poset. Open sets are up-sets, closed sets are
// down-sets. Only the covering relation is stored explicitly; the full order
// is cached as sorted down-set and up-set lists per element.
class FinitePoset {
public:
    FinitePoset() = default;

    // covers: pairs (lo, hi) with lo covered by hi. Throws on cycles.
    static FinitePoset from_covers(std::size_t n, const std::vector<std::pair<Cell, Cell>>& covers);
    // Arbitrary strict relation pairs (lo < hi); the transitive reduction is
    // computed. Meant for small posets.
    static FinitePoset from_relation(std::size_t n, const std::vector<std::pair<Cell, Cell>>& less);

    std::size_t size() const { return lower_.size(); }
    CellSet all() const;

    const std::vector<Cell>& lower_covers(Cell c) const { return lower_[c]; }
    const std::vector<Cell>& upper_covers(Cell c) const { return upper_[c]; }
    // cl {c} and Opn {c}, both including c.
    const CellSet& down(Cell c) const { return down_[c]; }
    const CellSet& up(Cell c) const { return up_[c]; }

    bool leq(Cell a, Cell b) const;
    bool comparable(Cell a, Cell b) const { return leq(a, b) || leq(b, a); }

    CellSet closure(const CellSet& a) const;
    CellSet opn(const CellSet& a) const;
    CellSet mouth(const CellSet& a) const;
    bool is_closed(const CellSet& a) const;
    bool is_open(const CellSet& a) const;
    bool is_locally_closed(const CellSet& a) const;

    std::vector<CellSet> connected_components(const CellSet& a) const;
    bool is_connected(const CellSet& a) const { return connected_components(a).size() == 1; }

    // Length (number of steps) of a shortest fence inside a; nullopt when the
    // two cells lie in different components.
    std::optional<int> fence_distance(const CellSet& a, Cell s, Cell t) const;
    // Multi-source variant: entry i holds the distance of a[i] to the nearest
    // source, or -1.
    std::vector<int> fence_distances(const CellSet& a, const CellSet& sources) const;

    // Subspace operators relative to r. b must be a subset of r.
    CellSet rel_closure(const CellSet& r, const CellSet& b) const;
    CellSet rel_opn(const CellSet& r, const CellSet& b) const;
    CellSet rel_interior(const CellSet& r, const CellSet& b) const;
    CellSet rel_boundary(const CellSet& r, const CellSet& b) const;

    void check_members(const CellSet& a) const;

private:
    void finish();

    std::vector<std::vector<Cell>> lower_, upper_;
    std::vector<CellSet> down_, up_;
};

}  // namespace cb
