#include "trisec/flips.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <thread>

namespace trisec {

std::string Flip::str() const {
    std::ostringstream os;
    os << "(" << type.first << "," << type.second << ") on [";
    os << cell_str(circuit.positive) << " | " << cell_str(circuit.negative) << "]";
    os << (from_side == CircuitSide::Plus ? " from +" : " from -");
    return os.str();
}

Flip reversed(Flip f) {
    f.from_side = f.from_side == CircuitSide::Plus ? CircuitSide::Minus : CircuitSide::Plus;
    std::swap(f.type.first, f.type.second);
    return f;
}

namespace {

struct TriMasks {
    std::vector<uint64_t> cells;
};

TriMasks masks_of(const PointConfiguration& cfg, const Triangulation& t) {
    TriMasks m;
    for (const auto& c : t.cells) m.cells.push_back(cfg.mask_of(c));
    return m;
}

Triangulation tri_from_masks(const PointConfiguration& cfg, const std::vector<uint64_t>& masks) {
    std::vector<Cell> cells;
    for (uint64_t m : masks) cells.push_back(cfg.cell_of_mask(m));
    return Triangulation::from_cells(std::move(cells));
}

// Link of tau in t as a set of masks; empty set means tau is not a face.
std::set<uint64_t> link_of(const TriMasks& t, uint64_t tau) {
    std::set<uint64_t> link;
    for (uint64_t c : t.cells)
        if ((tau & ~c) == 0) link.insert(c & ~tau);
    return link;
}

bool flip_order(const Flip& a, const Flip& b) {
    if (a.circuit.support != b.circuit.support) return a.circuit.support < b.circuit.support;
    if (a.circuit.positive != b.circuit.positive) return a.circuit.positive < b.circuit.positive;
    return a.from_side < b.from_side;
}

// Tries to build the flip on `circuit` whose contained side is `side`.
std::optional<Flip> flip_for_side(const PointConfiguration& cfg, const TriMasks& t,
                                  const Circuit& circuit, CircuitSide side) {
    const Cell& from = side == CircuitSide::Plus ? circuit.positive : circuit.negative;
    const Cell& to = side == CircuitSide::Plus ? circuit.negative : circuit.positive;
    uint64_t support = cfg.mask_of(circuit.support);
    std::optional<std::set<uint64_t>> common;
    for (Label c : from) {
        uint64_t tau = support & ~(uint64_t(1) << cfg.index_of(c));
        auto link = link_of(t, tau);
        if (link.empty()) return std::nullopt; // not a face of t
        if (!common)
            common = std::move(link);
        else if (*common != link)
            return std::nullopt; // links differ
    }
    Flip f;
    f.circuit = circuit;
    f.from_side = side;
    f.type = {static_cast<int>(from.size()), static_cast<int>(to.size())};
    for (uint64_t rho : *common) f.link.push_back(cfg.cell_of_mask(rho));
    std::sort(f.link.begin(), f.link.end());
    return f;
}

std::optional<Flip> insertion_flip_for(const PointConfiguration& cfg, const TriMasks& t,
                                       Label a) {
    // Minimal face containing a: the positive barycentric support inside any
    // cell whose hull contains a; all containing cells must agree.
    std::optional<uint64_t> carrier;
    for (uint64_t cm : t.cells) {
        Cell cell = cfg.cell_of_mask(cm);
        Vec bary = cfg.barycentric_in_cell(cell, a);
        bool inside = true;
        uint64_t support = 0;
        for (size_t i = 0; i < cell.size(); ++i) {
            int s = bary[i].sign();
            if (s < 0) {
                inside = false;
                break;
            }
            if (s > 0) support |= uint64_t(1) << cfg.index_of(cell[i]);
        }
        if (!inside) continue;
        if (carrier && *carrier != support)
            throw Error(Error::Kind::Inconsistency, "ambiguous insertion carrier");
        carrier = support;
    }
    if (!carrier) return std::nullopt;
    Cell tau = cfg.cell_of_mask(*carrier);
    Cell sup = tau;
    sup.push_back(a);
    Circuit circuit = cfg.circuit_of(make_cell(sup));
    CircuitSide side = std::binary_search(circuit.positive.begin(), circuit.positive.end(), a)
                           ? CircuitSide::Plus
                           : CircuitSide::Minus;
    auto f = flip_for_side(cfg, t, circuit, side);
    if (!f) throw Error(Error::Kind::Inconsistency, "insertion flip not applicable");
    return f;
}

std::vector<Flip> find_flips_unchecked(const PointConfiguration& cfg, const TriMasks& t,
                                       uint64_t allowed_mask) {
    std::map<std::pair<uint64_t, int>, Flip> found; // (support, side) -> flip

    // Wall flips: the unique circuit in the union of two adjacent cells.
    std::map<uint64_t, std::vector<size_t>> walls;
    for (size_t i = 0; i < t.cells.size(); ++i) {
        uint64_t c = t.cells[i];
        for (uint64_t m = c; m;) {
            uint64_t bit = m & (~m + 1);
            m &= ~bit;
            walls[c & ~bit].push_back(i);
        }
    }
    for (const auto& [wall, owners] : walls) {
        if (owners.size() != 2) continue;
        uint64_t u = t.cells[owners[0]] | t.cells[owners[1]];
        auto cm = cfg.circuit_in(u);
        if (!cm) continue;
        uint64_t support = cm->support();
        if (found.count({support, 0}) || found.count({support, 1})) continue;
        Circuit circuit = cfg.circuit_of(cfg.cell_of_mask(support));
        for (CircuitSide side : {CircuitSide::Plus, CircuitSide::Minus}) {
            if (auto f = flip_for_side(cfg, t, circuit, side)) {
                found.emplace(std::make_pair(support, side == CircuitSide::Plus ? 0 : 1),
                              std::move(*f));
            }
        }
    }

    // Insertion flips, one per unused label.
    uint64_t used = 0;
    for (uint64_t c : t.cells) used |= c;
    uint64_t unused = cfg.full_mask() & ~used & allowed_mask;
    for (size_t i = 0; i < cfg.size(); ++i) {
        if (!(unused & (uint64_t(1) << i))) continue;
        if (auto f = insertion_flip_for(cfg, t, cfg.label_at(i))) {
            uint64_t support = cfg.mask_of(f->circuit.support);
            int side = f->from_side == CircuitSide::Plus ? 0 : 1;
            found.emplace(std::make_pair(support, side), std::move(*f));
        }
    }

    std::vector<Flip> out;
    for (auto& [key, f] : found) out.push_back(std::move(f));
    std::sort(out.begin(), out.end(), flip_order);
    return out;
}

Triangulation apply_flip_unchecked(const PointConfiguration& cfg, const TriMasks& t,
                                   const Flip& f) {
    uint64_t support = cfg.mask_of(f.circuit.support);
    const Cell& from = f.from_side == CircuitSide::Plus ? f.circuit.positive : f.circuit.negative;
    const Cell& to = f.from_side == CircuitSide::Plus ? f.circuit.negative : f.circuit.positive;

    std::set<uint64_t> removed, added;
    for (const Cell& rho : f.link) {
        uint64_t rm = cfg.mask_of(rho);
        for (Label c : from) removed.insert(rm | (support & ~(uint64_t(1) << cfg.index_of(c))));
        for (Label c : to) added.insert(rm | (support & ~(uint64_t(1) << cfg.index_of(c))));
    }
    std::vector<uint64_t> cells;
    for (uint64_t c : t.cells) {
        auto it = removed.find(c);
        if (it != removed.end())
            removed.erase(it);
        else
            cells.push_back(c);
    }
    if (!removed.empty())
        throw Error(Error::Kind::Precondition, "flip not applicable to this triangulation");
    for (uint64_t c : added) cells.push_back(c);
    return tri_from_masks(cfg, cells);
}

void require_valid(const PointConfiguration& cfg, const Triangulation& t, const char* who) {
    auto rep = is_valid_triangulation(cfg, t);
    if (!rep.ok)
        throw Error(Error::Kind::Precondition,
                    std::string(who) + ": invalid triangulation: " + rep.summary());
}

} // namespace

std::vector<Flip> find_flips(const PointConfiguration& cfg, const Triangulation& t) {
    return find_flips(cfg, t, cfg.full_mask());
}

std::vector<Flip> find_flips(const PointConfiguration& cfg, const Triangulation& t,
                             uint64_t allowed_mask) {
    require_valid(cfg, t, "find_flips");
    return find_flips_unchecked(cfg, masks_of(cfg, t), allowed_mask);
}

Triangulation apply_flip(const PointConfiguration& cfg, const Triangulation& t, const Flip& f) {
    require_valid(cfg, t, "apply_flip");
    // Re-derive the flip to confirm applicability (link condition included).
    auto fresh = flip_for_side(cfg, masks_of(cfg, t), f.circuit, f.from_side);
    if (!fresh || fresh->link != f.link)
        throw Error(Error::Kind::Precondition, "flip not applicable to this triangulation");
    return apply_flip_unchecked(cfg, masks_of(cfg, t), f);
}

std::vector<std::vector<size_t>> FlipGraph::adjacency() const {
    std::vector<std::vector<size_t>> adj(nodes.size());
    for (const auto& e : edges) {
        adj[e.a].push_back(e.b);
        adj[e.b].push_back(e.a);
    }
    return adj;
}

size_t FlipGraph::degree(size_t node) const {
    size_t d = 0;
    for (const auto& e : edges)
        if (e.a == node || e.b == node) ++d;
    return d;
}

namespace {

std::optional<size_t> component_diameter(const std::vector<std::vector<size_t>>& adj,
                                         const std::vector<size_t>& nodes) {
    size_t best = 0;
    for (size_t src : nodes) {
        std::map<size_t, size_t> dist;
        dist[src] = 0;
        std::vector<size_t> frontier{src};
        size_t far = 0;
        while (!frontier.empty()) {
            std::vector<size_t> next;
            for (size_t u : frontier)
                for (size_t v : adj[u])
                    if (!dist.count(v)) {
                        dist[v] = dist[u] + 1;
                        far = std::max(far, dist[v]);
                        next.push_back(v);
                    }
            frontier = std::move(next);
        }
        if (dist.size() != nodes.size()) return std::nullopt; // disconnected?
        best = std::max(best, far);
    }
    return best;
}

} // namespace

FlipGraph flip_graph(const PointConfiguration& cfg, const std::vector<Triangulation>& seeds,
                     const FlipGraphOptions& options) {
    FlipGraph g;
    std::map<std::vector<Cell>, size_t> index;
    std::set<std::pair<size_t, size_t>> edge_keys;

    // Returns (node id, freshly created); nullopt once the cap is reached.
    auto intern = [&](const Triangulation& t) -> std::optional<std::pair<size_t, bool>> {
        auto it = index.find(t.cells);
        if (it != index.end()) return std::make_pair(it->second, false);
        if (g.nodes.size() >= options.cap) {
            g.truncated = true;
            return std::nullopt;
        }
        size_t id = g.nodes.size();
        index.emplace(t.cells, id);
        g.nodes.push_back(t);
        return std::make_pair(id, true);
    };

    std::vector<size_t> frontier;
    for (const auto& seed : seeds) {
        require_valid(cfg, seed, "flip_graph seed");
        auto id = intern(seed);
        if (id && id->second) frontier.push_back(id->first);
    }

    struct Expansion {
        size_t source = 0;
        std::vector<std::tuple<Triangulation, std::pair<int, int>, Circuit>> neighbors;
    };

    while (!frontier.empty() && !g.truncated) {
        std::vector<Expansion> results(frontier.size());
        auto expand = [&](size_t from, size_t to) {
            for (size_t i = from; i < to; ++i) {
                size_t node = frontier[i];
                TriMasks tm = masks_of(cfg, g.nodes[node]);
                Expansion ex;
                ex.source = node;
                for (const auto& f : find_flips_unchecked(cfg, tm, cfg.full_mask()))
                    ex.neighbors.emplace_back(apply_flip_unchecked(cfg, tm, f), f.type, f.circuit);
                results[i] = std::move(ex);
            }
        };
        int nthreads = std::max(1, options.threads);
        if (nthreads == 1 || frontier.size() < 2) {
            expand(0, frontier.size());
        } else {
            std::vector<std::thread> pool;
            size_t chunk = (frontier.size() + nthreads - 1) / nthreads;
            for (int ti = 0; ti < nthreads; ++ti) {
                size_t from = ti * chunk, to = std::min(frontier.size(), from + chunk);
                if (from >= to) break;
                pool.emplace_back(expand, from, to);
            }
            for (auto& th : pool) th.join();
        }

        std::vector<size_t> next;
        for (auto& ex : results) {
            for (auto& [nt, type, circuit] : ex.neighbors) {
                auto id = intern(nt);
                if (!id) break;
                size_t a = std::min(ex.source, id->first), b = std::max(ex.source, id->first);
                if (a != b && edge_keys.insert({a, b}).second) {
                    auto etype = (ex.source == a) ? type : std::make_pair(type.second, type.first);
                    g.edges.push_back({a, b, etype, circuit});
                }
                if (id->second) next.push_back(id->first);
            }
            if (g.truncated) break;
        }
        frontier = std::move(next);
    }

    // Components via union-find.
    std::vector<size_t> parent(g.nodes.size());
    for (size_t i = 0; i < parent.size(); ++i) parent[i] = i;
    std::function<size_t(size_t)> find = [&](size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& e : g.edges) parent[find(e.a)] = find(e.b);
    std::map<size_t, std::vector<size_t>> comps;
    for (size_t i = 0; i < g.nodes.size(); ++i) comps[find(i)].push_back(i);
    std::map<size_t, std::vector<size_t>> comp_edges;
    for (size_t e = 0; e < g.edges.size(); ++e) comp_edges[find(g.edges[e].a)].push_back(e);
    auto adj = g.adjacency();
    for (auto& [root, nodes] : comps) {
        FlipGraphComponent c;
        c.nodes = nodes;
        c.edges = comp_edges[root];
        if (options.want_diameter && !g.truncated && nodes.size() <= options.diameter_limit)
            c.diameter = component_diameter(adj, nodes);
        g.components.push_back(std::move(c));
    }
    return g;
}

MonotoneResult monotone_flip_sequence(const PointConfiguration& cfg, const Triangulation& t0,
                                      const Lift& w, MonotonePolicy policy) {
    require_valid(cfg, t0, "monotone_flip_sequence");
    auto tw = as_triangulation(cfg, subdivision_from_lift(cfg, w));
    if (!tw)
        throw Error(Error::Kind::Precondition, "T_w is not a triangulation (degenerate lift)");

    MonotoneResult result;
    Triangulation t = t0;
    Scalar current = lift_gkz_inner(w, gkz_vector(cfg, t));
    while (true) {
        TriMasks tm = masks_of(cfg, t);
        auto flips = find_flips_unchecked(cfg, tm, cfg.full_mask());
        std::optional<size_t> chosen;
        std::optional<Scalar> chosen_value;
        std::vector<Triangulation> applied(flips.size());
        for (size_t i = 0; i < flips.size(); ++i) {
            applied[i] = apply_flip_unchecked(cfg, tm, flips[i]);
            Scalar v = lift_gkz_inner(w, gkz_vector(cfg, applied[i]));
            if ((v - current).sign() >= 0) continue;
            if (policy == MonotonePolicy::First) {
                chosen = i;
                chosen_value = v;
                break;
            }
            if (!chosen_value || (v - *chosen_value).sign() < 0) {
                chosen = i;
                chosen_value = v;
            }
        }
        if (!chosen) break;
        result.flips.push_back(flips[*chosen]);
        t = applied[*chosen];
        current = *chosen_value;
    }
    result.stuck = !(t == *tw);
    result.final = std::move(t);
    return result;
}

Triangulation incremental_construction(const PointConfiguration& cfg, const Lift& w,
                                       std::vector<Label> order) {
    std::vector<Label> check = order, want = cfg.labels();
    std::sort(check.begin(), check.end());
    std::sort(want.begin(), want.end());
    if (check != want)
        throw Error(Error::Kind::Precondition, "order must be a permutation of the labels");
    auto tw = as_triangulation(cfg, subdivision_from_lift(cfg, w));
    if (!tw)
        throw Error(Error::Kind::Precondition,
                    "incremental construction needs a generic lift (T_w is a proper subdivision)");

    size_t hd = cfg.homdim();
    Cell first(order.begin(), order.begin() + hd);
    first = make_cell(first);
    {
        Mat m;
        for (Label l : first) m.push_back(cfg.homog(l));
        if (det(std::move(m)).is_zero())
            throw Error(Error::Kind::Precondition,
                        "order must start with d+1 affinely independent labels");
    }

    TriMasks t;
    t.cells.push_back(cfg.mask_of(first));
    uint64_t inserted = cfg.mask_of(first);

    for (size_t k = hd; k < order.size(); ++k) {
        Label a = order[k];
        inserted |= uint64_t(1) << cfg.index_of(a);

        if (auto ins = insertion_flip_for(cfg, t, a)) {
            t = masks_of(cfg, apply_flip_unchecked(cfg, t, *ins));
        } else {
            // Outside the current hull: join a to the strictly visible
            // boundary walls.
            std::map<uint64_t, std::vector<size_t>> walls;
            for (size_t i = 0; i < t.cells.size(); ++i) {
                uint64_t c = t.cells[i];
                for (uint64_t m = c; m;) {
                    uint64_t bit = m & (~m + 1);
                    m &= ~bit;
                    walls[c & ~bit].push_back(i);
                }
            }
            std::vector<uint64_t> added;
            for (const auto& [wall, owners] : walls) {
                if (owners.size() != 1) continue;
                Cell wcell = cfg.cell_of_mask(wall);
                uint64_t apex_mask = t.cells[owners[0]] & ~wall;
                Label apex = cfg.cell_of_mask(apex_mask)[0];
                int s_apex = cfg.orientation_point(wcell, cfg.homog(apex));
                int s_a = cfg.orientation_point(wcell, cfg.homog(a));
                if (s_a == -s_apex) added.push_back(wall | (uint64_t(1) << cfg.index_of(a)));
            }
            if (added.empty())
                throw Error(Error::Kind::Inconsistency,
                            "point outside hull sees no boundary wall");
            for (uint64_t c : added) t.cells.push_back(c);
        }

        // w-monotone flips restricted to the star of a.
        Scalar current(0);
        {
            Scalar inner(0);
            for (uint64_t cm : t.cells) {
                Cell cell = cfg.cell_of_mask(cm);
                Scalar vol = cfg.normalized_volume(cell);
                for (Label l : cell) inner += w.at(l) * vol;
            }
            current = inner;
        }
        while (true) {
            auto flips = find_flips_unchecked(cfg, t, inserted);
            bool moved = false;
            for (const auto& f : flips) {
                if (!std::binary_search(f.circuit.support.begin(), f.circuit.support.end(), a))
                    continue;
                Triangulation nt = apply_flip_unchecked(cfg, t, f);
                Scalar v = lift_gkz_inner(w, gkz_vector(cfg, nt));
                if ((v - current).sign() < 0) {
                    t = masks_of(cfg, nt);
                    current = v;
                    moved = true;
                    break;
                }
            }
            if (!moved) break;
        }
    }
    return tri_from_masks(cfg, t.cells);
}

MonotoneOrder monotone_compare(const PointConfiguration& cfg, const Lift& w,
                               const Triangulation& t1, const Triangulation& t2) {
    require_valid(cfg, t1, "monotone_compare");
    require_valid(cfg, t2, "monotone_compare");
    if (!(t1 == t2)) {
        TriMasks tm = masks_of(cfg, t1);
        bool related = false;
        for (const auto& f : find_flips_unchecked(cfg, tm, cfg.full_mask())) {
            if (apply_flip_unchecked(cfg, tm, f) == t2) {
                related = true;
                break;
            }
        }
        if (!related)
            throw Error(Error::Kind::Precondition,
                        "monotone_compare requires flip-related triangulations");
    }
    Scalar i1 = lift_gkz_inner(w, gkz_vector(cfg, t1));
    Scalar i2 = lift_gkz_inner(w, gkz_vector(cfg, t2));
    int s = (i1 - i2).sign();
    if (s < 0) return MonotoneOrder::FirstBelow;
    if (s > 0) return MonotoneOrder::SecondBelow;
    return MonotoneOrder::IncomparableOrEqual;
}

} // namespace trisec
