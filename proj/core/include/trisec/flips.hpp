#pragma once

#include "trisec/regular.hpp"

namespace trisec {

enum class CircuitSide { Plus, Minus };

// A geometric bistellar flip: the circuit, the side whose triangulation the
// current T contains, and the common link L of the contained cells.
struct Flip {
    Circuit circuit;
    CircuitSide from_side = CircuitSide::Plus;
    std::vector<Cell> link;   // may contain the empty cell
    std::pair<int, int> type; // (|C_from|, |C_to|); (1,j) inserts a label

    bool is_insertion() const { return type.first == 1; }
    std::string str() const;
};

Flip reversed(Flip f);

// All flips supported in t: one per flippable wall circuit plus one insertion
// flip per unused label.  Deduplicated and sorted canonically.
std::vector<Flip> find_flips(const PointConfiguration& cfg, const Triangulation& t);
// Restriction used by the incremental algorithm: labels outside the mask are
// invisible to insertion-flip detection.
std::vector<Flip> find_flips(const PointConfiguration& cfg, const Triangulation& t,
                             uint64_t allowed_mask);

Triangulation apply_flip(const PointConfiguration& cfg, const Triangulation& t, const Flip& f);

struct FlipGraphOptions {
    size_t cap = 1u << 20;
    bool want_diameter = false;
    int threads = 1;
    size_t diameter_limit = 10000; // skip exact diameter beyond this size
};

struct FlipEdge {
    size_t a = 0, b = 0;      // node indices, a < b
    std::pair<int, int> type; // as applied from node a
    Circuit circuit;
};

struct FlipGraphComponent {
    std::vector<size_t> nodes;
    std::vector<size_t> edges; // indices into FlipGraph::edges
    std::optional<size_t> diameter;
};

struct FlipGraph {
    std::vector<Triangulation> nodes;
    std::vector<FlipEdge> edges;
    std::vector<FlipGraphComponent> components;
    bool truncated = false;

    std::vector<std::vector<size_t>> adjacency() const;
    size_t degree(size_t node) const;
};

// BFS closure of the seeds under flips, with canonical-form deduplication.
FlipGraph flip_graph(const PointConfiguration& cfg, const std::vector<Triangulation>& seeds,
                     const FlipGraphOptions& options = {});

enum class MonotonePolicy { First, Steepest };

struct MonotoneResult {
    std::vector<Flip> flips;
    Triangulation final;
    bool stuck = false; // final != T_w
};

// Repeatedly applies a w-decreasing flip until none applies.  Requires T_w to
// be a triangulation.
MonotoneResult monotone_flip_sequence(const PointConfiguration& cfg, const Triangulation& t0,
                                      const Lift& w, MonotonePolicy policy = MonotonePolicy::First);

// Point insertion (outside: join to visible boundary; inside: insertion flip)
// followed by w-monotone flips restricted to the star of the new label.  The
// order must start with d+1 affinely independent labels; the result equals
// subdivision_from_lift(w).
Triangulation incremental_construction(const PointConfiguration& cfg, const Lift& w,
                                       std::vector<Label> order);

} // namespace trisec
