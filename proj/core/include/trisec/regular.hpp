#pragma once

#include <map>

#include "trisec/subdivision.hpp"

namespace trisec {

// Lifting function w on the labels.  Two lifts produce the same regular
// subdivision iff they differ by an affine function.
struct Lift {
    std::map<Label, Scalar> values;

    static Lift constant(const PointConfiguration& cfg, const Scalar& v);
    const Scalar& at(Label l) const;
    Lift negated() const;
};

// Projection of the lower facets of the lifted configuration; each cell is
// every label on its lower facet.  A triangulation when w is generic.
Subdivision subdivision_from_lift(const PointConfiguration& cfg, const Lift& w);

struct RegularityResult {
    bool regular = false;
    std::optional<Lift> certificate;
};

// Strict feasibility of the secondary-fan cone of t, with affine lifts
// modded out by pinning w = 0 on a fixed affinely independent (d+1)-subset.
// A returned certificate verifies: subdivision_from_lift(certificate) == t.
RegularityResult is_regular(const PointConfiguration& cfg, const Triangulation& t);
RegularityResult is_regular_subdivision(const PointConfiguration& cfg, const Subdivision& s);

struct GkzVector {
    std::map<Label, Scalar> entries; // unused labels carry 0

    Scalar sum() const;
};

GkzVector gkz_vector(const PointConfiguration& cfg, const Triangulation& t);
Scalar lift_gkz_inner(const Lift& w, const GkzVector& v);

struct SecondarySummary {
    int dim = 0;                    // dimension of the GKZ hull (= n-d-1)
    std::vector<size_t> f_vector;   // proper faces counted by dimension 0..dim-1
    size_t total_faces = 0;         // sum of f_vector plus the polytope itself
    std::vector<size_t> vertex_triangulations; // indices into the input list
};

// Convex hull of the GKZ vectors of ALL triangulations of cfg.
SecondarySummary secondary_polytope_summary(const PointConfiguration& cfg,
                                            const std::vector<Triangulation>& all);

enum class LiftKind { Delaunay, Pulling, Pushing };

// delaunay: squared-norm lift.  pulling/pushing: w(a_i) = -t^i / +t^i along
// the order, with t grown by doubling until the subdivision stabilizes.
Lift standard_lift(const PointConfiguration& cfg, LiftKind kind,
                   std::vector<Label> order = {});

enum class MonotoneOrder { FirstBelow, SecondBelow, IncomparableOrEqual };

// Compares <w, gkz(t1)> vs <w, gkz(t2)> for flip-related t1, t2; the smaller
// inner product is below.  Defined in flips.cpp (needs flip detection for the
// precondition).
MonotoneOrder monotone_compare(const PointConfiguration& cfg, const Lift& w,
                               const Triangulation& t1, const Triangulation& t2);

} // namespace trisec
