#pragma once

#include <optional>
#include <string>
#include <vector>

#include "trisec/point_config.hpp"

namespace trisec {

// Canonical form: every cell sorted, cells sorted lexicographically.  All
// hashing, deduplication and equality go through this form.
struct Triangulation {
    std::vector<Cell> cells;

    static Triangulation from_cells(std::vector<Cell> cells);
    bool operator==(const Triangulation& o) const { return cells == o.cells; }
    bool operator!=(const Triangulation& o) const { return !(*this == o); }
    bool operator<(const Triangulation& o) const { return cells < o.cells; }
    bool uses(Label l) const;
    std::string str() const;
};

struct Subdivision {
    std::vector<Cell> cells;

    static Subdivision from_cells(std::vector<Cell> cells);
    bool operator==(const Subdivision& o) const { return cells == o.cells; }
    bool operator!=(const Subdivision& o) const { return !(*this == o); }
    std::string str() const;
};

Subdivision as_subdivision(const Triangulation& t);
// A subdivision whose cells all are affinely independent, as a Triangulation.
std::optional<Triangulation> as_triangulation(const PointConfiguration& cfg, const Subdivision& s);

struct Violation {
    enum class Kind {
        BadCell,             // wrong size / unknown label
        DependentCell,       // triangulation cell affinely dependent
        NotSpanningCell,     // subdivision cell does not span
        DuplicateCell,
        ImproperPair,        // circuit with positive side in a, negative in b
        NotFaceToFace,       // no separating functional vanishing on the common face
        MembershipViolation, // point of one cell inside the common face
        VolumeMismatch,      // covering fails
    };
    Kind kind;
    Cell a;
    Cell b;
    std::optional<Circuit> circuit;
    std::string detail;

    std::string str() const;
};

struct ValidityReport {
    bool ok = true;
    std::vector<Violation> violations;
    std::string summary() const;
};

ValidityReport is_valid_triangulation(const PointConfiguration& cfg, const Triangulation& t);
ValidityReport is_valid_subdivision(const PointConfiguration& cfg, const Subdivision& s);

// Face-to-face test for (possibly dependent) spanning cells: exhibits a weak
// separating functional vanishing exactly on the common face.
bool pair_face_to_face(const PointConfiguration& cfg, const Cell& a, const Cell& b);

// Is the point of `p` inside conv of the points of `hull_labels`?
bool point_in_hull(const PointConfiguration& cfg, Label p, const Cell& hull_labels);

// s1 refines s2: every cell of s1 lies in a cell of s2 and the cells of s1
// inside each cell of s2 form a valid subdivision of that subconfiguration.
bool refines(const PointConfiguration& cfg, const Subdivision& s1, const Subdivision& s2);

struct FlipSubdivision {
    Circuit circuit;
    Triangulation plus;  // refinement triangulating the circuit as T^C_+
    Triangulation minus; // ... as T^C_-
};

// If exactly one circuit is contained in cells of s, the two proper
// refinements of s (both triangulations); otherwise nullopt.
std::optional<FlipSubdivision> flip_subdivision_refinements(const PointConfiguration& cfg,
                                                            const Subdivision& s);

// All triangulations, by wall-extension backtracking from the cell containing
// a generic interior point.  Throws CapExceeded beyond `cap` results.
std::vector<Triangulation> enumerate_triangulations_bruteforce(const PointConfiguration& cfg,
                                                               size_t cap = 1u << 20);

// All triangulations refining s (product of per-cell triangulations filtered
// by global validity).
std::vector<Triangulation> triangulation_refinements(const PointConfiguration& cfg,
                                                     const Subdivision& s);

} // namespace trisec
