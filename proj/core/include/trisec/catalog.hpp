#pragma once

#include <array>
#include <chrono>
#include <map>
#include <string>

#include "trisec/flips.hpp"

namespace trisec {
namespace catalog {

// Exact builders.  Labels are 1-based in column order of the defining data.
PointConfiguration five_points();
PointConfiguration moae(); // two nested triangles, homogeneous 3x6 matrix
PointConfiguration moae_perturbed(const Rational& eps = Rational(1, 100));
PointConfiguration schoenhardt8(const Rational& eps = Rational(1, 100));
PointConfiguration prism();
PointConfiguration convex_position(int n); // moment curve (i, i^2)
PointConfiguration collinear(int n);       // x = 1..n on a line
PointConfiguration octagon();              // regular octagon, coordinates in Q(sqrt 2)
// 17 points in R^6: label 1 = O, labels 2..9 = a1+..a8+, labels 10..17 = a1-..a8-.
PointConfiguration a_of_t(const Rational& t);
// The 8-point subconfiguration F_{d1,d2,d3,d4} of a_of_t re-coordinatized in
// an affine chart of its 5-dimensional span; label i is a_i^{d_((i-1) mod 4)+1}.
PointConfiguration f_config(const std::array<int, 4>& deltas, const Rational& t);

// String-keyed access for the CLI: name plus parameter map (keys t, eps, n,
// d1..d4 as applicable).
PointConfiguration build(const std::string& name,
                         const std::map<std::string, std::string>& params = {});
std::vector<std::string> names();

// The 14-cell triangulation of schoenhardt8 coning the seven non-big boundary
// triangles to both apexes.
Triangulation schoenhardt_T(const Rational& eps = Rational(1, 100));

struct Report {
    std::vector<std::pair<std::string, bool>> checks;
    std::vector<std::string> notes;

    void check(const std::string& what, bool pass) { checks.emplace_back(what, pass); }
    void note(std::string s) { notes.push_back(std::move(s)); }
    bool ok() const {
        for (const auto& [w, p] : checks)
            if (!p) return false;
        return true;
    }
    std::string str() const;
};

// The four identities a_i+ + a_{i+4}+ + a_i- + a_{i+4}- = 4 O, plus the
// failure of general position.
Report verify_A0_degeneracies(const Rational& t);

// Facet census of F, its eight triangulations, the 8-cycle flip graph, and
// the one-switched-facet property of each flip.
Report verify_F_structure(const Rational& t);

// Induced boundary triangulation: hull facet -> the (d-1)-cells of t lying in
// that facet's hyperplane.
using BoundaryComplex = std::map<Cell, std::vector<Cell>>;
BoundaryComplex boundary_complex(const PointConfiguration& cfg, const Triangulation& t);

struct BoundaryFlipReport {
    bool all_preserve = true;
    std::vector<Flip> violating;
};
BoundaryFlipReport boundary_preserving_flips(const PointConfiguration& cfg,
                                             const Triangulation& t, const BoundaryComplex& k);

// Boundary choices of the triangular prism: 8 total, 6 extendable; each flip
// switches exactly one quad facet's diagonal.
Report verify_prism();

struct RigidSearchResult {
    bool boundary_search_exhaustive = false;
    size_t boundary_solutions = 0; // assignments satisfying agreement + rigidity
    bool found = false;            // a (K, T) pair was produced
    std::optional<BoundaryComplex> k;
    std::optional<Triangulation> extension;
    std::vector<std::string> trace;
};

// Searches for a boundary triangulation K of a_of_t(0) made of compatible
// rigid F-facet triangulations, then extends K to a full triangulation.
RigidSearchResult search_rigid_K(std::chrono::seconds budget);

} // namespace catalog
} // namespace trisec
