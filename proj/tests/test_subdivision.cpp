#include <doctest.h>

#include <functional>
#include <map>
#include <set>

#include "test_helpers.hpp"
#include "trisec/catalog.hpp"
#include "trisec/subdivision.hpp"

using namespace trisec;
using namespace trisec_test;

namespace {

Triangulation tri(std::vector<Cell> cells) { return Triangulation::from_cells(std::move(cells)); }
Subdivision sub(std::vector<Cell> cells) { return Subdivision::from_cells(std::move(cells)); }

// The nine polyhedral subdivisions of the five-point example; {123,234} is
// the corner triangulation on the unused-point side (it covers the hull,
// unlike the superficially similar {135,234}).
std::vector<Subdivision> five_point_subdivisions() {
    return {
        sub({{1, 2, 5}, {1, 3, 5}, {2, 3, 5}, {2, 3, 4}}),
        sub({{1, 2, 3, 5}, {2, 3, 4}}),
        sub({{1, 2, 3}, {2, 3, 4}}),
        sub({{1, 2, 5}, {1, 3, 5}, {2, 3, 4, 5}}),
        sub({{1, 2, 3, 4, 5}}),
        sub({{1, 2, 3, 4}}),
        sub({{1, 2, 5}, {1, 3, 5}, {2, 4, 5}, {3, 4, 5}}),
        sub({{1, 2, 4, 5}, {1, 3, 4, 5}}),
        sub({{1, 2, 4}, {1, 3, 4}}),
    };
}

} // namespace

TEST_SUITE("subdivision") {

TEST_CASE("canonical form sorts cells") {
    Triangulation t = tri({{2, 3, 4}, {1, 2, 5}});
    CHECK(t.cells == std::vector<Cell>{{1, 2, 5}, {2, 3, 4}});
    CHECK(t.str() == "{1 2 5, 2 3 4}");
}

TEST_CASE("five-point triangulation validity") {
    PointConfiguration cfg = catalog::five_points();
    CHECK(is_valid_triangulation(cfg, tri({{1, 2, 5}, {1, 3, 5}, {2, 3, 5}, {2, 3, 4}})).ok);
    CHECK(is_valid_triangulation(cfg, tri({{1, 2, 3}, {2, 3, 4}})).ok);
    CHECK(is_valid_triangulation(cfg, tri({{1, 2, 4}, {1, 3, 4}})).ok);
    CHECK(is_valid_triangulation(cfg, tri({{1, 2, 5}, {1, 3, 5}, {2, 4, 5}, {3, 4, 5}})).ok);
}

TEST_CASE("overlapping pair is rejected with the witnessing circuit") {
    PointConfiguration cfg = catalog::five_points();
    auto rep = is_valid_triangulation(cfg, tri({{1, 2, 3}, {1, 2, 4}}));
    CHECK(!rep.ok);
    bool has_improper = false;
    for (const auto& v : rep.violations) {
        if (v.kind == Violation::Kind::ImproperPair) {
            has_improper = true;
            REQUIRE(v.circuit.has_value());
            CHECK(v.circuit->support == Cell{1, 2, 3, 4});
        }
    }
    CHECK(has_improper);

    // A pair that undercovers without overlapping is caught by the volume
    // check instead.
    auto rep2 = is_valid_triangulation(cfg, tri({{1, 2, 3}}));
    CHECK(!rep2.ok);
    bool has_volume = false;
    for (const auto& v : rep2.violations)
        if (v.kind == Violation::Kind::VolumeMismatch) has_volume = true;
    CHECK(has_volume);
}

TEST_CASE("degenerate cell is rejected") {
    PointConfiguration cfg = catalog::five_points();
    auto rep = is_valid_triangulation(cfg, tri({{1, 4, 5}, {1, 2, 3}}));
    CHECK(!rep.ok);
    CHECK(rep.violations.front().kind == Violation::Kind::DependentCell);
}

TEST_CASE("moae triangulations are valid") {
    PointConfiguration cfg = catalog::moae();
    CHECK(is_valid_triangulation(
              cfg, tri({{1, 2, 4}, {2, 3, 5}, {1, 3, 6}, {2, 4, 5}, {3, 5, 6}, {1, 4, 6},
                        {4, 5, 6}}))
              .ok);
}

TEST_CASE("subdivision validity") {
    PointConfiguration cfg = catalog::five_points();
    CHECK(is_valid_subdivision(cfg, sub({{1, 2, 3, 5}, {2, 3, 4}})).ok);
    CHECK(is_valid_subdivision(cfg, sub({{1, 2, 3, 4, 5}})).ok); // trivial
    CHECK(is_valid_subdivision(cfg, sub({{1, 2, 3, 4}})).ok);    // unused interior point
    CHECK(!is_valid_subdivision(cfg, sub({{1, 2, 3, 5}, {2, 3, 4, 5}})).ok);

    PointConfiguration moae = catalog::moae();
    CHECK(is_valid_subdivision(moae, sub({{1, 2, 4, 5}, {2, 3, 5, 6}, {1, 3, 4, 6}, {4, 5, 6}}))
              .ok);
}

TEST_CASE("membership condition is reported") {
    // {1,2,4,5} and {1,3,4}: the common face is conv{1,4} whose relative
    // interior contains point 5, a member of only one of the two cells.
    PointConfiguration cfg = catalog::five_points();
    auto rep = is_valid_subdivision(cfg, sub({{1, 2, 4, 5}, {1, 3, 4}}));
    CHECK(!rep.ok);
    bool membership = false;
    for (const auto& v : rep.violations)
        if (v.kind == Violation::Kind::MembershipViolation) membership = true;
    CHECK(membership);
}

TEST_CASE("all nine five-point subdivisions are valid") {
    PointConfiguration cfg = catalog::five_points();
    for (const auto& s : five_point_subdivisions()) CHECK(is_valid_subdivision(cfg, s).ok);
}

TEST_CASE("refinement relation on known coarsenings") {
    PointConfiguration cfg = catalog::five_points();
    auto star5 = sub({{1, 2, 5}, {1, 3, 5}, {2, 3, 5}, {2, 3, 4}});
    auto coarse = sub({{1, 2, 3, 5}, {2, 3, 4}});
    auto trivial = sub({{1, 2, 3, 4, 5}});
    CHECK(refines(cfg, star5, coarse));
    CHECK(!refines(cfg, coarse, star5));
    CHECK(refines(cfg, star5, trivial));
    CHECK(refines(cfg, sub({{1, 2, 4}, {1, 3, 4}}), sub({{1, 2, 4, 5}, {1, 3, 4, 5}})));
}

TEST_CASE("refines is a partial order on the nine subdivisions") {
    PointConfiguration cfg = catalog::five_points();
    auto all = five_point_subdivisions();
    for (size_t i = 0; i < all.size(); ++i) {
        CHECK(refines(cfg, all[i], all[i])); // reflexive
        for (size_t j = 0; j < all.size(); ++j) {
            if (i == j) continue;
            bool ij = refines(cfg, all[i], all[j]);
            bool ji = refines(cfg, all[j], all[i]);
            CHECK(!(ij && ji)); // antisymmetric on distinct canonical forms
            if (!ij) continue;
            for (size_t k = 0; k < all.size(); ++k)
                if (refines(cfg, all[j], all[k])) CHECK(refines(cfg, all[i], all[k]));
        }
    }
    // Exactly the four triangulations refine nothing further: count minima.
    size_t minima = 0;
    for (size_t i = 0; i < all.size(); ++i) {
        bool minimal = true;
        for (size_t j = 0; j < all.size(); ++j)
            if (i != j && refines(cfg, all[j], all[i])) minimal = false;
        if (minimal) ++minima;
    }
    CHECK(minima == 4);
}

TEST_CASE("flip subdivision refinements") {
    PointConfiguration cfg = catalog::five_points();
    auto fs = flip_subdivision_refinements(cfg, sub({{1, 2, 3, 5}, {2, 3, 4}}));
    REQUIRE(fs.has_value());
    CHECK(fs->circuit.positive == Cell{1, 2, 3});
    CHECK(fs->circuit.negative == Cell{5});
    CHECK(fs->plus == tri({{1, 2, 5}, {1, 3, 5}, {2, 3, 5}, {2, 3, 4}}));
    CHECK(fs->minus == tri({{1, 2, 3}, {2, 3, 4}}));

    // A triangulation has no dependent cell.
    CHECK(!flip_subdivision_refinements(cfg, sub({{1, 2, 3}, {2, 3, 4}})).has_value());

    // n = d+2: the trivial subdivision is a flip onto the two circuit
    // triangulations.
    PointConfiguration three = catalog::collinear(3);
    auto fs2 = flip_subdivision_refinements(three, sub({{1, 2, 3}}));
    REQUIRE(fs2.has_value());
    std::set<Triangulation> got{fs2->plus, fs2->minus};
    std::set<Triangulation> expected{tri({{1, 3}}), tri({{1, 2}, {2, 3}})};
    CHECK(got == expected);

    // The trivial subdivision of the five-point set carries two circuits.
    CHECK(!flip_subdivision_refinements(cfg, sub({{1, 2, 3, 4, 5}})).has_value());
}

TEST_CASE("brute-force enumeration counts") {
    CHECK(enumerate_triangulations_bruteforce(catalog::five_points()).size() == 4);
    CHECK(enumerate_triangulations_bruteforce(catalog::collinear(4)).size() == 4);
    CHECK(enumerate_triangulations_bruteforce(catalog::convex_position(6)).size() == 14);
}

TEST_CASE("enumeration results are valid and unique") {
    for (const PointConfiguration& cfg :
         {catalog::five_points(), catalog::moae(), catalog::prism(), catalog::collinear(5)}) {
        auto tris = enumerate_triangulations_bruteforce(cfg);
        std::set<std::vector<Cell>> seen;
        for (const auto& t : tris) {
            CHECK(is_valid_triangulation(cfg, t).ok);
            CHECK(seen.insert(t.cells).second);
        }
    }
}

TEST_CASE("circuit route and separating-functional route agree on cell pairs") {
    // Two independent implementations of proper intersection: the sign-based
    // circuit scan and the exact-LP weak separation test.
    std::mt19937_64 rng(61);
    for (const PointConfiguration& cfg :
         {catalog::five_points(), catalog::moae(), catalog::prism()}) {
        std::vector<Cell> cells;
        std::vector<Label> labels = cfg.labels();
        // All independent (d+1)-subsets.
        std::vector<size_t> idx(cfg.homdim());
        std::function<void(size_t, size_t)> rec = [&](size_t start, size_t k) {
            if (k == idx.size()) {
                Cell c;
                for (size_t i : idx) c.push_back(labels[i]);
                std::sort(c.begin(), c.end());
                Mat m;
                for (Label l : c) m.push_back(cfg.homog(l));
                if (!det(std::move(m)).is_zero()) cells.push_back(c);
                return;
            }
            for (size_t i = start; i + (idx.size() - k) <= labels.size(); ++i) {
                idx[k] = i;
                rec(i + 1, k + 1);
            }
        };
        rec(0, 0);
        for (int iter = 0; iter < 150; ++iter) {
            const Cell& a = cells[rng() % cells.size()];
            const Cell& b = cells[rng() % cells.size()];
            if (a == b) continue;
            bool by_circuit = cfg.cells_proper(cfg.mask_of(a), cfg.mask_of(b));
            bool by_lp = pair_face_to_face(cfg, a, b);
            CHECK(by_circuit == by_lp);
        }
    }
}

TEST_CASE("interior walls are shared by exactly two cells") {
    for (const PointConfiguration& cfg :
         {catalog::five_points(), catalog::moae(), catalog::prism()}) {
        for (const auto& t : enumerate_triangulations_bruteforce(cfg)) {
            std::map<Cell, int> owners;
            for (const auto& cell : t.cells)
                for (size_t drop = 0; drop < cell.size(); ++drop) {
                    Cell wall;
                    for (size_t i = 0; i < cell.size(); ++i)
                        if (i != drop) wall.push_back(cell[i]);
                    ++owners[wall];
                }
            for (const auto& [wall, count] : owners) {
                if (count == 2) continue;
                REQUIRE(count == 1);
                // Must lie in a hull facet: all points weakly on one side.
                Mat m;
                for (Label l : wall) m.push_back(cfg.homog(l));
                auto h = kernel_basis(m);
                REQUIRE(h.size() == 1);
                int side = 0;
                bool boundary = true;
                for (Label l : cfg.labels()) {
                    Scalar e(0);
                    for (size_t r = 0; r < cfg.homdim(); ++r)
                        e += h[0][r] * cfg.homog(l)[r];
                    if (e.sign() == 0) continue;
                    if (side == 0)
                        side = e.sign();
                    else if (side != e.sign())
                        boundary = false;
                }
                CHECK(boundary);
            }
        }
    }
}

TEST_CASE("enumeration cap") {
    CHECK_THROWS_AS(enumerate_triangulations_bruteforce(catalog::convex_position(7), 10), Error);
}

TEST_CASE("triangulation refinements of the hexagon subdivision") {
    PointConfiguration cfg = catalog::moae();
    auto refs = triangulation_refinements(
        cfg, sub({{1, 2, 4, 5}, {2, 3, 5, 6}, {1, 3, 4, 6}, {4, 5, 6}}));
    CHECK(refs.size() == 8);
    for (const auto& t : refs) CHECK(is_valid_triangulation(cfg, t).ok);
}

} // TEST_SUITE
