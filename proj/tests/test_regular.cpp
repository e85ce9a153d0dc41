#include <doctest.h>

#include <set>

#include "test_helpers.hpp"
#include "trisec/catalog.hpp"
#include "trisec/flips.hpp"

using namespace trisec;
using namespace trisec_test;

namespace {

Triangulation tri(std::vector<Cell> cells) { return Triangulation::from_cells(std::move(cells)); }
Subdivision sub(std::vector<Cell> cells) { return Subdivision::from_cells(std::move(cells)); }

Lift lift_of(const PointConfiguration& cfg, std::vector<Scalar> values) {
    Lift w;
    size_t i = 0;
    std::vector<Label> sorted = cfg.labels();
    std::sort(sorted.begin(), sorted.end());
    for (Label l : sorted) w.values[l] = values[i++];
    return w;
}

const std::vector<Cell> kStar5 = {{1, 2, 5}, {1, 3, 5}, {2, 4, 5}, {3, 4, 5}};

} // namespace

TEST_SUITE("regular") {

TEST_CASE("the zero lift produces the trivial subdivision") {
    PointConfiguration cfg = catalog::five_points();
    Subdivision s = subdivision_from_lift(cfg, Lift::constant(cfg, Scalar(0)));
    CHECK(s == sub({{1, 2, 3, 4, 5}}));
}

TEST_CASE("pulling a5 down produces its star") {
    PointConfiguration cfg = catalog::five_points();
    Lift w = lift_of(cfg, {Scalar(0), Scalar(0), Scalar(0), Scalar(0), Scalar(-1)});
    CHECK(subdivision_from_lift(cfg, w) == sub(kStar5));
}

TEST_CASE("lifts are invariant under adding affine functions") {
    std::mt19937_64 rng(43);
    PointConfiguration cfg = catalog::five_points();
    for (int iter = 0; iter < 20; ++iter) {
        Lift w;
        for (Label l : cfg.labels()) w.values[l] = random_rational_scalar(rng, 8);
        // Affine function alpha . x + beta evaluated on the points.
        Scalar a0 = random_rational_scalar(rng, 5), a1 = random_rational_scalar(rng, 5);
        Scalar b = random_rational_scalar(rng, 5);
        Lift shifted = w;
        for (Label l : cfg.labels()) {
            const Vec& x = cfg.coords(l);
            shifted.values[l] += a0 * x[0] + a1 * x[1] + b;
        }
        CHECK(subdivision_from_lift(cfg, w) == subdivision_from_lift(cfg, shifted));
    }
}

TEST_CASE("random lifts give valid subdivisions") {
    std::mt19937_64 rng(47);
    for (const PointConfiguration& cfg :
         {catalog::five_points(), catalog::moae(), catalog::prism()}) {
        for (int iter = 0; iter < 10; ++iter) {
            Lift w;
            for (Label l : cfg.labels()) w.values[l] = random_rational_scalar(rng, 12);
            CHECK(is_valid_subdivision(cfg, subdivision_from_lift(cfg, w)).ok);
        }
    }
}

TEST_CASE("all four five-point triangulations are regular") {
    PointConfiguration cfg = catalog::five_points();
    for (auto& t : enumerate_triangulations_bruteforce(cfg)) {
        auto r = is_regular(cfg, t);
        CHECK(r.regular);
        REQUIRE(r.certificate.has_value());
        // The certificate pins w = 0 on the first affine basis.
        CHECK(subdivision_from_lift(cfg, *r.certificate) == as_subdivision(t));
    }
}

TEST_CASE("moae T1 is infeasible") {
    PointConfiguration cfg = catalog::moae();
    Triangulation t1 = tri({{1, 2, 4}, {2, 3, 5}, {1, 3, 6}, {2, 4, 5}, {3, 5, 6}, {1, 4, 6},
                            {4, 5, 6}});
    CHECK(!is_regular(cfg, t1).regular);
}

TEST_CASE("lower envelopes of generic lifts are regular by construction") {
    std::mt19937_64 rng(53);
    PointConfiguration cfg = catalog::moae();
    int tested = 0;
    while (tested < 5) {
        Lift w;
        for (Label l : cfg.labels()) w.values[l] = Scalar(static_cast<long>(rng() % 1000));
        auto t = as_triangulation(cfg, subdivision_from_lift(cfg, w));
        if (!t) continue;
        ++tested;
        CHECK(is_regular(cfg, *t).regular);
    }
}

TEST_CASE("hexagon subdivision is regular") {
    PointConfiguration cfg = catalog::moae();
    Subdivision hex = sub({{1, 2, 4, 5}, {2, 3, 5, 6}, {1, 3, 4, 6}, {4, 5, 6}});
    auto r = is_regular_subdivision(cfg, hex);
    CHECK(r.regular);
}

TEST_CASE("all nine five-point subdivisions are regular") {
    PointConfiguration cfg = catalog::five_points();
    std::vector<Subdivision> nine = {
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
    for (const auto& s : nine) CHECK(is_regular_subdivision(cfg, s).regular);
}

TEST_CASE("gkz vectors of the five-point example") {
    PointConfiguration cfg = catalog::five_points();
    GkzVector g = gkz_vector(cfg, tri({{1, 2, 4}, {1, 3, 4}}));
    CHECK(g.entries.at(1) == Scalar(18));
    CHECK(g.entries.at(2) == Scalar(9));
    CHECK(g.entries.at(3) == Scalar(9));
    CHECK(g.entries.at(4) == Scalar(18));
    CHECK(g.entries.at(5) == Scalar(0)); // unused label

    // Star of a5, entries recomputed with the fraction-free oracle.
    GkzVector s = gkz_vector(cfg, tri(kStar5));
    std::map<Label, Scalar> expected;
    for (Label l : cfg.labels()) expected[l] = Scalar(0);
    for (const Cell& cell : kStar5) {
        Mat m;
        for (Label l : cell) m.push_back(cfg.homog(l));
        Scalar vol = det_bareiss_rational(m).abs();
        for (Label l : cell) expected[l] += vol;
    }
    CHECK(s.entries == expected);
    CHECK(s.sum() == Scalar(54)); // (d+1) * hull volume
}

TEST_CASE("gkz sum rule") {
    for (const PointConfiguration& cfg :
         {catalog::five_points(), catalog::moae(), catalog::prism()}) {
        Scalar expect = Scalar(static_cast<long>(cfg.homdim())) * cfg.hull_volume();
        for (const auto& t : enumerate_triangulations_bruteforce(cfg))
            CHECK(gkz_vector(cfg, t).sum() == expect);
    }
}

TEST_CASE("secondary polytope of the five-point example is a quadrilateral") {
    PointConfiguration cfg = catalog::five_points();
    auto tris = enumerate_triangulations_bruteforce(cfg);
    auto sec = secondary_polytope_summary(cfg, tris);
    CHECK(sec.dim == 2);
    CHECK(sec.f_vector == std::vector<size_t>{4, 4});
    CHECK(sec.total_faces == 9);
    CHECK(sec.vertex_triangulations.size() == 4);
}

TEST_CASE("secondary polytope of n = d+2 is a segment") {
    PointConfiguration cfg = catalog::collinear(3);
    auto tris = enumerate_triangulations_bruteforce(cfg);
    REQUIRE(tris.size() == 2);
    auto sec = secondary_polytope_summary(cfg, tris);
    CHECK(sec.dim == 1);
    CHECK(sec.f_vector == std::vector<size_t>{2});
    CHECK(sec.total_faces == 3);
}

TEST_CASE("secondary polytope of the hexagon is the 3-dimensional associahedron") {
    PointConfiguration cfg = catalog::convex_position(6);
    auto tris = enumerate_triangulations_bruteforce(cfg);
    REQUIRE(tris.size() == 14);
    auto sec = secondary_polytope_summary(cfg, tris);
    CHECK(sec.dim == 3);
    CHECK(sec.vertex_triangulations.size() == 14);
    // Edge count cross-checked against the flip graph; facets from Euler.
    FlipGraph g = flip_graph(cfg, {tris.front()});
    CHECK(sec.f_vector == std::vector<size_t>{14, g.edges.size(), 9});
    CHECK(14 - g.edges.size() + 9 == 2);
    // Vertices of the GKZ hull are exactly the regular triangulations.
    std::set<size_t> vertices(sec.vertex_triangulations.begin(),
                              sec.vertex_triangulations.end());
    for (size_t i = 0; i < tris.size(); ++i)
        CHECK(vertices.count(i) == (is_regular(cfg, tris[i]).regular ? 1 : 0));
}

TEST_CASE("gkz hull vertices match regularity on moae") {
    PointConfiguration cfg = catalog::moae();
    auto tris = enumerate_triangulations_bruteforce(cfg);
    CHECK(tris.size() == 18);
    auto sec = secondary_polytope_summary(cfg, tris);
    CHECK(sec.dim == 3);
    CHECK(sec.f_vector == std::vector<size_t>{16, 24, 10});
    CHECK(16 - 24 + 10 == 2);
    std::set<size_t> vertices(sec.vertex_triangulations.begin(),
                              sec.vertex_triangulations.end());
    CHECK(vertices.size() == 16); // the two non-regular ones are not vertices
    for (size_t i = 0; i < tris.size(); ++i)
        CHECK(vertices.count(i) == (is_regular(cfg, tris[i]).regular ? 1 : 0));

    // Flips between regular triangulations are exactly the polytope edges.
    FlipGraph g = flip_graph(cfg, {tris.front()});
    std::set<std::vector<Cell>> regular_cells;
    for (size_t i : sec.vertex_triangulations) regular_cells.insert(tris[i].cells);
    size_t regular_edges = 0;
    for (const auto& e : g.edges)
        if (regular_cells.count(g.nodes[e.a].cells) && regular_cells.count(g.nodes[e.b].cells))
            ++regular_edges;
    CHECK(regular_edges == sec.f_vector[1]);
}

TEST_CASE("standard lifts") {
    PointConfiguration five = catalog::five_points();
    Lift pull = standard_lift(five, LiftKind::Pulling);
    CHECK(subdivision_from_lift(five, pull) == sub(kStar5));

    // Pulling with the default order matches the recursive join-the-last-
    // point construction.
    for (const PointConfiguration& cfg :
         {catalog::five_points(), catalog::convex_position(6), catalog::collinear(5),
          catalog::prism(), catalog::octagon()}) {
        Lift w = standard_lift(cfg, LiftKind::Pulling);
        Subdivision s = subdivision_from_lift(cfg, w);
        CHECK(s == as_subdivision(Triangulation::from_cells(cfg.placing_triangulation())));
    }

    // Delaunay on a cocircular square degenerates to the trivial subdivision.
    auto s = [](long v) { return Scalar(v); };
    PointConfiguration square({1, 2, 3, 4},
                              {{s(0), s(0)}, {s(1), s(0)}, {s(0), s(1)}, {s(1), s(1)}}, false);
    Subdivision d = subdivision_from_lift(square, standard_lift(square, LiftKind::Delaunay));
    CHECK(d == sub({{1, 2, 3, 4}}));

    // Pushing collinear points left to right uses every point.
    PointConfiguration line = catalog::collinear(5);
    Subdivision pushed = subdivision_from_lift(line, standard_lift(line, LiftKind::Pushing));
    CHECK(pushed == sub({{1, 2}, {2, 3}, {3, 4}, {4, 5}}));

    CHECK_THROWS_AS(standard_lift(five, LiftKind::Pulling, {1, 2, 3}), Error);
}

TEST_CASE("T_w is the unique minimum among its flip neighbors") {
    std::mt19937_64 rng(59);
    for (const PointConfiguration& cfg : {catalog::five_points(), catalog::moae()}) {
        int tested = 0;
        while (tested < 4) {
            Lift w;
            for (Label l : cfg.labels()) w.values[l] = Scalar(static_cast<long>(rng() % 4096));
            auto tw = as_triangulation(cfg, subdivision_from_lift(cfg, w));
            if (!tw) continue;
            ++tested;
            for (const auto& f : find_flips(cfg, *tw)) {
                Triangulation nb = apply_flip(cfg, *tw, f);
                CHECK(monotone_compare(cfg, w, *tw, nb) == MonotoneOrder::FirstBelow);
            }
        }
    }
}

TEST_CASE("monotone comparison") {
    PointConfiguration cfg = catalog::five_points();
    Triangulation star = tri(kStar5);
    Triangulation diag = tri({{1, 2, 4}, {1, 3, 4}});
    Lift delaunay = standard_lift(cfg, LiftKind::Delaunay);
    CHECK(monotone_compare(cfg, delaunay, star, diag) == MonotoneOrder::FirstBelow);
    CHECK(monotone_compare(cfg, delaunay, diag, star) == MonotoneOrder::SecondBelow);
    CHECK(monotone_compare(cfg, Lift::constant(cfg, Scalar(0)), star, diag) ==
          MonotoneOrder::IncomparableOrEqual);

    Triangulation far = tri({{1, 2, 5}, {1, 3, 5}, {2, 3, 5}, {2, 3, 4}});
    CHECK_THROWS_AS(monotone_compare(cfg, delaunay, far, diag), Error);
}

} // TEST_SUITE
