#include <doctest.h>

#include <set>

#include "test_helpers.hpp"
#include "trisec/catalog.hpp"
#include "trisec/flips.hpp"

using namespace trisec;
using namespace trisec_test;

namespace {

Triangulation tri(std::vector<Cell> cells) { return Triangulation::from_cells(std::move(cells)); }

std::pair<int, int> norm(std::pair<int, int> t) {
    if (t.first > t.second) std::swap(t.first, t.second);
    return t;
}

const std::vector<Cell> kStar5 = {{1, 2, 5}, {1, 3, 5}, {2, 4, 5}, {3, 4, 5}};

} // namespace

TEST_SUITE("flips") {

TEST_CASE("flips of the star of a5") {
    PointConfiguration cfg = catalog::five_points();
    auto flips = find_flips(cfg, tri(kStar5));
    REQUIRE(flips.size() == 2);
    std::multiset<std::pair<int, int>> types;
    for (const auto& f : flips) types.insert(f.type);
    CHECK(types == std::multiset<std::pair<int, int>>{{2, 2}, {2, 1}});
}

TEST_CASE("insertion flip into a triangle") {
    PointConfiguration cfg = catalog::five_points();
    Triangulation t = tri({{1, 2, 3}, {2, 3, 4}});
    auto flips = find_flips(cfg, t);
    REQUIRE(flips.size() == 2); // the diagonal flip and the insertion of a5
    const Flip* insertion = nullptr;
    for (const auto& f : flips)
        if (f.is_insertion()) insertion = &f;
    REQUIRE(insertion != nullptr);
    CHECK(insertion->type == std::make_pair(1, 3));
    CHECK(apply_flip(cfg, t, *insertion) ==
          tri({{1, 2, 5}, {1, 3, 5}, {2, 3, 5}, {2, 3, 4}}));
}

TEST_CASE("insertion onto the interior edge") {
    PointConfiguration cfg = catalog::five_points();
    Triangulation t = tri({{1, 2, 4}, {1, 3, 4}});
    auto flips = find_flips(cfg, t);
    const Flip* insertion = nullptr;
    for (const auto& f : flips)
        if (f.is_insertion()) insertion = &f;
    REQUIRE(insertion != nullptr);
    CHECK(insertion->type == std::make_pair(1, 2));
    CHECK(insertion->circuit.support == Cell{1, 4, 5});
    CHECK(apply_flip(cfg, t, *insertion) == tri(kStar5));
}

TEST_CASE("flip reversal is an exact involution") {
    for (const PointConfiguration& cfg :
         {catalog::five_points(), catalog::moae(), catalog::prism(), catalog::collinear(5)}) {
        for (const auto& t : enumerate_triangulations_bruteforce(cfg)) {
            for (const auto& f : find_flips(cfg, t)) {
                Triangulation t2 = apply_flip(cfg, t, f);
                CHECK(is_valid_triangulation(cfg, t2).ok);
                CHECK(apply_flip(cfg, t2, reversed(f)) == t);
            }
        }
    }
}

TEST_CASE("find_flips rejects invalid triangulations") {
    PointConfiguration cfg = catalog::five_points();
    CHECK_THROWS_AS(find_flips(cfg, tri({{1, 2, 3}, {1, 2, 4}})), Error);
    CHECK_THROWS_AS(find_flips(cfg, tri({{1, 2, 3}})), Error);
}

TEST_CASE("inapplicable flips are rejected") {
    PointConfiguration cfg = catalog::five_points();
    Triangulation t = tri({{1, 2, 3}, {2, 3, 4}});
    auto flips = find_flips(cfg, t);
    Triangulation other = tri(kStar5);
    CHECK_THROWS_AS(apply_flip(cfg, other, flips.front()), Error);
}

TEST_CASE("n = d+2 has exactly two triangulations connected by one flip") {
    PointConfiguration cfg = catalog::collinear(3);
    auto tris = enumerate_triangulations_bruteforce(cfg);
    REQUIRE(tris.size() == 2);
    for (const auto& t : tris) {
        auto flips = find_flips(cfg, t);
        REQUIRE(flips.size() == 1);
        CHECK(apply_flip(cfg, t, flips.front()) == (t == tris[0] ? tris[1] : tris[0]));
    }
}

TEST_CASE("five-point flip graph is a 4-cycle with the expected types") {
    PointConfiguration cfg = catalog::five_points();
    FlipGraphOptions opt;
    opt.want_diameter = true;
    FlipGraph g = flip_graph(cfg, {tri({{1, 2, 3}, {2, 3, 4}})}, opt);
    CHECK(g.nodes.size() == 4);
    CHECK(g.edges.size() == 4);
    CHECK(g.components.size() == 1);
    CHECK(g.components.front().diameter == 2);
    for (size_t i = 0; i < g.nodes.size(); ++i) CHECK(g.degree(i) == 2);
    std::multiset<std::pair<int, int>> types;
    for (const auto& e : g.edges) types.insert(norm(e.type));
    CHECK(types == std::multiset<std::pair<int, int>>{{2, 2}, {2, 2}, {1, 3}, {1, 2}});
}

TEST_CASE("collinear flip graphs are hypercubes") {
    PointConfiguration cfg = catalog::collinear(5);
    FlipGraphOptions opt;
    opt.want_diameter = true;
    FlipGraph g = flip_graph(cfg, {tri({{1, 2}, {2, 3}, {3, 4}, {4, 5}})}, opt);
    CHECK(g.nodes.size() == 8);
    CHECK(g.edges.size() == 12);
    for (size_t i = 0; i < g.nodes.size(); ++i) CHECK(g.degree(i) == 3);
    CHECK(g.components.front().diameter == 3);
}

TEST_CASE("bfs equals enumeration on small configurations") {
    for (const PointConfiguration& cfg :
         {catalog::five_points(), catalog::moae(), catalog::convex_position(6),
          catalog::prism()}) {
        auto tris = enumerate_triangulations_bruteforce(cfg);
        FlipGraph g = flip_graph(cfg, {tris.front()});
        std::set<std::vector<Cell>> a, b;
        for (const auto& t : tris) a.insert(t.cells);
        for (const auto& t : g.nodes) b.insert(t.cells);
        CHECK(a == b);
    }
}

TEST_CASE("parallel BFS matches single-threaded BFS") {
    PointConfiguration cfg = catalog::convex_position(7);
    FlipGraphOptions seq, par;
    par.threads = 4;
    FlipGraph g1 = flip_graph(cfg, {Triangulation::from_cells(cfg.placing_triangulation())}, seq);
    FlipGraph g2 = flip_graph(cfg, {Triangulation::from_cells(cfg.placing_triangulation())}, par);
    CHECK(g1.nodes.size() == 42);
    std::vector<std::vector<Cell>> n1, n2;
    for (const auto& t : g1.nodes) n1.push_back(t.cells);
    for (const auto& t : g2.nodes) n2.push_back(t.cells);
    CHECK(n1 == n2);
    CHECK(g1.edges.size() == g2.edges.size());
}

TEST_CASE("multiple seeds land in one component when connected") {
    PointConfiguration cfg = catalog::five_points();
    Triangulation a = tri({{1, 2, 3}, {2, 3, 4}});
    Triangulation b = tri(kStar5);
    FlipGraph g = flip_graph(cfg, {a, b});
    CHECK(g.nodes.size() == 4);
    CHECK(g.components.size() == 1);
    CHECK(g.components.front().edges.size() == g.edges.size());
}

TEST_CASE("flip graph cap truncates with a marker") {
    PointConfiguration cfg = catalog::convex_position(7);
    FlipGraphOptions opt;
    opt.cap = 10;
    FlipGraph g = flip_graph(cfg, {Triangulation::from_cells(cfg.placing_triangulation())}, opt);
    CHECK(g.truncated);
    CHECK(g.nodes.size() == 10);
}

TEST_CASE("regular triangulations have at least n-d-1 flips") {
    for (const PointConfiguration& cfg :
         {catalog::five_points(), catalog::moae(), catalog::convex_position(6),
          catalog::prism(), catalog::collinear(6)}) {
        size_t lower = cfg.size() - cfg.homdim();
        for (const auto& t : enumerate_triangulations_bruteforce(cfg)) {
            if (!is_regular(cfg, t).regular) continue;
            CHECK(find_flips(cfg, t).size() >= lower);
        }
    }
}

TEST_CASE("monotone sequence reaches the regular target from a regular start") {
    PointConfiguration cfg = catalog::five_points();
    Lift delaunay = standard_lift(cfg, LiftKind::Delaunay);
    auto tw = as_triangulation(cfg, subdivision_from_lift(cfg, delaunay));
    REQUIRE(tw.has_value());
    for (const auto& t : enumerate_triangulations_bruteforce(cfg)) {
        for (auto policy : {MonotonePolicy::First, MonotonePolicy::Steepest}) {
            auto res = monotone_flip_sequence(cfg, t, delaunay, policy);
            CHECK(!res.stuck);
            CHECK(res.final == *tw);
            // Strict decrease along the sequence.
            Triangulation cur = t;
            Scalar last = lift_gkz_inner(delaunay, gkz_vector(cfg, cur));
            for (const auto& f : res.flips) {
                cur = apply_flip(cfg, cur, f);
                Scalar next = lift_gkz_inner(delaunay, gkz_vector(cfg, cur));
                CHECK((next - last).sign() < 0);
                last = next;
            }
        }
    }
}

TEST_CASE("monotone sequence with t0 == tw is empty") {
    PointConfiguration cfg = catalog::five_points();
    Lift delaunay = standard_lift(cfg, LiftKind::Delaunay);
    auto tw = as_triangulation(cfg, subdivision_from_lift(cfg, delaunay));
    REQUIRE(tw.has_value());
    auto res = monotone_flip_sequence(cfg, *tw, delaunay);
    CHECK(res.flips.empty());
    CHECK(!res.stuck);
}

TEST_CASE("monotone sequence demands a generic lift") {
    PointConfiguration cfg = catalog::five_points();
    Triangulation t = tri({{1, 2, 3}, {2, 3, 4}});
    CHECK_THROWS_AS(monotone_flip_sequence(cfg, t, Lift::constant(cfg, Scalar(0))), Error);
}

TEST_CASE("incremental construction equals the lower envelope") {
    PointConfiguration cfg = catalog::five_points();
    Lift pull = standard_lift(cfg, LiftKind::Pulling);
    for (std::vector<Label> order :
         {std::vector<Label>{1, 2, 3, 4, 5}, std::vector<Label>{2, 4, 3, 5, 1},
          std::vector<Label>{3, 1, 2, 5, 4}}) {
        Triangulation t = incremental_construction(cfg, pull, order);
        CHECK(as_subdivision(t) == subdivision_from_lift(cfg, pull));
    }

    // n = d+1: the single cell, no flips.
    auto s = [](long v) { return Scalar(v); };
    PointConfiguration simplex({1, 2, 3}, {{s(0), s(0)}, {s(2), s(0)}, {s(0), s(2)}}, false);
    Triangulation t = incremental_construction(simplex, Lift::constant(simplex, Scalar(0)),
                                               {1, 2, 3});
    CHECK(t == tri({{1, 2, 3}}));
}

TEST_CASE("incremental construction rejects degenerate input") {
    PointConfiguration cfg = catalog::five_points();
    CHECK_THROWS_AS(incremental_construction(cfg, Lift::constant(cfg, Scalar(0)),
                                             {1, 2, 3, 4, 5}),
                    Error);
    Lift pull = standard_lift(cfg, LiftKind::Pulling);
    // 1, 4, 5 are collinear: bad starting simplex.
    CHECK_THROWS_AS(incremental_construction(cfg, pull, {1, 4, 5, 2, 3}), Error);
    CHECK_THROWS_AS(incremental_construction(cfg, pull, {1, 2, 3}), Error);
}

} // TEST_SUITE
