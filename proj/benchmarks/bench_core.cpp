#include <benchmark/benchmark.h>

#include "trisec/catalog.hpp"
#include "trisec/flips.hpp"

using namespace trisec;

namespace {

void BM_ScalarMul(benchmark::State& state) {
    Scalar a(Rational(355, 113), Rational(-2, 7));
    Scalar b(Rational(-13, 9), Rational(5, 3));
    for (auto _ : state) {
        Scalar c = a * b;
        benchmark::DoNotOptimize(c);
    }
}
BENCHMARK(BM_ScalarMul);

void BM_Det7(benchmark::State& state) {
    PointConfiguration a = catalog::a_of_t(Rational(1, 8));
    Mat m;
    for (int l = 1; l <= 7; ++l) m.push_back(a.homog(l));
    for (auto _ : state) {
        Scalar d = det(m);
        benchmark::DoNotOptimize(d);
    }
}
BENCHMARK(BM_Det7);

void BM_OrientationCached(benchmark::State& state) {
    PointConfiguration cfg = catalog::moae();
    std::vector<Label> tuple{1, 4, 6};
    for (auto _ : state) {
        int s = cfg.orientation(tuple);
        benchmark::DoNotOptimize(s);
    }
}
BENCHMARK(BM_OrientationCached);

void BM_FindFlipsMoae(benchmark::State& state) {
    PointConfiguration cfg = catalog::moae();
    Triangulation t1 = Triangulation::from_cells(
        {{1, 2, 4}, {2, 3, 5}, {1, 3, 6}, {2, 4, 5}, {3, 5, 6}, {1, 4, 6}, {4, 5, 6}});
    for (auto _ : state) {
        auto flips = find_flips(cfg, t1);
        benchmark::DoNotOptimize(flips);
    }
}
BENCHMARK(BM_FindFlipsMoae);

void BM_LowerEnvelopeOctagon(benchmark::State& state) {
    PointConfiguration cfg = catalog::octagon();
    Lift w = standard_lift(cfg, LiftKind::Delaunay);
    for (auto _ : state) {
        Subdivision s = subdivision_from_lift(cfg, w);
        benchmark::DoNotOptimize(s);
    }
}
BENCHMARK(BM_LowerEnvelopeOctagon);

void BM_FlipGraphCollinear(benchmark::State& state) {
    PointConfiguration cfg = catalog::collinear(static_cast<int>(state.range(0)));
    Triangulation seed = Triangulation::from_cells(cfg.placing_triangulation());
    for (auto _ : state) {
        FlipGraph g = flip_graph(cfg, {seed});
        benchmark::DoNotOptimize(g);
    }
}
BENCHMARK(BM_FlipGraphCollinear)->Arg(6)->Arg(8);

void BM_EnumerateConvex(benchmark::State& state) {
    PointConfiguration cfg = catalog::convex_position(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        auto tris = enumerate_triangulations_bruteforce(cfg);
        benchmark::DoNotOptimize(tris);
    }
}
BENCHMARK(BM_EnumerateConvex)->Arg(6)->Arg(8);

void BM_RegularityCertificate(benchmark::State& state) {
    PointConfiguration cfg = catalog::convex_position(7);
    auto tris = enumerate_triangulations_bruteforce(cfg);
    for (auto _ : state) {
        auto r = is_regular(cfg, tris[state.iterations() % tris.size()]);
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(BM_RegularityCertificate);

} // namespace

BENCHMARK_MAIN();
