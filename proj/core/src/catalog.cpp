#include "trisec/catalog.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace trisec {
namespace catalog {

namespace {

Scalar S(long v) { return Scalar(v); }
Scalar S(const Rational& v) { return Scalar(v); }
Scalar R2(long k) { return Scalar(Rational(0), Rational(k)); } // k * sqrt(2)

std::vector<Label> seq(int n) {
    std::vector<Label> l(n);
    for (int i = 0; i < n; ++i) l[i] = i + 1;
    return l;
}

} // namespace

PointConfiguration five_points() {
    std::vector<Vec> pts = {
        {S(0), S(0)}, {S(3), S(0)}, {S(0), S(3)}, {S(3), S(3)}, {S(1), S(1)},
    };
    return PointConfiguration(seq(5), pts, false);
}

PointConfiguration moae() {
    std::vector<Vec> pts = {
        {S(4), S(0), S(0)}, {S(0), S(4), S(0)}, {S(0), S(0), S(4)},
        {S(2), S(1), S(1)}, {S(1), S(2), S(1)}, {S(1), S(1), S(2)},
    };
    return PointConfiguration(seq(6), pts, true);
}

PointConfiguration moae_perturbed(const Rational& eps) {
    if (sgn(eps) <= 0)
        throw Error(Error::Kind::Precondition, "moae_perturbed needs eps > 0");
    Scalar e = S(eps);
    std::vector<Vec> pts = {
        {S(4) - e, e, S(0)}, {S(0), S(4) - e, e}, {e, S(0), S(4) - e},
        {S(2), S(1), S(1)},  {S(1), S(2), S(1)},  {S(1), S(1), S(2)},
    };
    PointConfiguration cfg(seq(6), pts, true);
    // eps is validated rather than trusted: the rotation must keep every
    // orientation of the unperturbed configuration.
    if (!PointConfiguration::is_perturbation_of(cfg, moae()))
        throw Error(Error::Kind::Precondition, "eps too large: orientations flip");
    return cfg;
}

PointConfiguration schoenhardt8(const Rational& eps) {
    if (sgn(eps) <= 0)
        throw Error(Error::Kind::Precondition, "schoenhardt8 needs eps > 0");
    Scalar e = S(eps);
    Scalar f = S(Rational(4, 3));
    std::vector<Vec> pts = {
        {S(4) - e, e, S(0), S(0)}, {S(0), S(4) - e, e, S(0)}, {e, S(0), S(4) - e, S(0)},
        {S(2), S(1), S(1), S(1)},  {S(1), S(2), S(1), S(1)},  {S(1), S(1), S(2), S(1)},
        {f, f, f, S(10)},          {f, f, f, S(-10)},
    };
    return PointConfiguration(seq(8), pts, true);
}

PointConfiguration prism() {
    std::vector<Vec> pts = {
        {S(0), S(0), S(0)}, {S(1), S(0), S(0)}, {S(0), S(1), S(0)},
        {S(0), S(0), S(1)}, {S(1), S(0), S(1)}, {S(0), S(1), S(1)},
    };
    return PointConfiguration(seq(6), pts, false);
}

PointConfiguration convex_position(int n) {
    if (n < 3) throw Error(Error::Kind::Precondition, "convex_position needs n >= 3");
    std::vector<Vec> pts;
    for (int i = 1; i <= n; ++i) pts.push_back({S(i), S(long(i) * i)});
    return PointConfiguration(seq(n), pts, false);
}

PointConfiguration collinear(int n) {
    if (n < 2) throw Error(Error::Kind::Precondition, "collinear needs n >= 2");
    std::vector<Vec> pts;
    for (int i = 1; i <= n; ++i) pts.push_back(Vec{S(i)});
    return PointConfiguration(seq(n), pts, false);
}

PointConfiguration octagon() {
    Scalar one = S(1);
    Scalar r = S(1) + Scalar(Rational(0), Rational(1)); // 1 + sqrt(2)
    std::vector<Vec> pts = {
        {r, one},  {one, r},  {-one, r},  {-r, one},
        {-r, -one}, {-one, -r}, {one, -r}, {r, -one},
    };
    return PointConfiguration(seq(8), pts, false);
}

PointConfiguration a_of_t(const Rational& t) {
    if (sgn(t) < 0) throw Error(Error::Kind::Precondition, "a_of_t needs rational t >= 0");
    Scalar tt = S(t);
    // Columns a1+..a8+; the minus block negates the first four coordinates.
    std::vector<Vec> plus = {
        {S(1), tt, S(0), S(0), R2(1), S(0)},   {-tt, S(1), S(0), S(0), S(1), S(1)},
        {S(0), S(0), S(1), tt, S(0), R2(1)},   {S(0), S(0), -tt, S(1), S(-1), S(1)},
        {S(1), -tt, S(0), S(0), R2(-1), S(0)}, {tt, S(1), S(0), S(0), S(-1), S(-1)},
        {S(0), S(0), S(1), -tt, S(0), R2(-1)}, {S(0), S(0), tt, S(1), S(1), S(-1)},
    };
    std::vector<Vec> pts;
    pts.push_back(Vec(6, S(0))); // O
    for (const auto& p : plus) pts.push_back(p);
    for (const auto& p : plus) {
        Vec q = p;
        for (int i = 0; i < 4; ++i) q[i] = -q[i];
        pts.push_back(q);
    }
    return PointConfiguration(seq(17), pts, false);
}

namespace {

// Labels of F_{d1,d2,d3,d4} inside a_of_t: position i holds a_i^{delta_j}
// with j = ((i-1) mod 4) + 1.
std::vector<Label> f_labels(const std::array<int, 4>& deltas) {
    std::vector<Label> out;
    for (int i = 1; i <= 8; ++i) {
        int d = deltas[(i - 1) % 4];
        if (d != +1 && d != -1)
            throw Error(Error::Kind::Precondition, "signs must be +1/-1");
        out.push_back(d > 0 ? 1 + i : 9 + i);
    }
    return out;
}

} // namespace

PointConfiguration f_config(const std::array<int, 4>& deltas, const Rational& t) {
    // The displayed F formula fixes the coordinates at t = 0: that is where
    // the eight points lie in a common facet hyperplane of the big
    // configuration.  For any positive t they affinely span the whole space
    // (the pair sums a_i + a_{i+4} pin every candidate hyperplane), so t only
    // parameterizes which perturbed configuration the facet belongs to; it
    // must be nonnegative like everywhere else.
    if (sgn(t) < 0) throw Error(Error::Kind::Precondition, "f_config needs rational t >= 0");
    PointConfiguration a = a_of_t(Rational(0));
    std::vector<Label> lab = f_labels(deltas);
    PointConfiguration chart = a.chart_config(make_cell(lab));
    std::vector<Vec> pts;
    for (Label l : lab) pts.push_back(chart.coords(l));
    return PointConfiguration(seq(8), pts, false);
}

std::vector<std::string> names() {
    return {"five-points", "moae",     "moae-perturbed", "schoenhardt8", "prism",
            "convex",      "collinear", "octagon",        "a-of-t",       "f"};
}

PointConfiguration build(const std::string& name,
                         const std::map<std::string, std::string>& params) {
    auto rat = [&](const std::string& key, const Rational& dflt) {
        auto it = params.find(key);
        if (it == params.end()) return dflt;
        Scalar s = Scalar::parse(it->second);
        if (!s.is_rational())
            throw Error(Error::Kind::Precondition, "parameter " + key + " must be rational");
        return s.rat();
    };
    auto integer = [&](const std::string& key) {
        auto it = params.find(key);
        if (it == params.end())
            throw Error(Error::Kind::Precondition, "missing parameter " + key);
        return std::stoi(it->second);
    };
    if (name == "five-points") return five_points();
    if (name == "moae") return moae();
    if (name == "moae-perturbed") return moae_perturbed(rat("eps", Rational(1, 100)));
    if (name == "schoenhardt8") return schoenhardt8(rat("eps", Rational(1, 100)));
    if (name == "prism") return prism();
    if (name == "convex") return convex_position(integer("n"));
    if (name == "collinear") return collinear(integer("n"));
    if (name == "octagon") return octagon();
    if (name == "a-of-t") return a_of_t(rat("t", Rational(1, 8)));
    if (name == "f") {
        std::array<int, 4> deltas;
        for (int i = 0; i < 4; ++i) {
            std::string key = "d" + std::to_string(i + 1);
            auto it = params.find(key);
            deltas[i] = (it == params.end() || it->second != "-") ? 1 : -1;
        }
        return f_config(deltas, rat("t", Rational(1, 8)));
    }
    throw Error(Error::Kind::Unsupported, "unknown catalog name " + name);
}

Triangulation schoenhardt_T(const Rational& eps) {
    (void)eps;
    std::vector<Cell> boundary = {
        {4, 5, 6}, {1, 2, 4}, {2, 4, 5}, {2, 3, 5}, {3, 5, 6}, {1, 3, 6}, {1, 4, 6},
    };
    std::vector<Cell> cells;
    for (const auto& tri : boundary) {
        for (Label apex : {7, 8}) {
            Cell c = tri;
            c.push_back(apex);
            cells.push_back(make_cell(c));
        }
    }
    return Triangulation::from_cells(cells);
}

std::string Report::str() const {
    std::ostringstream os;
    for (const auto& [what, pass] : checks)
        os << (pass ? "  [ok]   " : "  [FAIL] ") << what << "\n";
    for (const auto& n : notes) os << "  note: " << n << "\n";
    return os.str();
}

Report verify_A0_degeneracies(const Rational& t) {
    Report rep;
    PointConfiguration a = a_of_t(t);
    for (int i = 1; i <= 4; ++i) {
        const Vec& p1 = a.homog(1 + i);
        const Vec& p2 = a.homog(5 + i);
        const Vec& m1 = a.homog(9 + i);
        const Vec& m2 = a.homog(13 + i);
        const Vec& o = a.homog(1);
        bool equal = true;
        for (size_t r = 0; r < a.homdim(); ++r) {
            Scalar sum = p1[r] + p2[r] + m1[r] + m2[r];
            if (sum != S(4) * o[r]) equal = false;
        }
        rep.check("a" + std::to_string(i) + "+ + a" + std::to_string(i + 4) + "+ + a" +
                      std::to_string(i) + "- + a" + std::to_string(i + 4) + "- = 4 O",
                  equal);
    }
    rep.check("not in general position", !a.is_general_position());
    return rep;
}

BoundaryComplex boundary_complex(const PointConfiguration& cfg, const Triangulation& t) {
    BoundaryComplex k;
    size_t d = static_cast<size_t>(cfg.dim());
    for (const auto& facet : cfg.facets()) {
        std::set<Cell> induced;
        for (const auto& cell : t.cells) {
            Cell inter;
            std::set_intersection(cell.begin(), cell.end(), facet.labels.begin(),
                                  facet.labels.end(), std::back_inserter(inter));
            if (inter.size() == d) induced.insert(inter);
        }
        k.emplace(facet.labels, std::vector<Cell>(induced.begin(), induced.end()));
    }
    return k;
}

BoundaryFlipReport boundary_preserving_flips(const PointConfiguration& cfg,
                                             const Triangulation& t, const BoundaryComplex& k) {
    BoundaryFlipReport rep;
    for (const auto& f : find_flips(cfg, t)) {
        Triangulation t2 = apply_flip(cfg, t, f);
        if (boundary_complex(cfg, t2) != k) {
            rep.all_preserve = false;
            rep.violating.push_back(f);
        }
    }
    return rep;
}

Report verify_F_structure(const Rational& t) {
    Report rep;
    if (sgn(t) <= 0) throw Error(Error::Kind::Precondition, "verify_F_structure needs t > 0");
    rep.check("t keeps the sign pattern of the degenerate configuration",
              PointConfiguration::is_perturbation_of(a_of_t(t), a_of_t(Rational(0))));
    PointConfiguration f = f_config({+1, +1, +1, +1}, t);

    const auto& facets = f.facets();
    rep.check("12 facets", facets.size() == 12);
    size_t simplicial = 0;
    std::vector<Cell> big;
    for (const auto& fac : facets) {
        if (fac.labels.size() == f.homdim() - 1)
            ++simplicial;
        else if (fac.labels.size() == 6)
            big.push_back(fac.labels);
    }
    rep.check("8 simplicial facets", simplicial == 8);
    rep.check("4 six-point facets", big.size() == 4);
    bool circuits33 = big.size() == 4;
    size_t boundary_ways = 1;
    for (const auto& labels : big) {
        Circuit c = f.circuit_of(labels);
        if (c.support.size() != 6 || c.positive.size() != 3 || c.negative.size() != 3)
            circuits33 = false;
        PointConfiguration chart = f.chart_config(labels);
        boundary_ways *= enumerate_triangulations_bruteforce(chart).size();
    }
    rep.check("each six-point facet is a (3,3) circuit", circuits33);
    rep.check("16 ways to triangulate the boundary", boundary_ways == 16);

    auto tris = enumerate_triangulations_bruteforce(f);
    rep.check("8 triangulations", tris.size() == 8);

    FlipGraphOptions opt;
    opt.want_diameter = false;
    FlipGraph g = flip_graph(f, {tris.front()}, opt);
    bool cycle = g.nodes.size() == 8 && g.edges.size() == 8 && g.components.size() == 1;
    for (size_t i = 0; i < g.nodes.size() && cycle; ++i)
        if (g.degree(i) != 2) cycle = false;
    rep.check("flip graph is an 8-cycle", cycle);

    bool switches_one = true;
    std::set<Cell> big_set(big.begin(), big.end());
    for (const auto& tri : tris) {
        BoundaryComplex k0 = boundary_complex(f, tri);
        for (const auto& flip : find_flips(f, tri)) {
            BoundaryComplex k1 = boundary_complex(f, apply_flip(f, tri, flip));
            size_t changed = 0;
            bool changed_is_big = true;
            for (const auto& [facet, cells] : k0) {
                if (k1.at(facet) != cells) {
                    ++changed;
                    if (!big_set.count(facet)) changed_is_big = false;
                }
            }
            if (changed != 1 || !changed_is_big) switches_one = false;
        }
    }
    rep.check("each flip switches exactly one non-simplicial facet", switches_one);
    return rep;
}

Report verify_prism() {
    Report rep;
    PointConfiguration p = prism();
    auto tris = enumerate_triangulations_bruteforce(p);
    rep.check("6 triangulations", tris.size() == 6);

    const auto& facets = p.facets();
    std::vector<Cell> quads;
    size_t triangles = 0;
    for (const auto& f : facets) {
        if (f.labels.size() == 4)
            quads.push_back(f.labels);
        else if (f.labels.size() == 3)
            ++triangles;
    }
    rep.check("3 quadrilateral facets and 2 triangles",
              quads.size() == 3 && triangles == 2 && facets.size() == 5);

    // All boundary choices: independent diagonal per quad.
    std::vector<std::vector<std::vector<Cell>>> quad_tris;
    for (const auto& q : quads) {
        PointConfiguration chart = p.chart_config(q);
        auto qt = enumerate_triangulations_bruteforce(chart);
        std::vector<std::vector<Cell>> opts;
        for (const auto& t : qt) opts.push_back(t.cells);
        quad_tris.push_back(opts);
    }
    size_t total_choices = 1;
    for (const auto& q : quad_tris) total_choices *= q.size();
    rep.check("8 boundary choices", total_choices == 8);

    std::set<BoundaryComplex> realized;
    for (const auto& t : tris) realized.insert(boundary_complex(p, t));
    rep.check("exactly 6 boundary choices extend", realized.size() == 6);

    FlipGraph g = flip_graph(p, {tris.front()});
    bool cycle = g.nodes.size() == 6 && g.edges.size() == 6 && g.components.size() == 1;
    rep.check("flip graph is a 6-cycle", cycle);

    bool one_toggle = true;
    for (const auto& t : tris) {
        BoundaryComplex k0 = boundary_complex(p, t);
        for (const auto& flip : find_flips(p, t)) {
            BoundaryComplex k1 = boundary_complex(p, apply_flip(p, t, flip));
            size_t changed = 0;
            for (const auto& [facet, cells] : k0)
                if (k1.at(facet) != cells) ++changed;
            if (changed != 1) one_toggle = false;
        }
    }
    rep.check("each flip toggles exactly one facet diagonal", one_toggle);
    return rep;
}

namespace {

struct FFacetData {
    Cell labels;                          // 8 A-labels
    std::vector<Triangulation> tris;      // its 8 triangulations (A-labels)
    std::vector<Cell> ridges;             // the 4 non-simplicial 6-label ridges
    // induced[t][r]: triangulation induced on ridge r by tris[t]
    std::vector<std::vector<std::vector<Cell>>> induced;
    // rigid[t][r]: no flip of tris[t] changes the triangulation on ridge r
    std::vector<std::vector<bool>> rigid;
};

std::vector<Cell> induce_on(const Triangulation& t, const Cell& ridge, size_t cell_size) {
    std::set<Cell> out;
    for (const auto& c : t.cells) {
        Cell inter;
        std::set_intersection(c.begin(), c.end(), ridge.begin(), ridge.end(),
                              std::back_inserter(inter));
        if (inter.size() == cell_size) out.insert(inter);
    }
    return {out.begin(), out.end()};
}

} // namespace

RigidSearchResult search_rigid_K(std::chrono::seconds budget) {
    auto deadline = std::chrono::steady_clock::now() + budget;
    auto out_of_time = [&] { return std::chrono::steady_clock::now() > deadline; };

    RigidSearchResult res;
    PointConfiguration a0 = a_of_t(Rational(0));
    const auto& facets = a0.facets();

    std::vector<Cell> simplicial;
    std::vector<Cell> ffacets;
    for (const auto& f : facets) {
        if (f.labels.size() == a0.homdim() - 1)
            simplicial.push_back(f.labels);
        else
            ffacets.push_back(f.labels);
    }
    res.trace.push_back("facets: " + std::to_string(simplicial.size()) + " simplicial, " +
                        std::to_string(ffacets.size()) + " non-simplicial");
    if (ffacets.size() != 16) return res;

    // Per-facet data: triangulations, ridges, induced complexes, rigidity.
    std::vector<FFacetData> data;
    for (const auto& labels : ffacets) {
        if (out_of_time()) {
            res.trace.push_back("budget exhausted during facet analysis");
            return res;
        }
        FFacetData d;
        d.labels = labels;
        PointConfiguration chart = a0.chart_config(labels);
        d.tris = enumerate_triangulations_bruteforce(chart);
        for (const auto& rf : chart.facets())
            if (rf.labels.size() == 6) d.ridges.push_back(rf.labels);
        std::sort(d.ridges.begin(), d.ridges.end());
        size_t cell_size = chart.homdim() - 1; // ridge cells: one dim down
        d.induced.resize(d.tris.size());
        d.rigid.assign(d.tris.size(), std::vector<bool>(d.ridges.size(), true));
        for (size_t t = 0; t < d.tris.size(); ++t) {
            for (const auto& r : d.ridges)
                d.induced[t].push_back(induce_on(d.tris[t], r, cell_size));
            for (const auto& flip : find_flips(chart, d.tris[t])) {
                Triangulation nt = apply_flip(chart, d.tris[t], flip);
                for (size_t r = 0; r < d.ridges.size(); ++r)
                    if (induce_on(nt, d.ridges[r], cell_size) != d.induced[t][r])
                        d.rigid[t][r] = false;
            }
        }
        data.push_back(std::move(d));
    }

    // Ridge sharing: every 6-label ridge appears in exactly two F-facets.
    std::map<Cell, std::vector<std::pair<size_t, size_t>>> shared; // ridge -> (facet, ridge idx)
    for (size_t i = 0; i < data.size(); ++i)
        for (size_t r = 0; r < data[i].ridges.size(); ++r)
            shared[data[i].ridges[r]].push_back({i, r});
    for (const auto& [ridge, owners] : shared) {
        if (owners.size() != 2) {
            res.trace.push_back("ridge shared by " + std::to_string(owners.size()) +
                                " facets; expected 2");
            return res;
        }
    }

    // Backtracking over facet triangulation assignments.
    std::vector<int> assign(data.size(), -1);
    std::vector<std::vector<int>> solutions;
    const size_t solution_cap = 256;
    std::function<void(size_t)> backtrack = [&](size_t i) {
        if (out_of_time() || solutions.size() >= solution_cap) return;
        if (i == data.size()) {
            solutions.push_back(assign);
            return;
        }
        for (int t = 0; t < static_cast<int>(data[i].tris.size()); ++t) {
            bool ok = true;
            for (size_t r = 0; r < data[i].ridges.size() && ok; ++r) {
                auto owners = shared.at(data[i].ridges[r]);
                auto [oj, orr] = owners[0].first == i ? owners[1] : owners[0];
                if (assign[oj] < 0) continue;
                int tj = assign[oj];
                if (data[i].induced[t][r] != data[oj].induced[tj][orr]) ok = false;
                else if (!data[i].rigid[t][r] && !data[oj].rigid[tj][orr]) ok = false;
            }
            if (!ok) continue;
            assign[i] = t;
            backtrack(i + 1);
            assign[i] = -1;
        }
    };
    backtrack(0);
    res.boundary_search_exhaustive = !out_of_time() && solutions.size() < solution_cap;
    res.boundary_solutions = solutions.size();
    res.trace.push_back("boundary assignments found: " + std::to_string(solutions.size()) +
                        (res.boundary_search_exhaustive ? " (exhaustive)" : " (truncated)"));
    if (solutions.empty()) return res;

    // Assemble K for the first solution.
    BoundaryComplex k;
    for (const auto& s : simplicial) k.emplace(s, std::vector<Cell>{s});
    const auto& sol = solutions.front();
    for (size_t i = 0; i < data.size(); ++i) {
        std::set<Cell> cells(data[i].tris[sol[i]].cells.begin(),
                             data[i].tris[sol[i]].cells.end());
        k.emplace(data[i].labels, std::vector<Cell>(cells.begin(), cells.end()));
    }

    // Extension: cone every boundary cell to a strictly interior label.
    std::vector<Label> interior;
    for (Label l : a0.labels()) {
        bool strict = true;
        for (const auto& f : a0.facets()) {
            Scalar e(0);
            for (size_t r = 0; r < a0.homdim(); ++r) e += f.functional[r] * a0.homog(l)[r];
            if (e.sign() >= 0) {
                strict = false;
                break;
            }
        }
        if (strict) interior.push_back(l);
    }
    res.trace.push_back("strictly interior labels: " + std::to_string(interior.size()));
    for (Label apex : interior) {
        if (out_of_time()) {
            res.trace.push_back("budget exhausted during extension");
            return res;
        }
        std::vector<Cell> cells;
        for (const auto& [facet, fcells] : k) {
            for (const auto& c : fcells) {
                Cell cc = c;
                cc.push_back(apex);
                cells.push_back(make_cell(cc));
            }
        }
        Triangulation t = Triangulation::from_cells(cells);
        auto rep = is_valid_triangulation(a0, t);
        if (!rep.ok) {
            res.trace.push_back("cone over label " + std::to_string(apex) +
                                " invalid: " + rep.summary());
            continue;
        }
        if (boundary_complex(a0, t) != k) {
            res.trace.push_back("cone over label " + std::to_string(apex) +
                                " does not induce K");
            continue;
        }
        res.found = true;
        res.k = k;
        res.extension = t;
        res.trace.push_back("extension: cone over label " + std::to_string(apex) + " with " +
                            std::to_string(t.cells.size()) + " cells");
        return res;
    }
    res.trace.push_back("no cone extension worked within budget");
    return res;
}

} // namespace catalog
} // namespace trisec
