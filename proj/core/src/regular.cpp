#include "trisec/regular.hpp"

#include <algorithm>
#include <set>

#include "trisec/linfeas.hpp"

namespace trisec {

Lift Lift::constant(const PointConfiguration& cfg, const Scalar& v) {
    Lift w;
    for (Label l : cfg.labels()) w.values[l] = v;
    return w;
}

const Scalar& Lift::at(Label l) const {
    auto it = values.find(l);
    if (it == values.end())
        throw Error(Error::Kind::UnknownLabel, "lift missing label " + std::to_string(l));
    return it->second;
}

Lift Lift::negated() const {
    Lift w;
    for (const auto& [l, v] : values) w.values[l] = -v;
    return w;
}

namespace {

template <typename F> void combinations(size_t n, size_t k, F&& f) {
    if (k > n) return;
    std::vector<size_t> c(k);
    for (size_t i = 0; i < k; ++i) c[i] = i;
    while (true) {
        f(c);
        size_t i = k;
        while (i > 0) {
            --i;
            if (c[i] != i + n - k) break;
            if (i == 0) return;
        }
        ++c[i];
        for (size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
    }
}

// Greedy affinely independent (d+1)-subset in ascending label order.
std::vector<Label> pinned_basis(const PointConfiguration& cfg) {
    std::vector<Label> sorted = cfg.labels();
    std::sort(sorted.begin(), sorted.end());
    std::vector<Label> basis;
    Mat rows;
    for (Label l : sorted) {
        if (basis.size() == cfg.homdim()) break;
        Mat trial = rows;
        trial.push_back(cfg.homog(l));
        if (rank(trial) == rows.size() + 1) {
            rows.push_back(cfg.homog(l));
            basis.push_back(l);
        }
    }
    return basis;
}

// Greedy affine basis of a (possibly dependent) cell.
std::vector<Label> cell_basis(const PointConfiguration& cfg, const Cell& cell) {
    std::vector<Label> basis;
    Mat rows;
    for (Label l : cell) {
        Mat trial = rows;
        trial.push_back(cfg.homog(l));
        if (rank(trial) == rows.size() + 1) {
            rows.push_back(cfg.homog(l));
            basis.push_back(l);
        }
    }
    return basis;
}

} // namespace

Subdivision subdivision_from_lift(const PointConfiguration& cfg, const Lift& w) {
    for (Label l : cfg.labels()) w.at(l); // totality
    size_t n = cfg.size();
    size_t hd = cfg.homdim();
    std::set<uint64_t> cells;
    combinations(n, hd, [&](const std::vector<size_t>& idx) {
        Mat m;
        Vec rhs;
        for (size_t i : idx) {
            m.push_back(cfg.homog_at(i));
            rhs.push_back(w.at(cfg.label_at(i)));
        }
        if (rank(m) != hd) return; // affinely dependent subset
        auto c = solve(std::move(m), std::move(rhs));
        if (!c) return;
        uint64_t cell = 0;
        for (size_t q = 0; q < n; ++q) {
            Scalar e(0);
            for (size_t r = 0; r < hd; ++r) e += (*c)[r] * cfg.homog_at(q)[r];
            int s = (w.at(cfg.label_at(q)) - e).sign();
            if (s < 0) return; // a point hangs below: not a lower facet
            if (s == 0) cell |= uint64_t(1) << q;
        }
        cells.insert(cell);
    });
    std::vector<Cell> out;
    for (uint64_t m : cells) out.push_back(cfg.cell_of_mask(m));
    return Subdivision::from_cells(std::move(out));
}

namespace {

RegularityResult regularity_lp(const PointConfiguration& cfg, const std::vector<Cell>& cells) {
    std::vector<Label> pinned = pinned_basis(cfg);
    std::vector<Label> sorted = cfg.labels();
    std::sort(sorted.begin(), sorted.end());
    std::map<Label, size_t> var;
    for (Label l : sorted)
        if (!std::binary_search(pinned.begin(), pinned.end(), l)) {
            size_t id = var.size();
            var.emplace(l, id);
        }
    size_t nv = var.size();

    std::vector<LinearConstraint> cons;
    auto add_row = [&](Label a, const std::vector<Label>& basis, const Vec& gamma, Rel rel) {
        Vec row(nv, Scalar(0));
        if (auto it = var.find(a); it != var.end()) row[it->second] += Scalar(1);
        for (size_t i = 0; i < basis.size(); ++i)
            if (auto it = var.find(basis[i]); it != var.end()) row[it->second] -= gamma[i];
        cons.push_back({std::move(row), rel, rel == Rel::GE ? Scalar(1) : Scalar(0)});
    };

    for (const auto& cell : cells) {
        std::vector<Label> basis = cell_basis(cfg, cell);
        if (basis.size() != cfg.homdim())
            throw Error(Error::Kind::Precondition, "regularity: cell does not span");
        Cell bcell = basis;
        std::sort(bcell.begin(), bcell.end());
        for (Label a : cell) {
            if (std::binary_search(bcell.begin(), bcell.end(), a)) continue;
            add_row(a, basis, cfg.barycentric_in_cell(bcell, a), Rel::EQ);
        }
        for (Label a : sorted) {
            if (std::binary_search(cell.begin(), cell.end(), a)) continue;
            add_row(a, basis, cfg.barycentric_in_cell(bcell, a), Rel::GE);
        }
    }

    auto x = solve_feasibility(cons, nv);
    if (!x) return {false, std::nullopt};
    Lift cert;
    for (Label l : sorted) cert.values[l] = Scalar(0);
    for (const auto& [l, id] : var) cert.values[l] = (*x)[id];
    return {true, cert};
}

} // namespace

RegularityResult is_regular(const PointConfiguration& cfg, const Triangulation& t) {
    auto rep = is_valid_triangulation(cfg, t);
    if (!rep.ok)
        throw Error(Error::Kind::Precondition, "is_regular: invalid triangulation: " + rep.summary());
    auto result = regularity_lp(cfg, t.cells);
    if (result.regular) {
        if (subdivision_from_lift(cfg, *result.certificate) != as_subdivision(t))
            throw Error(Error::Kind::Inconsistency, "certificate does not reproduce t");
    }
    return result;
}

RegularityResult is_regular_subdivision(const PointConfiguration& cfg, const Subdivision& s) {
    auto rep = is_valid_subdivision(cfg, s);
    if (!rep.ok)
        throw Error(Error::Kind::Precondition, "is_regular_subdivision: invalid: " + rep.summary());
    auto result = regularity_lp(cfg, s.cells);
    if (result.regular) {
        if (subdivision_from_lift(cfg, *result.certificate) != s)
            throw Error(Error::Kind::Inconsistency, "certificate does not reproduce s");
    }
    return result;
}

Scalar GkzVector::sum() const {
    Scalar total(0);
    for (const auto& [l, v] : entries) total += v;
    return total;
}

GkzVector gkz_vector(const PointConfiguration& cfg, const Triangulation& t) {
    GkzVector v;
    for (Label l : cfg.labels()) v.entries[l] = Scalar(0);
    for (const auto& cell : t.cells) {
        Scalar vol = cfg.normalized_volume(cell);
        for (Label l : cell) v.entries.at(l) += vol;
    }
    return v;
}

Scalar lift_gkz_inner(const Lift& w, const GkzVector& v) {
    Scalar total(0);
    for (const auto& [l, x] : v.entries) total += w.at(l) * x;
    return total;
}

SecondarySummary secondary_polytope_summary(const PointConfiguration& cfg,
                                            const std::vector<Triangulation>& all) {
    if (all.empty()) throw Error(Error::Kind::Precondition, "no triangulations given");
    std::vector<Label> sorted = cfg.labels();
    std::sort(sorted.begin(), sorted.end());

    std::vector<Vec> vecs;
    for (const auto& t : all) {
        GkzVector g = gkz_vector(cfg, t);
        Vec v;
        for (Label l : sorted) v.push_back(g.entries.at(l));
        vecs.push_back(std::move(v));
    }
    std::vector<Vec> unique = vecs;
    std::sort(unique.begin(), unique.end(), [](const Vec& a, const Vec& b) {
        for (size_t i = 0; i < a.size(); ++i) {
            if (a[i] < b[i]) return true;
            if (b[i] < a[i]) return false;
        }
        return false;
    });
    unique.erase(std::unique(unique.begin(), unique.end()), unique.end());

    size_t expected = cfg.size() - cfg.homdim();
    Mat diffs;
    for (size_t i = 1; i < unique.size(); ++i) {
        Vec d(unique[i].size());
        for (size_t j = 0; j < d.size(); ++j) d[j] = unique[i][j] - unique[0][j];
        diffs.push_back(std::move(d));
    }
    size_t m = diffs.empty() ? 0 : rank(diffs);
    if (m != expected)
        throw Error(Error::Kind::Inconsistency,
                    "GKZ span has dimension " + std::to_string(m) + ", expected " +
                        std::to_string(expected));

    SecondarySummary out;
    out.dim = static_cast<int>(m);
    if (m == 0) {
        out.f_vector = {1};
        out.total_faces = 1;
        for (size_t i = 0; i < all.size(); ++i) out.vertex_triangulations.push_back(i);
        return out;
    }
    if (unique.size() > 64)
        throw Error(Error::Kind::Unsupported,
                    "secondary polytope summary supports at most 64 distinct GKZ vectors");

    // Re-coordinatize the distinct GKZ vectors in an affine chart of their
    // span, then take the hull there.
    std::vector<size_t> basis{0};
    {
        Mat rows{unique[0]};
        for (auto& r : rows) r.insert(r.begin(), Scalar(1)); // homogenize
        for (size_t i = 1; i < unique.size() && basis.size() < m + 1; ++i) {
            Vec h = unique[i];
            h.insert(h.begin(), Scalar(1));
            Mat trial = rows;
            trial.push_back(h);
            if (rank(trial) == rows.size() + 1) {
                rows.push_back(h);
                basis.push_back(i);
            }
        }
    }
    Mat dirs(unique[0].size(), Vec(m, Scalar(0)));
    for (size_t j = 0; j < m; ++j)
        for (size_t r = 0; r < unique[0].size(); ++r)
            dirs[r][j] = unique[basis[j + 1]][r] - unique[basis[0]][r];
    std::vector<Vec> chart_coords;
    for (const auto& u : unique) {
        Vec rhs(u.size());
        for (size_t r = 0; r < u.size(); ++r) rhs[r] = u[r] - unique[basis[0]][r];
        auto sol = solve(dirs, rhs);
        if (!sol) throw Error(Error::Kind::Inconsistency, "GKZ vector outside its own span");
        chart_coords.push_back(*sol);
    }
    std::vector<Label> plabels;
    for (size_t i = 0; i < unique.size(); ++i) plabels.push_back(static_cast<Label>(i + 1));
    PointConfiguration hull(plabels, chart_coords, false);

    std::set<uint64_t> faces;
    for (const auto& f : hull.facets()) faces.insert(hull.mask_of(f.labels));
    // Close under intersection: every proper face is an intersection of facets.
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<uint64_t> cur(faces.begin(), faces.end());
        for (size_t i = 0; i < cur.size(); ++i)
            for (size_t j = i + 1; j < cur.size(); ++j) {
                uint64_t x = cur[i] & cur[j];
                if (x && !faces.count(x)) {
                    faces.insert(x);
                    grew = true;
                }
            }
    }

    out.f_vector.assign(m, 0);
    std::vector<uint64_t> vertex_masks;
    for (uint64_t f : faces) {
        Mat rows;
        for (size_t i = 0; i < hull.size(); ++i)
            if (f & (uint64_t(1) << i)) rows.push_back(hull.homog_at(i));
        size_t dim_face = rank(std::move(rows)) - 1;
        if (dim_face < m) ++out.f_vector[dim_face];
        if (dim_face == 0) vertex_masks.push_back(f);
    }
    out.total_faces = 1;
    for (size_t c : out.f_vector) out.total_faces += c;

    // Map vertex points back to input triangulations sharing that GKZ vector.
    std::set<Vec, bool (*)(const Vec&, const Vec&)> vertex_vecs(
        [](const Vec& a, const Vec& b) {
            for (size_t i = 0; i < a.size(); ++i) {
                if (a[i] < b[i]) return true;
                if (b[i] < a[i]) return false;
            }
            return false;
        });
    for (uint64_t vm : vertex_masks)
        for (size_t i = 0; i < unique.size(); ++i)
            if (vm & (uint64_t(1) << i)) vertex_vecs.insert(unique[i]);
    for (size_t i = 0; i < all.size(); ++i)
        if (vertex_vecs.count(vecs[i])) out.vertex_triangulations.push_back(i);
    return out;
}

Lift standard_lift(const PointConfiguration& cfg, LiftKind kind, std::vector<Label> order) {
    if (kind == LiftKind::Delaunay) {
        Lift w;
        for (Label l : cfg.labels()) {
            Scalar s(0);
            for (const auto& x : cfg.coords(l)) s += x * x;
            w.values[l] = s;
        }
        return w;
    }
    if (order.empty()) {
        order = cfg.labels();
        std::sort(order.begin(), order.end());
    }
    std::vector<Label> check = order, want = cfg.labels();
    std::sort(check.begin(), check.end());
    std::sort(want.begin(), want.end());
    if (check != want)
        throw Error(Error::Kind::Precondition, "order must be a permutation of the labels");

    int sign = (kind == LiftKind::Pulling) ? -1 : 1;
    auto lift_for = [&](const mpz_class& t) {
        Lift w;
        mpz_class p = 1;
        for (Label l : order) {
            p *= t;
            w.values[l] = Scalar(Rational(sign * p));
        }
        return w;
    };
    mpz_class t = 2;
    Lift w = lift_for(t);
    Subdivision s = subdivision_from_lift(cfg, w);
    for (int iter = 0; iter < 64; ++iter) {
        mpz_class t2 = t * 2;
        Lift w2 = lift_for(t2);
        Subdivision s2 = subdivision_from_lift(cfg, w2);
        mpz_class t4 = t2 * 2;
        Lift w4 = lift_for(t4);
        Subdivision s4 = subdivision_from_lift(cfg, w4);
        if (s == s2 && s2 == s4) return w4;
        t = t2;
        w = std::move(w2);
        s = std::move(s2);
    }
    throw Error(Error::Kind::Inconsistency, "lexicographic lift did not stabilize");
}

} // namespace trisec
