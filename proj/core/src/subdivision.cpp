#include "trisec/subdivision.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>
#include <sstream>

#include "trisec/linfeas.hpp"

namespace trisec {

namespace {

std::vector<Cell> canonical_cells(std::vector<Cell> cells) {
    for (auto& c : cells) c = make_cell(c);
    std::sort(cells.begin(), cells.end());
    return cells;
}

std::string cells_str(const std::vector<Cell>& cells) {
    std::ostringstream os;
    os << '{';
    for (size_t i = 0; i < cells.size(); ++i) {
        if (i) os << ", ";
        os << cell_str(cells[i]);
    }
    os << '}';
    return os.str();
}

} // namespace

Triangulation Triangulation::from_cells(std::vector<Cell> cells) {
    return Triangulation{canonical_cells(std::move(cells))};
}

bool Triangulation::uses(Label l) const {
    for (const auto& c : cells)
        if (std::binary_search(c.begin(), c.end(), l)) return true;
    return false;
}

std::string Triangulation::str() const { return cells_str(cells); }

Subdivision Subdivision::from_cells(std::vector<Cell> cells) {
    return Subdivision{canonical_cells(std::move(cells))};
}

std::string Subdivision::str() const { return cells_str(cells); }

Subdivision as_subdivision(const Triangulation& t) { return Subdivision{t.cells}; }

std::optional<Triangulation> as_triangulation(const PointConfiguration& cfg, const Subdivision& s) {
    for (const auto& c : s.cells) {
        if (c.size() != cfg.homdim()) return std::nullopt;
        Mat m;
        for (Label l : c) m.push_back(cfg.homog(l));
        if (det(std::move(m)).is_zero()) return std::nullopt;
    }
    return Triangulation::from_cells(s.cells);
}

std::string Violation::str() const {
    std::ostringstream os;
    switch (kind) {
        case Kind::BadCell: os << "bad cell"; break;
        case Kind::DependentCell: os << "dependent cell"; break;
        case Kind::NotSpanningCell: os << "cell does not span"; break;
        case Kind::DuplicateCell: os << "duplicate cell"; break;
        case Kind::ImproperPair: os << "improper intersection"; break;
        case Kind::NotFaceToFace: os << "not face-to-face"; break;
        case Kind::MembershipViolation: os << "common-face membership violated"; break;
        case Kind::VolumeMismatch: os << "covering volume mismatch"; break;
    }
    if (!a.empty()) os << " [" << cell_str(a) << "]";
    if (!b.empty()) os << " [" << cell_str(b) << "]";
    if (!detail.empty()) os << ": " << detail;
    return os.str();
}

std::string ValidityReport::summary() const {
    if (ok) return "valid";
    std::ostringstream os;
    os << violations.size() << " violation(s)";
    for (const auto& v : violations) os << "; " << v.str();
    return os.str();
}

ValidityReport is_valid_triangulation(const PointConfiguration& cfg, const Triangulation& t) {
    ValidityReport rep;
    auto fail = [&](Violation v) {
        rep.ok = false;
        rep.violations.push_back(std::move(v));
    };
    if (t.cells.empty()) {
        fail({Violation::Kind::BadCell, {}, {}, std::nullopt, "empty triangulation"});
        return rep;
    }
    std::set<Cell> seen;
    std::vector<uint64_t> masks;
    bool cells_ok = true;
    for (const auto& c : t.cells) {
        if (!seen.insert(c).second) {
            fail({Violation::Kind::DuplicateCell, c, {}, std::nullopt, ""});
            cells_ok = false;
            continue;
        }
        if (c.size() != cfg.homdim()) {
            fail({Violation::Kind::BadCell, c, {}, std::nullopt, "cell must have d+1 labels"});
            cells_ok = false;
            continue;
        }
        Mat m;
        bool labels_ok = true;
        for (Label l : c) {
            if (!cfg.has_label(l)) {
                fail({Violation::Kind::BadCell, c, {}, std::nullopt,
                      "unknown label " + std::to_string(l)});
                labels_ok = false;
                break;
            }
            m.push_back(cfg.homog(l));
        }
        if (!labels_ok) {
            cells_ok = false;
            continue;
        }
        if (det(std::move(m)).is_zero()) {
            fail({Violation::Kind::DependentCell, c, {}, std::nullopt, ""});
            cells_ok = false;
            continue;
        }
        masks.push_back(cfg.mask_of(c));
    }
    if (!cells_ok) return rep;

    for (size_t i = 0; i < masks.size(); ++i) {
        for (size_t j = i + 1; j < masks.size(); ++j) {
            uint64_t w = cfg.improper_pair_witness(masks[i], masks[j]);
            if (w != 0) {
                fail({Violation::Kind::ImproperPair, t.cells[i], t.cells[j],
                      cfg.circuit_of(cfg.cell_of_mask(w)), ""});
            }
        }
    }

    Scalar total(0);
    for (const auto& c : t.cells) total += cfg.normalized_volume(c);
    Scalar hull = cfg.hull_volume();
    if (total != hull) {
        fail({Violation::Kind::VolumeMismatch, {}, {}, std::nullopt,
              "cells cover " + total.str() + " of " + hull.str()});
    }
    return rep;
}

bool point_in_hull(const PointConfiguration& cfg, Label p, const Cell& hull_labels) {
    if (hull_labels.empty()) return false;
    // lambda >= 0 with sum lambda_i homog(c_i) = homog(p); the homogenization
    // row forces sum lambda = 1.
    size_t k = hull_labels.size();
    std::vector<LinearConstraint> cons;
    for (size_t i = 0; i < k; ++i) {
        Vec a(k, Scalar(0));
        a[i] = Scalar(1);
        cons.push_back({a, Rel::GE, Scalar(0)});
    }
    const Vec& hp = cfg.homog(p);
    for (size_t r = 0; r < cfg.homdim(); ++r) {
        Vec a(k);
        for (size_t i = 0; i < k; ++i) a[i] = cfg.homog(hull_labels[i])[r];
        cons.push_back({a, Rel::EQ, hp[r]});
    }
    return solve_feasibility(cons, k).has_value();
}

bool pair_face_to_face(const PointConfiguration& cfg, const Cell& a, const Cell& b) {
    Cell common;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
    size_t nv = cfg.homdim();
    std::vector<LinearConstraint> cons;
    auto row = [&](Label l) {
        Vec r(nv);
        const Vec& h = cfg.homog(l);
        for (size_t i = 0; i < nv; ++i) r[i] = h[i];
        return r;
    };
    for (Label l : common) cons.push_back({row(l), Rel::EQ, Scalar(0)});
    for (Label l : a)
        if (!std::binary_search(common.begin(), common.end(), l))
            cons.push_back({row(l), Rel::GE, Scalar(1)});
    for (Label l : b)
        if (!std::binary_search(common.begin(), common.end(), l))
            cons.push_back({row(l), Rel::LE, Scalar(-1)});
    return solve_feasibility(cons, nv).has_value();
}

ValidityReport is_valid_subdivision(const PointConfiguration& cfg, const Subdivision& s) {
    ValidityReport rep;
    auto fail = [&](Violation v) {
        rep.ok = false;
        rep.violations.push_back(std::move(v));
    };
    if (s.cells.empty()) {
        fail({Violation::Kind::BadCell, {}, {}, std::nullopt, "empty subdivision"});
        return rep;
    }
    std::set<Cell> seen;
    bool cells_ok = true;
    for (const auto& c : s.cells) {
        if (!seen.insert(c).second) {
            fail({Violation::Kind::DuplicateCell, c, {}, std::nullopt, ""});
            cells_ok = false;
            continue;
        }
        bool labels_ok = true;
        Mat m;
        for (Label l : c) {
            if (!cfg.has_label(l)) {
                fail({Violation::Kind::BadCell, c, {}, std::nullopt,
                      "unknown label " + std::to_string(l)});
                labels_ok = false;
                break;
            }
            m.push_back(cfg.homog(l));
        }
        if (!labels_ok) {
            cells_ok = false;
            continue;
        }
        if (rank(std::move(m)) != cfg.homdim()) {
            fail({Violation::Kind::NotSpanningCell, c, {}, std::nullopt, ""});
            cells_ok = false;
        }
    }
    if (!cells_ok) return rep;

    for (size_t i = 0; i < s.cells.size(); ++i) {
        for (size_t j = i + 1; j < s.cells.size(); ++j) {
            const Cell& a = s.cells[i];
            const Cell& b = s.cells[j];
            if (pair_face_to_face(cfg, a, b)) continue;
            // Refine the report: membership failure or genuine overlap.
            Cell common;
            std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                                  std::back_inserter(common));
            bool membership = false;
            for (Label l : a) {
                if (std::binary_search(common.begin(), common.end(), l)) continue;
                if (point_in_hull(cfg, l, common)) {
                    fail({Violation::Kind::MembershipViolation, a, b, std::nullopt,
                          "label " + std::to_string(l) + " lies in the common face"});
                    membership = true;
                }
            }
            for (Label l : b) {
                if (std::binary_search(common.begin(), common.end(), l)) continue;
                if (point_in_hull(cfg, l, common)) {
                    fail({Violation::Kind::MembershipViolation, a, b, std::nullopt,
                          "label " + std::to_string(l) + " lies in the common face"});
                    membership = true;
                }
            }
            if (!membership) fail({Violation::Kind::NotFaceToFace, a, b, std::nullopt, ""});
        }
    }

    Scalar total(0);
    for (const auto& c : s.cells) {
        if (c.size() == cfg.homdim())
            total += cfg.normalized_volume(c);
        else
            total += cfg.subconfig(c).hull_volume();
    }
    Scalar hull = cfg.hull_volume();
    if (total != hull) {
        fail({Violation::Kind::VolumeMismatch, {}, {}, std::nullopt,
              "cells cover " + total.str() + " of " + hull.str()});
    }
    return rep;
}

bool refines(const PointConfiguration& cfg, const Subdivision& s1, const Subdivision& s2) {
    auto r1 = is_valid_subdivision(cfg, s1);
    if (!r1.ok) throw Error(Error::Kind::Precondition, "refines: invalid fine subdivision");
    auto r2 = is_valid_subdivision(cfg, s2);
    if (!r2.ok) throw Error(Error::Kind::Precondition, "refines: invalid coarse subdivision");

    std::map<size_t, std::vector<Cell>> inside; // coarse index -> fine cells
    for (const auto& fine : s1.cells) {
        bool placed = false;
        for (size_t j = 0; j < s2.cells.size(); ++j) {
            const Cell& coarse = s2.cells[j];
            if (std::includes(coarse.begin(), coarse.end(), fine.begin(), fine.end())) {
                inside[j].push_back(fine);
                placed = true;
                break; // a spanning cell fits in at most one coarse cell
            }
        }
        if (!placed) return false;
    }
    for (size_t j = 0; j < s2.cells.size(); ++j) {
        auto it = inside.find(j);
        if (it == inside.end()) return false;
        PointConfiguration sub = cfg.subconfig(s2.cells[j]);
        if (!is_valid_subdivision(sub, Subdivision::from_cells(it->second)).ok) return false;
    }
    return true;
}

std::optional<FlipSubdivision> flip_subdivision_refinements(const PointConfiguration& cfg,
                                                            const Subdivision& s) {
    std::set<uint64_t> supports;
    size_t maxk = cfg.homdim() + 1;
    for (const auto& c : s.cells) {
        uint64_t m = cfg.mask_of(c);
        for (uint64_t sub = m; sub; sub = (sub - 1) & m) {
            size_t k = static_cast<size_t>(std::popcount(sub));
            if (k < 2 || k > maxk) continue;
            if (cfg.circuit_masks(sub)) supports.insert(sub);
        }
    }
    if (supports.size() != 1) return std::nullopt;
    Circuit circuit = cfg.circuit_of(cfg.cell_of_mask(*supports.begin()));

    std::vector<Cell> plus, minus;
    for (const auto& c : s.cells) {
        if (std::includes(c.begin(), c.end(), circuit.support.begin(), circuit.support.end())) {
            for (Label drop : circuit.positive) {
                Cell nc;
                for (Label l : c)
                    if (l != drop) nc.push_back(l);
                plus.push_back(nc);
            }
            for (Label drop : circuit.negative) {
                Cell nc;
                for (Label l : c)
                    if (l != drop) nc.push_back(l);
                minus.push_back(nc);
            }
        } else {
            plus.push_back(c);
            minus.push_back(c);
        }
    }
    return FlipSubdivision{std::move(circuit), Triangulation::from_cells(std::move(plus)),
                           Triangulation::from_cells(std::move(minus))};
}

namespace {

class Enumerator {
  public:
    Enumerator(const PointConfiguration& cfg, size_t cap) : cfg_(cfg), cap_(cap) {
        pick_generic_point();
    }

    std::vector<Triangulation> run() {
        std::vector<uint64_t> seeds;
        for_each_independent_cell([&](uint64_t mask, const Cell& cell) {
            if (contains_q_strictly(cell)) seeds.push_back(mask);
        });
        for (uint64_t seed : seeds) {
            State st;
            add_cell(st, seed);
            dfs(st);
        }
        std::vector<Triangulation> out;
        for (const auto& masks : found_) {
            std::vector<Cell> cells;
            for (uint64_t m : masks) cells.push_back(cfg_.cell_of_mask(m));
            out.push_back(Triangulation::from_cells(std::move(cells)));
        }
        std::sort(out.begin(), out.end());
        return out;
    }

  private:
    struct State {
        std::vector<uint64_t> cells;
        std::map<uint64_t, int> open; // interior wall -> needed apex orientation
        Scalar volume;
    };

    void pick_generic_point() {
        size_t n = cfg_.size();
        size_t hd = cfg_.homdim();
        Vec centroid(hd, Scalar(0));
        for (size_t i = 0; i < n; ++i)
            for (size_t r = 0; r < hd; ++r) centroid[r] += cfg_.homog_at(i)[r];
        Scalar inv = Scalar(Rational(1, static_cast<long>(n)));
        for (auto& x : centroid) x *= inv;

        // Perturbation directions along an affine basis keep q in the span.
        std::vector<Vec> dirs;
        {
            Mat rows{cfg_.homog_at(0)};
            size_t base = 0;
            for (size_t i = 1; i < n && rows.size() < hd; ++i) {
                Mat trial = rows;
                trial.push_back(cfg_.homog_at(i));
                if (rank(trial) == rows.size() + 1) {
                    rows.push_back(cfg_.homog_at(i));
                    Vec dir(hd);
                    for (size_t r = 0; r < hd; ++r)
                        dir[r] = cfg_.homog_at(i)[r] - cfg_.homog_at(base)[r];
                    dirs.push_back(std::move(dir));
                }
            }
        }

        for (long K = 101; K < 10000; K = K * 2 + 1) {
            Vec q = centroid;
            Rational eps(1, K);
            Rational e = eps;
            for (const auto& dir : dirs) {
                for (size_t r = 0; r < q.size(); ++r) q[r] += Scalar(e) * dir[r];
                e *= eps;
            }
            if (is_generic_interior(q)) {
                q_ = q;
                return;
            }
        }
        throw Error(Error::Kind::Inconsistency, "could not find a generic interior point");
    }

    bool is_generic_interior(const Vec& q) const {
        // Strictly inside every facet.
        for (const auto& f : cfg_.facets()) {
            Scalar e(0);
            for (size_t r = 0; r < q.size(); ++r) e += f.functional[r] * q[r];
            if (e.sign() >= 0) return false;
        }
        // Off every hyperplane spanned by d points.
        size_t n = cfg_.size();
        size_t d = static_cast<size_t>(cfg_.dim());
        std::vector<size_t> c(d);
        bool ok = true;
        combinations(n, d, [&](const std::vector<size_t>& idx) {
            std::vector<Label> tuple;
            for (size_t i : idx) tuple.push_back(cfg_.label_at(i));
            Mat m;
            for (Label l : tuple) m.push_back(cfg_.homog(l));
            if (rank(std::move(m)) != d) return true;
            if (cfg_.orientation_point(tuple, q) == 0) {
                ok = false;
                return false;
            }
            return true;
        });
        return ok;
    }

    template <typename F> static void combinations(size_t n, size_t k, F&& f) {
        if (k > n) return;
        std::vector<size_t> c(k);
        for (size_t i = 0; i < k; ++i) c[i] = i;
        while (true) {
            if (!f(c)) return;
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

    template <typename F> void for_each_independent_cell(F&& f) {
        combinations(cfg_.size(), cfg_.homdim(), [&](const std::vector<size_t>& idx) {
            Cell cell;
            uint64_t mask = 0;
            for (size_t i : idx) {
                cell.push_back(cfg_.label_at(i));
                mask |= uint64_t(1) << i;
            }
            std::sort(cell.begin(), cell.end());
            Mat m;
            for (Label l : cell) m.push_back(cfg_.homog(l));
            if (!det(std::move(m)).is_zero()) f(mask, cell);
            return true;
        });
    }

    bool contains_q_strictly(const Cell& cell) const {
        // q inside iff it is on the apex side of every wall.
        for (size_t drop = 0; drop < cell.size(); ++drop) {
            std::vector<Label> wall;
            Label apex = cell[drop];
            for (size_t i = 0; i < cell.size(); ++i)
                if (i != drop) wall.push_back(cell[i]);
            int s_apex = cfg_.orientation_point(wall, cfg_.homog(apex));
            int s_q = cfg_.orientation_point(wall, q_);
            if (s_q == 0) throw Error(Error::Kind::Inconsistency, "generic point on a wall");
            if (s_q != s_apex) return false;
        }
        return true;
    }

    bool wall_is_boundary(uint64_t wall_mask) {
        auto it = boundary_wall_.find(wall_mask);
        if (it != boundary_wall_.end()) return it->second;
        Cell wall = cfg_.cell_of_mask(wall_mask);
        Mat m;
        for (Label l : wall) m.push_back(cfg_.homog(l));
        auto basis = kernel_basis(std::move(m));
        bool boundary = false;
        if (basis.size() == 1) {
            int side = 0;
            boundary = true;
            for (size_t i = 0; i < cfg_.size(); ++i) {
                Scalar e(0);
                for (size_t r = 0; r < cfg_.homdim(); ++r)
                    e += basis[0][r] * cfg_.homog_at(i)[r];
                int s = e.sign();
                if (s == 0) continue;
                if (side == 0)
                    side = s;
                else if (s != side) {
                    boundary = false;
                    break;
                }
            }
        }
        boundary_wall_.emplace(wall_mask, boundary);
        return boundary;
    }

    void add_cell(State& st, uint64_t cell_mask) {
        st.cells.push_back(cell_mask);
        Cell cell = cfg_.cell_of_mask(cell_mask);
        st.volume += cfg_.normalized_volume(cell);
        for (Label apex : cell) {
            std::vector<Label> wall;
            for (Label l : cell)
                if (l != apex) wall.push_back(l);
            uint64_t wall_mask = cell_mask & ~(uint64_t(1) << cfg_.index_of(apex));
            int s_apex = cfg_.orientation_point(wall, cfg_.homog(apex));
            auto it = st.open.find(wall_mask);
            if (it != st.open.end()) {
                if (it->second != s_apex)
                    throw Error(Error::Kind::Inconsistency, "same-side wall reopen");
                st.open.erase(it);
            } else if (!wall_is_boundary(wall_mask)) {
                st.open.emplace(wall_mask, -s_apex);
            }
        }
    }

    void dfs(State& st) {
        if (st.open.empty()) {
            if (st.volume != cfg_.hull_volume())
                throw Error(Error::Kind::Inconsistency, "closed complex misses volume");
            std::vector<uint64_t> masks = st.cells;
            std::sort(masks.begin(), masks.end());
            found_.insert(std::move(masks));
            if (found_.size() > cap_)
                throw Error(Error::Kind::CapExceeded, "triangulation enumeration cap exceeded");
            return;
        }
        auto [wall_mask, need] = *st.open.begin();
        Cell wall = cfg_.cell_of_mask(wall_mask);
        for (size_t i = 0; i < cfg_.size(); ++i) {
            uint64_t bit = uint64_t(1) << i;
            if (wall_mask & bit) continue;
            if (cfg_.orientation_point(wall, cfg_.homog_at(i)) != need) continue;
            uint64_t cand = wall_mask | bit;
            bool ok = true;
            for (uint64_t c : st.cells) {
                if (c == cand || !cfg_.cells_proper(c, cand)) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            State next = st;
            add_cell(next, cand);
            dfs(next);
        }
    }

    const PointConfiguration& cfg_;
    size_t cap_;
    Vec q_;
    std::set<std::vector<uint64_t>> found_;
    std::map<uint64_t, bool> boundary_wall_;
};

} // namespace

std::vector<Triangulation> enumerate_triangulations_bruteforce(const PointConfiguration& cfg,
                                                               size_t cap) {
    Enumerator e(cfg, cap);
    return e.run();
}

std::vector<Triangulation> triangulation_refinements(const PointConfiguration& cfg,
                                                     const Subdivision& s) {
    std::vector<std::vector<std::vector<Cell>>> options; // per coarse cell
    for (const auto& c : s.cells) {
        Mat m;
        for (Label l : c) m.push_back(cfg.homog(l));
        if (c.size() == cfg.homdim() && !det(std::move(m)).is_zero()) {
            options.push_back({{c}});
            continue;
        }
        PointConfiguration sub = cfg.subconfig(c);
        auto tris = enumerate_triangulations_bruteforce(sub);
        std::vector<std::vector<Cell>> opts;
        for (auto& t : tris) opts.push_back(t.cells);
        options.push_back(std::move(opts));
    }
    std::vector<Triangulation> result;
    std::vector<size_t> pick(options.size(), 0);
    while (true) {
        std::vector<Cell> cells;
        for (size_t i = 0; i < options.size(); ++i)
            for (const auto& c : options[i][pick[i]]) cells.push_back(c);
        Triangulation t = Triangulation::from_cells(std::move(cells));
        if (is_valid_triangulation(cfg, t).ok) result.push_back(std::move(t));
        size_t i = 0;
        while (i < options.size()) {
            if (++pick[i] < options[i].size()) break;
            pick[i] = 0;
            ++i;
        }
        if (i == options.size()) break;
    }
    std::sort(result.begin(), result.end());
    return result;
}

} // namespace trisec
