#include "trisec/point_config.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace trisec {

Cell make_cell(std::vector<Label> labels) {
    std::sort(labels.begin(), labels.end());
    for (size_t i = 1; i < labels.size(); ++i)
        if (labels[i] == labels[i - 1])
            throw Error(Error::Kind::Precondition, "repeated label in cell");
    return labels;
}

std::string cell_str(const Cell& c) {
    std::ostringstream os;
    for (size_t i = 0; i < c.size(); ++i) {
        if (i) os << ' ';
        os << c[i];
    }
    return os.str();
}

PointConfiguration::PointConfiguration(std::vector<Label> labels, std::vector<Vec> coords,
                                       bool homogeneous)
    : labels_(std::move(labels)), coords_(std::move(coords)), homogeneous_(homogeneous) {
    if (labels_.size() != coords_.size())
        throw Error(Error::Kind::Dimension, "labels/coords size mismatch");
    if (labels_.empty()) throw Error(Error::Kind::Precondition, "empty configuration");
    if (labels_.size() > 64)
        throw Error(Error::Kind::Unsupported, "configurations limited to 64 points");
    size_t width = coords_[0].size();
    for (const auto& row : coords_)
        if (row.size() != width) throw Error(Error::Kind::Dimension, "point width mismatch");
    if (width == 0) throw Error(Error::Kind::Dimension, "zero-dimensional coordinates");
    dim_ = homogeneous_ ? static_cast<int>(width) - 1 : static_cast<int>(width);
    if (dim_ < 0 || labels_.size() < homdim())
        throw Error(Error::Kind::Precondition, "too few points to span");

    for (size_t i = 0; i < labels_.size(); ++i) {
        if (labels_[i] <= 0)
            throw Error(Error::Kind::Precondition, "labels must be positive integers");
        if (!label_index_.emplace(labels_[i], i).second)
            throw Error(Error::Kind::Precondition, "duplicate label");
    }
    for (size_t i = 0; i < coords_.size(); ++i)
        for (size_t j = i + 1; j < coords_.size(); ++j)
            if (coords_[i] == coords_[j])
                throw Error(Error::Kind::DuplicatePoint, "duplicate point coordinates");

    caches_ = std::make_shared<Caches>();
    homog_.reserve(coords_.size());
    for (const auto& row : coords_) {
        Vec h;
        h.reserve(homdim());
        if (!homogeneous_) h.push_back(Scalar(1));
        for (const auto& x : row) h.push_back(x);
        homog_.push_back(std::move(h));
    }
    Mat m = homog_;
    if (rank(std::move(m)) != homdim())
        throw Error(Error::Kind::Precondition, "points do not affinely span dimension d");
}

size_t PointConfiguration::index_of(Label l) const {
    auto it = label_index_.find(l);
    if (it == label_index_.end())
        throw Error(Error::Kind::UnknownLabel, "unknown label " + std::to_string(l));
    return it->second;
}

uint64_t PointConfiguration::mask_of(const Cell& c) const {
    uint64_t m = 0;
    for (Label l : c) {
        uint64_t bit = uint64_t(1) << index_of(l);
        if (m & bit) throw Error(Error::Kind::Precondition, "repeated label in cell");
        m |= bit;
    }
    return m;
}

Cell PointConfiguration::cell_of_mask(uint64_t mask) const {
    Cell c;
    for (size_t i = 0; i < size(); ++i)
        if (mask & (uint64_t(1) << i)) c.push_back(labels_[i]);
    std::sort(c.begin(), c.end());
    return c;
}

int PointConfiguration::orientation_rows(const std::vector<size_t>& idx) const {
    Mat m;
    m.reserve(idx.size());
    for (size_t i : idx) m.push_back(homog_[i]);
    return det(std::move(m)).sign();
}

int PointConfiguration::orientation(const std::vector<Label>& tuple) const {
    if (tuple.size() != homdim())
        throw Error(Error::Kind::Dimension, "orientation tuple must have d+1 labels");
    std::vector<size_t> idx;
    idx.reserve(tuple.size());
    for (Label l : tuple) idx.push_back(index_of(l));
    for (size_t i = 0; i < idx.size(); ++i)
        for (size_t j = i + 1; j < idx.size(); ++j)
            if (idx[i] == idx[j]) return 0;

    // Sort with parity so the cache key is order-free.
    int parity = 1;
    std::vector<size_t> sorted = idx;
    for (size_t i = 0; i < sorted.size(); ++i)
        for (size_t j = i + 1; j < sorted.size(); ++j)
            if (sorted[j] < sorted[i]) {
                std::swap(sorted[i], sorted[j]);
                parity = -parity;
            }

    bool cacheable = sorted.size() <= 10;
    uint64_t key = 0;
    if (cacheable) {
        for (size_t v : sorted) key = (key << 6) | v;
        std::lock_guard<std::mutex> lock(caches_->chi_mutex);
        auto it = caches_->chirotope.find(key);
        if (it != caches_->chirotope.end()) return parity * it->second;
    }
    int sign = orientation_rows(sorted);
    if (cacheable) {
        std::lock_guard<std::mutex> lock(caches_->chi_mutex);
        caches_->chirotope.emplace(key, sign);
    }
    return parity * sign;
}

int PointConfiguration::orientation_point(const std::vector<Label>& dtuple,
                                          const Vec& homog_point) const {
    if (dtuple.size() + 1 != homdim())
        throw Error(Error::Kind::Dimension, "orientation_point needs d labels");
    if (homog_point.size() != homdim())
        throw Error(Error::Kind::Dimension, "orientation_point: bad point width");
    Mat m;
    m.reserve(homdim());
    for (Label l : dtuple) m.push_back(homog_[index_of(l)]);
    m.push_back(homog_point);
    return det(std::move(m)).sign();
}

namespace {

// Visit all k-subsets of {0..n-1} in lexicographic order.
template <typename F> bool for_each_combination(size_t n, size_t k, F&& f) {
    if (k > n) return true;
    std::vector<size_t> c(k);
    for (size_t i = 0; i < k; ++i) c[i] = i;
    while (true) {
        if (!f(c)) return false;
        size_t i = k;
        while (i > 0) {
            --i;
            if (c[i] != i + n - k) break;
            if (i == 0) return true;
        }
        ++c[i];
        for (size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
    }
}

} // namespace

void PointConfiguration::precompute_chirotope() const {
    if (size() > 20)
        throw Error(Error::Kind::Unsupported, "chirotope precomputation offered for n <= 20");
    for_each_combination(size(), homdim(), [&](const std::vector<size_t>& c) {
        std::vector<Label> tuple;
        for (size_t i : c) tuple.push_back(labels_[i]);
        orientation(tuple);
        return true;
    });
}

bool PointConfiguration::is_general_position() const {
    bool general = true;
    for_each_combination(size(), homdim(), [&](const std::vector<size_t>& c) {
        std::vector<Label> tuple;
        for (size_t i : c) tuple.push_back(labels_[i]);
        if (orientation(tuple) == 0) {
            general = false;
            return false;
        }
        return true;
    });
    return general;
}

Circuit PointConfiguration::circuit_of(const Cell& subset) const {
    Cell sorted = make_cell(subset);
    Mat m(homdim(), Vec(sorted.size(), Scalar(0)));
    for (size_t j = 0; j < sorted.size(); ++j) {
        const Vec& h = homog_[index_of(sorted[j])];
        for (size_t r = 0; r < homdim(); ++r) m[r][j] = h[r];
    }
    auto basis = kernel_basis(std::move(m));
    if (basis.empty())
        throw Error(Error::Kind::NoCircuit, "subset is affinely independent");
    if (basis.size() > 1)
        throw Error(Error::Kind::AmbiguousCircuit, "subset contains two distinct circuits");

    const Vec& v = basis[0];
    Circuit c;
    for (size_t j = 0; j < sorted.size(); ++j)
        if (!v[j].is_zero()) c.support.push_back(sorted[j]);
    // Scale so the smallest support label has coefficient +1.
    Scalar pivot;
    for (size_t j = 0; j < sorted.size(); ++j)
        if (sorted[j] == c.support.front()) pivot = v[j];
    Scalar inv = pivot.inverse();
    for (size_t j = 0; j < sorted.size(); ++j) {
        if (v[j].is_zero()) continue;
        Scalar coeff = v[j] * inv;
        c.coefficients[sorted[j]] = coeff;
        if (coeff.sign() > 0)
            c.positive.push_back(sorted[j]);
        else
            c.negative.push_back(sorted[j]);
    }
    return c;
}

std::optional<CircuitMasks> PointConfiguration::circuit_in(uint64_t subset_mask) const {
    {
        std::lock_guard<std::mutex> lock(caches_->circuit_mutex);
        auto it = caches_->circuit_cache.find(subset_mask);
        if (it != caches_->circuit_cache.end()) return it->second;
    }
    std::optional<CircuitMasks> result;
    size_t k = std::popcount(subset_mask);
    if (k >= 2) {
        std::vector<size_t> idx;
        for (size_t i = 0; i < size(); ++i)
            if (subset_mask & (uint64_t(1) << i)) idx.push_back(i);
        Mat m(homdim(), Vec(k, Scalar(0)));
        for (size_t j = 0; j < k; ++j)
            for (size_t r = 0; r < homdim(); ++r) m[r][j] = homog_[idx[j]][r];
        auto basis = kernel_basis(std::move(m));
        if (basis.size() == 1) {
            const Vec& v = basis[0];
            CircuitMasks cm;
            Label best = 0;
            bool best_pos = true;
            for (size_t j = 0; j < k; ++j) {
                int s = v[j].sign();
                if (s == 0) continue;
                Label l = labels_[idx[j]];
                if (best == 0 || l < best) {
                    best = l;
                    best_pos = s > 0;
                }
                if (s > 0)
                    cm.pos |= uint64_t(1) << idx[j];
                else
                    cm.neg |= uint64_t(1) << idx[j];
            }
            if (!best_pos) std::swap(cm.pos, cm.neg);
            result = cm;
        }
    }
    std::lock_guard<std::mutex> lock(caches_->circuit_mutex);
    caches_->circuit_cache.emplace(subset_mask, result);
    return result;
}

std::optional<CircuitMasks> PointConfiguration::circuit_masks(uint64_t subset_mask) const {
    auto cm = circuit_in(subset_mask);
    if (cm && cm->support() == subset_mask) return cm;
    return std::nullopt;
}

uint64_t PointConfiguration::improper_pair_witness(uint64_t mask_a, uint64_t mask_b) const {
    if (mask_a == mask_b) return 0;
    uint64_t a = std::min(mask_a, mask_b), b = std::max(mask_a, mask_b);
    {
        std::lock_guard<std::mutex> lock(caches_->pair_mutex);
        auto it = caches_->pair_cache.find({a, b});
        if (it != caches_->pair_cache.end()) return it->second;
    }
    uint64_t u = a | b;
    uint64_t witness = 0;
    size_t maxk = homdim() + 1; // circuit supports have at most d+2 labels
    for (uint64_t s = u; s; s = (s - 1) & u) {
        size_t k = static_cast<size_t>(std::popcount(s));
        if (k < 2 || k > maxk) continue;
        if ((s & ~a) == 0 || (s & ~b) == 0) continue; // inside one independent cell
        auto cm = circuit_masks(s);
        if (!cm) continue;
        if (((cm->pos & ~a) == 0 && (cm->neg & ~b) == 0) ||
            ((cm->neg & ~a) == 0 && (cm->pos & ~b) == 0)) {
            witness = s;
            break;
        }
    }
    std::lock_guard<std::mutex> lock(caches_->pair_mutex);
    caches_->pair_cache.emplace(std::make_pair(a, b), witness);
    return witness;
}

const std::vector<Facet>& PointConfiguration::facets() const {
    {
        std::lock_guard<std::mutex> lock(caches_->facet_mutex);
        if (caches_->facets) return *caches_->facets;
    }
    std::map<uint64_t, Facet> found;
    size_t d = static_cast<size_t>(dim_);
    for_each_combination(size(), d, [&](const std::vector<size_t>& c) {
        // Hyperplane through the homogenized span of these d points.
        Mat m;
        for (size_t i : c) m.push_back(homog_[i]);
        auto basis = kernel_basis(std::move(m));
        if (basis.size() != 1) return true; // not affinely independent
        Vec h = basis[0];
        int side = 0;
        uint64_t on = 0;
        for (size_t q = 0; q < size(); ++q) {
            Scalar e(0);
            for (size_t r = 0; r < homdim(); ++r) e += h[r] * homog_[q][r];
            int s = e.sign();
            if (s == 0) {
                on |= uint64_t(1) << q;
            } else if (side == 0) {
                side = s;
            } else if (s != side) {
                return true; // points on both sides: not supporting
            }
        }
        if (side == 0) return true; // all points on the hyperplane
        if (found.count(on)) return true;
        if (side > 0)
            for (auto& x : h) x = -x; // orient: inside <= 0
        found.emplace(on, Facet{cell_of_mask(on), std::move(h)});
        return true;
    });
    std::vector<Facet> result;
    result.reserve(found.size());
    for (auto& [mask, facet] : found) result.push_back(std::move(facet));
    std::sort(result.begin(), result.end(),
              [](const Facet& a, const Facet& b) { return a.labels < b.labels; });
    std::lock_guard<std::mutex> lock(caches_->facet_mutex);
    if (!caches_->facets) caches_->facets = std::move(result);
    return *caches_->facets;
}

Scalar PointConfiguration::normalized_volume(const Cell& cell) const {
    if (cell.size() != homdim())
        throw Error(Error::Kind::Dimension, "cell must have d+1 labels");
    Mat m;
    for (Label l : make_cell(cell)) m.push_back(homog_[index_of(l)]);
    Scalar v = det(std::move(m));
    if (v.is_zero())
        throw Error(Error::Kind::DegenerateCell, "affinely dependent cell " + cell_str(cell));
    return v.abs();
}

std::vector<uint64_t> PointConfiguration::facets_of_subset(uint64_t subset_mask) const {
    {
        std::lock_guard<std::mutex> lock(caches_->subset_mutex);
        auto it = caches_->subset_facets.find(subset_mask);
        if (it != caches_->subset_facets.end()) return it->second;
    }
    std::vector<uint64_t> result;
    if (subset_mask == full_mask()) {
        for (const auto& f : facets()) result.push_back(mask_of(f.labels));
    } else {
        PointConfiguration chart = chart_config(cell_of_mask(subset_mask));
        for (const auto& f : chart.facets()) result.push_back(mask_of(f.labels));
    }
    std::lock_guard<std::mutex> lock(caches_->subset_mutex);
    caches_->subset_facets.emplace(subset_mask, result);
    return result;
}

std::vector<uint64_t> PointConfiguration::placing_cells(uint64_t subset_mask) const {
    {
        std::lock_guard<std::mutex> lock(caches_->subset_mutex);
        auto it = caches_->placing.find(subset_mask);
        if (it != caches_->placing.end()) return it->second;
    }
    std::vector<size_t> idx;
    for (size_t i = 0; i < size(); ++i)
        if (subset_mask & (uint64_t(1) << i)) idx.push_back(i);
    Mat m;
    for (size_t i : idx) m.push_back(homog_[i]);
    std::vector<uint64_t> cells;
    if (rank(std::move(m)) == idx.size()) {
        cells.push_back(subset_mask); // affinely independent: one cell
    } else {
        // Join the largest label to every facet of the subset not containing it.
        size_t apex = idx[0];
        for (size_t i : idx)
            if (labels_[i] > labels_[apex]) apex = i;
        uint64_t apex_bit = uint64_t(1) << apex;
        for (uint64_t fmask : facets_of_subset(subset_mask)) {
            if (fmask & apex_bit) continue;
            for (uint64_t sub : placing_cells(fmask)) cells.push_back(sub | apex_bit);
        }
        std::sort(cells.begin(), cells.end());
        cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
    }
    std::lock_guard<std::mutex> lock(caches_->subset_mutex);
    caches_->placing.emplace(subset_mask, cells);
    return cells;
}

std::vector<Cell> PointConfiguration::placing_triangulation() const {
    std::vector<Cell> cells;
    for (uint64_t m : placing_cells(full_mask())) cells.push_back(cell_of_mask(m));
    std::sort(cells.begin(), cells.end());
    return cells;
}

Scalar PointConfiguration::hull_volume() const {
    {
        std::lock_guard<std::mutex> lock(caches_->facet_mutex);
        if (caches_->hull_volume) return *caches_->hull_volume;
    }
    Scalar total(0);
    for (uint64_t m : placing_cells(full_mask())) total += normalized_volume(cell_of_mask(m));
    std::lock_guard<std::mutex> lock(caches_->facet_mutex);
    if (!caches_->hull_volume) caches_->hull_volume = total;
    return *caches_->hull_volume;
}

Vec PointConfiguration::barycentric_in_cell(const Cell& cell, Label p) const {
    if (cell.size() != homdim())
        throw Error(Error::Kind::Dimension, "barycentric: cell must have d+1 labels");
    Mat m(homdim(), Vec(cell.size(), Scalar(0)));
    for (size_t j = 0; j < cell.size(); ++j) {
        const Vec& h = homog_[index_of(cell[j])];
        for (size_t r = 0; r < homdim(); ++r) m[r][j] = h[r];
    }
    auto sol = solve(std::move(m), homog_[index_of(p)]);
    if (!sol) throw Error(Error::Kind::DegenerateCell, "barycentric: degenerate cell");
    return *sol;
}

bool PointConfiguration::is_perturbation_of(const PointConfiguration& perturbed,
                                            const PointConfiguration& reference) {
    std::vector<Label> la = perturbed.labels_, lb = reference.labels_;
    std::sort(la.begin(), la.end());
    std::sort(lb.begin(), lb.end());
    if (la != lb || perturbed.dim_ != reference.dim_)
        throw Error(Error::Kind::Precondition, "perturbation test needs matching labels and dim");
    bool ok = true;
    for_each_combination(la.size(), reference.homdim(), [&](const std::vector<size_t>& c) {
        std::vector<Label> tuple;
        for (size_t i : c) tuple.push_back(la[i]);
        int s = reference.orientation(tuple);
        if (s != 0 && perturbed.orientation(tuple) != s) {
            ok = false;
            return false;
        }
        return true;
    });
    return ok;
}

PointConfiguration PointConfiguration::subconfig(const Cell& labels) const {
    Cell sorted = make_cell(labels);
    std::vector<Vec> coords;
    for (Label l : sorted) coords.push_back(coords_[index_of(l)]);
    return PointConfiguration(sorted, std::move(coords), homogeneous_);
}

PointConfiguration PointConfiguration::chart_config(const Cell& labels) const {
    Cell sorted = make_cell(labels);
    if (sorted.size() < 2)
        throw Error(Error::Kind::Precondition, "chart needs at least two points");
    // Greedy affine basis in label order.
    std::vector<Label> basis{sorted.front()};
    Mat rows{homog_[index_of(sorted.front())]};
    for (size_t i = 1; i < sorted.size(); ++i) {
        Mat trial = rows;
        trial.push_back(homog_[index_of(sorted[i])]);
        if (rank(trial) == rows.size() + 1) {
            basis.push_back(sorted[i]);
            rows.push_back(homog_[index_of(sorted[i])]);
        }
    }
    size_t r = basis.size() - 1; // intrinsic dimension
    if (r == 0) throw Error(Error::Kind::Precondition, "chart of a single point");
    const Vec& h0 = homog_[index_of(basis[0])];
    Mat dirs(homdim(), Vec(r, Scalar(0)));
    for (size_t j = 0; j < r; ++j) {
        const Vec& hj = homog_[index_of(basis[j + 1])];
        for (size_t row = 0; row < homdim(); ++row) dirs[row][j] = hj[row] - h0[row];
    }
    std::vector<Vec> coords;
    for (Label l : sorted) {
        const Vec& hp = homog_[index_of(l)];
        Vec rhs(homdim());
        for (size_t row = 0; row < homdim(); ++row) rhs[row] = hp[row] - h0[row];
        auto sol = solve(dirs, rhs);
        if (!sol)
            throw Error(Error::Kind::Inconsistency, "point outside its own affine span");
        coords.push_back(*sol);
    }
    return PointConfiguration(sorted, std::move(coords), false);
}

} // namespace trisec
