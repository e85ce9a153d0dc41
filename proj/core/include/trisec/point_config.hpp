#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <vector>

#include "trisec/linalg.hpp"

namespace trisec {

using Label = int;

// A cell is a sorted duplicate-free label set.
using Cell = std::vector<Label>;

Cell make_cell(std::vector<Label> labels);
std::string cell_str(const Cell& c);

// Signed minimal affine dependence: sum over support of coeff * homog(point)
// is exactly zero, all coefficients nonzero, every proper subset of the
// support affinely independent.  Canonical form: the coefficient of the
// smallest support label equals +1 (so the smallest label sits in C+).
struct Circuit {
    Cell support;
    std::map<Label, Scalar> coefficients;
    Cell positive; // C+
    Cell negative; // C-

    bool operator==(const Circuit& o) const {
        return support == o.support && positive == o.positive && negative == o.negative &&
               coefficients == o.coefficients;
    }
};

// Sign partition of a circuit, on index masks of one configuration.
struct CircuitMasks {
    uint64_t pos = 0;
    uint64_t neg = 0;
    uint64_t support() const { return pos | neg; }
};

struct Facet {
    Cell labels;    // every label on the supporting hyperplane
    Vec functional; // h with h.homog(p) <= 0 for all points, == 0 exactly on labels
};

// Labeled point set with an exact orientation oracle.  Immutable after
// construction; the caches fill lazily and are safe to share across threads.
class PointConfiguration {
  public:
    // `coords` holds one row per label.  Without `homogeneous` each row has d
    // entries and a homogenization coordinate 1 is implied; with it the rows
    // are already homogeneous (length d+1, columns spanning an affine
    // hyperplane off the origin) and no extra row is added.
    PointConfiguration(std::vector<Label> labels, std::vector<Vec> coords, bool homogeneous = false);

    size_t size() const { return labels_.size(); }
    int dim() const { return dim_; }
    bool homogeneous() const { return homogeneous_; }
    const std::vector<Label>& labels() const { return labels_; }
    const Vec& coords(Label l) const { return coords_[index_of(l)]; }
    const Vec& homog(Label l) const { return homog_[index_of(l)]; }
    const Vec& homog_at(size_t idx) const { return homog_[idx]; }
    size_t homdim() const { return static_cast<size_t>(dim_) + 1; }

    size_t index_of(Label l) const;
    Label label_at(size_t idx) const { return labels_[idx]; }
    bool has_label(Label l) const { return label_index_.count(l) != 0; }

    uint64_t mask_of(const Cell& c) const;
    Cell cell_of_mask(uint64_t mask) const;
    uint64_t full_mask() const { return size() == 64 ? ~uint64_t(0) : ((uint64_t(1) << size()) - 1); }

    // Sign of the homogenized determinant of the tuple, alternating in the
    // tuple order; 0 on repeats.  Tuple length must be d+1.
    int orientation(const std::vector<Label>& tuple) const;
    // Same with the last row replaced by an explicit homogenized point.
    int orientation_point(const std::vector<Label>& dtuple, const Vec& homog_point) const;

    void precompute_chirotope() const; // offered for n <= 20

    bool is_general_position() const;

    // The unique circuit whose support lies in `subset`.
    Circuit circuit_of(const Cell& subset) const;
    // Cached: the signed support of the unique dependence inside the mask, or
    // nullopt when the subset is independent or carries several dependences.
    std::optional<CircuitMasks> circuit_in(uint64_t subset_mask) const;
    // Cached circuit test: is this exact label mask the support of a circuit?
    std::optional<CircuitMasks> circuit_masks(uint64_t subset_mask) const;

    // Proper-intersection test for two affinely independent cells: improper
    // iff some circuit has its positive side inside one cell and its negative
    // side inside the other.  Returns the support mask of a violating
    // circuit, or 0 when the pair intersects in a common face.  Cached.
    uint64_t improper_pair_witness(uint64_t mask_a, uint64_t mask_b) const;
    bool cells_proper(uint64_t mask_a, uint64_t mask_b) const {
        return improper_pair_witness(mask_a, mask_b) == 0;
    }

    const std::vector<Facet>& facets() const;

    // |det| of the homogenized cell = d! times the Euclidean volume.
    Scalar normalized_volume(const Cell& cell) const;
    Scalar hull_volume() const;

    // Pulling-style triangulation joining the largest label recursively to
    // the facets not containing it; deterministic, used for hull volumes and
    // as a known-good seed triangulation.
    std::vector<Cell> placing_triangulation() const;

    // Barycentric coordinates of homog(p) in an affinely independent cell,
    // aligned with the cell order.
    Vec barycentric_in_cell(const Cell& cell, Label p) const;

    // true iff every tuple with nonzero orientation in `reference` has the
    // same orientation in `perturbed` (labels must coincide).
    static bool is_perturbation_of(const PointConfiguration& perturbed,
                                   const PointConfiguration& reference);

    // Restriction keeping ambient coordinates; the subset must affinely span.
    PointConfiguration subconfig(const Cell& labels) const;
    // Restriction re-coordinatized in an affine chart of the subset's span;
    // keeps labels, drops to the subset's intrinsic dimension.
    PointConfiguration chart_config(const Cell& labels) const;

    // Facet label masks of the subconfiguration on `subset_mask` (chart-based
    // for lower-dimensional subsets); cached.
    std::vector<uint64_t> facets_of_subset(uint64_t subset_mask) const;

  private:
    std::vector<uint64_t> placing_cells(uint64_t subset_mask) const;
    int orientation_rows(const std::vector<size_t>& idx) const;

    std::vector<Label> labels_;
    std::map<Label, size_t> label_index_;
    std::vector<Vec> coords_;
    std::vector<Vec> homog_;
    bool homogeneous_ = false;
    int dim_ = 0;

    // Derived data only; copies of an (immutable) configuration share it.
    struct Caches {
        std::mutex chi_mutex;
        std::unordered_map<uint64_t, int> chirotope; // packed sorted tuple -> sign
        std::mutex circuit_mutex;
        std::unordered_map<uint64_t, std::optional<CircuitMasks>> circuit_cache;
        std::mutex pair_mutex;
        std::map<std::pair<uint64_t, uint64_t>, uint64_t> pair_cache;
        std::mutex facet_mutex;
        std::optional<std::vector<Facet>> facets;
        std::optional<Scalar> hull_volume;
        std::mutex subset_mutex;
        std::map<uint64_t, std::vector<uint64_t>> subset_facets;
        std::map<uint64_t, std::vector<uint64_t>> placing;
    };
    std::shared_ptr<Caches> caches_;
};

} // namespace trisec
