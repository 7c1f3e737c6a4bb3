#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rdiv {

using Index = std::size_t;
using IndexList = std::vector<Index>;

// Absolute slack used when checking that a loaded matrix is a metric.
inline constexpr double kMetricTolerance = 1e-9;

// Euclidean sets at or above this size get a dense matrix when an
// algorithm asks for repeated all-pairs access.
inline constexpr std::size_t kDenseThreshold = 1024;

// A finite metric space. Either coordinates with the L2 distance or an
// explicit distance matrix. Copies are cheap: storage is shared and
// immutable, and subset() returns a view whose points keep their identity
// in the root dataset (see global_id).
class PointSet {
 public:
  enum class Kind { Euclidean, Matrix };

  // coords is row-major, n * dim values.
  static PointSet euclidean(std::size_t dim, std::vector<double> coords);

  // Validates symmetry, zero diagonal, nonnegativity and the triangle
  // inequality within kMetricTolerance; throws ParseError naming the
  // offending indices.
  static PointSet from_matrix(std::size_t n, std::vector<double> entries);

  Kind kind() const noexcept { return storage_->kind; }
  std::size_t size() const noexcept { return map_ ? map_->size() : storage_->n; }
  // Zero for matrix kind.
  std::size_t dim() const noexcept { return storage_->dim; }

  // Bounds-checked; throws PreconditionError.
  double distance(Index i, Index j) const;

  double operator()(Index i, Index j) const noexcept {
    return raw(map_ ? (*map_)[i] : i, map_ ? (*map_)[j] : j);
  }

  // Coordinates of point i; Euclidean kind only.
  std::span<const double> coords(Index i) const;

  // View of the listed local points, renumbered 0..|local|-1.
  PointSet subset(std::span<const Index> local) const;

  // Index of local point i in the dataset this set was loaded as.
  Index global_id(Index i) const noexcept { return map_ ? (*map_)[i] : i; }
  bool is_view() const noexcept { return map_ != nullptr; }

  // Fresh matrix-kind dataset holding this set's pairwise distances, each
  // multiplied by factor. Identity is reset: global_id(i) == i.
  PointSet materialized(double factor = 1.0) const;

  // Dense copy for large Euclidean sets, otherwise *this. Local indices
  // are preserved; global ids of the copy are not.
  PointSet dense_for_all_pairs() const;

 private:
  struct Storage {
    Kind kind = Kind::Matrix;
    std::size_t n = 0;
    std::size_t dim = 0;
    std::vector<double> data;
  };

  PointSet(std::shared_ptr<const Storage> storage,
           std::shared_ptr<const IndexList> map)
      : storage_(std::move(storage)), map_(std::move(map)) {}

  double raw(Index a, Index b) const noexcept;

  std::shared_ptr<const Storage> storage_;
  std::shared_ptr<const IndexList> map_;
};

// Largest pairwise distance; 0 for a single point.
double diameter(const PointSet& ps);

// Smallest distance between distinct points, or nullopt when n < 2.
std::optional<double> min_pairwise_distance(const PointSet& ps);

// d(i,j) = max(base(i,j), floor) for i != j, and 0 on the diagonal.
class ClampedMetric {
 public:
  ClampedMetric(PointSet base, double floor);

  std::size_t size() const noexcept { return base_.size(); }
  double floor() const noexcept { return floor_; }
  const PointSet& base() const noexcept { return base_; }

  double operator()(Index i, Index j) const noexcept {
    if (i == j) return 0.0;
    const double d = base_(i, j);
    return d < floor_ ? floor_ : d;
  }
  double distance(Index i, Index j) const;

  // Matrix-kind copy of the clamped distances.
  PointSet to_pointset() const;

 private:
  PointSet base_;
  double floor_;
};

// floor = c / k. Requires c > 0 and k >= 1.
ClampedMetric clamp_metric(const PointSet& ps, double c, std::size_t k);

// ---------------------------------------------------------------------------
// Dataset I/O

enum class PointFormat { Json, Csv, MatrixCsv };

PointFormat parse_point_format(std::string_view name);
std::string_view point_format_name(PointFormat f) noexcept;
// json for *.json, matrix-csv for *.matrix.csv / *.dm.csv, csv otherwise.
PointFormat guess_point_format(std::string_view path) noexcept;

PointSet load_pointset(std::string_view document, PointFormat format);
PointSet load_pointset_file(const std::string& path, PointFormat format);

// Doubles are written with 17 significant digits so that loading the
// output reproduces every distance bit for bit. Json and Csv need a
// Euclidean set; MatrixCsv accepts either kind.
std::string serialize_pointset(const PointSet& ps, PointFormat format);

// ---------------------------------------------------------------------------
// Run parameters

enum class Objective { RemoteMatching, RemotePseudoforest };

Objective parse_objective(std::string_view name);
std::string_view objective_name(Objective o) noexcept;

struct RunConfig {
  std::size_t k = 2;
  double epsilon = 1.0;
  std::uint64_t seed = 0;
  std::size_t repeats = 20;
  Objective objective = Objective::RemoteMatching;
  // nullopt draws the GMM start point from the seed.
  std::optional<Index> gmm_start = Index{0};
  std::size_t threads = 1;

  // Throws PreconditionError on k == 0, epsilon outside (0,1],
  // repeats == 0 or threads == 0.
  void validate() const;
};

// Resolves cfg.gmm_start against a dataset of n points.
Index resolve_gmm_start(const RunConfig& cfg, std::size_t n);

}  // namespace rdiv
