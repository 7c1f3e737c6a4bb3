#include "remote_div/gmm.hpp"

#include <algorithm>
#include <string>

#include "remote_div/error.hpp"

namespace rdiv {

GmmResult gmm(const PointSet& ps, std::size_t k, Index start) {
  const std::size_t n = ps.size();
  if (k == 0) throw PreconditionError("gmm needs k >= 1");
  if (k > n) {
    throw PreconditionError("gmm asked for k = " + std::to_string(k) +
                            " centers from " + std::to_string(n) + " points");
  }
  if (start >= n) throw PreconditionError("gmm start index out of range");

  GmmResult out;
  out.centers.reserve(k);
  out.step_radii.reserve(k);
  std::vector<double> near(n);
  std::vector<bool> chosen(n, false);

  auto add_center = [&](Index c, bool first) {
    out.centers.push_back(c);
    chosen[c] = true;
    for (Index x = 0; x < n; ++x) {
      const double d = ps(x, c);
      if (first || d < near[x]) near[x] = d;
    }
    out.step_radii.push_back(*std::max_element(near.begin(), near.end()));
  };

  add_center(start, true);
  while (out.centers.size() < k) {
    Index best = n;
    for (Index x = 0; x < n; ++x) {
      if (chosen[x]) continue;
      if (best == n || near[x] > near[best]) best = x;
    }
    add_center(best, false);
  }
  out.radius = out.step_radii.back();
  return out;
}

VoronoiPartition voronoi_partition(const PointSet& ps,
                                   std::span<const Index> centers) {
  if (centers.empty()) throw PreconditionError("voronoi partition needs centers");
  {
    IndexList sorted(centers.begin(), centers.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw PreconditionError("voronoi partition given duplicate centers");
    }
    if (sorted.back() >= ps.size()) {
      throw PreconditionError("center index out of range");
    }
  }
  VoronoiPartition out;
  out.cell_of.resize(ps.size());
  out.cells.resize(centers.size());
  std::vector<std::size_t> own_rank(ps.size(), centers.size());
  for (std::size_t r = 0; r < centers.size(); ++r) own_rank[centers[r]] = r;
  for (Index x = 0; x < ps.size(); ++x) {
    // A center sits in its own cell even if a coincident center outranks it.
    if (own_rank[x] != centers.size()) {
      out.cell_of[x] = own_rank[x];
      out.cells[own_rank[x]].push_back(x);
      continue;
    }
    std::size_t best = 0;
    double best_d = ps(x, centers[0]);
    for (std::size_t r = 1; r < centers.size(); ++r) {
      const double d = ps(x, centers[r]);
      if (d < best_d) {
        best_d = d;
        best = r;
      }
    }
    out.cell_of[x] = best;
    out.cells[best].push_back(x);
  }
  return out;
}

}  // namespace rdiv
