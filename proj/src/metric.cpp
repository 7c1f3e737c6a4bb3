#include "remote_div/metric.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "remote_div/error.hpp"
#include "remote_div/rng.hpp"

namespace rdiv {

namespace {

std::string fmt_index_pair(Index i, Index j) {
  return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void check_index(Index i, std::size_t n) {
  if (i >= n) {
    throw PreconditionError("point index " + std::to_string(i) +
                            " out of range for " + std::to_string(n) +
                            " points");
  }
}

// Metric validation of a row-major n*n matrix. Entries inside the
// tolerance are snapped (diagonal to 0, tiny negatives to 0, the lower
// triangle mirrored from the upper).
void validate_metric(std::size_t n, std::vector<double>& m) {
  auto at = [&](Index i, Index j) -> double& { return m[i * n + j]; };
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      if (!std::isfinite(at(i, j))) {
        throw ParseError("distance matrix entry " + fmt_index_pair(i, j) +
                         " is not finite");
      }
    }
  }
  for (Index i = 0; i < n; ++i) {
    if (std::abs(at(i, i)) > kMetricTolerance) {
      throw ParseError("distance matrix diagonal entry " +
                       fmt_index_pair(i, i) + " is " + fmt_double(at(i, i)) +
                       ", expected 0");
    }
    at(i, i) = 0.0;
    for (Index j = i + 1; j < n; ++j) {
      if (std::abs(at(i, j) - at(j, i)) > kMetricTolerance) {
        throw ParseError("distance matrix is not symmetric at " +
                         fmt_index_pair(i, j) + ": " + fmt_double(at(i, j)) +
                         " vs " + fmt_double(at(j, i)));
      }
      if (at(i, j) < -kMetricTolerance) {
        throw ParseError("negative distance at " + fmt_index_pair(i, j) +
                         ": " + fmt_double(at(i, j)));
      }
      at(i, j) = std::max(at(i, j), 0.0);
      at(j, i) = at(i, j);
    }
  }
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      const double dij = at(i, j);
      for (Index l = i + 1; l < n; ++l) {
        if (at(i, l) > dij + at(j, l) + kMetricTolerance) {
          throw ParseError("triangle inequality violated: d" +
                           fmt_index_pair(i, l) + " = " +
                           fmt_double(at(i, l)) + " > d" +
                           fmt_index_pair(i, j) + " + d" +
                           fmt_index_pair(j, l) + " = " +
                           fmt_double(dij + at(j, l)));
        }
      }
    }
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' ||
                        s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() &&
         (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

double parse_decimal(std::string_view field, std::size_t line) {
  field = trim(field);
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), v);
  if (field.empty() || ec != std::errc() ||
      ptr != field.data() + field.size() || !std::isfinite(v)) {
    throw ParseError("line " + std::to_string(line) + ": bad number '" +
                     std::string(field) + "'");
  }
  return v;
}

struct CsvRows {
  std::vector<std::vector<double>> rows;
  std::optional<std::size_t> header_dim;
};

CsvRows read_csv(std::string_view doc) {
  CsvRows out;
  std::size_t line_no = 0;
  while (!doc.empty()) {
    const auto nl = doc.find('\n');
    std::string_view line = doc.substr(0, nl);
    doc = nl == std::string_view::npos ? std::string_view{} : doc.substr(nl + 1);
    ++line_no;
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '#') {
      auto body = trim(line.substr(1));
      if (body.starts_with("dim=")) {
        out.header_dim = static_cast<std::size_t>(
            parse_decimal(body.substr(4), line_no));
      }
      continue;
    }
    std::vector<double> row;
    std::size_t start = 0;
    while (true) {
      const auto comma = line.find(',', start);
      row.push_back(parse_decimal(line.substr(start, comma - start), line_no));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    out.rows.push_back(std::move(row));
  }
  return out;
}

PointSet load_json(std::string_view doc) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(doc);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("points") || !j["points"].is_array()) {
    throw ParseError("JSON point file needs a \"points\" array");
  }
  const auto& pts = j["points"];
  std::size_t dim = 0;
  if (j.contains("dim")) {
    if (!j["dim"].is_number_integer() || j["dim"].get<long long>() <= 0) {
      throw ParseError("\"dim\" must be a positive integer");
    }
    dim = j["dim"].get<std::size_t>();
  } else if (!pts.empty() && pts[0].is_array()) {
    dim = pts[0].size();
  }
  std::vector<double> coords;
  coords.reserve(pts.size() * dim);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto& p = pts[i];
    if (!p.is_array() || p.size() != dim) {
      throw ParseError("point " + std::to_string(i) + " does not have " +
                       std::to_string(dim) + " coordinates");
    }
    for (const auto& c : p) {
      if (!c.is_number()) {
        throw ParseError("point " + std::to_string(i) +
                         " has a non-numeric coordinate");
      }
      coords.push_back(c.get<double>());
    }
  }
  return PointSet::euclidean(dim, std::move(coords));
}

PointSet load_csv(std::string_view doc) {
  auto csv = read_csv(doc);
  if (csv.rows.empty()) throw ParseError("CSV point file has no rows");
  const std::size_t dim = csv.header_dim.value_or(csv.rows.front().size());
  std::vector<double> coords;
  coords.reserve(csv.rows.size() * dim);
  for (std::size_t i = 0; i < csv.rows.size(); ++i) {
    if (csv.rows[i].size() != dim) {
      throw ParseError("row " + std::to_string(i) + " has " +
                       std::to_string(csv.rows[i].size()) +
                       " fields, expected " + std::to_string(dim));
    }
    coords.insert(coords.end(), csv.rows[i].begin(), csv.rows[i].end());
  }
  return PointSet::euclidean(dim, std::move(coords));
}

PointSet load_matrix_csv(std::string_view doc) {
  auto csv = read_csv(doc);
  const std::size_t n = csv.rows.size();
  if (n == 0) throw ParseError("distance matrix has no rows");
  std::vector<double> m;
  m.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    if (csv.rows[i].size() != n) {
      throw ParseError("distance matrix row " + std::to_string(i) + " has " +
                       std::to_string(csv.rows[i].size()) +
                       " entries, expected " + std::to_string(n));
    }
    m.insert(m.end(), csv.rows[i].begin(), csv.rows[i].end());
  }
  return PointSet::from_matrix(n, std::move(m));
}

}  // namespace

// ---------------------------------------------------------------------------

PointSet PointSet::euclidean(std::size_t dim, std::vector<double> coords) {
  if (dim == 0) throw PreconditionError("dimension must be positive");
  if (coords.empty() || coords.size() % dim != 0) {
    throw PreconditionError("coordinate count must be a positive multiple of dim");
  }
  for (double c : coords) {
    if (!std::isfinite(c)) throw ParseError("coordinate is not finite");
  }
  auto s = std::make_shared<Storage>();
  s->kind = Kind::Euclidean;
  s->n = coords.size() / dim;
  s->dim = dim;
  s->data = std::move(coords);
  return PointSet(std::move(s), nullptr);
}

PointSet PointSet::from_matrix(std::size_t n, std::vector<double> entries) {
  if (n == 0) throw PreconditionError("a point set needs at least one point");
  if (entries.size() != n * n) {
    throw PreconditionError("distance matrix must have n*n entries");
  }
  validate_metric(n, entries);
  auto s = std::make_shared<Storage>();
  s->kind = Kind::Matrix;
  s->n = n;
  s->data = std::move(entries);
  return PointSet(std::move(s), nullptr);
}

double PointSet::raw(Index a, Index b) const noexcept {
  const Storage& s = *storage_;
  if (s.kind == Kind::Matrix) return s.data[a * s.n + b];
  if (a == b) return 0.0;
  const double* pa = s.data.data() + a * s.dim;
  const double* pb = s.data.data() + b * s.dim;
  double acc = 0.0;
  for (std::size_t c = 0; c < s.dim; ++c) {
    const double diff = pa[c] - pb[c];
    acc += diff * diff;
  }
  return std::sqrt(acc);
}

double PointSet::distance(Index i, Index j) const {
  check_index(i, size());
  check_index(j, size());
  return (*this)(i, j);
}

std::span<const double> PointSet::coords(Index i) const {
  if (kind() != Kind::Euclidean) {
    throw PreconditionError("coordinates requested from a distance-matrix set");
  }
  check_index(i, size());
  const Index g = global_id(i);
  return {storage_->data.data() + g * storage_->dim, storage_->dim};
}

PointSet PointSet::subset(std::span<const Index> local) const {
  auto map = std::make_shared<IndexList>();
  map->reserve(local.size());
  for (Index i : local) {
    check_index(i, size());
    map->push_back(global_id(i));
  }
  return PointSet(storage_, std::move(map));
}

PointSet PointSet::materialized(double factor) const {
  const std::size_t n = size();
  auto s = std::make_shared<Storage>();
  s->kind = Kind::Matrix;
  s->n = n;
  s->data.assign(n * n, 0.0);
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      const double d = (*this)(i, j) * factor;
      s->data[i * n + j] = d;
      s->data[j * n + i] = d;
    }
  }
  return PointSet(std::move(s), nullptr);
}

PointSet PointSet::dense_for_all_pairs() const {
  if (kind() == Kind::Euclidean && size() >= kDenseThreshold) {
    return materialized();
  }
  return *this;
}

double diameter(const PointSet& ps) {
  double best = 0.0;
  for (Index i = 0; i < ps.size(); ++i) {
    for (Index j = i + 1; j < ps.size(); ++j) best = std::max(best, ps(i, j));
  }
  return best;
}

std::optional<double> min_pairwise_distance(const PointSet& ps) {
  if (ps.size() < 2) return std::nullopt;
  double best = ps(0, 1);
  for (Index i = 0; i < ps.size(); ++i) {
    for (Index j = i + 1; j < ps.size(); ++j) best = std::min(best, ps(i, j));
  }
  return best;
}

// ---------------------------------------------------------------------------

ClampedMetric::ClampedMetric(PointSet base, double floor)
    : base_(std::move(base)), floor_(floor) {
  if (!(floor >= 0.0) || !std::isfinite(floor)) {
    throw PreconditionError("clamp floor must be a nonnegative finite number");
  }
}

double ClampedMetric::distance(Index i, Index j) const {
  check_index(i, size());
  check_index(j, size());
  return (*this)(i, j);
}

PointSet ClampedMetric::to_pointset() const {
  const std::size_t n = size();
  std::vector<double> m(n * n, 0.0);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) m[i * n + j] = (*this)(i, j);
  }
  return PointSet::from_matrix(n, std::move(m));
}

ClampedMetric clamp_metric(const PointSet& ps, double c, std::size_t k) {
  if (!(c > 0.0)) throw PreconditionError("clamp constant c must be positive");
  if (k == 0) throw PreconditionError("k must be at least 1");
  return ClampedMetric(ps, c / static_cast<double>(k));
}

// ---------------------------------------------------------------------------

PointFormat parse_point_format(std::string_view name) {
  if (name == "json") return PointFormat::Json;
  if (name == "csv") return PointFormat::Csv;
  if (name == "matrix-csv") return PointFormat::MatrixCsv;
  throw PreconditionError("unknown point format '" + std::string(name) +
                          "' (expected json, csv or matrix-csv)");
}

std::string_view point_format_name(PointFormat f) noexcept {
  switch (f) {
    case PointFormat::Json: return "json";
    case PointFormat::Csv: return "csv";
    case PointFormat::MatrixCsv: return "matrix-csv";
  }
  return "json";
}

PointFormat guess_point_format(std::string_view path) noexcept {
  if (path.ends_with(".json")) return PointFormat::Json;
  if (path.ends_with(".matrix.csv") || path.ends_with(".dm.csv")) {
    return PointFormat::MatrixCsv;
  }
  return PointFormat::Csv;
}

PointSet load_pointset(std::string_view document, PointFormat format) {
  switch (format) {
    case PointFormat::Json: return load_json(document);
    case PointFormat::Csv: return load_csv(document);
    case PointFormat::MatrixCsv: return load_matrix_csv(document);
  }
  throw PreconditionError("unknown point format");
}

PointSet load_pointset_file(const std::string& path, PointFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_pointset(buf.str(), format);
}

std::string serialize_pointset(const PointSet& ps, PointFormat format) {
  std::string out;
  if (format == PointFormat::MatrixCsv) {
    for (Index i = 0; i < ps.size(); ++i) {
      for (Index j = 0; j < ps.size(); ++j) {
        if (j) out += ',';
        out += fmt_double(ps(i, j));
      }
      out += '\n';
    }
    return out;
  }
  if (ps.kind() != PointSet::Kind::Euclidean) {
    throw PreconditionError(std::string(point_format_name(format)) +
                            " output needs coordinates; use matrix-csv");
  }
  if (format == PointFormat::Csv) {
    out = "# dim=" + std::to_string(ps.dim()) + "\n";
    for (Index i = 0; i < ps.size(); ++i) {
      const auto c = ps.coords(i);
      for (std::size_t d = 0; d < c.size(); ++d) {
        if (d) out += ',';
        out += fmt_double(c[d]);
      }
      out += '\n';
    }
    return out;
  }
  nlohmann::json j;
  j["dim"] = ps.dim();
  auto& pts = j["points"] = nlohmann::json::array();
  for (Index i = 0; i < ps.size(); ++i) {
    const auto c = ps.coords(i);
    pts.push_back(std::vector<double>(c.begin(), c.end()));
  }
  return j.dump() + "\n";
}

// ---------------------------------------------------------------------------

Objective parse_objective(std::string_view name) {
  if (name == "matching") return Objective::RemoteMatching;
  if (name == "pseudoforest") return Objective::RemotePseudoforest;
  throw PreconditionError("unknown objective '" + std::string(name) +
                          "' (expected matching or pseudoforest)");
}

std::string_view objective_name(Objective o) noexcept {
  return o == Objective::RemoteMatching ? "matching" : "pseudoforest";
}

void RunConfig::validate() const {
  if (k == 0) throw PreconditionError("k must be at least 1");
  if (!(epsilon > 0.0 && epsilon <= 1.0)) {
    throw PreconditionError("epsilon must lie in (0, 1]");
  }
  if (repeats == 0) throw PreconditionError("repeats must be at least 1");
  if (threads == 0) throw PreconditionError("threads must be at least 1");
}

Index resolve_gmm_start(const RunConfig& cfg, std::size_t n) {
  if (n == 0) throw PreconditionError("empty point set");
  if (cfg.gmm_start) {
    check_index(*cfg.gmm_start, n);
    return *cfg.gmm_start;
  }
  // Stream id distinct from the trial streams used elsewhere.
  CounterRng rng(cfg.seed, 0xffffffffffffffffULL);
  return static_cast<Index>(rng.below(n));
}

}  // namespace rdiv
