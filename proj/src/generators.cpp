#include "remote_div/generators.hpp"

#include <charconv>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "remote_div/error.hpp"
#include "remote_div/rng.hpp"

namespace rdiv {

namespace {

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  while (true) {
    const auto at = s.find(sep);
    out.push_back(s.substr(0, at));
    if (at == std::string_view::npos) break;
    s.remove_prefix(at + 1);
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

double to_double(std::string_view s) {
  s = trim(s);
  double v = 0.0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || end != s.data() + s.size() || !std::isfinite(v)) {
    throw PreconditionError("bad number '" + std::string(s) + "' in generator params");
  }
  return v;
}

std::map<std::string, double> key_values(std::string_view params) {
  std::map<std::string, double> out;
  if (trim(params).empty()) return out;
  for (auto item : split(params, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) {
      throw PreconditionError("generator param '" + std::string(item) +
                              "' is not key=value");
    }
    out[std::string(trim(item.substr(0, eq)))] = to_double(item.substr(eq + 1));
  }
  return out;
}

}  // namespace

GenKind parse_gen_kind(std::string_view name) {
  if (name == "uniform_cube") return GenKind::UniformCube;
  if (name == "clusters") return GenKind::Clusters;
  if (name == "grid") return GenKind::Grid;
  if (name == "line") return GenKind::Line;
  throw PreconditionError("unknown generator '" + std::string(name) +
                          "' (expected uniform_cube, clusters, grid or line)");
}

std::string_view gen_kind_name(GenKind k) noexcept {
  switch (k) {
    case GenKind::UniformCube: return "uniform_cube";
    case GenKind::Clusters: return "clusters";
    case GenKind::Grid: return "grid";
    case GenKind::Line: return "line";
  }
  return "uniform_cube";
}

PointSet uniform_cube(std::size_t n, std::size_t dim, std::uint64_t seed) {
  if (n == 0 || dim == 0) throw PreconditionError("generator needs n >= 1 and dim >= 1");
  CounterRng rng(seed, 0xc0be);
  std::vector<double> coords(n * dim);
  for (double& x : coords) x = rng.uniform();
  return PointSet::euclidean(dim, std::move(coords));
}

PointSet generate(GenKind kind, std::size_t n, std::size_t dim,
                  std::uint64_t seed, std::string_view params) {
  switch (kind) {
    case GenKind::UniformCube:
      return uniform_cube(n, dim, seed);
    case GenKind::Clusters: {
      if (n == 0 || dim == 0) throw PreconditionError("generator needs n >= 1 and dim >= 1");
      auto kv = key_values(params);
      for (const auto& [key, v] : kv) {
        if (key != "c" && key != "sep" && key != "width") {
          throw PreconditionError("unknown clusters param '" + key + "'");
        }
      }
      const double c = kv.count("c") ? kv["c"] : 2.0;
      const double sep = kv.count("sep") ? kv["sep"] : 100.0;
      const double width = kv.count("width") ? kv["width"] : 1.0;
      if (c < 1 || c != std::floor(c) || sep < 0 || width < 0) {
        throw PreconditionError("clusters needs integer c >= 1, sep >= 0, width >= 0");
      }
      const auto count = static_cast<std::size_t>(c);
      CounterRng rng(seed, 0xc1a5);
      std::vector<double> coords(n * dim);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t a = 0; a < dim; ++a) {
          const double centre = a == 0 ? static_cast<double>(i % count) * sep : 0.0;
          coords[i * dim + a] = centre + (rng.uniform() - 0.5) * width;
        }
      }
      return PointSet::euclidean(dim, std::move(coords));
    }
    case GenKind::Grid: {
      if (n == 0 || dim == 0) throw PreconditionError("generator needs n >= 1 and dim >= 1");
      std::size_t side = 1;
      while (true) {
        std::size_t cap = 1;
        for (std::size_t a = 0; a < dim && cap < n; ++a) cap *= side;
        if (cap >= n) break;
        ++side;
      }
      std::vector<double> coords(n * dim);
      for (std::size_t i = 0; i < n; ++i) {
        std::size_t rest = i;
        for (std::size_t a = dim; a-- > 0;) {
          coords[i * dim + a] = static_cast<double>(rest % side);
          rest /= side;
        }
      }
      return PointSet::euclidean(dim, std::move(coords));
    }
    case GenKind::Line: {
      if (trim(params).empty()) throw PreconditionError("line needs a position list");
      std::vector<double> coords;
      for (auto item : split(params, ',')) coords.push_back(to_double(item));
      if (n != 0 && n != coords.size()) {
        throw PreconditionError("line lists " + std::to_string(coords.size()) +
                                " positions but n = " + std::to_string(n));
      }
      return PointSet::euclidean(1, std::move(coords));
    }
  }
  throw PreconditionError("unknown generator");
}

}  // namespace rdiv
