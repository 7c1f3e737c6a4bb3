#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

#include "remote_div/metric.hpp"

namespace rdiv {

enum class GenKind { UniformCube, Clusters, Grid, Line };

GenKind parse_gen_kind(std::string_view name);
std::string_view gen_kind_name(GenKind k) noexcept;

// Deterministic Euclidean datasets.
//   uniform_cube  n points uniform in [0,1]^dim
//   clusters      params "c=<count>,sep=<distance>,width=<side>": point i
//                 joins cluster i mod c, centred at (j * sep, 0, ...), and
//                 is uniform in a cube of the given side around it
//   grid          first n points of the integer lattice in dim dimensions,
//                 side ceil(n^(1/dim)), row-major
//   line          params is the comma-separated list of 1-D positions;
//                 n, when nonzero, must match its length
PointSet generate(GenKind kind, std::size_t n, std::size_t dim,
                  std::uint64_t seed, std::string_view params = {});

PointSet uniform_cube(std::size_t n, std::size_t dim, std::uint64_t seed);

}  // namespace rdiv
