#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "memsig/grid.hpp"

namespace memsig {

struct BenchSize {
  std::size_t m;
  std::size_t n;
};

struct BenchRow {
  std::string method;  // "fast" or "congruence"
  std::size_t m;
  std::size_t n;
  std::int64_t nanos;  // median over repeats
};

struct BenchConfig {
  std::vector<BenchSize> sizes;
  std::size_t d = 2;
  std::size_t level = 2;
  std::size_t repeats = 3;
  std::vector<std::string> methods{"fast", "congruence"};
  /// Sizes with m n above this are skipped for the congruence backend.
  std::optional<std::size_t> congruence_max_mn;
  std::uint64_t seed = 1;
};

/// Integer grid values uniform in [-100, 100].
GridData random_bench_grid(std::size_t d, std::size_t m, std::size_t n, std::uint64_t seed);

/// Runs one backend once on the grid; returns elapsed monotonic nanoseconds.
std::int64_t time_backend(const std::string& method, const GridData& grid, std::size_t level);

std::vector<BenchRow> run_bench(const BenchConfig& config);

/// Least-squares slope of log(nanos) against log(m n) over the rows of one
/// method; nullopt with fewer than two distinct sizes.
std::optional<double> fitted_exponent(const std::vector<BenchRow>& rows, const std::string& method);

/// "method,m,n,nanos" rows followed by "# exponent <method> <value>" lines.
void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows);

/// Parses "100x100,200x200" (or "100,200" for square sizes).
std::vector<BenchSize> parse_bench_sizes(const std::string& text);

}  // namespace memsig
