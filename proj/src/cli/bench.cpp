#include "memsig/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cctype>
#include <cmath>
#include <iomanip>
#include <random>
#include <sstream>

#include "memsig/fast_bilinear.hpp"
#include "memsig/membrane_sig.hpp"

namespace memsig {

GridData random_bench_grid(std::size_t d, std::size_t m, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> dist(-100, 100);
  return GridData::from_function(d, m, n, [&](std::size_t, std::size_t, std::size_t) { return Rational(dist(rng)); });
}

std::int64_t time_backend(const std::string& method, const GridData& grid, std::size_t level) {
  const auto start = std::chrono::steady_clock::now();
  if (method == "fast") {
    if (level == 2)
      (void)sig_matrix_fast(grid);
    else
      (void)sig_tensor_fast(grid, level);
  } else if (method == "congruence") {
    if (level == 2)
      (void)sig_matrix_congruence_streaming(bilinear_decompose(grid), CoreKind::axis, grid.m(), grid.n());
    else
      (void)sig_via_congruence(MembraneSpec{PiecewiseBilinearMembrane{grid}}, level);
  } else {
    throw ParseError("unknown benchmark method \"" + method + "\"");
  }
  const auto stop = std::chrono::steady_clock::now();
  return std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start).count();
}

std::vector<BenchRow> run_bench(const BenchConfig& config) {
  if (config.repeats == 0) throw DomainError("benchmark needs at least one repeat");
  std::vector<BenchRow> rows;
  for (const auto& size : config.sizes) {
    const GridData grid = random_bench_grid(config.d, size.m, size.n, config.seed);
    for (const auto& method : config.methods) {
      if (method == "congruence" && config.congruence_max_mn && size.m * size.n > *config.congruence_max_mn)
        continue;
      std::vector<std::int64_t> samples;
      for (std::size_t r = 0; r < config.repeats; ++r) samples.push_back(time_backend(method, grid, config.level));
      std::nth_element(samples.begin(), samples.begin() + samples.size() / 2, samples.end());
      rows.push_back({method, size.m, size.n, samples[samples.size() / 2]});
    }
  }
  return rows;
}

std::optional<double> fitted_exponent(const std::vector<BenchRow>& rows, const std::string& method) {
  std::vector<double> xs;
  std::vector<double> ys;
  for (const auto& r : rows)
    if (r.method == method) {
      xs.push_back(std::log(static_cast<double>(r.m * r.n)));
      ys.push_back(std::log(static_cast<double>(std::max<std::int64_t>(r.nanos, 1))));
    }
  if (xs.size() < 2) return std::nullopt;
  const double k = static_cast<double>(xs.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i] / k;
    my += ys[i] / k;
  }
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  if (sxx == 0) return std::nullopt;
  return sxy / sxx;
}

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
  out << "method,m,n,nanos\n";
  std::vector<std::string> methods;
  for (const auto& r : rows) {
    out << r.method << ',' << r.m << ',' << r.n << ',' << r.nanos << '\n';
    if (std::find(methods.begin(), methods.end(), r.method) == methods.end()) methods.push_back(r.method);
  }
  for (const auto& method : methods)
    if (const auto e = fitted_exponent(rows, method))
      out << "# exponent " << method << ' ' << std::fixed << std::setprecision(3) << *e << '\n';
}

std::vector<BenchSize> parse_bench_sizes(const std::string& text) {
  std::vector<BenchSize> sizes;
  std::stringstream in(text);
  std::string item;
  auto number = [&](const std::string& s) -> std::size_t {
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); }))
      throw ParseError("bad benchmark size \"" + item + "\"");
    const std::size_t v = std::stoul(s);
    if (v == 0) throw ParseError("benchmark sizes must be >= 1");
    return v;
  };
  while (std::getline(in, item, ',')) {
    const auto x = item.find('x');
    if (x == std::string::npos) {
      const std::size_t v = number(item);
      sizes.push_back({v, v});
    } else {
      sizes.push_back({number(item.substr(0, x)), number(item.substr(x + 1))});
    }
  }
  if (sizes.empty()) throw ParseError("no benchmark sizes given");
  return sizes;
}

}  // namespace memsig
