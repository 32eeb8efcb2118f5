// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "core3_table.hpp"
#include "memsig/bench.hpp"
#include "memsig/commands.hpp"
#include "memsig/fast_bilinear.hpp"
#include "memsig/io.hpp"
#include "memsig/linalg.hpp"
#include "memsig/membrane_sig.hpp"
#include "memsig/path_sig.hpp"
#include "memsig/variety_lab.hpp"
#include "oracles.hpp"
#include "tables.hpp"

using namespace memsig;

namespace {

constexpr std::uint64_t kSeed = 20240611;

struct Outcome {
  bool ok;
  std::string detail;
};

int failures = 0;

void criterion(int id, const std::string& name, double limit_seconds, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome r{false, ""};
  try {
    r = body();
  } catch (const std::exception& e) {
    r = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool in_time = limit_seconds <= 0 || secs < limit_seconds;
  const bool pass = r.ok && in_time;
  if (!pass) ++failures;
  char timing[96];
  if (limit_seconds > 0)
    std::snprintf(timing, sizeof timing, "%.2f s, limit %.0f s", secs, limit_seconds);
  else
    std::snprintf(timing, sizeof timing, "%.2f s", secs);
  std::cout << (pass ? "PASS" : "FAIL") << "  " << id << ". " << name << "  [" << r.detail << "; " << timing << "]"
            << std::endl;
}

std::string count(std::size_t good, std::size_t total) { return std::to_string(good) + "/" + std::to_string(total); }

Json cli_json(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  if (run_cli(args, out, err) != kExitOk) throw Error("memsig " + args[0] + " failed: " + err.str());
  return Json::parse(out.str());
}

bool symmetric_part_rank_one(const Matrix& s) { return rank(s + s.transpose()) <= 1; }

}  // namespace

int main() {
  criterion(1, "moment core (2,2) level 2 reproduces the displayed matrix", 1, [] {
    const Json doc = cli_json({"core", "--kind", "moment", "--m", "2", "--n", "2", "--level", "2"});
    const auto& entries = doc.at("entries");
    std::size_t good = 0;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j)
        if (entries.at(i * 4 + j).get<std::string>() == kMomentCore2[i][j]) ++good;
    return Outcome{good == 16 && entries.size() == 16, count(good, 16) + " entries exact"};
  });

  criterion(2, "moment core (2,2) level 3 reproduces the displayed array", 1, [] {
    const Json doc = cli_json({"core", "--kind", "moment", "--m", "2", "--n", "2", "--level", "3"});
    const SigTensor c3 = tensor_from_json(doc).tensor;
    std::size_t good = 0;
    for (std::size_t a = 0; a < 4; ++a)
      for (std::size_t b = 0; b < 4; ++b)
        for (std::size_t c = 0; c < 4; ++c)
          if (c3.at({a, b, c}) == Rational::parse(moment_core3_entry(a, b, c))) ++good;
    return Outcome{good == 64, count(good, 64) + " entries exact"};
  });

  criterion(3, "closed-form cores equal the symbolic-integration oracle (m,n,k <= 3)", 60, [] {
    std::size_t good = 0, total = 0;
    for (std::size_t m = 1; m <= 3; ++m)
      for (std::size_t n = 1; n <= 3; ++n)
        for (std::size_t k = 0; k <= 3; ++k) {
          const SigTensor mom = core_tensor(CoreKind::moment, m, n, k);
          const SigTensor axis = core_tensor(CoreKind::axis, m, n, k);
          for (std::size_t f = 0; f < mom.size(); ++f) {
            const Word w = mom.word_of(f);
            Word ws, wt;
            for (auto x : w) {
              ws.push_back(x / n);
              wt.push_back(x % n);
            }
            good += mom[f] == oracle::moment_membrane_entry(n, w);
            good += axis[f] == oracle::axis_path_entry(m, ws) * oracle::axis_path_entry(n, wt);
            total += 2;
          }
        }
    return Outcome{good == total, count(good, total) + " entries exact"};
  });

  criterion(4, "sig_tensor_fast equals sig_via_congruence on random rational grids", 120, [] {
    std::mt19937_64 rng(4);
    const std::size_t grids = 60;
    std::size_t good = 0;
    for (std::size_t t = 0; t < grids; ++t) {
      const std::size_t d = 1 + rng() % 3, m = 1 + rng() % 5, n = 1 + rng() % 5, k = 1 + t % 3;
      const GridData g = oracle::random_grid(rng, d, m, n);
      good += sig_tensor_fast(g, k) == sig_via_congruence(MembraneSpec{PiecewiseBilinearMembrane{g}}, k);
    }
    return Outcome{good == grids, count(good, grids) + " grids exact"};
  });

  criterion(5, "fast backend scales linearly in mn; congruence baseline grows faster", 0, [] {
    BenchConfig config;
    config.sizes = {{100, 100}, {200, 200}, {300, 300}, {400, 400}};
    config.d = 2;
    config.level = 2;
    config.repeats = 3;
    config.congruence_max_mn = 200 * 200;
    config.seed = kSeed;
    const std::vector<BenchRow> rows = run_bench(config);
    auto nanos = [&](const std::string& method, std::size_t m) {
      for (const auto& r : rows)
        if (r.method == method && r.m == m) return static_cast<double>(r.nanos);
      throw Error("missing bench row");
    };
    const double exponent = fitted_exponent(rows, "fast").value();
    const double fast_ratio = nanos("fast", 200) / nanos("fast", 100);
    const double cong_ratio = nanos("congruence", 200) / nanos("congruence", 100);
    char detail[160];
    std::snprintf(detail, sizeof detail,
                  "fast exponent %.3f in [0.75, 1.25]; 100->200 ratio fast %.2f, congruence %.2f (need >= %.2f)",
                  exponent, fast_ratio, cong_ratio, 2 * fast_ratio);
    return Outcome{exponent >= 0.75 && exponent <= 1.25 && cong_ratio >= 2 * fast_ratio, detail};
  });

  criterion(6, "dimension tables d = 4, 5, 6; formula for mn <= d; full when m+n >= d+1", 600, [] {
    std::size_t good = 0, total = 0;
    std::string bad;
    const std::vector<std::pair<std::size_t, const DimTable*>> tables{{4, &kDim4}, {5, &kDim5}, {6, &kDim6}};
    for (const auto& [d, table] : tables)
      for (std::size_t m = 1; m <= d; ++m)
        for (std::size_t n = 1; n <= d; ++n) {
          const DimReport r = membrane_dimension(d, m, n, 2, 3, kSeed);
          bool ok = r.measured_dim == table_entry(*table, m, n, d * d);
          if (m * n <= d) ok = ok && r.formula_dim && *r.formula_dim == r.measured_dim;
          if (m >= 2 && n >= 2 && m + n >= d + 1) ok = ok && r.measured_dim == d * d;
          good += ok;
          ++total;
          if (!ok)
            bad += " (" + std::to_string(d) + "," + std::to_string(m) + "," + std::to_string(n) +
                   ")=" + std::to_string(r.measured_dim);
        }
    const bool named = membrane_dimension(4, 2, 2, 2, 3, kSeed).measured_dim == 14 &&
                       membrane_dimension(5, 2, 3, 2, 3, kSeed).measured_dim == 24 &&
                       membrane_dimension(6, 3, 3, 2, 3, kSeed).measured_dim == 34;
    return Outcome{good == total && named,
                   count(good, total) + " entries; M_{4,2,2}, M_{5,2,3}, M_{6,3,3} = 14, 24, 34" +
                       (named ? "" : " MISMATCH") + (bad.empty() ? "" : "; wrong:" + bad)};
  });

  criterion(7, "level-3 dimensions for d = 3", 300, [] {
    const std::size_t d11 = membrane_dimension(3, 1, 1, 3, 3, kSeed).measured_dim;
    const std::size_t d22 = membrane_dimension(3, 2, 2, 3, 3, kSeed).measured_dim;
    const std::size_t d33 = membrane_dimension(3, 3, 3, 3, 3, kSeed).measured_dim;
    return Outcome{d11 == 3 && d22 == 12 && d33 == 27, "(1,1)->" + std::to_string(d11) + ", (2,2)->" +
                                                           std::to_string(d22) + ", (3,3)->" + std::to_string(d33)};
  });

  criterion(8, "normal forms, rank profiles and determinants of the axis core", 30, [] {
    std::size_t good = 0, total = 0;
    for (std::size_t m = 2; m <= 5; ++m)
      for (std::size_t n = 2; n <= 5; ++n) {
        const Matrix c = core_matrix(CoreKind::axis, m, n);
        good += congruence_invariants(c) == normal_form_formula(m, n);
        good += core_rank_profile(c) == expected_rank_profile(m, n);
        total += 2;
      }
    for (std::size_t m = 1; m <= 4; ++m)
      for (std::size_t n = 1; n <= 4; ++n) {
        good += det(core_matrix(CoreKind::axis, m, n)) == Rational(1) / pow(Rational(4), static_cast<unsigned>(m * n));
        ++total;
      }
    return Outcome{good == total, count(good, total) + " checks"};
  });

  criterion(9, "moment and axis cores are congruent for 1 <= m,n <= 4", 30, [] {
    std::size_t good = 0;
    for (std::size_t m = 1; m <= 4; ++m)
      for (std::size_t n = 1; n <= 4; ++n)
        good += congruent_check(core_matrix(CoreKind::moment, m, n), core_matrix(CoreKind::axis, m, n));
    return Outcome{good == 16, count(good, 16) + " pairs"};
  });

  criterion(10, "relations for (2,2,1) and (4,2,2); shuffle rank one for path signatures", 30, [] {
    const RelationReport r221 = relation_checks(2, 2, 1, 100, kSeed);
    const RelationReport r422 = relation_checks(4, 2, 2, 100, kSeed);
    std::mt19937_64 rng(10);
    std::size_t good = 0, total = 0;
    for (std::size_t m = 1; m <= 5; ++m)
      for (auto kind : {CoreKind::moment, CoreKind::axis}) {
        good += symmetric_part_rank_one(path_core_tensor(kind, m, 2).as_matrix());
        ++total;
      }
    for (int t = 0; t < 40; ++t) {
      const std::size_t d = 2 + rng() % 3;
      const Matrix coeffs = oracle::random_matrix(rng, d, 1 + rng() % 4);
      good += symmetric_part_rank_one(path_sig(PathSpec{PolynomialPath{coeffs}}, 2).as_matrix());
      std::vector<std::vector<Rational>> vertices(2 + rng() % 4, std::vector<Rational>(d));
      for (auto& p : vertices)
        for (auto& x : p) x = Rational(static_cast<long>(rng() % 13) - 6, 1 + static_cast<long>(rng() % 3));
      good += symmetric_part_rank_one(pw_linear_path_sig(vertices, 2).as_matrix());
      total += 2;
    }
    return Outcome{r221.has_builtin && r422.has_builtin && r221.passed == 100 && r422.passed == 100 && good == total,
                   "(2,2,1) " + count(r221.passed, r221.samples) + ", (4,2,2) " + count(r422.passed, r422.samples) +
                       ", shuffle " + count(good, total)};
  });

  criterion(11, "degree of M_{6,3,3}", 1, [] {
    const Rational deg = degree_formula(6, 3, 3);
    return Outcome{deg == Rational(18), "degree " + deg.str()};
  });

  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
