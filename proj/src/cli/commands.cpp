#include "memsig/commands.hpp"

#include <cstdlib>
#include <functional>
#include <sstream>

#include <CLI11.hpp>

#include "memsig/bench.hpp"
#include "memsig/fast_bilinear.hpp"
#include "memsig/io.hpp"
#include "memsig/linalg.hpp"
#include "memsig/membrane_sig.hpp"
#include "memsig/variety_lab.hpp"

namespace memsig {

namespace {

constexpr std::uint64_t kDefaultSeed = 20240611;

std::uint64_t seed_from_env() {
  const char* text = std::getenv("MEMSIG_SEED");
  if (text == nullptr || *text == '\0') return kDefaultSeed;
  const std::string s(text);
  if (!std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); }) || s.size() > 19)
    throw ParseError("MEMSIG_SEED must be a nonnegative decimal integer, got \"" + s + "\"");
  return std::stoull(s);
}

void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
  if (out_path.empty())
    out << text;
  else
    write_text_file(out_path, text);
}

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

SigTensor compute_sig(const Json& doc, std::size_t level, std::string method) {
  const bool grid = is_grid_document(doc) || (doc.is_object() && doc.value("type", "") == "bilinear");
  if (method.empty()) method = grid ? "fast" : "congruence";
  const MembraneSpec spec = membrane_from_json(doc);
  if (method == "fast") {
    if (!grid) throw ShapeError("--method fast needs a piecewise bilinear grid input");
    const auto& bilinear = std::get<PiecewiseBilinearMembrane>(spec.node);
    return sig_tensor_fast(bilinear.grid, level);
  }
  if (level == 2) {
    const MembraneDictionary dict = resolve(spec);
    if (dict.kind_s == dict.kind_t)
      return SigTensor::from_matrix(sig_matrix_congruence_streaming(dict.transform, dict.kind_s, dict.m, dict.n));
  }
  return sig_via_congruence(spec, level);
}

Json dim_report_json(const DimReport& r) {
  Json doc{{"d", r.d},
           {"m", r.m},
           {"n", r.n},
           {"level", r.level},
           {"measured_dim", r.measured_dim},
           {"ambient", r.ambient},
           {"trials", r.trials},
           {"agreement", r.agreement}};
  doc["formula_dim"] = r.formula_dim ? Json(*r.formula_dim) : Json(nullptr);
  return doc;
}

Json blocks_json(const CongruenceInvariants& inv) {
  Json out = Json::array();
  for (const auto& b : inv.blocks) out.push_back(b.label());
  return out;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact signatures of paths and membranes, and their signature varieties", "memsig"};
  app.require_subcommand(1);

  // Actions run after parsing; each may throw memsig errors.
  std::function<int()> action;

  std::string input;
  std::string out_path;
  std::string method;
  std::string kind_name = "axis";
  std::size_t level = 2;
  std::size_t m = 1;
  std::size_t n = 1;
  std::size_t d = 2;
  std::size_t trials = 3;
  std::size_t samples = 100;
  bool with_float = false;

  auto* sig = app.add_subcommand("sig", "Signature tensor of a grid or membrane spec file");
  sig->add_option("input", input, "Grid file or membrane spec (JSON)")->required();
  sig->add_option("--level,-k", level, "Signature level")->default_val(2);
  sig->add_option("--method", method, "fast (grids only) or congruence")
      ->check(CLI::IsMember({"fast", "congruence"}));
  sig->add_option("--out,-o", out_path, "Write to this file instead of stdout");
  sig->add_flag("--float", with_float, "Add decimal approximations");
  sig->callback([&] {
    action = [&] {
      const TensorFile file{compute_sig(read_json_file(input), level, method), with_float};
      emit(serialize_tensor(file), out_path, out);
      return kExitOk;
    };
  });

  auto* core = app.add_subcommand("core", "Core tensor of the moment or axis membrane");
  core->add_option("--kind", kind_name, "moment or axis")->required()->check(CLI::IsMember({"moment", "axis"}));
  core->add_option("--m", m, "Order in s")->required()->check(CLI::PositiveNumber);
  core->add_option("--n", n, "Order in t")->required()->check(CLI::PositiveNumber);
  core->add_option("--level,-k", level, "Signature level")->default_val(2);
  core->add_option("--out,-o", out_path, "Write to this file instead of stdout");
  core->add_flag("--float", with_float, "Add decimal approximations");
  core->callback([&] {
    action = [&] {
      const TensorFile file{core_tensor(core_kind_from_string(kind_name), m, n, level), with_float};
      emit(serialize_tensor(file), out_path, out);
      return kExitOk;
    };
  });

  auto* dim = app.add_subcommand("dim", "Dimension of the signature variety M_{d,m,n}");
  dim->add_option("--d", d, "Ambient dimension")->required()->check(CLI::PositiveNumber);
  dim->add_option("--m", m, "Order in s")->required()->check(CLI::PositiveNumber);
  dim->add_option("--n", n, "Order in t")->required()->check(CLI::PositiveNumber);
  dim->add_option("--level,-k", level, "2 or 3")->default_val(2)->check(CLI::IsMember({2, 3}));
  dim->add_option("--trials", trials, "Random points")->default_val(3)->check(CLI::PositiveNumber);
  dim->add_option("--out,-o", out_path, "Write to this file instead of stdout");
  dim->callback([&] {
    action = [&] {
      emit(dump(dim_report_json(membrane_dimension(d, m, n, level, trials, seed_from_env()))), out_path, out);
      return kExitOk;
    };
  });

  auto* invariants = app.add_subcommand("invariants", "Ranks, determinant and congruence blocks of a core matrix");
  invariants->add_option("--kind", kind_name, "moment or axis")->required()->check(CLI::IsMember({"moment", "axis"}));
  invariants->add_option("--m", m, "Order in s")->required()->check(CLI::PositiveNumber);
  invariants->add_option("--n", n, "Order in t")->required()->check(CLI::PositiveNumber);
  invariants->add_option("--out,-o", out_path, "Write to this file instead of stdout");
  invariants->callback([&] {
    action = [&] {
      const Matrix c = core_matrix(core_kind_from_string(kind_name), m, n);
      const RankProfile ranks = core_rank_profile(c);
      Json doc{{"kind", kind_name},
               {"m", m},
               {"n", n},
               {"rank_sym", ranks.rank_sym},
               {"rank_skew", ranks.rank_skew},
               {"det", det(c).str()},
               {"blocks", blocks_json(congruence_invariants(c))}};
      emit(dump(doc), out_path, out);
      return kExitOk;
    };
  });

  auto* relations = app.add_subcommand("check-relations", "Evaluate the known relations on random points");
  relations->add_option("--d", d, "Ambient dimension")->required()->check(CLI::PositiveNumber);
  relations->add_option("--m", m, "Order in s")->required()->check(CLI::PositiveNumber);
  relations->add_option("--n", n, "Order in t")->required()->check(CLI::PositiveNumber);
  relations->add_option("--samples", samples, "Random points")->default_val(100);
  relations->add_option("--out,-o", out_path, "Write to this file instead of stdout");
  relations->callback([&] {
    action = [&] {
      const RelationReport r = relation_checks(d, m, n, samples, seed_from_env());
      Json doc{{"d", d}, {"m", m}, {"n", n}, {"relation", r.description}};
      if (r.has_builtin) {
        doc["samples"] = r.samples;
        doc["passed"] = r.passed;
        doc["status"] = r.ok() ? "pass" : "fail";
        if (r.counterexample) doc["counterexample"] = matrix_to_json(*r.counterexample);
      } else {
        doc["status"] = "no built-in relations";
      }
      emit(dump(doc), out_path, out);
      return r.ok() ? kExitOk : kExitRelation;
    };
  });

  BenchConfig bench_config;
  std::string sizes_text = "100x100,200x200,300x300,400x400";
  std::string methods_text = "fast,congruence";
  std::size_t congruence_max_mn = 0;
  auto* bench = app.add_subcommand("bench", "Time the fast and congruence backends on random grids (CSV)");
  bench->add_option("--sizes", sizes_text, "Comma-separated m x n sizes, e.g. 100x100,200x200")
      ->default_val(sizes_text);
  bench->add_option("--d", bench_config.d, "Ambient dimension")->default_val(2)->check(CLI::PositiveNumber);
  bench->add_option("--level,-k", bench_config.level, "Signature level")->default_val(2);
  bench->add_option("--repeats", bench_config.repeats, "Repeats per size (median)")
      ->default_val(3)
      ->check(CLI::PositiveNumber);
  bench->add_option("--methods", methods_text, "Comma-separated backends")->default_val(methods_text);
  bench->add_option("--congruence-max-mn", congruence_max_mn, "Skip congruence above this m n (0: no limit)");
  bench->add_option("--out,-o", out_path, "Write to this file instead of stdout");
  bench->callback([&] {
    action = [&] {
      bench_config.sizes = parse_bench_sizes(sizes_text);
      bench_config.methods.clear();
      std::stringstream in(methods_text);
      for (std::string item; std::getline(in, item, ',');) {
        if (item != "fast" && item != "congruence") throw ParseError("unknown benchmark method \"" + item + "\"");
        bench_config.methods.push_back(item);
      }
      if (congruence_max_mn > 0) bench_config.congruence_max_mn = congruence_max_mn;
      bench_config.seed = seed_from_env();
      std::ostringstream csv;
      write_bench_csv(csv, run_bench(bench_config));
      emit(csv.str(), out_path, out);
      return kExitOk;
    };
  });

  auto* decompose = app.add_subcommand("decompose", "Coefficient matrix A of a grid in the axis dictionary");
  decompose->add_option("input", input, "Grid file (JSON)")->required();
  decompose->add_option("--out,-o", out_path, "Write to this file instead of stdout");
  decompose->callback([&] {
    action = [&] {
      emit(dump(matrix_to_json(bilinear_decompose(grid_from_json(read_json_file(input))))), out_path, out);
      return kExitOk;
    };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitParse;
  }

  try {
    return action ? action() : kExitOk;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitParse;
  } catch (const ShapeError& e) {
    err << "error: " << e.what() << '\n';
    return kExitShape;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitShape;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace memsig
