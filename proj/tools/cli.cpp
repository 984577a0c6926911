#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <iomanip>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "swaplab/embed.hpp"
#include "swaplab/generate.hpp"
#include "swaplab/io.hpp"
#include "swaplab/reduce.hpp"
#include "swaplab/search.hpp"
#include "swaplab/verify.hpp"

namespace swaplab::cli {
namespace {

namespace fs = std::filesystem;

struct Common {
  std::uint64_t guard = kDefaultNodeGuard;
  std::optional<std::uint64_t> seed;
};

struct ReduceArgs {
  std::string in, out, target, c = "3/2";
};

struct SearchArgs {
  std::string instance, init = "random", pivot = "best", trace;
};

struct TgArgs {
  std::string instance, sat, out;
};

struct VerifyArgs {
  std::string in, artifact, target = "all", c = "3/2", report;
  bool exhaustive = false;
  std::uint64_t samples = 0;
  int nmax = 3, mmin = 2, mmax = 0;
  std::int64_t wmax = 3;
  std::uint64_t gamma_samples = 10000;
};

struct EmbedArgs {
  std::string instance, matrix, out;
  double tol = kDefaultEmbedTol;
};

struct BenchArgs {
  std::string out, kind = "mufl", pivot = "best";
  std::uint64_t count = 100;
  int fmax = 8, extra = 4;
};

std::uint64_t require_seed(const Common& common, const char* what) {
  if (!common.seed) throw InvalidArgument(std::string(what) + " needs --seed");
  return *common.seed;
}

Json read_json(const std::string& path) {
  try {
    return Json::parse(read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

std::string render(const ExactInstance& inst, const Solution& s) {
  if (inst.labels().empty()) return s.to_string();
  std::string out;
  for (int p : s) {
    if (!out.empty()) out += ';';
    out += to_string(inst.labels()[static_cast<std::size_t>(p)]);
  }
  return out;
}

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find(sep, start);
    if (end == std::string_view::npos) end = text.size();
    out.emplace_back(text.substr(start, end - start));
    start = end + 1;
  }
  return out;
}

// ---------------------------------------------------------------- reduce

int cmd_reduce(const ReduceArgs& a, std::ostream& out) {
  const SatInstance src = parse_wsat2(read_file(a.in));
  const ProblemKind kind = parse_problem_kind(a.target);
  const auto art = reduce(src, kind, parse_rational(a.c));
  write_file_atomic(a.out, artifact_to_json(art).dump(2) + "\n");
  const auto& k = art.constants;
  out << "kind=" << to_string(kind) << " points=" << art.target.num_points() << '\n';
  out << "W=" << k.literal_weight << '\n';
  if (kind == ProblemKind::Mufl) {
    out << "f=" << to_string(k.opening_cost) << '\n';
  } else {
    out << "K=" << k.k << '\n';
    out << "epsilon=" << to_string(k.epsilon) << '\n';
    out << "c=" << to_string(k.c) << '\n';
  }
  out << "wrote " << a.out << '\n';
  return kOk;
}

// ---------------------------------------------------------------- search

Solution initial_solution(const ExactInstance& inst, const std::optional<ReductionArtifact>& art,
                          const std::string& init_text, const Common& common) {
  if (init_text == "random") {
    std::mt19937_64 rng(require_seed(common, "--init random"));
    return SwapProblem<Rational>(inst).random_solution(rng);
  }
  if (init_text.rfind("lift:", 0) == 0) {
    if (!art) throw InvalidArgument("--init lift needs an instance with a reduction block");
    return lift_assignment(*art, Assignment::parse(init_text.substr(5)));
  }
  if (init_text.rfind("indices:", 0) == 0) {
    std::vector<int> open;
    for (const auto& tok : split(std::string_view(init_text).substr(8), ',')) open.push_back(resolve_point(inst, tok));
    std::sort(open.begin(), open.end());
    if (std::adjacent_find(open.begin(), open.end()) != open.end()) throw Infeasible("--init lists a point twice");
    return Solution(std::move(open));
  }
  throw InvalidArgument("--init must be lift:<bits>, indices:<list> or random");
}

int cmd_search(const SearchArgs& a, const Common& common, std::ostream& out) {
  const Json doc = read_json(a.instance);
  std::optional<ReductionArtifact> art;
  if (has_reduction_block(doc)) art = artifact_from_json(doc);
  const ExactInstance inst = art ? art->target : instance_from_json(doc);
  const Solution init = initial_solution(inst, art, a.init, common);
  const SwapProblem<Rational> problem(inst);
  const auto trace = local_search(problem, init, parse_pivot_rule(a.pivot));
  if (!a.trace.empty()) {
    std::ostringstream csv;
    write_trace_csv(csv, trace);
    write_file_atomic(a.trace, csv.str());
  }
  out << "initial=" << render(inst, init) << " cost=" << to_string(trace.initial_cost) << '\n';
  out << "steps=" << trace.steps.size() << '\n';
  out << "final=" << render(inst, trace.final_solution()) << '\n';
  out << "final_cost=" << to_string(trace.final_cost()) << '\n';
  if (art) out << "psi=" << map_solution_back(*art, trace.final_solution()).to_string() << '\n';
  return kOk;
}

// ---------------------------------------------------------------- tg

template <typename P>
int report_graph(const P& problem, const std::string& path, const Common& common, std::ostream& out,
                 const std::function<std::string(const typename P::SolutionType&)>& describe) {
  const auto tg = build_transition_graph(problem, common.guard);
  if (!path.empty()) {
    std::ostringstream csv;
    write_edge_list_csv(csv, tg);
    write_file_atomic(path, csv.str());
  }
  const auto sinks = tg.sinks();
  out << "nodes=" << tg.size() << " arcs=" << tg.arcs.size() << " local_optima=" << sinks.size()
      << " acyclic=" << (topological_order(tg) ? "yes" : "no") << '\n';
  for (std::size_t i : sinks) {
    out << "optimum " << solution_key(tg.nodes[i]) << " cost=" << format_scalar(tg.costs[i]) << describe(tg.nodes[i])
        << '\n';
  }
  return kOk;
}

int cmd_tg(const TgArgs& a, const Common& common, std::ostream& out) {
  if (a.instance.empty() == a.sat.empty()) throw InvalidArgument("tg needs exactly one of --instance or --sat");
  if (!a.sat.empty()) {
    const SatInstance src = parse_wsat2(read_file(a.sat));
    return report_graph(FlipProblem(src), a.out, common, out, [](const Assignment&) { return std::string(); });
  }
  const Json doc = read_json(a.instance);
  std::optional<ReductionArtifact> art;
  if (has_reduction_block(doc)) art = artifact_from_json(doc);
  const ExactInstance inst = art ? art->target : instance_from_json(doc);
  return report_graph(SwapProblem<Rational>(inst), a.out, common, out, [&](const Solution& s) {
    std::string text = " labels=" + render(inst, s);
    if (art) text += " psi=" + map_solution_back(*art, s).to_string();
    return text;
  });
}

// ---------------------------------------------------------------- verify

std::vector<ProblemKind> targets_for(const std::string& target, SatMode mode) {
  if (target == "all") {
    if (mode == SatMode::Standard) return {ProblemKind::Mufl, ProblemKind::Dkm};
    return {ProblemKind::Dfkm};
  }
  return {parse_problem_kind(target)};
}

int finish_verify(const VerifyArgs& a, Json doc, bool passed, std::ostream& out) {
  doc["passed"] = passed;
  if (a.report.empty()) {
    out << doc.dump(2) << '\n';
  } else {
    write_file_atomic(a.report, doc.dump(2) + "\n");
    for (const auto& r : doc["reports"]) {
      out << r["instance"].get<std::string>() << ": " << (r["passed"].get<bool>() ? "pass" : "fail") << '\n';
      for (const auto& c : r["checks"]) {
        if (c["status"] != "pass") {
          out << "  " << c["name"].get<std::string>() << ": " << c["status"].get<std::string>() << " ("
              << c["detail"].get<std::string>() << ")\n";
        }
      }
    }
    if (doc.contains("gamma")) out << "gamma_positivity: " << doc["gamma"]["status"].get<std::string>() << '\n';
    out << (passed ? "PASS" : "FAIL") << '\n';
  }
  return passed ? kOk : kVerificationFailed;
}

int cmd_verify(const VerifyArgs& a, const Common& common, std::ostream& out) {
  const int sources = !a.in.empty() + !a.artifact.empty() + (a.samples > 0);
  if (sources != 1) throw InvalidArgument("verify needs exactly one of --in, --artifact or --samples");
  VerifyOptions opts;
  opts.guard = common.guard;
  opts.skip_over_guard = !a.exhaustive;
  opts.seed = common.seed.value_or(1);
  const Rational c = parse_rational(a.c);

  Json doc;
  Json reports = Json::array();
  bool passed = true;
  auto add = [&](const VerificationReport& r) {
    passed = passed && r.passed();
    reports.push_back(r.to_json());
  };

  if (!a.artifact.empty()) {
    const Json inst_doc = read_json(a.artifact);
    const std::string id = fs::path(a.artifact).filename().string();
    if (has_reduction_block(inst_doc)) {
      add(verify_artifact(artifact_from_json(inst_doc), opts, id));
    } else {
      VerificationReport r{id, {check_local_optima_reasonable(instance_from_json(inst_doc), opts)}};
      add(r);
    }
    doc["reports"] = std::move(reports);
    return finish_verify(a, std::move(doc), passed, out);
  }

  std::vector<std::pair<std::string, SatInstance>> sats;
  if (!a.in.empty()) {
    sats.emplace_back(fs::path(a.in).filename().string(), parse_wsat2(read_file(a.in)));
  } else {
    const std::uint64_t seed = require_seed(common, "verify --samples");
    const int mmax = a.mmax > 0 ? a.mmax : a.nmax;
    if (a.nmax < 2 || a.mmin < 1 || mmax < a.mmin) throw InvalidArgument("need --nmax >= 2 and 1 <= --mmin <= --mmax");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick_n(2, a.nmax);
    std::uniform_int_distribution<int> pick_m(a.mmin, mmax);
    const std::vector<SatMode> modes = a.target == "all" ? std::vector<SatMode>{SatMode::Standard, SatMode::Nae}
                                       : parse_problem_kind(a.target) == ProblemKind::Dfkm
                                           ? std::vector<SatMode>{SatMode::Nae}
                                           : std::vector<SatMode>{SatMode::Standard};
    for (std::uint64_t i = 0; i < a.samples; ++i) {
      for (SatMode mode : modes) {
        const int n = pick_n(rng);
        const int m = pick_m(rng);
        sats.emplace_back("rand-" + std::to_string(i) + (mode == SatMode::Nae ? "-nae" : "-std"),
                          random_sat_instance(rng, n, m, a.wmax, mode));
      }
    }
  }

  int n_hi = 2, m_hi = 1;
  bool any_dfkm = false;
  for (const auto& [id, src] : sats) {
    for (ProblemKind kind : targets_for(a.target, src.mode())) {
      const auto art = reduce(src, kind, c);
      add(verify_artifact(art, opts, id + ":" + to_string(kind)));
      if (kind == ProblemKind::Dfkm) {
        any_dfkm = true;
        n_hi = std::max(n_hi, src.num_vars());
        m_hi = std::max(m_hi, 2 * src.num_clauses());
      }
    }
  }
  doc["reports"] = std::move(reports);
  if (any_dfkm && a.gamma_samples > 0) {
    const auto g = check_gamma_positivity(2, n_hi, 1, m_hi, a.gamma_samples, opts.seed);
    passed = passed && g.passed();
    doc["gamma"] = g.to_json();
  }
  return finish_verify(a, std::move(doc), passed, out);
}

// ---------------------------------------------------------------- embed

int cmd_embed(const EmbedArgs& a, std::ostream& out) {
  if (a.instance.empty() == a.matrix.empty()) throw InvalidArgument("embed needs exactly one of --instance or --matrix");
  Eigen::MatrixXd m;
  if (!a.instance.empty()) {
    const ExactInstance inst = instance_from_json(read_json(a.instance));
    if (inst.kind() == ProblemKind::Mufl) throw InvalidArgument("embed applies to DKM/DFKM instances");
    m = inst.dist().unaryExpr([](const Rational& v) { return to_double(v); });
  } else {
    std::istringstream in(read_file(a.matrix));
    m = read_matrix_csv(in);
  }
  const auto s = schoenberg_check(m, a.tol);
  out << "schoenberg=" << (s.embeddable ? "pass" : "fail") << " min_eigenvalue=" << format_double(s.min_eigenvalue)
      << '\n';
  if (!s.embeddable) {
    // Eigenvector entries carry rounding noise; 12 significant digits keep exact witnesses readable.
    const auto brief = [](double v) {
      std::ostringstream ss;
      ss << std::setprecision(12) << (std::abs(v) < 1e-12 ? 0.0 : v);
      return ss.str();
    };
    out << "witness=";
    for (Eigen::Index i = 0; i < s.witness.size(); ++i) out << (i ? "," : "") << brief(s.witness(i));
    out << "\nuTMu=" << brief(s.witness_form) << '\n';
    return kVerificationFailed;
  }
  const auto e = classical_mds(m, a.tol);
  if (!a.out.empty()) {
    std::ostringstream csv;
    write_points_csv(csv, e.points);
    write_file_atomic(a.out, csv.str());
  }
  out << "points=" << e.points.rows() << " dimension=" << e.points.cols() << '\n';
  out << "max_abs_error=" << format_double(e.max_abs_error) << '\n';
  return kOk;
}

// ---------------------------------------------------------------- bench

int cmd_bench(const BenchArgs& a, const Common& common, std::ostream& out, std::ostream& err) {
  std::mt19937_64 rng(require_seed(common, "bench"));
  const PivotRule pivot = parse_pivot_rule(a.pivot);
  const ProblemKind kind = parse_problem_kind(a.kind);
  if (kind == ProblemKind::Dfkm) throw InvalidArgument("bench supports mufl and dkm");
  if (a.fmax < 2 || a.extra < 0) throw InvalidArgument("need --fmax >= 2 and --extra >= 0");
  // Arya et al. (MUFL) and Kanungo et al. single-swap (DKM) approximation factors.
  const double bound = kind == ProblemKind::Mufl ? 3.0 : 25.0;
  std::ostringstream csv;
  csv << "id,steps,final,opt,ratio\n";
  double worst = 0.0;
  std::uint64_t exceed = 0;
  for (std::uint64_t i = 0; i < a.count; ++i) {
    std::uniform_int_distribution<int> pick_f(2, a.fmax);
    std::uniform_int_distribution<int> pick_extra(0, a.extra);
    const int f = pick_f(rng);
    const int n = f + pick_extra(rng);
    const FloatInstance inst = kind == ProblemKind::Mufl ? random_metric_mufl(rng, f, n)
                                                         : random_euclidean_dkm(rng, n, std::max(1, f / 2));
    const SwapProblem<double> problem(inst);
    double opt = 0.0;
    bool first = true;
    for (const auto& s : problem.enumerate_solutions(common.guard)) {
      const double v = problem.cost(s);
      if (first || v < opt) opt = v;
      first = false;
    }
    const auto trace = local_search(problem, problem.random_solution(rng), pivot);
    const double ratio = opt > 0.0 ? trace.final_cost() / opt : 1.0;
    worst = std::max(worst, ratio);
    if (ratio > bound) {
      ++exceed;
      err << "FINDING: instance " << i << " ratio " << format_double(ratio) << " exceeds " << format_double(bound)
          << '\n';
    }
    csv << i << ',' << trace.steps.size() << ',' << format_double(trace.final_cost()) << ',' << format_double(opt)
        << ',' << format_double(ratio) << '\n';
  }
  if (!a.out.empty()) write_file_atomic(a.out, csv.str());
  out << "instances=" << a.count << " max_ratio=" << format_double(worst) << " exceedances=" << exceed << '\n';
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Local-search reductions between weighted Max-2-SAT and facility location / K-means", "swaplab"};
  app.require_subcommand(1);
  Common common;
  auto add_common = [&](CLI::App* sub, bool seeded) {
    sub->add_option("--guard", common.guard, "Maximum number of enumerated solutions")->check(CLI::PositiveNumber);
    if (seeded) sub->add_option("--seed", common.seed, "Random seed");
  };

  ReduceArgs ra;
  auto* reduce_cmd = app.add_subcommand("reduce", "Reduce a wsat2 formula to MUFL, DKM or DFKM");
  reduce_cmd->add_option("--in", ra.in, "wsat2 input")->required();
  reduce_cmd->add_option("--target", ra.target, "mufl | dkm | dfkm")->required();
  reduce_cmd->add_option("--c", ra.c, "Gadget constant in (1,2) as p/q");
  reduce_cmd->add_option("--out", ra.out, "Instance JSON output")->required();

  SearchArgs sa;
  auto* search_cmd = app.add_subcommand("search", "Run single-swap local search");
  search_cmd->add_option("--instance", sa.instance, "Instance JSON")->required();
  search_cmd->add_option("--init", sa.init, "lift:<bits> | indices:<list> | random");
  search_cmd->add_option("--pivot", sa.pivot, "best | first");
  search_cmd->add_option("--trace", sa.trace, "Trace CSV output");
  add_common(search_cmd, true);

  TgArgs ta;
  auto* tg_cmd = app.add_subcommand("tg", "Enumerate the transition graph");
  tg_cmd->add_option("--instance", ta.instance, "Instance JSON");
  tg_cmd->add_option("--sat", ta.sat, "wsat2 formula (Flip neighborhood)");
  tg_cmd->add_option("--out", ta.out, "Edge-list CSV output");
  add_common(tg_cmd, false);

  VerifyArgs va;
  auto* verify_cmd = app.add_subcommand("verify", "Check the reduction lemmas by enumeration");
  verify_cmd->add_option("--in", va.in, "wsat2 input");
  verify_cmd->add_option("--artifact", va.artifact, "Instance JSON with a reduction block");
  verify_cmd->add_option("--target", va.target, "mufl | dkm | dfkm | all");
  verify_cmd->add_option("--c", va.c, "Gadget constant in (1,2) as p/q");
  verify_cmd->add_flag("--exhaustive", va.exhaustive, "Treat an exceeded guard as an error instead of a skip");
  verify_cmd->add_option("--samples", va.samples, "Number of random formulas");
  verify_cmd->add_option("--nmax", va.nmax, "Largest variable count for random formulas");
  verify_cmd->add_option("--mmin", va.mmin, "Smallest clause count for random formulas");
  verify_cmd->add_option("--mmax", va.mmax, "Largest clause count (default: --nmax)");
  verify_cmd->add_option("--wmax", va.wmax, "Largest clause weight")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--gamma-samples", va.gamma_samples, "Samples for the gamma gap check");
  verify_cmd->add_option("--report", va.report, "Report JSON output (otherwise printed)");
  add_common(verify_cmd, true);

  EmbedArgs ea;
  auto* embed_cmd = app.add_subcommand("embed", "Embed a squared-distance matrix in Euclidean space");
  embed_cmd->add_option("--instance", ea.instance, "DKM/DFKM instance JSON");
  embed_cmd->add_option("--matrix", ea.matrix, "Matrix CSV");
  embed_cmd->add_option("--out", ea.out, "Points CSV output");
  embed_cmd->add_option("--tol", ea.tol, "Eigenvalue tolerance");

  BenchArgs ba;
  auto* bench_cmd = app.add_subcommand("bench", "Compare local optima against exhaustive optima");
  bench_cmd->add_option("--count", ba.count, "Number of instances");
  bench_cmd->add_option("--kind", ba.kind, "mufl | dkm");
  bench_cmd->add_option("--fmax", ba.fmax, "Largest facility count");
  bench_cmd->add_option("--extra", ba.extra, "Largest number of client-only points");
  bench_cmd->add_option("--pivot", ba.pivot, "best | first");
  bench_cmd->add_option("--out", ba.out, "CSV output");
  add_common(bench_cmd, true);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsage;
  }

  try {
    if (reduce_cmd->parsed()) return cmd_reduce(ra, out);
    if (search_cmd->parsed()) return cmd_search(sa, common, out);
    if (tg_cmd->parsed()) return cmd_tg(ta, common, out);
    if (verify_cmd->parsed()) return cmd_verify(va, common, out);
    if (embed_cmd->parsed()) return cmd_embed(ea, out);
    if (bench_cmd->parsed()) return cmd_bench(ba, common, out, err);
  } catch (const GuardExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kGuardExceeded;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace swaplab::cli
