#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lossy/cvd_kernel.hpp"
#include "lossy/element_kernel.hpp"
#include "lossy/fvst_kernel.hpp"
#include "lossy/harness.hpp"
#include "lossy/lp.hpp"
#include "lossy/solvers.hpp"

using namespace lossy;

namespace {

struct Globals {
  std::uint64_t seed = 0;
  std::string format = "text";
  std::string out;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

AnyInstance load(const std::string& path) { return parse_any(slurp(path)); }

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << text;
}

// Either the --out file or stdout.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw std::runtime_error("cannot write " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

std::string join(const ElementSet& s) {
  std::string out;
  for (Element e : s) out += (out.empty() ? "" : " ") + std::to_string(e);
  return out;
}

HypergraphInstance hs_view(const AnyInstance& inst, const std::string& problem) {
  if (auto h = std::get_if<HypergraphInstance>(&inst)) return *h;
  if (auto g = std::get_if<Graph>(&inst)) return problem == "cvd" ? cvd_to_hs(*g) : g->as_vertex_cover();
  return fvst_to_hs(std::get<Tournament>(inst));
}

void emit_records(std::ostream& os, const ExperimentResult& res, const std::string& format) {
  if (format == "json") {
    os << Json{{"summary", res.summary}}.dump() << '\n';
    return;
  }
  for (const auto& r : res.records) {
    const Json& body = r.contains("result") ? r["result"] : Json::object();
    os << r["config"]["method"].get<std::string>() << " seed=" << r["config"]["seed"]
       << " success=" << (r["success"].get<bool>() ? "yes" : "no") << " violations=" << r["violations"];
    if (body.contains("branch")) os << " branch=" << body["branch"].get<std::string>();
    if (body.contains("ratio") && body["ratio"].is_string()) os << " ratio=" << body["ratio"].get<std::string>();
    if (r.contains("error")) os << " error=\"" << r["error"].get<std::string>() << '"';
    os << '\n';
  }
  const Json& s = res.summary;
  os << "runs " << s["runs"] << ", successes " << s["successes"] << ", bound violations " << s["bound_violations"]
     << ", max ratio " << (s["max_ratio"].is_string() ? s["max_ratio"].get<std::string>() : "-") << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lossy kernels and kernelization protocols for d-Hitting Set, VC, CVD and FVST"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand
  Globals g;
  app.add_option("--seed", g.seed, "Random seed")->capture_default_str();
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "text"}))->capture_default_str();
  app.add_option("--out", g.out, "Write output to this path instead of stdout");

  // gen
  auto* gen = app.add_subcommand("gen", "Generate an instance");
  std::string gen_kind;
  std::size_t gen_n = 0, gen_m = 0, gen_flips = 0;
  int gen_d = 3;
  std::string gen_p = "1/2";
  std::vector<Element> gen_sizes;
  gen->add_option("--kind", gen_kind)
      ->required()
      ->check(CLI::IsMember({"random_hs", "partition_tight", "random_graph", "random_tournament", "cluster_noise", "perturbed_transitive"}));
  gen->add_option("--n", gen_n, "Elements / vertices");
  gen->add_option("--m", gen_m, "Sets (random_hs)");
  gen->add_option("--d", gen_d, "Set size bound")->capture_default_str();
  gen->add_option("--p", gen_p, "Edge probability (random_graph)")->capture_default_str();
  gen->add_option("--sizes", gen_sizes, "Cluster sizes (cluster_noise)")->delimiter(',');
  gen->add_option("--flips", gen_flips, "Toggled pairs (cluster_noise, perturbed_transitive)");

  // lp
  auto* lp = app.add_subcommand("lp", "Solve the LP relaxation exactly");
  std::string lp_file, problem = "vc";
  lp->add_option("file", lp_file)->required()->check(CLI::ExistingFile);
  lp->add_option("--problem", problem, "Graph reading: vc or cvd")->check(CLI::IsMember({"vc", "cvd"}));

  // kernel
  auto* kernel = app.add_subcommand("kernel", "Reduce an instance and write a lift context");
  kernel->require_subcommand(1);
  kernel->fallthrough();
  std::string k_file, k_context, k_eps = "1/2";
  auto add_kernel = [&](const char* name, const char* desc, bool eps) {
    auto* sc = kernel->add_subcommand(name, desc);
    sc->add_option("file", k_file)->required()->check(CLI::ExistingFile);
    sc->add_option("--context", k_context, "Lift context path (default: <out>.lift.json)");
    if (eps) sc->add_option("--epsilon", k_eps, "Loss parameter in (0,1)")->capture_default_str();
    return sc;
  };
  auto* k_hs = add_kernel("hs", "Element kernel for d-Hitting Set", false);
  auto* k_cvd = add_kernel("cvd", "(1+eps) kernel for Cluster Vertex Deletion", true);
  auto* k_fvst = add_kernel("fvst", "(1+eps) kernel for FVS in tournaments", true);

  // protocol
  auto* proto = app.add_subcommand("protocol", "Run a kernelization protocol");
  std::string p_file, p_kind, p_eps = "1", p_c = "1/5", p_oracle = "exact", p_threshold = "8";
  int p_t = 3;
  std::size_t p_trials = 1, threads = 0;
  bool p_no_opt = false;
  proto->add_option("file", p_file)->required()->check(CLI::ExistingFile);
  proto->add_option("--kind", p_kind)->required()->check(CLI::IsMember({"vc2", "dhs", "rsz"}));
  proto->add_option("--epsilon", p_eps)->capture_default_str();
  proto->add_option("--c", p_c)->capture_default_str();
  proto->add_option("--t", p_t)->capture_default_str();
  proto->add_option("--oracle", p_oracle, "exact | dapprox | adversarial:<beta>")->capture_default_str();
  proto->add_option("--threshold", p_threshold, "Brute-force frac threshold")->capture_default_str();
  proto->add_option("--trials", p_trials, "Trials with seeds seed, seed+1, ...")->capture_default_str();
  proto->add_option("--threads", threads);
  proto->add_flag("--no-opt", p_no_opt, "Skip the exact optimum (no ratios)");

  // solve
  auto* solve = app.add_subcommand("solve", "Solve an instance directly");
  std::string s_file, s_method = "exact";
  solve->add_option("file", s_file)->required()->check(CLI::ExistingFile);
  solve->add_option("--method", s_method)->check(CLI::IsMember({"exact", "dapprox"}))->capture_default_str();
  solve->add_option("--problem", problem, "Graph reading: vc or cvd")->check(CLI::IsMember({"vc", "cvd"}));

  // lift
  auto* lift = app.add_subcommand("lift", "Lift a solution of a reduced instance");
  std::string l_file, l_context, l_solution;
  lift->add_option("file", l_file, "Original instance")->required()->check(CLI::ExistingFile);
  lift->add_option("--context", l_context)->required()->check(CLI::ExistingFile);
  lift->add_option("--solution", l_solution, "Solution of the reduced instance")->required()->check(CLI::ExistingFile);

  // experiment
  auto* exp = app.add_subcommand("experiment", "Run a JSON experiment sweep");
  std::string e_file;
  exp->add_option("spec", e_file)->required()->check(CLI::ExistingFile);
  exp->add_option("--threads", threads);

  CLI11_PARSE(app, argc, argv);

  try {
    Output out(g.out);
    std::ostream& os = out.stream();
    const bool json = g.format == "json";

    if (*gen) {
      Json spec{{"kind", gen_kind}, {"n", gen_n}, {"d", gen_d}};
      if (gen_kind == "random_hs") spec["m"] = gen_m;
      if (gen_kind == "random_graph") spec["p"] = gen_p;
      if (gen_kind == "perturbed_transitive") spec["flips"] = gen_flips;
      if (gen_kind == "cluster_noise") {
        spec["sizes"] = gen_sizes;
        spec["flips"] = gen_flips;
      }
      os << serialize_any(generate(spec, g.seed));
    } else if (*lp) {
      const HypergraphInstance h = hs_view(load(lp_file), problem);
      const RationalAssignment a = solve_primal(h);
      if (json) {
        Json j{{"frac", to_string(a.objective)}, {"support", support(a)}, {"assignment", to_json(a)}};
        os << j.dump(2) << '\n';
      } else {
        os << "frac " << to_string(a.objective) << "\nsupport " << join(support(a)) << '\n';
      }
    } else if (*kernel) {
      const AnyInstance inst = load(k_file);
      AnyInstance reduced;
      Json ctx;
      if (*k_hs) {
        const HypergraphInstance h = hs_view(inst, "vc");
        const auto r = element_reduce(h);
        reduced = r.reduced;
        ctx = lift_context(inst, r);
      } else if (*k_cvd) {
        const auto r = cvd_reduce(std::get<Graph>(inst), parse_rational(k_eps));
        reduced = r.reduced;
        ctx = lift_context(inst, r);
      } else if (*k_fvst) {
        const auto r = fvst_reduce(std::get<Tournament>(inst), parse_rational(k_eps));
        reduced = r.reduced;
        ctx = lift_context(inst, r);
      }
      const std::string ctx_path = !k_context.empty() ? k_context : (g.out.empty() ? "" : g.out + ".lift.json");
      if (!ctx_path.empty()) write_file(ctx_path, ctx.dump(2) + "\n");
      if (json && g.out.empty()) {
        os << ctx.dump(2) << '\n';
      } else {
        os << serialize_any(reduced);
      }
      std::cerr << "reduced instance: " << instance_digest(reduced)
                << (ctx_path.empty() ? "" : ", lift context: " + ctx_path) << '\n';
    } else if (*proto) {
      Json run{{"method", p_kind},
               {"generator", {{"kind", "file"}, {"path", p_file}}},
               {"seeds", {{"from", g.seed}, {"count", p_trials}}},
               {"epsilon", p_eps},
               {"c", p_c},
               {"t", p_t},
               {"threshold", p_threshold},
               {"oracle", p_oracle},
               {"opt", !p_no_opt}};
      const Json spec{{"runs", Json::array({run})}};
      if (json) {
        const auto res = run_experiment(spec, &os, threads);
        emit_records(os, res, "json");
      } else {
        emit_records(os, run_experiment(spec, nullptr, threads), "text");
      }
    } else if (*solve) {
      const HypergraphInstance h = hs_view(load(s_file), problem);
      const Solution s = s_method == "exact" ? exact_hs(h) : d_approx(h);
      if (json) os << Json{{"method", s_method}, {"size", s.size()}, {"solution", s.elements}}.dump() << '\n';
      else os << "c size " << s.size() << '\n' << join(s.elements) << '\n';
    } else if (*lift) {
      const AnyInstance inst = load(l_file);
      const Json ctx = Json::parse(slurp(l_context));
      const Solution s = lift_from_context(inst, ctx, parse_solution(slurp(l_solution)));
      if (json) os << Json{{"size", s.size()}, {"solution", s.elements}}.dump() << '\n';
      else os << "c size " << s.size() << '\n' << join(s.elements) << '\n';
    } else if (*exp) {
      const std::string text = slurp(e_file);
      const Json spec = text.find_first_not_of(" \t\r\n") == std::string::npos ? Json() : Json::parse(text);
      if (json) {
        const auto res = run_experiment(spec, &os, threads);
        emit_records(os, res, "json");
      } else {
        emit_records(os, run_experiment(spec, nullptr, threads), "text");
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
