#include "chq/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "chq/generator.hpp"
#include "chq/json_io.hpp"
#include "chq/transform.hpp"

namespace chq {

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitInput = 2;
constexpr int kExitInternal = 3;
constexpr int kExitUndetermined = 4;

struct CommonOpts {
  std::string out;
  std::string format = "json";
  std::uint64_t budget = 10'000'000;
  std::uint64_t seed = 0;
  double epsilon = 1e-3;
  double tolerance = kTolLin;
};

void emit(const CommonOpts& opts, const Json& j, const std::string& text) {
  const std::string payload = opts.format == "text" ? text : j.dump(2) + "\n";
  if (opts.out.empty()) {
    std::cout << payload;
  } else {
    std::ofstream f(opts.out);
    if (!f) throw std::invalid_argument("cannot write file: " + opts.out);
    f << payload;
  }
}

ProductModel model_for_prefs(const std::optional<ModelFile>& mf,
                             const PreferenceStructure& prefs) {
  if (mf) return mf->model;
  // infer scale sizes from the alternatives
  if (prefs.alternatives.empty())
    throw std::invalid_argument("preferences list no alternatives");
  const std::size_t n = prefs.alternatives.front().coords.size();
  std::vector<int> dims(n, 0);
  for (const auto& a : prefs.alternatives) {
    if (a.coords.size() != n)
      throw std::invalid_argument("alternatives have mixed arity");
    for (std::size_t i = 0; i < n; ++i)
      dims[i] = std::max(dims[i], a.coords[i] + 1);
  }
  ProductModel m;
  for (std::size_t i = 0; i < n; ++i) {
    CriterionScale s;
    s.name = "c" + std::to_string(i + 1);
    for (int lv = 0; lv < dims[i]; ++lv)
      s.levels.push_back(std::to_string(lv));
    m.scales.push_back(std::move(s));
  }
  return m;
}

std::vector<int> parse_alt(const std::string& text) {
  std::vector<int> coords;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) coords.push_back(std::stoi(tok));
  return coords;
}

int cmd_integrate(const std::string& model_path, const std::string& alt_text,
                  const CommonOpts& opts) {
  const ModelFile mf = model_file_from_json(load_json_file(model_path));
  if (!mf.mobius)
    throw std::invalid_argument("model file carries no capacity");
  if (!mf.model.has_values())
    throw std::invalid_argument("model file carries no value functions");
  const auto coords = parse_alt(alt_text);
  if (static_cast<int>(coords.size()) != mf.model.n())
    throw std::invalid_argument("alternative arity != criterion count");
  std::vector<double> f(mf.model.n());
  for (int i = 0; i < mf.model.n(); ++i) {
    if (coords[i] < 0 || coords[i] >= mf.model.scales[i].size())
      throw std::invalid_argument("alternative level index out of range on "
                                  "criterion " + std::to_string(i + 1));
    f[i] = mf.model.value(i, coords[i]);
  }
  const Capacity cap = capacity_of(*mf.mobius);
  std::vector<int> perm;
  const double by_sorted = choquet_sorted(cap, f, &perm);
  const double by_mobius = choquet_mobius(*mf.mobius, f);
  Json perm_json = Json::array();
  std::string perm_text;
  for (int p : perm) {
    perm_json.push_back(p + 1);
    perm_text += (perm_text.empty() ? "" : " <= ") + std::to_string(p + 1);
  }
  const Json j{{"sorted_form", by_sorted},
               {"mobius_form", by_mobius},
               {"ascending_permutation", perm_json}};
  std::ostringstream text;
  text << "C (sorted form) = " << by_sorted << "\n"
       << "C (mobius form) = " << by_mobius << "\n"
       << "ascending permutation: " << perm_text << "\n";
  emit(opts, j, text.str());
  if (std::abs(by_sorted - by_mobius) > opts.tolerance) {
    std::cerr << "internal inconsistency: integral forms disagree by "
              << std::abs(by_sorted - by_mobius) << "\n";
    return kExitInternal;
  }
  return kExitPass;
}

int cmd_check(const std::string& prefs_path, const std::string& model_path,
              std::vector<std::string> axioms, const CommonOpts& opts) {
  const PreferenceStructure prefs = prefs_from_json(load_json_file(prefs_path));
  std::optional<ModelFile> mf;
  if (!model_path.empty())
    mf = model_file_from_json(load_json_file(model_path));
  const ProductModel model = model_for_prefs(mf, prefs);

  CheckOptions copts;
  copts.budget = opts.budget;
  copts.seed = opts.seed;
  copts.tol = opts.tolerance;
  AxiomContext ctx = make_context(model, prefs, copts);
  if (axioms.empty()) axioms = default_axiom_ids();

  bool any_fail = false, any_undet = false;
  Json out = Json::array();
  std::ostringstream text;
  for (const auto& id : axioms) {
    const AxiomReport rep = run_axiom(ctx, id);
    any_fail |= rep.status == AxiomStatus::kFail;
    any_undet |= rep.status == AxiomStatus::kUndetermined;
    Json jr = report_to_json(rep);
    jr["seed"] = opts.seed;
    out.push_back(std::move(jr));
    text << rep.axiom << ": " << to_string(rep.status) << " (checked "
         << rep.checked << ", violated " << rep.violated << ", coverage "
         << rep.coverage << ")";
    if (!rep.witnesses.empty()) text << " [" << rep.witnesses.front().what << "]";
    text << "\n";
  }
  emit(opts, out, text.str());
  if (any_fail) return kExitFail;
  if (any_undet) return kExitUndetermined;
  return kExitPass;
}

int cmd_partition(const std::string& prefs_path, const std::string& model_path,
                  const CommonOpts& opts) {
  const PreferenceStructure prefs = prefs_from_json(load_json_file(prefs_path));
  std::optional<ModelFile> mf;
  if (!model_path.empty())
    mf = model_file_from_json(load_json_file(model_path));
  const ProductModel model = model_for_prefs(mf, prefs);

  CheckOptions copts;
  copts.budget = opts.budget;
  copts.seed = opts.seed;
  copts.tol = opts.tolerance;
  AxiomContext ctx = make_context(model, prefs, copts);
  AxiomReport a3 = run_axiom(ctx, "A3");
  if (a3.status != AxiomStatus::kPass) {
    Json jr = report_to_json(a3);
    jr["seed"] = opts.seed;
    emit(opts, jr,
         std::string("A3 ") + to_string(a3.status) + "; partition not computed\n");
    return a3.status == AxiomStatus::kFail ? kExitFail : kExitUndetermined;
  }
  ensure_cells(ctx);
  AxiomReport a7 = run_axiom(ctx, "A7");  // fills per-cell essentials note
  (void)a7;
  const auto& cells = *ctx.cells;
  const auto cliques = interaction_cliques_from_prefs(*ctx.table);

  Json jcells = Json::array();
  std::ostringstream text;
  for (const auto& cell : cells) {
    Json order = Json::array();
    const int n = model.n();
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j && !(cell.pattern >> (j * n + i) & 1))
          order.push_back({i + 1, j + 1});  // i S j
    Json essential = Json::array();
    for (int i = 0; i < n; ++i)
      if (cell.essential >> i & 1) essential.push_back(i + 1);
    jcells.push_back({{"id", cell.id},
                      {"strict_order", order},
                      {"size", cell.members.size()},
                      {"essential", essential}});
    text << "cell " << cell.id << ": size " << cell.members.size()
         << ", strict pairs " << order.dump() << ", essential "
         << essential.dump() << "\n";
  }
  Json jcliques = Json::array();
  for (const auto& c : cliques) {
    Json one = Json::array();
    for (int i : c) one.push_back(i + 1);
    jcliques.push_back(std::move(one));
  }
  text << "cliques: " << jcliques.dump() << "\n";
  emit(opts, Json{{"seed", opts.seed}, {"cells", jcells}, {"cliques", jcliques}},
       text.str());
  return kExitPass;
}

int cmd_fit(const std::string& prefs_path, const std::string& values_path,
            const CommonOpts& opts) {
  const PreferenceStructure prefs = prefs_from_json(load_json_file(prefs_path));
  const ModelFile mf = model_file_from_json(load_json_file(values_path));
  if (!mf.model.has_values())
    throw std::invalid_argument("values file carries no value functions");
  FitProblem fp;
  fp.model = mf.model;
  fp.prefs = prefs;
  fp.epsilon = opts.epsilon;
  fp.solver_tol = opts.tolerance;
  const FitResult res = fit_capacity(fp);
  Json j = fit_result_to_json(res);
  j["seed"] = opts.seed;
  std::ostringstream text;
  text << (res.status == FitStatus::kFeasible ? "FEASIBLE" : "INFEASIBLE")
       << ", min slack " << res.min_slack << ", max violation "
       << res.max_violation << "\n";
  emit(opts, j, text.str());
  return res.status == FitStatus::kFeasible ? kExitPass : kExitFail;
}

int cmd_roundtrip(int n, int levels, std::uint64_t seed, int trials,
                  const CommonOpts& opts) {
  CheckOptions copts;
  copts.budget = opts.budget;
  copts.tol = opts.tolerance;
  Json jtrials = Json::array();
  std::ostringstream text;
  int rc = kExitPass;
  for (int t = 0; t < trials; ++t) {
    const std::uint64_t trial_seed = seed + static_cast<std::uint64_t>(t);
    const GeneratedModel gen = random_block_model(n, levels, levels, trial_seed);
    copts.seed = trial_seed;
    const RoundtripReport rep = roundtrip_suite(gen.model, gen.mobius,
                                                trial_seed, copts);
    Json stages = Json::array();
    for (const auto& s : rep.stages)
      stages.push_back({{"stage", s.stage}, {"pass", s.pass}, {"detail", s.detail}});
    jtrials.push_back({{"trial", t}, {"seed", trial_seed}, {"stages", stages},
                       {"pass", rep.all_pass()}});
    text << "trial " << t << " (seed " << trial_seed << "): ";
    if (rep.all_pass()) {
      text << "pass\n";
    } else {
      const auto* f = rep.first_failure();
      text << "FAIL at stage " << f->stage
           << (f->detail.empty() ? "" : " (" + f->detail + ")") << "\n";
      rc = kExitFail;
    }
  }
  emit(opts, Json{{"seed", seed}, {"trials", jtrials}}, text.str());
  return rc;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"Choquet-integral preference models on finite product sets"};
  app.require_subcommand(1);

  CommonOpts opts;
  std::string model_path, prefs_path, values_path, alt_text, axioms_text;
  int n = 3, levels = 3, trials = 20;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--out", opts.out, "output file (default stdout)");
    cmd->add_option("--format", opts.format, "json|text")
        ->check(CLI::IsMember({"json", "text"}));
    cmd->add_option("--budget", opts.budget, "max relation lookups per checker");
    cmd->add_option("--seed", opts.seed, "64-bit seed echoed into reports");
    cmd->add_option("--tolerance", opts.tolerance, "numeric tolerance")
        ->check(CLI::PositiveNumber);
  };

  auto* integrate = app.add_subcommand("integrate",
                                       "evaluate the integral at one alternative");
  integrate->add_option("--model", model_path, "model file (values + capacity)")
      ->required();
  integrate->add_option("alternative", alt_text,
                        "comma-joined level indices, e.g. 0,2,1")
      ->required();
  add_common(integrate);

  auto* check = app.add_subcommand("check", "audit axioms on preference data");
  check->add_option("--prefs", prefs_path, "preference file")->required();
  check->add_option("--model", model_path, "model file (optional)");
  check->add_option("--axioms", axioms_text,
                    "comma-joined ids (default: A1..A9, A3-ACYCL, MONO)");
  add_common(check);

  auto* partition = app.add_subcommand("partition",
                                       "partition cells and interaction cliques");
  partition->add_option("--prefs", prefs_path, "preference file")->required();
  partition->add_option("--model", model_path, "model file (optional)");
  add_common(partition);

  auto* fit = app.add_subcommand("fit", "identify a capacity by LP");
  fit->add_option("--prefs", prefs_path, "preference file")->required();
  fit->add_option("--values", values_path, "model file with value functions")
      ->required();
  fit->add_option("--epsilon", opts.epsilon, "strict-preference margin")
      ->check(CLI::PositiveNumber);
  add_common(fit);

  auto* roundtrip = app.add_subcommand(
      "roundtrip", "generate models and run the full verification chain");
  roundtrip->add_option("--n", n, "criterion count");
  roundtrip->add_option("--levels", levels, "levels per scale");
  roundtrip->add_option("--trials", trials, "number of generated models");
  add_common(roundtrip);
  // the verification chain needs exhaustive checks; keep the default budget
  // large enough for the generated grids unless the user overrides it
  roundtrip->callback([&] {
    if (roundtrip->count("--budget") == 0) opts.budget = 400'000'000;
  });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    std::cout << app.help();
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitInput;
  }

  try {
    if (integrate->parsed()) return cmd_integrate(model_path, alt_text, opts);
    if (check->parsed()) {
      std::vector<std::string> axioms;
      std::stringstream ss(axioms_text);
      std::string tok;
      while (std::getline(ss, tok, ','))
        if (!tok.empty()) axioms.push_back(tok);
      return cmd_check(prefs_path, model_path, axioms, opts);
    }
    if (partition->parsed()) return cmd_partition(prefs_path, model_path, opts);
    if (fit->parsed()) return cmd_fit(prefs_path, values_path, opts);
    if (roundtrip->parsed())
      return cmd_roundtrip(n, levels, opts.seed, trials, opts);
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const Json::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInput;
}

int run_cli(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args);
}

}  // namespace chq
