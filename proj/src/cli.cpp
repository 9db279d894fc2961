#include <virasym/cli.hpp>
#include <virasym/serialize.hpp>
#include <virasym/solver.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <ostream>
#include <sstream>

namespace virasym::cli {

namespace {

// Writes the JSON report to the configured file, or to `out` when no file is given and
// no summary was requested.
bool emit(const RunConfig& cfg, const Json& report, const std::string& summary, std::ostream& out,
          std::ostream& err) {
  const std::string text = report.dump(2) + "\n";
  if (!cfg.output.empty()) {
    std::ofstream f(cfg.output, std::ios::binary);
    if (!f || !(f << text)) {
      err << "error: cannot write report to " << cfg.output << "\n";
      return false;
    }
  } else if (!cfg.summary) {
    out << text;
  }
  if (cfg.summary) out << summary;
  return true;
}

std::string args_text(const std::vector<BasisSymbol>& args) {
  std::string s = "(";
  for (std::size_t i = 0; i < args.size(); ++i) s += (i ? ", " : "") + to_string(args[i]);
  return s + ")";
}

void describe_failures(const VerificationResult& r, std::ostream& s) {
  s << "failures: " << r.failure_count << " of " << r.checked << " checked\n";
  for (const auto& f : r.failures)
    s << "  " << f.identity << " at " << args_text(f.args) << ": " << to_string(f.residual) << "\n";
}

std::string classify_summary(const ClassificationReport& r) {
  std::ostringstream s;
  s << "algebra: " << algebra_name(r.algebra) << "\n"
    << "problem: " << problem_name(r.problem) << "\n"
    << "window N=" << r.radius << ", value radius M=" << r.value_radius << ", core K=" << r.core << "\n"
    << "raw dimension: " << r.raw_dimension << "\n"
    << "core dimension: " << r.core_dimension << "\n";
  if (r.quotient_dimension) {
    s << (r.problem == Problem::Derivation ? "dimension modulo inner derivations: "
                                           : "dimension modulo c-valued maps: ")
      << *r.quotient_dimension << "\n";
  }
  for (std::size_t i = 0; i < r.parameters.size(); ++i) {
    s << "basis " << i << ": lambda = " << to_display_string(r.parameters[i].lambda)
      << ", mu = " << to_display_string(r.parameters[i].mu) << "\n";
  }
  if (r.residuals_pass()) {
    s << "residual check: pass\n";
  } else {
    s << "residual check: FAIL\n";
    describe_failures(*r.residual_failure, s);
  }
  return s.str();
}

AlgebraSpec algebra_of(const RunConfig& cfg) {
  if (cfg.algebra.empty()) throw ParseError("--algebra is required");
  return parse_algebra(cfg.algebra);
}

} // namespace

int cmd_classify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  ClassificationReport rep;
  try {
    const AlgebraSpec a = algebra_of(cfg);
    if (cfg.problem.empty()) throw ParseError("--problem is required");
    const Problem p = parse_problem(cfg.problem);
    const std::int64_t n = cfg.window.value_or(5);
    const std::int64_t m = cfg.value_radius.value_or(2 * n);
    const std::int64_t k = cfg.core.value_or(2);
    if (cfg.verbosity > 0) err << "classify: " << problem_name(p) << " on " << algebra_name(a) << "\n";
    rep = classify(p, a, n, m, k, SolverOptions{cfg.threads});
  } catch (const NotInClassifiedFamily& e) {
    err << "error [classification]: " << e.what() << "\n";
    return kNotClassified;
  } catch (const Error& e) {
    err << "error [setup]: " << e.what() << "\n";
    return kUsage;
  }
  if (!emit(cfg, to_json(rep, cfg.timings), classify_summary(rep), out, err)) return kUsage;
  return rep.residuals_pass() ? kOk : kNotClassified;
}

int cmd_verify_map(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  AnyMap map = zero_bilinear(virasoro(), 0);
  try {
    if (cfg.input.empty()) throw ParseError("--input is required");
    map = load_map_file(cfg.input);
  } catch (const Error& e) {
    err << "error [parse]: " << e.what() << "\n";
    return kUsage;
  }

  const bool bilinear = std::holds_alternative<BilinearMapWindow>(map);
  const AlgebraSpec a = bilinear ? std::get<BilinearMapWindow>(map).algebra() : std::get<LinearMapWindow>(map).algebra();
  const std::int64_t n = bilinear ? std::get<BilinearMapWindow>(map).radius() : std::get<LinearMapWindow>(map).radius();
  std::string problem = cfg.problem.empty() ? (bilinear ? "biderivation" : "derivation") : cfg.problem;

  try {
    if (!cfg.algebra.empty() && parse_algebra(cfg.algebra) != a)
      throw ParseError("map file algebra " + algebra_name(a) + " does not match --algebra " + cfg.algebra);
    if (cfg.window && *cfg.window != n)
      throw ParseError("map file window " + std::to_string(n) + " does not match --window " +
                       std::to_string(*cfg.window));
    const bool wants_bilinear = problem == "biderivation" || problem == "symmetric-biderivation" || problem == "postlie";
    const bool wants_linear = problem == "derivation" || problem == "commuting";
    if (!wants_bilinear && !wants_linear) throw ParseError("unknown problem '" + problem + "'");
    if (wants_bilinear != bilinear)
      throw ParseError("problem " + problem + " needs a " + (wants_bilinear ? "bilinear" : "linear") + " map");
  } catch (const Error& e) {
    err << "error [parse]: " << e.what() << "\n";
    return kUsage;
  }

  VerificationResult r;
  try {
    if (problem == "biderivation") r = verify_biderivation(std::get<BilinearMapWindow>(map));
    if (problem == "symmetric-biderivation") r = verify_symmetric_biderivation(std::get<BilinearMapWindow>(map));
    if (problem == "postlie") r = verify_postlie(std::get<BilinearMapWindow>(map));
    if (problem == "derivation") r = verify_derivation(std::get<LinearMapWindow>(map));
    if (problem == "commuting") r = verify_commuting(std::get<LinearMapWindow>(map));
  } catch (const Error& e) {
    err << "error [verify]: " << e.what() << "\n";
    return kUsage;
  }

  Json j;
  j["algebra"] = algebra_name(a);
  j["problem"] = problem;
  j["window"] = n;
  j["kind"] = bilinear ? "bilinear" : "linear";
  j["result"] = r.passed() ? "pass" : "fail";
  const Json details = to_json(r);
  for (const auto& [k, v] : details.items()) j[k] = v;

  std::ostringstream s;
  s << "verify " << problem << " on " << algebra_name(a) << " window " << n << ": "
    << (r.passed() ? "pass" : "FAIL") << " (" << r.checked << " identities checked)\n";
  if (!r.passed()) describe_failures(r, s);
  if (!emit(cfg, j, s.str(), out, err)) return kUsage;
  return r.passed() ? kOk : kNotClassified;
}

int cmd_center(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  Json j;
  std::ostringstream s;
  try {
    const AlgebraSpec a = algebra_of(cfg);
    const std::int64_t n = cfg.window.value_or(5);
    const std::int64_t k = cfg.core.value_or(n - 2);
    if (k < 0 || k > n) throw InvalidCore("core radius must lie in [0, window]");
    const auto raw = center_basis(a, n);
    const auto core = project_elements_to_core(raw, k);
    j["algebra"] = algebra_name(a);
    j["problem"] = "center";
    j["N"] = n;
    j["K"] = k;
    j["raw_dimension"] = raw.size();
    j["core_dimension"] = core.size();
    Json rb = Json::array();
    for (const auto& x : raw) rb.push_back(to_json(x));
    Json cb = Json::array();
    for (const auto& x : core) cb.push_back(to_json(x));
    j["raw_basis"] = std::move(rb);
    j["core_basis"] = std::move(cb);
    s << "center of " << algebra_name(a) << " on window " << n << ", core " << k << ": ";
    if (core.empty()) s << "{}";
    for (std::size_t i = 0; i < core.size(); ++i) s << (i ? ", " : "{") << to_string(core[i]) << (i + 1 == core.size() ? "}" : "");
    s << "\n";
  } catch (const Error& e) {
    err << "error [center]: " << e.what() << "\n";
    return kUsage;
  }
  return emit(cfg, j, s.str(), out, err) ? kOk : kUsage;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact classification of biderivations, derivations and commuting maps on Virasoro and W(2,2)"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--algebra", cfg.algebra, "vir | witt | w22 | w22-centerless");
    sub->add_option("--window", cfg.window, "window radius N");
    sub->add_option("--output", cfg.output, "write the JSON report here");
    sub->add_flag("--summary", cfg.summary, "print a human-readable summary");
    sub->add_flag("!--no-timings", cfg.timings, "omit timings from the report");
    sub->add_flag("-v,--verbose", cfg.verbosity, "progress messages on stderr");
  };

  auto* classify_cmd = app.add_subcommand("classify", "solve an identity on a window and classify the core");
  add_common(classify_cmd);
  classify_cmd->add_option("--problem", cfg.problem, "biderivation | derivation | commuting | symmetric-biderivation");
  classify_cmd->add_option("--value-radius", cfg.value_radius, "value support radius M (default 2N)");
  classify_cmd->add_option("--core", cfg.core, "core radius K (default 2)");
  classify_cmd->add_option("--threads", cfg.threads, "solver worker threads");

  auto* verify_cmd = app.add_subcommand("verify-map", "check a map file against an identity");
  add_common(verify_cmd);
  verify_cmd->add_option("--problem", cfg.problem,
                         "biderivation | symmetric-biderivation | postlie | derivation | commuting");
  verify_cmd->add_option("--input", cfg.input, "map file (JSON)")->required();

  auto* center_cmd = app.add_subcommand("center", "center of the window and its core projection");
  add_common(center_cmd);
  center_cmd->add_option("--core", cfg.core, "core radius K (default N - 2)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kOk;
    }
    err << "error [usage]: " << e.what() << "\n";
    return kUsage;
  }

  if (classify_cmd->parsed()) return cmd_classify(cfg, out, err);
  if (verify_cmd->parsed()) return cmd_verify_map(cfg, out, err);
  return cmd_center(cfg, out, err);
}

} // namespace virasym::cli
