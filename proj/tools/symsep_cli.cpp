// symsep command-line front end.
//
// Exit codes: 0 success / all criteria satisfied / extension feasible,
// 1 error, 2 some criterion violated, 3 infeasible evidence, 4 inconclusive.

#include <chrono>
#include <cstdio>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "symsep/symsep.hpp"

using namespace symsep;

namespace {

struct Globals {
  std::optional<double> tol;
  bool json = false;
  std::string command_line;
};

Split parse_split(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw Error(Errc::bad_split, "split must be written as a,b");
  try {
    return {std::stoi(text.substr(0, comma)), std::stoi(text.substr(comma + 1))};
  } catch (const std::exception&) {
    throw Error(Errc::bad_split, "cannot parse split '" + text + "'");
  }
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');)
    if (!item.empty()) out.push_back(item);
  return out;
}

Json spectrum_json(const RealVector& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

Json verdict_json(const CriterionVerdict& v) {
  return {{"criterion", criterion_name(v.id)},
          {"satisfied", v.satisfied},
          {"margin", v.margin},
          {"tolerance", v.tolerance}};
}

void render_text(std::ostream& os, const Json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  for (auto it = j.begin(); it != j.end(); ++it) {
    const Json& v = it.value();
    const std::string head = j.is_object() ? pad + it.key() + ":" : pad + "-";
    if (v.is_object() || (v.is_array() && !v.empty() && v.front().is_structured())) {
      os << head << '\n';
      render_text(os, v, indent + 2);
    } else if (v.is_string()) {
      os << head << ' ' << v.get<std::string>() << '\n';
    } else {
      os << head << ' ' << v.dump() << '\n';
    }
  }
}

class Reporter {
 public:
  Reporter(const Globals& g, std::string command) : g_(g), start_(std::chrono::steady_clock::now()) {
    report_["command"] = g_.command_line;
    report_["subcommand"] = std::move(command);
    report_["version"] = kVersion;
  }

  Json& result() { return report_["result"]; }
  Json& tolerances() { return report_["tolerances"]; }

  void emit() {
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    report_["wall_time_s"] = secs;
    if (g_.json) {
      std::cout << report_.dump(2) << '\n';
    } else {
      render_text(std::cout, report_, 0);
    }
  }

 private:
  const Globals& g_;
  std::chrono::steady_clock::time_point start_;
  Json report_ = Json::object();
};

void write_or_print(const std::optional<std::string>& path, const StateFile& f) {
  if (path) {
    write_state_file(*path, f);
  } else {
    std::cout << state_to_json(f).dump(1) << '\n';
  }
}

// ---------------------------------------------------------------- analyze

struct AnalyzeArgs {
  std::string input;
  std::string criteria;
  std::string split;
};

int analyze_bipartite(const DensityMatrix& rho, const std::vector<std::string>& requested, double tol,
                      Json& out) {
  const bool equal = rho.dims()[0] == rho.dims()[1];
  const Symmetry sym = equal ? classify(rho) : Symmetry::neither;
  out["dims"] = rho.dims();
  out["symmetry"] = symmetry_name(sym);
  const bool invariant = sym != Symmetry::neither;

  std::vector<CriterionId> ids;
  if (requested.empty()) {
    for (CriterionId id : kAllCriteria)
      if (invariant || (id != CriterionId::eta_psd && id != CriterionId::corr_psd)) ids.push_back(id);
  } else {
    for (const auto& name : requested) {
      const CriterionId id = parse_criterion(name);
      if (!invariant && (id == CriterionId::eta_psd || id == CriterionId::corr_psd))
        throw Error(Errc::not_applicable, name + " requires a symmetric or invariant state");
      ids.push_back(id);
    }
  }

  std::optional<std::pair<CriterionVerdict, CriterionVerdict>> cov;
  bool all = true;
  Json verdicts = Json::array();
  for (CriterionId id : ids) {
    CriterionVerdict v;
    switch (id) {
      case CriterionId::eta_psd: v = criterion_eta_psd(rho, tol); break;
      case CriterionId::ppt: v = criterion_ppt(rho, tol); break;
      case CriterionId::ccnr: v = criterion_ccnr(rho, tol); break;
      case CriterionId::corr_psd: v = criterion_corr_psd(rho, tol); break;
      case CriterionId::cov_norm:
      case CriterionId::cov_diag:
        if (!cov) cov = criterion_covariance(rho, tol);
        v = id == CriterionId::cov_norm ? cov->first : cov->second;
        break;
    }
    all = all && v.satisfied;
    verdicts.push_back(verdict_json(v));
  }
  out["verdicts"] = verdicts;

  if (invariant && requested.empty()) {
    const EquivalenceReport eq = equivalence_report(rho, tol);
    Json e;
    e["inconsistent"] = eq.inconsistent;
    e["boundary"] = eq.boundary;
    e["realignment_gap"] = eq.realignment_gap;
    e["lambda_sum"] = eq.lambda_sum;
    Json dis = Json::array();
    for (auto [a, b] : eq.disagreements) dis.push_back(criterion_name(a) + "/" + criterion_name(b));
    e["disagreements"] = dis;
    out["equivalence"] = e;
  }
  out["all_satisfied"] = all;
  return all ? 0 : 2;
}

int analyze_symmetric(const SymmetricState& sigma, double tol, Json& out) {
  out["qubits"] = sigma.qubits();
  out["basis"] = "dicke";
  const RealVector ev = hermitian_eigenvalues(sigma.matrix());
  out["min_eigenvalue"] = ev.minCoeff();
  bool all = true;
  Json splits = Json::array();
  for (Split s : representative_splits(sigma.qubits())) {
    const RealVector pt = compressed_pt_spectrum(sigma, s).values;
    const double lm = pt.minCoeff();
    const bool ok = lm >= -tol;
    all = all && ok;
    splits.push_back({{"split", split_name(s)},
                      {"ppt", ok},
                      {"min_eigenvalue", lm},
                      {"structural_zeros", structural_zeros(sigma.qubits(), s).compressed},
                      {"spectrum", spectrum_json(pt)}});
  }
  out["partial_transposes"] = splits;
  out["all_satisfied"] = all;
  return all ? 0 : 2;
}

int run_analyze(const Globals& g, const AnalyzeArgs& a) {
  Reporter rep(g, "analyze");
  const double tol = g.tol.value_or(kCriterionTolerance);
  rep.tolerances() = {{"criterion", tol}, {"dead_band", kEquivalenceDeadBand}};
  const StateFile f = read_state_file(a.input);
  rep.result()["input"] = a.input;
  const std::vector<std::string> requested = split_list(a.criteria);
  int code;
  if (f.dicke()) {
    const SymmetricState sigma = f.symmetric();
    if (!a.split.empty()) {
      const Split s = parse_split(a.split);
      rep.result()["split"] = split_name(s);
      code = analyze_bipartite(to_bipartite(sigma, s), requested, tol, rep.result());
    } else {
      if (!requested.empty() && requested != std::vector<std::string>{"ppt"})
        throw Error(Errc::not_applicable, "a Dicke-basis state without --split supports only ppt");
      code = analyze_symmetric(sigma, tol, rep.result());
    }
  } else {
    if (!f.state.bipartite()) throw Error(Errc::not_bipartite, "analyze expects a bipartite state");
    code = analyze_bipartite(f.state, requested, tol, rep.result());
  }
  rep.emit();
  return code;
}

// -------------------------------------------------------------- construct

struct ConstructArgs {
  std::string family;
  int d = 4;
  int ancilla = 2;
  double lambda = 0.0;
  std::string input;
  std::optional<std::string> output;
};

Vector two_qudit_singlet(int d) {
  if (d < 2 || d % 2 != 0) throw Error(Errc::odd_dimension, "singlet needs an even dimension");
  if (d >= 4) return singlet(d);
  Vector v = Vector::Zero(4);
  v(1) = 1.0 / std::sqrt(2.0);
  v(2) = -1.0 / std::sqrt(2.0);
  return v;
}

int run_construct(const Globals&, const ConstructArgs& a) {
  Json meta = {{"name", a.family}};
  std::optional<StateFile> f;
  if (a.family == "breuer") {
    meta["d"] = a.d;
    meta["lambda"] = a.lambda;
    f = StateFile{breuer(a.d, a.lambda), meta};
  } else if (a.family == "embed-symmetric") {
    meta["D"] = a.ancilla;
    meta["d"] = a.d;
    meta["lambda"] = a.lambda;
    f = StateFile{embed_symmetric(a.ancilla, a.d, a.lambda), meta};
  } else if (a.family == "embed-invariant") {
    if (a.input.empty()) throw Error(Errc::bad_params, "embed-invariant needs --input");
    const StateFile in = read_state_file(a.input);
    meta["source"] = a.input;
    f = StateFile{embed_invariant(in.state), meta};
  } else if (a.family == "be4") {
    f = StateFile{rho_be4().as_density(), meta};
  } else if (a.family == "be5") {
    f = StateFile{rho_be5().as_density(), meta};
  } else if (a.family == "singlet") {
    meta["d"] = a.d;
    f = StateFile{DensityMatrix(projector(two_qudit_singlet(a.d)), {a.d, a.d}), meta};
  } else {
    throw Error(Errc::bad_params, "unknown family '" + a.family + "'");
  }
  write_or_print(a.output, *f);
  return 0;
}

// -------------------------------------------------------------- threshold

struct ThresholdArgs {
  std::string family = "breuer";
  int d = 4;
  int ancilla = 2;
  double lo = 0.0;
  double hi = 1.0;
};

int run_threshold(const Globals& g, const ThresholdArgs& a) {
  Reporter rep(g, "threshold");
  ThresholdOptions opt;
  opt.lo = a.lo;
  opt.hi = a.hi;
  if (g.tol) opt.tolerance = *g.tol;
  rep.tolerances() = {{"bisection", opt.tolerance}, {"monotone_slack", opt.monotone_slack}};
  StateFamily fam;
  if (a.family == "breuer") {
    fam = [d = a.d](double l) { return breuer(d, l); };
  } else if (a.family == "embed-symmetric") {
    fam = [D = a.ancilla, d = a.d](double l) { return embed_symmetric(D, d, l); };
  } else {
    throw Error(Errc::bad_params, "threshold supports breuer and embed-symmetric");
  }
  fam(a.lo);  // validates d before the grid scan
  const double t = ppt_threshold(fam, opt);
  Json& r = rep.result();
  r["family"] = a.family;
  r["d"] = a.d;
  if (a.family == "embed-symmetric") r["D"] = a.ancilla;
  r["interval"] = {a.lo, a.hi};
  r["threshold"] = t;
  std::ostringstream fixed;
  fixed << std::fixed << std::setprecision(8) << t;
  r["threshold_8dp"] = fixed.str();
  rep.emit();
  return 0;
}

// ----------------------------------------------------------------- search

struct SearchArgs {
  std::optional<std::uint64_t> seed;
  SearchConfig config;
  std::string initial;
  std::optional<std::string> output;
};

int run_search(const Globals& g, SearchArgs a) {
  if (!a.seed) throw Error(Errc::config_invalid, "search requires --seed");
  Reporter rep(g, "search");
  a.config.seed = *a.seed;
  if (g.tol) a.config.tol_zero = *g.tol;
  rep.tolerances() = {{"tol_zero", a.config.tol_zero}, {"target_margin", a.config.target_margin}};
  std::optional<SymmetricState> init;
  if (!a.initial.empty()) init = read_state_file(a.initial).symmetric();
  const SearchReport r = hill_climb(a.config, init);
  const SearchAudit audit = audit_search(r, a.config.tol_zero);
  Json& out = rep.result();
  out["qubits"] = a.config.qubits;
  out["seed"] = a.config.seed;
  out["epsilon"] = a.config.epsilon;
  out["max_iter"] = a.config.max_iter;
  out["iterations"] = r.iterations;
  out["accepted_steps"] = r.lambda_trace.size() - 1;
  out["initial_rejections"] = r.initial_rejections;
  out["final_epsilon"] = r.final_epsilon;
  out["success"] = r.success;
  out["lambda_min_initial"] = r.lambda_trace.front();
  out["lambda_min_final"] = r.lambda_trace.back();
  out["balanced_margin_final"] = balanced_margin(r.final_state);
  out["audit_ok"] = audit.ok;
  if (r.success)
    out["note"] =
        "PPT across the balanced cut and NPT across another: entangled, hence bound entangled across the "
        "balanced cut";
  if (a.output) {
    Json meta = {{"name", "search"}, {"seed", a.config.seed}, {"success", r.success}};
    write_state_file(*a.output, {r.final_state.as_density(), meta});
    out["output"] = *a.output;
  }
  rep.emit();
  return audit.ok ? 0 : 1;
}

// ----------------------------------------------------------------- extend

struct ExtendArgs {
  std::string input;
  int m = 0;
  std::optional<std::uint64_t> seed;
  int max_iter = 50'000;
  std::optional<std::string> output;
};

int run_extend(const Globals& g, const ExtendArgs& a) {
  if (!a.seed) throw Error(Errc::config_invalid, "extend requires --seed");
  Reporter rep(g, "extend");
  const StateFile f = read_state_file(a.input);
  if (!f.dicke()) throw Error(Errc::not_applicable, "extend expects a Dicke-basis state");
  ExtensionProblem p{f.symmetric(), a.m};
  if (g.tol) p.tol_feas = *g.tol;
  p.max_iter = a.max_iter;
  rep.tolerances() = {{"tol_feas", p.tol_feas}};
  const ExtensionResult r = find_extension(p);
  Json& out = rep.result();
  out["input"] = a.input;
  out["N"] = p.target.qubits();
  out["M"] = a.m;
  out["seed"] = *a.seed;
  out["status"] = status_name(r.status);
  out["iterations"] = r.iterations;
  out["residual_gap"] = r.residual_gap;
  out["nonmonotone_steps"] = r.nonmonotone_steps;
  if (r.status == ExtensionStatus::infeasible_evidence)
    out["note"] = "numerical evidence that no PPT symmetric extension exists; not a certificate";
  if (r.witness) {
    const ExtensionVerification v = verify_extension(*r.witness, p.target, p.tol_feas);
    out["verification"] = {{"ok", v.ok},
                           {"marginal_error", v.marginal_error},
                           {"trace_error", v.trace_error},
                           {"min_eigenvalue", v.min_eigenvalue}};
    if (a.output) {
      write_state_file(*a.output, {r.witness->as_density(), {{"name", "extension"}, {"M", a.m}}});
      out["output"] = *a.output;
    }
  }
  rep.emit();
  switch (r.status) {
    case ExtensionStatus::feasible: return 0;
    case ExtensionStatus::infeasible_evidence: return 3;
    case ExtensionStatus::inconclusive: return 4;
  }
  return 1;
}

// -------------------------------------------------------------------- map

struct MapArgs {
  std::string input;
  std::string split;
  std::optional<std::string> output;
};

int run_map(const Globals&, const MapArgs& a) {
  const StateFile f = read_state_file(a.input);
  if (!f.dicke()) throw Error(Errc::not_applicable, "map expects a Dicke-basis state");
  const Split s = parse_split(a.split);
  Json meta = f.metadata;
  meta["split"] = split_name(s);
  write_or_print(a.output, {to_bipartite(f.symmetric(), s), meta});
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  Globals g;
  for (int i = 0; i < argc; ++i) g.command_line += (i ? " " : "") + std::string(argv[i]);

  CLI::App app{"Separability criteria and bound-entanglement tools for symmetric states"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--tol", g.tol, "Override the command's main tolerance");
  app.add_flag("--json", g.json, "Emit the report as JSON");
  app.set_version_flag("--version", std::string(kVersion));

  AnalyzeArgs an;
  auto* analyze = app.add_subcommand("analyze", "Run separability criteria on a state file");
  analyze->add_option("--input,-i", an.input, "State file")->required();
  analyze->add_option("--criteria", an.criteria, "Comma-separated subset of criteria");
  analyze->add_option("--split", an.split, "Bipartition a,b for Dicke-basis states");

  ConstructArgs co;
  auto* construct = app.add_subcommand("construct", "Write a state file for a named family");
  construct->add_option("family", co.family, "breuer|embed-invariant|embed-symmetric|be4|be5|singlet")
      ->required();
  construct->add_option("--d", co.d, "Local dimension");
  construct->add_option("--D", co.ancilla, "Ancilla dimension for embed-symmetric");
  construct->add_option("--lambda", co.lambda, "Mixing parameter");
  construct->add_option("--input,-i", co.input, "Source state for embed-invariant");
  construct->add_option("--output,-o", co.output, "Output path (default: stdout)");

  ThresholdArgs th;
  auto* threshold = app.add_subcommand("threshold", "PPT threshold of a one-parameter family");
  threshold->add_option("--family", th.family, "breuer|embed-symmetric");
  threshold->add_option("--d", th.d, "Local dimension");
  threshold->add_option("--D", th.ancilla, "Ancilla dimension for embed-symmetric");
  threshold->add_option("--lo", th.lo, "Interval start");
  threshold->add_option("--hi", th.hi, "Interval end");

  SearchArgs se;
  auto* search = app.add_subcommand("search", "Hill climb for balanced-PPT, NPT symmetric states");
  search->add_option("--seed", se.seed, "RNG seed (required)");
  search->add_option("--qubits,-N", se.config.qubits, "Number of qubits (even)");
  search->add_option("--epsilon", se.config.epsilon, "Mixing step");
  search->add_option("--max-iter", se.config.max_iter, "Iteration cap");
  search->add_flag("!--no-decay", se.config.decay, "Disable step-size decay");
  search->add_option("--initial", se.initial, "Initial Dicke-basis state");
  search->add_option("--output,-o", se.output, "Write the final state here");

  ExtendArgs ex;
  auto* extend = app.add_subcommand("extend", "Search for a PPT symmetric extension");
  extend->add_option("--input,-i", ex.input, "Dicke-basis target state")->required();
  extend->add_option("--M", ex.m, "Extension size in qubits")->required();
  extend->add_option("--seed", ex.seed, "Seed (required; the solver itself is deterministic)");
  extend->add_option("--max-iter", ex.max_iter, "Iteration cap");
  extend->add_option("--output,-o", ex.output, "Write the witness here when feasible");

  MapArgs mp;
  auto* map = app.add_subcommand("map", "Embed a Dicke-basis state as a bipartite state");
  map->add_option("--input,-i", mp.input, "Dicke-basis state")->required();
  map->add_option("--split", mp.split, "Bipartition a,b")->required();
  map->add_option("--output,-o", mp.output, "Output path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*analyze) return run_analyze(g, an);
    if (*construct) return run_construct(g, co);
    if (*threshold) return run_threshold(g, th);
    if (*search) return run_search(g, se);
    if (*extend) return run_extend(g, ex);
    if (*map) return run_map(g, mp);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
