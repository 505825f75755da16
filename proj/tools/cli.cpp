#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>

#include "scx/acceptance.hpp"
#include "scx/adversary.hpp"
#include "scx/divergences.hpp"
#include "scx/errors.hpp"
#include "scx/hypothesis.hpp"
#include "scx/io.hpp"
#include "scx/privamp.hpp"
#include "scx/rng.hpp"
#include "scx/smoothing.hpp"

namespace scx::cli {

namespace {

using nlohmann::json;

struct NRange {
  int min = 1;
  int max = 1;
  int step = 1;

  void validate(const char* what) const {
    if (min < 1) throw ValidationError(std::string(what) + ": n-min must be >= 1");
    if (max < min) throw ValidationError(std::string(what) + ": n-max must be >= n-min");
    if (step < 1) throw ValidationError(std::string(what) + ": n-step must be >= 1");
  }
  std::vector<int> values() const {
    std::vector<int> v;
    for (int n = min; n <= max; n += step) v.push_back(n);
    return v;
  }
};

void add_range(CLI::App* sub, NRange& r) {
  sub->add_option("--n-min", r.min, "smallest block length")->required();
  sub->add_option("--n-max", r.max, "largest block length")->required();
  sub->add_option("--n-step", r.step, "block length increment")->capture_default_str();
}

void emit(const std::string& data, const std::string& path, std::ostream& out, std::ostream& err) {
  if (path.empty()) {
    out << data;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot open output file " + path);
  f << data;
  if (!f) throw InputError("write failed: " + path);
  err << "scx: wrote " << path << '\n';
}

std::string csv_row(std::initializer_list<std::string> cells) {
  std::string row;
  for (const auto& c : cells) {
    if (!row.empty()) row += ',';
    row += c;
  }
  return row + '\n';
}

RenyiKind parse_kind(const std::string& s) {
  if (s == "petz") return RenyiKind::petz;
  if (s == "sandwiched") return RenyiKind::sandwiched;
  if (s == "umegaki") return RenyiKind::umegaki;
  throw ValidationError("unknown divergence kind \"" + s + "\" (expected petz, sandwiched or umegaki)");
}

// A pair of states of the same shape; weight files are lifted to diagonal
// matrices when the other side is a matrix.
struct StatePair {
  bool classical = false;
  std::vector<double> p, q;
  ComplexMatrix rho, sigma;
};

StatePair load_pair(const std::string& a, const std::string& b) {
  const StateData da = load_state_file(a);
  const StateData db = load_state_file(b);
  StatePair sp;
  const auto* wa = std::get_if<std::vector<double>>(&da);
  const auto* wb = std::get_if<std::vector<double>>(&db);
  if (wa && wb) {
    sp.classical = true;
    sp.p = *wa;
    sp.q = *wb;
    return sp;
  }
  sp.rho = wa ? diagonal_matrix(*wa) : std::get<ComplexMatrix>(da);
  sp.sigma = wb ? diagonal_matrix(*wb) : std::get<ComplexMatrix>(db);
  return sp;
}

json divergence_value(const DivergenceValue& v) { return v.value; }

// ---------------------------------------------------------------- divergence

struct DivergenceArgs {
  std::string rho, sigma, kind = "petz", out;
  std::optional<double> alpha;
};

int cmd_divergence(const DivergenceArgs& a, const NumericConfig& cfg, std::ostream& out, std::ostream& err) {
  const StatePair sp = load_pair(a.rho, a.sigma);
  const RenyiKind kind = parse_kind(a.kind);
  if (a.alpha && kind == RenyiKind::umegaki) throw DomainError("--alpha has no meaning for the umegaki kind");
  if (a.alpha && !(*a.alpha > 0.0 && *a.alpha != 1.0)) throw DomainError("--alpha must be positive and != 1");
  json j;
  if (sp.classical) {
    const ClassicalDistribution p(sp.p, cfg);
    const ClassicalMeasure q(sp.q);
    if (a.alpha) {
      j["kind"] = a.kind;
      j["alpha"] = *a.alpha;
      j["value"] = divergence_value(renyi_divergence(p, q, *a.alpha, kind));
    } else {
      j["relative_entropy"] = divergence_value(relative_entropy(p, q));
      j["max_relative_entropy"] = divergence_value(max_relative_entropy(p, q));
      if (q.total() <= 1.0 + cfg.tol_tr) {
        const ClassicalDistribution qd(sp.q, cfg);
        j["trace_distance"] = gen_trace_distance(p, qd);
        j["purified_distance"] = purified_distance(p, qd);
        j["fidelity"] = fidelity(p, qd);
      }
    }
  } else {
    const DensityOperator rho(sp.rho, cfg);
    const PositiveOperator sigma(sp.sigma, cfg);
    if (a.alpha) {
      j["kind"] = a.kind;
      j["alpha"] = *a.alpha;
      j["value"] = divergence_value(renyi_divergence(rho, sigma, *a.alpha, kind, cfg));
    } else {
      j["relative_entropy"] = divergence_value(relative_entropy(rho, sigma, cfg));
      j["max_relative_entropy"] = divergence_value(max_relative_entropy(rho, sigma, cfg));
      if (sigma.trace() <= 1.0 + cfg.tol_tr) {
        const DensityOperator sd(sp.sigma, cfg);
        j["trace_distance"] = gen_trace_distance(rho, sd);
        j["purified_distance"] = purified_distance(rho, sd, cfg);
        j["fidelity"] = fidelity(rho, sd, cfg);
      }
    }
  }
  emit(dump_json(j) + "\n", a.out, out, err);
  return kOk;
}

// ----------------------------------------------------------------- hoeffding

struct HoeffdingArgs {
  std::string rho, sigma, out;
  double s = 0.0;
  std::optional<double> r;
};

int cmd_hoeffding(const HoeffdingArgs& a, const NumericConfig& cfg, std::ostream& out, std::ostream& err) {
  if (!(a.s >= 0.0)) throw DomainError("--s must be >= 0");
  const StatePair sp = load_pair(a.rho, a.sigma);
  const PetzProfile prof = [&] {
    if (sp.classical) {
      const ClassicalDistribution p(sp.p, cfg);
      const ClassicalMeasure q(sp.q);
      return PetzProfile::classical(p.weights(), q.weights());
    }
    const DensityOperator rho(sp.rho, cfg);
    const PositiveOperator sigma(sp.sigma, cfg);
    return PetzProfile::quantum(rho.matrix(), sigma.matrix(), cfg);
  }();
  const ScalarOptimum h = hoeffding_optimum(prof, a.s);
  json j;
  j["s"] = a.s;
  j["hoeffding_bound"] = h.value;
  j["alpha"] = h.alpha;
  if (a.r) {
    const ScalarOptimum c = critical_rate_optimum(prof, *a.r);
    j["r"] = *a.r;
    j["critical_rate"] = c.value;
    j["critical_rate_alpha"] = c.alpha;
    j["hoeffding_at_critical_rate"] = hoeffding_bound(prof, c.value);
  }
  emit(dump_json(j) + "\n", a.out, out, err);
  return kOk;
}

// --------------------------------------------------------------- sc-exponent

struct ScExponentArgs {
  std::string p, q, out;
  double r = 0.0;
  double tol = 0.05;
  NRange n;
};

// Absolute floor for the relative comparison when the exponent vanishes.
constexpr double kExponentFloor = 1e-3;

int cmd_sc_exponent(const ScExponentArgs& a, const NumericConfig& cfg, std::ostream& out, std::ostream& err) {
  a.n.validate("sc-exponent");
  if (!(a.tol > 0.0)) throw ValidationError("sc-exponent: --tol must be positive");
  const StatePair sp = load_pair(a.p, a.q);
  if (!sp.classical) throw ValidationError("sc-exponent: both inputs must be weight files");
  const ClassicalDistribution p(sp.p, cfg);
  const ClassicalMeasure q(sp.q);

  std::string csv = csv_row({"n", "eps", "log2_one_minus_eps"});
  std::vector<EpsPoint> series;
  for (int n : a.n.values()) {
    const SmoothingValue v = eps_opt_classical_iid(p, q, a.r, n, cfg);
    series.push_back({n, v.eps, v.log2_one_minus_eps});
    csv += csv_row({std::to_string(n), format_double(v.eps), format_double(v.log2_one_minus_eps)});
  }
  const ExponentReport fit = exponent_fit(series, {a.n.min, a.n.max});
  const double formula = sc_exponent_lower_bound(p, q, a.r);
  const double dev = std::abs(fit.fitted_slope - formula) / std::max(std::abs(formula), kExponentFloor);
  const bool pass = dev <= a.tol;
  csv += "# slope=" + format_double(fit.fitted_slope) + ",formula=" + format_double(formula) +
         ",rel_err=" + format_double(dev) + ",tol=" + format_double(a.tol) + ",verdict=" + (pass ? "pass" : "fail") +
         '\n';
  emit(csv, a.out, out, err);
  if (!pass) err << "scx: fitted slope outside tolerance\n";
  return pass ? kOk : kVerificationFailure;
}

// ------------------------------------------------------------------ pa-sweep

struct PaSweepArgs {
  std::string state, out;
  double rate = 0.0;
  NRange n;
  std::uint64_t hashes = 0;
  std::uint64_t seed = kDefaultSeed;
  bool exact_floor = false;
};

int cmd_pa_sweep(const PaSweepArgs& a, const NumericConfig& cfg, std::ostream& out, std::ostream& err) {
  a.n.validate("pa-sweep");
  if (!(a.rate > 0.0)) throw ValidationError("pa-sweep: --rate must be positive");
  const CQState cq = load_cq_state_file(a.state);
  if (cq.mode() != CQMode::classical) throw ValidationError("pa-sweep: a classical c-q state is required");

  const double h_cond = conditional_entropy(cq, 1.0, RenyiKind::umegaki, cfg);
  const Theorem2Bounds bounds = theorem2_bounds(cq, a.rate, cfg);
  const bool hashing = a.hashes > 0;
  std::string csv = hashing ? csv_row({"n", "R", "floor_eps", "log2_one_minus", "bound_trace", "bound_purified",
                                       "hash_min_purified", "hash_mean_trace", "floor_verdict"})
                            : csv_row({"n", "R", "floor_eps", "log2_one_minus", "bound_trace", "bound_purified"});
  std::vector<EpsPoint> series;
  bool floor_holds = true;
  for (int n : a.n.values()) {
    const SmoothingValue v = pa_epsilon_floor(cq, n, a.rate, a.exact_floor, cfg);
    series.push_back({n, v.eps, v.log2_one_minus_eps});
    const std::string base[] = {std::to_string(n), format_double(a.rate), format_double(v.eps),
                                format_double(v.log2_one_minus_eps), format_double(bounds.trace_bound),
                                format_double(bounds.purified_bound)};
    if (!hashing) {
      csv += csv_row({base[0], base[1], base[2], base[3], base[4], base[5]});
      continue;
    }
    // The per-hash floor is the one at the realized key size.
    const CQState cqn = cq.tensor_power(n, cfg);
    const auto z = static_cast<std::size_t>(key_size(n, a.rate));
    const double floor_exact = a.exact_floor ? v.eps : pa_epsilon_floor(cq, n, a.rate, true, cfg).eps;
    const std::uint64_t sub = a.seed ^ static_cast<std::uint64_t>(n);
    const ConversionReport pmin =
        min_or_avg_conversion_sampled(cqn, z, a.hashes, sub, Aggregate::min, Metric::purified, cfg);
    const ConversionReport tmean =
        min_or_avg_conversion_sampled(cqn, z, a.hashes, sub, Aggregate::mean, Metric::trace, cfg);
    const bool holds = pmin.error >= floor_exact - 1e-9;
    floor_holds = floor_holds && holds;
    csv += csv_row({base[0], base[1], base[2], base[3], base[4], base[5], format_double(pmin.error),
                    format_double(tmean.error), holds ? "holds" : "violated"});
  }
  const std::string regime = a.rate > h_cond ? "strong converse regime" : "achievable regime";
  csv += "# H(X|E)=" + format_double(h_cond) + ",bound_purified=" + format_double(bounds.purified_bound) +
         ",alpha=" + format_double(bounds.alpha) + ",regime=" + regime;
  if (series.size() >= 2) {
    csv += ",slope=" + format_double(exponent_fit(series, {a.n.min, a.n.max}).fitted_slope);
  }
  csv += '\n';
  emit(csv, a.out, out, err);
  if (!floor_holds) err << "scx: a sampled hash beat the conversion floor\n";
  return floor_holds ? kOk : kVerificationFailure;
}

// ----------------------------------------------------------------- adversary

std::vector<int> n_list(const json& j) {
  if (j.is_array()) return j.get<std::vector<int>>();
  NRange r{j.at("min").get<int>(), j.at("max").get<int>(), j.value("step", 1)};
  r.validate("adversary");
  return r.values();
}

json prop1_to_json(const std::vector<Prop1Record>& recs, std::string& verdict) {
  json out = json::array();
  verdict = "pass";
  for (const auto& r : recs) {
    if (!r.skipped && !r.holds) verdict = "fail";
    out.push_back({{"n", r.n},
                   {"delta", r.delta},
                   {"message_count", r.message_count},
                   {"set_index", r.set_index},
                   {"messages", r.messages},
                   {"trace_distance", r.trace_distance},
                   {"p_guess", r.p_guess},
                   {"bound", r.bound},
                   {"holds", r.holds},
                   {"skipped", r.skipped}});
  }
  return out;
}

json prop2_to_json(const Prop2Report& rep, std::string& verdict) {
  json out = json::array();
  verdict = "pass";
  for (const auto& r : rep.records) {
    if (r.verdict != "pass") verdict = "fail";
    out.push_back({{"n", r.n},
                   {"c_n", r.c_n},
                   {"K_n", r.k},
                   {"trace_pi_rho", r.trace_pi_rho},
                   {"trace_pi_target", r.trace_pi_target},
                   {"empirical_fraction", r.empirical_fraction},
                   {"threshold", r.threshold},
                   {"bound", r.bound},
                   {"sigma", r.sigma},
                   {"mean_success", r.mean_success},
                   {"mean_bound", r.mean_bound},
                   {"mean_sigma", r.mean_sigma},
                   {"joint_fraction", r.joint_fraction},
                   {"verdict", r.verdict}});
  }
  return out;
}

int cmd_adversary(const std::string& config, const std::string& out_path, const NumericConfig& cfg,
                  std::ostream& out, std::ostream& err) {
  const json c = load_json_file(config);
  const std::filesystem::path base = std::filesystem::path(config).parent_path();
  const std::string experiment = c.at("experiment").get<std::string>();
  const SchemeKind scheme = parse_scheme(c.value("scheme", std::string("modular_add")));
  const std::uint64_t seed = c.value("seed", kDefaultSeed);
  const std::vector<int> ns = n_list(c.at("n"));
  for (int n : ns) {
    if (n < 1) throw ValidationError("adversary: n must be >= 1");
  }

  json report;
  report["experiment"] = experiment;
  report["scheme"] = scheme_name(scheme);
  report["seed"] = seed;
  std::string verdict;
  if (experiment == "prop1") {
    const auto deltas = c.at("deltas").get<std::vector<double>>();
    const auto counts = c.value("message_counts", std::vector<std::size_t>{2, 4, 8, 16});
    const auto sets = c.value("sets", std::size_t{3});
    std::vector<Prop1Case> cases;
    for (double d : deltas) {
      for (int n : ns) {
        if (n > 16) throw ResourceError("adversary: prop1 key alphabet 2^n too large");
        cases.push_back({n, d, delta_mixture_state(std::size_t{1} << n, d)});
      }
    }
    report["records"] = prop1_to_json(prop1_audit(cases, scheme, counts, sets, seed, cfg), verdict);
  } else if (experiment == "prop2") {
    const double eps = c.at("epsilon").get<double>();
    const auto trials = c.at("trials").get<std::int64_t>();
    if (trials < 1) throw ValidationError("adversary: trials must be >= 1");
    if (!(eps > 0.0 && eps < 1.0)) throw ValidationError("adversary: epsilon must lie in (0, 1)");
    const CQState cq = load_cq_state_file(base / c.at("state").get<std::string>());
    std::vector<std::pair<int, CQState>> states;
    for (int n : ns) states.emplace_back(n, cq.tensor_power(n, cfg));
    const Prop2Report rep = prop2_experiment(states, scheme, eps, static_cast<std::uint64_t>(trials), seed, cfg);
    report["epsilon"] = rep.eps;
    report["trials"] = rep.trials;
    report["records"] = prop2_to_json(rep, verdict);
  } else {
    throw ValidationError("adversary: experiment must be prop1 or prop2");
  }
  report["verdict"] = verdict;
  emit(dump_json(report) + "\n", out_path, out, err);
  return verdict == "pass" ? kOk : kVerificationFailure;
}

// -------------------------------------------------------------------- verify

struct VerifyArgs {
  bool list = false;
  double tighten = 1.0;
  std::uint64_t seed = kDefaultSeed;
  std::vector<int> only;
};

int cmd_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err) {
  if (a.list) {
    for (const auto& c : list_criteria()) out << c.id << "  " << c.title << '\n';
    return kOk;
  }
  if (!(a.tighten > 0.0)) throw ValidationError("verify: --tighten must be positive");
  const AcceptanceOptions opts{a.tighten, a.seed};
  std::vector<int> ids = a.only;
  if (ids.empty()) {
    for (const auto& c : list_criteria()) ids.push_back(c.id);
  }
  int passed = 0;
  for (int id : ids) {
    const CriterionResult r = run_criterion(id, opts);
    out << format_result(r) << '\n' << std::flush;
    passed += r.passed ? 1 : 0;
  }
  err << "scx: " << passed << "/" << ids.size() << " criteria passed\n";
  return passed == static_cast<int>(ids.size()) ? kOk : kVerificationFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Smoothed divergences, hypothesis testing and privacy amplification toolkit", "scx"};
  app.require_subcommand(1);

  DivergenceArgs div;
  auto* s_div = app.add_subcommand("divergence", "Renyi divergences and distances between two states");
  s_div->add_option("--rho", div.rho, "first state (matrix or weights file)")->required();
  s_div->add_option("--sigma", div.sigma, "second state")->required();
  s_div->add_option("--alpha", div.alpha, "Renyi order; omit for the full report");
  s_div->add_option("--kind", div.kind, "petz, sandwiched or umegaki")->capture_default_str();
  s_div->add_option("--out", div.out, "output file");

  HoeffdingArgs hoef;
  auto* s_hoef = app.add_subcommand("hoeffding", "Hoeffding bound and critical rate");
  s_hoef->add_option("--rho", hoef.rho)->required();
  s_hoef->add_option("--sigma", hoef.sigma)->required();
  s_hoef->add_option("--s", hoef.s, "type-II exponent")->required();
  s_hoef->add_option("--r", hoef.r, "threshold rate for the critical rate s_r");
  s_hoef->add_option("--out", hoef.out);

  ScExponentArgs sce;
  auto* s_sce = app.add_subcommand("sc-exponent", "strong converse exponent of the smoothed divergence");
  s_sce->add_option("--p", sce.p, "weights file")->required();
  s_sce->add_option("--q", sce.q, "weights file")->required();
  s_sce->add_option("--r", sce.r, "rate")->required();
  add_range(s_sce, sce.n);
  s_sce->add_option("--tol", sce.tol, "relative tolerance of the fit")->capture_default_str();
  s_sce->add_option("--out", sce.out);

  PaSweepArgs pa;
  auto* s_pa = app.add_subcommand("pa-sweep", "privacy amplification conversion floor over n");
  s_pa->add_option("--state", pa.state, "c-q state file")->required();
  s_pa->add_option("--rate", pa.rate, "key rate R")->required();
  add_range(s_pa, pa.n);
  s_pa->add_option("--hashes", pa.hashes, "sampled modular hashes per n (0 = none)")->capture_default_str();
  s_pa->add_option("--seed", pa.seed)->capture_default_str();
  s_pa->add_flag("--exact-floor", pa.exact_floor, "use r = -log2 floor(2^{nR})");
  s_pa->add_option("--out", pa.out);

  std::string adv_config, adv_out;
  auto* s_adv = app.add_subcommand("adversary", "guessing experiments from a JSON config");
  s_adv->add_option("--config", adv_config)->required();
  s_adv->add_option("--out", adv_out);

  VerifyArgs ver;
  auto* s_ver = app.add_subcommand("verify", "run the acceptance criteria");
  s_ver->add_flag("--list", ver.list, "list criteria without running them");
  s_ver->add_option("--tighten", ver.tighten, "divide every tolerance by this factor")->capture_default_str();
  s_ver->add_option("--seed", ver.seed)->capture_default_str();
  s_ver->add_option("--only", ver.only, "criterion ids to run");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    const NumericConfig cfg = NumericConfig::from_environment();
    if (s_div->parsed()) return cmd_divergence(div, cfg, out, err);
    if (s_hoef->parsed()) return cmd_hoeffding(hoef, cfg, out, err);
    if (s_sce->parsed()) return cmd_sc_exponent(sce, cfg, out, err);
    if (s_pa->parsed()) return cmd_pa_sweep(pa, cfg, out, err);
    if (s_adv->parsed()) return cmd_adversary(adv_config, adv_out, cfg, out, err);
    if (s_ver->parsed()) return cmd_verify(ver, out, err);
  } catch (const ResourceError& e) {
    err << "scx: resource limit: " << e.what() << '\n';
    return kResourceGuard;
  } catch (const ValidationError& e) {
    err << "scx: invalid input: " << e.what() << '\n';
    return kInputError;
  } catch (const DomainError& e) {
    err << "scx: invalid parameter: " << e.what() << '\n';
    return kInputError;
  } catch (const InputError& e) {
    err << "scx: " << e.what() << '\n';
    return kInputError;
  } catch (const json::exception& e) {
    err << "scx: malformed config: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    err << "scx: error: " << e.what() << '\n';
    return kVerificationFailure;
  }
  return kInputError;
}

}  // namespace scx::cli
