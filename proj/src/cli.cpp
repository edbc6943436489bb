#include "infogeom/cli.hpp"

#include <cstdlib>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "infogeom/detailed_balance.hpp"
#include "infogeom/divergence.hpp"
#include "infogeom/io.hpp"
#include "infogeom/recovery.hpp"

namespace infogeom {

namespace {

using nlohmann::json;

constexpr int kExitSchema = 2;
constexpr int kExitRank = 3;
constexpr int kExitUnsupported = 4;
constexpr int kExitAssert = 5;

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

struct CommonOpts {
  std::vector<std::string> monotones{"bures"};
  double total_time = 2.0;
  double dt = 1e-3;
  std::uint64_t seed = 1;
  std::string out;
  std::string format;  // empty means the command's native format
  bool assert_mode = false;
  double tolerance = 0.0;  // 0 means per-command default
  int threads = 1;

  void require_format(const std::string& native) const {
    if (!format.empty() && format != native)
      throw SchemaError("this command emits " + native + " output only");
  }

  std::string config_string(const std::string& cmd) const {
    std::ostringstream ss;
    ss << cmd;
    for (const auto& f : monotones) ss << " f=" << f;
    ss << " T=" << format_double(total_time) << " dt=" << format_double(dt)
       << " seed=" << seed << " tol=" << format_double(tolerance);
    return ss.str();
  }
};

void add_common(CLI::App* app, CommonOpts& o) {
  app->add_option("--f", o.monotones, "monotone names (registry keys)");
  app->add_option("--T", o.total_time, "time horizon");
  app->add_option("--dt", o.dt, "time step")->check(CLI::PositiveNumber);
  app->add_option("--seed", o.seed, "random seed");
  app->add_option("--out", o.out, "output path (stdout when empty)");
  app->add_option("--format", o.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  app->add_flag("--assert", o.assert_mode, "exit 5 when a verdict fails");
  app->add_option("--tolerance", o.tolerance, "tolerance override");
}

void emit(const CommonOpts& o, const std::string& content) {
  if (o.out.empty())
    std::cout << content;
  else
    write_file_atomic(o.out, content);
}

std::string csv_header(const CommonOpts& o, const std::string& cmd,
                       double effective_tol) {
  std::ostringstream ss;
  std::string cfg = o.config_string(cmd);
  ss << "# config: " << cfg << "\n";
  ss << "# config_hash: " << std::hex << fnv1a(cfg) << std::dec << "\n";
  ss << "# tolerance: " << format_double(effective_tol) << "\n";
  return ss.str();
}

std::pair<DensityMatrix, DensityMatrix> read_state_pair(const std::string& path) {
  json j = json::parse(slurp_file(path), nullptr, false);
  if (j.is_discarded() || !j.contains("rho") || !j.contains("sigma"))
    throw SchemaError("states file must carry 'rho' and 'sigma'");
  MatrixReadResult rho = read_hermitian_json(j.at("rho").dump());
  MatrixReadResult sigma = read_hermitian_json(j.at("sigma").dump());
  return {DensityMatrix(rho.matrix), DensityMatrix(sigma.matrix)};
}

// ----------------------------------------------------------------- metric

int cmd_metric(const CommonOpts& o, const std::string& states_path) {
  o.require_format("json");
  auto [rho, sigma] = read_state_pair(states_path);
  Mat delta = sigma.matrix() - rho.matrix();
  json out;
  json per_f = json::object();
  for (const std::string& name : o.monotones) {
    StandardMonotone f = monotone_by_name(name);
    json row;
    row["fisher_information"] = fisher_information(f, rho, delta);
    row["chi2"] = chi2(f, rho, sigma).value;
    per_f[name] = row;
  }
  out["monotones"] = per_f;
  json named;
  named["relative_entropy"] = relative_entropy(rho, sigma).value;
  named["bures_contrast"] = bures_contrast(rho, sigma).value;
  named["wy_contrast"] = wy_contrast(rho, sigma).value;
  named["harmonic_contrast"] = harmonic_contrast(rho, sigma).value;
  named["sq_contrast"] = sq_contrast(rho, sigma).value;
  named["info_variance"] = quantum_info_variance(rho, sigma).value;
  named["fidelity"] = fidelity(rho, sigma);
  named["trace_distance"] = trace_distance(rho, sigma);
  out["divergences"] = named;
  out["config_hash"] = fnv1a(o.config_string("metric"));
  emit(o, out.dump(2) + "\n");
  return 0;
}

// ----------------------------------------------------------------- evolve

struct EvolveSetup {
  std::vector<Mat> jumps;
  std::function<RVec(double)> rates;
  std::function<Mat(double)> state;
  std::function<Mat(double)> tangent;
  bool closed_form = false;
  Lindbladian lind{Mat::Zero(2, 2), {}, RVec()};
  DensityMatrix pi0;
  TangentVector drho0;
};

Mat pauli(int k) {
  switch (k) {
    case 0: return Mat{{Cplx(0, 0), Cplx(1, 0)}, {Cplx(1, 0), Cplx(0, 0)}};
    case 1: return Mat{{Cplx(0, 0), Cplx(0, -1)}, {Cplx(0, 1), Cplx(0, 0)}};
    default: return Mat{{Cplx(1, 0), Cplx(0, 0)}, {Cplx(0, 0), Cplx(-1, 0)}};
  }
}

EvolveSetup make_setup(const std::string& preset, const std::string& generator_path) {
  EvolveSetup setup;
  Mat pi0 = 0.5 * Mat::Identity(2, 2) + 0.2 * pauli(2);
  Mat dr0 = 0.08 * pauli(0) + 0.06 * pauli(2);
  if (preset == "depolarizing:markov" || preset == "depolarizing:nonmarkov") {
    DepolarizingFamily fam =
        depolarizing_family(preset.substr(std::string("depolarizing:").size()));
    Lindbladian gen = fam.generator();
    setup.jumps = gen.jumps();
    setup.rates = [gen](double t) { return gen.rates(t); };
    setup.state = [fam, pi0](double t) { return fam.state(t, pi0); };
    setup.tangent = [fam, dr0](double t) { return Mat((1.0 - fam.lambda(t)) * dr0); };
    setup.closed_form = true;
    setup.pi0 = DensityMatrix(pi0);
    setup.drho0 = TangentVector(dr0);
    return setup;
  }
  if (preset == "amplitude-damping") {
    Mat a = Mat::Zero(2, 2);
    a(0, 1) = 1.0;
    RVec r(1);
    r << 1.0;
    setup.lind = Lindbladian(Mat::Zero(2, 2), {a}, r);
    setup.pi0 = DensityMatrix(Mat(Mat{{Cplx(0.3, 0), Cplx(0, 0)}, {Cplx(0, 0), Cplx(0.7, 0)}}));
    setup.drho0 = TangentVector(dr0);
    return setup;
  }
  if (!preset.empty()) throw SchemaError("unknown preset '" + preset + "'");
  setup.lind = read_generator_json(slurp_file(generator_path));
  Eigen::Index d = setup.lind.dim();
  setup.pi0 = random_density(d, d, 11);
  setup.drho0 = random_tangent(d, 13);
  return setup;
}

int cmd_evolve(const CommonOpts& o, const std::string& preset,
               const std::string& generator_path, bool fallback_fd) {
  o.require_format("csv");
  EvolveSetup setup = make_setup(preset, generator_path);
  StandardMonotone f = monotone_by_name(o.monotones.front());

  if (!f.measure && !fallback_fd)
    throw UnsupportedMeasureError("monotone '" + f.name +
                                  "' has no dN measure; pass --fallback-fd for the "
                                  "finite-difference-only trajectory");

  std::ostringstream csv;
  csv << csv_header(o, "evolve " + preset, o.tolerance);
  if (f.measure) {
    FluxReport rep =
        setup.closed_form
            ? flux_report_family(f, setup.jumps, setup.rates, setup.state,
                                 setup.tangent, o.total_time, o.dt)
            : flux_report(f, setup.lind, setup.pi0, setup.drho0, o.total_time, o.dt);
    csv << "t,F_f,Fprime_analytic,Fprime_fd";
    Eigen::Index na = rep.samples.empty() ? 0 : rep.samples.front().rates.size();
    for (Eigen::Index a = 0; a < na; ++a) csv << ",rate_" << a;
    for (Eigen::Index a = 0; a < na; ++a) csv << ",current_" << a;
    csv << "\n";
    for (const FluxSample& s : rep.samples) {
      csv << format_double(s.t) << "," << format_double(s.fisher) << ","
          << format_double(s.fprime_flux) << "," << format_double(s.fprime_fd);
      for (Eigen::Index a = 0; a < na; ++a) csv << "," << format_double(s.rates(a));
      for (Eigen::Index a = 0; a < na; ++a) csv << "," << format_double(s.currents(a));
      csv << "\n";
    }
  } else {
    auto series = setup.closed_form
                      ? [&] {
                          std::vector<std::pair<double, double>> out;
                          std::size_t steps = std::size_t(std::round(o.total_time / o.dt));
                          for (std::size_t k = 0; k <= steps; ++k) {
                            double t = double(k) * o.dt;
                            out.push_back({t, fisher_information(
                                                  f, DensityMatrix(setup.state(t)),
                                                  setup.tangent(t))});
                          }
                          return out;
                        }()
                      : fisher_trajectory(f, setup.lind, setup.pi0, setup.drho0,
                                          o.total_time, o.dt);
    csv << "t,F_f,Fprime_fd\n";
    for (std::size_t k = 0; k < series.size(); ++k) {
      double fd = std::numeric_limits<double>::quiet_NaN();
      if (k >= 2 && k + 2 < series.size()) {
        double d1 = series[k + 1].second - series[k - 1].second;
        double d2 = series[k + 2].second - series[k - 2].second;
        fd = (8.0 * d1 - d2) / (12.0 * o.dt);
      }
      csv << format_double(series[k].first) << "," << format_double(series[k].second)
          << "," << format_double(fd) << "\n";
    }
  }
  emit(o, csv.str());
  return 0;
}

// ----------------------------------------------------------------- markov

int cmd_markov(const CommonOpts& o, const std::string& preset,
               const std::string& generator_path) {
  o.require_format("json");
  json out;
  if (preset == "classical-counterexample") {
    // negative classical rate that no traceless qubit vector can witness
    TraceDistanceCounterexample ce = trace_distance_counterexample();
    out["verdict"] = "NON-MARKOVIAN";
    out["rates"] = {{"a_1<-2", ce.rates.rate(0, 1)}, {"a_2<-1", ce.rates.rate(1, 0)}};
    out["worst_traceless_trace_distance_derivative"] = ce.worst_traceless_derivative;
    out["embedded_witness_derivative"] = ce.embedded_witness_derivative;
    out["config_hash"] = fnv1a(o.config_string("markov " + preset));
    emit(o, out.dump(2) + "\n");
    return o.assert_mode ? kExitAssert : 0;
  }
  if (preset.rfind("depolarizing:", 0) == 0) {
    DepolarizingFamily fam =
        depolarizing_family(preset.substr(std::string("depolarizing:").size()));
    double min_rate = std::numeric_limits<double>::infinity();
    double witness_t = 0;
    std::size_t steps = std::size_t(std::round(o.total_time / o.dt));
    for (std::size_t k = 0; k <= steps; ++k) {
      double t = double(k) * o.dt;
      double r = fam.gamma(t) / 2.0;
      if (std::isfinite(r) && r < min_rate) {
        min_rate = r;
        witness_t = t;
      }
    }
    double tol = o.tolerance > 0 ? o.tolerance : 1e-9;
    out["min_rate"] = min_rate;
    out["witness_time"] = witness_t;
    out["tolerance"] = tol;
    out["verdict"] = min_rate >= -tol ? "MARKOVIAN"
                     : (min_rate < -1e-6 ? "NON-MARKOVIAN" : "INDETERMINATE");
    // Fisher side on the pinned initial data
    Mat pi0 = 0.5 * Mat::Identity(2, 2) + 0.2 * pauli(2);
    Mat dr0 = 0.08 * pauli(0) + 0.06 * pauli(2);
    StandardMonotone f = monotone_by_name(o.monotones.front());
    int sign_changes = 0;
    double prev = 0;
    double prev_f = fisher_information(f, DensityMatrix(fam.state(0.0, pi0)), dr0);
    for (std::size_t k = 1; k <= steps; ++k) {
      double t = double(k) * o.dt;
      double cur_f = fisher_information(f, DensityMatrix(fam.state(t, pi0)),
                                        Mat((1.0 - fam.lambda(t)) * dr0));
      double rate = cur_f - prev_f;
      if (std::abs(rate) > 1e-14) {
        if (prev != 0 && rate * prev < 0) ++sign_changes;
        prev = rate;
      }
      prev_f = cur_f;
    }
    out["fisher_prime_sign_changes"] = sign_changes;
  } else {
    Lindbladian lind = read_generator_json(slurp_file(generator_path));
    MarkovReport rep = markov_report(lind, o.total_time, o.dt, o.seed);
    out["min_rate"] = rep.min_rate;
    out["witness_time"] = rep.witness_time;
    out["witness_alpha"] = rep.witness_alpha;
    out["max_fisher_rate"] = rep.max_fisher_rate;
    out["fisher_expansion_found"] = rep.fisher_expansion_found;
    switch (rep.verdict) {
      case MarkovReport::Verdict::Markovian: out["verdict"] = "MARKOVIAN"; break;
      case MarkovReport::Verdict::NonMarkovian: out["verdict"] = "NON-MARKOVIAN"; break;
      default: out["verdict"] = "INDETERMINATE";
    }
  }
  out["config_hash"] = fnv1a(o.config_string("markov " + preset));
  emit(o, out.dump(2) + "\n");
  if (o.assert_mode && out["verdict"] != "MARKOVIAN") return kExitAssert;
  return 0;
}

// ----------------------------------------------------------------- recover

int cmd_recover(const CommonOpts& o, const std::string& preset,
                const std::string& fprime_name) {
  o.require_format("csv");
  if (preset.rfind("depolarizing:", 0) != 0)
    throw SchemaError("recover requires a depolarizing preset");
  DepolarizingFamily fam =
      depolarizing_family(preset.substr(std::string("depolarizing:").size()));
  StandardMonotone f = monotone_by_name(o.monotones.front());
  StandardMonotone fp = monotone_by_name(fprime_name);
  Mat pi0 = 0.5 * Mat::Identity(2, 2) + 0.2 * pauli(2);
  Mat dr0 = 0.004 * pauli(0) + 0.003 * pauli(2);
  auto family = [&](double t) { return fam.channel(t); };
  auto series = retrodiction_trajectory(fp, f, DensityMatrix(pi0), dr0, family,
                                        o.total_time, o.dt);
  std::ostringstream csv;
  csv << csv_header(o, "recover " + preset, o.tolerance);
  csv << "t,fisher_f,retrieval_divergence,expansion_flag\n";
  for (const RetrodictionSample& s : series)
    csv << format_double(s.t) << "," << format_double(s.fisher) << ","
        << format_double(s.retrieval) << "," << (s.expansion ? 1 : 0) << "\n";
  emit(o, csv.str());
  return 0;
}

// ----------------------------------------------------------------- dbalance

int cmd_dbalance(const CommonOpts& o, const std::string& preset,
                 const std::string& generator_path, const std::string& state_path) {
  o.require_format("json");
  SuperOperator gen = SuperOperator::zero(2);
  Mat h;
  DensityMatrix pi;
  if (preset == "fisher-only") {
    double beta = 1.0;
    Mat pim = Mat::Zero(2, 2);
    pim(0, 0) = 1.0 / (1.0 + std::exp(-beta));
    pim(1, 1) = std::exp(-beta) / (1.0 + std::exp(-beta));
    pi = DensityMatrix(pim);
    Mat a = Mat::Zero(2, 2);
    a(0, 1) = 1.0;
    a(1, 0) = std::exp(-beta / 2.0);
    double norm = std::sqrt(1.0 + std::exp(-beta));
    RVec r(1);
    r << norm * norm;
    Lindbladian lind(Mat::Zero(2, 2), {a / norm}, r);
    gen = lind.generator();
    h = lind.hamiltonian();
  } else {
    Lindbladian lind = read_generator_json(slurp_file(generator_path));
    MatrixReadResult st = read_hermitian_json(slurp_file(state_path));
    pi = DensityMatrix(st.matrix);
    gen = lind.generator();
    h = lind.hamiltonian();
  }
  DBReport rep = db_report(gen, h, pi, /*decompose=*/false);
  double tol = o.tolerance > 0 ? o.tolerance : 1e-8;
  bool fisher_pass = rep.fisher.max_residual() < tol;
  bool alicki_pass = rep.alicki.max_residual() < tol;
  json out;
  out["tolerance"] = tol;
  out["fisher"] = fisher_pass ? "PASS" : "FAIL";
  out["alicki"] = alicki_pass ? "PASS" : "FAIL";
  out["fisher_residuals"] = {{"offsector", rep.fisher.offsector_residual},
                             {"rate_relation", rep.fisher.rate_relation_residual},
                             {"hamiltonian", rep.fisher.hamiltonian_residual},
                             {"normality", rep.fisher.normality_residual}};
  json perf = json::object();
  for (const auto& [name, r] : rep.fisher.per_f_residual) perf[name] = r;
  out["fisher_per_f"] = perf;
  out["alicki_residuals"] = {{"normality", rep.alicki.normality_residual},
                             {"skew", rep.alicki.skew_residual},
                             {"dissipator", rep.alicki.dissipator_residual}};
  out["modular_commutator_norm"] = rep.modular_commutator;
  if (fisher_pass) {
    StructuralDecomposition dec = structural_decompose(gen, pi);
    json sectors = json::array();
    for (const SectorTerm& t : dec.jump_terms)
      sectors.push_back({{"kind", "jump"}, {"omega", t.omega}, {"weight", t.weight}});
    for (const SectorTerm& t : dec.transpose_terms)
      sectors.push_back(
          {{"kind", "transpose"}, {"omega", t.omega}, {"weight", t.weight}});
    out["sectors"] = sectors;
    out["resynthesis_residual"] = dec.resynthesis_residual;
  }
  std::cout << "fisher: " << (fisher_pass ? "PASS" : "FAIL")
            << ", alicki: " << (alicki_pass ? "PASS" : "FAIL") << "\n";
  if (!o.out.empty()) write_file_atomic(o.out, out.dump(2) + "\n");
  if (o.assert_mode && !fisher_pass) return kExitAssert;
  return 0;
}

// ----------------------------------------------------------------- geodesic

int cmd_geodesic(const CommonOpts& o, const std::string& states_path, int samples) {
  o.require_format("json");
  auto [rho, sigma] = read_state_pair(states_path);
  json out;
  out["fidelity"] = fidelity(rho, sigma);
  out["bures_distance"] = bures_distance(rho, sigma);
  out["bures_length"] = bures_length(rho, sigma);
  out["wy_distance"] = wy_distance(rho, sigma);
  if (samples > 0) {
    json path = json::array();
    for (int k = 0; k <= samples; ++k) {
      double t = double(k) / samples;
      DensityMatrix p = wy_geodesic_path(rho, sigma, t);
      path.push_back(json::parse(write_matrix_json(p.matrix())));
    }
    out["wy_path"] = path;
  }
  out["config_hash"] = fnv1a(o.config_string("geodesic"));
  emit(o, out.dump(2) + "\n");
  return 0;
}

// ----------------------------------------------------------------- estimate

int cmd_estimate(const CommonOpts& o, const std::string& states_path, double theta0) {
  o.require_format("json");
  auto [rho0, rho1] = read_state_pair(states_path);
  json out;
  ChernoffResult ch = chernoff_optimize(rho0, rho1);
  out["chernoff_s_star"] = ch.s_star;
  out["chernoff_xi"] = ch.xi;
  Mat delta = rho1.matrix() - rho0.matrix();
  if (rho0.full_rank()) {
    out["chernoff_local"] = chernoff_local(rho0, delta, 1.0);
    Mat r0 = rho0.matrix();
    auto family = [&, delta](double th) {
      return DensityMatrix(Mat(r0 + th * delta));
    };
    for (const std::string& name : o.monotones)
      out["cramer_rao_bound"][name] =
          cramer_rao_bound(monotone_by_name(name), family, theta0);
  }
  out["config_hash"] = fnv1a(o.config_string("estimate"));
  emit(o, out.dump(2) + "\n");
  return 0;
}

// ----------------------------------------------------------------- garden

int cmd_garden(const CommonOpts& o) {
  double tol = o.tolerance > 0 ? o.tolerance : 1e-9;
  auto tri = [](TriState t) {
    switch (t) {
      case TriState::Yes: return "yes";
      case TriState::No: return "no";
      default: return "unknown";
    }
  };
  std::vector<StandardMonotone> garden = catalog();
  for (const std::string& extra :
       {"alpha:0.1", "alpha:0.5", "alpha:0.7", "heinz-lt:0.2", "heinz-lt:0.5"})
    garden.push_back(monotone_by_name(extra));

  bool all_ok = true;
  json rows = json::array();
  for (const StandardMonotone& f : garden) {
    MonotoneCheck c = check_monotone(f);
    json row;
    row["name"] = f.name;
    row["f_at_1"] = f.eval(1.0);
    row["symmetry_err"] = c.symmetry_err;
    row["bounds_ok"] = c.bound_violation < 1e-10;
    row["monotone_ok"] = c.monotone_violation < 1e-10;
    row["cp_plus"] = tri(f.cp_plus);
    row["cp_minus"] = tri(f.cp_minus);
    if (f.measure) {
      double norm = measure_quadrature(
          *f.measure, [](double s) { return 2.0 / (1.0 + s); });
      row["measure_norm"] = norm;
      if (std::abs(norm - 1.0) > tol) all_ok = false;
    }
    if (!c.pass()) all_ok = false;
    rows.push_back(std::move(row));
  }

  if (o.format == "json") {
    emit(o, json{{"monotones", rows}, {"tolerance", tol}}.dump(2) + "\n");
  } else {
    std::ostringstream table;
    table << csv_header(o, "garden", tol);
    table << "name,f(1),symmetry_err,bounds_ok,monotone_ok,cp_plus,cp_minus,"
             "measure_norm\n";
    for (const json& row : rows) {
      table << row["name"].get<std::string>() << ","
            << format_double(row["f_at_1"].get<double>()) << ","
            << format_double(row["symmetry_err"].get<double>()) << ","
            << (row["bounds_ok"].get<bool>() ? 1 : 0) << ","
            << (row["monotone_ok"].get<bool>() ? 1 : 0) << ","
            << row["cp_plus"].get<std::string>() << ","
            << row["cp_minus"].get<std::string>() << ","
            << (row.contains("measure_norm")
                    ? format_double(row["measure_norm"].get<double>())
                    : "-")
            << "\n";
    }
    emit(o, table.str());
  }
  if (o.assert_mode && !all_ok) return kExitAssert;
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"quantum information geometry toolkit"};
  app.require_subcommand(1);

  CommonOpts opts;
  if (const char* env = std::getenv("INFOGEOM_THREADS")) {
    int n = std::atoi(env);
    opts.threads = n >= 1 ? n : 1;
  }

  std::string states_path, generator_path, state_path, preset, fprime = "sqrt";
  bool fallback_fd = false;
  int path_samples = 0;
  double theta0 = 0.2;

  CLI::App* metric = app.add_subcommand("metric", "Fisher table for a state pair");
  metric->add_option("--states", states_path, "states JSON file")->required();
  add_common(metric, opts);

  CLI::App* evolve = app.add_subcommand("evolve", "Fisher flux trajectory CSV");
  evolve->add_option("--generator", generator_path, "generator JSON file");
  evolve->add_option("--preset", preset,
                     "depolarizing:markov | depolarizing:nonmarkov | amplitude-damping");
  evolve->add_flag("--fallback-fd", fallback_fd,
                   "finite differences only, for measure-less monotones");
  add_common(evolve, opts);

  CLI::App* markov = app.add_subcommand("markov", "Markovianity report");
  markov->add_option("--generator", generator_path, "generator JSON file");
  markov->add_option("--preset", preset, "depolarizing preset");
  add_common(markov, opts);

  CLI::App* recover = app.add_subcommand("recover", "retrodiction trajectory CSV");
  recover->add_option("--preset", preset, "depolarizing preset")->required();
  recover->add_option("--fprime", fprime, "recovery monotone f'");
  add_common(recover, opts);

  CLI::App* dbalance = app.add_subcommand("dbalance", "detailed balance report");
  dbalance->add_option("--generator", generator_path, "generator JSON file");
  dbalance->add_option("--state", state_path, "stationary state JSON file");
  dbalance->add_option("--preset", preset, "fisher-only");
  add_common(dbalance, opts);

  CLI::App* geodesic = app.add_subcommand("geodesic", "distances and WY path");
  geodesic->add_option("--states", states_path, "states JSON file")->required();
  geodesic->add_option("--samples", path_samples, "path sample count");
  add_common(geodesic, opts);

  CLI::App* estimate = app.add_subcommand("estimate", "Chernoff and Cramer-Rao");
  estimate->add_option("--states", states_path, "states JSON file")->required();
  estimate->add_option("--theta", theta0, "base point of the line family");
  add_common(estimate, opts);

  CLI::App* garden = app.add_subcommand("garden", "monotone catalog table");
  add_common(garden, opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitSchema;
  }

  try {
    if (metric->parsed()) return cmd_metric(opts, states_path);
    if (evolve->parsed()) return cmd_evolve(opts, preset, generator_path, fallback_fd);
    if (markov->parsed()) return cmd_markov(opts, preset, generator_path);
    if (recover->parsed()) return cmd_recover(opts, preset, fprime);
    if (dbalance->parsed()) return cmd_dbalance(opts, preset, generator_path, state_path);
    if (geodesic->parsed()) return cmd_geodesic(opts, states_path, path_samples);
    if (estimate->parsed()) return cmd_estimate(opts, states_path, theta0);
    if (garden->parsed()) return cmd_garden(opts);
  } catch (const SchemaError& e) {
    std::cerr << "schema error: " << e.what() << "\n";
    return kExitSchema;
  } catch (const RankError& e) {
    std::cerr << "rank error: " << e.what() << "\n";
    return kExitRank;
  } catch (const UnsupportedMeasureError& e) {
    std::cerr << "unsupported measure: " << e.what() << "\n";
    return kExitUnsupported;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace infogeom
