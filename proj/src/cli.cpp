#include "psm/cli.hpp"

#include "psm/error.hpp"
#include "psm/models.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

namespace psm::cli {

namespace {

using nlohmann::json;

constexpr double kHbarSI = 1.054571817e-34;     // J s
constexpr double kBohrRadiusSI = 5.29177210903e-11; // m
constexpr double kHartreeSI = 4.3597447222071e-18;  // J

struct Tolerances {
  double eig = 1e-4;
  double matching = 1e-9;
  double gram = 1e-6;
  double tise = 1e-5;
};

struct RunConfig {
  std::string model;
  std::string units = "natural";
  std::optional<double> mass, omega, hbar, mu, bond_length, a0, eg, de, alpha, delta;
  std::optional<int> n_max;
  std::optional<int> l_max;
  std::string format = "json";
  std::string output;
  Tolerances tol;
  std::size_t oracle_points = 0;

  // wavefunction / portrait
  int n = 0;
  std::optional<int> l;
  int ml = 0;
  std::size_t points = 0;
  std::optional<double> q_min, q_max;
  std::optional<double> epsilon;
  std::optional<double> x_min, x_max;
  double phi0 = 1.0;
  double dphi0 = 0.0;

  // verify
  std::string inject_error;
};

struct Check {
  std::string name;
  double value = 0.0;
  double tol = 0.0;
  bool pass() const { return std::isfinite(value) && value <= tol; }
};

json to_json(const Check &c) {
  return {{"name", c.name}, {"value", c.value}, {"tol", c.tol}, {"pass", c.pass()}};
}

json to_json(const QuantumNumbers &qn, ModelKind kind) {
  switch (kind) {
  case ModelKind::harmonic:
  case ModelKind::morse: return {{"n", qn.n}};
  case ModelKind::rotor: return {{"l", qn.l}, {"m", qn.m}};
  case ModelKind::hydrogen: return {{"n", qn.n}, {"l", qn.l}};
  }
  return {};
}

ModelSystem build_model(const RunConfig &c) {
  const bool si = c.units == "si";
  const double hbar = c.hbar.value_or(si ? kHbarSI : 1.0);
  ModelSystem model;
  if (c.model == "harmonic") {
    HarmonicOscillatorParams p{c.mass.value_or(1.0), c.omega.value_or(1.0), hbar};
    p.validate();
    model = p;
  } else if (c.model == "rotor") {
    RigidRotorParams p{c.mu.value_or(c.mass.value_or(1.0)), c.bond_length.value_or(1.0),
                       hbar};
    p.validate();
    model = p;
  } else if (c.model == "hydrogen") {
    HydrogenParams p{c.a0.value_or(si ? kBohrRadiusSI : 1.0),
                     c.eg.value_or(si ? -0.5 * kHartreeSI : -0.5)};
    p.validate();
    model = p;
  } else if (c.model == "morse") {
    const double m = c.mass.value_or(1.0);
    const double de = c.de.value_or(1.0);
    MorseParams p;
    if (c.delta) {
      if (c.alpha) {
        throw Error(ErrorCode::invalid_parameter, "give either --alpha or --delta, not both");
      }
      if (!(*c.delta > 0.5)) {
        std::ostringstream os;
        os << "no bound states: δ ≤ 1/2 (delta = " << *c.delta << ")";
        throw Error(ErrorCode::no_bound_states, os.str());
      }
      p = MorseParams::from_delta(m, de, *c.delta, hbar);
    } else {
      p = MorseParams{m, de, c.alpha.value_or(1.0), hbar};
    }
    p.validate();
    model = p;
  } else {
    throw Error(ErrorCode::invalid_parameter, "unknown model '" + c.model + "'");
  }
  return model;
}

json params_json(const ModelSystem &model) {
  return std::visit(
      [](const auto &p) -> json {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, HarmonicOscillatorParams>) {
          return {{"m", p.mass}, {"omega", p.omega}, {"hbar", p.hbar},
                  {"x_c", p.length_scale()}};
        } else if constexpr (std::is_same_v<T, RigidRotorParams>) {
          return {{"mu", p.reduced_mass}, {"R", p.bond_length}, {"hbar", p.hbar},
                  {"I", p.moment_of_inertia()}};
        } else if constexpr (std::is_same_v<T, HydrogenParams>) {
          return {{"a0", p.bohr_radius}, {"E_g", p.ground_energy}};
        } else {
          return {{"m", p.mass}, {"D_e", p.well_depth}, {"alpha", p.range},
                  {"hbar", p.hbar}, {"delta", p.delta()}};
        }
      },
      model);
}

/// Natural energy unit used to make oracle deltas relative.
double energy_unit(const ModelSystem &model) {
  return std::visit(
      [](const auto &p) -> double {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, HarmonicOscillatorParams>) {
          return p.hbar * p.omega;
        } else if constexpr (std::is_same_v<T, RigidRotorParams>) {
          return p.hbar * p.hbar / (2.0 * p.moment_of_inertia());
        } else if constexpr (std::is_same_v<T, HydrogenParams>) {
          return -p.ground_energy;
        } else {
          return p.well_depth;
        }
      },
      model);
}

int default_n_max(const RunConfig &c) {
  if (c.model == "rotor") return c.l_max.value_or(c.n_max.value_or(3));
  if (c.model == "hydrogen") return c.n_max.value_or(3);
  return c.n_max.value_or(5);
}

std::vector<QuantumNumbers> states_for(const ModelSystem &model, const RunConfig &c) {
  return state_list(model, default_n_max(c));
}

struct OracleComparison {
  QuantumNumbers qn;
  double epsilon = 0.0;
  double energy = 0.0;
  double oracle_energy = 0.0;
  double delta = 0.0;
};

std::vector<OracleComparison> compare_with_oracle(const ModelSystem &model,
                                                  const std::vector<QuantumNumbers> &states,
                                                  const RunConfig &c) {
  OracleSettings settings;
  settings.n_points = c.oracle_points;
  const auto levels = oracle_levels(model, states, settings);
  const double unit = energy_unit(model);
  std::vector<OracleComparison> out;
  for (std::size_t i = 0; i < states.size(); ++i) {
    const MatchSolution sol = match(model, states[i]);
    const double e = sol.energy();
    out.push_back({states[i], *sol.tise.epsilon, e, levels[i].energy,
                   std::abs(e - levels[i].energy) / std::max(std::abs(e), unit)});
  }
  return out;
}

class Sink {
public:
  Sink(const RunConfig &c, std::ostream &fallback) {
    if (!c.output.empty()) {
      file_.open(c.output, std::ios::binary);
      if (!file_) {
        throw Error(ErrorCode::invalid_parameter, "cannot open output file " + c.output);
      }
    }
    os_ = c.output.empty() ? &fallback : &file_;
    *os_ << std::setprecision(std::numeric_limits<double>::max_digits10);
  }
  std::ostream &stream() { return *os_; }

private:
  std::ofstream file_;
  std::ostream *os_ = nullptr;
};

int exit_for(const std::vector<Check> &checks) {
  return std::all_of(checks.begin(), checks.end(), [](const Check &k) { return k.pass(); })
             ? kExitOk
             : kExitCheckFailed;
}

void write_checks_csv(std::ostream &os, const std::vector<Check> &checks) {
  for (const auto &k : checks) {
    os << "# check " << k.name << " value=" << k.value << " tol=" << k.tol
       << " pass=" << (k.pass() ? "true" : "false") << '\n';
  }
}

// --- subcommands ---------------------------------------------------------------

int cmd_spectrum(const RunConfig &c, std::ostream &out) {
  const ModelSystem model = build_model(c);
  const ModelKind kind = kind_of(model);
  const auto rows = compare_with_oracle(model, states_for(model, c), c);

  double worst = 0.0;
  for (const auto &r : rows) worst = std::max(worst, r.delta);
  const std::vector<Check> checks{{"oracle_delta_max", worst, c.tol.eig}};

  Sink sink(c, out);
  auto &os = sink.stream();
  if (c.format == "csv") {
    write_checks_csv(os, checks);
    os << "n,l,m,epsilon,energy,oracle_energy,delta\n";
    for (const auto &r : rows) {
      os << r.qn.n << ',' << r.qn.l << ',' << r.qn.m << ',' << r.epsilon << ','
         << r.energy << ',' << r.oracle_energy << ',' << r.delta << '\n';
    }
  } else {
    json states = json::array();
    for (const auto &r : rows) {
      states.push_back({{"qn", to_json(r.qn, kind)},
                        {"epsilon", r.epsilon},
                        {"energy", r.energy},
                        {"oracle_energy", r.oracle_energy},
                        {"delta", r.delta}});
    }
    json doc{{"model", std::string(to_string(kind))},
             {"params", params_json(model)},
             {"states", states},
             {"checks", json::array({to_json(checks[0])})}};
    os << doc.dump(2) << '\n';
  }
  return exit_for(checks);
}

int cmd_wavefunction(const RunConfig &c, std::ostream &out) {
  const ModelSystem model = build_model(c);
  const ModelKind kind = kind_of(model);
  QuantumNumbers qn{c.n, c.l.value_or(0), c.ml};
  if (kind == ModelKind::hydrogen && c.n == 0) qn.n = 1;
  const Eigenstate st = make_eigenstate(model, qn);

  const double lo = c.q_min.value_or(st.support.lower);
  const double hi = c.q_max.value_or(st.support.upper);
  const std::size_t pts = c.points != 0 ? c.points : 201;
  const Grid grid(lo, hi, pts);

  std::vector<double> samples(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) samples[i] = st.wavefunction(grid.at(i));

  Sink sink(c, out);
  auto &os = sink.stream();
  if (c.format == "csv") {
    os << "# model=" << to_string(kind) << " energy=" << st.energy << " norm=" << st.norm
       << " measure=" << st.measure_label << '\n';
    os << "q,psi\n";
    for (std::size_t i = 0; i < grid.size(); ++i) os << grid.at(i) << ',' << samples[i] << '\n';
  } else {
    json doc{{"model", std::string(to_string(kind))},
             {"params", params_json(model)},
             {"qn", to_json(qn, kind)},
             {"energy", st.energy},
             {"epsilon", st.epsilon},
             {"norm", st.norm},
             {"measure", st.measure_label},
             {"q", grid.nodes()},
             {"psi", samples}};
    os << doc.dump(2) << '\n';
  }
  return kExitOk;
}

std::optional<double> parse_injection(const std::string &spec) {
  if (spec.empty()) return std::nullopt;
  const std::string key = "epsilon";
  if (spec.rfind(key, 0) != 0 || spec.size() <= key.size()) {
    throw Error(ErrorCode::invalid_parameter,
                "--inject-error expects epsilon+<value> or epsilon-<value>");
  }
  try {
    std::size_t used = 0;
    const std::string rest = spec.substr(key.size());
    const double v = std::stod(rest, &used);
    if (used != rest.size()) throw std::invalid_argument(rest);
    return v;
  } catch (const std::exception &) {
    throw Error(ErrorCode::invalid_parameter, "cannot parse --inject-error '" + spec + "'");
  }
}

// States whose eigenfunctions must be mutually orthogonal, grouped by the
// conserved quantum number of the family.
std::map<int, std::vector<std::size_t>> orthogonality_groups(
    ModelKind kind, const std::vector<QuantumNumbers> &states) {
  std::map<int, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < states.size(); ++i) {
    int key = 0;
    if (kind == ModelKind::rotor) key = states[i].m;
    if (kind == ModelKind::hydrogen) key = states[i].l;
    groups[key].push_back(i);
  }
  return groups;
}

int cmd_verify(const RunConfig &c, std::ostream &out) {
  const ModelSystem model = build_model(c);
  const ModelKind kind = kind_of(model);
  const auto states = states_for(model, c);
  const std::optional<double> shift = parse_injection(c.inject_error);

  const auto oracle = compare_with_oracle(model, states, c);
  std::vector<Eigenstate> eig;
  for (const auto &qn : states) eig.push_back(make_eigenstate(model, qn));

  double matching_max = 0.0;
  double tise_max = 0.0;
  int node_failures = 0;
  json state_rows = json::array();
  for (std::size_t i = 0; i < states.size(); ++i) {
    const QuantumNumbers &qn = states[i];
    MatchSolution sol = match(model, qn);
    if (shift) sol.tise.epsilon = *sol.tise.epsilon + *shift;
    const Grid vgrid = verification_grid(model, qn);
    const double matching = verify_match(sol.tise, sol.template_ode, vgrid);
    const RealFunction phi = wavefunction_from_match(sol, polynomial_spec(sol));
    const double tise = tise_residual_max(phi, sol.tise, vgrid);

    const Grid sgrid = support_grid(eig[i], 4001);
    std::vector<double> samples(sgrid.size());
    for (std::size_t k = 0; k < sgrid.size(); ++k) samples[k] = eig[i].wavefunction(sgrid.at(k));
    const int nodes = count_nodes(samples);
    const int expected = expected_nodes(model, qn);
    if (nodes != expected) ++node_failures;

    matching_max = std::max(matching_max, matching);
    tise_max = std::max(tise_max, tise);
    state_rows.push_back({{"qn", to_json(qn, kind)},
                          {"epsilon", oracle[i].epsilon},
                          {"energy", oracle[i].energy},
                          {"oracle_energy", oracle[i].oracle_energy},
                          {"delta", oracle[i].delta},
                          {"matching_residual", matching},
                          {"tise_residual", tise},
                          {"nodes", nodes},
                          {"expected_nodes", expected}});
  }

  double gram_max = 0.0;
  for (const auto &[key, idx] : orthogonality_groups(kind, states)) {
    if (idx.size() < 2) continue;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    std::vector<RealFunction> fns;
    for (std::size_t i : idx) {
      lo = std::min(lo, eig[i].support.lower);
      hi = std::max(hi, eig[i].support.upper);
      fns.push_back(eig[i].wavefunction);
    }
    const auto g = gram_matrix(fns, Grid(lo, hi, 20001), eig[idx.front()].measure);
    gram_max = std::max(gram_max, max_off_diagonal(g));
  }

  double oracle_max = 0.0;
  for (const auto &r : oracle) oracle_max = std::max(oracle_max, r.delta);

  const std::vector<Check> checks{
      {"matching_identity_max", matching_max, c.tol.matching},
      {"tise_residual_max", tise_max, c.tol.tise},
      {"gram_offdiag_max", gram_max, c.tol.gram},
      {"node_count_failures", static_cast<double>(node_failures), 0.0},
      {"oracle_delta_max", oracle_max, c.tol.eig},
  };

  Sink sink(c, out);
  auto &os = sink.stream();
  if (c.format == "csv") {
    write_checks_csv(os, checks);
    os << "n,l,m,epsilon,energy,oracle_energy,delta,matching_residual,tise_residual,nodes\n";
    for (const auto &row : state_rows) {
      const json &q = row["qn"];
      os << q.value("n", 0) << ',' << q.value("l", 0) << ',' << q.value("m", 0) << ','
         << row["epsilon"].get<double>() << ',' << row["energy"].get<double>() << ','
         << row["oracle_energy"].get<double>() << ',' << row["delta"].get<double>() << ','
         << row["matching_residual"].get<double>() << ','
         << row["tise_residual"].get<double>() << ',' << row["nodes"].get<int>() << '\n';
    }
  } else {
    json jc = json::array();
    for (const auto &k : checks) jc.push_back(to_json(k));
    json doc{{"model", std::string(to_string(kind))},
             {"params", params_json(model)},
             {"states", state_rows},
             {"checks", jc}};
    if (shift) doc["injected_epsilon_shift"] = *shift;
    os << doc.dump(2) << '\n';
  }
  return exit_for(checks);
}

int cmd_portrait(const RunConfig &c, std::ostream &out) {
  const ModelSystem model = build_model(c);
  const ModelKind kind = kind_of(model);
  QuantumNumbers qn{c.n, c.l.value_or(0), c.ml};
  if (kind == ModelKind::hydrogen && qn.n == 0) qn.n = std::max(1, qn.l + 1);
  DimensionlessTISE tise = dimensionless_form(model, qn);
  if (!c.epsilon) throw Error(ErrorCode::invalid_parameter, "portrait requires --epsilon");
  if (!std::isfinite(*c.epsilon)) throw Error(ErrorCode::invalid_parameter, "epsilon must be finite");
  tise.epsilon = *c.epsilon;

  const double lo = c.x_min.value_or(kind == ModelKind::harmonic ? 0.0 : 0.05);
  const double hi = c.x_max.value_or(kind == ModelKind::harmonic ? 6.0 : 20.0);
  const Grid grid(lo, hi, c.points != 0 ? c.points : 2400);
  const PhaseVector start{c.phi0, c.dphi0};
  const auto traj = integrate_phase_space(
      tise.b, [&](double x) { return tise.k_squared(x); }, start, grid);

  const double end = std::abs(traj.samples.back().value);
  const double ref = std::max(start.norm(), std::numeric_limits<double>::min());
  const bool divergent = end > 1e2 * ref;
  const bool decaying = end < 1e-6 * ref;

  Sink sink(c, out);
  auto &os = sink.stream();
  if (c.format == "csv") {
    os << "# model=" << to_string(kind) << " epsilon=" << *c.epsilon
       << " divergent=" << (divergent ? "true" : "false")
       << " decaying=" << (decaying ? "true" : "false") << '\n';
    os << "x,phi,dphi\n";
    for (std::size_t i = 0; i < grid.size(); ++i) {
      os << grid.at(i) << ',' << traj.samples[i].value << ',' << traj.samples[i].slope << '\n';
    }
  } else {
    json xs = json::array(), phi = json::array(), dphi = json::array();
    for (std::size_t i = 0; i < grid.size(); ++i) {
      xs.push_back(grid.at(i));
      phi.push_back(traj.samples[i].value);
      dphi.push_back(traj.samples[i].slope);
    }
    json doc{{"model", std::string(to_string(kind))},
             {"params", params_json(model)},
             {"epsilon", *c.epsilon},
             {"metadata", {{"divergent", divergent}, {"decaying", decaying},
                           {"final_abs_value", end}}},
             {"x", xs},
             {"phi", phi},
             {"dphi", dphi}};
    os << doc.dump(2) << '\n';
  }
  return kExitOk;
}

void add_model_options(CLI::App &sub, RunConfig &c) {
  sub.add_option("--model", c.model, "harmonic | rotor | hydrogen | morse")
      ->required()
      ->check(CLI::IsMember({"harmonic", "rotor", "hydrogen", "morse"}));
  sub.add_option("--units", c.units, "natural (hbar = m = 1) or si")
      ->check(CLI::IsMember({"natural", "si"}));
  sub.add_option("--m,--mass", c.mass, "particle mass");
  sub.add_option("--omega", c.omega, "oscillator angular frequency");
  sub.add_option("--hbar", c.hbar, "reduced Planck constant");
  sub.add_option("--mu", c.mu, "rotor reduced mass");
  sub.add_option("--R,--bond-length", c.bond_length, "rotor bond length");
  sub.add_option("--a0", c.a0, "Bohr radius");
  sub.add_option("--eg", c.eg, "hydrogen ground-state energy (negative)");
  sub.add_option("--de", c.de, "Morse well depth D_e");
  sub.add_option("--alpha", c.alpha, "Morse range parameter");
  sub.add_option("--delta", c.delta, "Morse delta = sqrt(2 m D_e)/(alpha hbar)");
  sub.add_option("--format", c.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
  sub.add_option("--output", c.output, "write the report to this path");
}

void add_state_options(CLI::App &sub, RunConfig &c) {
  sub.add_option("--n", c.n, "principal / vibrational quantum number");
  sub.add_option("--l", c.l, "angular momentum quantum number");
  sub.add_option("--ml", c.ml, "magnetic quantum number (rotor)");
}

void add_tolerances(CLI::App &sub, RunConfig &c) {
  sub.add_option("--n-max", c.n_max, "highest n (hydrogen, harmonic)");
  sub.add_option("--l-max", c.l_max, "highest l (rotor)");
  sub.add_option("--tol-eig", c.tol.eig, "relative tolerance against the FD oracle");
  sub.add_option("--tol-eq14", c.tol.matching, "tolerance on the matching identity residual");
  sub.add_option("--tol-gram", c.tol.gram, "tolerance on Gram off-diagonals");
  sub.add_option("--tol-tise", c.tol.tise, "tolerance on the scaled TISE residual");
  sub.add_option("--oracle-points", c.oracle_points, "override the oracle grid size");
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Closed-form spectra of model quantum systems by phase-space matching"};
  app.require_subcommand(1);
  RunConfig c;

  auto *spectrum = app.add_subcommand("spectrum", "closed-form spectrum vs. FD oracle");
  add_model_options(*spectrum, c);
  add_tolerances(*spectrum, c);

  auto *wave = app.add_subcommand("wavefunction", "sample a normalised eigenfunction");
  add_model_options(*wave, c);
  add_state_options(*wave, c);
  wave->add_option("--points", c.points, "number of samples");
  wave->add_option("--q-min", c.q_min, "first sample coordinate");
  wave->add_option("--q-max", c.q_max, "last sample coordinate");

  auto *verify = app.add_subcommand("verify", "run every consistency check");
  add_model_options(*verify, c);
  add_tolerances(*verify, c);
  verify->add_option("--inject-error", c.inject_error,
                     "test hook: shift epsilon, e.g. epsilon+0.1");

  auto *portrait = app.add_subcommand("portrait", "integrate a phase-space trajectory");
  add_model_options(*portrait, c);
  add_state_options(*portrait, c);
  portrait->add_option("--epsilon", c.epsilon, "dimensionless energy")->required();
  portrait->add_option("--x-min", c.x_min, "start of the trajectory");
  portrait->add_option("--x-max", c.x_max, "end of the trajectory");
  portrait->add_option("--points", c.points, "grid points");
  portrait->add_option("--phi0", c.phi0, "initial value");
  portrait->add_option("--dphi0", c.dphi0, "initial slope");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp &) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError &e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  }

  try {
    if (spectrum->parsed()) return cmd_spectrum(c, out);
    if (wave->parsed()) return cmd_wavefunction(c, out);
    if (verify->parsed()) return cmd_verify(c, out);
    if (portrait->parsed()) return cmd_portrait(c, out);
  } catch (const Error &e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
  return kExitInvalid;
}

} // namespace psm::cli
