#include "cli.hpp"

#include "json_out.hpp"

#include <greenwalk/analysis.hpp>
#include <greenwalk/duality.hpp>
#include <greenwalk/families.hpp>
#include <greenwalk/montecarlo.hpp>
#include <greenwalk/spectral.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace greenwalk::cli {

namespace {

struct Options {
  std::string input;
  std::string input_format;  // "", "edges", "json"
  bool undirected = false;
  std::string format = "json";
  double lazy = 0.0;
  double tol = 1e-8;
  std::uint64_t seed = 0;
  std::uint64_t trials = 10'000;
  std::string target = "pi";
  Index start = 0;
  std::optional<Index> stop;
  bool random_target = false;
  std::string measure;
  std::string green_file;
  std::string family;
  std::vector<std::string> family_args;
};

/// Collected residuals; any entry above its threshold fails the command.
struct Residuals {
  struct Entry {
    std::string name;
    double value;
    double threshold;
  };
  std::vector<Entry> entries;

  void add(std::string name, double value, double threshold) {
    entries.push_back({std::move(name), value, threshold});
  }
  bool ok() const {
    return std::all_of(entries.begin(), entries.end(),
                       [](const Entry& e) { return std::isfinite(e.value) && e.value <= e.threshold; });
  }
  Json values() const {
    Json j = Json::object();
    for (const auto& e : entries) j[e.name] = e.value;
    return j;
  }
  Json table() const {
    Json j = Json::object();
    for (const auto& e : entries) {
      j[e.name] = Json{{"residual", e.value}, {"tolerance", e.threshold}, {"pass", e.value <= e.threshold}};
    }
    return j;
  }
  void report(std::ostream& err) const {
    err << "integrity check failed:\n";
    for (const auto& e : entries) {
      err << "  " << (e.value <= e.threshold ? "ok  " : "FAIL") << "  " << e.name << " = " << format_number(e.value)
          << " (tolerance " << format_number(e.threshold) << ")\n";
    }
  }
};

class UsageError : public Error {
 public:
  using Error::Error;
};

Json vec(const Vector& v) {
  Json a = Json::array();
  for (Index k = 0; k < v.size(); ++k) a.push_back(v(k));
  return a;
}

Json rows(const Matrix& m) {
  Json a = Json::array();
  for (Index i = 0; i < m.rows(); ++i) a.push_back(vec(m.row(i).transpose()));
  return a;
}

Json indices(const std::vector<Index>& v) {
  Json a = Json::array();
  for (Index k : v) a.push_back(k);
  return a;
}

WeightedDigraph load_graph(const Options& o, std::istream& in) {
  if (o.input.empty()) throw UsageError("--input is required");
  GraphFormat format = GraphFormat::EdgeList;
  if (o.input_format == "json" ||
      (o.input_format.empty() && o.input.size() >= 5 && o.input.compare(o.input.size() - 5, 5, ".json") == 0)) {
    format = GraphFormat::Json;
  }
  ParseOptions parse{o.undirected};
  if (o.input == "-") return read_graph(in, format, parse);
  std::ifstream file(o.input);
  if (!file) throw UsageError("cannot open " + o.input);
  return read_graph(file, format, parse);
}

double matrix_tolerance(const Options& o, Index n) { return o.tol * static_cast<double>(std::max<Index>(n, 1)); }
double time_tolerance(const Options& o, double scale) { return o.tol * std::max(1.0, std::abs(scale)); }

// "pi", a vertex index, or comma-separated weights (normalized).
Distribution parse_target(const std::string& text, const Distribution& pi) {
  const Index n = pi.size();
  if (text == "pi") return pi;
  std::vector<double> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      parts.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("--target: cannot parse '" + item + "'");
    }
  }
  if (parts.size() == 1 && text.find(',') == std::string::npos) {
    const double v = parts.front();
    if (v != std::floor(v) || v < 0 || v >= static_cast<double>(n)) throw UsageError("--target: vertex out of range");
    return Distribution::point_mass(n, static_cast<Index>(v));
  }
  if (static_cast<Index>(parts.size()) != n) throw UsageError("--target: expected " + std::to_string(n) + " weights");
  Vector w(n);
  for (Index k = 0; k < n; ++k) w(k) = parts[static_cast<std::size_t>(k)];
  if (w.minCoeff() < 0 || !(w.sum() > 0)) throw UsageError("--target: weights must be nonnegative with positive sum");
  return Distribution(w / w.sum());
}

void write_csv(std::ostream& out, const Matrix& m) {
  for (Index j = 0; j < m.cols(); ++j) out << (j ? "," : "") << j;
  out << "\n";
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) out << (j ? "," : "") << format_number(m(i, j));
    out << "\n";
  }
}

int emit_matrix(const Options& o, std::ostream& out, std::ostream& err, const Matrix& m, const Vector& target,
                const Residuals& r) {
  if (!r.ok()) {
    r.report(err);
    return kIntegrity;
  }
  if (o.format == "csv") {
    write_csv(out, m);
  } else {
    write_json(out, Json{{"n", m.rows()}, {"target", vec(target)}, {"rows", rows(m)}, {"residuals", r.values()}});
  }
  return kOk;
}

int emit_report(const Options& o, std::ostream& out, std::ostream& err, Json doc, const Residuals& r) {
  if (!r.ok()) {
    r.report(err);
    return kIntegrity;
  }
  if (o.format == "csv") {
    // Flat key,value listing of the scalar fields.
    out << "quantity,value\n";
    for (auto it = doc.begin(); it != doc.end(); ++it) {
      if (it.value().is_number()) out << it.key() << "," << format_number(it.value().get<double>()) << "\n";
    }
    return kOk;
  }
  if (!r.entries.empty()) doc["residuals"] = r.values();
  write_json(out, doc);
  return kOk;
}

int cmd_hitting(const Options& o, std::istream& in, std::ostream& out, std::ostream& err) {
  const ChainAnalysis a = analyze(load_graph(o, in), o.lazy);
  const HitTime ht = hit_time(a.hitting, a.stationary);
  Residuals r;
  r.add("first_step", first_step_residual(a.hitting, a.transition), time_tolerance(o, ht.value));
  r.add("random_target", ht.residual, time_tolerance(o, ht.value));
  return emit_matrix(o, out, err, a.hitting.matrix(), a.stationary.values(), r);
}

int cmd_green(const Options& o, std::istream& in, std::ostream& out, std::ostream& err) {
  const ChainAnalysis a = analyze(load_graph(o, in), o.lazy);
  const Index n = a.graph.size();
  const Distribution tau = parse_target(o.target, a.stationary);
  const GreensMatrix g = o.target == "pi" ? a.greens : greens_general(a.hitting, a.stationary, tau);
  const GreenResiduals gr = verify_green_constraints(g, a.transition);
  Residuals r;
  r.add("constraint", gr.constraint, matrix_tolerance(o, n));
  r.add("row_sum", gr.row_sum, matrix_tolerance(o, n));
  return emit_matrix(o, out, err, g.matrix(), tau.values(), r);
}

int cmd_exitfreq(const Options& o, std::istream& in, std::ostream& out, std::ostream& err) {
  const ChainAnalysis a = analyze(load_graph(o, in), o.lazy);
  const Index n = a.graph.size();
  const Distribution tau = parse_target(o.target, a.stationary);
  const ExitFrequencyMatrix x = exit_frequency_matrix(a.hitting, a.stationary, tau);
  Residuals r;
  r.add("conservation", conservation_residual(x, a.transition), matrix_tolerance(o, n));
  r.add("row_minimum", std::max(0.0, x.matrix().rowwise().minCoeff().maxCoeff()), tol::kExitClamp);
  const GreensMatrix via_x = greens_from_exit_frequencies(x, a.stationary);
  const GreensMatrix direct = greens_general(a.hitting, a.stationary, tau);
  r.add("greens_routes", max_abs(Matrix(via_x.matrix() - direct.matrix())), matrix_tolerance(o, n));
  return emit_matrix(o, out, err, x.matrix(), tau.values(), r);
}

int cmd_mixing(const Options& o, std::istream& in, std::ostream& out, std::ostream& err) {
  const ChainAnalysis a = analyze(load_graph(o, in), o.lazy);
  const MixingReport& m = a.mixing;
  const double t_forget = forget_time(a.transition, a.stationary);
  Json halting = Json::array();
  for (const auto& h : m.halting_states) halting.push_back(indices(h));
  Json doc{{"n", a.graph.size()},
           {"t_mix", m.t_mix},
           {"t_reset", m.t_reset},
           {"t_hit", m.t_hit},
           {"t_forget", t_forget},
           {"mixing_times", vec(m.mixing_times)},
           {"pessimal", indices(m.pessimal)},
           {"mixing_pessimal", indices(m.mixing_pessimal)},
           {"halting_states", halting}};
  Residuals r;
  const HitTime ht = hit_time(a.hitting, a.stationary);
  r.add("t_hit_trace", std::abs(ht.value - m.t_hit), time_tolerance(o, m.t_hit));
  if (a.graph.undirected()) r.add("reversible_crosscheck", m.crosscheck_residual, time_tolerance(o, m.t_hit));
  return emit_report(o, out, err, std::move(doc), r);
}

int cmd_spectral(const Options& o, std::istream& in, std::ostream& out, std::ostream& err) {
  const WeightedDigraph g = load_graph(o, in);
  if (o.lazy != 0.0) throw UsageError("spectral: --lazy is not supported (the operator is the walk's Laplacian)");
  const SpectralDecomposition dec = spectral_decomposition(g);
  const ChainAnalysis a = analyze(g);
  const SpectralMixing sm = spectral_mixing(dec, a.mixing.pessimal);
  const double scale = std::max(1.0, max_abs(a.hitting.matrix()));
  Residuals r;
  r.add("hitting", max_abs(Matrix(spectral_hitting(dec).matrix() - a.hitting.matrix())) / scale, o.tol);
  r.add("greens", max_abs(Matrix(spectral_greens(dec).matrix() - a.greens.matrix())), matrix_tolerance(o, g.size()));
  r.add("t_hit", std::abs(sm.t_hit - a.mixing.t_hit), time_tolerance(o, sm.t_hit));
  r.add("t_mix", std::abs(sm.t_mix - a.mixing.t_mix), time_tolerance(o, sm.t_mix));
  r.add("t_reset", std::abs(sm.t_reset - a.mixing.t_reset), time_tolerance(o, sm.t_reset));
  Json doc{{"n", g.size()},
           {"eigenvalues", vec(dec.eigenvalues())},
           {"t_hit", sm.t_hit},
           {"t_mix", sm.t_mix},
           {"t_reset", sm.t_reset}};
  return emit_report(o, out, err, std::move(doc), r);
}

int cmd_dual(const Options& o, std::istream& in, std::ostream& out, std::ostream& err) {
  const WeightedDigraph g = load_graph(o, in);
  const TransitionMatrix p = transition_matrix(g, o.lazy);
  const Distribution pi = g.undirected() ? stationary_distribution(g) : stationary_distribution(p);
  const DualityReport d = duality_checks(p, pi);
  Json doc{{"n", g.size()},
           {"t_mix", d.t_mix},
           {"t_reset", d.t_reset},
           {"t_forget", d.t_forget},
           {"reverse_t_mix", d.reverse_t_mix},
           {"reverse_t_reset", d.reverse_t_reset},
           {"reverse_t_forget", d.reverse_t_forget},
           {"stationary", vec(pi.values())},
           {"forget", vec(d.forget.values())},
           {"reverse_forget", vec(d.reverse_forget.values())},
           {"offsets", vec(d.offsets)},
           {"pi_core", vec(d.core.values())},
           {"reverse_chain", rows(d.reverse.matrix())},
           {"pi_core_exit_frequencies", rows(d.core_exit_frequencies.matrix())}};
  Residuals r;
  for (const auto& res : d.residuals) r.add(res.name, res.value, o.tol);
  return emit_report(o, out, err, std::move(doc), r);
}

std::string normalize(std::string s) {
  std::string t;
  for (char c : s) {
    if (std::isalnum(static_cast<unsigned char>(c))) t.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return t;
}

Index family_int(const std::vector<std::string>& args, std::size_t k, const char* what) {
  if (k >= args.size()) throw UsageError(std::string("family: missing ") + what);
  try {
    std::size_t used = 0;
    const long long v = std::stoll(args[k], &used);
    if (used != args[k].size()) throw std::invalid_argument(args[k]);
    return static_cast<Index>(v);
  } catch (const std::exception&) {
    throw UsageError(std::string("family: invalid ") + what + " '" + args[k] + "'");
  }
}

int cmd_family(const Options& o, std::istream& in, std::ostream& out, std::ostream& err) {
  const std::string& f = o.family;
  const auto& a = o.family_args;
  auto expect = [&](std::size_t count) {
    if (a.size() != count) throw UsageError("family " + f + ": expected " + std::to_string(count) + " parameter(s)");
  };
  OracleReport report;
  if (f == "complete") {
    expect(1);
    report = complete_oracle(family_int(a, 0, "n"));
  } else if (f == "bipartite") {
    expect(2);
    report = bipartite_oracle(family_int(a, 0, "r"), family_int(a, 1, "s"));
  } else if (f == "path") {
    expect(1);
    report = path_oracle(family_int(a, 0, "n"));
  } else if (f == "cycle") {
    expect(1);
    report = cycle_oracle(family_int(a, 0, "n"));
  } else if (f == "hypercube") {
    expect(1);
    report = hypercube_oracle(static_cast<int>(family_int(a, 0, "d")));
  } else if (f == "toric") {
    if (a.empty()) throw UsageError("family toric: expected cycle lengths");
    std::vector<Index> dims;
    for (std::size_t k = 0; k < a.size(); ++k) dims.push_back(family_int(a, k, "cycle length"));
    report = toric_oracle(dims);
  } else if (f == "tree") {
    expect(0);
    report = tree_oracle(load_graph(o, in));
  } else {
    throw UsageError("unknown family '" + f + "' (complete, bipartite, path, cycle, hypercube, toric, tree)");
  }

  if (!o.measure.empty()) {
    const std::string want = normalize(o.measure);
    for (const auto& v : report.values) {
      if (normalize(v.label) == want) {
        out << format_number(v.value) << "\n";
        return kOk;
      }
    }
    std::string known;
    for (const auto& v : report.values) known += (known.empty() ? "" : ", ") + v.label;
    throw UsageError("family " + f + ": unknown measure '" + o.measure + "' (available: " + known + ")");
  }

  Json values = Json::array();
  for (const auto& v : report.values) values.push_back(Json{{"label", v.label}, {"value", v.value}});
  Json doc{{"family", report.family}, {"parameters", report.parameters}, {"values", values}};
  if (!report.identities.empty()) {
    Json flags = Json::object();
    for (const auto& id : report.identities) flags[id.name] = id.holds;
    doc["identities"] = flags;
  }
  if (!report.diagnostics.empty()) {
    Json diag = Json::object();
    for (const auto& d : report.diagnostics) diag[d.name] = d.value;
    doc["diagnostics"] = diag;
  }
  Residuals r;
  if (report.graph && report.graph->size() <= 1024) {
    const ChainAnalysis analysis = analyze(*report.graph);
    Json checks = Json::array();
    for (const auto& c : compare_with_pipeline(report, analysis, matrix_tolerance(o, analysis.graph.size()))) {
      checks.push_back(Json{{"label", c.label}, {"closed_form", c.closed_form}, {"pipeline", c.pipeline}, {"error", c.error}});
      r.add(c.label, c.error, c.tolerance);
    }
    doc["pipeline_checks"] = checks;
  }
  if (!r.ok()) {
    r.report(err);
    return kIntegrity;
  }
  if (o.format == "csv") {
    out << "label,value\n";
    for (const auto& v : report.values) out << v.label << "," << format_number(v.value) << "\n";
    return kOk;
  }
  write_json(out, doc);
  return kOk;
}

int cmd_simulate(const Options& o, std::istream& in, std::ostream& out, std::ostream& err) {
  const ChainAnalysis a = analyze(load_graph(o, in), o.lazy);
  if (o.trials == 0) throw UsageError("--trials must be >= 1");
  SimStats s;
  double analytic = 0.0;
  Json doc;
  if (o.random_target) {
    if (o.stop) throw UsageError("--stop and --random-target are exclusive");
    s = empirical_random_target(a.transition, a.stationary, o.start, o.trials, o.seed);
    analytic = a.mixing.t_hit;
    doc = Json{{"rule", "random_target"}, {"start", o.start}};
  } else {
    if (!o.stop) throw UsageError("simulate needs --stop or --random-target");
    s = empirical_hitting(a.transition, o.start, *o.stop, o.trials, o.seed);
    analytic = a.hitting(o.start, *o.stop);
    doc = Json{{"rule", "hitting"}, {"start", o.start}, {"stop", *o.stop}};
  }
  doc["trials"] = s.trials;
  doc["seed"] = s.seed;
  doc["mean"] = s.mean;
  doc["standard_error"] = s.standard_error;
  doc["analytic"] = analytic;
  doc["z_score"] = s.standard_error > 0 ? (s.mean - analytic) / s.standard_error : 0.0;
  return emit_report(o, out, err, std::move(doc), Residuals{});
}

struct GreenFile {
  Matrix m;
  Vector target;
};

GreenFile read_green_file(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw UsageError("cannot open " + path);
  Json doc;
  try {
    doc = Json::parse(file);
    const auto n = doc.at("n").get<Index>();
    const auto& rs = doc.at("rows");
    const auto& tg = doc.at("target");
    if (n < 1 || static_cast<Index>(rs.size()) != n || static_cast<Index>(tg.size()) != n) {
      throw ParseError(0, path + ": rows/target do not match n");
    }
    GreenFile g{Matrix(n, n), Vector(n)};
    for (Index i = 0; i < n; ++i) {
      const auto& row = rs.at(static_cast<std::size_t>(i));
      if (static_cast<Index>(row.size()) != n) throw ParseError(0, path + ": row " + std::to_string(i) + " has wrong length");
      for (Index j = 0; j < n; ++j) g.m(i, j) = row.at(static_cast<std::size_t>(j)).get<double>();
      g.target(i) = tg.at(static_cast<std::size_t>(i)).get<double>();
    }
    return g;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, path + ": " + e.what());
  }
}

int cmd_verify(const Options& o, std::istream& in, std::ostream& out, std::ostream& err) {
  const ChainAnalysis a = analyze(load_graph(o, in), o.lazy);
  const Index n = a.graph.size();
  const double t_hit = a.mixing.t_hit;
  Residuals r;

  if (!o.green_file.empty()) {
    const GreenFile file = read_green_file(o.green_file);
    if (file.m.rows() != n) throw ValidationError("--green: matrix size does not match the graph");
    const Distribution tau = Distribution::from_computed(file.target, 1e-9, "--green target");
    const GreensMatrix g(file.m, tau);
    const GreenResiduals gr = verify_green_constraints(g, a.transition);
    r.add("green_constraint", gr.constraint, matrix_tolerance(o, n));
    r.add("green_row_sum", gr.row_sum, matrix_tolerance(o, n));
    const GreensMatrix expected = greens_general(a.hitting, a.stationary, tau);
    r.add("green_vs_recomputed", max_abs(Matrix(g.matrix() - expected.matrix())), matrix_tolerance(o, n));
  } else {
    const HitTime ht = hit_time(a.hitting, a.stationary);
    r.add("stationary", stationary_residual(a.transition, a.stationary), tol::kStationaryResidual);
    r.add("first_step", first_step_residual(a.hitting, a.transition), time_tolerance(o, t_hit));
    r.add("random_target", ht.residual, time_tolerance(o, t_hit));
    r.add("t_hit_trace", std::abs(ht.value - t_hit), time_tolerance(o, t_hit));
    const GreenResiduals gr = verify_green_constraints(a.greens, a.transition);
    r.add("green_constraint", gr.constraint, matrix_tolerance(o, n));
    r.add("green_row_sum", gr.row_sum, matrix_tolerance(o, n));
    const ExitFrequencyMatrix x = exit_frequency_matrix(a.hitting, a.stationary, a.stationary);
    r.add("exit_conservation", conservation_residual(x, a.transition), matrix_tolerance(o, n));
    r.add("exit_row_minimum", std::max(0.0, x.matrix().rowwise().minCoeff().maxCoeff()), tol::kExitClamp);
    r.add("exit_green_route",
          max_abs(Matrix(greens_from_exit_frequencies(x, a.stationary).matrix() - a.greens.matrix())),
          matrix_tolerance(o, n));
    if (a.graph.undirected()) {
      const CycleResiduals c = check_cycle_identities(a.hitting, a.stationary);
      r.add("cycle_triple", c.triple, time_tolerance(o, t_hit));
      r.add("cycle_pair", c.pair, time_tolerance(o, t_hit));
      r.add("mixing_crosscheck", a.mixing.crosscheck_residual, time_tolerance(o, t_hit));
      if (o.lazy == 0.0) {
        const SpectralDecomposition dec = spectral_decomposition(a.graph);
        const SpectralMixing sm = spectral_mixing(dec, a.mixing.pessimal);
        const double scale = std::max(1.0, max_abs(a.hitting.matrix()));
        r.add("spectral_hitting", max_abs(Matrix(spectral_hitting(dec).matrix() - a.hitting.matrix())) / scale, o.tol);
        r.add("spectral_t_hit", std::abs(sm.t_hit - t_hit), time_tolerance(o, t_hit));
        r.add("spectral_t_mix", std::abs(sm.t_mix - a.mixing.t_mix), time_tolerance(o, t_hit));
      }
    }
    const DualityReport d = duality_checks(a.transition, a.stationary);
    r.add("duality_worst", d.worst_residual(), o.tol);
  }
  const bool ok = r.ok();
  if (!ok) {
    r.report(err);
    return kIntegrity;
  }
  Json doc{{"n", n}, {"pass", ok}, {"checks", r.table()}};
  write_json(out, doc);
  return kOk;
}

void add_graph_options(CLI::App* sub, Options& o) {
  sub->add_option("--input,-i", o.input, "Graph file (edge list or JSON); '-' reads stdin");
  sub->add_option("--input-format", o.input_format, "edges or json (default: by file extension)")
      ->check(CLI::IsMember({"edges", "json"}));
  sub->add_flag("--undirected", o.undirected, "Symmetrize the edge list");
  sub->add_option("--lazy", o.lazy, "Laziness beta in [0,1)")->check(CLI::Range(0.0, 1.0));
}

void add_output_options(CLI::App* sub, Options& o) {
  sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--tol", o.tol, "Tolerance; matrix residuals use tol*n, times tol*max(1,T)")
      ->check(CLI::PositiveNumber);
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Discrete Green's functions, hitting times and mixing measures of random walks", "greenwalk"};
  app.require_subcommand(1, 1);

  struct Verb {
    const char* name;
    const char* help;
    int (*fn)(const Options&, std::istream&, std::ostream&, std::ostream&);
  };
  const Verb verbs[] = {
      {"hitting", "Hitting-time matrix H", cmd_hitting},
      {"green", "Green's function G (or G_tau with --target)", cmd_green},
      {"exitfreq", "Exit-frequency matrix X_tau of the optimal rules to a target", cmd_exitfreq},
      {"mixing", "T_mix, T_reset, T_hit, T_forget and pessimal vertices", cmd_mixing},
      {"spectral", "Spectral route for undirected graphs, cross-checked", cmd_spectral},
      {"dual", "Reverse chain, forget distribution, pi-core and duality residuals", cmd_dual},
      {"family", "Closed-form family values: complete n | bipartite r s | path n | cycle n | hypercube d | toric n1 n2 ... | tree",
       cmd_family},
      {"simulate", "Monte Carlo hitting times or the random-target rule", cmd_simulate},
      {"verify", "Run every invariant check (or check a Green's matrix file with --green)", cmd_verify},
  };
  std::vector<std::pair<CLI::App*, const Verb*>> subs;
  for (const auto& v : verbs) {
    CLI::App* sub = app.add_subcommand(v.name, v.help);
    add_graph_options(sub, o);
    add_output_options(sub, o);
    subs.emplace_back(sub, &v);
  }
  for (auto& [sub, verb] : subs) {
    const std::string name = verb->name;
    if (name == "green" || name == "exitfreq") {
      sub->add_option("--target", o.target, "pi, a vertex index, or comma-separated weights");
    } else if (name == "family") {
      sub->add_option("family", o.family, "Family name")->required();
      sub->add_option("params", o.family_args, "Family parameters");
      sub->add_option("--measure", o.measure, "Print one value, e.g. tmix, treset, thit, 'H(1,0)'");
    } else if (name == "simulate") {
      sub->add_option("--start", o.start, "Start vertex")->check(CLI::NonNegativeNumber);
      sub->add_option("--stop", o.stop, "Stop vertex")->check(CLI::NonNegativeNumber);
      sub->add_flag("--random-target", o.random_target, "Draw the stop vertex from pi each trial");
      sub->add_option("--trials", o.trials, "Number of trials");
      sub->add_option("--seed", o.seed, "RNG seed");
    } else if (name == "verify") {
      sub->add_option("--green", o.green_file, "Green's matrix JSON to check against the graph");
    }
  }

  std::vector<const char*> argv{"greenwalk"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInvalid;
  }

  try {
    for (auto& [sub, verb] : subs) {
      if (sub->parsed()) return verb->fn(o, in, out, err);
    }
  } catch (const IntegrityError& e) {
    err << "integrity error: " << e.what() << "\n";
    return kIntegrity;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << "\n";
    return kIntegrity;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kInvalid;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInvalid;
  }
  return kInvalid;
}

}  // namespace greenwalk::cli
