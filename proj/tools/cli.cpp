#include "cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

#include "biquad/alternating.hpp"
#include "biquad/certificate.hpp"
#include "biquad/classes.hpp"
#include "biquad/dominance.hpp"
#include "biquad/errors.hpp"
#include "biquad/gram.hpp"
#include "biquad/io.hpp"
#include "biquad/monic.hpp"

namespace biquad::cli {

namespace {

using nlohmann::json;

struct CommandConfig {
  std::string output;
  std::uint64_t seed = 0;
  bool quiet = false;

  std::string tensor_path;
  std::string certificate_path;
  std::size_t m = 0;
  std::size_t n = 0;
  std::string a = "0", b = "0", c = "0";
  std::string step = "1/5";
  std::string range = "2";
  std::string cls;
  std::size_t trials = 0;
  std::size_t restarts = 20;
  std::size_t max_iter = 5000;
  double tol = 1e-9;
  bool history = false;
  std::string fixtures_dir;
  std::string x, y;
};

json rationals(std::span<const Rational> values) {
  json out = json::array();
  for (const Rational& v : values) out.push_back(v.str());
  return out;
}

json monic_json(const MonicParams& p) {
  return {{"m", p.m}, {"n", p.n}, {"a", p.a.str()}, {"b", p.b.str()}, {"c", p.c.str()}};
}

MonicParams monic_from(const CommandConfig& cfg) {
  MonicParams p{cfg.m, cfg.n, Rational::parse(cfg.a), Rational::parse(cfg.b),
                Rational::parse(cfg.c)};
  p.validate();
  return p;
}

ExactVector parse_vector(const std::string& text) {
  ExactVector out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(Rational::parse(item));
  return out;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path);
  if (!f) throw ParseError("cannot write '" + path + "'");
  f << content;
  if (!f) throw ParseError("failed writing '" + path + "'");
}

// Loads a tensor file; non-symmetric input is replaced by its
// symmetrization, which represents the same form.
std::pair<SymmetricTensor, bool> load_tensor(const std::string& path) {
  BiquadraticTensor raw = io::tensor_from_json(io::read_document(path));
  if (raw.is_symmetric()) return {SymmetricTensor::from_symmetric(std::move(raw)), false};
  return {symmetrize(raw), true};
}

class Runner {
 public:
  Runner(const CommandConfig& cfg, std::ostream& out) : cfg_(cfg), out_(out) {}

  int check_dd() {
    const auto [t, symmetrized] = load_tensor(cfg_.tensor_path);
    json violations = json::array();
    for (const auto& v : dominance_violations(t))
      violations.push_back({{"i", v.i + 1},
                            {"j", v.j + 1},
                            {"diagonal", v.diagonal.str()},
                            {"row_bound", v.bound.str()}});
    const bool dd = violations.empty();
    report({{"m", t.m()},
            {"n", t.n()},
            {"symmetrized", symmetrized},
            {"diagonally_dominated", dd},
            {"violations", violations}});
    return dd ? kOk : kNegative;
  }

  int decompose_dd() {
    const auto [t, symmetrized] = load_tensor(cfg_.tensor_path);
    if (!is_diagonally_dominated(t)) {
      report({{"diagonally_dominated", false}, {"symmetrized", symmetrized}});
      return kNegative;
    }
    emit_certificate(dd_sos_decompose(t), {{"diagonally_dominated", true}, {"symmetrized", symmetrized}});
    return kOk;
  }

  int classify_monic() {
    const MonicParams p = monic_from(cfg_);
    const PsdVerdict verdict = psd_conditions(p);
    json conditions = json::object();
    for (const auto& e : verdict.report.entries) {
      json entry{{"applicable", e.applicable},
                 {"eigenvalue", e.value ? json(e.value->str()) : json(nullptr)}};
      entry["holds"] = !e.applicable || e.value->sign() >= 0;
      conditions[e.label] = entry;
    }
    const auto lambda = barycentric(p);
    json doc = monic_json(p);
    doc["psd"] = verdict.psd;
    doc["conditions"] = conditions;
    doc["min_eigenvalue"] = verdict.report.min_applicable().str();
    doc["barycentric"] = lambda ? rationals(*lambda) : json(nullptr);
    report(doc);
    return verdict.psd ? kOk : kNegative;
  }

  int decompose_monic() {
    const MonicParams p = monic_from(cfg_);
    const auto cert = monic_sos_decompose(p);
    json summary = monic_json(p);
    summary["psd"] = cert.has_value();
    if (!cert) {
      report(summary);
      return kNegative;
    }
    emit_certificate(*cert, summary);
    return kOk;
  }

  int vertices() {
    const Tetrahedron tet = tetrahedron(cfg_.m, cfg_.n);
    json v = json::object();
    for (std::size_t k = 0; k < 4; ++k) v["V" + std::to_string(k + 1)] = rationals(tet.vertices[k]);
    report({{"m", tet.m}, {"n", tet.n}, {"vertices", v}});
    return kOk;
  }

  int audit_grid_cmd() {
    const GridSpec spec{cfg_.m, cfg_.n, Rational::parse(cfg_.step), Rational::parse(cfg_.range)};
    const GridAudit audit = audit_grid(spec);
    json disagreements = json::array();
    for (const auto& p : audit.disagreements) disagreements.push_back(monic_json(p));
    json redundancy = json::array();
    for (const auto& p : audit.redundancy_failures) redundancy.push_back(monic_json(p));
    report({{"m", spec.m},
            {"n", spec.n},
            {"step", spec.step.str()},
            {"range", spec.range.str()},
            {"points", audit.points},
            {"psd_points", audit.psd_points},
            {"counterexamples", disagreements},
            {"redundancy_failures", redundancy},
            {"max_certificate_terms", audit.max_certificate_terms},
            {"points_over_five_terms", audit.points_over_five_terms}});
    return disagreements.empty() && redundancy.empty() ? kOk : kNegative;
  }

  int classify_cmd() {
    const auto [t, symmetrized] = load_tensor(cfg_.tensor_path);
    LambdaMaxOptions opts;
    opts.restarts = cfg_.restarts;
    opts.seed = cfg_.seed;
    const ClassReport r = classify(t, opts);
    json m_tensor = nullptr;
    if (r.m_tensor)
      m_tensor = {{"alpha", r.m_tensor->alpha.str()},
                  {"lambda_max_estimate", r.m_tensor->lambda_max_estimate},
                  {"verdict", to_string(r.m_tensor->verdict)}};
    report({{"m", t.m()},
            {"n", t.n()},
            {"symmetrized", symmetrized},
            {"is_z", r.is_z},
            {"is_b0", r.is_b0},
            {"is_dd", r.is_dd},
            {"m_tensor", m_tensor}});
    return kOk;
  }

  int gen() {
    const TensorClass cls = parse_tensor_class(cfg_.cls);
    const SymmetricTensor t = generate(cls, cfg_.m, cfg_.n, cfg_.seed);
    const json doc = io::to_json(t.tensor());
    if (cfg_.output.empty()) {
      report(doc);
    } else {
      write_file(cfg_.output, io::dump(doc));
      report({{"class", to_string(cls)}, {"output", cfg_.output}, {"seed", cfg_.seed}});
    }
    return kOk;
  }

  int probe() {
    const auto [t, symmetrized] = load_tensor(cfg_.tensor_path);
    const SOSProbeResult r = sos_probe(t, {cfg_.max_iter, cfg_.tol});
    json doc{{"status", to_string(r.status)},
             {"iterations", r.iterations},
             {"residual_affine", r.residual_affine},
             {"residual_psd", r.residual_psd},
             {"symmetrized", symmetrized}};
    if (r.status == ProbeStatus::infeasible_suspected)
      doc["note"] = "suspected only: stalled projections are evidence, not a proof of non-SOS";
    if (cfg_.history) doc["residual_history"] = r.history;
    if (r.certificate) {
      if (cfg_.output.empty()) {
        doc["certificate"] = io::to_json(*r.certificate);
      } else {
        write_file(cfg_.output, io::dump(io::to_json(*r.certificate)));
        doc["output"] = cfg_.output;
      }
    }
    report(doc);
    const bool positive = r.status == ProbeStatus::sos_certified ||
                          r.status == ProbeStatus::flattening_psd ||
                          r.status == ProbeStatus::feasible_numerical;
    return positive ? kOk : kNegative;
  }

  int sweep() {
    const TensorClass cls = parse_tensor_class(cfg_.cls);
    if (cls != TensorClass::m && cls != TensorClass::b0)
      throw PreconditionError("sweep supports --class m_tensor or b0");
    const SweepResult r =
        conjecture_sweep(cls, cfg_.trials, cfg_.seed, cfg_.m, cfg_.n, {cfg_.max_iter, cfg_.tol});
    json suspicious = json::array();
    for (const auto& [trial, t] : r.suspicious) {
      json entry{{"trial", trial}};
      if (!cfg_.fixtures_dir.empty()) {
        std::filesystem::create_directories(cfg_.fixtures_dir);
        const auto path = std::filesystem::path(cfg_.fixtures_dir) /
                          ("suspect_" + to_string(cls) + "_" + std::to_string(trial) + ".json");
        write_file(path.string(), io::dump(io::to_json(t.tensor())));
        entry["fixture"] = path.string();
      }
      suspicious.push_back(entry);
    }
    json doc{{"class", to_string(cls)}, {"m", cfg_.m},           {"n", cfg_.n},
             {"trials", cfg_.trials},   {"seed", cfg_.seed},     {"histogram", r.histogram()},
             {"suspicious", suspicious}};
    const std::string csv = sweep_csv(r);
    if (cfg_.output.empty())
      doc["csv"] = csv;
    else {
      write_file(cfg_.output, csv);
      doc["output"] = cfg_.output;
    }
    report(doc);
    return kOk;
  }

  int verify() {
    const SOSCertificate cert = io::certificate_from_json(io::read_document(cfg_.certificate_path));
    const auto [t, symmetrized] = load_tensor(cfg_.tensor_path);
    if (cert.m != t.m() || cert.n != t.n())
      throw DimensionError("certificate is " + std::to_string(cert.m) + "x" +
                           std::to_string(cert.n) + " but tensor is " + std::to_string(t.m()) +
                           "x" + std::to_string(t.n()));
    bool ok = false;
    std::string reason;
    try {
      ok = tensors_equal(expand_certificate(cert), t);
      if (!ok) reason = "expansion differs from tensor";
    } catch (const PreconditionError& e) {
      reason = e.what();
    }
    json doc{{"verified", ok}, {"terms", cert.terms.size()}, {"symmetrized", symmetrized}};
    if (!ok) doc["reason"] = reason;
    report(doc);
    return ok ? kOk : kNegative;
  }

  int eval() {
    const auto [t, symmetrized] = load_tensor(cfg_.tensor_path);
    const ExactVector x = parse_vector(cfg_.x);
    const ExactVector y = parse_vector(cfg_.y);
    report({{"value", evaluate(t, x, y).str()}, {"symmetrized", symmetrized}});
    return kOk;
  }

 private:
  void report(const json& doc) {
    if (!cfg_.quiet) out_ << io::dump(doc);
  }

  void emit_certificate(const SOSCertificate& cert, json summary) {
    const json doc = io::to_json(cert);
    summary["terms"] = cert.terms.size();
    if (cfg_.output.empty()) {
      summary["certificate"] = doc;
    } else {
      write_file(cfg_.output, io::dump(doc));
      summary["output"] = cfg_.output;
    }
    report(summary);
  }

  const CommandConfig& cfg_;
  std::ostream& out_;
};

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact certificates for biquadratic forms", "biquad"};
  app.require_subcommand(1);
  app.fallthrough();
  CommandConfig cfg;
  app.add_option("-o,--output", cfg.output, "Output file");
  app.add_option("--seed", cfg.seed, "Random seed");
  app.add_flag("--quiet", cfg.quiet, "Suppress the JSON report");

  auto dims = [&cfg](CLI::App* sub) {
    sub->add_option("-m", cfg.m, "Dimension of x")->required()->check(CLI::PositiveNumber);
    sub->add_option("-n", cfg.n, "Dimension of y")->required()->check(CLI::PositiveNumber);
  };
  auto abc = [&cfg](CLI::App* sub) {
    sub->add_option("-a", cfg.a, "Coefficient a (p/q)")->required();
    sub->add_option("-b", cfg.b, "Coefficient b (p/q)")->required();
    sub->add_option("-c", cfg.c, "Coefficient c (p/q)")->required();
  };
  auto tensor_arg = [&cfg](CLI::App* sub) {
    sub->add_option("tensor", cfg.tensor_path, "Tensor JSON file")->required();
  };

  std::optional<std::function<int(Runner&)>> action;
  auto bind = [&action](CLI::App* sub, int (Runner::*fn)()) {
    sub->callback([&action, fn] { action = [fn](Runner& r) { return (r.*fn)(); }; });
  };

  auto* check_dd = app.add_subcommand("check-dd", "Test diagonal dominance");
  tensor_arg(check_dd);
  bind(check_dd, &Runner::check_dd);

  auto* decompose_dd = app.add_subcommand("decompose-dd", "SOS certificate of a DD tensor");
  tensor_arg(decompose_dd);
  bind(decompose_dd, &Runner::decompose_dd);

  auto* classify_monic = app.add_subcommand("classify-monic", "PSD test of a monic symmetric form");
  dims(classify_monic);
  abc(classify_monic);
  bind(classify_monic, &Runner::classify_monic);

  auto* decompose_monic = app.add_subcommand("decompose-monic", "SOS certificate of a monic form");
  dims(decompose_monic);
  abc(decompose_monic);
  bind(decompose_monic, &Runner::decompose_monic);

  auto* vertices = app.add_subcommand("vertices", "Vertices of the monic PSD tetrahedron");
  dims(vertices);
  bind(vertices, &Runner::vertices);

  auto* audit = app.add_subcommand("audit-grid", "Cross-check PSD predicates on a rational grid");
  dims(audit);
  audit->add_option("--step", cfg.step, "Grid step (p/q)");
  audit->add_option("--range", cfg.range, "Grid half-width (p/q)");
  bind(audit, &Runner::audit_grid_cmd);

  auto* classify_sub = app.add_subcommand("classify", "Z-, B0-, DD- and M-tensor membership");
  tensor_arg(classify_sub);
  classify_sub->add_option("--restarts", cfg.restarts, "Restarts for the lambda_max estimate");
  bind(classify_sub, &Runner::classify_cmd);

  auto* gen = app.add_subcommand("gen", "Random member of a tensor class");
  dims(gen);
  gen->add_option("--class", cfg.cls, "dd, z, m or b0")->required();
  bind(gen, &Runner::gen);

  auto* probe = app.add_subcommand("probe", "Search for an SOS Gram matrix");
  tensor_arg(probe);
  probe->add_option("--max-iter", cfg.max_iter, "Dykstra iteration cap")->check(CLI::PositiveNumber);
  probe->add_option("--tol", cfg.tol, "Residual tolerance")->check(CLI::PositiveNumber);
  probe->add_flag("--history", cfg.history, "Include the residual history");
  bind(probe, &Runner::probe);

  auto* sweep = app.add_subcommand("sweep", "Probe random M- or B0-tensors");
  dims(sweep);
  sweep->add_option("--class", cfg.cls, "m_tensor or b0")->required();
  sweep->add_option("--trials", cfg.trials, "Number of tensors")->required();
  sweep->add_option("--max-iter", cfg.max_iter, "Dykstra iteration cap")->check(CLI::PositiveNumber);
  sweep->add_option("--tol", cfg.tol, "Residual tolerance")->check(CLI::PositiveNumber);
  sweep->add_option("--fixtures", cfg.fixtures_dir, "Directory for suspicious tensors");
  bind(sweep, &Runner::sweep);

  auto* verify = app.add_subcommand("verify", "Check a certificate against a tensor");
  verify->add_option("certificate", cfg.certificate_path, "Certificate JSON file")->required();
  tensor_arg(verify);
  bind(verify, &Runner::verify);

  auto* eval = app.add_subcommand("eval", "Evaluate the form at a rational point");
  tensor_arg(eval);
  eval->add_option("--x", cfg.x, "Comma-separated x (p/q)")->required();
  eval->add_option("--y", cfg.y, "Comma-separated y (p/q)")->required();
  bind(eval, &Runner::eval);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "biquad: " << e.what() << "\n";
    return kUsage;
  }

  try {
    Runner runner(cfg, out);
    return (*action)(runner);
  } catch (const Error& e) {
    err << "biquad: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "biquad: " << e.what() << "\n";
    return kUsage;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"biquad"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace biquad::cli
