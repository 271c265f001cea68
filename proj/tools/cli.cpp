#include "cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "gatetrim/circuit.hpp"
#include "gatetrim/errors.hpp"

namespace gatetrim::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

class IoError : public Error {
 public:
  using Error::Error;
};

struct OptimizeOptions {
  std::vector<std::string> inputs;
  std::string input_format = "auto";
  std::string output;
  std::string output_format = "auto";
  double error_rate = 0.01;
  std::string xi = "quadratic";
  int window_size = 4;
  double elimination_threshold = 1e-4;
  double fidelity_floor = 0.0;
  std::string fidelity_convention = "trace";
  int restarts = 0;
  std::uint64_t seed = 0;
  std::string report;
  std::string report_format = "json";
  int jobs = 1;
  std::string entangler = "keep";
  int shifted_passes = 0;
  bool no_probe = false;
  int max_iterations = 500;
  int verbosity = 0;
};

struct VerifyOptions {
  std::string input;
  std::string output;
  double tolerance = 1e-3;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << text;
  if (!out) throw IoError("write to '" + path + "' failed");
}

Format pick_format(const std::string& flag, const std::string& path, Format fallback) {
  if (flag == "json") return Format::NativeJson;
  if (flag == "qasm") return Format::Qasm;
  if (path.empty() || path == "-") return fallback;
  return format_from_path(path);
}

Circuit load(const std::string& path, const std::string& format_flag) {
  return parse(read_file(path), pick_format(format_flag, path, Format::Qasm));
}

Entangler entangler_from(const std::string& name) {
  if (name == "rzz") return Entangler::Rzz;
  if (name == "fecr") return Entangler::Fecr;
  return Entangler::Keep;
}

PassConfig pass_config(const OptimizeOptions& o) {
  PassConfig c;
  c.window_size = o.window_size;
  c.elimination_threshold = o.elimination_threshold;
  c.fidelity_floor = o.fidelity_floor;
  c.fidelity_convention = o.fidelity_convention == "trace2" ? FidelityConvention::TraceSquared
                                                            : FidelityConvention::Trace;
  c.noise.default_error_rate = o.error_rate;
  xi_shape_from_name(o.xi, c.noise.shape);
  c.optimizer.max_iterations = o.max_iterations;
  c.optimizer.restarts = o.restarts;
  c.optimizer.seed = o.seed;
  c.probe_eliminations = !o.no_probe;
  c.shifted_passes = o.shifted_passes;
  c.jobs = o.jobs;
  return c;
}

ordered_json config_to_json(const OptimizeOptions& o, const PassConfig& c) {
  ordered_json j;
  j["inputs"] = o.inputs;
  j["input_format"] = o.input_format;
  j["output"] = o.output;
  j["output_format"] = o.output_format;
  j["error_rate"] = c.noise.default_error_rate;
  j["xi"] = std::string(xi_shape_name(c.noise.shape));
  j["window_size"] = c.window_size;
  j["elimination_threshold"] = c.elimination_threshold;
  j["fidelity_floor"] = c.fidelity_floor;
  j["fidelity_convention"] = o.fidelity_convention;
  j["entangler"] = o.entangler;
  j["probe_eliminations"] = c.probe_eliminations;
  j["polish_noise_free"] = c.polish_noise_free;
  j["shifted_passes"] = c.shifted_passes;
  j["jobs"] = c.jobs;
  j["optimizer"] = {{"memory", c.optimizer.memory},
                    {"max_iterations", c.optimizer.max_iterations},
                    {"gradient_tolerance", c.optimizer.gradient_tolerance},
                    {"merit_tolerance", c.optimizer.merit_tolerance},
                    {"restarts", c.optimizer.restarts},
                    {"restart_sigma", c.optimizer.restart_sigma},
                    {"seed", c.optimizer.seed}};
  return j;
}

std::string default_output_path(const std::string& input, const std::string& out_dir) {
  fs::path p(input);
  return (fs::path(out_dir) / (p.stem().string() + ".opt" + p.extension().string())).string();
}

int optimize(const OptimizeOptions& o, std::ostream& out, std::ostream& err) {
  const PassConfig config = pass_config(o);
  const bool many = o.inputs.size() > 1;
  if (many && o.output.empty()) {
    err << "error: --out must name a directory when several inputs are given\n";
    return kUsage;
  }
  if (many) fs::create_directories(o.output);

  ordered_json reports = ordered_json::array();
  std::string tables;
  for (const auto& input : o.inputs) {
    const Format in_format = pick_format(o.input_format, input, Format::Qasm);
    const Circuit source = parse(read_file(input), in_format);
    const Circuit native = rebase(source, entangler_from(o.entangler));
    if (o.verbosity > 0) {
      err << input << ": " << native.n_qubits << " qubits, " << native.gates.size()
          << " native gates\n";
    }
    auto [optimized, report] = optimize_circuit(native, config);

    const std::string out_path = many ? default_output_path(input, o.output) : o.output;
    const Format out_format = pick_format(o.output_format, out_path, in_format);
    const std::string text = serialize(optimized, out_format);
    if (!out_path.empty() && out_path != "-") {
      write_file(out_path, text);
    } else if (o.report != "-") {
      out << text;
    }

    ordered_json r;
    r["schema"] = kReportSchema;
    r["tool"] = "gatetrim";
    r["version"] = kVersion;
    r["input"] = input;
    r["config"] = config_to_json(o, config);
    const ordered_json body = report_to_json(report);
    for (const auto& [key, value] : body.items()) r[key] = value;
    r["output_circuit"] = ordered_json::parse(serialize(optimized, Format::NativeJson));
    reports.push_back(std::move(r));
    tables += input + "\n" + report_to_table(report);
    if (o.verbosity > 0) {
      err << input << ": entangling gates " << report.input_entangling << " -> "
          << report.output_entangling << "\n";
    }
  }

  if (!o.report.empty()) {
    const std::string text = o.report_format == "table"
                                 ? tables
                                 : (many ? reports : reports.front()).dump(2) + "\n";
    if (o.report == "-") {
      out << text;
    } else {
      write_file(o.report, text);
    }
  }
  return kOk;
}

int verify(const VerifyOptions& o, std::ostream& out) {
  const Circuit a = load(o.input, "auto");
  const Circuit b = load(o.output, "auto");
  if (a.n_qubits != b.n_qubits) {
    throw std::invalid_argument("circuits act on different qubit counts (" +
                                std::to_string(a.n_qubits) + " vs " +
                                std::to_string(b.n_qubits) + ")");
  }
  if (a.n_qubits > kDefaultWindowLimit) {
    out << "status: not verifiable at this scale (" << a.n_qubits << " qubits; limit "
        << kDefaultWindowLimit << ")\n";
    return kNotVerifiable;
  }
  const double f = idealized_fidelity(unitary_of(a), unitary_of(b));
  const bool ok = f >= 1.0 - o.tolerance;
  out << std::setprecision(12) << "fidelity: " << f << "\n"
      << "status: " << (ok ? "ok" : "below tolerance") << "\n";
  return ok ? kOk : kBelowTolerance;
}

}  // namespace

ordered_json report_to_json(const OptimizationReport& report) {
  ordered_json j;
  j["input_entangling_count"] = report.input_entangling;
  j["output_entangling_count"] = report.output_entangling;
  j["input_entangling_depth"] = report.input_depth;
  j["output_entangling_depth"] = report.output_depth;
  j["idealized_fidelity"] =
      report.idealized_fidelity ? ordered_json(*report.idealized_fidelity) : ordered_json(nullptr);
  j["estimated_fidelity"] = report.estimated_fidelity;
  j["wall_time"] = report.wall_time;
  j["windows"] = ordered_json::array();
  for (const auto& w : report.windows) {
    ordered_json wj;
    wj["pass"] = w.pass;
    wj["qubits"] = w.qubits;
    wj["begin"] = w.begin;
    wj["end"] = w.end;
    wj["input_entangling_count"] = w.input_entangling;
    wj["output_entangling_count"] = w.output_entangling;
    wj["iterations"] = w.iterations;
    wj["evaluations"] = w.evaluations;
    wj["termination"] = w.termination;
    wj["eliminated"] = w.eliminated;
    wj["idealized_fidelity"] = w.idealized_fidelity;
    wj["fell_back"] = w.fell_back;
    wj["wall_time"] = w.wall_time;
    j["windows"].push_back(std::move(wj));
  }
  return j;
}

std::string report_to_table(const OptimizationReport& report) {
  std::ostringstream s;
  auto fmt_pct = [](double v) {
    std::ostringstream p;
    p << std::fixed << std::setprecision(2) << 100.0 * v << "%";
    return p.str();
  };
  s << std::left << std::setw(26) << "entangling gates" << report.input_entangling << " -> "
    << report.output_entangling << "\n"
    << std::setw(26) << "entangling depth" << report.input_depth << " -> " << report.output_depth
    << "\n"
    << std::setw(26) << "idealized fidelity"
    << (report.idealized_fidelity ? fmt_pct(*report.idealized_fidelity) : "n/a") << "\n"
    << std::setw(26) << "estimated fidelity" << fmt_pct(report.estimated_fidelity) << "\n"
    << std::setw(26) << "wall time" << std::fixed << std::setprecision(3) << report.wall_time
    << " s\n"
    << std::setw(26) << "windows" << report.windows.size() << "\n";
  return s.str();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Noise-aware gradient optimizer for quantum circuits", "gatetrim"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  OptimizeOptions opt;
  auto* optimize_cmd = app.add_subcommand("optimize", "Optimize circuits and report metrics");
  optimize_cmd->add_option("--in", opt.inputs, "Input circuit file(s)")->required();
  optimize_cmd->add_option("--in-format", opt.input_format, "auto, json or qasm")
      ->check(CLI::IsMember({"auto", "json", "qasm"}));
  optimize_cmd->add_option("--out", opt.output,
                           "Output circuit file ('-' for stdout; a directory for several inputs)");
  optimize_cmd->add_option("--out-format", opt.output_format, "auto, json or qasm")
      ->check(CLI::IsMember({"auto", "json", "qasm"}));
  optimize_cmd->add_option("--error-rate", opt.error_rate, "Two-qubit error rate E")
      ->check(CLI::Range(0.0, 0.999999));
  optimize_cmd->add_option("--xi", opt.xi, "Error shape: quadratic, linear or sin2")
      ->check(CLI::IsMember({"quadratic", "linear", "sin2"}));
  optimize_cmd->add_option("--window-size", opt.window_size, "Qubits per window")
      ->check(CLI::Range(2, kDefaultWindowLimit));
  optimize_cmd->add_option("--elim-threshold", opt.elimination_threshold,
                           "Delete gates with |angle| at or below this")
      ->check(CLI::PositiveNumber);
  optimize_cmd->add_option("--fidelity-floor", opt.fidelity_floor,
                           "Keep a window unchanged if its fidelity would drop below this")
      ->check(CLI::Range(0.0, 1.0));
  optimize_cmd->add_option("--fidelity-convention", opt.fidelity_convention,
                           "Reported fidelity: trace (|tr|/d) or trace2 (|tr|^2/d^2)")
      ->check(CLI::IsMember({"trace", "trace2"}));
  optimize_cmd->add_option("--restarts", opt.restarts, "Extra perturbed starts per search")
      ->check(CLI::NonNegativeNumber);
  optimize_cmd->add_option("--seed", opt.seed, "Seed for restart perturbations");
  optimize_cmd->add_option("--report", opt.report, "Report destination ('-' for stdout)");
  optimize_cmd->add_option("--report-format", opt.report_format, "json or table")
      ->check(CLI::IsMember({"json", "table"}));
  optimize_cmd->add_option("--jobs", opt.jobs, "Worker threads for independent windows")
      ->check(CLI::PositiveNumber);
  optimize_cmd->add_option("--entangler", opt.entangler, "Two-qubit form: keep, rzz or fecr")
      ->check(CLI::IsMember({"keep", "rzz", "fecr"}));
  optimize_cmd->add_option("--shifted-passes", opt.shifted_passes,
                           "Extra passes with offset windows")
      ->check(CLI::NonNegativeNumber);
  optimize_cmd->add_flag("--no-probe", opt.no_probe, "Disable zero-pinning probes");
  optimize_cmd->add_option("--max-iterations", opt.max_iterations, "Optimizer iteration cap")
      ->check(CLI::PositiveNumber);
  optimize_cmd->add_flag("-v,--verbose", opt.verbosity, "More diagnostics on stderr");

  VerifyOptions ver;
  auto* verify_cmd = app.add_subcommand("verify", "Compare two circuits by idealized fidelity");
  verify_cmd->add_option("input", ver.input, "Reference circuit")->required();
  verify_cmd->add_option("output", ver.output, "Circuit to check")->required();
  verify_cmd->add_option("--tolerance", ver.tolerance, "Accept fidelity >= 1 - tolerance")
      ->check(CLI::Range(0.0, 1.0));

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*optimize_cmd) return optimize(opt, out, err);
    return verify(ver, out);
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kIo;
  } catch (const UnsupportedGateError& e) {
    err << "error: " << e.what() << "\n";
    return kUnsupportedGate;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const QubitRangeError& e) {
    err << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const OptimizerAbort& e) {
    err << "optimizer abort: " << e.what() << "\n";
    return kOptimizerAbort;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kIo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInternal;
  }
}

}  // namespace gatetrim::cli
