#include "hopfcyc/cyclicity.hpp"
#include "hopfcyc/focal.hpp"
#include "hopfcyc/oracle.hpp"
#include "hopfcyc/rigidity.hpp"
#include "hopfcyc/system.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <new>
#include <sstream>

using namespace hopfcyc;

namespace {

enum Exit { kOk = 0, kFailure = 1, kParse = 2, kResource = 3, kNotFound = 4 };

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Config {
  std::string input;
  int K = 12;
  int T = 1;
  int N = 8;
  std::string sample;
  int extra = 1;
  std::vector<double> rho0{1e-3};
  std::vector<std::string> param_values;
  double lambda0 = 0;
  double tolerance = 1e-12;
  std::string eta_file;
  std::string format = "text";
  std::string output;
  std::string catalog_dir = "catalog";
  bool list = false;
  std::size_t max_terms = 0;
  bool radial = false;

  bool machine() const { return format == "machine"; }
};

struct Loaded {
  SystemDocument doc;
  SystemSpec system;
  Perturbation perturbation;
  std::optional<std::uint64_t> seed;
  Assignment sample;
};

std::uint64_t parse_seed(const std::string& text) {
  std::string v = text;
  if (v.rfind("seed=", 0) == 0) v = v.substr(5);
  std::size_t used = 0;
  std::uint64_t seed = 0;
  try {
    seed = std::stoull(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != v.size()) throw UsageError("--sample expects seed=<u64>, got '" + text + "'");
  return seed;
}

// Files with free coefficients are instantiated at a seeded center sample
// (seed 1 unless given).
Loaded load(const Config& c) {
  Loaded l;
  l.doc = load_document(c.input);
  if (l.doc.has_free_coefficients()) {
    l.seed = c.sample.empty() ? 1 : parse_seed(c.sample);
    CatalogEntry e{l.doc};
    l.sample = random_center_sample(e, *l.seed);
    l.system = instantiate_center(e, l.sample);
    l.perturbation = perturbation_of(l.doc);
  } else {
    auto p = to_parsed_system(l.doc);
    l.system = p.system;
    l.perturbation = p.perturbation;
  }
  return l;
}

std::string header(const Loaded& l, const Config& c) {
  std::ostringstream out;
  const std::string sep = c.machine() ? " = " : ": ";
  if (!l.doc.id.empty()) out << "id" << sep << l.doc.id << '\n';
  if (l.seed) {
    out << "seed" << sep << *l.seed << '\n';
    for (const auto& [k, v] : l.sample) out << (c.machine() ? "sample_" + k + " = " : "  " + k + " = ") << to_string(v) << '\n';
  }
  return out.str();
}

FocalResult run_focal(const Loaded& l, const Config& c, int T) {
  FocalOptions o;
  o.max_stored_terms = c.max_terms;
  if (c.radial) o.resonant = ResonantForm::radial;
  return focal_coefficients(l.system, l.perturbation, c.K, T, o);
}

std::string cmd_focal(const Config& c) {
  Loaded l = load(c);
  auto r = run_focal(l, c, c.T);
  std::ostringstream out;
  out << header(l, c);
  const auto& names = r.focal.space->names();
  for (int k = 1; k <= c.K; ++k)
    for (int j = 0; j <= c.T; ++j) {
      std::string s = jet_slice(r.focal[k], j).to_string(names);
      if (c.machine())
        out << "L" << k << "_" << j << " = " << s << '\n';
      else
        out << "L" << k << " degree " << j << ": " << s << '\n';
    }
  return out.str();
}

std::string cmd_rank(const Config& c) {
  Loaded l = load(c);
  auto r = run_focal(l, c, std::max(c.T, 1));
  auto cert = rank_certificate(r.focal);
  return header(l, c) + format_rank_report(cert, r.focal, c.machine());
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string cmd_verify_hot(const Config& c, int& code) {
  Loaded l = load(c);
  auto r = run_focal(l, c, std::max(c.T, 2));
  auto cert = rank_certificate(r.focal);
  auto problem = reduce_to_quadratic_problem(r.focal, cert, c.extra);
  std::ostringstream out;
  out << header(l, c);
  if (!c.eta_file.empty()) {
    LineInput in = parse_line_input(read_file(c.eta_file));
    std::vector<NumberFieldElement> eta;
    for (const auto& name : problem.residual) {
      auto it = std::find(in.names.begin(), in.names.end(), name);
      if (it == in.names.end()) throw UsageError("eta file lacks residual parameter " + name);
      eta.push_back(in.eta[static_cast<std::size_t>(it - in.names.begin())]);
    }
    auto v = verify_line(problem, eta);
    if (c.machine()) {
      out << "kind = line-verification\nverified = " << (v.ok ? "true" : "false") << '\n';
      if (!v.ok) out << "reason = " << v.reason << '\n';
    } else {
      out << "verified: " << (v.ok ? "true" : "false") << '\n';
      if (!v.ok) out << "reason: " << v.reason << '\n';
      else out << "limit cycles: " << problem.target_index() << '\n';
    }
    code = v.ok ? kOk : kNotFound;
    return out.str();
  }
  auto outcome = solve_line(problem);
  if (!outcome.certificate) {
    out << (c.machine() ? "kind = not-found\nreason = " : "NOT-FOUND: ") << outcome.reason << '\n';
    code = kNotFound;
    return out.str();
  }
  out << format_line_report(problem, *outcome.certificate, c.machine());
  return out.str();
}

std::vector<double> parameter_values(const Perturbation& p, const std::vector<std::string>& given) {
  std::vector<double> values(p.size(), 0.0);
  auto names = p.names();
  for (const auto& item : given) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw UsageError("--param expects name=value, got '" + item + "'");
    std::string name = item.substr(0, eq);
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) throw UsageError("unknown parameter '" + name + "'");
    values[static_cast<std::size_t>(it - names.begin())] = std::stod(item.substr(eq + 1));
  }
  return values;
}

std::string cmd_simulate(const Config& c) {
  Loaded l = load(c);
  auto values = parameter_values(l.perturbation, c.param_values);
  NumericField field(l.system, l.perturbation, values, c.lambda0);
  OracleOptions o;
  o.tolerance = c.tolerance;
  std::ostringstream out;
  out << csv_header() << '\n';
  for (double rho0 : c.rho0) out << csv_row(reduced_displacement(field, rho0, o)) << '\n';
  return out.str();
}

std::string cmd_rigidity(const Config& c) {
  Loaded l = load(c);
  auto v = classify_rigidity(l.system, c.N);
  std::ostringstream out;
  out << header(l, c);
  if (c.machine()) {
    out << "cylindrically_rigid = " << (v.cylindrical ? "true" : "false") << '\n';
    out << "rigid_on_center_manifold = " << (v.on_center_manifold ? "true" : "false") << '\n';
    out << "order = " << v.order << '\n';
    if (!v.obstruction.is_zero()) out << "obstruction = " << to_string(v.obstruction) << '\n';
  } else {
    out << "cylindrically rigid: " << (v.cylindrical ? "true" : "false") << '\n';
    out << "rigid on the center manifold through degree " << v.order << ": "
        << (v.on_center_manifold ? "true" : "false") << '\n';
    if (!v.obstruction.is_zero()) out << "lowest surviving terms of (xQ - yP)|z=h: " << to_string(v.obstruction) << '\n';
  }
  return out.str();
}

std::string cmd_catalog(const Config& c) {
  auto entries = load_catalog(c.catalog_dir);
  std::ostringstream out;
  for (const auto& e : entries) {
    if (c.machine()) {
      out << "entry = " << e.id() << '\n';
    } else {
      out << e.id() << "  K=" << e.focal_count();
      if (e.expected_rank()) out << "  expected rank " << *e.expected_rank();
      out << "  conditions " << e.center_condition().size() << "\n    " << e.doc.source << '\n';
    }
  }
  if (!c.machine()) out << entries.size() << " entries\n";
  return out.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Focal coefficients and cyclicity certificates for Hopf points in R^3"};
  app.require_subcommand(1);
  Config c;

  auto common = [&c](CLI::App* sub, bool with_jets) {
    sub->add_option("input", c.input, "system file")->required()->check(CLI::ExistingFile);
    sub->add_option("--sample", c.sample, "seed=<u64> for files with free coefficients");
    sub->add_option("--format", c.format, "text or machine")->check(CLI::IsMember({"text", "machine"}));
    sub->add_option("-o", c.output, "output file");
    if (with_jets) {
      sub->add_option("-K", c.K, "number of focal coefficients")->check(CLI::PositiveNumber);
      sub->add_option("-T", c.T, "jet order in the parameters")->check(CLI::NonNegativeNumber);
      sub->add_option("--max-terms", c.max_terms, "memory budget in stored jet coefficients (0 = none)");
      sub->add_flag("--radial", c.radial, "place L_k on (x^2+y^2)^(k+1) instead of x^(2k+2)");
    }
  };

  auto* focal = app.add_subcommand("focal", "print focal coefficients by parameter degree");
  common(focal, true);
  auto* rank = app.add_subcommand("rank", "rank of the linear parts");
  common(rank, true);
  auto* hot = app.add_subcommand("verify-hot", "higher-order criterion: reduce, solve for a line, verify");
  common(hot, true);
  hot->add_option("--extra", c.extra, "number of quadratic forms beyond the rank")->check(CLI::PositiveNumber);
  hot->add_option("--eta-file", c.eta_file, "verify a line from a machine-format report")->check(CLI::ExistingFile);
  auto* sim = app.add_subcommand("simulate", "reduced displacement samples as CSV");
  common(sim, false);
  sim->add_option("--rho0", c.rho0, "initial radii")->check(CLI::PositiveNumber);
  sim->add_option("--param", c.param_values, "perturbation value name=value");
  sim->add_option("--lambda0", c.lambda0, "trace perturbation");
  sim->add_option("--tol", c.tolerance, "integrator tolerance");
  auto* rig = app.add_subcommand("rigidity", "rigidity verdicts");
  common(rig, false);
  rig->add_option("-N", c.N, "center manifold order")->check(CLI::Range(2, 64));
  auto* cat = app.add_subcommand("catalog", "list catalog entries");
  cat->add_flag("--list", c.list, "list entries");
  cat->add_option("--dir", c.catalog_dir, "catalog directory");
  cat->add_option("--format", c.format, "text or machine")->check(CLI::IsMember({"text", "machine"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kParse;
  }

  int code = kOk;
  std::string text;
  try {
    if (*focal) text = cmd_focal(c);
    else if (*rank) text = cmd_rank(c);
    else if (*hot) text = cmd_verify_hot(c, code);
    else if (*sim) text = cmd_simulate(c);
    else if (*rig) text = cmd_rigidity(c);
    else text = cmd_catalog(c);
  } catch (const ParseError& e) {
    std::cerr << c.input << ":" << e.line() << ":" << e.column() << ": " << e.what() << '\n';
    return kParse;
  } catch (const ValidationError& e) {
    std::cerr << c.input << ": " << e.what() << '\n';
    return kParse;
  } catch (const ConditionViolation& e) {
    std::cerr << c.input << ": " << e.what() << '\n';
    return kParse;
  } catch (const UsageError& e) {
    std::cerr << e.what() << '\n';
    return kParse;
  } catch (const ResourceError& e) {
    std::cerr << e.what() << " (last completed k = " << e.last_completed_k() << ")\n";
    return kResource;
  } catch (const std::bad_alloc&) {
    std::cerr << "out of memory\n";
    return kResource;
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << '\n';
    return kParse;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailure;
  }

  if (c.output.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(c.output);
    if (!out) {
      std::cerr << "cannot write " << c.output << '\n';
      return kFailure;
    }
    out << text;
  }
  return code;
}
