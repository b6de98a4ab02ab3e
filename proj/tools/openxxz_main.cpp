#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "openxxz/bethe.hpp"
#include "openxxz/boundary.hpp"
#include "openxxz/config.hpp"
#include "openxxz/fusion.hpp"
#include "openxxz/spin_one.hpp"
#include "openxxz/transfer.hpp"

namespace {

using namespace openxxz;

struct Value {
  enum Kind { integer, real, cplx, text } kind = text;
  long i = 0;
  double d = 0.0;
  Complex z;
  std::string s;

  static Value of_int(long v) { return {integer, v, 0.0, {}, {}}; }
  static Value of_real(double v) { return {real, 0, v, {}, {}}; }
  static Value of_complex(Complex v) { return {cplx, 0, 0.0, v, {}}; }
  static Value of_text(std::string v) {
    return {text, 0, 0.0, {}, std::move(v)};
  }
};

struct Table {
  std::vector<std::string> notes;
  std::vector<std::string> columns;
  std::vector<std::vector<Value>> rows;
};

std::string render_cell(const Value& v) {
  switch (v.kind) {
    case Value::integer: return std::to_string(v.i);
    case Value::real: return format_real(v.d);
    case Value::cplx: return format_complex(v.z);
    default: return v.s;
  }
}

std::string render_csv(const Table& t) {
  std::string out;
  for (const auto& n : t.notes) out += "# " + n + "\n";
  for (size_t c = 0; c < t.columns.size(); ++c) {
    if (c) out += ',';
    out += t.columns[c];
  }
  out += '\n';
  for (const auto& row : t.rows) {
    for (size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      out += render_cell(row[c]);
    }
    out += '\n';
  }
  return out;
}

std::string render_json(const Table& t) {
  nlohmann::json doc;
  doc["notes"] = t.notes;
  doc["rows"] = nlohmann::json::array();
  for (const auto& row : t.rows) {
    nlohmann::json obj;
    for (size_t c = 0; c < row.size(); ++c) {
      const Value& v = row[c];
      switch (v.kind) {
        case Value::integer: obj[t.columns[c]] = v.i; break;
        case Value::real: obj[t.columns[c]] = v.d; break;
        case Value::cplx:
          obj[t.columns[c]] = {v.z.real(), v.z.imag()};
          break;
        default: obj[t.columns[c]] = v.s;
      }
    }
    doc["rows"].push_back(std::move(obj));
  }
  return doc.dump(2) + "\n";
}

void write_output(const Table& t, const RunConfig& cfg) {
  const std::string body =
      cfg.format == "json" ? render_json(t) : render_csv(t);
  if (cfg.out_path.empty()) {
    std::cout << body;
    return;
  }
  std::ofstream out(cfg.out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + cfg.out_path);
  out << body;
}

double tolerance(const RunConfig& cfg, const std::string& name,
                 double fallback) {
  const auto it = cfg.tolerances.find(name);
  return it == cfg.tolerances.end() ? fallback : it->second;
}

std::string spin_label(Spin s) {
  if (s.twice % 2 == 0) return std::to_string(s.twice / 2);
  return std::to_string(s.twice) + "/2";
}

std::vector<std::string> chain_notes(const RunConfig& cfg) {
  return {"seed " + std::to_string(cfg.seed),
          "n_sites " + std::to_string(cfg.chain.n_sites),
          "spin " + spin_label(cfg.chain.spin_s),
          "eta " + format_complex(cfg.chain.eta)};
}

int env_max_dim() {
  if (const char* raw = std::getenv("BETHE_MAX_DIM")) {
    const int v = std::atoi(raw);
    if (v > 0) return v;
  }
  return 256;
}

void apply_solve(RunConfig& cfg) {
  if (cfg.solve_param.empty()) return;
  if (cfg.solve_param != "theta_plus")
    throw std::runtime_error("only theta_plus can be marked 'solve'");
  cfg.chain.boundary.theta_plus =
      solve_theta_plus(cfg.chain.boundary, cfg.sector, cfg.chain.eta);
}

// Yang-Baxter residual on three qubit slots with a separately tunable
// anisotropy in the R12 factor; a nonzero shift is the negative control.
double ybe_fundamental(Complex u, Complex v, Complex eta, double eta_shift) {
  const Complex eta12 = eta + eta_shift;
  const Matrix id2 = Matrix::Identity(2, 2);
  const Matrix p23 = perm2(3, 1, 2);
  const Matrix r12 = kron(fundamental_r(u - v, eta12), id2);
  const Matrix r23 = kron(id2, fundamental_r(v, eta));
  const Matrix r13 = p23 * kron(fundamental_r(u, eta), id2) * p23;
  const Matrix lhs = r12 * r13 * r23;
  const Matrix rhs = r23 * r13 * r12;
  return (lhs - rhs).norm() / rhs.norm();
}

struct Check {
  std::string name;
  double residual = 0.0;
  double tol = 0.0;
  bool pass() const { return residual <= tol; }
};

void append_appendix_checks(const RunConfig& cfg, std::vector<Check>& out) {
  const double tol_exp = tolerance(cfg, "fund_exp", 1e-12);
  for (int n = 1; n <= 6; ++n)
    out.push_back({"fund_exp_" + std::to_string(n), verify_fund_exp(n),
                   tol_exp});
  const double tol_conj = tolerance(cfg, "conjecture", 1e-13);
  for (int twice : {3, 4, 5})
    out.push_back({"conjecture_" + spin_label(Spin{twice}),
                   verify_conjecture(Spin{twice}), tol_conj});
  out.push_back({"least_squares_3", verify_conjecture(Spin{6}),
                 tolerance(cfg, "least_squares", 1e-10)});
}

int cmd_verify(const RunConfig& cfg, bool appendix_only, double corrupt_eta) {
  std::mt19937_64 rng(static_cast<unsigned long long>(cfg.seed));
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  auto draw = [&]() { return Complex(unit(rng), unit(rng)); };

  const ChainSpec& spec = cfg.chain;
  const Spin s = spec.spin_s;
  std::vector<Check> checks;

  if (!appendix_only) {
    double worst = 0.0;
    for (int t = 0; t < 20; ++t) {
      const Complex u = draw();
      const Matrix r = fundamental_r(u, spec.eta);
      const Matrix target =
          -xi(u, spec.eta) * Matrix::Identity(4, 4);
      worst = std::max(
          worst, (r * fundamental_r(-u, spec.eta) - target).norm() /
                     target.norm());
    }
    checks.push_back({"unitarity", worst, tolerance(cfg, "unitarity", 1e-12)});

    const std::vector<std::array<Spin, 3>> triples = {
        {spin_half, spin_half, spin_half},
        {spin_half, spin_half, spin_one},
        {spin_half, spin_one, spin_one},
        {spin_half, spin_half, s},
        {spin_half, s, s}};
    worst = 0.0;
    for (int t = 0; t < 20; ++t) {
      const auto& tr = triples[t % triples.size()];
      worst = std::max(worst, check_ybe(tr[0], tr[1], tr[2], draw(), draw(),
                                        spec.eta));
    }
    if (corrupt_eta != 0.0)
      worst = std::max(worst,
                       ybe_fundamental(draw(), draw(), spec.eta, corrupt_eta));
    checks.push_back({"ybe", worst, tolerance(cfg, "ybe", 1e-12)});

    worst = 0.0;
    for (int t = 0; t < 12; ++t) {
      const Spin j = t % 2 ? spin_one : spin_half;
      const Spin q = t % 4 < 2 ? s : spin_half;
      worst = std::max(worst, check_bybe(j, q, draw(), draw(), spec.eta,
                                         spec.boundary));
    }
    checks.push_back({"bybe", worst, tolerance(cfg, "bybe", 1e-12)});

    worst = 0.0;
    for (int t = 0; t < 8; ++t) {
      const Spin j1 = t % 2 ? spin_one : spin_half;
      const Spin j2 = t % 3 ? spin_half : spin_one;
      worst = std::max(
          worst, check_commutativity(spec, j1, j2, draw(), draw()));
    }
    checks.push_back(
        {"commutativity", worst, tolerance(cfg, "commutativity", 1e-11)});

    worst = 0.0;
    for (int t = 0; t < 4; ++t) {
      const Spin j = t % 2 ? Spin{3} : Spin{2};
      worst = std::max(worst, check_fusion_hierarchy(spec, j, draw()));
    }
    checks.push_back({"hierarchy", worst, tolerance(cfg, "hierarchy", 1e-9)});

    worst = 0.0;
    for (int t = 0; t < 3; ++t)
      worst = std::max(worst, check_periodicity(spec, draw()));
    checks.push_back(
        {"periodicity", worst, tolerance(cfg, "periodicity", 1e-10)});

    worst = 0.0;
    for (int t = 0; t < 3; ++t)
      worst = std::max(worst, check_crossing(spec, draw()));
    checks.push_back({"crossing", worst, tolerance(cfg, "crossing", 1e-10)});

    checks.push_back(
        {"initial", check_initial(spec), tolerance(cfg, "initial", 1e-10)});

    ChainSpec flat = spec;
    flat.eta = 0.0;
    worst = std::max(check_semiclassical(flat, draw()),
                     check_semiclassical(flat, draw()));
    checks.push_back(
        {"semiclassical", worst, tolerance(cfg, "semiclassical", 1e-12)});

    checks.push_back({"asymptotic", check_asymptotic(spec, 12.0),
                      tolerance(cfg, "asymptotic", 1e-8)});
  }
  append_appendix_checks(cfg, checks);

  Table t;
  t.notes = chain_notes(cfg);
  t.columns = {"check", "residual", "tolerance", "status"};
  bool all_pass = true;
  for (const auto& c : checks) {
    all_pass = all_pass && c.pass();
    t.rows.push_back({Value::of_text(c.name), Value::of_real(c.residual),
                      Value::of_real(c.tol),
                      Value::of_text(c.pass() ? "pass" : "fail")});
  }
  write_output(t, cfg);
  return all_pass ? 0 : 1;
}

int cmd_spectrum(const RunConfig& cfg, int max_dim) {
  const Complex u0(0.83, 0.31);
  const auto levels = spectrum(cfg.chain, u0, max_dim);
  const Complex scale =
      std::pow(g_scalar(cfg.chain, u0), 2 * cfg.chain.n_sites);

  Table t;
  t.notes = chain_notes(cfg);
  t.notes.push_back("u0 " + format_complex(u0));
  t.columns = {"index", "lambda", "lambda_rescaled", "degenerate"};
  for (const auto& lv : levels)
    t.rows.push_back({Value::of_int(lv.index), Value::of_complex(lv.lambda0),
                      Value::of_complex(lv.lambda0 / scale),
                      Value::of_int(lv.degenerate_flag ? 1 : 0)});
  write_output(t, cfg);
  return 0;
}

std::vector<int> default_k_list(const ChainSpec& spec) {
  const int kmax = spec.spin_s.twice * spec.n_sites + 1;
  std::vector<int> ks;
  for (int k = kmax; k >= -kmax; k -= 2) ks.push_back(k);
  return ks;
}

int cmd_classify(const RunConfig& cfg, const std::vector<int>& ks,
                 int max_dim) {
  const double fit_tol = tolerance(cfg, "fit", 1e-8);
  Table t;
  t.notes = chain_notes(cfg);
  t.columns = {"k", "count_minus", "count_plus", "dual_fit_count",
               "no_fit_count"};
  int unmatched = 0;
  for (int k : ks) {
    try {
      const ClassifyRow row = classify_k(cfg.chain, cfg.sector, k, fit_tol,
                                         max_dim);
      unmatched += row.none_count;
      t.rows.push_back({Value::of_int(row.k), Value::of_int(row.count_minus),
                        Value::of_int(row.count_plus),
                        Value::of_int(row.dual_count),
                        Value::of_int(row.none_count)});
    } catch (const std::exception& e) {
      std::cerr << "skipping k=" << k << ": " << e.what() << "\n";
    }
  }
  write_output(t, cfg);
  return unmatched == 0 ? 0 : 1;
}

int cmd_energies(const RunConfig& cfg, int max_dim) {
  if (cfg.chain.spin_s.twice != 2)
    throw std::runtime_error("energies requires spin 1");
  const ChainSpec& spec = cfg.chain;
  const auto levels = spectrum(spec, Complex(0.83, 0.31), max_dim);
  TransferCache cache(spec);
  SectorConfig minus = cfg.sector, plus = cfg.sector;
  minus.branch = -1;
  plus.branch = +1;
  const double fit_tol = tolerance(cfg, "fit", 1e-8);
  const double energy_tol = tolerance(cfg, "energy", 1e-7);

  struct Row {
    char tag;
    int level;
    int m;
    Complex direct, bethe;
    std::vector<Complex> roots;
  };
  std::vector<Row> rows;
  size_t assigned = 0;
  for (const auto& [sector, tag] :
       {std::pair(minus, '-'), std::pair(plus, '+')}) {
    const auto se = sector_energies(spec, sector, levels, cache, fit_tol);
    assigned += se.level_indices.size();
    for (size_t i = 0; i < se.level_indices.size(); ++i) {
      Row r;
      r.tag = tag;
      r.level = se.level_indices[i];
      r.m = static_cast<int>(se.roots[i].size());
      r.direct = se.direct[i];
      r.bethe = se.energies[i];
      for (const auto& v : se.roots[i]) r.roots.push_back(v + spec.eta / 2.0);
      rows.push_back(std::move(r));
    }
  }
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    return a.direct.real() < b.direct.real();
  });

  Table t;
  t.notes = chain_notes(cfg);
  t.columns = {"sector", "level", "m", "e_direct", "e_bethe", "difference",
               "roots"};
  bool all_pass = assigned == levels.size();
  for (const auto& r : rows) {
    const double diff = std::abs(r.direct - r.bethe);
    all_pass = all_pass && diff <= energy_tol;
    std::string roots;
    for (size_t i = 0; i < r.roots.size(); ++i) {
      if (i) roots += ';';
      roots += format_complex(r.roots[i]);
    }
    t.rows.push_back({Value::of_text(std::string(1, r.tag)),
                      Value::of_int(r.level), Value::of_int(r.m),
                      Value::of_complex(r.direct), Value::of_complex(r.bethe),
                      Value::of_real(diff), Value::of_text(roots)});
  }
  write_output(t, cfg);
  return all_pass ? 0 : 1;
}

std::vector<int> parse_k_list(const std::string& text) {
  std::vector<int> ks;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ','))
    if (!item.empty()) ks.push_back(std::stoi(item));
  return ks;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Transfer matrices and Bethe roots of the open XXZ chain"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path, format, out_path, k_text;
  long seed = -1;
  std::vector<std::string> tol_args;
  app.add_option("--config", config_path, "Config file path");
  app.add_option("--format", format, "Output format: csv or json");
  app.add_option("--out", out_path, "Output file (default stdout)");
  app.add_option("--seed", seed, "Seed for randomized checks");
  app.add_option("--k", k_text, "Comma-separated k values for classify");
  app.add_option("--tol", tol_args, "Tolerance override NAME=VAL");

  double corrupt_eta = 0.0;
  auto* verify = app.add_subcommand("verify", "Run the identity checks");
  verify->add_option("--corrupt-eta", corrupt_eta,
                     "Shift eta in one Yang-Baxter factor (negative control)");
  auto* appendix =
      app.add_subcommand("appendix-check", "Run only the projector checks");
  auto* spect =
      app.add_subcommand("spectrum", "Eigenvalues of the fundamental transfer");
  auto* classify =
      app.add_subcommand("classify", "Sector counts per k against both signs");
  auto* energies =
      app.add_subcommand("energies", "Direct and Bethe energies per level");

  CLI11_PARSE(app, argc, argv);

  try {
    RunConfig cfg = config_path.empty() ? default_run_config()
                                        : parse_config_file(config_path);
    if (!format.empty()) {
      if (format != "csv" && format != "json")
        throw std::runtime_error("format must be csv or json");
      cfg.format = format;
    }
    if (!out_path.empty()) cfg.out_path = out_path;
    if (seed >= 0) cfg.seed = seed;
    for (const auto& arg : tol_args) {
      const auto eq = arg.find('=');
      if (eq == std::string::npos)
        throw std::runtime_error("expected --tol NAME=VAL, got " + arg);
      const double val = std::stod(arg.substr(eq + 1));
      if (val <= 0.0) throw std::runtime_error("tolerance must be positive");
      cfg.tolerances[arg.substr(0, eq)] = val;
    }
    apply_solve(cfg);
    const int max_dim = env_max_dim();

    if (verify->parsed()) return cmd_verify(cfg, false, corrupt_eta);
    if (appendix->parsed()) return cmd_verify(cfg, true, 0.0);
    if (spect->parsed()) return cmd_spectrum(cfg, max_dim);
    if (classify->parsed()) {
      const std::vector<int> ks =
          k_text.empty() ? default_k_list(cfg.chain) : parse_k_list(k_text);
      return cmd_classify(cfg, ks, max_dim);
    }
    if (energies->parsed()) return cmd_energies(cfg, max_dim);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
