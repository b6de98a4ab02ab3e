#include "openxxz/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace openxxz {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

[[noreturn]] void fail(const std::string& origin, int line,
                       const std::string& message) {
  throw std::runtime_error(origin + ":" + std::to_string(line) + ": " +
                           message);
}

double parse_double(const std::string& s) {
  size_t pos = 0;
  const double x = std::stod(s, &pos);
  if (pos != s.size()) throw std::invalid_argument("trailing characters");
  return x;
}

long parse_long(const std::string& s) {
  size_t pos = 0;
  const long x = std::stol(s, &pos);
  if (pos != s.size()) throw std::invalid_argument("trailing characters");
  return x;
}

int parse_sign(const std::string& s) {
  if (s == "+" || s == "+1" || s == "1") return 1;
  if (s == "-" || s == "-1") return -1;
  throw std::invalid_argument("expected +1 or -1");
}

}  // namespace

Complex parse_complex(const std::string& text) {
  std::string s;
  for (char c : text)
    if (c != ' ' && c != '\t') s.push_back(c);
  if (s.empty()) throw std::invalid_argument("empty complex literal");
  if (s.back() != 'i' && s.back() != 'I') return Complex(parse_double(s), 0.0);

  s.pop_back();
  // Last +/- that is not an exponent sign splits real and imaginary parts.
  size_t split = std::string::npos;
  for (size_t i = 1; i < s.size(); ++i)
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E')
      split = i;
  std::string re = "0", im = s;
  if (split != std::string::npos) {
    re = s.substr(0, split);
    im = s.substr(split);
  }
  if (im.empty() || im == "+") im = "1";
  if (im == "-") im = "-1";
  return Complex(parse_double(re), parse_double(im));
}

Spin parse_spin(const std::string& text) {
  const std::string s = trim(text);
  const auto slash = s.find('/');
  int twice = 0;
  if (slash == std::string::npos) {
    twice = 2 * static_cast<int>(parse_long(s));
  } else {
    if (trim(s.substr(slash + 1)) != "2")
      throw std::invalid_argument("only halves are allowed");
    twice = static_cast<int>(parse_long(trim(s.substr(0, slash))));
  }
  if (twice < 1) throw std::invalid_argument("spin must be positive");
  return Spin{twice};
}

std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.11e", x);
  return buf;
}

std::string format_complex(Complex z) {
  std::string out = format_real(z.real());
  const std::string im = format_real(z.imag());
  if (im[0] != '-') out += '+';
  out += im;
  out += 'i';
  return out;
}

RunConfig default_run_config() {
  RunConfig cfg;
  cfg.chain.n_sites = 2;
  cfg.chain.spin_s = spin_one;
  cfg.chain.eta = Complex(0.0, 0.3);
  cfg.chain.boundary.alpha_minus = Complex(0.0, 0.7);
  cfg.chain.boundary.beta_minus = Complex(0.2, 0.0);
  cfg.chain.boundary.theta_minus = Complex(0.0, 0.5);
  cfg.chain.boundary.alpha_plus = Complex(0.0, 1.2);
  cfg.chain.boundary.beta_plus = Complex(-0.2, 0.0);
  cfg.chain.boundary.theta_plus = Complex(0.0, -1.1);
  cfg.solve_param = "theta_plus";
  return cfg;
}

RunConfig parse_config_text(const std::string& text,
                            const std::string& origin) {
  RunConfig cfg = default_run_config();
  cfg.solve_param.clear();

  std::istringstream in(text);
  std::string raw;
  std::string section;
  int line = 0;
  int solve_marks = 0;

  auto chain_complex = [&](const std::string& key, const std::string& value,
                           Complex& slot, bool solvable) {
    if (solvable && value == "solve") {
      cfg.solve_param = key;
      ++solve_marks;
      return;
    }
    try {
      slot = parse_complex(value);
    } catch (const std::exception&) {
      fail(origin, line, "bad complex literal '" + value + "' for key " + key);
    }
  };

  while (std::getline(in, raw)) {
    ++line;
    std::string s = raw;
    const auto hash = s.find('#');
    if (hash != std::string::npos) s = s.substr(0, hash);
    s = trim(s);
    if (s.empty()) continue;

    if (s.front() == '[') {
      if (s.back() != ']') fail(origin, line, "unterminated section header");
      section = trim(s.substr(1, s.size() - 2));
      if (section != "chain" && section != "sector" &&
          section != "tolerances" && section != "output")
        fail(origin, line, "unknown section [" + section + "]");
      continue;
    }

    const auto eq = s.find('=');
    if (eq == std::string::npos) fail(origin, line, "expected key = value");
    const std::string key = trim(s.substr(0, eq));
    const std::string value = trim(s.substr(eq + 1));
    if (key.empty() || value.empty())
      fail(origin, line, "expected key = value");
    if (section.empty()) fail(origin, line, "key before any section");

    try {
      if (section == "chain") {
        auto& b = cfg.chain.boundary;
        if (key == "n_sites") {
          cfg.chain.n_sites = static_cast<int>(parse_long(value));
          if (cfg.chain.n_sites < 1)
            fail(origin, line, "n_sites must be at least 1");
        } else if (key == "spin") {
          cfg.chain.spin_s = parse_spin(value);
        } else if (key == "eta") {
          chain_complex(key, value, cfg.chain.eta, false);
        } else if (key == "alpha_minus") {
          chain_complex(key, value, b.alpha_minus, true);
        } else if (key == "beta_minus") {
          chain_complex(key, value, b.beta_minus, true);
        } else if (key == "theta_minus") {
          chain_complex(key, value, b.theta_minus, true);
        } else if (key == "alpha_plus") {
          chain_complex(key, value, b.alpha_plus, true);
        } else if (key == "beta_plus") {
          chain_complex(key, value, b.beta_plus, true);
        } else if (key == "theta_plus") {
          chain_complex(key, value, b.theta_plus, true);
        } else {
          fail(origin, line, "unknown key '" + key + "' in [chain]");
        }
      } else if (section == "sector") {
        if (key == "branch") cfg.sector.branch = parse_sign(value);
        else if (key == "eps0") cfg.sector.eps0 = parse_sign(value);
        else if (key == "eps1") cfg.sector.eps1 = parse_sign(value);
        else if (key == "eps2") cfg.sector.eps2 = parse_sign(value);
        else if (key == "eps3") cfg.sector.eps3 = parse_sign(value);
        else if (key == "k") cfg.sector.k = static_cast<int>(parse_long(value));
        else fail(origin, line, "unknown key '" + key + "' in [sector]");
      } else if (section == "tolerances") {
        const double tol = parse_double(value);
        if (tol <= 0.0) fail(origin, line, "tolerance " + key + " not positive");
        cfg.tolerances[key] = tol;
      } else {
        if (key == "format") {
          if (value != "csv" && value != "json")
            fail(origin, line, "format must be csv or json");
          cfg.format = value;
        } else if (key == "path") {
          cfg.out_path = value;
        } else if (key == "seed") {
          cfg.seed = parse_long(value);
        } else {
          fail(origin, line, "unknown key '" + key + "' in [output]");
        }
      }
    } catch (const std::invalid_argument& e) {
      fail(origin, line,
           std::string("bad value '") + value + "' for key " + key + ": " +
               e.what());
    } catch (const std::out_of_range&) {
      fail(origin, line, "value '" + value + "' out of range for key " + key);
    }
  }

  if (solve_marks > 1)
    throw std::runtime_error(origin +
                             ": more than one parameter marked 'solve'");
  return cfg;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), path);
}

}  // namespace openxxz
