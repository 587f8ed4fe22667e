#include "eos/config.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <regex>
#include <set>
#include <sstream>

#include "eos/errors.hpp"
#include "eos/units.hpp"
#include "eos/waveplate.hpp"

namespace eos {

std::vector<double> DelaySpec::values() const {
  if (!scan) return {value};
  std::vector<double> v;
  long n = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
  for (long i = 0; i < n; ++i) v.push_back(start + i * step);
  return v;
}

namespace {

const std::regex number_re(R"(^[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?$)");

struct Value {
  enum Kind { Number, String, Table } kind = Number;
  std::string text;
  std::map<std::string, std::string> table;
  int line = 0;
};

using Section = std::map<std::string, Value>;
using Document = std::map<std::string, Section>;

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(int line, const std::string& msg) {
  throw ParseError("config line " + std::to_string(line) + ": " + msg);
}

std::string strip_comment(const std::string& s) {
  bool in_str = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '"' && (i == 0 || s[i - 1] != '\\')) in_str = !in_str;
    if (s[i] == '#' && !in_str) return s.substr(0, i);
  }
  return s;
}

Value parse_value(const std::string& raw, int line) {
  std::string v = trim(raw);
  Value out;
  out.line = line;
  if (v.empty()) fail(line, "missing value");
  if (v.front() == '"') {
    if (v.size() < 2 || v.back() != '"') fail(line, "unterminated string");
    std::string s;
    for (std::size_t i = 1; i + 1 < v.size(); ++i) {
      if (v[i] == '\\' && i + 2 < v.size()) ++i;
      else if (v[i] == '"') fail(line, "stray quote in string");
      s += v[i];
    }
    out.kind = Value::String;
    out.text = s;
    return out;
  }
  if (v.front() == '{') {
    if (v.back() != '}') fail(line, "unterminated inline table");
    out.kind = Value::Table;
    std::stringstream ss(v.substr(1, v.size() - 2));
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (trim(item).empty()) continue;
      auto eq = item.find('=');
      if (eq == std::string::npos) fail(line, "inline table entry without '='");
      std::string k = trim(item.substr(0, eq)), val = trim(item.substr(eq + 1));
      if (!std::regex_match(val, number_re)) fail(line, "inline table value is not a number: " + val);
      if (!out.table.emplace(k, val).second) fail(line, "duplicate inline key " + k);
    }
    return out;
  }
  if (!std::regex_match(v, number_re)) fail(line, "not a number or quoted string: " + v);
  out.text = v;
  return out;
}

Document parse_document(const std::string& text) {
  Document doc;
  std::stringstream in(text);
  std::string line, section;
  int no = 0;
  while (std::getline(in, line)) {
    ++no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string s = trim(strip_comment(line));
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') fail(no, "malformed section header");
      section = trim(s.substr(1, s.size() - 2));
      if (section.empty()) fail(no, "empty section name");
      if (doc.count(section)) fail(no, "duplicate section [" + section + "]");
      doc[section];
      continue;
    }
    auto eq = s.find('=');
    if (eq == std::string::npos) fail(no, "expected key = value");
    if (section.empty()) fail(no, "key outside any section");
    std::string key = trim(s.substr(0, eq));
    if (key.empty()) fail(no, "empty key");
    Value v = parse_value(s.substr(eq + 1), no);
    if (!doc[section].emplace(key, v).second) fail(no, "duplicate key " + key);
  }
  return doc;
}

}  // namespace

double parse_scaled(const std::string& literal, int shift) {
  std::string s = trim(literal);
  if (!std::regex_match(s, number_re)) throw ParseError("not a number: " + s);
  std::string mant = s;
  long ex = 0;
  auto e = s.find_first_of("eE");
  if (e != std::string::npos) {
    mant = s.substr(0, e);
    ex = std::stol(s.substr(e + 1));
  }
  std::string rebuilt = mant + "e" + std::to_string(ex + shift);
  return std::strtod(rebuilt.c_str(), nullptr);
}

namespace {

// Reads the keys of one section, enforcing that every key is known.
class Reader {
 public:
  Reader(Document& d, const std::string& name) : name_(name) {
    auto it = d.find(name);
    if (it != d.end()) sec_ = &it->second;
  }
  ~Reader() noexcept(false) {
    if (!sec_ || std::uncaught_exceptions()) return;
    for (auto& [k, v] : *sec_)
      if (!used_.count(k))
        throw ValidationError("unknown key " + name_ + "." + k + " (line " +
                              std::to_string(v.line) + ")");
  }
  const Value* get(const std::string& key) {
    used_.insert(key);
    if (!sec_) return nullptr;
    auto it = sec_->find(key);
    return it == sec_->end() ? nullptr : &it->second;
  }
  // quantity given either in internal units (key_int) or SI (key_si, scaled)
  bool number(const std::string& key_int, const std::string& key_si, int shift, double& out) {
    const Value* a = get(key_int);
    const Value* b = key_si.empty() ? nullptr : get(key_si);
    if (a && b) fail(b->line, name_ + ": both " + key_int + " and " + key_si + " given");
    const Value* v = a ? a : b;
    if (!v) return false;
    if (v->kind != Value::Number) fail(v->line, name_ + "." + (a ? key_int : key_si) + " must be a number");
    out = parse_scaled(v->text, a ? 0 : shift);
    return true;
  }
  bool integer(const std::string& key, int& out) {
    const Value* v = get(key);
    if (!v) return false;
    if (v->kind != Value::Number || !std::regex_match(v->text, std::regex(R"(^[+-]?\d+$)")))
      fail(v ? v->line : 0, name_ + "." + key + " must be an integer");
    out = std::stoi(v->text);
    return true;
  }
  bool string(const std::string& key, std::string& out) {
    const Value* v = get(key);
    if (!v) return false;
    if (v->kind != Value::String) fail(v->line, name_ + "." + key + " must be a quoted string");
    out = v->text;
    return true;
  }
  bool table(const std::string& key, const Value*& out) {
    const Value* v = get(key);
    if (!v) return false;
    if (v->kind != Value::Table) fail(v->line, name_ + "." + key + " must be an inline table");
    out = v;
    return true;
  }

 private:
  std::string name_;
  Section* sec_ = nullptr;
  std::set<std::string> used_;
};

}  // namespace

namespace {

// key without its unit suffix, so an override replaces every alias
std::string stem(const std::string& key) {
  if (key.rfind("delta_t", 0) == 0) return "delta_t";
  for (const char* suf : {"_um", "_m", "_fs", "_s", "_THz", "_Hz", "_rad"}) {
    std::string sf(suf);
    if (key.size() > sf.size() && key.compare(key.size() - sf.size(), sf.size(), sf) == 0)
      return key.substr(0, key.size() - sf.size());
  }
  return key;
}

void apply_override(Document& doc, const std::string& ov) {
  auto eq = ov.find('=');
  auto dot = ov.find('.');
  if (eq == std::string::npos || dot == std::string::npos || dot > eq)
    throw ParseError("override must read section.key=value: " + ov);
  std::string section = trim(ov.substr(0, dot));
  std::string key = trim(ov.substr(dot + 1, eq - dot - 1));
  Value v = parse_value(ov.substr(eq + 1), 0);
  auto& sec = doc[section];
  for (auto it = sec.begin(); it != sec.end();)
    it = stem(it->first) == stem(key) ? sec.erase(it) : std::next(it);
  sec[key] = v;
}

}  // namespace

ExperimentConfig load_config(const std::string& text, const std::vector<std::string>& overrides) {
  Document doc = parse_document(text);
  for (const auto& ov : overrides) apply_override(doc, ov);
  static const std::set<std::string> known = {"experiment", "crystal", "pulses",
                                              "angles",     "numerics", "output"};
  for (auto& [name, sec] : doc)
    if (!known.count(name)) throw ValidationError("unknown section [" + name + "]");

  ExperimentConfig c;
  {
    Reader r(doc, "experiment");
    r.number("delta_r_um", "delta_r_m", 6, c.delta_r_um);
    double dt;
    bool scalar = r.number("delta_t_fs", "delta_t_s", 15, dt);
    const Value* scan = nullptr;
    const Value* scan_si = nullptr;
    bool has_scan = r.table("delta_t_scan", scan);
    bool has_scan_si = r.table("delta_t_scan_s", scan_si);
    if ((scalar ? 1 : 0) + (has_scan ? 1 : 0) + (has_scan_si ? 1 : 0) > 1)
      throw ValidationError("experiment: give exactly one of delta_t_fs, delta_t_s, delta_t_scan");
    if (scalar) c.delta_t.value = dt;
    if (has_scan || has_scan_si) {
      const Value* t = has_scan ? scan : scan_si;
      int shift = has_scan ? 0 : 15;
      for (const char* k : {"start", "stop", "step"})
        if (!t->table.count(k)) fail(t->line, std::string("delta_t_scan lacks ") + k);
      if (t->table.size() != 3) fail(t->line, "delta_t_scan takes only start, stop, step");
      c.delta_t.scan = true;
      c.delta_t.start = parse_scaled(t->table.at("start"), shift);
      c.delta_t.stop = parse_scaled(t->table.at("stop"), shift);
      c.delta_t.step = parse_scaled(t->table.at("step"), shift);
    }
  }
  {
    Reader r(doc, "crystal");
    r.string("model", c.medium.model);
    r.number("n", "", 0, c.medium.n);
    r.number("n_g", "", 0, c.medium.n_g);
    r.number("L_um", "L_m", 6, c.length_um);
    r.string("table_path", c.medium.table_path);
    r.number("eps_inf", "", 0, c.medium.eps_inf);
    r.number("omega_TO_THz", "omega_TO_Hz", -12, c.medium.omega_to_thz);
    r.number("omega_LO_THz", "omega_LO_Hz", -12, c.medium.omega_lo_thz);
    r.number("gamma_THz", "gamma_Hz", -12, c.medium.gamma_thz);
  }
  {
    Reader r(doc, "pulses");
    r.string("shape", c.pulses.shape);
    r.number("waist_um", "waist_m", 6, c.pulses.waist_um);
    r.number("duration_fs", "duration_s", 15, c.pulses.duration_fs);
    c.pulses.waist2_um = c.pulses.waist_um;
    c.pulses.duration2_fs = c.pulses.duration_fs;
    r.number("waist2_um", "waist2_m", 6, c.pulses.waist2_um);
    r.number("duration2_fs", "duration2_s", 15, c.pulses.duration2_fs);
  }
  {
    Reader r(doc, "angles");
    double t1 = 0.0, t2 = 0.0;
    bool a = r.number("theta1_rad", "", 0, t1);
    bool b = r.number("theta2_rad", "", 0, t2);
    if (a != b) throw ValidationError("angles: give both theta1_rad and theta2_rad");
    if (a) c.angles = std::pair{t1, t2};
  }
  {
    Reader r(doc, "numerics");
    r.number("omega_max_THz", "omega_max_Hz", -12, c.numerics.omega_max_thz);
    r.integer("n_omega", c.numerics.n_omega);
    c.numerics.rho_cutoff_um = c.pulses.waist_um / 100.0;
    r.number("rho_cutoff_um", "rho_cutoff_m", 6, c.numerics.rho_cutoff_um);
    r.number("tau_pad_fs", "tau_pad_s", 15, c.numerics.tau_pad_fs);
    r.number("tolerance", "", 0, c.numerics.tolerance);
    r.integer("n_transverse", c.numerics.n_transverse);
    r.integer("gl_order", c.numerics.gl_order);
    r.integer("z_panels", c.numerics.z_panels);
    r.string("path", c.numerics.path);
  }
  {
    Reader r(doc, "output");
    r.string("path", c.output_path);
    r.string("format", c.output_format);
  }
  auto diags = validate_config(c);
  if (!diags.empty()) throw ValidationError(format_diagnostics(diags));
  return c;
}

ExperimentConfig load_config_file(const std::string& path,
                                  const std::vector<std::string>& overrides) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  ExperimentConfig c = load_config(ss.str(), overrides);
  namespace fs = std::filesystem;
  if (!c.medium.table_path.empty() && fs::path(c.medium.table_path).is_relative())
    c.medium.table_path = (fs::path(path).parent_path() / c.medium.table_path).lexically_normal().string();
  return c;
}

namespace {

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::vector<Diagnostic> validate_config(const ExperimentConfig& c) {
  std::vector<Diagnostic> d;
  auto need = [&](bool ok, const std::string& key, double v, const std::string& what) {
    if (!ok) d.push_back({key, num(v), what});
  };
  auto need_s = [&](bool ok, const std::string& key, const std::string& v, const std::string& what) {
    if (!ok) d.push_back({key, v, what});
  };
  need(std::isfinite(c.delta_r_um), "experiment.delta_r_um", c.delta_r_um, "finite");
  if (c.delta_t.scan) {
    need(c.delta_t.step > 0.0, "experiment.delta_t_scan.step", c.delta_t.step, "step > 0");
    need(c.delta_t.stop >= c.delta_t.start, "experiment.delta_t_scan.stop", c.delta_t.stop,
         "stop >= start");
  } else {
    need(std::isfinite(c.delta_t.value), "experiment.delta_t_fs", c.delta_t.value, "finite");
  }
  need(c.length_um > 0.0, "crystal.L_um", c.length_um, "L > 0");
  const auto& m = c.medium;
  need_s(m.model == "dispersionless" || m.model == "lorentz" || m.model == "table",
         "crystal.model", m.model, "one of dispersionless, lorentz, table");
  need(m.n_g >= 1.0, "crystal.n_g", m.n_g, "n_g >= 1");
  if (m.model == "dispersionless") need(m.n >= 1.0, "crystal.n", m.n, "n >= 1");
  if (m.model == "lorentz") {
    need(m.eps_inf > 0.0, "crystal.eps_inf", m.eps_inf, "eps_inf > 0");
    need(m.omega_to_thz > 0.0, "crystal.omega_TO_THz", m.omega_to_thz, "omega_TO > 0");
    need(m.omega_lo_thz >= m.omega_to_thz, "crystal.omega_LO_THz", m.omega_lo_thz,
         "omega_LO >= omega_TO (passivity)");
    need(m.gamma_thz >= 0.0, "crystal.gamma_THz", m.gamma_thz, "gamma >= 0");
  }
  if (m.model == "table") need_s(!m.table_path.empty(), "crystal.table_path", "", "required for model = table");
  const auto& p = c.pulses;
  need_s(p.shape == "rect" || p.shape == "gauss", "pulses.shape", p.shape, "one of rect, gauss");
  need(p.waist_um > 0.0, "pulses.waist_um", p.waist_um, "waist > 0");
  need(p.duration_fs > 0.0, "pulses.duration_fs", p.duration_fs, "duration > 0");
  need(p.waist2_um > 0.0, "pulses.waist2_um", p.waist2_um, "waist > 0");
  need(p.duration2_fs > 0.0, "pulses.duration2_fs", p.duration2_fs, "duration > 0");
  if (c.angles) {
    need(angle_in_domain(c.angles->first), "angles.theta1_rad", c.angles->first,
         "theta_1 outside [pi/2, 3pi/2]");
    need(angle_in_domain(c.angles->second), "angles.theta2_rad", c.angles->second,
         "theta_2 outside [pi/2, 3pi/2]");
  }
  const auto& n = c.numerics;
  need(n.omega_max_thz > 0.0, "numerics.omega_max_THz", n.omega_max_thz, "omega_max > 0");
  need(n.n_omega >= 2, "numerics.n_omega", n.n_omega, "n_omega >= 2");
  need(n.rho_cutoff_um > 0.0, "numerics.rho_cutoff_um", n.rho_cutoff_um, "rho_cutoff > 0");
  need(n.tau_pad_fs >= 0.0, "numerics.tau_pad_fs", n.tau_pad_fs, "tau_pad >= 0");
  need(n.tolerance > 0.0 && n.tolerance <= 1e-2, "numerics.tolerance", n.tolerance,
       "0 < tolerance <= 1e-2");
  need(n.n_transverse >= 8 && n.n_transverse % 2 == 0, "numerics.n_transverse", n.n_transverse,
       "even and >= 8");
  need(n.gl_order >= 2 && n.gl_order <= 64, "numerics.gl_order", n.gl_order, "2 <= gl_order <= 64");
  need(n.z_panels >= 2, "numerics.z_panels", n.z_panels, "z_panels >= 2");
  need_s(n.path == "auto" || n.path == "analytic" || n.path == "spectral", "numerics.path", n.path,
         "one of auto, analytic, spectral");
  if (n.path == "analytic")
    need_s(m.model == "dispersionless", "numerics.path", n.path,
           "analytic path needs the dispersionless medium");
  need_s(c.output_format == "csv" || c.output_format == "json", "output.format", c.output_format,
         "one of csv, json");
  return d;
}

std::string format_diagnostics(const std::vector<Diagnostic>& d) {
  std::string s;
  for (const auto& x : d) {
    if (!s.empty()) s += "\n";
    s += x.key + " = " + x.value + ": " + x.constraint;
  }
  return s;
}

std::string serialize_config(const ExperimentConfig& c) {
  auto q = [](const std::string& s) {
    std::string o = "\"";
    for (char ch : s) {
      if (ch == '"' || ch == '\\') o += '\\';
      o += ch;
    }
    return o + "\"";
  };
  std::ostringstream o;
  o << "[experiment]\n";
  o << "delta_r_um = " << num(c.delta_r_um) << "\n";
  if (c.delta_t.scan)
    o << "delta_t_scan = {start = " << num(c.delta_t.start) << ", stop = " << num(c.delta_t.stop)
      << ", step = " << num(c.delta_t.step) << "}\n";
  else
    o << "delta_t_fs = " << num(c.delta_t.value) << "\n";
  const auto& m = c.medium;
  o << "\n[crystal]\nmodel = " << q(m.model) << "\nn = " << num(m.n) << "\nn_g = " << num(m.n_g)
    << "\nL_um = " << num(c.length_um) << "\ntable_path = " << q(m.table_path)
    << "\neps_inf = " << num(m.eps_inf) << "\nomega_TO_THz = " << num(m.omega_to_thz)
    << "\nomega_LO_THz = " << num(m.omega_lo_thz) << "\ngamma_THz = " << num(m.gamma_thz) << "\n";
  const auto& p = c.pulses;
  o << "\n[pulses]\nshape = " << q(p.shape) << "\nwaist_um = " << num(p.waist_um)
    << "\nduration_fs = " << num(p.duration_fs) << "\nwaist2_um = " << num(p.waist2_um)
    << "\nduration2_fs = " << num(p.duration2_fs) << "\n";
  if (c.angles)
    o << "\n[angles]\ntheta1_rad = " << num(c.angles->first)
      << "\ntheta2_rad = " << num(c.angles->second) << "\n";
  const auto& n = c.numerics;
  o << "\n[numerics]\nomega_max_THz = " << num(n.omega_max_thz) << "\nn_omega = " << n.n_omega
    << "\nrho_cutoff_um = " << num(n.rho_cutoff_um) << "\ntau_pad_fs = " << num(n.tau_pad_fs)
    << "\ntolerance = " << num(n.tolerance) << "\nn_transverse = " << n.n_transverse
    << "\ngl_order = " << n.gl_order << "\nz_panels = " << n.z_panels << "\npath = " << q(n.path)
    << "\n";
  o << "\n[output]\npath = " << q(c.output_path) << "\nformat = " << q(c.output_format) << "\n";
  return o.str();
}

std::string config_hash(const ExperimentConfig& c) {
  // where the results land does not change them
  ExperimentConfig k = c;
  k.output_path.clear();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : serialize_config(k)) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::pair<PulseEnvelope, PulseEnvelope> make_pulses(const ExperimentConfig& c, double dt) {
  PulseEnvelope a, b;
  a.shape = b.shape = c.pulses.shape == "gauss" ? Shape::Gauss : Shape::Rect;
  a.length = b.length = c.length_um;
  a.n_g = b.n_g = c.medium.n_g;
  a.waist = c.pulses.waist_um;
  a.duration = c.pulses.duration_fs;
  b.waist = c.pulses.waist2_um;
  b.duration = c.pulses.duration2_fs;
  a.x0 = c.delta_r_um;
  a.t0 = dt;
  return {a, b};
}

Medium make_medium(const ExperimentConfig& c) {
  const auto& m = c.medium;
  if (m.model == "lorentz") {
    Lorentz l;
    l.eps_inf = m.eps_inf;
    l.omega_to = thz_to_rad_per_fs(m.omega_to_thz);
    l.omega_lo = thz_to_rad_per_fs(m.omega_lo_thz);
    l.gamma = thz_to_rad_per_fs(m.gamma_thz);
    l.n_g = m.n_g;
    return l;
  }
  if (m.model == "table") return load_permittivity_table(m.table_path, m.n_g);
  return Dispersionless{m.n, m.n_g};
}

KernelSet make_kernels(const ExperimentConfig& c) {
  Medium med = make_medium(c);
  double wmax = thz_to_rad_per_fs(c.numerics.omega_max_thz);
  bool spectral = c.numerics.path == "spectral" ||
                  (c.numerics.path == "auto" && !is_dispersionless(med));
  KernelSet ks = spectral ? spectral_kernels(med, wmax, c.numerics.n_omega)
                          : dispersionless_kernels(c.medium.n, c.medium.n_g);
  ks.omega_max = wmax;
  ks.n_omega = c.numerics.n_omega;
  return ks;
}

IntegratorOptions make_options(const ExperimentConfig& c) {
  IntegratorOptions o;
  o.tol = c.numerics.tolerance;
  o.rho_cutoff = c.numerics.rho_cutoff_um;
  o.n_transverse = c.numerics.n_transverse;
  o.gl_order = c.numerics.gl_order;
  o.z_panels = c.numerics.z_panels;
  return o;
}

}  // namespace eos
