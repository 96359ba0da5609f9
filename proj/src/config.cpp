#include "nsmp/config.hpp"

#include <cctype>
#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

#include "nsmp/errors.hpp"

namespace nsmp {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

/// Drops a trailing comment that is not inside a string.
std::string strip_comment(const std::string& s) {
  bool quoted = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '"') quoted = !quoted;
    if (s[i] == '#' && !quoted) return s.substr(0, i);
  }
  return s;
}

struct Value {
  std::string raw;
  int line;
  std::string key;

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("line " + std::to_string(line) + ", key '" + key + "': " + what, line, key);
  }

  std::string text() const {
    if (raw.size() >= 2 && raw.front() == '"' && raw.back() == '"') return raw.substr(1, raw.size() - 2);
    if (raw.find_first_of("\"[]") != std::string::npos) fail("expected a string");
    return raw;
  }

  double number() const { return parse_number(raw); }

  double parse_number(const std::string& s) const {
    const std::string t = trim(s);
    if (t.empty()) fail("expected a number");
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(t.c_str(), &end);
    if (end != t.c_str() + t.size() || errno == ERANGE) fail("expected a number, got '" + t + "'");
    return v;
  }

  long long integer() const {
    const double v = number();
    if (v != static_cast<double>(static_cast<long long>(v))) fail("expected an integer");
    return static_cast<long long>(v);
  }

  std::array<double, 3> triple() const {
    if (raw.size() < 2 || raw.front() != '[' || raw.back() != ']') fail("expected a list [a, b, c]");
    std::vector<double> items;
    std::stringstream ss(raw.substr(1, raw.size() - 2));
    std::string item;
    while (std::getline(ss, item, ',')) items.push_back(parse_number(item));
    if (items.size() != 3) fail("expected exactly three list entries");
    return {items[0], items[1], items[2]};
  }
};

std::string number_text(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string quoted(const std::string& s) { return "\"" + s + "\""; }

template <class T>
std::string list_text(const std::array<T, 3>& a) {
  std::ostringstream os;
  os << '[';
  for (int i = 0; i < 3; ++i) {
    if (i) os << ", ";
    if constexpr (std::is_floating_point_v<T>)
      os << number_text(a[i]);
    else
      os << a[i];
  }
  os << ']';
  return os.str();
}

void apply(ScenarioSpec& s, const std::string& section, const Value& v) {
  const std::string& k = v.key;
  if (section == "scenario") {
    if (k == "name") return void(s.name = v.text());
  } else if (section == "grid") {
    if (k == "n") {
      const auto t = v.triple();
      for (int a = 0; a < 3; ++a) {
        if (t[a] != static_cast<double>(static_cast<int>(t[a]))) v.fail("node counts must be integers");
        s.grid.n[a] = static_cast<int>(t[a]);
      }
      return;
    }
    if (k == "length") return void(s.grid.length = v.triple());
    try {
      if (k == "boundary") return void(s.grid.bc = boundary_from_string(v.text()));
      if (k == "scheme") return void(s.grid.scheme = scheme_from_string(v.text()));
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception& e) {
      v.fail(e.what());
    }
  } else if (section == "physics") {
    if (k == "viscosity") return void(s.viscosity = v.number());
    if (k == "horizon") return void(s.horizon = v.number());
    if (k == "dt") return void(s.dt = v.number());
    if (k == "integrator") {
      try {
        return void(s.integrator = integrator_from_string(v.text()));
      } catch (const ValidationError& e) {
        v.fail(e.what());
      }
    }
  } else if (section == "initial") {
    if (k == "kind") return void(s.initial.kind = v.text());
    if (k == "amplitude") return void(s.initial.amplitude = v.number());
    if (k == "seed") {
      const long long seed = v.integer();
      if (seed < 0) v.fail("seed must be non-negative");
      return void(s.initial.seed = static_cast<std::uint64_t>(seed));
    }
    if (k == "path") return void(s.initial.path = v.text());
  } else if (section == "forcing") {
    if (k == "kind") return void(s.forcing.kind = v.text());
    if (k == "amplitude") return void(s.forcing.amplitude = v.number());
    if (k == "vector") return void(s.forcing.vector = v.triple());
    if (k == "wavenumber") return void(s.forcing.wavenumber = static_cast<int>(v.integer()));
    if (k == "path") return void(s.forcing.path = v.text());
  } else {
    v.fail("unknown section [" + section + "]");
  }
  v.fail("unknown key in section [" + section + "]");
}

}  // namespace

ScenarioSpec parse_scenario_text(const std::string& text) {
  std::vector<std::pair<std::string, Value>> entries;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(strip_comment(line));
    if (t.empty()) continue;
    if (t.front() == '[') {
      if (t.back() != ']') throw ParseError("line " + std::to_string(lineno) + ": malformed section header", lineno, "");
      section = trim(t.substr(1, t.size() - 2));
      continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw ParseError("line " + std::to_string(lineno) + ": expected key = value", lineno, "");
    Value v{trim(t.substr(eq + 1)), lineno, trim(t.substr(0, eq))};
    if (section.empty()) v.fail("key outside of a section");
    if (v.raw.empty()) v.fail("missing value");
    entries.emplace_back(section, std::move(v));
  }

  ScenarioSpec spec;
  for (const auto& [sec, v] : entries) {
    if (sec == "scenario" && v.key == "preset") {
      try {
        spec = preset(v.text());
      } catch (const ValidationError& e) {
        v.fail(e.what());
      }
    }
  }
  for (const auto& [sec, v] : entries) {
    if (sec == "scenario" && v.key == "preset") continue;
    apply(spec, sec, v);
  }
  return spec;
}

ScenarioSpec parse_scenario_spec(const std::string& path_or_preset) {
  std::ifstream in(path_or_preset);
  if (!in) {
    for (const auto& name : preset_names())
      if (name == path_or_preset) return preset(name);
    throw Error("cannot open scenario file '" + path_or_preset + "' (and it is not a preset name)");
  }
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_scenario_text(ss.str());
  } catch (const ParseError& e) {
    throw ParseError(path_or_preset + ": " + e.what(), e.line(), e.key());
  }
}

Scenario parse_scenario(const std::string& path_or_preset, const InstantiateOptions& opts) {
  return instantiate(parse_scenario_spec(path_or_preset), opts);
}

std::string emit_scenario(const ScenarioSpec& s) {
  std::ostringstream os;
  os << "[scenario]\n"
     << "name = " << quoted(s.name) << "\n\n"
     << "[grid]\n"
     << "n = " << list_text(s.grid.n) << '\n'
     << "length = " << list_text(s.grid.length) << '\n'
     << "boundary = " << quoted(to_string(s.grid.bc)) << '\n'
     << "scheme = " << quoted(to_string(s.grid.scheme)) << "\n\n"
     << "[physics]\n"
     << "viscosity = " << number_text(s.viscosity) << '\n'
     << "horizon = " << number_text(s.horizon) << '\n'
     << "dt = " << number_text(s.dt) << '\n'
     << "integrator = " << quoted(to_string(s.integrator)) << "\n\n"
     << "[initial]\n"
     << "kind = " << quoted(s.initial.kind) << '\n'
     << "amplitude = " << number_text(s.initial.amplitude) << '\n'
     << "seed = " << s.initial.seed << '\n'
     << "path = " << quoted(s.initial.path) << "\n\n"
     << "[forcing]\n"
     << "kind = " << quoted(s.forcing.kind) << '\n'
     << "amplitude = " << number_text(s.forcing.amplitude) << '\n'
     << "vector = " << list_text(s.forcing.vector) << '\n'
     << "wavenumber = " << s.forcing.wavenumber << '\n'
     << "path = " << quoted(s.forcing.path) << '\n';
  return os.str();
}

std::string to_string(Assumption a) {
  switch (a) {
    case Assumption::SolenoidalForcing: return "solenoidal forcing";
    case Assumption::SolenoidalInitialData: return "solenoidal initial data";
    case Assumption::NoSlipInitialData: return "initial data vanishing on the walls";
    case Assumption::TimeStep: return "admissible time step";
    case Assumption::None: break;
  }
  return "none";
}

}  // namespace nsmp
