#include "orlicz/config.hpp"

#include <charconv>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

namespace orlicz {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  std::size_t e = s.find_last_not_of(" \t\r");
  return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

std::string fmt_double(double v) {
  char buf[40];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  std::string s(buf, ptr);
  // keep floats visually distinct from integers in the serialized form
  if (s.find('.') == std::string::npos && s.find('e') == std::string::npos &&
      s.find("inf") == std::string::npos && s.find("nan") == std::string::npos)
    s += ".0";
  return s;
}

struct Field {
  std::function<void(const std::string&, int line)> set;
  std::function<std::string()> get;
};

void parse_int_list(const std::string& raw, std::vector<int>* out, int line) {
  std::string v = trim(raw);
  if (v.size() < 2 || v.front() != '[' || v.back() != ']')
    throw std::invalid_argument("config line " + std::to_string(line) + ": expected [list]");
  out->clear();
  std::istringstream body(v.substr(1, v.size() - 2));
  std::string cell;
  while (std::getline(body, cell, ',')) {
    cell = trim(cell);
    if (cell.empty()) continue;
    out->push_back(std::stoi(cell));
  }
}

std::string serialize_int_list(const std::vector<int>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += std::to_string(v[i]);
  }
  return s + "]";
}

std::map<std::string, std::map<std::string, Field>> schema(ExperimentConfig& c) {
  auto str = [](std::string& ref) {
    return Field{[&ref](const std::string& v, int line) {
                   std::string t = trim(v);
                   if (t.size() < 2 || t.front() != '"' || t.back() != '"')
                     throw std::invalid_argument("config line " + std::to_string(line) +
                                                 ": expected a quoted string");
                   ref = t.substr(1, t.size() - 2);
                 },
                 [&ref] { return "\"" + ref + "\""; }};
  };
  auto num_i = [](int& ref) {
    return Field{[&ref](const std::string& v, int line) {
                   try {
                     ref = std::stoi(trim(v));
                   } catch (...) {
                     throw std::invalid_argument("config line " + std::to_string(line) +
                                                 ": expected an integer");
                   }
                 },
                 [&ref] { return std::to_string(ref); }};
  };
  auto num_u = [](std::uint64_t& ref) {
    return Field{[&ref](const std::string& v, int line) {
                   try {
                     ref = std::stoull(trim(v));
                   } catch (...) {
                     throw std::invalid_argument("config line " + std::to_string(line) +
                                                 ": expected an unsigned integer");
                   }
                 },
                 [&ref] { return std::to_string(ref); }};
  };
  auto num_d = [](double& ref) {
    return Field{[&ref](const std::string& v, int line) {
                   try {
                     ref = std::stod(trim(v));
                   } catch (...) {
                     throw std::invalid_argument("config line " + std::to_string(line) +
                                                 ": expected a number");
                   }
                 },
                 [&ref] { return fmt_double(ref); }};
  };
  auto ints = [](std::vector<int>& ref) {
    return Field{[&ref](const std::string& v, int line) { parse_int_list(v, &ref, line); },
                 [&ref] { return serialize_int_list(ref); }};
  };

  return {
      {"experiment",
       {{"task", str(c.task)}, {"seed", num_u(c.seed)}, {"trials", num_i(c.trials)},
        {"out", str(c.out)}}},
      {"dims", {{"n", num_i(c.n)}, {"d", num_i(c.d)}}},
      {"young",
       {{"phi", str(c.phi)}, {"psi", str(c.psi)}, {"phi_random", str(c.phi_random)}}},
      {"io", {{"input", str(c.input)}, {"erased", str(c.erased)}}},
      {"verify", {{"id", str(c.verify_id)}}},
      {"estimate", {{"budget", num_i(c.budget)}, {"expected_size", num_d(c.expected_size)}}},
      {"up",
       {{"theorem", str(c.up_theorem)}, {"signal", str(c.up_signal)},
        {"branch", str(c.up_branch)}, {"alpha", num_d(c.up_alpha)}}},
      {"phase",
       {{"e_sizes", ints(c.e_sizes)}, {"s_sizes", ints(c.s_sizes)},
        {"c_restriction", num_d(c.c_restriction)}, {"d_random", num_d(c.d_random)}}},
      {"tolerances", {{"support_tol", num_d(c.support_tol)}}},
  };
}

// Canonical section/key order for the serializer.
const std::vector<std::pair<std::string, std::vector<std::string>>>& canonical_order() {
  static const std::vector<std::pair<std::string, std::vector<std::string>>> order = {
      {"experiment", {"task", "seed", "trials", "out"}},
      {"dims", {"n", "d"}},
      {"young", {"phi", "psi", "phi_random"}},
      {"io", {"input", "erased"}},
      {"verify", {"id"}},
      {"estimate", {"budget", "expected_size"}},
      {"up", {"theorem", "signal", "branch", "alpha"}},
      {"phase", {"e_sizes", "s_sizes", "c_restriction", "d_random"}},
      {"tolerances", {"support_tol"}},
  };
  return order;
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig cfg;
  auto fields = schema(cfg);
  std::istringstream is(text);
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw std::invalid_argument("config line " + std::to_string(lineno) +
                                    ": unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (fields.find(section) == fields.end())
        throw std::invalid_argument("config line " + std::to_string(lineno) +
                                    ": unknown section [" + section + "]");
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    if (section.empty())
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": key '" + key + "' outside any section");
    auto& sec = fields.at(section);
    auto it = sec.find(key);
    if (it == sec.end())
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": unknown key '" +
                                  key + "' in section [" + section + "]");
    it->second.set(line.substr(eq + 1), lineno);
  }
  return cfg;
}

std::string serialize_config(const ExperimentConfig& cfg) {
  ExperimentConfig copy = cfg;
  auto fields = schema(copy);
  std::ostringstream os;
  bool first = true;
  for (const auto& [section, keys] : canonical_order()) {
    if (!first) os << "\n";
    first = false;
    os << "[" << section << "]\n";
    for (const auto& key : keys) os << key << " = " << fields.at(section).at(key).get() << "\n";
  }
  return os.str();
}

std::uint64_t config_hash(const ExperimentConfig& cfg) {
  const std::string s = serialize_config(cfg);
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace orlicz
