#include "cohav/sweep_config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

namespace cohav {

namespace {

constexpr std::string_view kQuantityNames[] = {"global_qfi", "local_qfi", "first_moment",
                                               "pt1",        "pt2",       "pt_local",
                                               "closed_form", "closed_local", "hl_condition"};

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::vector<std::string> split(std::string_view s, std::string_view seps) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (seps.find(c) != std::string_view::npos) {
      if (auto t = trim(cur); !t.empty()) out.push_back(t);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (auto t = trim(cur); !t.empty()) out.push_back(t);
  return out;
}

double parse_number(std::string_view text) {
  std::string s = trim(text);
  double v = 0.0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || s.empty())
    throw InvalidArgument("not a number: '" + s + "'");
  return v;
}

int parse_int(std::string_view text) {
  double v = parse_number(text);
  if (v != std::floor(v) || std::abs(v) > 1e9) throw InvalidArgument("not an integer: '" + std::string(text) + "'");
  return static_cast<int>(v);
}

std::vector<int> parse_n_list(std::string_view text) {
  auto words = split(text, " \t");
  std::vector<int> out;
  if (!words.empty() && words[0] == "logspace") {
    if (words.size() != 4) throw InvalidArgument("n_list: logspace <lo> <hi> <count>");
    double lo = parse_number(words[1]), hi = parse_number(words[2]);
    int count = parse_int(words[3]);
    if (lo < 1 || hi < lo || count < 1) throw InvalidArgument("n_list: bad logspace bounds");
    for (int i = 0; i < count; ++i) {
      double f = count == 1 ? 0.0 : double(i) / (count - 1);
      out.push_back(static_cast<int>(std::lround(lo * std::pow(hi / lo, f))));
    }
  } else if (!words.empty() && words[0] == "range") {
    if (words.size() != 3 && words.size() != 4) throw InvalidArgument("n_list: range <lo> <hi> [step]");
    int lo = parse_int(words[1]), hi = parse_int(words[2]);
    int step = words.size() == 4 ? parse_int(words[3]) : 1;
    if (step < 1) throw InvalidArgument("n_list: step must be positive");
    for (int n = lo; n <= hi; n += step) out.push_back(n);
  } else {
    for (auto& w : split(text, ", \t")) out.push_back(parse_int(w));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  for (int n : out)
    if (n < 1) throw InvalidArgument("n_list: N must be >= 1");
  return out;
}

std::vector<Regime> parse_regimes(std::string_view text) {
  std::vector<Regime> out;
  for (auto& item : split(text, ";")) {
    auto colon = item.find(':');
    if (colon == std::string::npos) throw InvalidArgument("regime needs name:delta,epsilon: '" + item + "'");
    auto nums = split(std::string_view(item).substr(colon + 1), ",");
    if (nums.size() != 2) throw InvalidArgument("regime needs name:delta,epsilon: '" + item + "'");
    Regime r{trim(std::string_view(item).substr(0, colon)), parse_number(nums[0]), parse_number(nums[1])};
    if (r.name.empty()) throw InvalidArgument("regime with empty name");
    for (const auto& o : out)
      if (o.name == r.name) throw InvalidArgument("duplicate regime '" + r.name + "'");
    out.push_back(r);
  }
  return out;
}

Op2 parse_observable(std::string_view text) {
  auto w = split(text, ", \t");
  if (w.size() != 4) throw InvalidArgument("observable needs four Pauli coefficients (I X Y Z)");
  return from_pauli(parse_number(w[0]), parse_number(w[1]), parse_number(w[2]), parse_number(w[3]));
}

using Section = std::map<std::string, std::pair<std::string, int>>;  // key -> (value, line)

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "model", "params", "regimes", "n_list", "alpha", "phi", "beta", "varphi", "omega0", "omega1", "x", "t",
      "quantities", "observable", "M", "beta_th", "alpha_grid", "workers", "seed", "kernel_order"};
  return keys;
}

SweepConfig build(const Section& sec) {
  auto get = [&](const std::string& key) -> const std::string* {
    auto it = sec.find(key);
    return it == sec.end() ? nullptr : &it->second.first;
  };
  auto need = [&](const std::string& key) -> const std::string& {
    auto* v = get(key);
    if (!v) throw InvalidArgument("missing required key '" + key + "'");
    return *v;
  };
  auto at = [&](const std::string& key, auto&& fn) {
    try {
      return fn();
    } catch (const InvalidArgument& e) {
      auto it = sec.find(key);
      std::string where = it == sec.end() ? "" : "line " + std::to_string(it->second.second) + ": ";
      throw InvalidArgument(where + e.what());
    }
  };

  SweepConfig c;
  c.kind = at("model", [&] { return parse_model_kind(trim(need("model"))); });
  at("params", [&] {
    for (auto& p : split(need("params"), ", \t")) c.params.push_back(parse_param(p));
    return 0;
  });
  c.regimes = at("regimes", [&] { return parse_regimes(need("regimes")); });
  c.n_list = at("n_list", [&] { return parse_n_list(need("n_list")); });
  if (auto* v = get("seed")) {
    c.seed = at("seed", [&] {
      std::uint64_t s = 0;
      auto [p, ec] = std::from_chars(v->data(), v->data() + v->size(), s);
      if (ec != std::errc() || p != v->data() + v->size()) throw InvalidArgument("seed must be a non-negative integer");
      return s;
    });
  }

  std::mt19937_64 rng(c.seed);
  std::uniform_real_distribution<double> polar(0.0, std::numbers::pi / 2), azim(0.0, 2 * std::numbers::pi);
  auto angle = [&](const std::string& key, bool is_phase) {
    return at(key, [&] {
      const std::string& v = need(key);
      if (trim(v) == "random") return is_phase ? azim(rng) : polar(rng);
      return parse_angle(v);
    });
  };
  c.angles.alpha = angle("alpha", false);
  c.angles.phi = angle("phi", true);
  c.angles.beta = angle("beta", false);
  c.angles.varphi = angle("varphi", true);

  auto number = [&](const std::string& key) { return at(key, [&] { return parse_number(need(key)); }); };
  c.omega0 = number("omega0");
  c.omega1 = number("omega1");
  c.x = number("x");
  c.t = number("t");
  at("quantities", [&] {
    for (auto& q : split(need("quantities"), ", \t")) c.quantities.push_back(parse_quantity(q));
    return 0;
  });
  if (auto* v = get("observable")) c.observable = at("observable", [&] { return parse_observable(*v); });
  if (auto* v = get("M")) c.measurements = at("M", [&] { return parse_int(*v); });
  if (get("beta_th")) c.beta_th = number("beta_th");
  if (auto* v = get("alpha_grid")) {
    c.alpha_grid = at("alpha_grid", [&] {
      auto w = split(*v, " \t");
      if (w.size() != 3) throw InvalidArgument("alpha_grid: <lo> <hi> <count>");
      double lo = parse_angle(w[0]), hi = parse_angle(w[1]);
      int count = parse_int(w[2]);
      if (count < 1) throw InvalidArgument("alpha_grid: count must be >= 1");
      std::vector<double> g;
      for (int i = 0; i < count; ++i) g.push_back(count == 1 ? lo : lo + (hi - lo) * i / (count - 1));
      return g;
    });
  }
  if (auto* v = get("workers")) c.workers = at("workers", [&] { return parse_int(*v); });
  if (auto* v = get("kernel_order")) c.kernel_order = at("kernel_order", [&] { return parse_int(*v); });
  c.validate();
  return c;
}

}  // namespace

std::string_view to_string(Quantity q) { return kQuantityNames[static_cast<int>(q)]; }

Quantity parse_quantity(std::string_view name) {
  for (std::size_t i = 0; i < std::size(kQuantityNames); ++i)
    if (kQuantityNames[i] == name) return static_cast<Quantity>(i);
  throw InvalidArgument("unknown quantity '" + std::string(name) + "'");
}

double parse_angle(std::string_view text) {
  std::string s = lower(trim(text));
  std::erase(s, ' ');
  if (s.empty()) throw InvalidArgument("empty angle");
  auto p = s.find("pi");
  if (p == std::string::npos) return parse_number(s);
  double num = 1.0, den = 1.0;
  std::string head = s.substr(0, p), tail = s.substr(p + 2);
  if (head == "-") {
    num = -1.0;
  } else if (!head.empty()) {
    if (head.back() != '*') throw InvalidArgument("bad angle '" + s + "'");
    num = parse_number(head.substr(0, head.size() - 1));
  }
  if (!tail.empty()) {
    if (tail.front() != '/') throw InvalidArgument("bad angle '" + s + "'");
    den = parse_number(tail.substr(1));
    if (den == 0.0) throw InvalidArgument("angle with zero denominator");
  }
  return num * std::numbers::pi / den;
}

void SweepConfig::validate() const {
  if (params.empty()) throw InvalidArgument("params is empty");
  if (regimes.empty()) throw InvalidArgument("regimes is empty");
  if (n_list.empty()) throw InvalidArgument("n_list is empty");
  if (!angles.finite()) throw InvalidArgument("non-finite state angle");
  if (!std::isfinite(omega0) || !std::isfinite(omega1) || !std::isfinite(x) || !std::isfinite(t) || t < 0)
    throw InvalidArgument("omega0, omega1, x must be finite and t >= 0");
  if (measurements < 1) throw InvalidArgument("M must be >= 1");
  if (workers < 1) throw InvalidArgument("workers must be >= 1");
  if (kernel_order < 8) throw InvalidArgument("kernel_order must be >= 8");
  for (Quantity q : quantities) {
    if ((q == Quantity::first_moment || q == Quantity::pt_local) && !observable)
      throw InvalidArgument(std::string(to_string(q)) + " needs an observable");
  }
}

std::vector<SweepConfig> parse_sweep_config(std::string_view text, std::optional<std::uint64_t> seed) {
  std::vector<SweepConfig> out;
  Section sec;
  bool dirty = false;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  auto flush = [&] {
    if (!dirty) return;
    if (seed) sec["seed"] = {std::to_string(*seed), 0};
    out.push_back(build(sec));
    dirty = false;
  };
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    if (line.size() >= 3 && line.find_first_not_of('-') == std::string::npos) {
      flush();
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw InvalidArgument("line " + std::to_string(line_no) + ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    if (!known_keys().count(key))
      throw InvalidArgument("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    sec[key] = {trim(line.substr(eq + 1)), line_no};
    dirty = true;
  }
  flush();
  if (out.empty()) throw InvalidArgument("configuration has no keys");
  return out;
}

}  // namespace cohav
