#include "cohav/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include "cohav/fisher.hpp"
#include "cohav/perturb.hpp"
#include "cohav/zzzz_exact.hpp"

namespace cohav {

namespace {

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::string g17(double v) { return fmt("%.17g", v); }

std::string clean(std::string s) {
  for (char& c : s) {
    if (c == ',' || c == '|') c = ';';
    if (c == '\n' || c == '\r') c = ' ';
  }
  return s;
}

struct Flags {
  std::vector<std::string> items;
  void add(std::string s) { items.push_back(std::move(s)); }
  void add_if(bool cond, const char* s) {
    if (cond) items.emplace_back(s);
  }
  void signal(Signal s) {
    if (s != Signal::none) items.emplace_back(to_string(s));
  }
  void regime(const PtRegime& r) {
    add("eps_n=" + fmt("%.3g", r.eps_n));
    add("delta_n=" + fmt("%.3g", r.delta_n));
    add("h0t=" + fmt("%.3g", r.free_norm_t));
  }
  std::string str() const {
    if (items.empty()) return "ok";
    std::string out;
    for (const auto& s : items) out += (out.empty() ? "" : "|") + s;
    return out;
  }
};

bool fit_excluded(const SweepRow& r) {
  if (!std::isfinite(r.value)) return true;
  for (const char* bad : {"error", "unsupported", "underflow", "insensitive", "unbounded"})
    if (r.flag.find(bad) != std::string::npos) return true;
  return false;
}

struct Label {
  std::string name;
  double alpha;
};

std::vector<Label> labels_for(const SweepConfig& c) {
  std::vector<Label> out;
  for (const auto& r : c.regimes) {
    if (c.alpha_grid.empty()) {
      out.push_back({r.name, c.angles.alpha});
    } else {
      for (double a : c.alpha_grid) out.push_back({r.name + "@alpha=" + fmt("%.10g", a), a});
    }
  }
  return out;
}

// Rows for one grid point, in (quantity, param) order.
std::vector<SweepRow> evaluate_point(const SweepConfig& c, const Regime& regime, const Label& label, int n) {
  ModelSpec spec{c.kind, regime.delta, regime.epsilon, c.omega0, c.omega1, c.x, c.t};
  StateAngles angles = c.angles;
  angles.alpha = label.alpha;

  std::map<Param, std::optional<ShiftedStates>> shifted;
  auto states = [&](Param p) -> const ShiftedStates& {
    auto& slot = shifted[p];
    if (!slot) slot.emplace(propagate_shifted(spec, n, angles, p));
    return *slot;
  };

  std::vector<SweepRow> rows;
  for (Quantity q : c.quantities) {
    for (Param p : c.params) {
      SweepRow row{n, std::string(to_string(q)) + ":" + std::string(to_string(p)), label.name, 0.0, {}};
      Flags flags;
      try {
        switch (q) {
          case Quantity::global_qfi:
          case Quantity::local_qfi: {
            QfiResult r = q == Quantity::global_qfi ? global_qfi(states(p)) : local_qfi(states(p));
            row.value = r.value;
            flags.add_if(r.ill_conditioned, "ill_conditioned");
            flags.add_if(r.clamped, "clamped");
            break;
          }
          case Quantity::first_moment: {
            FirstMomentResult r = first_moment_uncertainty(states(p), *c.observable, c.measurements);
            row.value = r.inverse_squared;
            flags.signal(r.signal);
            flags.add_if(r.ill_conditioned, "ill_conditioned");
            break;
          }
          case Quantity::pt1: {
            auto kernel = kernel_for(spec, p, c.kernel_order);
            if (p == Param::omega0) throw UnsupportedModel("no first-order expansion for omega0");
            Pt1Result r = p == Param::x ? pt1_qfi_x(spec, n, angles, kernel) : pt1_qfi_omega1(spec, n, angles, kernel);
            row.value = r.value;
            flags.regime(r.regime);
            break;
          }
          case Quantity::pt2: {
            Pt2Result r = pt2_qfi_zeroth(spec, n, angles, p);
            row.value = r.value;
            flags.regime(r.regime);
            break;
          }
          case Quantity::pt_local: {
            AppendixResult r = appendix_local_uncertainty(spec, n, angles, *c.observable, p,
                                                          kernel_for(spec, p, c.kernel_order), c.measurements);
            row.value = r.inverse_squared;
            flags.signal(r.signal);
            flags.add_if(r.variance_clamped, "clamped");
            flags.regime(pt_regime(spec, n));
            break;
          }
          case Quantity::closed_form:
            row.value = c.beta_th ? thermal_global_qfi(spec, n, *c.beta_th, angles.beta, p)
                                  : global_qfi_closed(spec, n, angles, p);
            break;
          case Quantity::closed_local: {
            if (p != Param::x) throw UnsupportedModel("closed-form local QFI exists for x only");
            LogScalar r = local_qfi_x_closed(spec, n, angles);
            row.value = r.value;
            flags.signal(r.signal);
            if (r.signal == Signal::underflow) flags.add("log10=" + fmt("%.10g", r.log10_value));
            break;
          }
          case Quantity::hl_condition:
            if (p != Param::x) throw UnsupportedModel("HL condition is defined for x only");
            row.value = hl_condition(spec, angles, kernel_for(spec, p, c.kernel_order));
            break;
        }
      } catch (const UnsupportedModel& e) {
        row.value = std::nan("");
        flags.add("unsupported:" + clean(e.what()));
      } catch (const std::exception& e) {
        row.value = std::nan("");
        flags.add("error:" + clean(e.what()));
      }
      row.flag = flags.str();
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

}  // namespace

ScanResult run_sweep(const SweepConfig& c) {
  ScanResult result;
  if (c.quantities.empty()) return result;

  struct Task {
    std::size_t regime, label, n;
  };
  const auto labels = labels_for(c);
  const std::size_t per_regime = c.alpha_grid.empty() ? 1 : c.alpha_grid.size();
  std::vector<Task> tasks;
  for (std::size_t l = 0; l < labels.size(); ++l)
    for (std::size_t i = 0; i < c.n_list.size(); ++i) tasks.push_back({l / per_regime, l, i});
  // Largest N first keeps the tail of the schedule short.
  std::stable_sort(tasks.begin(), tasks.end(), [](const Task& a, const Task& b) { return a.n > b.n; });

  std::vector<std::vector<SweepRow>> out(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < tasks.size();) {
      const Task& t = tasks[i];
      out[i] = evaluate_point(c, c.regimes[t.regime], labels[t.label], c.n_list[t.n]);
    }
  };
  const int nworkers = std::max(1, std::min<int>(c.workers, static_cast<int>(tasks.size())));
  if (nworkers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < nworkers; ++w) pool.emplace_back(worker);
  }

  // Gather into (quantity, param, label, N) order.
  const std::size_t nq = c.quantities.size() * c.params.size();
  std::vector<SweepRow> ordered(nq * labels.size() * c.n_list.size());
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    for (std::size_t k = 0; k < nq; ++k) {
      ordered[(k * labels.size() + tasks[i].label) * c.n_list.size() + tasks[i].n] = std::move(out[i][k]);
    }
  }
  result.rows = std::move(ordered);
  result.fits = fit_all(result.rows);
  return result;
}

ScanResult run_sweep(const std::vector<SweepConfig>& sections) {
  ScanResult all;
  for (const auto& c : sections) {
    ScanResult r = run_sweep(c);
    all.rows.insert(all.rows.end(), std::make_move_iterator(r.rows.begin()), std::make_move_iterator(r.rows.end()));
    all.fits.insert(all.fits.end(), r.fits.begin(), r.fits.end());
  }
  return all;
}

void truncate_n(std::vector<SweepConfig>& sections, int n_max) {
  for (auto& c : sections) std::erase_if(c.n_list, [&](int n) { return n > n_max; });
}

PowerLawFit fit_scaling(const std::vector<SweepRow>& rows, const std::string& quantity, const std::string& regime,
                        double n_lo, double n_hi) {
  std::vector<double> n, v;
  for (const auto& r : rows) {
    if (r.quantity != quantity || r.regime != regime || r.n < n_lo || r.n > n_hi || fit_excluded(r)) continue;
    n.push_back(r.n);
    v.push_back(r.value);
  }
  return fit_power_law(n, v);
}

std::vector<FitRow> fit_all(const std::vector<SweepRow>& rows) {
  std::vector<std::pair<std::string, std::string>> groups;
  std::map<std::pair<std::string, std::string>, std::pair<int, int>> range;
  for (const auto& r : rows) {
    auto key = std::make_pair(r.quantity, r.regime);
    auto it = range.find(key);
    if (it == range.end()) {
      groups.push_back(key);
      range[key] = {r.n, r.n};
    } else {
      it->second.first = std::min(it->second.first, r.n);
      it->second.second = std::max(it->second.second, r.n);
    }
  }
  std::vector<FitRow> fits;
  for (const auto& key : groups) {
    auto [lo, hi] = range[key];
    double start = upper_half_start(lo, hi);
    try {
      PowerLawFit f = fit_scaling(rows, key.first, key.second, start, hi);
      fits.push_back({key.first, key.second, f.n_min, f.n_max, f.exponent, f.stderr_exponent});
    } catch (const FitDomainError&) {
    }
  }
  return fits;
}

void write_rows_csv(const std::vector<SweepRow>& rows, std::ostream& out) {
  out << "N,quantity,regime,value,flag\n";
  for (const auto& r : rows) out << r.n << ',' << r.quantity << ',' << r.regime << ',' << g17(r.value) << ',' << r.flag << '\n';
}

void write_fits_csv(const std::vector<FitRow>& fits, std::ostream& out) {
  out << "quantity,regime,n_min,n_max,exponent,stderr\n";
  for (const auto& f : fits)
    out << f.quantity << ',' << f.regime << ',' << g17(f.n_min) << ',' << g17(f.n_max) << ',' << g17(f.exponent) << ','
        << g17(f.stderr_exponent) << '\n';
}

void emit_csv(const ScanResult& result, const std::string& path) {
  auto write = [](const std::string& p, auto&& body) {
    std::ofstream f(p, std::ios::binary);
    if (!f) throw OutputError("cannot open '" + p + "' for writing");
    body(f);
    f.flush();
    if (!f) throw OutputError("write to '" + p + "' failed");
  };
  write(path, [&](std::ostream& f) { write_rows_csv(result.rows, f); });
  write(path + ".fits.csv", [&](std::ostream& f) { write_fits_csv(result.fits, f); });
}

std::vector<SweepRow> read_rows_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "N,quantity,regime,value,flag") throw InvalidArgument("bad CSV header");
  std::vector<SweepRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) f.push_back(cell);
    if (f.size() != 5) throw InvalidArgument("bad CSV row: " + line);
    SweepRow r;
    r.n = std::stoi(f[0]);
    r.quantity = f[1];
    r.regime = f[2];
    r.value = std::strtod(f[3].c_str(), nullptr);
    r.flag = f[4];
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace cohav
