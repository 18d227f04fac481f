#pragma once

// Declarative sweep configuration: key = value lines, '#' comments.
// A line of three or more dashes starts a new section; each section
// inherits the keys of the one before it.
//
// Required keys: model, params, regimes, n_list, alpha, phi, beta, varphi,
// omega0, omega1, x, t, quantities.
// Optional keys: observable (needed by first_moment and pt_local), M,
// beta_th (thermal closed forms), alpha_grid, workers, seed, kernel_order.
//
//   regimes    = weak:1,0.001; strong:1,100        name:delta,epsilon
//   n_list     = logspace 1 200 16 | range 1 50 [step] | 1,2,5,10
//   alpha      = pi/3 | 3*pi/8 | 0.25 | random
//   observable = 0 0.5 0 0.5                        I X Y Z coefficients
//   alpha_grid = 0 pi/4 41                          linspace; one regime per value

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cohav/dynamics.hpp"
#include "cohav/errors.hpp"
#include "cohav/qubit.hpp"
#include "cohav/symstate.hpp"

namespace cohav {

enum class Quantity {
  global_qfi,
  local_qfi,
  first_moment,   // (delta theta)^-2 of the observable
  pt1,
  pt2,
  pt_local,       // (delta theta)^-2 from the second-order Dyson expansion
  closed_form,    // ZZZZ global QFI (thermal if beta_th is set)
  closed_local,   // ZZZZ local QFI for x
  hl_condition,
};

std::string_view to_string(Quantity q);
Quantity parse_quantity(std::string_view name);

struct Regime {
  std::string name;
  double delta = 0.0;
  double epsilon = 0.0;
};

struct SweepConfig {
  ModelKind kind = ModelKind::zzxx;
  std::vector<Param> params;
  std::vector<Regime> regimes;
  std::vector<int> n_list;
  StateAngles angles;
  std::vector<double> alpha_grid;  // empty: use angles.alpha
  double omega0 = 0.0;
  double omega1 = 0.0;
  double x = 0.0;
  double t = 0.0;
  std::vector<Quantity> quantities;
  std::optional<Op2> observable;
  int measurements = 1;
  std::optional<double> beta_th;
  int workers = 1;
  std::uint64_t seed = 0;
  int kernel_order = 64;

  /// Throws InvalidArgument on an inconsistent configuration.
  void validate() const;
};

/// Parses one or more sections. Throws InvalidArgument with the line number
/// on malformed input. A given seed replaces the configured one.
std::vector<SweepConfig> parse_sweep_config(std::string_view text,
                                            std::optional<std::uint64_t> seed = std::nullopt);

/// "pi/3", "3*pi/8", "-0.5", "2.5*pi".
double parse_angle(std::string_view text);

/// Built-in figure configurations, keyed by file stem ("fig2", ...).
const std::map<std::string, std::string>& embedded_configs();

}  // namespace cohav
