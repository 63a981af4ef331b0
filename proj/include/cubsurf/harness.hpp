#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "cubsurf/surface.hpp"
#include "json.hpp"

namespace cubsurf {

/// All randomness is std::mt19937_64 seeded with `seed` plus a fixed offset
/// per check, so equal configs give equal reports on every platform.
using Rng = std::mt19937_64;

struct ExperimentConfig {
  std::uint64_t seed = 1;
  /// Surfaces per field for the skew-pair corpus.
  int surfaces_per_field = 5;
  std::vector<unsigned> skew_fields{13, 16, 17, 19, 25};
  /// One-line surfaces over F_7 and F_13.
  int one_line_surfaces = 10;
  /// Random small-field surfaces fed to the bound check, per field.
  int small_field_surfaces = 6;
  long relation_height = 200;
  long surjectivity_height = 500;
  /// Line points of S_M of at most this height join the cycle sweep.
  long line_point_height = 3;
  std::uint64_t max_pairs = 400000;
  int pic_bound = 200;
  int r_max = 3;
  std::uint64_t generator_budget = 200000;
  bool timings = false;

  nlohmann::json to_json() const;
  /// Missing keys keep their defaults. Throws InvalidArgument on bad types.
  static ExperimentConfig from_json(const nlohmann::json& j);
};

enum class CheckStatus { kPass, kFail, kSkipped };

std::string to_string(CheckStatus s);

struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::kSkipped;
  std::string reason;
  double seconds = 0.0;
  nlohmann::json details = nlohmann::json::object();
  std::optional<nlohmann::json> witness;  // always present on failure
};

struct VerificationReport {
  std::string suite;
  ExperimentConfig config;
  std::vector<CheckResult> checks;  // sorted by name

  bool passed() const;
  const CheckResult* find(const std::string& name) const;
  nlohmann::json to_json() const;
};

/// Field of order q. Throws InvalidArgument unless q is a prime power.
GFPtr field_of_order(std::uint64_t q);

/// Rejection sampling of coefficient vectors until is_smooth passes.
/// Throws BudgetExceeded after max_attempts draws.
CubicForm random_smooth_surface(const GFPtr& f, Rng& rng, int max_attempts = 10000);
CubicForm random_smooth_surface(const GFPtr& f, std::uint64_t seed, int max_attempts = 10000);
/// Smooth surfaces through the skew lines x0 = x1 = 0 and x2 = x3 = 0, moved
/// by a random invertible linear map.
CubicForm random_surface_with_skew_pair(const GFPtr& f, Rng& rng, int max_attempts = 10000);
/// Smooth surfaces through the line x0 = x1 = 0, moved by a random map.
CubicForm random_surface_with_line(const GFPtr& f, Rng& rng, int max_attempts = 10000);

/// Suite names: geometry, span, hs, pic, reduction, all.
/// Throws InvalidArgument for an unknown name.
VerificationReport run_suite(const std::string& name, const ExperimentConfig& config);
std::vector<std::string> suite_names();

/// Lines, skew pairs, point counts and H^0 over random smooth surfaces.
nlohmann::json scan_surfaces(std::uint64_t q, int count, std::uint64_t seed, bool with_hs);

/// Pretty-printed, keys sorted.
std::string dump_json(const nlohmann::json& j);

}  // namespace cubsurf
