#pragma once

// Command-line front end. Each subcommand maps onto one library call and
// writes a single JSON document or CSV table.

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dicke/collective.hpp"
#include "dicke/config.hpp"
#include "dicke/verdict.hpp"

namespace dicke::cli {

enum class Command {
  dicke,
  witness,
  criterion,
  bound,
  oracle_product_max,
  oracle_bisep_max,
  oracle_eigmax,
  sweep_noise,
  verify_appendix,
  superradiance,
  selftest,
};

enum class Format { json, csv };

/// start:stop:steps, inclusive of both ends.
struct Grid {
  double start = 0.0;
  double stop = 1.0;
  int steps = 11;

  static Grid parse(const std::string& spec);
  std::vector<double> points() const;
};

struct RunConfig {
  Command command = Command::selftest;
  int n = 4;
  std::optional<int> m;           // excitations of the target Dicke state, default n/2
  CriterionId criterion = CriterionId::theorem2;
  int m_signed = 0;               // crit2 parameter
  double phi = 0.0;
  double p = 0.0;
  Grid grid;
  NoiseModel noise = NoiseModel::white;
  std::string state = "dicke";    // dicke | psixy
  std::string target = "form";    // oracle operator: form | projector | lemma2 | theorem3
  std::array<double, 3> a{1, 1, 0};
  std::array<double, 3> b{0, 0, 0};
  std::uint64_t seed = 0;
  int restarts = 64;
  std::optional<Format> format;   // default json, csv for sweep-noise
  double i0 = 1.0;
  Tolerances tol;

  int target_m() const { return m.value_or(n / 2); }
  Format output_format() const;
};

struct SweepRow {
  double p = 0.0;
  double value = 0.0;
  double bound = 0.0;
  double margin = 0.0;
  Detection detected = Detection::none;
};

struct SweepOptions {
  NoiseModel noise = NoiseModel::white;
  int m = -1;        // target excitations, -1 for n/2
  int m_signed = 0;  // crit2 parameter
  double phi = 0.0;  // psixy noise angle
  Tolerances tol;
};

/// One verdict per grid point on white_noise_mix(|m,n>, p), or on
/// psixy_noise_mix(n, p, phi) for psixy noise.
std::vector<SweepRow> sweep_noise(int n, CriterionId criterion, const std::vector<double>& grid,
                                  const SweepOptions& opt = {});

CriterionKind criterion_kind(CriterionId id, int m_signed);

std::string sweep_csv(const std::vector<SweepRow>& rows);
/// Parses sweep_csv output. Throws DomainError on malformed input.
std::vector<SweepRow> parse_sweep_csv(const std::string& text);

/// %.17g, with a trailing ".0" on integral values.
std::string format_real(double x);

/// Executes the command; returns the process exit status (0, 2 or 3).
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv and calls run.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dicke::cli
