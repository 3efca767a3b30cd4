#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nlshybrid/firstgen.hpp"
#include "nlshybrid/solver.hpp"

namespace nlshybrid::verify {

struct CheckResult {
  std::string id;
  Real measured = 0;
  Real threshold = 0;
  bool pass = false;

  static CheckResult upper(std::string id, Real measured, Real threshold) {
    CheckResult c{std::move(id), measured, threshold, measured <= threshold};
    return c;
  }
};

struct Options {
  std::uint64_t seed = 20240901;
  bool corrupt_partition = false;  // failure fixture for the harness contract
};

// Deterministic probe data: complex gaussian spectrum supported strictly
// inside |xi| < band (line) or |n| <= band (torus).
LineField probe_line_field(const LineGrid& g, int band, std::uint64_t seed, Real scale = 1.0);
PeriodicField probe_periodic_field(const TorusGrid& g, int band, std::uint64_t seed,
                                   Real scale = 1.0);

// One divided-operator audit sample: the measured ratio
// ||R^{1}|| |n-n1| |n-n3| / (product of slot norms) for a random
// non-resonant configuration.
struct FirAuditRow {
  OperatorKind kind;
  FrequencyQuad quad;
  Real ratio;
};

std::vector<FirAuditRow> fir_audit_rows(OperatorKind kind, int configs, std::uint64_t seed);

// --- parameterized checks reused by the acceptance suite -------------------

CheckResult phase_identity_integer(int samples, std::uint64_t seed);
CheckResult phase_identity_real(int samples, std::uint64_t seed);
CheckResult split_partition_identity(int band, int box_length, Real tol, std::uint64_t seed);
CheckResult split_multiplicity_audit(int band);
CheckResult split_vs_pointwise(int band, int box_length, Real tol, std::uint64_t seed);
CheckResult fir_ratio_audit(OperatorKind kind, int configs, Real max_over_median,
                            std::uint64_t seed);
CheckResult expl_ratio_audit(OperatorKind kind, int configs, Real max_over_median,
                             std::uint64_t seed);
CheckResult gauge_relation_audit(const std::vector<Real>& times, Real tol, std::uint64_t seed);
CheckResult plane_wave_periodic(Real amplitude, int tone, Real t_final, Real dt, Real tol);
CheckResult plane_wave_direct(Real amplitude, int tone, Real t_final, Real dt, Real tol);
CheckResult strang_order(Real slope_lo, Real slope_hi);
CheckResult w_mass_conservation(int steps, Real tol);
CheckResult u_mass_conservation(int steps, Real tol);
CheckResult splitting_consistency(Real t_final, Real tol);
CheckResult lipschitz_bound(Real horizon, Real ratio_cap);
CheckResult lipschitz_stability(Real horizon, Real relative_change_cap);
CheckResult partition_reconstruction(const Options& opt);
CheckResult bernstein_uniformity(int k_range, int trials, Real spread, std::uint64_t seed);
CheckResult g_identity(std::uint64_t seed);
CheckResult v_zero_preserved(Real t_final);

std::vector<CheckResult> run_suite(const std::string& suite, const Options& opt = {});
std::vector<std::string> suite_names();

}  // namespace nlshybrid::verify
