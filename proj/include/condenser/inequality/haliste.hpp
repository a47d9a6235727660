#pragma once

#include <string>
#include <vector>

#include "condenser/fem/geometry.hpp"
#include "condenser/inequality/report.hpp"

namespace condenser::inequality {

// Values for one slit configuration B_a at one circle radius r.
struct SlitValues {
  double single = 0.0;  // int g_a(0, r e^{it}) dt
  double single_error = 0.0;
  double double_integral = 0.0;
  double double_error = 0.0;
  double inner_radius = 0.0;  // r(B_a, 0)
  double inner_error = 0.0;
  bool low_accuracy = false;
};

struct HalisteRow {
  double r = 0.0;
  SlitValues symmetric;  // a*
  SlitValues given;      // a
  InequalityReport double_report;  // asserted
  InequalityReport inner_report;   // asserted
  InequalityReport conjecture;     // reported only
  bool failed = false;
  std::string note;
};

struct HalisteReport {
  std::vector<cplx> a;
  std::vector<fem::Interval> k_set;
  std::vector<HalisteRow> rows;

  bool asserted_hold() const;
};

SlitValues slit_values(const fem::NumericDomain& domain, double r, const fem::SolveOptions& opts);

// a_k distinct on |z| = 1, K a finite union of closed subintervals of (0, 1].
// Asserted comparisons use a tolerance of three times the combined solver errors.
HalisteReport haliste_explore(const std::vector<cplx>& a, const std::vector<fem::Interval>& k_set,
                              const std::vector<double>& r_list, const fem::SolveOptions& opts);

}  // namespace condenser::inequality
