#include "condenser/inequality/haliste.hpp"

#include <cmath>

#include "condenser/fem/solver.hpp"

namespace condenser::inequality {
namespace {

void validate(const std::vector<cplx>& a, const std::vector<fem::Interval>& k_set) {
  require(!a.empty(), ErrorKind::InvalidInput, "need at least one slit direction");
  for (std::size_t k = 0; k < a.size(); ++k) {
    require(std::abs(std::abs(a[k]) - 1.0) <= 1e-12, ErrorKind::InvalidInput, "slit directions must lie on |z| = 1");
    for (std::size_t l = 0; l < k; ++l)
      require(std::abs(a[k] - a[l]) > 1e-12, ErrorKind::InvalidInput, "slit directions must be distinct");
  }
  for (const auto& iv : k_set)
    require(iv.lo > 0.0 && iv.lo <= iv.hi && iv.hi <= 1.0, ErrorKind::InvalidInput,
            "K must be a union of closed subintervals of (0, 1]");
}

}  // namespace

bool HalisteReport::asserted_hold() const {
  for (const auto& row : rows)
    if (row.failed || row.double_report.violated() || row.inner_report.violated()) return false;
  return true;
}

SlitValues slit_values(const fem::NumericDomain& domain, double r, const fem::SolveOptions& opts) {
  SlitValues v;
  const auto single = fem::circle_green_integral(domain, r, opts);
  const auto dbl = fem::double_circle_green_integral(domain, r, opts);
  const auto inner = fem::numeric_inner_radius(domain, 0.0, opts);
  v.single = single.value;
  v.single_error = single.error_estimate;
  v.double_integral = dbl.value;
  v.double_error = dbl.error_estimate;
  v.inner_radius = inner.value;
  v.inner_error = inner.error_estimate;
  v.low_accuracy = single.low_accuracy || dbl.low_accuracy;
  return v;
}

HalisteReport haliste_explore(const std::vector<cplx>& a, const std::vector<fem::Interval>& k_set,
                              const std::vector<double>& r_list, const fem::SolveOptions& opts) {
  validate(a, k_set);
  require(!r_list.empty(), ErrorKind::InvalidInput, "need at least one circle radius");
  for (double r : r_list) require(r > 0.0 && r < 1.0, ErrorKind::InvalidInput, "circle radii must lie in (0, 1)");
  const int n = static_cast<int>(a.size());
  std::vector<cplx> sym;
  for (int k = 0; k < n; ++k) sym.push_back(std::polar(1.0, 2.0 * kPi * k / n));
  const auto dom_sym = fem::NumericDomain::radially_slit_disk(sym, k_set);
  const auto dom_a = fem::NumericDomain::radially_slit_disk(a, k_set);
  HalisteReport rep{a, k_set, {}};
  for (double r : r_list) {
    HalisteRow row;
    row.r = r;
    try {
      row.symmetric = slit_values(dom_sym, r, opts);
      row.given = slit_values(dom_a, r, opts);
      const auto& s = row.symmetric;
      const auto& g = row.given;
      row.double_report = make_report_abs("double_integral", Relation::LessEqual, s.double_integral, g.double_integral,
                                          3.0 * (s.double_error + g.double_error));
      row.inner_report = make_report_abs("inner_radius", Relation::LessEqual, s.inner_radius, g.inner_radius,
                                         3.0 * (s.inner_error + g.inner_error));
      row.conjecture = make_report_abs("single_integral_conjecture", Relation::LessEqual, s.single, g.single,
                                       3.0 * (s.single_error + g.single_error));
      row.conjecture.asserted = false;
      if (s.low_accuracy || g.low_accuracy) {
        row.note = "circle passes near a slit";
        row.double_report.asserted = false;
      }
    } catch (const Error& e) {
      row.failed = true;
      row.note = std::string(to_string(e.kind())) + ": " + e.what();
    }
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

}  // namespace condenser::inequality
