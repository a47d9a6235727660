#include <cmath>
#include <string>

#include "condenser/core/term_filter.hpp"
#include "condenser/inequality/checks.hpp"

namespace condenser::inequality {
namespace {

cplx finite_point(const core::PlateSpec& p) {
  require(p.center.is_finite(), ErrorKind::InvalidInput, "regular parts need finite points");
  return p.center.value();
}

// h(z_l, z_j) in the component of z_l; log r on the diagonal.
double regular(const core::CondenserSpec& s, std::size_t l, std::size_t j) {
  const auto& comp = s.components[s.component_of[l]];
  if (l == j) return std::log(analytic::inner_radius(comp, s.plates[l].center));
  if (s.component_of[l] == s.component_of[j])
    return analytic::regular_part(comp, s.plates[l].center, s.plates[j].center);
  return std::log(std::abs(finite_point(s.plates[l]) - finite_point(s.plates[j])));
}

double quadratic_form(const core::CondenserSpec& s, const std::string& side, std::vector<Term>& terms) {
  std::vector<double> summands;
  for (std::size_t l = 0; l < s.plates.size(); ++l)
    for (std::size_t j = 0; j < s.plates.size(); ++j) {
      const double h = regular(s, l, j);
      terms.push_back({side + ".h(" + std::to_string(l) + "," + std::to_string(j) + ")", h,
                       l == j ? "log inner radius" : "regular part of the Green function"});
      summands.push_back(s.plates[l].delta * s.plates[j].delta * h);
    }
  return core::filtered_sum(summands);
}

}  // namespace

InequalityReport check_nehari(const core::CondenserSpec& smaller, const core::CondenserSpec* larger, NehariMode mode) {
  smaller.validate();
  require(!smaller.numeric_field, ErrorKind::UnsupportedDomain, "Nehari checks need canonical components");
  for (const auto& p : smaller.plates) finite_point(p);
  if (mode == NehariMode::Goluzin) {
    double sum = 0.0;
    for (const auto& p : smaller.plates) sum += p.delta;
    require(std::abs(sum) <= 1e-12, ErrorKind::InvalidInput, "the Goluzin product needs potentials summing to zero");
    core::FilteredProduct lhs, rhs;
    std::vector<Term> terms;
    const std::size_t m = smaller.plates.size();
    for (std::size_t l = 0; l < m; ++l) {
      const double r = analytic::inner_radius(smaller.components[smaller.component_of[l]], smaller.plates[l].center);
      terms.push_back({"r(B_" + std::to_string(l) + ")", r, "inner radius"});
      lhs.multiply_pow(r, smaller.plates[l].delta * smaller.plates[l].delta);
    }
    for (std::size_t k = 0; k < m; ++k)
      for (std::size_t l = k + 1; l < m; ++l)
        rhs.multiply_pow(std::abs(smaller.plates[k].center.value() - smaller.plates[l].center.value()),
                         -2.0 * smaller.plates[k].delta * smaller.plates[l].delta);
    auto rep = make_report("goluzin", Relation::LessEqual, lhs.value(), rhs.value(), kAnalyticTolerance,
                           std::move(terms));
    rep.metadata["exponent"] = "delta_l^2 on r(B_l, z_l)";
    return rep;
  }
  require(larger != nullptr, ErrorKind::InvalidInput, "general Nehari mode needs the larger set");
  larger->validate();
  require(!larger->numeric_field, ErrorKind::UnsupportedDomain, "Nehari checks need canonical components");
  require(larger->plates.size() == smaller.plates.size(), ErrorKind::InvalidInput, "both sets must carry the same points");
  for (std::size_t l = 0; l < smaller.plates.size(); ++l) {
    require(smaller.plates[l].center == larger->plates[l].center && smaller.plates[l].delta == larger->plates[l].delta,
            ErrorKind::InvalidInput, "both sets must carry the same points and potentials");
    const auto in = analytic::contained_in(smaller.components[smaller.component_of[l]],
                                           larger->components[larger->component_of[l]]);
    require(in.has_value(), ErrorKind::UnsupportedComparison, "cannot decide containment of the components");
    require(*in, ErrorKind::InvalidInput, "a component of B is not contained in the matching component of B'");
  }
  std::vector<Term> terms;
  const double lhs = quadratic_form(smaller, "B", terms);
  const double rhs = quadratic_form(*larger, "B'", terms);
  return make_report("nehari", Relation::LessEqual, lhs, rhs, kAnalyticTolerance, std::move(terms));
}

}  // namespace condenser::inequality
