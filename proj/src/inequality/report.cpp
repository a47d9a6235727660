#include "condenser/inequality/report.hpp"

#include <algorithm>
#include <cmath>

namespace condenser::inequality {

InequalityReport make_report_abs(std::string name, Relation relation, double lhs, double rhs, double tolerance,
                                 std::vector<Term> terms) {
  InequalityReport r;
  r.name = std::move(name);
  r.relation = relation;
  r.lhs = lhs;
  r.rhs = rhs;
  r.margin = relation == Relation::LessEqual ? rhs - lhs : lhs - rhs;
  r.tolerance = tolerance;
  r.passed = r.margin >= -tolerance;
  r.equality = std::abs(r.margin) <= tolerance;
  r.terms = std::move(terms);
  r.metadata["convention"] = kConventionVersion;
  return r;
}

InequalityReport make_report(std::string name, Relation relation, double lhs, double rhs, double relative_tolerance,
                             std::vector<Term> terms) {
  const double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
  return make_report_abs(std::move(name), relation, lhs, rhs, relative_tolerance * scale, std::move(terms));
}

InequalityReport precondition_report(std::string name, std::string diagnostic) {
  InequalityReport r;
  r.name = std::move(name);
  r.precondition_failed = true;
  r.diagnostic = std::move(diagnostic);
  r.metadata["convention"] = kConventionVersion;
  return r;
}

std::string_view to_string(Relation r) noexcept { return r == Relation::LessEqual ? "<=" : ">="; }

}  // namespace condenser::inequality
