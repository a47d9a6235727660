#pragma once

#include <map>
#include <string>
#include <vector>

namespace condenser::inequality {

inline constexpr const char* kConventionVersion = "ordered-tuples/drop-zero-infinite/v1";

enum class Relation { LessEqual, GreaterEqual };

struct Term {
  std::string name;
  double value;
  std::string source;  // which formula or oracle produced it
};

// One evaluated inequality. margin >= 0 means it holds, whatever the direction
// of the displayed relation.
struct InequalityReport {
  std::string name;
  Relation relation = Relation::LessEqual;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  double tolerance = 0.0;  // absolute, applied to the margin
  bool passed = false;
  bool equality = false;
  bool asserted = true;             // false for quantities that are only reported
  bool precondition_failed = false;
  std::string diagnostic;
  std::vector<Term> terms;
  std::map<std::string, std::string> metadata;

  // Counts against the run only when asserted and evaluated.
  bool violated() const noexcept { return asserted && !precondition_failed && !passed; }
};

// Fills margin, tolerance (relative_tolerance * max(1, |lhs|, |rhs|)), passed and equality.
InequalityReport make_report(std::string name, Relation relation, double lhs, double rhs, double relative_tolerance,
                             std::vector<Term> terms = {});

// Tolerance given as an absolute value (numeric paths with solver error bars).
InequalityReport make_report_abs(std::string name, Relation relation, double lhs, double rhs, double tolerance,
                                 std::vector<Term> terms = {});

InequalityReport precondition_report(std::string name, std::string diagnostic);

std::string_view to_string(Relation r) noexcept;

}  // namespace condenser::inequality
