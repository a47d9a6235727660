#include "condenser/cli/scenarios.hpp"

#include <cmath>

namespace condenser::cli {
namespace {

json base(const std::string& command, const std::string& description) {
  return {{"schema_version", kConfigSchemaVersion}, {"command", command}, {"description", description}};
}

json inequality(const std::string& name, const std::string& description, json params) {
  json c = base("inequality", description);
  c["name"] = name;
  c["params"] = std::move(params);
  return c;
}

json unit_disk() { return {{"type", "disk"}, {"center", {0.0, 0.0}}, {"radius", 1.0}}; }

json plate(double x, double delta = 1.0) { return {{"center", {x, 0.0}}, {"delta", delta}}; }

json r_list_4_7() {
  json r = json::array();
  for (int k = 4; k <= 7; ++k) r.push_back(std::ldexp(1.0, -k));
  return r;
}

std::vector<Scenario> build() {
  std::vector<Scenario> out;
  auto add = [&out](std::string name, json config) {
    out.push_back({std::move(name), config.value("description", ""), std::move(config)});
  };

  {
    json c = base("calibrate", "ring {0.1 < |z| < 1}: module log(10) / (2 pi)");
    c["params"] = {{"kind", "ring"}, {"r", 0.1}};
    add("ring-calibration", c);
  }
  {
    json c = base("calibrate", "numeric Green function of the unit disk against the exact one at 100 points");
    c["params"] = {{"kind", "disk-green"}, {"pole", {0.3, 0.2}}, {"samples", 100}};
    add("disk-green-calibration", c);
  }
  {
    json c = base("asymptotics", "unit disk, plate at 0, r = 2^-4 .. 2^-7");
    c["params"] = {{"domain", unit_disk()}, {"plates", {plate(0.0)}}, {"r_list", r_list_4_7()}, {"limit_tolerance", 1e-2}};
    add("asymptotics-center-plate", c);
  }
  {
    json c = base("asymptotics", "unit disk, plates at +-0.5 with potentials 1, 1");
    c["params"] = {{"domain", unit_disk()}, {"plates", {plate(0.5), plate(-0.5)}}, {"r_list", r_list_4_7()}};
    add("asymptotics-two-plates", c);
  }
  {
    json c = base("asymptotics", "square plates against circular plates, unit disk, plate at 0");
    c["params"] = {{"domain", unit_disk()},
                   {"plates", {plate(0.0)}},
                   {"r_list", r_list_4_7()},
                   {"shape", {{"kind", "square"}, {"kappa", 1.0}}}};
    add("lemma1-square-plates", c);
  }
  {
    json c = base("reduced-module", "reduced module of the unit disk with plates at +-0.5");
    c["params"] = {{"domain", unit_disk()}, {"plates", {plate(0.5), plate(-0.5)}}};
    add("reduced-module-two-plates", c);
  }
  for (int n = 2; n <= 8; ++n)
    add("eq11-roots-of-unity-n" + std::to_string(n),
        inequality("eq11", "n-th roots of unity: both sides equal n^n", {{"roots_of_unity", n}}));
  add("eq11-example", inequality("eq11", "z = {1, -2}: 9 >= 8", {{"moduli", {1.0, 2.0}}}));
  add("strengthened-symmetric-n2",
      inequality("strengthened", "symmetric points on |z| = 1, n = 2: equality", {{"roots_of_unity", 2}}));
  add("two-per-ray-example",
      inequality("two_per_ray", "two points per ray, n = 2", {{"first", {0.5, 0.5}}, {"second", {2.0, 2.0}}}));
  add("schur-perturbed", inequality("schur", "angles {0, 2.0, 4.3} on the unit circle", {{"angles", {0.0, 2.0, 4.3}}}));
  for (int n : {2, 3})
    for (double big_r : {1.0, 2.0}) {
      json p = {{"extremal", true}, {"n", n}, {"R", big_r}};
      const std::string desc = "extremal petals of {Re z^n < R^n / 2}: equality n^-n R^(n(n+1))";
      const std::string name = "thm4-extremal-n" + std::to_string(n);
      add(name + "-R" + std::to_string(static_cast<int>(big_r)), inequality("thm4", desc, p));
      if (big_r == 1.0) add(name, inequality("thm4", desc, p));
    }
  add("thm5-extremal-n2",
      inequality("thm5", "sectors of opening pi, r = 1, R = 4: bound 33.1776",
                 {{"extremal", true}, {"n", 2}, {"r", 1.0}, {"R", 4.0}}));
  add("thm6-extremal-n2",
      inequality("thm6", "sectors, pairs on |z| = 1: bound (2r/n)^(2n) = 1", {{"extremal", true}, {"n", 2}, {"r", 1.0}}));
  const json identity = {{"type", "identity"}};
  const json unit_closure = {{"type", "closed_disk"}, {"size", 1.0}};
  add("thm7-identity-n1",
      inequality("thm7", "identity map, z = {0.5}: 1 <= 4/3",
                 {{"function", identity}, {"closure", unit_closure}, {"w0", {0.0, 0.0}}, {"points", {{0.5, 0.0}}}}));
  add("thm7-identity-n2", inequality("thm7", "identity map, z = {0.5, -0.5}: 1 <= 1.13778",
                                     {{"function", identity},
                                      {"closure", unit_closure},
                                      {"w0", {0.0, 0.0}},
                                      {"points", {{0.5, 0.0}, {-0.5, 0.0}}}}));
  add("thm8-extremal-n1", inequality("thm8", "((1+z)/(1-z))^2: sum 1/8", {{"n", 1}, {"mode", "schwarzian"}, {"source", "exact"}}));
  add("thm8-extremal-n2",
      inequality("thm8", "extremal pair, numeric Schwarzian: sum 1/2", {{"n", 2}, {"mode", "schwarzian"}, {"source", "numeric"}}));
  add("thm8-k-functional-n2",
      inequality("thm8", "extremal pair through K(D_k, f_k(0))", {{"n", 2}, {"mode", "k_functional"}}));
  add("k-functional-disk", inequality("k_functional", "K(Disk(0, 2), 1) = 4/9",
                                      {{"domain", {{"type", "disk"}, {"center", {0.0, 0.0}}, {"radius", 2.0}}}, {"w", {1.0, 0.0}}}));
  {
    const json small_disks = {{{"type", "disk"}, {"center", {0.5, 0.0}}, {"radius", 0.4}},
                              {{"type", "disk"}, {"center", {-0.5, 0.0}}, {"radius", 0.4}}};
    const json plates = {{{"center", {0.5, 0.0}}, {"delta", 1.0}, {"component", 0}},
                         {{"center", {-0.5, 0.0}}, {"delta", -1.0}, {"component", 1}}};
    const json smaller = {{"components", small_disks}, {"plates", plates}};
    add("nehari-equality", inequality("nehari", "B = B': equality", {{"smaller", smaller}, {"larger", smaller}}));
    const json larger = {{"domain", {{"type", "disk"}, {"center", {0.0, 0.0}}, {"radius", 2.0}}},
                         {"plates", {{{"center", {0.5, 0.0}}, {"delta", 1.0}}, {{"center", {-0.5, 0.0}}, {"delta", -1.0}}}}};
    add("nehari-two-disks",
        inequality("nehari", "disks of radius 0.4 at +-0.5 inside Disk(0, 2)", {{"smaller", smaller}, {"larger", larger}}));
    const json goluzin = {{"components",
                           {{{"type", "disk"}, {"center", {0.0, 0.0}}, {"radius", 0.4}},
                            {{"type", "disk"}, {"center", {1.0, 0.0}}, {"radius", 0.4}}}},
                          {"plates",
                           {{{"center", {0.0, 0.0}}, {"delta", 1.0}, {"component", 0}},
                            {{"center", {1.0, 0.0}}, {"delta", -1.0}, {"component", 1}}}}};
    add("goluzin-example", inequality("goluzin", "disks of radius 0.4 at 0 and 1: 0.16 <= 1", {{"smaller", goluzin}}));
  }
  add("lemma2-symmetric", inequality("lemma2", "unit disk, z = +-0.5: product 0.36",
                                     {{"domain", unit_disk()}, {"z1", {0.5, 0.0}}, {"z2", {-0.5, 0.0}}}));
  {
    json c = base("haliste", "n = 2, second slit rotated by 8 angles, K = [0.5, 1], r = 0.25");
    json pert = json::array();
    for (int j = 0; j < 8; ++j) pert.push_back(j * kPi / 8.0);
    c["params"] = {{"n", 2}, {"perturbations", pert}, {"k", {{0.5, 1.0}}}, {"r_list", {0.25}}};
    add("haliste-sweep-n2", c);
  }
  {
    json c = base("sweep", "200 seeded random trials of every inequality check");
    c["params"] = {{"trials", 200}};
    c["seed"] = 20240101u;
    add("random-sweep", c);
  }
  return out;
}

}  // namespace

const std::vector<Scenario>& scenario_catalog() {
  static const std::vector<Scenario> catalog = build();
  return catalog;
}

std::optional<Scenario> find_scenario(const std::string& name) {
  for (const auto& s : scenario_catalog())
    if (s.name == name) return s;
  return std::nullopt;
}

}  // namespace condenser::cli
