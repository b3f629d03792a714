#pragma once

// Hand-built local models with known verdicts, one passing and one failing
// instance per condition plus the structural bi-quadratic obstructions.

#include <string>
#include <vector>

#include "rigidcheck/regularity.hpp"
#include "test_util.hpp"

namespace rigidcheck::testing {

struct WitnessCase {
  std::string name;
  LocalModel model;
  RegularityOptions options;
  PointClass cls;
  std::string condition;
  Outcome outcome;
  json witness;  // expected subset of the reported witness (fail) or details
};

/// Every key of `expected` appears in `actual` with an equal value.
inline bool json_subset(const json& expected, const json& actual) {
  if (expected.is_null()) return true;
  if (!actual.is_object()) return false;
  for (auto it = expected.begin(); it != expected.end(); ++it)
    if (!actual.contains(it.key()) || actual[it.key()] != it.value()) return false;
  return true;
}

inline std::string squares(int from, int to, int coeff_base = 0) {
  std::string s;
  for (int i = from; i <= to; ++i) {
    if (i > from) s += " + ";
    if (coeff_base) s += std::to_string(i + coeff_base) + "*";
    s += "x" + std::to_string(i) + "^2";
  }
  return s;
}

inline LocalModel build_model(FamilyParams p, std::vector<std::string> q, std::vector<std::string> w) {
  const std::size_t k = p.local_vars();
  std::vector<SparsePoly> qs, ws;
  for (const auto& s : q) qs.push_back(P(s, k));
  for (const auto& s : w) ws.push_back(P(s, k));
  ws.resize(static_cast<std::size_t>(2 * p.l + 1), SparsePoly(Field::rationals(), k));
  return LocalModel::from_components(p, Field::rationals(), std::move(qs), std::move(ws));
}

inline std::vector<WitnessCase> witness_suite() {
  const FamilyParams toy{4, 3, 2};
  const FamilyParams big{10, 2, 9};
  RegularityOptions strict;
  strict.mode = Mode::Strict;
  strict.trials = 3;
  RegularityOptions toymode = strict;
  toymode.mode = Mode::Toy;

  std::vector<WitnessCase> out;
  auto add = [&](std::string name, LocalModel lm, RegularityOptions o, PointClass c, std::string cond, Outcome v,
                 json w = nullptr) {
    out.push_back({std::move(name), std::move(lm), o, c, std::move(cond), v, std::move(w)});
  };

  add("R0.1 pass: q_i = z_i^i", build_model(toy, {"x0", "x1^2", "x2^3"}, {"1"}), toymode,
      PointClass::NonSingularOffRam, "R0.1", Outcome::Pass);
  add("R0.1 fail: q_2 = z_1 z_2", build_model(toy, {"x0", "x0*x1", "x2^3"}, {"1"}), toymode,
      PointClass::NonSingularOffRam, "R0.1", Outcome::Fail, {{"index", 2}, {"dim", 4}, {"expected_dim", 3}});
  add("R0.2 pass: smooth quadric and a cubic",
      build_model(toy, {"0", squares(0, 4), "x0*x1*x2 + x3^3 + x4^3"}, {"1"}), toymode, PointClass::QuadraticOffRam,
      "R0.2", Outcome::Pass);
  add("R0.2 fail: q_3 in the radical of q_2", build_model(toy, {"0", "x0^2", "x0^3"}, {"1"}), toymode,
      PointClass::QuadraticOffRam, "R0.2", Outcome::Fail, {{"index", 3}});
  add("R0.2 fail: q_1 and q_2 vanish", build_model(toy, {"0", "0", "x2^3"}, {"1"}), toymode, PointClass::Degenerate,
      "R0.2", Outcome::Fail, {{"index", 2}});

  add("R1.2 pass", build_model(big, {"x0", "x2^2"}, {"0", "x1"}), strict, PointClass::NonSingularOnRam, "R1.2",
      Outcome::Pass);
  add("R1.2 fail: q_2 in (q_1, w_1)", build_model(big, {"x0", "x0*x2 + x1*x3"}, {"0", "x1"}), strict,
      PointClass::NonSingularOnRam, "R1.2", Outcome::Fail);

  add("R2.1 pass at rank 7", build_model(big, {"0", squares(1, 7)}, {"1"}), strict, PointClass::QuadraticOffRam,
      "R2.1", Outcome::Pass, {{"rank", 7}});
  add("R2.1 fail at rank 6", build_model(big, {"0", squares(1, 6)}, {"1"}), strict, PointClass::QuadraticOffRam,
      "R2.1", Outcome::Fail, {{"rank", 6}, {"threshold", 7}});

  add("R2.2 pass at rank 6", build_model(big, {"x0", "x1^2"}, {"0", "2*x0", "2*x1^2 + " + squares(2, 7)}), strict,
      PointClass::QuadraticOnRamGSmooth, "R2.2", Outcome::Pass, {{"rank", 6}, {"lambda", "2"}});
  add("R2.2 fail at rank 5",
      build_model(big, {"x0", "x1^2"}, {"0", "2*x0", "2*x1^2 + x0*x8 + " + squares(2, 6)}), strict,
      PointClass::QuadraticOnRamGSmooth, "R2.2", Outcome::Fail, {{"rank", 5}, {"lambda", "2"}});

  add("R2.3 pass at rank 7", build_model(big, {"0", squares(0, 7)}, {"0", "x0"}), strict,
      PointClass::QuadraticOnRamGSing, "R2.3", Outcome::Pass, {{"rank", 7}});
  add("R2.3 fail at rank 6", build_model(big, {"0", squares(0, 6)}, {"0", "x0"}), strict,
      PointClass::QuadraticOnRamGSing, "R2.3", Outcome::Fail, {{"rank", 6}});

  add("R2² pass: diagonal pencil with distinct ratios",
      build_model(big, {"0", squares(0, 10)}, {"0", "0", squares(0, 10, 2)}), strict, PointClass::BiQuadratic, "R2²",
      Outcome::Pass, {{"subspace_dim", 11}});
  add("R2² fail: q_2 reducible", build_model(big, {"0", "x0*x1"}, {"0", "0", squares(0, 10, 2)}), strict,
      PointClass::BiQuadratic, "R2²", Outcome::Fail, {{"reason", "q_2 reducible"}, {"rank", 2}});
  add("R2² fail: w_2 - q_2 is a square",
      build_model(big, {"0", squares(0, 10)}, {"0", "0", squares(0, 10) + " + x0^2"}), strict, PointClass::BiQuadratic,
      "R2²", Outcome::Fail, {{"reason", "pencil member is a square"}, {"lambda", "1"}});
  add("R2² fail: low pencil rank", build_model(big, {"0", squares(0, 3)}, {"0", "0", squares(0, 10, 2)}), strict,
      PointClass::BiQuadratic, "R2²", Outcome::Fail, {{"reason", "low pencil rank"}, {"rank", 4}});
  return out;
}

}  // namespace rigidcheck::testing
