#include <random>

#include <gtest/gtest.h>

#include "witness_suite.hpp"

using namespace rigidcheck;
using rigidcheck::testing::P;
using rigidcheck::testing::Q;
using rigidcheck::testing::QV;

namespace {

/// g'(x) = g(T x) for T given by its rows.
SparsePoly pull_back(const SparsePoly& g, const Matrix& T) {
  std::vector<SparsePoly> images;
  for (std::size_t i = 0; i < T.rows(); ++i) images.push_back(linear_form(g.field(), T.row(i)));
  return substitute(g, images);
}

}  // namespace

TEST(LocalModel, ToyExampleExpandsByHand) {
  FamilyParams p{3, 2, 2};
  SparsePoly g = P("x0*x1 + x2^2", 5);
  SparsePoly h = P("x0^4 + x3^4", 5);
  LocalModel lm = local_model(p, g, h, {QV({1, 0, 0, 0, 0}), Q(1)});
  EXPECT_EQ(lm.chart, 0u);
  EXPECT_EQ(lm.qi(1), P("x0", 4));
  EXPECT_EQ(lm.qi(2), P("x1^2", 4));
  EXPECT_TRUE(lm.w0().is_one());
  EXPECT_EQ(lm.wj(4), P("x2^4", 4));
  EXPECT_EQ(classify_point(lm), PointClass::NonSingularOffRam);
}

TEST(LocalModel, ReconstructedEquationsVanishAtTheCentre) {
  std::mt19937_64 rng(17);
  Field f = Field::prime(32003);
  FamilyParams p{4, 3, 2};
  for (int k = 0; k < 20; ++k) {
    Vector o = rigidcheck::testing::random_vector(f, 6, rng);
    if (std::all_of(o.begin(), o.end(), [](const FieldElem& c) { return c.is_zero(); })) continue;
    std::size_t j = 0;
    while (o[j].is_zero()) ++j;
    SparsePoly g = rigidcheck::testing::random_form(f, 6, 3, rng);
    SparsePoly xj3 = SparsePoly::variable(f, 6, j).pow(3);
    g -= xj3.scaled(g.evaluate(o) / xj3.evaluate(o));
    SparsePoly h = rigidcheck::testing::random_form(f, 6, 4, rng);
    FieldElem u = rigidcheck::testing::random_elem(f, rng);
    SparsePoly xj4 = SparsePoly::variable(f, 6, j).pow(4);
    h += xj4.scaled((u * u - h.evaluate(o)) / xj4.evaluate(o));
    LocalModel lm = local_model(p, g, h, {o, u});
    Vector origin(5, f.zero());
    SparsePoly gl(f, 5), hl(f, 5);
    for (const auto& c : lm.q) gl += c;
    for (const auto& c : lm.w) hl += c;
    EXPECT_TRUE(gl.evaluate(origin).is_zero());
    FieldElem y = chart_y(lm);
    EXPECT_TRUE((hl.evaluate(origin) - y * y).is_zero());
  }
}

TEST(LocalModel, RejectsPointsOffV) {
  FamilyParams p{3, 2, 2};
  SparsePoly g = P("x0*x1 + x2^2", 5), h = P("x0^4", 5);
  EXPECT_THROW(local_model(p, g, h, {QV({1, 0, 1, 0, 0}), Q(1)}), InputError);
  EXPECT_THROW(local_model(p, g, h, {QV({1, 0, 0, 0, 0}), Q(2)}), InputError);
  EXPECT_THROW(local_model(p, g, h, {QV({0, 0, 0, 0, 0}), Q(1)}), InputError);
  EXPECT_THROW(local_model(p, P("x0*x1", 5), h, {QV({1, 0, 0, 0}), Q(1)}), InputError);
  EXPECT_THROW(local_model(FamilyParams{3, 3, 2}, g, h, {QV({1, 0, 0, 0, 0}), Q(1)}), InputError);
}

TEST(LocalModel, LiftRoundTrip) {
  auto lm = rigidcheck::testing::build_model({4, 3, 2}, {"x0", "x1^2 + x0*x4", "x2^3"}, {"4", "x3", "x1^2"});
  auto lifted = lift_local_model(lm, Q(2));
  LocalModel back = local_model(lm.params, lifted.g, lifted.h, lifted.point);
  EXPECT_EQ(back.q, lm.q);
  EXPECT_EQ(back.w, lm.w);
  EXPECT_THROW(lift_local_model(lm, Q(3)), InputError);
}

TEST(FamilyParams, ModeBounds) {
  EXPECT_THROW((FamilyParams{9, 5, 5}.validate(Mode::Strict)), InputError);
  EXPECT_NO_THROW((FamilyParams{9, 5, 5}.validate(Mode::Toy)));
  EXPECT_THROW((FamilyParams{10, 1, 10}.validate(Mode::Strict)), InputError);
  EXPECT_THROW((FamilyParams{10, 5, 5}.validate(Mode::Strict)), InputError);
  EXPECT_THROW((FamilyParams{2, 2, 1}.validate(Mode::Toy)), InputError);
}

TEST(Classify, Examples) {
  using rigidcheck::testing::build_model;
  FamilyParams p{4, 3, 2};
  EXPECT_EQ(classify_point(build_model(p, {"x0", "0", "0"}, {"1"})), PointClass::NonSingularOffRam);
  auto gs = build_model(p, {"x0", "0", "0"}, {"0", "2*x0"});
  EXPECT_EQ(classify_point(gs), PointClass::QuadraticOnRamGSmooth);
  EXPECT_EQ(ramification_lambda(gs)->to_string(), "2");
  EXPECT_EQ(classify_point(build_model(p, {"x0", "0", "0"}, {"0", "0"})), PointClass::QuadraticOnRamGSmooth);
  EXPECT_EQ(classify_point(build_model(p, {"x0", "0", "0"}, {"0", "x1"})), PointClass::NonSingularOnRam);
  EXPECT_EQ(classify_point(build_model(p, {"0", "x1^2", "0"}, {"0", "0"})), PointClass::BiQuadratic);
  EXPECT_EQ(classify_point(build_model(p, {"0", "x1^2", "0"}, {"0", "x2"})), PointClass::QuadraticOnRamGSing);
  EXPECT_EQ(classify_point(build_model(p, {"0", "x1^2", "0"}, {"3"})), PointClass::QuadraticOffRam);
  EXPECT_EQ(classify_point(build_model(p, {"0", "0", "x0^3"}, {"3"})), PointClass::Degenerate);
  EXPECT_EQ(classify_point(build_model(p, {"0", "0", "x0^3"}, {"0"})), PointClass::Degenerate);
}

TEST(WitnessSuite, EveryCaseGivesItsVerdict) {
  for (const auto& c : rigidcheck::testing::witness_suite()) {
    SCOPED_TRACE(c.name);
    RegularityReport rep = check_point(c.model, c.options);
    EXPECT_EQ(rep.cls, c.cls);
    const Verdict& v = rep.at(c.condition);
    EXPECT_EQ(v.outcome, c.outcome) << to_json(rep).dump();
    const json& got = v.outcome == Outcome::Fail ? v.witness : v.details;
    EXPECT_TRUE(rigidcheck::testing::json_subset(c.witness, got)) << got.dump();
    EXPECT_EQ(rep.overall, c.outcome);
    for (const auto& [name, verdict] : rep.checks)
      if (verdict.outcome == Outcome::Fail) EXPECT_FALSE(verdict.witness.is_null()) << name;
  }
}

TEST(CheckR22, ValidatesSubspaceDimension) {
  auto lm = rigidcheck::testing::build_model({4, 3, 2}, {"0", "x0^2 + x1^2 + x2^2 + x3^2 + x4^2", "x0^3"},
                                             {"0", "0", "x0^2 + 2*x1^2 + 3*x2^2 + 4*x3^2 + 5*x4^2"});
  RegularityOptions o;
  o.mode = Mode::Toy;
  o.subspace_dim = 7;
  EXPECT_THROW(check_R22(lm, o), InputError);
  o.subspace_dim = 3;
  EXPECT_THROW(check_R22(lm, o), InputError);
}

TEST(CheckR22, ResultDoesNotDependOnJobs) {
  auto base = rigidcheck::testing::witness_suite();
  for (const auto& c : base) {
    if (c.condition != "R2²" || c.outcome != Outcome::Pass) continue;
    RegularityOptions a = c.options, b = c.options;
    a.jobs = 1;
    b.jobs = 3;
    EXPECT_EQ(to_json(check_point(c.model, a)), to_json(check_point(c.model, b)));
  }
}

// Structural detection on the whole (z, y)-space agrees with the direct
// smoothness computation.
TEST(CheckR22, FullSpaceAgreesWithDirectComputation) {
  std::mt19937_64 rng(23);
  Field q = Field::rationals();
  int structural = 0, smooth = 0;
  for (int M : {3, 4}) {
    FamilyParams p{M, 2, M - 1};
    const std::size_t k = p.local_vars();
    for (int trial = 0; trial < 25; ++trial) {
      auto sparse_form = [&](int density) {
        std::vector<Term> ts;
        SparsePoly dense = rigidcheck::testing::random_form(q, k, 2, rng, 2);
        for (const auto& t : dense.terms())
          if (static_cast<int>(rng() % 10) < density) ts.push_back(t);
        return SparsePoly::from_terms(q, k, ts);
      };
      SparsePoly q2 = sparse_form(trial % 2 ? 3 : 7), w2 = sparse_form(trial % 3 ? 4 : 8);
      if (q2.is_zero()) continue;
      std::vector<SparsePoly> ws(static_cast<std::size_t>(2 * p.l + 1), SparsePoly(q, k));
      ws[2] = w2;
      LocalModel lm = LocalModel::from_components(p, q, {SparsePoly(q, k), q2}, ws);
      RegularityOptions o;
      o.mode = Mode::Toy;
      o.subspace_dim = p.ambient();
      o.trials = 2;
      Verdict v = check_R22(lm, o);
      SparsePoly y = SparsePoly::variable(q, k + 1, k);
      auto rep = smooth_complete_intersection({extend_vars(q2, k + 1), y * y - extend_vars(w2, k + 1)});
      bool full = rep.correct_codim && rep.smooth;
      EXPECT_EQ(v.outcome == Outcome::Pass, full) << q2.to_string() << " | " << w2.to_string();
      if (v.outcome == Outcome::Fail) ++structural;
      smooth += full;
    }
  }
  EXPECT_GT(structural, 0);
  EXPECT_GT(smooth, 0);
}

TEST(CheckPoint, SignOfUIsIrrelevant) {
  FamilyParams p{4, 3, 2};
  auto lm = rigidcheck::testing::build_model(p, {"0", "x0^2 + x1^2", "x2^3 + x3^3"}, {"9", "x1", "x2^2"});
  auto plus = lift_local_model(lm, Q(3)), minus = lift_local_model(lm, Q(-3));
  RegularityOptions o;
  o.mode = Mode::Toy;
  auto a = check_point(local_model(p, plus.g, plus.h, plus.point), o);
  auto b = check_point(local_model(p, minus.g, minus.h, minus.point), o);
  EXPECT_EQ(to_json(a), to_json(b));
}

TEST(CheckPoint, InvariantUnderCoordinateChangesAndScaling) {
  std::mt19937_64 rng(29);
  Field q = Field::rationals();
  for (const auto& c : rigidcheck::testing::witness_suite()) {
    if (c.model.params.M > 4) continue;  // toy cases only
    SCOPED_TRACE(c.name);
    const std::size_t n = c.model.params.ambient();
    auto base_w0 = c.model.w0();
    // w_0 is 0 or 1 throughout the suite, so u is 0 or 1.
    auto lifted = lift_local_model(c.model, base_w0);
    RegularityReport ref = check_point(c.model, c.options);
    for (int k = 0; k < 5; ++k) {
      Matrix T(q, n, n);
      do {
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 1; j < n; ++j) T(i, j) = rigidcheck::testing::random_elem(q, rng, 2);
        for (std::size_t i = 0; i < n; ++i) T(i, 0) = i == 0 ? q.one() : q.zero();
      } while (rank(T) != n);
      FieldElem cg = rigidcheck::testing::random_elem(q, rng, 3), ch = rigidcheck::testing::random_elem(q, rng, 3);
      if (cg.is_zero()) cg = q.one();
      if (ch.is_zero()) ch = q.from_int(2);
      SparsePoly g = pull_back(lifted.g, T).scaled(cg);
      SparsePoly h = pull_back(lifted.h, T).scaled(ch * ch);
      WeightedPoint pt{lifted.point.coords, lifted.point.u * ch};
      RegularityReport rep = check_point(local_model(c.model.params, g, h, pt), c.options);
      EXPECT_EQ(rep.cls, ref.cls);
      for (const auto& [name, v] : ref.checks) EXPECT_EQ(rep.at(name).outcome, v.outcome) << name;
    }
  }
}

TEST(ReportJson, ShapeAndPointParsing) {
  auto lm = rigidcheck::testing::build_model({4, 3, 2}, {"x0", "x1^2", "x2^3"}, {"1"});
  RegularityOptions o;
  o.mode = Mode::Toy;
  json j = to_json(check_point(lm, o));
  EXPECT_EQ(j["class"], "NonSingularOffRam");
  EXPECT_EQ(j["overall"], true);
  EXPECT_EQ(j["mode"], "toy");
  EXPECT_EQ(j["seed"], kDefaultSeed);
  EXPECT_EQ(j["checks"]["R0.1"]["verdict"], "pass");
  EXPECT_EQ(j["checks"]["R2²"]["verdict"], "not-applicable");
  auto pt = point_from_json(json::parse(R"({"coords": ["1", 0, "1/2"], "u": "-3"})"), Field::rationals());
  EXPECT_EQ(pt.coords[2].to_string(), "1/2");
  EXPECT_EQ(point_to_json(pt)["u"], "-3");
  EXPECT_THROW(point_from_json(json::parse(R"({"coords": ["x"], "u": "1"})"), Field::rationals()), InputError);
  EXPECT_THROW(point_from_json(json::parse(R"({"coords": ["1"]})"), Field::rationals()), InputError);
}
