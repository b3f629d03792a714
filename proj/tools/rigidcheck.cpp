// rigidcheck command-line front end.
//
// Exit codes: 0 pass/success, 1 fail, 2 indeterminate (including an
// exhausted Groebner budget), 3 usage or input error.

#include <CLI11.hpp>

#include <cstdio>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>

#include "rigidcheck/ffsample.hpp"
#include "rigidcheck/regularity.hpp"
#include "rigidcheck/strata.hpp"

using namespace rigidcheck;

namespace {

constexpr int kExitPass = 0, kExitFail = 1, kExitIndeterminate = 2, kExitUsage = 3;

int exit_code(Outcome o) {
  switch (o) {
    case Outcome::Pass:
    case Outcome::NotApplicable:
      return kExitPass;
    case Outcome::Fail:
      return kExitFail;
    case Outcome::Indeterminate:
      return kExitIndeterminate;
  }
  return kExitUsage;
}

// setw counts bytes; condition names may contain a superscript.
std::string padded(const std::string& s, std::size_t width) {
  std::size_t cps = 0;
  for (unsigned char c : s) cps += (c & 0xC0) != 0x80;
  return s + std::string(cps < width ? width - cps : 1, ' ');
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

FamilyParams parse_params(const std::string& s) {
  FamilyParams p;
  char c1 = 0, c2 = 0;
  std::istringstream in(s);
  if (!(in >> p.M >> c1 >> p.m >> c2 >> p.l) || c1 != ',' || c2 != ',' || !(in >> std::ws).eof())
    throw InputError("--params: expected M,m,l (got '" + s + "')");
  return p;
}

SparsePoly read_poly(const std::string& path, const std::string& what) {
  try {
    return poly_from_json(read_json_file(path));
  } catch (const InputError& e) {
    throw InputError(what + " (" + path + "): " + e.what());
  }
}

struct GlobalOpts {
  bool as_json = false;
  std::uint64_t budget = 0;
  unsigned jobs = 1;
};

Budget budget_of(const GlobalOpts& g) {
  // --budget beats RIGIDCHECK_BUDGET beats the built-in default.
  Budget b = Budget::from_env();
  if (g.budget) b.max_reductions = g.budget;
  return b;
}

// ---- check / classify ----

struct PointInput {
  std::string params = "";
  std::string g, h, point;
};

LocalModel load_model(const PointInput& in, Mode mode) {
  FamilyParams p = parse_params(in.params);
  p.validate(mode);
  SparsePoly g = read_poly(in.g, "--g"), h = read_poly(in.h, "--h");
  if (g.field() != h.field()) throw InputError("--g and --h are over different fields");
  json pj = read_json_file(in.point);
  WeightedPoint o = point_from_json(pj, g.field());
  return local_model(p, g, h, o);
}

int run_check(const PointInput& in, const std::string& mode_s, std::size_t s, std::size_t trials,
              std::uint64_t seed, const GlobalOpts& g) {
  RegularityOptions opts;
  opts.mode = parse_mode(mode_s);
  opts.subspace_dim = s;
  opts.trials = trials;
  opts.seed = seed;
  opts.jobs = g.jobs;
  opts.budget = budget_of(g);
  LocalModel lm = load_model(in, opts.mode);
  RegularityReport rep = check_point(lm, opts);
  if (g.as_json) {
    emit(to_json(rep));
  } else {
    std::cout << "class    " << to_string(rep.cls) << "\n";
    for (const auto& [name, v] : rep.checks) {
      std::cout << padded(name, 9) << to_string(v.outcome);
      if (!v.witness.is_null()) std::cout << "  " << v.witness.dump();
      std::cout << "\n";
    }
    std::cout << "overall  " << to_string(rep.overall) << "\n"
              << "mode     " << to_string(rep.mode) << "\nseed     " << rep.seed << "\n";
  }
  return exit_code(rep.overall);
}

int run_classify(const PointInput& in, const std::string& mode_s, const GlobalOpts& g) {
  LocalModel lm = load_model(in, parse_mode(mode_s));
  if (g.as_json) {
    json j = to_json(lm);
    j["point"] = point_to_json(*lm.point);
    emit(j);
  } else {
    std::cout << to_string(classify_point(lm)) << "\n";
  }
  return kExitPass;
}

// ---- strata ----

int run_xi(long long M, const GlobalOpts& g) {
  long long v = xi(M);
  if (g.as_json)
    emit({{"M", M}, {"xi", v}});
  else
    std::cout << v << "\n";
  return kExitPass;
}

json entries_json(const std::vector<CodimEntry>& es) {
  json a = json::array();
  for (const auto& e : es) a.push_back({{"name", e.name}, {"formula", e.formula}, {"value", e.value}});
  return a;
}

int run_codim_table(long long M, long long m, const GlobalOpts& g) {
  CodimTable t = codim_table(M, m);
  if (g.as_json) {
    json prefix = json::array();
    for (const auto& [d, b] : t.prefix_bounds) prefix.push_back({{"d", d}, {"value", b.get_str()}});
    emit({{"M", t.M},
          {"off_ram", entries_json(t.off_ram)},
          {"on_ram", entries_json(t.on_ram)},
          {"prefix_bounds", prefix},
          {"boundA", t.boundA},
          {"boundB", t.boundB},
          {"theorem2", t.theorem2},
          {"xi", t.xi},
          {"matches_xi", t.theorem2 == t.xi}});
    return kExitPass;
  }
  auto table = [](const char* title, const std::vector<CodimEntry>& es) {
    std::cout << title << "\n";
    for (const auto& e : es)
      std::cout << "  " << std::left << std::setw(18) << e.name << std::setw(20) << e.formula << e.value << "\n";
  };
  std::cout << "M = " << t.M << "\n";
  table("off ramification (u != 0)", t.off_ram);
  table("on ramification (u = 0)", t.on_ram);
  for (const auto& [d, b] : t.prefix_bounds) std::cout << "  R0 prefix d=" << d << "  binom(M+1,d) = " << b << "\n";
  std::cout << "boundA   " << t.boundA << "\nboundB   " << t.boundB << "\nmin      " << t.theorem2 << "\nxi(M)    "
            << t.xi << (t.theorem2 == t.xi ? "" : "   MISMATCH") << "\n";
  return kExitPass;
}

int run_cross_check(long long lo, long long hi, const std::vector<long long>& allow, const GlobalOpts& g) {
  const std::set<long long> expected(allow.begin(), allow.end());
  auto rows = cross_check(lo, hi);
  json out_rows = json::array(), unexpected = json::array();
  for (const auto& r : rows) {
    bool allowed = expected.count(r.M) > 0;
    if (!r.equal && !allowed) unexpected.push_back(r.M);
    out_rows.push_back({{"M", r.M}, {"bound", r.bound}, {"xi", r.xi}, {"equal", r.equal}, {"expected_mismatch", allowed}});
  }
  if (g.as_json) {
    emit({{"rows", out_rows}, {"unexpected_mismatches", unexpected}, {"ok", unexpected.empty()}});
  } else {
    std::cout << std::right << std::setw(8) << "M" << std::setw(12) << "bound" << std::setw(12) << "xi(M)" << "\n";
    for (const auto& r : rows) {
      std::cout << std::setw(8) << r.M << std::setw(12) << r.bound << std::setw(12) << r.xi;
      if (!r.equal) std::cout << (expected.count(r.M) ? "  mismatch (expected)" : "  MISMATCH");
      std::cout << "\n";
    }
  }
  return unexpected.empty() ? kExitPass : kExitFail;
}

// ---- ffsample ----

int run_verify_strata(int n, int r, std::uint64_t q, const GlobalOpts& g) {
  CensusResult c = count_rank_leq(n, r, q, g.jobs);
  const long long expected = rank_stratum_codim(n, r);
  const bool ok = c.count > 0 && std::llround(c.implied_codim) == expected;
  if (g.as_json) {
    json j = to_json(c);
    j["rank_stratum_codim"] = expected;
    j["consistent"] = ok;
    emit(j);
  } else {
    std::cout << c.description << "\n  count          " << c.count << "\n  implied codim  " << std::fixed
              << std::setprecision(4) << c.implied_codim << "\n  expected codim " << expected << "\n  "
              << (ok ? "consistent" : "INCONSISTENT") << "\n";
  }
  return ok ? kExitPass : kExitFail;
}

int run_sample(const std::string& cond, SampleOptions o, const std::string& params, const GlobalOpts& g) {
  o.params = parse_params(params);
  o.jobs = g.jobs;
  o.budget = budget_of(g);
  FractionEstimate e = estimate_bad_fraction(cond, o);
  if (g.as_json) {
    json j = to_json(e);
    j["q"] = o.q;
    j["seed"] = o.seed;
    emit(j);
  } else {
    std::cout << cond << ": " << e.failures << " / " << e.samples << " failures, fraction " << e.fraction
              << "\n  Wilson [" << e.lo << ", " << e.hi << "] at z = " << e.z << "\n";
    if (e.heuristic) std::cout << "  stratum heuristic " << *e.heuristic << "\n";
  }
  return kExitPass;
}

// ---- groebner ----

Ideal ideal_from_json(const json& j) {
  if (!j.is_object()) throw InputError("ideal: expected a JSON object");
  const std::size_t nvars = parse_nvars(j);
  if (!j.contains("field")) throw InputError("field 'field': missing");
  const Field field = parse_field(j.at("field"));
  if (!j.contains("generators") || !j.at("generators").is_array())
    throw InputError("field 'generators': expected an array");
  Ideal I(field, nvars);
  const json& gens = j.at("generators");
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const std::string where = "generators[" + std::to_string(i) + "]";
    const json& gj = gens[i];
    if (gj.is_array()) {
      I.add(parse_terms(field, nvars, gj, where));
    } else if (gj.is_object() && gj.contains("terms")) {
      SparsePoly f = poly_from_json(gj);
      if (f.nvars() != nvars || f.field() != field) throw InputError(where + ": ring differs from the ideal's");
      I.add(f);
    } else {
      throw InputError(where + ": expected a term list or a polynomial object");
    }
  }
  return I;
}

int run_groebner(const std::string& path, const GlobalOpts& g) {
  Ideal I = ideal_from_json(read_json_file(path));
  GroebnerBasis gb = groebner(I, budget_of(g));
  if (g.as_json) {
    json basis = json::array();
    for (const auto& f : gb.basis) basis.push_back(poly_to_json(f));
    emit({{"nvars", gb.nvars}, {"field", field_to_json(gb.field)}, {"order", gb.order}, {"basis", basis}});
  } else {
    for (const auto& f : gb.basis) std::cout << f.to_string() << "\n";
  }
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Regularity certificates and codimension calculus for double hypersurfaces"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_help_flag("--help", "print help");
  GlobalOpts g;
  app.add_flag("--json", g.as_json, "JSON output");
  app.add_option("--budget", g.budget, "Groebner reduction cap (overrides RIGIDCHECK_BUDGET)")
      ->check(CLI::PositiveNumber);
  app.add_option("--jobs", g.jobs, "worker threads for trials, censuses and sampling")->check(CLI::Range(1, 256));

  // check / classify
  PointInput pin;
  std::string mode = "strict";
  std::size_t subspace = 0, trials = 4;
  std::uint64_t seed = kDefaultSeed;
  auto add_point_opts = [&](CLI::App* sub) {
    sub->add_option("--params", pin.params, "M,m,l")->required();
    sub->add_option("--g", pin.g, "degree-m polynomial (JSON)")->required();
    sub->add_option("--h", pin.h, "degree-2l polynomial (JSON)")->required();
    sub->add_option("--point", pin.point, "point {coords, u} (JSON)")->required();
    sub->add_option("--mode", mode, "strict|toy")->check(CLI::IsMember({"strict", "toy"}));
  };
  auto* check = app.add_subcommand("check", "check the regularity conditions at a point");
  add_point_opts(check);
  check->add_option("--subspace-dim", subspace, "dimension of the random subspace for R2^2 (default min(11, M+2))");
  check->add_option("--trials", trials, "R2^2 random trials")->check(CLI::PositiveNumber);
  check->add_option("--seed", seed, "master seed");
  auto* classify = app.add_subcommand("classify", "classify a point and print its local model");
  add_point_opts(classify);

  // strata
  long long M = 0, m = 0, lo = 0, hi = 0;
  std::vector<long long> allow;
  auto* xi_cmd = app.add_subcommand("xi", "evaluate xi(M)");
  xi_cmd->add_option("M", M)->required();
  auto* table = app.add_subcommand("codim-table", "per-condition codimension table");
  table->add_option("M", M)->required();
  table->add_option("--m", m, "degree of g, enables the R0 prefix bounds");
  auto* cross = app.add_subcommand("cross-check", "compare the aggregated bound with xi(M)");
  cross->add_option("M_LO", lo)->required();
  cross->add_option("M_HI", hi)->required();
  cross->add_option("--expect-mismatch", allow, "values of M allowed to disagree");

  // ffsample
  int n = 0, r = 0;
  std::uint64_t q = 0;
  auto* vs = app.add_subcommand("verify-strata", "exact census of a symmetric rank stratum over F_q");
  vs->add_option("--n", n)->required();
  vs->add_option("--r", r)->required();
  vs->add_option("--q", q)->required();
  SampleOptions so;
  std::string condition, sparams = "4,3,2";
  auto* sample = app.add_subcommand("sample", "Monte Carlo failure fraction of a condition");
  sample->add_option("--condition", condition)->required()->check(CLI::IsMember(kSampleConditions));
  sample->add_option("--q", so.q);
  sample->add_option("--samples", so.samples);
  sample->add_option("--seed", so.seed);
  sample->add_option("--params", sparams, "toy-mode M,m,l");
  sample->add_option("--n", so.n, "R2.1-rank matrix size");
  sample->add_option("--r", so.r, "R2.1-rank failing rank bound");
  sample->add_option("--d", so.d, "R0-prefix-d prefix length");
  sample->add_option("--z", so.z, "Wilson interval z");

  // groebner
  std::string ideal_path;
  auto* gb = app.add_subcommand("groebner", "reduced Groebner basis of an ideal (JSON)");
  gb->add_option("IDEAL", ideal_path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (*check) return run_check(pin, mode, subspace, trials, seed, g);
    if (*classify) return run_classify(pin, mode, g);
    if (*xi_cmd) return run_xi(M, g);
    if (*table) return run_codim_table(M, m, g);
    if (*cross) return run_cross_check(lo, hi, allow, g);
    if (*vs) return run_verify_strata(n, r, q, g);
    if (*sample) return run_sample(condition, so, sparams, g);
    if (*gb) return run_groebner(ideal_path, g);
  } catch (const BudgetExceeded& e) {
    std::cerr << "rigidcheck: indeterminate: " << e.what() << "\n";
    return kExitIndeterminate;
  } catch (const std::exception& e) {
    std::cerr << "rigidcheck: error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
