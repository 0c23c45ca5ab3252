#pragma once

// Command-line front end. Exit codes: 0 success, 1 usage or validation
// error, 2 budget exhausted before the requested count (partial result).

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "simtwist/certjson.hpp"
#include "simtwist/polyident.hpp"
#include "simtwist/twistgen.hpp"

namespace simtwist::cli {

enum ExitCode : int { kOk = 0, kError = 1, kPartial = 2 };

namespace detail {

struct Options {
  std::string curve1, curve2, curve, delta;
  std::string input, output;
  std::size_t count = Config{}.target_count;
  std::size_t max_iterations = Config{}.max_iterations;
  std::uint32_t lambda_bound = Config{}.lambda_search_bound;
  std::uint64_t effort = Effort{}.rho_iterations;
  std::string prime_start = "2";
};

inline Config make_config(const Options& o) {
  Config cfg;
  cfg.target_count = o.count;
  cfg.max_iterations = o.max_iterations;
  cfg.lambda_search_bound = o.lambda_bound;
  cfg.effort.rho_iterations = o.effort;
  const Rat start = Rat::parse(o.prime_start);
  if (!start.is_integer()) throw std::invalid_argument("--prime-start must be an integer");
  cfg.prime_start = start.num();
  cfg.validate();
  return cfg;
}

inline void emit(const Bundle& bundle, const Options& o, std::ostream& out) {
  const std::string text = to_json(bundle).dump(1) + "\n";
  if (o.output.empty()) {
    out << text;
    return;
  }
  std::ofstream file(o.output, std::ios::binary);
  if (!file) throw std::runtime_error("cannot write " + o.output);
  file << text;
}

inline void describe(const Bundle& b, std::ostream& err) {
  err << "route: " << route_name(b.route) << ", lambda = " << b.lambda << "\n";
  if (b.jzero)
    err << "p = " << b.jzero->p << ", t = " << b.jzero->t << ", seed (" << b.jzero->u << "," << b.jzero->v << ")\n";
  for (const auto& c : b.certificates) {
    err << "k = " << c.k << ": D = " << c.D;
    if (c.squarefree_D)
      err << " (squarefree " << c.squarefree_D->value << (c.squarefree_D->complete ? "" : ", uncertified") << ")";
    if (c.delta) err << ", D*delta = " << c.D * *c.delta;
    err << "\n";
  }
  for (const auto& s : b.report.skipped) err << "skipped k = " << s.k << ": " << skip_reason_name(s.reason) << "\n";
  err << b.certificates.size() << " certificate(s), ledger " << (b.ledger_ok ? "ok" : "VIOLATED") << "\n";
}

inline int finish(const Bundle& b, const Options& o, std::ostream& out, std::ostream& err) {
  describe(b, err);
  emit(b, o, out);
  if (!b.ledger_ok) return kError;
  return b.report.complete ? kOk : kPartial;
}

inline int run_verify(const Options& o, std::ostream& out, std::ostream& err) {
  std::ifstream file(o.input, std::ios::binary);
  if (!file) {
    err << "error: cannot read " << o.input << "\n";
    return kError;
  }
  Json j;
  try {
    j = Json::parse(file);
  } catch (const Json::exception& e) {
    err << "error: " << o.input << " is not JSON: " << e.what() << "\n";
    return kError;
  }
  std::vector<TwistCertificate> certs;
  std::optional<bool> claimed_ledger;
  if (j.contains("certificates")) {
    Bundle b = bundle_from_json(j);
    certs = std::move(b.certificates);
    claimed_ledger = b.ledger_ok;
  } else {
    certs.push_back(certificate_from_json(j));
  }
  bool all_ok = true;
  for (std::size_t i = 0; i < certs.size(); ++i) {
    const auto check = verify_certificate(certs[i]);
    out << "certificate " << i << " (k=" << certs[i].k << "): ";
    if (check) {
      out << "OK\n";
    } else {
      out << "FAIL " << check.reason << " (curve " << check.curve_index << ")\n";
      all_ok = false;
    }
  }
  const auto bundle_check = verify_bundle(certs);
  const bool distinct = bundle_check.ok || bundle_check.reason.rfind("class-collision", 0) != 0;
  const std::size_t pairs = certs.empty() ? 0 : certs.size() * (certs.size() - 1) / 2;
  if (distinct) {
    out << "square classes: OK (" << pairs << " pairwise products non-square)\n";
  } else {
    out << "square classes: FAIL " << bundle_check.reason << "\n";
    all_ok = false;
  }
  if (claimed_ledger && *claimed_ledger != distinct) {
    out << "ledger flag: FAIL (bundle claims ledger_ok = " << std::boolalpha << *claimed_ledger << ")\n";
    all_ok = false;
  }
  return all_ok ? kOk : kError;
}

inline int run_identity_check(std::ostream& out) {
  bool ok = true;
  auto line = [&](const char* name, const MPoly& remainder) {
    out << name << ": " << (remainder.is_zero() ? "holds" : "FAILS") << "\n";
    if (!remainder.is_zero()) {
      out << "  remainder: " << remainder.str() << "\n";
      ok = false;
    }
  };
  line("transform carries f_{a,b}(x) = f_{c,d}(y) onto Y^2 = X^3 - 3acX - a^3 - c^3 - 27(b-d)^2/4",
       weierstrass_identity_remainder(poly::transform_X(), poly::transform_Y()));
  const auto point = point_identity_remainders();
  line("transform sends P' = [b-d:b-d:c-a] to P'' (X-coordinate)", point.x_remainder);
  line("transform sends P' = [b-d:b-d:c-a] to P'' (Y-coordinate)", point.y_remainder);
  line("discriminant of X^3 - 3acX - a^3 - c^3 - 27(b-d)^2/4 equals 108a^3c^3 - 27(4a^3+4c^3+27(b-d)^2)^2/16",
       disc_identity_remainder());
  return ok ? kOk : kError;
}

}  // namespace detail

/// Runs one invocation. `args` excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Certified simultaneous positive-rank quadratic twists of elliptic curves over Q", "simtwist"};
  app.require_subcommand(1);
  detail::Options o;

  auto add_budget = [&](CLI::App* sub) {
    sub->add_option("--count", o.count, "certificates to produce")->check(CLI::PositiveNumber);
    sub->add_option("--max-iterations", o.max_iterations, "largest multiple (or x0) to try")->check(CLI::PositiveNumber);
    sub->add_option("--lambda-bound", o.lambda_bound, "largest height for the model rescaling")->check(CLI::PositiveNumber);
    sub->add_option("--effort", o.effort, "Pollard rho iterations per squarefree label")->check(CLI::PositiveNumber);
    sub->add_option("--prime-start", o.prime_start, "first prime considered on the j = 0 route");
    sub->add_option("--output", o.output, "write JSON here instead of stdout");
  };

  auto* generate = app.add_subcommand("generate", "twists for a pair of curves (routes automatically)");
  generate->add_option("--curve1", o.curve1, "first curve a,b")->required();
  generate->add_option("--curve2", o.curve2, "second curve c,d")->required();
  add_budget(generate);

  auto* jzero = app.add_subcommand("jzero", "pair of j = 0 curves via the sextic twist construction");
  jzero->add_option("--curve1", o.curve1, "first curve 0,b")->required();
  jzero->add_option("--curve2", o.curve2, "second curve 0,d")->required();
  add_budget(jzero);

  auto* corollary = app.add_subcommand("corollary", "twists D of E such that E twisted by D and by D*delta both have positive rank");
  corollary->add_option("--curve", o.curve, "curve a,b with a != 0")->required();
  corollary->add_option("--delta", o.delta, "nonzero rational delta")->required();
  add_budget(corollary);

  auto* elementary = app.add_subcommand("elementary", "positive-rank twists of one curve from f(x0), x0 = 1, 2, ...");
  elementary->add_option("--curve", o.curve, "curve a,b")->required();
  add_budget(elementary);

  auto* verify = app.add_subcommand("verify", "recheck a certificate or bundle file");
  verify->add_option("--input", o.input, "certificate or bundle JSON")->required();

  auto* identity = app.add_subcommand("identity-check", "check the symbolic identities behind the Weierstrass model");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kError;
  }

  try {
    if (verify->parsed()) return detail::run_verify(o, out, err);
    if (identity->parsed()) return detail::run_identity_check(out);

    const Config cfg = detail::make_config(o);
    if (generate->parsed() || jzero->parsed()) {
      const Curve e1 = Curve::parse(o.curve1);
      const Curve e2 = Curve::parse(o.curve2);
      if (jzero->parsed()) {
        if (!has_j_zero(e1) || !has_j_zero(e2)) throw std::invalid_argument("jzero needs two curves with a = 0");
        if (are_isomorphic_over_Q(e1, e2))
          throw std::invalid_argument("the curves are Q-isomorphic; use generate (elementary route)");
        auto run = jzero_generate(e1, e2, cfg);
        return detail::finish(make_bundle("jzero", {e1, e2}, cfg, run.prepared, std::move(run.result)), o, out, err);
      }
      const auto pp = prepare_pair(e1, e2, cfg);
      return detail::finish(make_bundle("generate", {e1, e2}, cfg, pp, run_prepared(pp, cfg)), o, out, err);
    }
    if (corollary->parsed()) {
      const Curve e = Curve::parse(o.curve);
      const Rat delta = Rat::parse(o.delta);
      auto run = corollary_mode(e, delta, cfg);
      Bundle b = make_bundle("corollary", {run.prepared.curve1, run.prepared.curve2}, cfg, run.prepared,
                             std::move(run.result));
      b.delta = delta;
      return detail::finish(b, o, out, err);
    }
    if (elementary->parsed()) {
      const Curve e = Curve::parse(o.curve);
      PreparedPair pp{Route::isomorphic, e, e, e, e, Rat(1), std::nullopt, std::nullopt, std::nullopt, std::nullopt, {}};
      return detail::finish(make_bundle("elementary", {e}, cfg, pp, elementary_generate(e, cfg)), o, out, err);
    }
  } catch (const SearchExhausted& e) {
    err << "search exhausted: " << e.what() << "\n";
    return kPartial;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kError;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kError;
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}

}  // namespace simtwist::cli
