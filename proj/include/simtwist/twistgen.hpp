#pragma once

// Simultaneous positive-rank quadratic twists of two curves over Q.
//
// Two curves E1: y^2 = f_{a,b}(x), E2: y^2 = f_{c,d}(x) give the plane cubic
// f_{a,b}(x) = f_{c,d}(y). For every affine multiple (x_k, y_k) of a
// non-torsion point on it, D = f_{a,b}(x_k) = f_{c,d}(y_k) makes (x_k, 1) a
// point on D t^2 = f_{a,b}(x) and (y_k, 1) one on D t^2 = f_{c,d}(y). Each
// accepted D comes with explicit non-torsion points on both twists and has a
// square class different from every earlier one.
//
// Routes:
//   isomorphic  E2 = E1 scaled by u; twists come from f(x0) for x0 = 1, 2, ...
//               and are carried to E2 through the isomorphism.
//   jzero       both a = c = 0; P' degenerates, so a seed on the sextic twists
//               x^3 + lb = y^3 + ld is built from a prime p with p || t.
//   general     everything else; E2 is rescaled by l until P' is non-torsion.

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "simtwist/exactnum.hpp"
#include "simtwist/factor.hpp"
#include "simtwist/planecubic.hpp"
#include "simtwist/weierstrass.hpp"

namespace simtwist {

enum class Route { general, isomorphic, jzero };

inline std::string_view route_name(Route r) {
  switch (r) {
    case Route::general: return "general";
    case Route::isomorphic: return "isomorphic";
    case Route::jzero: return "jzero";
  }
  return "general";
}

inline Route parse_route(std::string_view s) {
  if (s == "general") return Route::general;
  if (s == "isomorphic") return Route::isomorphic;
  if (s == "jzero") return Route::jzero;
  throw std::invalid_argument("unknown route '" + std::string(s) + "'");
}

struct Config {
  std::size_t target_count = 5;
  std::size_t max_iterations = 40;
  // largest height max(|num|, den) tried for the rescaling l
  std::uint32_t lambda_search_bound = 12;
  Effort effort{};
  Int prime_start = 2;

  void validate() const {
    if (target_count < 1) throw std::invalid_argument("target count must be at least 1");
    if (max_iterations < 1) throw std::invalid_argument("max iterations must be positive");
    if (lambda_search_bound < 1) throw std::invalid_argument("lambda search bound must be positive");
    if (effort.rho_iterations == 0 || effort.trial_bound < 2) throw std::invalid_argument("factorization effort must be positive");
  }
};

/// A bounded search ran out of candidates; the message carries the diagnostics.
class SearchExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct JZeroSeed {
  Int p, u, v, t;
};

struct PreparedPair {
  Route route;
  Curve curve1;
  Curve curve2;
  // the models the construction runs on: E1 and E2 rescaled (general), E1 and
  // E2 (isomorphic), or the sextic twists E_{0,lb}, E_{0,ld} (jzero)
  Curve working1;
  Curve working2;
  // general: rescaling of E2; isomorphic: u with E2 = u.E1; jzero: sextic twist
  Rat lambda;
  std::optional<PlaneCubic> cubic;
  std::optional<ProjPoint> seed;
  std::optional<PlaneNonTorsionWitness> seed_witness;
  std::optional<JZeroSeed> jzero;
  std::vector<std::string> notes;
};

struct CurveCertificate {
  Curve model;
  Rat x;
  Rat t;
  WPoint standard_point;
  NonTorsionWitness witness;
};

struct TwistCertificate {
  Route route = Route::general;
  Rat lambda;
  long k = 0;
  Rat D;
  std::optional<SquarefreePart> squarefree_D;
  std::vector<CurveCertificate> curves;
  // set in corollary mode: E twisted by D*delta also has positive rank
  std::optional<Rat> delta;
};

enum class SkipReason { at_infinity, zero_value, torsion_twist_point, class_collision };

inline std::string_view skip_reason_name(SkipReason r) {
  switch (r) {
    case SkipReason::at_infinity: return "at-infinity";
    case SkipReason::zero_value: return "zero-value";
    case SkipReason::torsion_twist_point: return "torsion-twist-point";
    case SkipReason::class_collision: return "class-collision";
  }
  return "unknown";
}

inline SkipReason parse_skip_reason(std::string_view s) {
  if (s == "at-infinity") return SkipReason::at_infinity;
  if (s == "zero-value") return SkipReason::zero_value;
  if (s == "torsion-twist-point") return SkipReason::torsion_twist_point;
  if (s == "class-collision") return SkipReason::class_collision;
  throw std::invalid_argument("unknown skip reason '" + std::string(s) + "'");
}

struct SkipRecord {
  long k;
  SkipReason reason;
};

struct RunReport {
  std::vector<long> accepted_k;
  std::vector<SkipRecord> skipped;
  bool complete = false;
  std::vector<std::string> notes;
};

class SquareClassLedger {
 public:
  bool admits(const Rat& D) const {
    for (const auto& [k, other] : accepted_)
      if (same_square_class(D, other)) return false;
    return true;
  }

  void accept(long k, Rat D) {
    if (!admits(D)) throw std::logic_error("square class ledger: duplicate class for k = " + std::to_string(k));
    accepted_.emplace_back(k, std::move(D));
  }

  const std::vector<std::pair<long, Rat>>& accepted() const { return accepted_; }
  std::size_t size() const { return accepted_.size(); }

  /// Rechecks every pair from scratch.
  bool pairwise_distinct() const {
    for (std::size_t i = 0; i < accepted_.size(); ++i)
      for (std::size_t j = i + 1; j < accepted_.size(); ++j)
        if (same_square_class(accepted_[i].second, accepted_[j].second)) return false;
    return true;
  }

 private:
  std::vector<std::pair<long, Rat>> accepted_;
};

struct GenerationResult {
  std::vector<TwistCertificate> certificates;
  SquareClassLedger ledger;
  RunReport report;
};

// ---------------------------------------------------------------------------
// certificates

/// Certificate entry for the solution (x, t) of D t^2 = f(x) on `model`, or
/// nothing when the mapped point on the twist is torsion.
inline std::optional<CurveCertificate> make_curve_certificate(const Curve& model, const Rat& D, const Rat& x,
                                                              const Rat& t) {
  if (D * t * t != model.rhs(x))
    throw std::logic_error("twist solution (" + x.str() + "," + t.str() + ") does not satisfy D t^2 = f(x)");
  const auto twist = quadratic_twist(model, D);
  WPoint point = twist.map(x, t);
  auto witness = certify_nontorsion(twist.curve, point);
  if (!witness) return std::nullopt;
  return CurveCertificate{model, x, t, std::move(point), std::move(*witness)};
}

/// Signed squarefree integer in D's square class (num * den shares it).
inline SquarefreePart squarefree_label(const Rat& D, const Effort& effort) {
  return squarefree_part(Int(D.num() * D.den()), effort);
}

struct CertificateCheck {
  bool ok = true;
  std::string reason;
  std::size_t curve_index = 0;

  explicit operator bool() const { return ok; }

  static CertificateCheck fail(std::string why, std::size_t curve = 0) { return {false, std::move(why), curve}; }
};

/// Rederives every claim of a certificate with exact arithmetic. Reason codes:
/// zero-D, no-curves, solution-not-on-twist, standard-point-mismatch,
/// standard-point-not-on-curve, witness-orders-incomplete,
/// witness-recompute-mismatch, witness-at-infinity, squarefree-mismatch.
inline CertificateCheck verify_certificate(const TwistCertificate& cert) {
  if (cert.D.is_zero()) return CertificateCheck::fail("zero-D");
  if (cert.curves.empty()) return CertificateCheck::fail("no-curves");
  if (cert.squarefree_D) {
    const auto& s = cert.squarefree_D->value;
    if (s == 0 || !same_square_class(cert.D, Rat(s))) return CertificateCheck::fail("squarefree-mismatch");
  }
  const std::vector<int> orders(kTorsionOrders.begin(), kTorsionOrders.end());
  for (std::size_t i = 0; i < cert.curves.size(); ++i) {
    const auto& cc = cert.curves[i];
    if (cert.D * cc.t * cc.t != cc.model.rhs(cc.x)) return CertificateCheck::fail("solution-not-on-twist", i);
    const auto twist = quadratic_twist(cc.model, cert.D);
    if (cc.standard_point != twist.map(cc.x, cc.t)) return CertificateCheck::fail("standard-point-mismatch", i);
    if (!contains(twist.curve, cc.standard_point)) return CertificateCheck::fail("standard-point-not-on-curve", i);
    if (cc.witness.checked_orders != orders || cc.witness.multiples.size() != orders.size())
      return CertificateCheck::fail("witness-orders-incomplete", i);
    WPoint acc = cc.standard_point;
    std::size_t next = 0;
    for (int n = 2; n <= kTorsionOrders.back(); ++n) {
      acc = detail::add_unchecked(twist.curve, acc, cc.standard_point);
      if (acc.is_infinity()) return CertificateCheck::fail("witness-at-infinity", i);
      if (n == 11) continue;
      const auto& [listed_n, listed] = cc.witness.multiples[next++];
      if (listed_n != n || listed != acc) return CertificateCheck::fail("witness-recompute-mismatch", i);
    }
  }
  return {};
}

/// Every certificate verifies and all pairwise products D_i D_j are non-squares.
inline CertificateCheck verify_bundle(const std::vector<TwistCertificate>& certs) {
  for (std::size_t i = 0; i < certs.size(); ++i) {
    auto check = verify_certificate(certs[i]);
    if (!check) {
      check.reason = "certificate " + std::to_string(i) + ": " + check.reason;
      return check;
    }
  }
  for (std::size_t i = 0; i < certs.size(); ++i)
    for (std::size_t j = i + 1; j < certs.size(); ++j)
      if (same_square_class(certs[i].D, certs[j].D))
        return CertificateCheck::fail("class-collision: certificates " + std::to_string(i) + " and " + std::to_string(j));
  return {};
}

// ---------------------------------------------------------------------------
// preparation

/// Positive rescalings in order of height max(|num|, den), integers first,
/// then by increasing denominator. l and -l give the same model, so only
/// positive values are listed.
inline std::vector<Rat> lambda_candidates(std::uint32_t bound) {
  std::vector<Rat> out;
  for (unsigned long h = 1; h <= bound; ++h) {
    out.emplace_back(Int(h));
    for (unsigned long den = 2; den < h; ++den)
      if (std::gcd(h, den) == 1) out.emplace_back(Int(h), Int(den));
    for (unsigned long num = 1; num < h; ++num)
      if (std::gcd(num, h) == 1) out.emplace_back(Int(num), Int(h));
  }
  return out;
}

struct LambdaRejection {
  Rat lambda;
  std::string reason;
};

struct LambdaSearchResult {
  Rat lambda;
  PlaneCubic cubic;
  ProjPoint seed;
  PlaneNonTorsionWitness witness;
  std::vector<LambdaRejection> rejected;
};

/// First l (in lambda_candidates order) for which (a, b, l^4 c, l^6 d) gives a
/// smooth plane cubic with a != l^4 c and P' non-torsion.
inline LambdaSearchResult lambda_search(const Curve& e1, const Curve& e2, std::uint32_t bound) {
  if (has_j_zero(e1) && has_j_zero(e2)) throw std::domain_error("lambda search needs a curve with nonzero j-invariant");
  std::vector<LambdaRejection> rejected;
  for (const Rat& lambda : lambda_candidates(bound)) {
    const Rat c_bar = pow(lambda, 4) * e2.a();
    const Rat d_bar = pow(lambda, 6) * e2.b();
    if (disc_epp(e1.a(), e1.b(), c_bar, d_bar).is_zero()) {
      rejected.push_back({lambda, "singular"});
      continue;
    }
    if (e1.a() == c_bar) {
      rejected.push_back({lambda, "a-equals-c"});
      continue;
    }
    auto cubic = PlaneCubic::build(e1.a(), e1.b(), c_bar, d_bar);
    auto seed = p_prime(cubic);
    auto witness = certify_nontorsion(cubic, seed);
    if (!witness) {
      rejected.push_back({lambda, "torsion-seed"});
      continue;
    }
    return {lambda, std::move(cubic), std::move(seed), std::move(*witness), std::move(rejected)};
  }
  std::string why = "lambda search exhausted at height bound " + std::to_string(bound) + " (" +
                    std::to_string(rejected.size()) + " candidates rejected";
  if (!rejected.empty()) why += ", last: " + rejected.back().lambda.str() + " " + rejected.back().reason;
  throw SearchExhausted(why + ")");
}

inline constexpr std::size_t kMaxJZeroPrimes = 64;

/// Seed for two j = 0 curves y^2 = x^3 + b, y^2 = x^3 + d with b != d: for a
/// prime p, u = p + 1 and v = 1 give t = u^3 - v^3 with p || t, and l =
/// t/(d - b) puts (u, v) on x^3 + l b = y^3 + l d.
inline PreparedPair prepare_jzero(const Curve& e1, const Curve& e2, const Config& cfg) {
  if (!has_j_zero(e1) || !has_j_zero(e2)) throw std::domain_error("j = 0 route needs a = c = 0");
  const Rat& b = e1.b();
  const Rat& d = e2.b();
  if (b == d) throw std::domain_error("j = 0 route needs b != d; identical curves use the elementary construction");
  const Rat diff = b - d;
  auto primes = primes_avoiding({Int(6), diff.num(), diff.den()}, cfg.prime_start);
  std::vector<std::string> notes;
  for (std::size_t attempt = 0; attempt < kMaxJZeroPrimes; ++attempt) {
    const Int p = primes.next();
    const Int u = p + 1;
    const Int v = 1;
    const Int t = u * u * u - v * v * v;
    if (valuation(t, p) != 1) throw std::logic_error("p || (u^3 - v^3) failed for p = " + p.get_str());
    const Rat lambda = Rat(t) / (d - b);
    auto cubic = PlaneCubic::build(0, lambda * b, 0, lambda * d);
    auto seed = ProjPoint::affine(Rat(u), Rat(v));
    if (!cubic.contains(seed)) throw std::logic_error("j = 0 seed is not on its cubic");
    auto witness = certify_nontorsion(cubic, seed);
    if (!witness) {
      notes.push_back("p = " + p.get_str() + ": seed is torsion, next prime");
      continue;
    }
    notes.push_back("sextic twist normalization l = t/(d - b) so that the seed (u, v) lies on x^3 + l b = y^3 + l d");
    return PreparedPair{Route::jzero,
                        e1,
                        e2,
                        Curve(0, lambda * b),
                        Curve(0, lambda * d),
                        lambda,
                        std::move(cubic),
                        std::move(seed),
                        std::move(*witness),
                        JZeroSeed{p, u, v, t},
                        std::move(notes)};
  }
  throw SearchExhausted("j = 0 prime search exhausted after " + std::to_string(kMaxJZeroPrimes) + " primes");
}

/// Routes a pair: isomorphic when E2 = u.E1 over Q, jzero when both have
/// j-invariant zero, general otherwise.
inline PreparedPair prepare_pair(const Curve& e1, const Curve& e2, const Config& cfg) {
  cfg.validate();
  if (auto u = are_isomorphic_over_Q(e1, e2)) {
    return PreparedPair{Route::isomorphic, e1, e2, e1, e2, *u, std::nullopt, std::nullopt, std::nullopt,
                        std::nullopt, {"curves are Q-isomorphic with u = " + u->str()}};
  }
  if (has_j_zero(e1) && has_j_zero(e2)) return prepare_jzero(e1, e2, cfg);
  auto found = lambda_search(e1, e2, cfg.lambda_search_bound);
  std::vector<std::string> notes;
  for (const auto& r : found.rejected) notes.push_back("lambda = " + r.lambda.str() + " rejected: " + r.reason);
  Curve working2(found.cubic.c(), found.cubic.d());
  return PreparedPair{Route::general,     e1,
                      e2,                 e1,
                      std::move(working2), found.lambda,
                      std::move(found.cubic), std::move(found.seed),
                      std::move(found.witness), std::nullopt,
                      std::move(notes)};
}

// ---------------------------------------------------------------------------
// generation

namespace detail {

inline void finish_report(GenerationResult& out, const Config& cfg) {
  out.report.complete = out.certificates.size() >= cfg.target_count;
  if (!out.report.complete)
    out.report.notes.push_back("iteration budget exhausted with " + std::to_string(out.certificates.size()) + " of " +
                               std::to_string(cfg.target_count) + " certificates");
}

}  // namespace detail

/// Walks the multiples kQ of the seed on the plane cubic and turns their
/// common values into certificates. Route must be general or jzero.
inline GenerationResult generate(const PreparedPair& pp, const Config& cfg) {
  cfg.validate();
  if (pp.route == Route::isomorphic || !pp.cubic || !pp.seed)
    throw std::invalid_argument("generate needs a prepared general or j = 0 pair");
  const PlaneCubic& C = *pp.cubic;
  const ProjPoint& seed = *pp.seed;
  GenerationResult out;
  out.report.notes = pp.notes;

  // certificates speak about the inputs on the general route and about the
  // sextic twists on the j = 0 route
  const bool rescaled = pp.route == Route::general;
  const Curve& model1 = rescaled ? pp.curve1 : pp.working1;
  const Curve& model2 = rescaled ? pp.curve2 : pp.working2;
  const Rat inv_l2 = rescaled ? Rat(1) / (pp.lambda * pp.lambda) : Rat(1);
  const Rat inv_l3 = rescaled ? Rat(1) / pow(pp.lambda, 3) : Rat(1);

  ProjPoint multiple = base_point(C);
  for (long k = 1; k <= static_cast<long>(cfg.max_iterations) && out.certificates.size() < cfg.target_count; ++k) {
    multiple = detail::add_unchecked(C, multiple, seed);
    if (!multiple.is_affine()) {
      out.report.skipped.push_back({k, SkipReason::at_infinity});
      continue;
    }
    Rat D = common_value(C, multiple);
    if (D.is_zero()) {
      out.report.skipped.push_back({k, SkipReason::zero_value});
      continue;
    }
    if (!out.ledger.admits(D)) {
      out.report.skipped.push_back({k, SkipReason::class_collision});
      continue;
    }
    // (x_k, 1) on D t^2 = f_{a,b}; (y_k, 1) on D t^2 = f_{c',d'} pulled back
    // to E2 as (y_k / l^2, 1 / l^3)
    auto first = make_curve_certificate(model1, D, multiple.x(), 1);
    auto second = first ? make_curve_certificate(model2, D, multiple.y() * inv_l2, inv_l3) : std::nullopt;
    if (!first || !second) {
      out.report.skipped.push_back({k, SkipReason::torsion_twist_point});
      continue;
    }
    out.ledger.accept(k, D);
    out.report.accepted_k.push_back(k);
    TwistCertificate cert;
    cert.route = pp.route;
    cert.lambda = pp.lambda;
    cert.k = k;
    cert.squarefree_D = squarefree_label(D, cfg.effort);
    cert.D = std::move(D);
    cert.curves = {std::move(*first), std::move(*second)};
    out.certificates.push_back(std::move(cert));
  }
  detail::finish_report(out, cfg);
  return out;
}

/// Twists of y^2 = f(x) from f(x0) for x0 = 1, 2, ...: (x0, 1) solves
/// f(x0) t^2 = f(x). With `partner` = (E2, u), E2 = u.E1, each solution is
/// carried to (u^2 x0, u^3) on E2's twist.
inline GenerationResult elementary_generate(const Curve& e, const Config& cfg,
                                            const std::optional<std::pair<Curve, Rat>>& partner = std::nullopt,
                                            Route route = Route::isomorphic) {
  cfg.validate();
  GenerationResult out;
  for (long x0 = 1; x0 <= static_cast<long>(cfg.max_iterations) && out.certificates.size() < cfg.target_count;
       ++x0) {
    const Rat x(x0);
    Rat D = e.rhs(x);
    if (D.is_zero()) {
      out.report.skipped.push_back({x0, SkipReason::zero_value});
      continue;
    }
    if (!out.ledger.admits(D)) {
      out.report.skipped.push_back({x0, SkipReason::class_collision});
      continue;
    }
    std::vector<CurveCertificate> curves;
    auto first = make_curve_certificate(e, D, x, 1);
    if (!first) {
      out.report.skipped.push_back({x0, SkipReason::torsion_twist_point});
      continue;
    }
    curves.push_back(std::move(*first));
    if (partner) {
      const auto& [e2, u] = *partner;
      auto second = make_curve_certificate(e2, D, u * u * x, pow(u, 3));
      if (!second) {
        out.report.skipped.push_back({x0, SkipReason::torsion_twist_point});
        continue;
      }
      curves.push_back(std::move(*second));
    }
    out.ledger.accept(x0, D);
    out.report.accepted_k.push_back(x0);
    TwistCertificate cert;
    cert.route = route;
    cert.lambda = partner ? partner->second : Rat(1);
    cert.k = x0;
    cert.squarefree_D = squarefree_label(D, cfg.effort);
    cert.D = std::move(D);
    cert.curves = std::move(curves);
    out.certificates.push_back(std::move(cert));
  }
  detail::finish_report(out, cfg);
  return out;
}

/// Runs whichever generator the route calls for.
inline GenerationResult run_prepared(const PreparedPair& pp, const Config& cfg) {
  if (pp.route != Route::isomorphic) return generate(pp, cfg);
  auto out = elementary_generate(pp.curve1, cfg, std::make_pair(pp.curve2, pp.lambda));
  out.report.notes.insert(out.report.notes.begin(), pp.notes.begin(), pp.notes.end());
  return out;
}

struct JZeroResult {
  PreparedPair prepared;
  GenerationResult result;
};

inline JZeroResult jzero_generate(const Curve& e1, const Curve& e2, const Config& cfg) {
  cfg.validate();
  auto pp = prepare_jzero(e1, e2, cfg);
  auto result = generate(pp, cfg);
  return {std::move(pp), std::move(result)};
}

struct CorollaryResult {
  PreparedPair prepared;
  GenerationResult result;
};

/// Pairs E with its twist by delta. A positive-rank twist of E^delta by D is a
/// positive-rank twist of E by D*delta, so each certificate is annotated with
/// delta.
inline CorollaryResult corollary_mode(const Curve& e, const Rat& delta, const Config& cfg) {
  if (has_j_zero(e)) throw std::domain_error("corollary mode needs nonzero j-invariant (a != 0)");
  if (delta.is_zero()) throw std::domain_error("corollary mode needs delta != 0");
  auto twisted = quadratic_twist(e, delta).curve;
  auto pp = prepare_pair(e, twisted, cfg);
  if (pp.route == Route::isomorphic) pp.notes.push_back("delta = " + delta.str() + " is a square: E and E^delta are Q-isomorphic");
  auto result = run_prepared(pp, cfg);
  for (auto& cert : result.certificates) cert.delta = delta;
  return {std::move(pp), std::move(result)};
}

}  // namespace simtwist
