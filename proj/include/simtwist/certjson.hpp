#pragma once

// JSON encoding of certificates and run bundles. Every rational is a string in
// the `n` / `n/m` text format. Object keys are emitted in sorted order, so
// identical runs serialize to identical bytes.

#include <nlohmann/json.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "simtwist/twistgen.hpp"

namespace simtwist {

using Json = nlohmann::json;

inline constexpr int kCertificateVersion = 1;

namespace detail {

inline Rat rat_field(const Json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_string())
    throw std::invalid_argument(std::string("missing rational field '") + key + "'");
  return Rat::parse(j.at(key).get<std::string>());
}

inline Json curve_json(const Curve& c) { return {{"a", c.a().str()}, {"b", c.b().str()}}; }
inline Curve curve_from(const Json& j) { return Curve(rat_field(j, "a"), rat_field(j, "b")); }

}  // namespace detail

inline Json to_json(const TwistCertificate& cert) {
  Json curves = Json::array();
  for (const auto& cc : cert.curves) {
    Json multiples = Json::array();
    for (const auto& [n, p] : cc.witness.multiples) multiples.push_back({std::to_string(n), p.x().str(), p.y().str()});
    curves.push_back({
        {"model", detail::curve_json(cc.model)},
        {"solution", {{"x", cc.x.str()}, {"t", cc.t.str()}}},
        {"standard_point", {{"x", cc.standard_point.x().str()}, {"y", cc.standard_point.y().str()}}},
        {"witness", {{"orders", cc.witness.checked_orders}, {"multiples", std::move(multiples)}}},
    });
  }
  Json j = {
      {"version", kCertificateVersion},
      {"route", std::string(route_name(cert.route))},
      {"lambda", cert.lambda.str()},
      {"k", cert.k},
      {"D", cert.D.str()},
      {"squarefree_D", nullptr},
      {"curves", std::move(curves)},
  };
  if (cert.squarefree_D)
    j["squarefree_D"] = {{"value", cert.squarefree_D->value.get_str()}, {"complete", cert.squarefree_D->complete}};
  if (cert.delta) j["corollary"] = {{"delta", cert.delta->str()}, {"D_times_delta", (cert.D * *cert.delta).str()}};
  return j;
}

/// Reads a certificate without validating its claims; verify_certificate does
/// that. Structural problems throw std::invalid_argument.
inline TwistCertificate certificate_from_json(const Json& j) {
  try {
    if (j.at("version").get<int>() != kCertificateVersion) throw std::invalid_argument("unsupported certificate version");
    TwistCertificate cert;
    cert.route = parse_route(j.at("route").get<std::string>());
    cert.lambda = detail::rat_field(j, "lambda");
    cert.k = j.at("k").get<long>();
    cert.D = detail::rat_field(j, "D");
    if (const auto& s = j.at("squarefree_D"); !s.is_null())
      cert.squarefree_D = SquarefreePart{Int(s.at("value").get<std::string>()), s.at("complete").get<bool>()};
    for (const auto& cj : j.at("curves")) {
      const auto& w = cj.at("witness");
      NonTorsionWitness witness;
      witness.checked_orders = w.at("orders").get<std::vector<int>>();
      for (const auto& m : w.at("multiples")) {
        if (!m.is_array() || m.size() != 3) throw std::invalid_argument("witness multiple must be [n, x, y]");
        witness.multiples.emplace_back(std::stoi(m[0].get<std::string>()),
                                       WPoint(Rat::parse(m[1].get<std::string>()), Rat::parse(m[2].get<std::string>())));
      }
      const auto& sp = cj.at("standard_point");
      cert.curves.push_back(CurveCertificate{detail::curve_from(cj.at("model")), detail::rat_field(cj.at("solution"), "x"),
                                             detail::rat_field(cj.at("solution"), "t"),
                                             WPoint(detail::rat_field(sp, "x"), detail::rat_field(sp, "y")),
                                             std::move(witness)});
    }
    if (j.contains("corollary")) cert.delta = detail::rat_field(j.at("corollary"), "delta");
    return cert;
  } catch (const Json::exception& e) {
    throw std::invalid_argument(std::string("malformed certificate JSON: ") + e.what());
  } catch (const std::domain_error& e) {
    throw std::invalid_argument(std::string("invalid certificate: ") + e.what());
  }
}

/// A run's inputs, configuration, certificates and report.
struct Bundle {
  std::string mode;
  std::vector<Curve> inputs;
  std::optional<Rat> delta;
  Config config;
  Route route = Route::general;
  Rat lambda;
  std::optional<JZeroSeed> jzero;
  std::vector<TwistCertificate> certificates;
  bool ledger_ok = false;
  RunReport report;
};

inline Bundle make_bundle(std::string mode, std::vector<Curve> inputs, const Config& cfg, const PreparedPair& pp,
                          GenerationResult result) {
  Bundle b;
  b.mode = std::move(mode);
  b.inputs = std::move(inputs);
  b.config = cfg;
  b.route = pp.route;
  b.lambda = pp.lambda;
  b.jzero = pp.jzero;
  b.ledger_ok = result.ledger.pairwise_distinct();
  b.certificates = std::move(result.certificates);
  b.report = std::move(result.report);
  return b;
}

inline Json to_json(const Bundle& b) {
  Json pair = Json::object();
  for (std::size_t i = 0; i < b.inputs.size(); ++i)
    pair["curve" + std::to_string(i + 1)] = detail::curve_json(b.inputs[i]);
  Json certs = Json::array();
  for (const auto& c : b.certificates) certs.push_back(to_json(c));
  Json skipped = Json::array();
  for (const auto& s : b.report.skipped) skipped.push_back({{"k", s.k}, {"reason", std::string(skip_reason_name(s.reason))}});
  Json j = {
      {"version", kCertificateVersion},
      {"mode", b.mode},
      {"pair", std::move(pair)},
      {"config",
       {{"count", b.config.target_count},
        {"max_iterations", b.config.max_iterations},
        {"lambda_bound", b.config.lambda_search_bound},
        {"effort", b.config.effort.rho_iterations},
        {"prime_start", b.config.prime_start.get_str()}}},
      {"route", std::string(route_name(b.route))},
      {"lambda", b.lambda.str()},
      {"certificates", std::move(certs)},
      {"ledger_ok", b.ledger_ok},
      {"report",
       {{"accepted_k", b.report.accepted_k},
        {"skipped", std::move(skipped)},
        {"complete", b.report.complete},
        {"notes", b.report.notes}}},
  };
  if (b.delta) j["delta"] = b.delta->str();
  if (b.jzero)
    j["jzero"] = {{"p", b.jzero->p.get_str()},
                  {"u", b.jzero->u.get_str()},
                  {"v", b.jzero->v.get_str()},
                  {"t", b.jzero->t.get_str()}};
  return j;
}

inline Bundle bundle_from_json(const Json& j) {
  try {
    Bundle b;
    b.mode = j.at("mode").get<std::string>();
    for (const auto& [key, cj] : j.at("pair").items()) b.inputs.push_back(detail::curve_from(cj));
    const auto& cfg = j.at("config");
    b.config.target_count = cfg.at("count").get<std::size_t>();
    b.config.max_iterations = cfg.at("max_iterations").get<std::size_t>();
    b.config.lambda_search_bound = cfg.at("lambda_bound").get<std::uint32_t>();
    b.config.effort.rho_iterations = cfg.at("effort").get<std::uint64_t>();
    b.config.prime_start = Int(cfg.at("prime_start").get<std::string>());
    b.route = parse_route(j.at("route").get<std::string>());
    b.lambda = detail::rat_field(j, "lambda");
    if (j.contains("delta")) b.delta = detail::rat_field(j, "delta");
    if (j.contains("jzero")) {
      const auto& z = j.at("jzero");
      b.jzero = JZeroSeed{Int(z.at("p").get<std::string>()), Int(z.at("u").get<std::string>()),
                          Int(z.at("v").get<std::string>()), Int(z.at("t").get<std::string>())};
    }
    for (const auto& c : j.at("certificates")) b.certificates.push_back(certificate_from_json(c));
    b.ledger_ok = j.at("ledger_ok").get<bool>();
    const auto& r = j.at("report");
    b.report.accepted_k = r.at("accepted_k").get<std::vector<long>>();
    for (const auto& s : r.at("skipped"))
      b.report.skipped.push_back({s.at("k").get<long>(), parse_skip_reason(s.at("reason").get<std::string>())});
    b.report.complete = r.at("complete").get<bool>();
    b.report.notes = r.at("notes").get<std::vector<std::string>>();
    return b;
  } catch (const Json::exception& e) {
    throw std::invalid_argument(std::string("malformed bundle JSON: ") + e.what());
  } catch (const std::domain_error& e) {
    throw std::invalid_argument(std::string("invalid bundle: ") + e.what());
  }
}

}  // namespace simtwist
