#pragma once

// JSON codecs for every CLI-facing structure. All documents carry
// "schema": "symsum/1"; rationals and big counts are decimal strings,
// structural integers are JSON numbers; key order is fixed.

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "symsum/asymptotic.hpp"
#include "symsum/balance.hpp"
#include "symsum/errors.hpp"
#include "symsum/expsum.hpp"
#include "symsum/field.hpp"
#include "symsum/group_algebra.hpp"
#include "symsum/lambda.hpp"
#include "symsum/poly_function.hpp"
#include "symsum/rational.hpp"

namespace symsum {

using Json = nlohmann::ordered_json;

inline Json json_envelope(const std::string& kind) {
  Json j;
  j["schema"] = "symsum/1";
  j["kind"] = kind;
  return j;
}

inline Json field_to_json(const Field& f) {
  Json j;
  j["p"] = f.p();
  j["r"] = f.r();
  j["q"] = f.q();
  j["modulus"] = f.modulus();
  return j;
}

inline Json rationals_to_json(const std::vector<Rational>& v) {
  Json arr = Json::array();
  for (const auto& r : v) arr.push_back(rational_to_string(r));
  return arr;
}

inline std::vector<Rational> rationals_from_json(const Json& arr) {
  if (!arr.is_array()) throw Error(errc::validation, "expected an array of rationals");
  std::vector<Rational> out;
  for (const auto& e : arr) out.push_back(rational_from_string(e.get<std::string>()));
  return out;
}

inline Json bigints_to_json(const std::vector<BigInt>& v) {
  Json arr = Json::array();
  for (const auto& x : v) arr.push_back(x.get_str());
  return arr;
}

inline Json ga_to_json(const GroupAlgebraElement& e) { return rationals_to_json(e.coeffs()); }

inline Json profile_to_json(const ProbabilityProfile& prof) {
  Json j;
  j["field"] = field_to_json(prof.pgf.field());
  if (prof.n)
    j["n"] = *prof.n;
  else
    j["n"] = "infinity";
  j["ks"] = prof.ks;
  j["L"] = prof.L_name;
  if (prof.F_text) j["F"] = *prof.F_text;
  j["coefficients"] = ga_to_json(prof.pgf);
  return j;
}

inline Json histogram_to_json(const ValueHistogram& h) {
  Json j;
  j["field"] = field_to_json(h.field);
  if (h.ks.size() == 1)
    j["k"] = h.ks[0];
  else
    j["ks"] = h.ks;
  j["D"] = h.D;
  j["L"] = h.L_name;
  Json counts = Json::array();
  for (std::size_t i = 0; i < h.counts.size(); ++i) {
    Json row;
    row["beta"] = i;
    row["count"] = std::to_string(h.counts[i]);
    counts.push_back(std::move(row));
  }
  j["counts"] = counts;
  j["total"] = std::to_string(h.total);
  return j;
}

inline Json value_counts_to_json(const ValueCounts& vc) {
  Json j;
  j["counts"] = bigints_to_json(vc.counts);
  j["total"] = vc.total.get_str();
  j["balanced"] = vc.is_balanced();
  return j;
}

inline Json matrix_to_json(const ConvolutionMatrix& M) {
  Json rows = Json::array();
  for (const auto& r : M.rows) rows.push_back(rationals_to_json(r));
  return rows;
}

inline Json fine_report_to_json(const FinePropertyReport& rep) {
  Json j;
  j["p"] = rep.p;
  Json rows = Json::array();
  for (const auto& r : rep.rows) {
    Json row;
    row["k"] = r.k;
    row["scaled_prime_power"] = r.scaled_prime_power;
    row["probabilities"] = rationals_to_json(r.probs);
    row["p1"] = r.p1;
    row["p2"] = r.p2;
    row["p3"] = r.p3;
    if (r.p4)
      row["p4"] = *r.p4;
    else
      row["p4"] = nullptr;
    row["p5"] = r.p5;
    if (r.probs_kp) row["probabilities_kp"] = rationals_to_json(*r.probs_kp);
    rows.push_back(std::move(row));
  }
  j["rows"] = rows;
  return j;
}

inline Json convergence_to_json(const ConvergenceTable& t) {
  Json j;
  j["ks"] = t.ks;
  j["L"] = t.L_name;
  if (t.F_text) j["F"] = *t.F_text;
  j["limit"] = rationals_to_json(t.limit);
  Json rows = Json::array();
  for (const auto& r : t.rows) {
    Json row;
    row["n"] = r.n;
    row["max_deviation"] = rational_to_string(r.deviation);
    rows.push_back(std::move(row));
  }
  j["rows"] = rows;
  j["tail_nonincreasing"] = t.tail_nonincreasing;
  return j;
}

inline Json certificate_to_json(const BalanceCertificate& cert) {
  Json j;
  j["field"] = field_to_json(cert.field);
  j["k"] = cert.k;
  j["det"] = rational_to_string(cert.det);
  j["limit"] = ga_to_json(cert.limit.pgf);
  j["nullspace"] = cert.nullspace;
  j["chosen_v"] = cert.chosen_v;
  j["j"] = cert.j;
  j["m"] = cert.m;
  j["F_anf"] = cert.F.has_anf() ? cert.F.anf_text() : "";
  j["verified"] = cert.verified;
  return j;
}

inline BalanceCertificate certificate_from_json(const Json& j,
                                                std::uint64_t budget = kDefaultBruteBudget) {
  const Json& jf = j.at("field");
  Field f = Field::make(jf.at("p").get<std::uint32_t>(), jf.at("r").get<std::uint32_t>(),
                        jf.at("modulus").get<std::vector<std::uint32_t>>());
  std::vector<Rational> limit_coeffs = rationals_from_json(j.at("limit"));
  GroupAlgebraElement pgf(f);
  if (limit_coeffs.size() != f.q())
    throw Error(errc::validation, "limit coefficient count must equal q");
  for (std::uint32_t i = 0; i < f.q(); ++i) pgf.at({i}) = limit_coeffs[i];
  ProbabilityProfile limit{std::move(pgf), std::nullopt,
                           {j.at("k").get<std::uint32_t>()}, "id", std::nullopt};
  limit.validate();
  std::uint32_t arity = j.at("j").get<std::uint32_t>();
  PolyFunction F =
      PolyFunction::from_anf_text(f, j.at("F_anf").get<std::string>(), arity, budget);
  return BalanceCertificate{f,
                            j.at("k").get<std::uint32_t>(),
                            std::move(limit),
                            rational_from_string(j.at("det").get<std::string>()),
                            j.at("nullspace").get<std::vector<std::vector<long long>>>(),
                            j.at("chosen_v").get<std::vector<long long>>(),
                            arity,
                            j.at("m").get<std::vector<std::uint64_t>>(),
                            std::move(F),
                            j.at("verified").get<bool>()};
}

inline Json equivalence_to_json(const EquivalenceTriple& t) {
  Json j;
  j["perturbed_balanced"] = t.perturbed_balanced;
  j["symmetric_balanced"] = t.symmetric_balanced;
  j["function_balanced"] = t.function_balanced;
  return j;
}

inline Json error_to_json(const Error& e) {
  Json j = json_envelope("error");
  j["error"] = errc_name(e.code());
  j["message"] = e.what();
  if (const auto* b = dynamic_cast<const BudgetExceeded*>(&e)) {
    j["required_points"] = b->required_points();
    j["budget"] = b->budget();
  }
  return j;
}

}  // namespace symsum
