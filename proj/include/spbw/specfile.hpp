#pragma once

// The .spbw document: a JSON description of a coefficient ring, variables,
// per-variable maps, and commutation relations.  Emission is deterministic
// (ordered keys, canonical element literals) and load(emit(E)) reproduces E.
//
// Layout:
//   {
//     "schema_version": 1,
//     "ring": {"kind": "ZMod", "n": 6},
//     "variables": ["x1", "x2"],
//     "sigma": ["identity", {"table": ["0", "2", ...]}, {"t_image": "t+1"}],
//     "delta": ["zero", {"table": [...]}, {"t_image": "1"}],
//     "relations": {"2,1": {"c": "1", "d0": "0", "d": ["0", "0"]}}
//   }
// Relation keys are "j,i" with j > i, 1-based; element tables are indexed by
// the ring's enumeration order.

#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "spbw/error.hpp"
#include "spbw/extension.hpp"
#include "spbw/maps.hpp"
#include "spbw/parser.hpp"
#include "spbw/ring.hpp"

namespace spbw {

using Json = nlohmann::ordered_json;

inline Json ring_to_json(const RingPtr& R) {
  Json j;
  switch (R->kind()) {
    case RingKind::ZMod:
      j["kind"] = "ZMod";
      j["n"] = R->modulus();
      return j;
    case RingKind::Product:
      j["kind"] = "Product";
      j["moduli"] = R->factors();
      return j;
    case RingKind::QuotientPoly:
      j["kind"] = "QuotientPoly";
      j["n"] = R->modulus();
      j["modulus"] = R->modulus_poly();
      return j;
    case RingKind::Rationals:
      j["kind"] = "Rationals";
      return j;
    case RingKind::UniPoly:
      j["kind"] = "UniPoly";
      j["base"] = ring_to_json(R->base());
      return j;
    case RingKind::Residue:
      fail(Errc::BadParams, "quotient rings are not serializable");
  }
  fail(Errc::BadParams, "unknown ring kind");
}

inline RingPtr ring_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    fail(Errc::BadDocument, "ring section needs a kind");
  std::string kind = j["kind"].get<std::string>();
  try {
    if (kind == "ZMod") return Ring::zmod(j.at("n").get<std::uint64_t>());
    if (kind == "Product")
      return Ring::product(j.at("moduli").get<std::vector<std::uint64_t>>());
    if (kind == "QuotientPoly")
      return Ring::quotient_poly(j.at("n").get<std::uint64_t>(),
                                 j.at("modulus").get<std::vector<std::uint64_t>>());
    if (kind == "Rationals") return Ring::rationals();
    if (kind == "UniPoly") return Ring::unipoly(ring_from_json(j.at("base")));
  } catch (const Json::exception& e) {
    fail(Errc::BadDocument, std::string("malformed ring section: ") + e.what());
  }
  fail(Errc::BadDocument, "unknown ring kind: " + kind);
}

namespace detail {

inline Json endo_to_json(const RingPtr& R, const EndoMap& s) {
  if (s.is_identity()) return Json("identity");
  if (R->kind() == RingKind::UniPoly) return Json{{"t_image", R->format(s.t_value())}};
  Json tbl = Json::array();
  for (const auto& a : R->enumerate()) tbl.push_back(R->format(s.apply(a)));
  return Json{{"table", std::move(tbl)}};
}

inline Json der_to_json(const RingPtr& R, const DerMap& d) {
  if (d.is_zero_map()) return Json("zero");
  if (R->kind() == RingKind::UniPoly)
    return Json{{"t_image", R->format(d.apply(R->t_gen()))}};
  Json tbl = Json::array();
  for (const auto& a : R->enumerate()) tbl.push_back(R->format(d.apply(a)));
  return Json{{"table", std::move(tbl)}};
}

inline std::vector<RingElement> parse_table(const Json& j, const RingPtr& R) {
  if (!j.is_array()) fail(Errc::BadDocument, "map table must be an array");
  std::vector<RingElement> images;
  for (const auto& entry : j) {
    if (!entry.is_string()) fail(Errc::BadDocument, "table entries must be element literals");
    images.push_back(parse_element(entry.get<std::string>(), R));
  }
  return images;
}

inline std::string t_image_text(const Json& j) {
  if (!j["t_image"].is_string()) fail(Errc::BadDocument, "t_image must be an element literal");
  return j["t_image"].get<std::string>();
}

inline EndoMap endo_from_json(const Json& j, const RingPtr& R) {
  if (j.is_string() && j.get<std::string>() == "identity") return EndoMap::identity(R);
  if (j.is_object() && j.contains("table")) return EndoMap::table(R, parse_table(j["table"], R));
  if (j.is_object() && j.contains("t_image"))
    return EndoMap::t_image(R, parse_element(t_image_text(j), R));
  fail(Errc::BadDocument, "sigma entry must be \"identity\", a table, or a t_image");
}

inline DerMap der_from_json(const Json& j, const RingPtr& R, const EndoMap& companion) {
  if (j.is_string() && j.get<std::string>() == "zero") return DerMap::zero(R);
  if (j.is_object() && j.contains("table")) return DerMap::table(R, parse_table(j["table"], R));
  if (j.is_object() && j.contains("t_image"))
    return DerMap::t_image(R, parse_element(t_image_text(j), R), companion);
  fail(Errc::BadDocument, "delta entry must be \"zero\", a table, or a t_image");
}

}  // namespace detail

inline Json spec_to_json(const ExtensionSpec& E) {
  const RingPtr& R = E.ring();
  Json j;
  j["schema_version"] = 1;
  j["ring"] = ring_to_json(R);
  j["variables"] = E.varnames();
  Json sig = Json::array(), del = Json::array();
  for (std::uint32_t i = 0; i < E.nvars(); ++i) {
    sig.push_back(detail::endo_to_json(R, E.sigma(i)));
    del.push_back(detail::der_to_json(R, E.delta(i)));
  }
  j["sigma"] = std::move(sig);
  j["delta"] = std::move(del);
  Json rels = Json::object();
  for (std::uint32_t i = 0; i < E.nvars(); ++i)
    for (std::uint32_t j2 = i + 1; j2 < E.nvars(); ++j2) {
      const RelationData& rel = E.relation(i, j2);
      bool trivial = rel.c == R->one() && rel.d0.is_zero();
      for (const auto& dk : rel.d) trivial = trivial && dk.is_zero();
      if (trivial) continue;
      Json entry;
      entry["c"] = R->format(rel.c);
      entry["d0"] = R->format(rel.d0);
      Json dl = Json::array();
      for (const auto& dk : rel.d) dl.push_back(R->format(dk));
      entry["d"] = std::move(dl);
      rels[std::to_string(j2 + 1) + "," + std::to_string(i + 1)] = std::move(entry);
    }
  j["relations"] = std::move(rels);
  return j;
}

inline ExtensionSpec spec_from_json(const Json& j) {
  if (!j.is_object()) fail(Errc::BadDocument, "document must be a JSON object");
  if (!j.contains("schema_version") || !j["schema_version"].is_number_integer() ||
      j["schema_version"].get<int>() != 1)
    fail(Errc::BadDocument, "unsupported or missing schema_version");
  if (!j.contains("ring")) fail(Errc::BadDocument, "missing ring section");
  RingPtr R = ring_from_json(j["ring"]);
  if (!j.contains("variables") || !j["variables"].is_array() || j["variables"].empty())
    fail(Errc::BadDocument, "missing variables");
  std::vector<std::string> vars;
  for (const auto& v : j["variables"]) {
    if (!v.is_string()) fail(Errc::BadDocument, "variable names must be strings");
    vars.push_back(v.get<std::string>());
  }
  std::uint32_t n = static_cast<std::uint32_t>(vars.size());
  if (!j.contains("sigma") || !j["sigma"].is_array() || j["sigma"].size() != n)
    fail(Errc::BadDocument, "sigma section needs one entry per variable");
  if (!j.contains("delta") || !j["delta"].is_array() || j["delta"].size() != n)
    fail(Errc::BadDocument, "delta section needs one entry per variable");
  std::vector<EndoMap> sigmas;
  std::vector<DerMap> deltas;
  for (std::uint32_t i = 0; i < n; ++i) sigmas.push_back(detail::endo_from_json(j["sigma"][i], R));
  for (std::uint32_t i = 0; i < n; ++i)
    deltas.push_back(detail::der_from_json(j["delta"][i], R, sigmas[i]));
  std::map<std::pair<std::uint32_t, std::uint32_t>, RelationData> rels;
  if (j.contains("relations")) {
    if (!j["relations"].is_object()) fail(Errc::BadDocument, "relations must be an object");
    for (const auto& [key, entry] : j["relations"].items()) {
      std::size_t comma = key.find(',');
      if (comma == std::string::npos) fail(Errc::BadDocument, "relation keys look like \"j,i\"");
      std::uint32_t jj = 0, ii = 0;
      try {
        jj = static_cast<std::uint32_t>(std::stoul(key.substr(0, comma)));
        ii = static_cast<std::uint32_t>(std::stoul(key.substr(comma + 1)));
      } catch (const std::exception&) {
        fail(Errc::BadDocument, "bad relation key: " + key);
      }
      if (!(ii >= 1 && jj > ii && jj <= n))
        fail(Errc::BadDocument, "relation key needs j > i >= 1: " + key);
      if (!entry.is_object() || !entry.contains("c") || !entry["c"].is_string())
        fail(Errc::BadDocument, "relation entry needs a c literal");
      auto literal = [&](const Json& v) {
        if (!v.is_string()) fail(Errc::BadDocument, "relation values must be element literals");
        return parse_element(v.get<std::string>(), R);
      };
      RingElement c = literal(entry["c"]);
      RingElement d0 = entry.contains("d0") ? literal(entry["d0"]) : R->zero();
      std::vector<RingElement> d(n, R->zero());
      if (entry.contains("d")) {
        if (!entry["d"].is_array() || entry["d"].size() != n)
          fail(Errc::BadDocument, "relation tail needs one entry per variable");
        for (std::uint32_t k = 0; k < n; ++k) d[k] = literal(entry["d"][k]);
      }
      rels.emplace(std::make_pair(ii - 1, jj - 1), RelationData{c, d0, std::move(d)});
    }
  }
  return ExtensionSpec(std::move(R), std::move(vars), std::move(sigmas), std::move(deltas),
                       std::move(rels));
}

inline ExtensionSpec parse_spec_text(const std::string& text) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) fail(Errc::BadDocument, "not valid JSON");
  return spec_from_json(j);
}

inline ExtensionSpec load_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::BadDocument, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_spec_text(buf.str());
}

inline std::string emit_spec_text(const ExtensionSpec& E) { return spec_to_json(E).dump(2) + "\n"; }

inline void save_spec_file(const ExtensionSpec& E, const std::string& path) {
  std::ofstream out(path);
  if (!out) fail(Errc::BadDocument, "cannot write " + path);
  out << emit_spec_text(E);
}

}  // namespace spbw
