#pragma once

// Named example extensions at desk scale.  Every builder returns a spec that
// passes the consistency check; the string-keyed front end backs the
// `catalog` CLI subcommand.

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "spbw/error.hpp"
#include "spbw/extension.hpp"
#include "spbw/maps.hpp"
#include "spbw/ring.hpp"

namespace spbw {

namespace detail {

inline bool ring_is_field(const RingPtr& R) {
  if (R->kind() == RingKind::Rationals) return true;
  return R->kind() == RingKind::ZMod && is_prime_u64(R->modulus());
}

inline void require_field(const RingPtr& R, const char* who) {
  if (!ring_is_field(R)) fail(Errc::BadParams, std::string(who) + " needs a field");
}

inline std::vector<std::string> default_varnames(std::uint32_t n) {
  std::vector<std::string> names;
  for (std::uint32_t i = 1; i <= n; ++i) names.push_back("x" + std::to_string(i));
  return names;
}

inline std::vector<EndoMap> identity_sigmas(const RingPtr& R, std::uint32_t n) {
  return std::vector<EndoMap>(n, EndoMap::identity(R));
}

inline std::vector<DerMap> zero_deltas(const RingPtr& R, std::uint32_t n) {
  return std::vector<DerMap>(n, DerMap::zero(R));
}

inline void check_q_matrix(const RingPtr& R, const std::vector<std::vector<RingElement>>& q) {
  std::size_t n = q.size();
  for (const auto& row : q)
    if (row.size() != n) fail(Errc::BadParams, "q matrix must be square");
  for (std::size_t i = 0; i < n; ++i) {
    if (!(q[i][i] == R->one())) fail(Errc::BadParams, "q matrix needs q_ii = 1");
    for (std::size_t j = 0; j < n; ++j) {
      if (q[i][j].is_zero()) fail(Errc::BadParams, "q matrix entries must be nonzero");
      if (!(q[i][j] * q[j][i] == R->one()))
        fail(Errc::BadParams, "q matrix needs q_ij * q_ji = 1");
    }
  }
}

}  // namespace detail

// R[x_1..x_n]: everything commutes.
inline ExtensionSpec catalog_habitual(const RingPtr& R, std::uint32_t n) {
  if (n == 0) fail(Errc::BadParams, "need at least one variable");
  return ExtensionSpec(R, detail::default_varnames(n), detail::identity_sigmas(R, n),
                       detail::zero_deltas(R, n), {});
}

// n-th Weyl algebra over a field: 2n variables, x_{n+i} x_i = x_i x_{n+i} + 1.
inline ExtensionSpec catalog_weyl(const RingPtr& K, std::uint32_t n) {
  detail::require_field(K, "weyl");
  if (n == 0) fail(Errc::BadParams, "need at least one variable pair");
  std::uint32_t m = 2 * n;
  std::map<std::pair<std::uint32_t, std::uint32_t>, RelationData> rels;
  for (std::uint32_t i = 0; i < n; ++i)
    rels.emplace(std::make_pair(i, n + i),
                 RelationData{K->one(), K->one(), std::vector<RingElement>(m, K->zero())});
  return ExtensionSpec(K, detail::default_varnames(m), detail::identity_sigmas(K, m),
                       detail::zero_deltas(K, m), std::move(rels));
}

// x_2 x_1 = q x_1 x_2 over a field.
inline ExtensionSpec catalog_quantum_plane(const RingPtr& K, const RingElement& q) {
  detail::require_field(K, "quantum_plane");
  if (q.is_zero()) fail(Errc::BadParams, "q must be nonzero");
  std::map<std::pair<std::uint32_t, std::uint32_t>, RelationData> rels;
  rels.emplace(std::make_pair(0u, 1u),
               RelationData{q, K->zero(), std::vector<RingElement>(2, K->zero())});
  return ExtensionSpec(K, detail::default_varnames(2), detail::identity_sigmas(K, 2),
                       detail::zero_deltas(K, 2), std::move(rels));
}

// x_j x_i = q_ij x_i x_j and x_i r = sigma_i(r) x_i.
inline ExtensionSpec catalog_quantum_space(const RingPtr& R,
                                           const std::vector<std::vector<RingElement>>& q,
                                           std::vector<EndoMap> sigmas) {
  std::uint32_t n = static_cast<std::uint32_t>(q.size());
  if (n == 0) fail(Errc::BadParams, "need at least one variable");
  detail::check_q_matrix(R, q);
  if (sigmas.size() != n) fail(Errc::BadParams, "need one sigma per variable");
  std::map<std::pair<std::uint32_t, std::uint32_t>, RelationData> rels;
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = i + 1; j < n; ++j)
      rels.emplace(std::make_pair(i, j),
                   RelationData{q[i][j], R->zero(), std::vector<RingElement>(n, R->zero())});
  return ExtensionSpec(R, detail::default_varnames(n), std::move(sigmas),
                       detail::zero_deltas(R, n), std::move(rels));
}

// Shift operators over Q[t]: x t = (t - h) x.
inline ExtensionSpec catalog_shift(const Rational& h) {
  RingPtr R = Ring::unipoly(Ring::rationals());
  RingElement image = R->t_gen() - R->from_rational(h);
  std::vector<EndoMap> sig{EndoMap::t_image(R, image)};
  return ExtensionSpec(R, detail::default_varnames(1), std::move(sig),
                       detail::zero_deltas(R, 1), {});
}

// Differential operators over K[t]: x t = t x + 1.
inline ExtensionSpec catalog_differential(const RingPtr& K) {
  detail::require_field(K, "differential");
  RingPtr R = Ring::unipoly(K);
  std::vector<DerMap> del{DerMap::t_image(R, R->one(), EndoMap::identity(R))};
  return ExtensionSpec(R, detail::default_varnames(1), detail::identity_sigmas(R, 1),
                       std::move(del), {});
}

// Difference operators over Q[t]: x t = (t + 1) x + 1.
inline ExtensionSpec catalog_difference() {
  RingPtr R = Ring::unipoly(Ring::rationals());
  EndoMap sig = EndoMap::t_image(R, R->t_gen() + R->one());
  std::vector<DerMap> del{DerMap::t_image(R, R->one(), sig)};
  return ExtensionSpec(R, detail::default_varnames(1), {sig}, std::move(del), {});
}

// x_j x_i = lambda_ji x_i x_j over a field.
inline ExtensionSpec catalog_multiplicative_weyl(
    const RingPtr& K, const std::vector<std::vector<RingElement>>& lambda) {
  detail::require_field(K, "multiplicative_weyl");
  std::uint32_t n = static_cast<std::uint32_t>(lambda.size());
  if (n == 0) fail(Errc::BadParams, "need at least one variable");
  for (const auto& row : lambda)
    if (row.size() != n) fail(Errc::BadParams, "lambda matrix must be square");
  std::map<std::pair<std::uint32_t, std::uint32_t>, RelationData> rels;
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = i + 1; j < n; ++j) {
      if (lambda[j][i].is_zero()) fail(Errc::BadParams, "lambda entries must be nonzero");
      rels.emplace(std::make_pair(i, j),
                   RelationData{lambda[j][i], K->zero(), std::vector<RingElement>(n, K->zero())});
    }
  return ExtensionSpec(K, detail::default_varnames(n), detail::identity_sigmas(K, n),
                       detail::zero_deltas(K, n), std::move(rels));
}

// --- string-keyed front end ---

namespace detail {

inline RingPtr parse_ring_name(const std::string& s) {
  if (s == "Q") return Ring::rationals();
  if (s == "Q[t]") return Ring::unipoly(Ring::rationals());
  auto parse_u64 = [](const std::string& digits) -> std::uint64_t {
    if (digits.empty()) fail(Errc::BadParams, "bad ring name");
    std::uint64_t v = 0;
    for (char ch : digits) {
      if (ch < '0' || ch > '9') fail(Errc::BadParams, "bad ring name");
      v = v * 10 + static_cast<std::uint64_t>(ch - '0');
    }
    return v;
  };
  if (s.size() > 1 && s[0] == 'Z') {
    std::string rest = s.substr(1);
    if (rest.size() > 3 && rest.substr(rest.size() - 3) == "[t]")
      return Ring::unipoly(Ring::zmod(parse_u64(rest.substr(0, rest.size() - 3))));
    if (rest.find('x') == std::string::npos) return Ring::zmod(parse_u64(rest));
    std::vector<std::uint64_t> moduli;
    std::size_t pos = 0;
    while (pos <= rest.size()) {
      std::size_t next = rest.find("xZ", pos);
      std::string part = rest.substr(pos, next == std::string::npos ? next : next - pos);
      moduli.push_back(parse_u64(part));
      if (next == std::string::npos) break;
      pos = next + 2;
    }
    return Ring::product(std::move(moduli));
  }
  fail(Errc::BadParams, "unknown ring name: " + s);
}

inline Rational parse_rational_literal(const std::string& s) {
  std::size_t slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(Int(s));
    return Rational(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
  } catch (const std::exception&) {
    fail(Errc::BadParams, "bad numeric literal: " + s);
  }
}

inline RingElement parse_scalar(const RingPtr& R, const std::string& s) {
  Rational q = parse_rational_literal(s);
  if (denominator(q) == 1) return R->from_int(numerator(q));
  return R->from_rational(q);
}

inline std::vector<std::string> split_list(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::size_t pos = 0;
  while (true) {
    std::size_t next = s.find(sep, pos);
    parts.push_back(s.substr(pos, next == std::string::npos ? next : next - pos));
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  return parts;
}

// Row-major n*n entries separated by commas.
inline std::vector<std::vector<RingElement>> parse_matrix(const RingPtr& R, const std::string& s,
                                                          std::uint32_t n) {
  std::vector<std::string> entries = split_list(s, ',');
  if (entries.size() != static_cast<std::size_t>(n) * n)
    fail(Errc::BadParams, "matrix needs n*n entries");
  std::vector<std::vector<RingElement>> m;
  std::size_t k = 0;
  for (std::uint32_t i = 0; i < n; ++i) {
    std::vector<RingElement> row;
    for (std::uint32_t j = 0; j < n; ++j) row.push_back(parse_scalar(R, entries[k++]));
    m.push_back(std::move(row));
  }
  return m;
}

inline EndoMap named_sigma(const RingPtr& R, const std::string& name) {
  if (name == "identity") return EndoMap::identity(R);
  if (name == "swap") {
    if (R->kind() != RingKind::Product || R->factors().size() != 2 ||
        R->factors()[0] != R->factors()[1])
      fail(Errc::BadParams, "swap needs a two-factor product ring with equal factors");
    std::vector<RingElement> images;
    for (const auto& a : R->enumerate()) {
      std::uint64_t n0 = R->factors()[0];
      std::uint64_t idx = R->index_of(a);
      images.push_back(R->element_at((idx % n0) * n0 + idx / n0));
    }
    return EndoMap::table(R, images);
  }
  fail(Errc::BadParams, "unknown sigma name: " + name);
}

}  // namespace detail

inline std::vector<std::string> catalog_entries() {
  return {"habitual",     "weyl",  "quantum_plane", "quantum_space",
          "shift",        "differential", "difference", "multiplicative_weyl"};
}

inline ExtensionSpec build_catalog(const std::string& name,
                                   const std::map<std::string, std::string>& params) {
  auto get = [&](const std::string& key, const std::string& fallback) {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
  };
  auto get_required = [&](const std::string& key) {
    auto it = params.find(key);
    if (it == params.end()) fail(Errc::BadParams, "missing parameter: " + key);
    return it->second;
  };
  auto get_n = [&](std::uint32_t fallback) {
    std::string s = get("n", std::to_string(fallback));
    Rational v = detail::parse_rational_literal(s);
    if (denominator(v) != 1 || v < 0) fail(Errc::BadParams, "n must be a nonnegative integer");
    return static_cast<std::uint32_t>(numerator(v).convert_to<std::uint64_t>());
  };

  if (name == "habitual")
    return catalog_habitual(detail::parse_ring_name(get("ring", "Q")), get_n(1));
  if (name == "weyl")
    return catalog_weyl(detail::parse_ring_name(get("ring", "Q")), get_n(1));
  if (name == "quantum_plane") {
    RingPtr K = detail::parse_ring_name(get("ring", "Q"));
    return catalog_quantum_plane(K, detail::parse_scalar(K, get_required("q")));
  }
  if (name == "quantum_space") {
    RingPtr R = detail::parse_ring_name(get("ring", "Q"));
    std::uint32_t n = get_n(1);
    auto q = detail::parse_matrix(R, get("q", "1"), n);
    std::vector<std::string> signames = detail::split_list(get("sigma", "identity"), ',');
    if (signames.size() == 1 && n > 1) signames.assign(n, signames[0]);
    if (signames.size() != n) fail(Errc::BadParams, "need one sigma name per variable");
    std::vector<EndoMap> sigmas;
    for (const auto& s : signames) sigmas.push_back(detail::named_sigma(R, s));
    return catalog_quantum_space(R, q, std::move(sigmas));
  }
  if (name == "shift") return catalog_shift(detail::parse_rational_literal(get("h", "1")));
  if (name == "differential")
    return catalog_differential(detail::parse_ring_name(get("ring", "Q")));
  if (name == "difference") return catalog_difference();
  if (name == "multiplicative_weyl") {
    RingPtr K = detail::parse_ring_name(get("ring", "Q"));
    std::uint32_t n = get_n(2);
    return catalog_multiplicative_weyl(K, detail::parse_matrix(K, get_required("lambda"), n));
  }
  fail(Errc::UnknownEntry, "unknown catalog entry: " + name);
}

}  // namespace spbw
