#pragma once

// Ring endomorphisms and sigma-derivations.
//
// Finite rings carry total lookup tables indexed by the enumeration order.
// UniPoly maps are determined by the image of t: an endomorphism fixes base
// constants and substitutes u(t) with deg u >= 1; a derivation kills base
// constants and extends delta(t) = v by the sigma-Leibniz rule (so it needs
// its companion endomorphism).  Rationals admit only the identity / zero map.
//
// Validation is exhaustive on finite rings (the 4096 cap keeps that cheap)
// and sampled on polynomial rings, where the laws hold structurally.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "spbw/error.hpp"
#include "spbw/ring.hpp"

namespace spbw {

class EndoMap {
 public:
  enum class Rep { Identity, Table, TImage };

  static EndoMap identity(RingPtr ring) {
    EndoMap m;
    m.rep_ = Rep::Identity;
    m.ring_ = std::move(ring);
    return m;
  }

  static EndoMap table(const RingPtr& ring, const std::vector<RingElement>& images) {
    auto card = ring->cardinality();
    if (!card) fail(Errc::NotEnumerable, "table maps need a finite ring");
    if (images.size() != *card)
      fail(Errc::IncompleteMap, "endomorphism table must cover every element");
    std::vector<std::uint64_t> idx(images.size());
    for (std::size_t i = 0; i < images.size(); ++i) idx[i] = ring->index_of(images[i]);
    return table_indices(ring, std::move(idx));
  }

  static EndoMap table_indices(RingPtr ring, std::vector<std::uint64_t> idx) {
    auto card = ring->cardinality();
    if (!card) fail(Errc::NotEnumerable, "table maps need a finite ring");
    if (idx.size() != *card)
      fail(Errc::IncompleteMap, "endomorphism table must cover every element");
    for (auto i : idx)
      if (i >= *card) fail(Errc::BadIndex, "endomorphism table image out of range");
    EndoMap m;
    m.rep_ = Rep::Table;
    m.ring_ = std::move(ring);
    m.table_ = std::move(idx);
    return m;
  }

  static EndoMap t_image(RingPtr ring, RingElement u) {
    if (ring->kind() != RingKind::UniPoly)
      fail(Errc::BadParams, "t-image maps exist only over UniPoly rings");
    if (!u.ring()->same(*ring)) fail(Errc::MismatchedRing, "t image from wrong ring");
    if (u.coeffs().size() < 2)
      fail(Errc::BadParams, "endomorphism t image must have degree >= 1");
    EndoMap m;
    m.rep_ = Rep::TImage;
    m.ring_ = std::move(ring);
    m.timage_ = std::move(u);
    return m;
  }

  Rep rep() const { return rep_; }
  const RingPtr& ring() const { return ring_; }

  const RingElement& timage_poly() const {
    if (!timage_) fail(Errc::BadParams, "map has no t image");
    return *timage_;
  }

  // Image of t, defined for Identity over UniPoly as well.
  RingElement t_value() const {
    if (rep_ == Rep::TImage) return *timage_;
    if (rep_ == Rep::Identity && ring_->kind() == RingKind::UniPoly) return ring_->t_gen();
    fail(Errc::BadParams, "map has no t image");
  }

  RingElement apply(const RingElement& a) const {
    switch (rep_) {
      case Rep::Identity:
        return a;
      case Rep::Table:
        return ring_->element_at(table_[ring_->index_of(a)]);
      case Rep::TImage: {
        // substitute u for t; base coefficients are fixed
        const auto& cs = a.coeffs();
        RingElement acc = ring_->zero();
        for (std::size_t k = cs.size(); k-- > 0;) {
          acc = acc * *timage_;
          if (!cs[k].is_zero())
            acc = acc + ring_->unipoly_from({cs[k]});
        }
        return acc;
      }
    }
    fail(Errc::BadParams, "bad map rep");
  }

  // Total lookup table as element indices (finite rings only).
  std::vector<std::uint64_t> index_table() const {
    auto card = ring_->cardinality();
    if (!card) fail(Errc::NotEnumerable, "index table needs a finite ring");
    if (rep_ == Rep::Table) return table_;
    std::vector<std::uint64_t> t(*card);
    for (std::uint64_t i = 0; i < *card; ++i) t[i] = i;
    return t;
  }

  bool is_identity() const {
    switch (rep_) {
      case Rep::Identity: return true;
      case Rep::Table: {
        for (std::uint64_t i = 0; i < table_.size(); ++i)
          if (table_[i] != i) return false;
        return true;
      }
      case Rep::TImage: return *timage_ == ring_->t_gen();
    }
    return false;
  }

  bool operator==(const EndoMap& o) const {
    if (!ring_->same(*o.ring_)) return false;
    if (ring_->finite()) return index_table() == o.index_table();
    if (ring_->kind() == RingKind::UniPoly) return t_value() == o.t_value();
    return true;  // Rationals: identity only
  }

 private:
  EndoMap() = default;
  Rep rep_ = Rep::Identity;
  RingPtr ring_;
  std::vector<std::uint64_t> table_;
  std::optional<RingElement> timage_;
};

class DerMap {
 public:
  enum class Rep { Zero, Table, TImage };

  static DerMap zero(RingPtr ring) {
    DerMap m;
    m.rep_ = Rep::Zero;
    m.ring_ = std::move(ring);
    return m;
  }

  static DerMap table(const RingPtr& ring, const std::vector<RingElement>& images) {
    auto card = ring->cardinality();
    if (!card) fail(Errc::NotEnumerable, "table maps need a finite ring");
    if (images.size() != *card)
      fail(Errc::IncompleteMap, "derivation table must cover every element");
    std::vector<std::uint64_t> idx(images.size());
    for (std::size_t i = 0; i < images.size(); ++i) idx[i] = ring->index_of(images[i]);
    return table_indices(ring, std::move(idx));
  }

  static DerMap table_indices(RingPtr ring, std::vector<std::uint64_t> idx) {
    auto card = ring->cardinality();
    if (!card) fail(Errc::NotEnumerable, "table maps need a finite ring");
    if (idx.size() != *card)
      fail(Errc::IncompleteMap, "derivation table must cover every element");
    for (auto i : idx)
      if (i >= *card) fail(Errc::BadIndex, "derivation table image out of range");
    DerMap m;
    m.rep_ = Rep::Table;
    m.ring_ = std::move(ring);
    m.table_ = std::move(idx);
    return m;
  }

  // delta(t) = v, extended by delta(t^k) = sigma(t) delta(t^{k-1}) + v t^{k-1}.
  static DerMap t_image(RingPtr ring, RingElement v, EndoMap companion) {
    if (ring->kind() != RingKind::UniPoly)
      fail(Errc::BadParams, "t-image maps exist only over UniPoly rings");
    if (!v.ring()->same(*ring)) fail(Errc::MismatchedRing, "t image from wrong ring");
    if (!companion.ring()->same(*ring))
      fail(Errc::MismatchedRing, "companion endomorphism over wrong ring");
    DerMap m;
    m.rep_ = Rep::TImage;
    m.ring_ = std::move(ring);
    m.timage_ = std::move(v);
    m.companion_ = std::move(companion);
    return m;
  }

  Rep rep() const { return rep_; }
  const RingPtr& ring() const { return ring_; }
  const EndoMap& companion() const {
    if (!companion_) fail(Errc::BadParams, "derivation has no companion endomorphism");
    return *companion_;
  }

  RingElement apply(const RingElement& a) const {
    switch (rep_) {
      case Rep::Zero:
        return ring_->zero();
      case Rep::Table:
        return ring_->element_at(table_[ring_->index_of(a)]);
      case Rep::TImage: {
        const auto& cs = a.coeffs();
        RingElement u = companion_->t_value();
        RingElement t = ring_->t_gen();
        RingElement acc = ring_->zero();
        RingElement dtk = ring_->zero();  // delta(t^k), k starts at 0
        RingElement tk = ring_->one();    // t^k
        for (std::size_t k = 0; k < cs.size(); ++k) {
          if (k > 0) {
            dtk = u * dtk + *timage_ * tk;  // delta(t^k) via Leibniz
            tk = tk * t;
          }
          if (!cs[k].is_zero()) acc = acc + ring_->unipoly_from({cs[k]}) * dtk;
        }
        return acc;
      }
    }
    fail(Errc::BadParams, "bad map rep");
  }

  std::vector<std::uint64_t> index_table() const {
    auto card = ring_->cardinality();
    if (!card) fail(Errc::NotEnumerable, "index table needs a finite ring");
    if (rep_ == Rep::Table) return table_;
    return std::vector<std::uint64_t>(*card, ring_->index_of(ring_->zero()));
  }

  bool is_zero_map() const {
    switch (rep_) {
      case Rep::Zero: return true;
      case Rep::Table: {
        std::uint64_t z = ring_->index_of(ring_->zero());
        for (auto i : table_)
          if (i != z) return false;
        return true;
      }
      case Rep::TImage: return timage_->is_zero();
    }
    return false;
  }

  bool operator==(const DerMap& o) const {
    if (!ring_->same(*o.ring_)) return false;
    if (ring_->finite()) return index_table() == o.index_table();
    if (ring_->kind() == RingKind::UniPoly) {
      RingElement a = rep_ == Rep::TImage ? *timage_ : ring_->zero();
      RingElement b = o.rep_ == Rep::TImage ? *o.timage_ : ring_->zero();
      return a == b;
    }
    return is_zero_map() == o.is_zero_map();
  }

 private:
  DerMap() = default;
  Rep rep_ = Rep::Zero;
  RingPtr ring_;
  std::vector<std::uint64_t> table_;
  std::optional<RingElement> timage_;
  std::optional<EndoMap> companion_;
};

struct EndoReport {
  bool is_endo = false;
  bool injective = false;
  bool bijective = false;
  std::string detail;
};

struct DerReport {
  bool is_sigma_derivation = false;
  std::string detail;
};

namespace detail {

// Deterministic sample elements for law checks over infinite rings.
inline std::vector<RingElement> sample_elements(const RingPtr& R, std::size_t count,
                                                std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<RingElement> out;
  auto rand_base = [&](const RingPtr& B) {
    if (B->kind() == RingKind::Rationals) {
      std::int64_t num = static_cast<std::int64_t>(rng() % 19) - 9;
      std::uint64_t den = 1 + rng() % 9;
      return B->from_rational(Rational(Int(num), Int(den)));
    }
    return B->element_at(rng() % *B->cardinality());
  };
  for (std::size_t i = 0; i < count; ++i) {
    if (R->kind() == RingKind::UniPoly) {
      std::size_t deg = rng() % 4;
      std::vector<RingElement> cs;
      for (std::size_t k = 0; k <= deg; ++k) cs.push_back(rand_base(R->base()));
      out.push_back(R->unipoly_from(std::move(cs)));
    } else if (R->kind() == RingKind::Rationals) {
      out.push_back(rand_base(R));
    } else {
      out.push_back(R->element_at(rng() % *R->cardinality()));
    }
  }
  return out;
}

}  // namespace detail

inline EndoReport validate_endomorphism(const RingPtr& R, const EndoMap& m) {
  EndoReport rep;
  if (!m.ring()->same(*R)) fail(Errc::MismatchedRing, "map defined over a different ring");
  if (m.is_identity()) {
    rep.is_endo = rep.injective = rep.bijective = true;
    rep.detail = "identity map";
    return rep;
  }
  if (R->finite()) {
    auto elems = R->enumerate();
    RingElement one = R->one();
    if (!(m.apply(one) == one)) {
      rep.detail = "does not fix 1";
      return rep;
    }
    for (const auto& a : elems) {
      for (const auto& b : elems) {
        if (!(m.apply(a + b) == m.apply(a) + m.apply(b))) {
          rep.detail = "not additive at " + R->format(a) + ", " + R->format(b);
          return rep;
        }
        if (!(m.apply(a * b) == m.apply(a) * m.apply(b))) {
          rep.detail = "not multiplicative at " + R->format(a) + ", " + R->format(b);
          return rep;
        }
      }
    }
    rep.is_endo = true;
    auto tab = m.index_table();
    std::vector<bool> seen(tab.size(), false);
    rep.injective = true;
    for (auto i : tab) {
      if (seen[i]) rep.injective = false;
      seen[i] = true;
    }
    rep.bijective = rep.injective;  // injective on a finite set
    rep.detail = "exhaustive over " + std::to_string(tab.size()) + " elements";
    return rep;
  }
  if (R->kind() == RingKind::Rationals) {
    rep.is_endo = rep.injective = rep.bijective = true;
    rep.detail = "identity on Q";
    return rep;
  }
  // UniPoly: substitution by u(t) with deg u >= 1; sample the laws.
  auto samples = detail::sample_elements(R, 20, 0x5eedu);
  for (std::size_t i = 0; i + 1 < samples.size(); i += 2) {
    const auto &a = samples[i], &b = samples[i + 1];
    if (!(m.apply(a + b) == m.apply(a) + m.apply(b)) ||
        !(m.apply(a * b) == m.apply(a) * m.apply(b))) {
      rep.detail = "law failed on sample";
      return rep;
    }
  }
  rep.is_endo = true;
  RingElement u = m.t_value();
  std::size_t deg = u.coeffs().size() - 1;
  rep.injective = deg >= 1;
  rep.bijective = deg == 1 && R->base()->invertible(u.coeffs()[1]);
  rep.detail = "t image of degree " + std::to_string(deg);
  return rep;
}

inline DerReport validate_sigma_derivation(const RingPtr& R, const EndoMap& s, const DerMap& d) {
  DerReport rep;
  if (!s.ring()->same(*R) || !d.ring()->same(*R))
    fail(Errc::MismatchedRing, "maps defined over a different ring");
  auto check = [&](const RingElement& a, const RingElement& b) {
    if (!(d.apply(a + b) == d.apply(a) + d.apply(b))) return false;
    return d.apply(a * b) == s.apply(a) * d.apply(b) + d.apply(a) * b;
  };
  if (d.is_zero_map()) {
    rep.is_sigma_derivation = true;
    rep.detail = "zero map";
    return rep;
  }
  if (!d.apply(R->one()).is_zero()) {
    rep.detail = "delta(1) != 0";
    return rep;
  }
  if (R->finite()) {
    auto elems = R->enumerate();
    for (const auto& a : elems)
      for (const auto& b : elems)
        if (!check(a, b)) {
          rep.detail = "Leibniz failed at " + R->format(a) + ", " + R->format(b);
          return rep;
        }
    rep.is_sigma_derivation = true;
    rep.detail = "exhaustive over " + std::to_string(elems.size()) + " elements";
    return rep;
  }
  if (R->kind() == RingKind::Rationals) {
    rep.is_sigma_derivation = d.is_zero_map();
    rep.detail = rep.is_sigma_derivation ? "zero map on Q" : "nonzero map on Q";
    return rep;
  }
  auto samples = detail::sample_elements(R, 40, 0xdee1u);
  for (std::size_t i = 0; i + 1 < samples.size(); i += 2)
    if (!check(samples[i], samples[i + 1])) {
      rep.detail = "Leibniz failed on sample";
      return rep;
    }
  // the t-image extension is Leibniz by construction; also pin delta on t
  rep.is_sigma_derivation = true;
  rep.detail = "sigma-Leibniz extension from delta(t)";
  return rep;
}

// All unital ring endomorphisms of a small structured finite ring, in a
// deterministic order.  Determined by generator images: nothing to choose for
// ZMod, idempotent tuples for Product, roots of the modulus for QuotientPoly.
inline std::vector<EndoMap> enumerate_endomorphisms(const RingPtr& R) {
  auto card = R->cardinality();
  if (!card) fail(Errc::NotEnumerable, "endomorphism pool needs a finite ring");
  std::vector<EndoMap> out;
  auto push_if_valid = [&](const std::vector<RingElement>& images) {
    EndoMap m = EndoMap::table(R, images);
    if (validate_endomorphism(R, m).is_endo) {
      for (const auto& seen : out)
        if (seen == m) return;
      out.push_back(std::move(m));
    }
  };
  switch (R->kind()) {
    case RingKind::ZMod:
      out.push_back(EndoMap::identity(R));
      return out;
    case RingKind::Product: {
      std::size_t k = R->factors().size();
      auto elems = R->enumerate();
      std::vector<RingElement> idem;
      for (const auto& e : elems)
        if (e * e == e) idem.push_back(e);
      std::vector<std::size_t> pick(k, 0);
      while (true) {
        std::vector<RingElement> gens;
        for (std::size_t i = 0; i < k; ++i) gens.push_back(idem[pick[i]]);
        std::vector<RingElement> images;
        images.reserve(elems.size());
        for (const auto& e : elems) {
          RingElement acc = R->zero();
          for (std::size_t i = 0; i < k; ++i) {
            RingElement part = R->zero();
            for (std::uint64_t c = 0; c < e.words()[i]; ++c) part = part + gens[i];
            acc = acc + part;
          }
          images.push_back(acc);
        }
        push_if_valid(images);
        std::size_t i = 0;
        while (i < k && ++pick[i] == idem.size()) pick[i++] = 0;
        if (i == k) break;
      }
      return out;
    }
    case RingKind::QuotientPoly: {
      auto elems = R->enumerate();
      for (const auto& u : elems) {
        // u must be a root of the modulus for t -> u to be well defined
        RingElement fu = R->zero();
        for (std::size_t i = R->modulus_poly().size(); i-- > 0;)
          fu = fu * u + R->from_int(R->modulus_poly()[i]);
        if (!fu.is_zero()) continue;
        std::vector<RingElement> images;
        images.reserve(elems.size());
        for (const auto& e : elems) {
          RingElement acc = R->zero();
          for (std::size_t i = e.words().size(); i-- > 0;)
            acc = acc * u + R->from_int(e.words()[i]);
          images.push_back(acc);
        }
        push_if_valid(images);
      }
      return out;
    }
    case RingKind::Residue: {
      // induced from the base pool; validation discards ill-defined ones
      for (const auto& m : enumerate_endomorphisms(R->base())) {
        std::vector<RingElement> images;
        for (std::uint64_t i = 0; i < *card; ++i)
          images.push_back(R->project(m.apply(R->lift(R->element_at(i)))));
        push_if_valid(images);
      }
      return out;
    }
    default:
      fail(Errc::NotEnumerable, "endomorphism pool unsupported for this ring");
  }
}

// All sigma-derivations for a fixed companion, by enumerating images of the
// additive generators and validating the Leibniz law exhaustively.
inline std::vector<DerMap> enumerate_sigma_derivations(const RingPtr& R, const EndoMap& sigma) {
  auto card = R->cardinality();
  if (!card) fail(Errc::NotEnumerable, "derivation pool needs a finite ring");
  std::vector<DerMap> out;
  auto push_if_valid = [&](const std::vector<RingElement>& images) {
    DerMap d = DerMap::table(R, images);
    if (validate_sigma_derivation(R, sigma, d).is_sigma_derivation) {
      for (const auto& seen : out)
        if (seen == d) return;
      out.push_back(std::move(d));
    }
  };
  switch (R->kind()) {
    case RingKind::ZMod:
      out.push_back(DerMap::zero(R));
      return out;
    case RingKind::Product: {
      std::size_t k = R->factors().size();
      auto elems = R->enumerate();
      if (k > 3) fail(Errc::CardinalityTooLarge, "derivation pool limited to <= 3 factors");
      std::vector<std::uint64_t> pick(k, 0);
      while (true) {
        std::vector<RingElement> gens;
        for (std::size_t i = 0; i < k; ++i) gens.push_back(R->element_at(pick[i]));
        std::vector<RingElement> images;
        images.reserve(elems.size());
        for (const auto& e : elems) {
          RingElement acc = R->zero();
          for (std::size_t i = 0; i < k; ++i) {
            RingElement part = R->zero();
            for (std::uint64_t c = 0; c < e.words()[i]; ++c) part = part + gens[i];
            acc = acc + part;
          }
          images.push_back(acc);
        }
        push_if_valid(images);
        std::size_t i = 0;
        while (i < k && ++pick[i] == *card) pick[i++] = 0;
        if (i == k) break;
      }
      return out;
    }
    case RingKind::QuotientPoly: {
      auto elems = R->enumerate();
      RingElement t = R->t_gen();
      std::size_t d = R->modulus_poly().size() - 1;
      std::vector<RingElement> tpow{R->one()};
      for (std::size_t k = 1; k <= d; ++k) tpow.push_back(tpow.back() * t);
      for (const auto& v : elems) {
        // delta(t) = v, delta(t^k) by sigma-Leibniz, images by additivity
        std::vector<RingElement> dtk{R->zero(), v};
        for (std::size_t k = 2; k <= d; ++k)
          dtk.push_back(sigma.apply(t) * dtk[k - 1] + v * tpow[k - 1]);
        std::vector<RingElement> images;
        images.reserve(elems.size());
        for (const auto& e : elems) {
          RingElement acc = R->zero();
          for (std::size_t k = 1; k < e.words().size(); ++k) {
            RingElement part = R->zero();
            for (std::uint64_t c = 0; c < e.words()[k]; ++c) part = part + dtk[k];
            acc = acc + part;
          }
          images.push_back(acc);
        }
        push_if_valid(images);
      }
      return out;
    }
    default:
      fail(Errc::NotEnumerable, "derivation pool unsupported for this ring");
  }
}

// Scans for a with delta(r) = a r - sigma(r) a for all r; first hit in
// enumeration order.
inline std::optional<RingElement> find_inner_element(const RingPtr& R, const EndoMap& sigma,
                                                     const DerMap& delta) {
  auto card = R->cardinality();
  if (!card) fail(Errc::NotEnumerable, "inner-derivation scan needs a finite ring");
  auto elems = R->enumerate();
  for (const auto& a : elems) {
    bool ok = true;
    for (const auto& r : elems)
      if (!(delta.apply(r) == a * r - sigma.apply(r) * a)) {
        ok = false;
        break;
      }
    if (ok) return a;
  }
  return std::nullopt;
}

}  // namespace spbw
