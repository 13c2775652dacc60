#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "phenostruct/core.hpp"
#include "phenostruct/identity.hpp"
#include "phenostruct/motions.hpp"

namespace pstruct {

// One coordinate representation of an entry. reps[0] is canonical; a second
// representation, when present, is the quasigroup form whose identity is the
// self-substitution alternation.
struct Representation {
  std::string tag = "canonical";
  std::vector<MetricSpec> instances;  // one per discrete parameter assignment
  std::optional<IdentityForm> identity;
};

struct CatalogEntry {
  std::string id;
  std::string anchor;  // equation tag used in reports and the catalog dump
  std::string note;
  Family family = Family::one_set;
  int s = 1;
  int dim_a = 0;
  int dim_b = 0;
  int arity = 2;                 // 3 only for the oriented-area entry
  int rank_len_a = 0;            // cortege lengths for the rank predicate
  int rank_len_b = 0;
  int predicted_rank = 0;
  bool expect_no_structure = false;
  std::vector<Representation> reps;
  std::optional<MotionSpec> motions;
  std::vector<LieOperator> lie_basis;
  // For negative entries only: the failed relation whose residual must stay
  // large on random corteges.
  std::optional<IdentityForm> candidate_identity;

  const MetricSpec& spec() const { return reps.front().instances.front(); }
  bool has_identity() const {
    return std::any_of(reps.begin(), reps.end(),
                       [](const Representation& r) { return r.identity.has_value(); });
  }
};

struct EntryFilter {
  std::optional<Family> family;
  std::optional<int> s;
  std::optional<int> n;  // per-point dimension factor: dim_a == s*n (one-set)
  std::optional<bool> negatives;

  bool matches(const CatalogEntry& e) const {
    if (e.arity != 2) return false;
    if (family && e.family != *family) return false;
    if (s && e.s != *s) return false;
    if (n && (e.family != Family::one_set || e.dim_a != e.s * *n)) return false;
    if (negatives && e.expect_no_structure != *negatives) return false;
    return true;
  }
};

class Catalog {
public:
  void add(CatalogEntry e) {
    if (index_.count(e.id)) throw std::logic_error("duplicate catalog id: " + e.id);
    index_[e.id] = entries_.size();
    entries_.push_back(std::move(e));
  }

  const CatalogEntry& get(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) throw unknown_id("unknown catalog id: " + id);
    return entries_[it->second];
  }

  bool contains(const std::string& id) const { return index_.count(id) > 0; }

  std::vector<std::string> list(const EntryFilter& filter = {}) const {
    std::vector<std::string> out;
    for (const auto& e : entries_)
      if (filter.matches(e)) out.push_back(e.id);
    return out;
  }

  const std::vector<CatalogEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

private:
  std::vector<CatalogEntry> entries_;
  std::map<std::string, std::size_t> index_;
};

// ---------------------------------------------------------------------------
// Shared construction helpers for the registration units.

inline Vec vec1(double a) {
  Vec v(1);
  v << a;
  return v;
}
inline Vec vec2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}
inline Vec vec3(double a, double b, double c) {
  Vec v(3);
  v << a, b, c;
  return v;
}
inline Vec vec4(double a, double b, double c, double d) {
  Vec v(4);
  v << a, b, c, d;
  return v;
}

inline MetricSpec base_spec(std::string id, Family family, int s, int dim_a, int dim_b) {
  MetricSpec m;
  m.id = std::move(id);
  m.family = family;
  m.s = s;
  m.dim_a = dim_a;
  m.dim_b = dim_b;
  m.box_a = uniform_boxes(dim_a);
  m.box_b = uniform_boxes(dim_b);
  return m;
}

inline void finish_entry(CatalogEntry& e) {
  const MetricSpec& m = e.spec();
  e.family = m.family;
  e.s = m.s;
  e.dim_a = m.dim_a;
  e.dim_b = m.dim_b;
  if (m.family == Family::one_set) {
    e.rank_len_a = m.dim_a / m.s + 2;
    e.rank_len_b = 0;
    const int rows = m.s * pair_count(e.rank_len_a);
    e.predicted_rank = e.expect_no_structure ? rows : rows - m.s;
  } else {
    e.rank_len_a = m.dim_b / m.s + 1;
    e.rank_len_b = m.dim_a / m.s + 1;
    const int rows = m.s * e.rank_len_a * e.rank_len_b;
    e.predicted_rank = e.expect_no_structure ? rows : rows - m.s;
  }
}

// Pair guards used across the catalog.
inline auto guard_absdiff(int k, double margin = kDomainMargin) {
  return [k, margin](const Vec& a, const Vec& b) { return std::abs(a[k] - b[k]) >= margin; };
}

// |a[k]-b[k]| bounded away from zero and the ratio (a[l]-b[l])/(a[k]-b[k])
// bounded above; keeps exp/artanh arguments in float range.
inline auto guard_ratio(int k, int l, double cap, double margin = kDomainMargin) {
  return [k, l, cap, margin](const Vec& a, const Vec& b) {
    const double dx = a[k] - b[k];
    if (std::abs(dx) < margin) return false;
    return std::abs((a[l] - b[l]) / dx) <= cap;
  };
}

inline auto guard_all(std::vector<std::function<bool(const Vec&, const Vec&)>> guards) {
  return [guards = std::move(guards)](const Vec& a, const Vec& b) {
    for (const auto& g : guards)
      if (!g(a, b)) return false;
    return true;
  };
}

// artanh for |r|<1, arcoth for |r|>1 (the two branches of the same primitive).
inline double arcth(double r) { return std::abs(r) < 1.0 ? std::atanh(r) : std::atanh(1.0 / r); }

}  // namespace pstruct

#include "phenostruct/catalog_oneset.hpp"
#include "phenostruct/catalog_twoset.hpp"

namespace pstruct {

// The full registry, built once. Immutable afterwards; concurrent reads are
// safe.
inline const Catalog& catalog() {
  static const Catalog instance = [] {
    Catalog c;
    detail::register_oneset(c);
    detail::register_twoset(c);
    return c;
  }();
  return instance;
}

inline int register_required_entries() { return static_cast<int>(catalog().size()); }

inline std::vector<std::string> list_entries(const EntryFilter& filter = {}) {
  return catalog().list(filter);
}

inline const CatalogEntry& get_entry(const std::string& id) { return catalog().get(id); }

}  // namespace pstruct
