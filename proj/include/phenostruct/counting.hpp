#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

namespace pstruct {

// Exact integer arithmetic throughout; no floats in this module.
using Int = long long;

inline Int binom(Int n, Int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  Int result = 1;
  for (Int i = 1; i <= k; ++i) result = result * (n - k + i) / i;
  return result;
}

enum class DegreeKind { finite, no_group_symmetry };

struct DegreeResult {
  DegreeKind kind = DegreeKind::finite;
  Int degree = 0;
  std::string witness;  // inequality direction for the negative verdict

  bool finite() const { return kind == DegreeKind::finite; }
};

// Binary one-set geometry: a finite motion-group degree exists exactly when
// the manifold dimension ties to the rank by m = s(M-2); the degree is then
// s(M-1)(M-2)/2.
inline DegreeResult one_set_degree(Int s, Int M, Int m) {
  DegreeResult r;
  if (m == s * (M - 2)) {
    r.kind = DegreeKind::finite;
    r.degree = s * (M - 1) * (M - 2) / 2;
    return r;
  }
  r.kind = DegreeKind::no_group_symmetry;
  r.witness = m < s * (M - 2) ? "m < s(M-2): only the trivial motion remains"
                              : "m > s(M-2): no finite bound on the parameter count";
  return r;
}

// Binary two-set structure of rank (M, N): both dimension relations
// m = s(N-1), n = s(M-1) must hold; the degree is then s(M-1)(N-1).
inline DegreeResult two_set_degree(Int s, Int M, Int N, Int m, Int n) {
  DegreeResult r;
  if (m == s * (N - 1) && n == s * (M - 1)) {
    r.kind = DegreeKind::finite;
    r.degree = s * (M - 1) * (N - 1);
    return r;
  }
  r.kind = DegreeKind::no_group_symmetry;
  r.witness = (m < s * (N - 1) || n < s * (M - 1))
                  ? "dimension below the rank relation: only the trivial motion remains"
                  : "dimension above the rank relation: no finite bound";
  return r;
}

// A polyary structure: per set, manifold dimension, multiplicity and rank.
struct SetShape {
  Int dim_m = 0;
  Int mult_q = 0;
  Int rank_M = 0;
};

struct StructureShape {
  Int s = 1;
  std::vector<SetShape> sets;

  bool valid() const {
    if (s < 1 || sets.empty()) return false;
    for (const auto& st : sets)
      if (st.dim_m < 1 || st.mult_q < 1 || st.rank_M <= st.mult_q) return false;
    return true;
  }
};

// Number of relation-dependent function values in the extended cortege M':
// s * prod_i C(M'_i - M_i + q_i, q_i). Matches the direct superposition
// enumeration (each crossed-out cell is the final tuple of one placement).
inline Int dependent_count(const StructureShape& shape, const std::vector<Int>& m_prime) {
  Int result = shape.s;
  for (std::size_t i = 0; i < shape.sets.size(); ++i) {
    const auto& st = shape.sets[i];
    result *= binom(m_prime[i] - st.rank_M + st.mult_q, st.mult_q);
  }
  return result;
}

inline Int total_function_count(const StructureShape& shape, const std::vector<Int>& m_prime) {
  Int result = shape.s;
  for (std::size_t i = 0; i < shape.sets.size(); ++i)
    result *= binom(m_prime[i], shape.sets[i].mult_q);
  return result;
}

// Rank of the independent projection: total minus dependents.
inline Int independent_count(const StructureShape& shape, const std::vector<Int>& m_prime) {
  return total_function_count(shape, m_prime) - dependent_count(shape, m_prime);
}

enum class PolyaryKind {
  finite,        // solution count constant over the scan: degree = r'
  saturated,     // unknowns <= independent functions at some M': only trivial motions
  unbounded,     // r' grows with the cortege: no finite degree exists
  inconclusive,  // r' still varying non-monotonically at the bound
};

struct PolyaryResult {
  PolyaryKind kind = PolyaryKind::inconclusive;
  Int degree = 0;
  std::vector<Int> witness;  // first saturating extended rank, when saturated

  bool finite() const { return kind == PolyaryKind::finite; }
  bool saturated() const { return kind == PolyaryKind::saturated; }
};

inline const char* to_string(PolyaryKind k) {
  switch (k) {
    case PolyaryKind::finite: return "finite";
    case PolyaryKind::saturated: return "saturated";
    case PolyaryKind::unbounded: return "unbounded";
    default: return "inconclusive";
  }
}

// Scans every extended cortege M' up to the bound. The number of independent
// motion differentials at M' is r' = sum M'_i m_i - N(M'); a finite group
// symmetry needs r' constant; unknowns <= N(M') anywhere kills all motions.
inline PolyaryResult polyary_group_symmetry(const StructureShape& shape, Int bound) {
  PolyaryResult result;
  if (!shape.valid()) return result;
  const std::size_t p = shape.sets.size();
  std::vector<Int> m_prime(p);
  for (std::size_t i = 0; i < p; ++i) m_prime[i] = shape.sets[i].rank_M;

  bool first = true;
  Int r_base = 0;
  bool all_equal = true;
  Int r_last_corner = 0;

  // odometer over the grid
  std::vector<Int> current = m_prime;
  while (true) {
    Int unknowns = 0;
    for (std::size_t i = 0; i < p; ++i) unknowns += current[i] * shape.sets[i].dim_m;
    const Int independent = independent_count(shape, current);
    if (unknowns <= independent) {
      result.kind = PolyaryKind::saturated;
      result.witness = current;
      return result;
    }
    const Int r = unknowns - independent;
    if (first) {
      r_base = r;
      first = false;
    } else if (r != r_base) {
      all_equal = false;
    }
    r_last_corner = r;

    std::size_t k = 0;
    while (k < p && current[k] == bound) {
      current[k] = shape.sets[k].rank_M;
      ++k;
    }
    if (k == p) break;
    ++current[k];
  }

  if (all_equal) {
    result.kind = PolyaryKind::finite;
    result.degree = r_base;
  } else if (r_last_corner > r_base) {
    result.kind = PolyaryKind::unbounded;
  } else {
    result.kind = PolyaryKind::inconclusive;
  }
  return result;
}

inline StructureShape binary_one_set(Int s, Int M, Int m) {
  return StructureShape{s, {SetShape{m, 2, M}}};
}
inline StructureShape binary_two_set(Int s, Int M, Int N, Int m, Int n) {
  return StructureShape{s, {SetShape{m, 1, M}, SetShape{n, 1, N}}};
}

}  // namespace pstruct
