#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "phenostruct/rng.hpp"

namespace pstruct {

// A finite group given by tables; validated exhaustively on construction.
struct FiniteGroup {
  int order = 0;
  std::vector<int> mul;  // order x order, row-major
  std::vector<int> inv;
  int identity = 0;

  int times(int a, int b) const { return mul[static_cast<std::size_t>(a * order + b)]; }

  bool valid() const {
    if (order <= 0) return false;
    for (int a = 0; a < order; ++a) {
      if (times(identity, a) != a || times(a, identity) != a) return false;
      if (times(a, inv[static_cast<std::size_t>(a)]) != identity) return false;
      if (times(inv[static_cast<std::size_t>(a)], a) != identity) return false;
      for (int b = 0; b < order; ++b)
        for (int c = 0; c < order; ++c)
          if (times(times(a, b), c) != times(a, times(b, c))) return false;
    }
    return true;
  }

  static FiniteGroup cyclic(int n) {
    FiniteGroup g;
    g.order = n;
    g.identity = 0;
    g.mul.resize(static_cast<std::size_t>(n * n));
    g.inv.resize(static_cast<std::size_t>(n));
    for (int a = 0; a < n; ++a) {
      g.inv[static_cast<std::size_t>(a)] = (n - a) % n;
      for (int b = 0; b < n; ++b) g.mul[static_cast<std::size_t>(a * n + b)] = (a + b) % n;
    }
    return g;
  }

  static FiniteGroup klein4() {
    // xor on two bits
    FiniteGroup g;
    g.order = 4;
    g.identity = 0;
    g.mul.resize(16);
    g.inv = {0, 1, 2, 3};
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) g.mul[static_cast<std::size_t>(a * 4 + b)] = a ^ b;
    return g;
  }

  static FiniteGroup symmetric3() {
    // permutations of {0,1,2} listed in a fixed order
    const std::array<std::array<int, 3>, 6> perms = {
        {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {0, 2, 1}, {2, 1, 0}, {1, 0, 2}}};
    FiniteGroup g;
    g.order = 6;
    g.identity = 0;
    g.mul.resize(36);
    g.inv.resize(6);
    const auto compose = [&](int a, int b) {  // apply b first, then a
      std::array<int, 3> out{};
      for (int k = 0; k < 3; ++k) out[static_cast<std::size_t>(k)] =
          perms[static_cast<std::size_t>(a)][static_cast<std::size_t>(
              perms[static_cast<std::size_t>(b)][static_cast<std::size_t>(k)])];
      for (int idx = 0; idx < 6; ++idx)
        if (perms[static_cast<std::size_t>(idx)] == out) return idx;
      throw std::logic_error("symmetric3: composition escaped the table");
    };
    for (int a = 0; a < 6; ++a)
      for (int b = 0; b < 6; ++b) g.mul[static_cast<std::size_t>(a * 6 + b)] = compose(a, b);
    for (int a = 0; a < 6; ++a)
      for (int b = 0; b < 6; ++b)
        if (g.mul[static_cast<std::size_t>(a * 6 + b)] == 0) g.inv[static_cast<std::size_t>(a)] = b;
    return g;
  }
};

// A total ternary operation on a finite carrier.
struct FiniteTernaryOp {
  int g = 0;
  std::vector<std::uint8_t> table;  // g^3 entries, index (x*g + y)*g + z

  int at(int x, int y, int z) const {
    return table[static_cast<std::size_t>((x * g + y) * g + z)];
  }
  void set(int x, int y, int z, int v) {
    table[static_cast<std::size_t>((x * g + y) * g + z)] = static_cast<std::uint8_t>(v);
  }

  static FiniteTernaryOp uniform_random(int g, Rng& rng) {
    FiniteTernaryOp op;
    op.g = g;
    op.table.resize(static_cast<std::size_t>(g) * g * g);
    for (auto& v : op.table) v = static_cast<std::uint8_t>(rng.uniform_int(0, g - 1));
    return op;
  }
};

// The classical construction phi(x, y, z) = x y^{-1} z.
inline FiniteTernaryOp heap_from_group(const FiniteGroup& grp) {
  FiniteTernaryOp op;
  op.g = grp.order;
  op.table.resize(static_cast<std::size_t>(grp.order) * grp.order * grp.order);
  for (int x = 0; x < grp.order; ++x)
    for (int y = 0; y < grp.order; ++y)
      for (int z = 0; z < grp.order; ++z)
        op.set(x, y, z, grp.times(grp.times(x, grp.inv[static_cast<std::size_t>(y)]), z));
  return op;
}

// The four equivalent definitions: D1 = para-associativity + absorption,
// D2 = transfer identities + absorption, D4 = surjectivity B + transfer,
// D5 = surjectivity C + transfer.
enum class HeapDef { d1, d2, d4, d5 };

struct HeapViolation {
  std::string identity;
  std::array<int, 5> args{};
};

enum class SurjCondition { b, c };

inline bool check_surjectivity(const FiniteTernaryOp& op, SurjCondition cond) {
  const int g = op.g;
  std::vector<bool> hit(static_cast<std::size_t>(g));
  const auto surjective = [&](auto&& fn) {
    std::fill(hit.begin(), hit.end(), false);
    for (int x = 0; x < g; ++x) hit[static_cast<std::size_t>(fn(x))] = true;
    for (bool h : hit)
      if (!h) return false;
    return true;
  };
  if (cond == SurjCondition::b) {
    for (int q = 0; q < g; ++q)
      for (int h = 0; h < g; ++h) {
        if (!surjective([&](int x) { return op.at(x, q, h); })) return false;
        if (!surjective([&](int x) { return op.at(q, x, h); })) return false;
        if (!surjective([&](int x) { return op.at(q, h, x); })) return false;
      }
    return true;
  }
  for (int q = 0; q < g; ++q) {
    if (!surjective([&](int x) { return op.at(x, q, q); })) return false;
    if (!surjective([&](int x) { return op.at(q, q, x); })) return false;
  }
  return true;
}

enum class CheckMode { exhaustive, sampled };

// Violations of the chosen definition's identities. Exhaustive mode walks
// every tuple (carriers up to ~12); sampled mode draws tuples.
inline std::vector<HeapViolation> check_heap_identities(const FiniteTernaryOp& op,
                                                        HeapDef def,
                                                        CheckMode mode = CheckMode::exhaustive,
                                                        int n_samples = 2000,
                                                        Rng* rng = nullptr) {
  std::vector<HeapViolation> out;
  const int g = op.g;
  const auto add = [&](const char* which, int x, int y, int z, int s, int u) {
    out.push_back({which, {x, y, z, s, u}});
  };

  const auto absorption = [&](int x, int y) {
    if (op.at(x, y, y) != x) add("phi(x,y,y)=x", x, y, y, -1, -1);
    if (op.at(y, y, x) != x) add("phi(y,y,x)=x", x, y, y, -1, -1);
  };
  const auto para = [&](int x, int y, int z, int u, int v) {
    if (op.at(op.at(x, y, z), u, v) != op.at(x, y, op.at(z, u, v)))
      add("phi(phi(x,y,z),u,v)=phi(x,y,phi(z,u,v))", x, y, z, u, v);
  };
  const auto transfer = [&](int x, int y, int z, int s) {
    const int direct = op.at(x, y, z);
    if (direct != op.at(op.at(x, y, s), s, z))
      add("phi(x,y,z)=phi(phi(x,y,s),s,z)", x, y, z, s, -1);
    if (direct != op.at(x, s, op.at(s, y, z)))
      add("phi(x,y,z)=phi(x,s,phi(s,y,z))", x, y, z, s, -1);
  };

  if (def == HeapDef::d4 || def == HeapDef::d5) {
    const SurjCondition cond = def == HeapDef::d4 ? SurjCondition::b : SurjCondition::c;
    if (!check_surjectivity(op, cond)) {
      add(def == HeapDef::d4 ? "condition B" : "condition C", -1, -1, -1, -1, -1);
      return out;
    }
  }

  if (mode == CheckMode::exhaustive) {
    if (def == HeapDef::d1 || def == HeapDef::d2) {
      for (int x = 0; x < g; ++x)
        for (int y = 0; y < g; ++y) absorption(x, y);
    }
    if (def == HeapDef::d1) {
      for (int x = 0; x < g; ++x)
        for (int y = 0; y < g; ++y)
          for (int z = 0; z < g; ++z)
            for (int u = 0; u < g; ++u)
              for (int v = 0; v < g; ++v) {
                para(x, y, z, u, v);
                if (!out.empty()) return out;
              }
    } else {
      for (int x = 0; x < g; ++x)
        for (int y = 0; y < g; ++y)
          for (int z = 0; z < g; ++z)
            for (int s = 0; s < g; ++s) {
              transfer(x, y, z, s);
              if (!out.empty()) return out;
            }
    }
    return out;
  }

  if (!rng) throw std::invalid_argument("sampled heap check needs an rng");
  for (int n = 0; n < n_samples && out.empty(); ++n) {
    const int x = rng->uniform_int(0, g - 1), y = rng->uniform_int(0, g - 1),
              z = rng->uniform_int(0, g - 1), s = rng->uniform_int(0, g - 1),
              u = rng->uniform_int(0, g - 1);
    if (def == HeapDef::d1) {
      absorption(x, y);
      para(x, y, z, s, u);
    } else if (def == HeapDef::d2) {
      absorption(x, y);
      transfer(x, y, z, s);
    } else {
      transfer(x, y, z, s);
    }
  }
  return out;
}

inline bool is_heap(const FiniteTernaryOp& op, HeapDef def) {
  return check_heap_identities(op, def).empty();
}

// A finite two-set "distance" table with values in the carrier.
struct FiniteTable {
  int rows = 0;
  int cols = 0;
  int g = 0;
  std::vector<std::uint8_t> v;

  int at(int i, int a) const { return v[static_cast<std::size_t>(i * cols + a)]; }
  void set(int i, int a, int value) {
    v[static_cast<std::size_t>(i * cols + a)] = static_cast<std::uint8_t>(value);
  }
};

// Condition A: every row map and every column map onto the carrier.
inline bool check_table_surjective(const FiniteTable& t) {
  std::vector<bool> hit(static_cast<std::size_t>(t.g));
  for (int a = 0; a < t.cols; ++a) {
    std::fill(hit.begin(), hit.end(), false);
    for (int i = 0; i < t.rows; ++i) hit[static_cast<std::size_t>(t.at(i, a))] = true;
    for (bool h : hit)
      if (!h) return false;
  }
  for (int i = 0; i < t.rows; ++i) {
    std::fill(hit.begin(), hit.end(), false);
    for (int a = 0; a < t.cols; ++a) hit[static_cast<std::size_t>(t.at(i, a))] = true;
    for (bool h : hit)
      if (!h) return false;
  }
  return true;
}

struct StructureRelationViolation {
  int i, j, a, b;
};

// The rank-(2,2) structure relation f(ia) = phi(f(ib), f(jb), f(ja)),
// checked exhaustively over all corteges of the table.
inline std::vector<StructureRelationViolation> check_structure_relation(
    const FiniteTable& t, const FiniteTernaryOp& op) {
  std::vector<StructureRelationViolation> out;
  for (int i = 0; i < t.rows; ++i)
    for (int j = 0; j < t.rows; ++j)
      for (int a = 0; a < t.cols; ++a)
        for (int b = 0; b < t.cols; ++b)
          if (t.at(i, a) != op.at(t.at(i, b), t.at(j, b), t.at(j, a)))
            out.push_back({i, j, a, b});
  return out;
}

}  // namespace pstruct
