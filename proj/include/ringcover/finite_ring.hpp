#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "ringcover/smith.hpp"

namespace ringcover {

using Bitset = boost::dynamic_bitset<>;

enum class RingDefect { ill_formed, not_associative };

/// Raised by FiniteRing::make when the structure constants do not define a
/// ring. Carries the offending basis indices as a witness.
class RingValidationError : public std::runtime_error {
 public:
  RingValidationError(RingDefect defect, std::array<std::size_t, 3> witness,
                      const std::string& msg)
      : std::runtime_error(msg), defect_(defect), witness_(witness) {}

  RingDefect defect() const { return defect_; }
  const std::array<std::size_t, 3>& witness() const { return witness_; }

 private:
  RingDefect defect_;
  std::array<std::size_t, 3> witness_;
};

class BoundExceeded : public std::runtime_error {
 public:
  explicit BoundExceeded(const std::string& msg) : std::runtime_error(msg) {}
};

/// Finite ring presented by structure constants over ⊕ Z/d_t.
///
/// Elements are indexed 0..order-1 by mixed-radix encoding of their
/// coordinate vectors; index 0 is the additive zero. Addition and
/// multiplication tables are materialized at construction, after which every
/// query is a lookup. Instances are immutable.
class FiniteRing {
 public:
  using Index = std::uint32_t;
  using Coords = std::vector<std::uint32_t>;
  using Table = std::vector<std::vector<Coords>>;

  static constexpr std::size_t kMaxOrder = 1024;

  /// Validates and builds a ring. Throws RingValidationError on a malformed
  /// table (defect ill_formed) or an associativity failure on a basis triple
  /// (defect not_associative, witness = the triple).
  static FiniteRing make(std::vector<std::uint32_t> moduli, Table table) {
    FiniteRing r;
    r.moduli_ = std::move(moduli);
    const std::size_t k = r.moduli_.size();
    std::size_t order = 1;
    for (std::uint32_t d : r.moduli_) {
      if (d < 2) {
        throw RingValidationError(RingDefect::ill_formed, {0, 0, 0},
                                  "modulus below 2");
      }
      order *= d;
      if (order > kMaxOrder) {
        throw BoundExceeded("ring order exceeds " + std::to_string(kMaxOrder));
      }
    }
    r.order_ = order;

    if (table.size() != k) {
      throw RingValidationError(RingDefect::ill_formed, {0, 0, 0},
                                "table must be k x k");
    }
    r.table_.assign(k * k, 0);
    for (std::size_t i = 0; i < k; ++i) {
      if (table[i].size() != k) {
        throw RingValidationError(RingDefect::ill_formed, {i, 0, 0},
                                  "table must be k x k");
      }
      for (std::size_t j = 0; j < k; ++j) {
        const Coords& c = table[i][j];
        if (c.size() != k) {
          throw RingValidationError(RingDefect::ill_formed, {i, j, 0},
                                    "entry has wrong coordinate count");
        }
        for (std::size_t t = 0; t < k; ++t) {
          if (c[t] >= r.moduli_[t]) {
            throw RingValidationError(RingDefect::ill_formed, {i, j, t},
                                      "coordinate out of range");
          }
        }
        // Bilinear extension is well defined iff d_i * (e_i e_j) = 0 and
        // d_j * (e_i e_j) = 0 in the additive group.
        for (std::size_t t = 0; t < k; ++t) {
          if ((std::uint64_t(r.moduli_[i]) * c[t]) % r.moduli_[t] != 0 ||
              (std::uint64_t(r.moduli_[j]) * c[t]) % r.moduli_[t] != 0) {
            throw RingValidationError(
                RingDefect::ill_formed, {i, j, t},
                "structure constant not annihilated by its moduli");
          }
        }
        r.table_[i * k + j] = r.encode(c);
      }
    }

    r.build_tables();

    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) {
        for (std::size_t l = 0; l < k; ++l) {
          const Index lhs = r.mul(r.mul(r.basis(i), r.basis(j)), r.basis(l));
          const Index rhs = r.mul(r.basis(i), r.mul(r.basis(j), r.basis(l)));
          if (lhs != rhs) {
            throw RingValidationError(RingDefect::not_associative, {i, j, l},
                                      "associativity fails on basis triple");
          }
        }
      }
    }

    r.find_identity();
    return r;
  }

  std::size_t order() const { return order_; }
  std::size_t rank() const { return moduli_.size(); }
  const std::vector<std::uint32_t>& moduli() const { return moduli_; }

  Index zero() const { return 0; }
  Index basis(std::size_t t) const {
    Coords c(rank(), 0);
    c[t] = 1;
    return encode(c);
  }
  Index table_entry(std::size_t i, std::size_t j) const {
    return table_[i * rank() + j];
  }

  Index add(Index a, Index b) const { return add_[a * order_ + b]; }
  Index neg(Index a) const { return neg_[a]; }
  Index sub(Index a, Index b) const { return add(a, neg(b)); }
  Index mul(Index a, Index b) const { return mul_[a * order_ + b]; }

  Index scalar_mul(std::uint64_t c, Index a) const {
    Coords v = decode(a);
    for (std::size_t t = 0; t < v.size(); ++t) {
      v[t] = static_cast<std::uint32_t>((std::uint64_t(v[t]) * c) % moduli_[t]);
    }
    return encode(v);
  }

  Index encode(const Coords& c) const {
    Index idx = 0;
    for (std::size_t t = rank(); t-- > 0;) {
      idx = idx * moduli_[t] + c[t];
    }
    return idx;
  }

  Coords decode(Index idx) const {
    Coords c(rank());
    for (std::size_t t = 0; t < rank(); ++t) {
      c[t] = idx % moduli_[t];
      idx /= moduli_[t];
    }
    return c;
  }

  std::uint32_t additive_order(Index a) const {
    Coords c = decode(a);
    std::uint64_t n = 1;
    for (std::size_t t = 0; t < rank(); ++t) {
      const std::uint64_t o = moduli_[t] / std::gcd<std::uint64_t>(moduli_[t], c[t]);
      n = std::lcm(n, o);
    }
    return static_cast<std::uint32_t>(n);
  }

  /// The unique two-sided multiplicative identity, if one exists.
  std::optional<Index> identity() const { return identity_; }

  /// Canonical cyclic decomposition of (R, +); equal iff additive groups are
  /// isomorphic.
  std::vector<std::uint32_t> additive_invariants() const {
    return abelian_invariant_factors(moduli_);
  }

  bool same_presentation(const FiniteRing& o) const {
    return moduli_ == o.moduli_ && table_ == o.table_;
  }

 private:
  void build_tables() {
    const std::size_t n = order_;
    const std::size_t k = rank();
    add_.assign(n * n, 0);
    neg_.assign(n, 0);
    mul_.assign(n * n, 0);

    std::vector<Coords> coords(n);
    for (Index a = 0; a < n; ++a) coords[a] = decode(a);

    for (Index a = 0; a < n; ++a) {
      for (Index b = 0; b < n; ++b) {
        Coords s(k);
        for (std::size_t t = 0; t < k; ++t) {
          s[t] = (coords[a][t] + coords[b][t]) % moduli_[t];
        }
        add_[a * n + b] = encode(s);
      }
      Coords m(k);
      for (std::size_t t = 0; t < k; ++t) {
        m[t] = (moduli_[t] - coords[a][t]) % moduli_[t];
      }
      neg_[a] = encode(m);
    }

    for (Index a = 0; a < n; ++a) {
      for (Index b = 0; b < n; ++b) {
        Coords acc(k, 0);
        for (std::size_t t = 0; t < k; ++t) {
          if (coords[a][t] == 0) continue;
          for (std::size_t u = 0; u < k; ++u) {
            if (coords[b][u] == 0) continue;
            const std::uint64_t coef =
                std::uint64_t(coords[a][t]) * coords[b][u];
            const Coords& e = decode(table_[t * k + u]);
            for (std::size_t w = 0; w < k; ++w) {
              acc[w] = static_cast<std::uint32_t>(
                  (acc[w] + coef % moduli_[w] * e[w]) % moduli_[w]);
            }
          }
        }
        mul_[a * n + b] = encode(acc);
      }
    }
  }

  void find_identity() {
    for (Index e = 0; e < order_; ++e) {
      bool ok = true;
      for (Index x = 0; x < order_ && ok; ++x) {
        ok = mul(e, x) == x && mul(x, e) == x;
      }
      if (ok) {
        identity_ = e;
        return;
      }
    }
    identity_ = std::nullopt;
  }

  std::vector<std::uint32_t> moduli_;
  std::size_t order_ = 1;
  std::vector<Index> table_;
  std::vector<Index> add_, neg_, mul_;
  std::optional<Index> identity_;
};

/// Subset of a ring's elements, kept as a bit set over element indices.
struct Subring {
  const FiniteRing* ring = nullptr;
  Bitset members;

  std::size_t size() const { return members.count(); }
  bool contains(FiniteRing::Index a) const { return members.test(a); }
  bool operator==(const Subring& o) const { return members == o.members; }
};

inline Bitset singleton_zero(const FiniteRing& r) {
  Bitset b(r.order());
  b.set(0);
  return b;
}

inline Bitset full_set(const FiniteRing& r) {
  Bitset b(r.order());
  b.set();
  return b;
}

inline bool is_additive_subgroup(const FiniteRing& r, const Bitset& s) {
  if (!s.test(0)) return false;
  for (auto a = s.find_first(); a != Bitset::npos; a = s.find_next(a)) {
    for (auto b = s.find_first(); b != Bitset::npos; b = s.find_next(b)) {
      if (!s.test(r.add(static_cast<FiniteRing::Index>(a),
                        static_cast<FiniteRing::Index>(b))))
        return false;
    }
    if (!s.test(r.neg(static_cast<FiniteRing::Index>(a)))) return false;
  }
  return true;
}

inline bool is_mult_closed(const FiniteRing& r, const Bitset& s) {
  for (auto a = s.find_first(); a != Bitset::npos; a = s.find_next(a)) {
    for (auto b = s.find_first(); b != Bitset::npos; b = s.find_next(b)) {
      if (!s.test(r.mul(static_cast<FiniteRing::Index>(a),
                        static_cast<FiniteRing::Index>(b))))
        return false;
    }
  }
  return true;
}

inline bool is_subring_set(const FiniteRing& r, const Bitset& s) {
  return is_additive_subgroup(r, s) && is_mult_closed(r, s);
}

inline bool is_ideal_set(const FiniteRing& r, const Bitset& s) {
  if (!is_additive_subgroup(r, s)) return false;
  for (auto a = s.find_first(); a != Bitset::npos; a = s.find_next(a)) {
    for (FiniteRing::Index x = 0; x < r.order(); ++x) {
      if (!s.test(r.mul(x, static_cast<FiniteRing::Index>(a))) ||
          !s.test(r.mul(static_cast<FiniteRing::Index>(a), x)))
        return false;
    }
  }
  return true;
}

/// Smallest subring containing the seed set.
inline Bitset subring_closure(const FiniteRing& r, Bitset seed) {
  seed.resize(r.order());
  seed.set(0);
  std::vector<FiniteRing::Index> work;
  for (auto a = seed.find_first(); a != Bitset::npos; a = seed.find_next(a)) {
    work.push_back(static_cast<FiniteRing::Index>(a));
  }
  std::vector<FiniteRing::Index> members(work);
  auto push = [&](FiniteRing::Index v) {
    if (!seed.test(v)) {
      seed.set(v);
      work.push_back(v);
      members.push_back(v);
    }
  };
  while (!work.empty()) {
    const FiniteRing::Index a = work.back();
    work.pop_back();
    push(r.neg(a));
    for (FiniteRing::Index b : members) {
      push(r.add(a, b));
      push(r.mul(a, b));
      push(r.mul(b, a));
    }
  }
  return seed;
}

/// Smallest two-sided ideal containing the seed set.
inline Bitset ideal_closure(const FiniteRing& r, Bitset seed) {
  seed.resize(r.order());
  seed.set(0);
  std::vector<FiniteRing::Index> work;
  for (auto a = seed.find_first(); a != Bitset::npos; a = seed.find_next(a)) {
    work.push_back(static_cast<FiniteRing::Index>(a));
  }
  std::vector<FiniteRing::Index> members(work);
  auto push = [&](FiniteRing::Index v) {
    if (!seed.test(v)) {
      seed.set(v);
      work.push_back(v);
      members.push_back(v);
    }
  };
  while (!work.empty()) {
    const FiniteRing::Index a = work.back();
    work.pop_back();
    push(r.neg(a));
    for (FiniteRing::Index b : members) push(r.add(a, b));
    for (FiniteRing::Index x = 0; x < r.order(); ++x) {
      push(r.mul(x, a));
      push(r.mul(a, x));
    }
  }
  return seed;
}

/// Opposite ring: same additive group, transposed structure constants.
inline FiniteRing opposite(const FiniteRing& r) {
  const std::size_t k = r.rank();
  FiniteRing::Table t(k, std::vector<FiniteRing::Coords>(k));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      t[i][j] = r.decode(r.table_entry(j, i));
    }
  }
  return FiniteRing::make(r.moduli(), std::move(t));
}

/// The ideal 2R = {r + r : r in R}.
inline Subring two_r(const FiniteRing& r) {
  Bitset s(r.order());
  for (FiniteRing::Index a = 0; a < r.order(); ++a) s.set(r.add(a, a));
  return Subring{&r, std::move(s)};
}

/// (|{a : aR = 0}|, |{a : Ra = 0}|).
inline std::pair<std::size_t, std::size_t> annihilator_sizes(
    const FiniteRing& r) {
  std::size_t left = 0, right = 0;
  for (FiniteRing::Index a = 0; a < r.order(); ++a) {
    bool la = true, ra = true;
    for (FiniteRing::Index x = 0; x < r.order(); ++x) {
      la = la && r.mul(a, x) == 0;
      ra = ra && r.mul(x, a) == 0;
    }
    left += la;
    right += ra;
  }
  return {left, right};
}

/// R* = R ⊕ <u> with u + u = 0 and u a two-sided identity. Returns the new
/// ring and the embedding of R's element indices.
inline std::pair<FiniteRing, std::vector<FiniteRing::Index>> unitalize(
    const FiniteRing& r) {
  const std::size_t k = r.rank();
  std::vector<std::uint32_t> moduli = r.moduli();
  moduli.push_back(2);
  FiniteRing::Table t(k + 1, std::vector<FiniteRing::Coords>(k + 1));
  auto lift = [&](FiniteRing::Index a) {
    FiniteRing::Coords c = r.decode(a);
    c.push_back(0);
    return c;
  };
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) t[i][j] = lift(r.table_entry(i, j));
    FiniteRing::Coords ei(k + 1, 0);
    ei[i] = 1;
    t[i][k] = ei;
    t[k][i] = ei;
  }
  FiniteRing::Coords u(k + 1, 0);
  u[k] = 1;
  t[k][k] = u;
  FiniteRing star = FiniteRing::make(std::move(moduli), std::move(t));
  std::vector<FiniteRing::Index> embed(r.order());
  for (FiniteRing::Index a = 0; a < r.order(); ++a) {
    embed[a] = star.encode(lift(a));
  }
  return {std::move(star), std::move(embed)};
}

inline FiniteRing direct_sum(const FiniteRing& r1, const FiniteRing& r2) {
  const std::size_t k1 = r1.rank(), k2 = r2.rank();
  std::vector<std::uint32_t> moduli = r1.moduli();
  moduli.insert(moduli.end(), r2.moduli().begin(), r2.moduli().end());
  FiniteRing::Table t(k1 + k2,
                      std::vector<FiniteRing::Coords>(
                          k1 + k2, FiniteRing::Coords(k1 + k2, 0)));
  for (std::size_t i = 0; i < k1; ++i) {
    for (std::size_t j = 0; j < k1; ++j) {
      FiniteRing::Coords c = r1.decode(r1.table_entry(i, j));
      c.resize(k1 + k2, 0);
      t[i][j] = std::move(c);
    }
  }
  for (std::size_t i = 0; i < k2; ++i) {
    for (std::size_t j = 0; j < k2; ++j) {
      FiniteRing::Coords c2 = r2.decode(r2.table_entry(i, j));
      FiniteRing::Coords c(k1 + k2, 0);
      for (std::size_t w = 0; w < k2; ++w) c[k1 + w] = c2[w];
      t[k1 + i][k1 + j] = std::move(c);
    }
  }
  return FiniteRing::make(std::move(moduli), std::move(t));
}

/// The zero ring on ⊕ Z/moduli[i]; with an empty list, the order-1 ring.
inline FiniteRing zero_ring(const std::vector<std::uint32_t>& moduli) {
  const std::size_t k = moduli.size();
  FiniteRing::Table t(k, std::vector<FiniteRing::Coords>(
                             k, FiniteRing::Coords(k, 0)));
  return FiniteRing::make(moduli, std::move(t));
}

}  // namespace ringcover
