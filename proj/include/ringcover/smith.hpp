#pragma once

#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <vector>

namespace ringcover {

/// Smith diagonalization of an integer row lattice.
///
/// For an r-by-k integer matrix A, computes a unimodular k-by-k matrix Q
/// (and its inverse) together with non-negative diagonal entries d_0 | d_1 |
/// ... | d_{k-1} such that the row lattice of A, transported by z = x * Q,
/// becomes the diagonal lattice  ⊕ d_i * Z * e_i.
struct SmithForm {
  std::vector<long long> diag;
  std::vector<std::vector<long long>> q;
  std::vector<std::vector<long long>> q_inv;
};

inline SmithForm smith_normal_form(std::vector<std::vector<long long>> a,
                                   std::size_t k) {
  const std::size_t r = a.size();
  for (auto& row : a) {
    if (row.size() != k) {
      throw std::invalid_argument("smith_normal_form: ragged input matrix");
    }
  }

  SmithForm out;
  out.q.assign(k, std::vector<long long>(k, 0));
  out.q_inv.assign(k, std::vector<long long>(k, 0));
  for (std::size_t i = 0; i < k; ++i) {
    out.q[i][i] = 1;
    out.q_inv[i][i] = 1;
  }
  out.diag.assign(k, 0);

  auto col_swap = [&](std::size_t j1, std::size_t j2) {
    for (std::size_t i = 0; i < r; ++i) std::swap(a[i][j1], a[i][j2]);
    for (std::size_t i = 0; i < k; ++i) std::swap(out.q[i][j1], out.q[i][j2]);
    std::swap(out.q_inv[j1], out.q_inv[j2]);
  };
  // column dst += t * column src;  q_inv row src -= t * row dst
  auto col_add = [&](std::size_t dst, std::size_t src, long long t) {
    for (std::size_t i = 0; i < r; ++i) a[i][dst] += t * a[i][src];
    for (std::size_t i = 0; i < k; ++i) out.q[i][dst] += t * out.q[i][src];
    for (std::size_t j = 0; j < k; ++j)
      out.q_inv[src][j] -= t * out.q_inv[dst][j];
  };
  auto row_swap = [&](std::size_t i1, std::size_t i2) {
    std::swap(a[i1], a[i2]);
  };
  auto row_add = [&](std::size_t dst, std::size_t src, long long t) {
    for (std::size_t j = 0; j < k; ++j) a[dst][j] += t * a[src][j];
  };
  auto row_neg = [&](std::size_t i) {
    for (std::size_t j = 0; j < k; ++j) a[i][j] = -a[i][j];
  };

  std::size_t t = 0;
  while (t < k && t < r) {
    // Locate the non-zero entry of least magnitude in the trailing block.
    std::size_t pi = r, pj = k;
    long long best = 0;
    for (std::size_t i = t; i < r; ++i) {
      for (std::size_t j = t; j < k; ++j) {
        const long long v = std::llabs(a[i][j]);
        if (v != 0 && (best == 0 || v < best)) {
          best = v;
          pi = i;
          pj = j;
        }
      }
    }
    if (best == 0) break;
    if (pi != t) row_swap(t, pi);
    if (pj != t) col_swap(t, pj);

    bool clean = true;
    for (std::size_t i = t + 1; i < r; ++i) {
      if (a[i][t] != 0) {
        row_add(i, t, -(a[i][t] / a[t][t]));
        if (a[i][t] != 0) clean = false;
      }
    }
    for (std::size_t j = t + 1; j < k; ++j) {
      if (a[t][j] != 0) {
        col_add(j, t, -(a[t][j] / a[t][t]));
        if (a[t][j] != 0) clean = false;
      }
    }
    if (!clean) continue;  // smaller remainders appeared; pick pivot again

    // Enforce the divisibility chain: fold any non-divisible entry into row t.
    bool divisible = true;
    for (std::size_t i = t + 1; i < r && divisible; ++i) {
      for (std::size_t j = t + 1; j < k; ++j) {
        if (a[i][j] % a[t][t] != 0) {
          row_add(t, i, 1);
          divisible = false;
          break;
        }
      }
    }
    if (!divisible) continue;

    if (a[t][t] < 0) row_neg(t);
    out.diag[t] = a[t][t];
    ++t;
  }
  return out;
}

/// Canonical invariant factors (> 1, divisibility-ordered) of ⊕ Z/moduli[i].
inline std::vector<std::uint32_t> abelian_invariant_factors(
    const std::vector<std::uint32_t>& moduli) {
  const std::size_t k = moduli.size();
  std::vector<std::vector<long long>> rel(k, std::vector<long long>(k, 0));
  for (std::size_t i = 0; i < k; ++i) rel[i][i] = moduli[i];
  SmithForm sf = smith_normal_form(rel, k);
  std::vector<std::uint32_t> out;
  for (long long d : sf.diag) {
    if (d > 1) out.push_back(static_cast<std::uint32_t>(d));
  }
  return out;
}

}  // namespace ringcover
