#pragma once

// Cyclic quotient surface singularities 1/m(1,q): Hirzebruch-Jung chains,
// class T recognition, fundamental-cycle multiplicity, the (dim+1)!
// multiplicity bound, and weighted-blowup lattice arithmetic.

#include <cstdint>
#include <optional>
#include <vector>

namespace chowkit {

/// Type 1/m(1,q) with 0 < q < m and gcd(m, q) = 1.
struct QuotientType {
  std::int64_t m = 0;
  std::int64_t q = 0;

  /// Throws InputError unless the invariants hold.
  static QuotientType make(std::int64_t m, std::int64_t q);

  friend bool operator==(const QuotientType&, const QuotientType&) = default;
};

/// Hirzebruch-Jung chain (b_1, ..., b_k), every b_i >= 2.
struct ChainData {
  std::vector<std::int64_t> entries;

  /// Throws InputError on an empty chain or an entry < 2.
  static ChainData make(std::vector<std::int64_t> entries);

  friend bool operator==(const ChainData&, const ChainData&) = default;
};

/// m = d n^2, q = d n a - 1, gcd(a, n) = 1.
struct TDecomposition {
  std::int64_t d = 0;
  std::int64_t n = 0;
  std::int64_t a = 0;

  friend bool operator==(const TDecomposition&, const TDecomposition&) = default;
};

/// Minus-sign continued fraction m/q = b_1 - 1/(b_2 - 1/(...)).
ChainData hj_expand(const QuotientType& t);
QuotientType hj_contract(const ChainData& chain);

/// -Z^2 of the reduced fundamental cycle: sum b_i - 2(k - 1).
std::int64_t multiplicity(const ChainData& chain);

/// Decomposition of 1/m(1,q) as 1/(dn^2)(1, dna-1). du Val types (n = 1)
/// are accepted only with include_du_val.
std::optional<TDecomposition> t_recognize(const QuotientType& t, bool include_du_val = true);

/// Whether the chain is produced by the T-chain recursion: bases (4) and
/// (3, 2, ..., 2, 3), and steps (b_1..b_k) -> (2, b_1..b_k + 1) and
/// (b_1 + 1..b_k, 2). All-2 chains count only with include_du_val.
bool t_chain_check(const ChainData& chain, bool include_du_val = false);

/// Indices i with mults[i] > (dim + 1)!.
std::vector<std::size_t> mumford_check(int dim, const std::vector<std::int64_t>& mults);

/// (dim + 1)!, saturating at INT64_MAX.
std::int64_t mumford_bound(int dim);

/// min over monomials of sum_j e_j w_j.
std::int64_t weighted_order(const std::vector<std::vector<std::int64_t>>& monomials,
                            const std::vector<std::int64_t>& weights);

/// Discrepancy of the exceptional divisor of a weighted blowup of a smooth point.
std::int64_t wb_discrepancy(const std::vector<std::int64_t>& weights);

struct KollarReport {
  std::int64_t degree = 0;
  std::vector<std::int64_t> blowup_weights;
  std::int64_t discrepancy = 0;
  std::int64_t order = 0;
  std::int64_t adjoint_coefficient = 0;
  std::int64_t ampleness_threshold = 0;
  bool ample = false;
  QuotientType singularity;
  ChainData chain;
  std::int64_t multiplicity = 0;
  std::int64_t mumford_bound = 0;
  bool mumford_violated = false;
};

/// Numerics of the degree-m hypersurface family with a (1,5,6,1) weighted
/// blowup at the singular point of the central fiber. Requires m > 4.
KollarReport kollar_family_report(std::int64_t m);

}  // namespace chowkit
