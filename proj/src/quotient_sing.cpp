#include "chowkit/quotient_sing.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

#include "chowkit/errors.hpp"

namespace chowkit {

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) throw InputError("integer overflow in chain arithmetic");
  return r;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_add_overflow(a, b, &r)) throw InputError("integer overflow in chain arithmetic");
  return r;
}

bool all_twos(const std::vector<std::int64_t>& e) {
  return std::all_of(e.begin(), e.end(), [](std::int64_t b) { return b == 2; });
}

bool is_t_base(const std::vector<std::int64_t>& e) {
  if (e.size() == 1) return e[0] == 4;
  if (e.front() != 3 || e.back() != 3) return false;
  return std::all_of(e.begin() + 1, e.end() - 1, [](std::int64_t b) { return b == 2; });
}

}  // namespace

QuotientType QuotientType::make(std::int64_t m, std::int64_t q) {
  if (m < 2 || q <= 0 || q >= m)
    throw InputError("quotient type 1/" + std::to_string(m) + "(1," + std::to_string(q) +
                     ") needs 0 < q < m");
  if (std::gcd(m, q) != 1)
    throw InputError("quotient type 1/" + std::to_string(m) + "(1," + std::to_string(q) +
                     ") needs gcd(m, q) = 1");
  return {m, q};
}

ChainData ChainData::make(std::vector<std::int64_t> entries) {
  if (entries.empty()) throw InputError("empty Hirzebruch-Jung chain");
  for (auto b : entries)
    if (b < 2) throw InputError("chain entry " + std::to_string(b) + " is below 2");
  return ChainData{std::move(entries)};
}

ChainData hj_expand(const QuotientType& t) {
  const QuotientType v = QuotientType::make(t.m, t.q);
  ChainData chain;
  std::int64_t num = v.m;
  std::int64_t den = v.q;
  while (den != 0) {
    const std::int64_t b = (num + den - 1) / den;  // ceil
    chain.entries.push_back(b);
    const std::int64_t next = b * den - num;
    num = den;
    den = next;
  }
  return chain;
}

QuotientType hj_contract(const ChainData& chain) {
  const ChainData c = ChainData::make(chain.entries);
  std::int64_t num = c.entries.back();
  std::int64_t den = 1;
  for (auto it = c.entries.rbegin() + 1; it != c.entries.rend(); ++it) {
    const std::int64_t next = checked_add(checked_mul(*it, num), -den);
    den = num;
    num = next;
  }
  return QuotientType{num, den};
}

std::int64_t multiplicity(const ChainData& chain) {
  const ChainData c = ChainData::make(chain.entries);
  std::int64_t sum = 0;
  for (auto b : c.entries) sum = checked_add(sum, b);
  return sum - 2 * static_cast<std::int64_t>(c.entries.size() - 1);
}

std::optional<TDecomposition> t_recognize(const QuotientType& t, bool include_du_val) {
  const QuotientType v = QuotientType::make(t.m, t.q);
  const std::int64_t e = v.q + 1;
  const std::int64_t h = std::gcd(e, v.m);
  const std::int64_t n = v.m / h;
  if (h % n != 0) return std::nullopt;
  if (n == 1 && !include_du_val) return std::nullopt;
  return TDecomposition{h / n, n, e / h};
}

bool t_chain_check(const ChainData& chain, bool include_du_val) {
  std::vector<std::int64_t> e = ChainData::make(chain.entries).entries;
  if (all_twos(e)) return include_du_val;
  while (true) {
    if (e.size() == 1) return e[0] == 4;
    const bool front_two = e.front() == 2;
    const bool back_two = e.back() == 2;
    if (!front_two && !back_two) return is_t_base(e);
    if (front_two && back_two) return false;
    if (front_two) {
      e.erase(e.begin());
      --e.back();
    } else {
      e.pop_back();
      --e.front();
    }
    if (std::any_of(e.begin(), e.end(), [](std::int64_t b) { return b < 2; })) return false;
  }
}

std::int64_t mumford_bound(int dim) {
  if (dim < 1) throw InputError("dimension must be positive");
  std::int64_t f = 1;
  for (std::int64_t k = 2; k <= dim + 1; ++k) {
    if (__builtin_mul_overflow(f, k, &f)) return std::numeric_limits<std::int64_t>::max();
  }
  return f;
}

std::vector<std::size_t> mumford_check(int dim, const std::vector<std::int64_t>& mults) {
  const std::int64_t bound = mumford_bound(dim);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < mults.size(); ++i) {
    if (mults[i] < 1) throw InputError("multiplicities must be positive");
    if (mults[i] > bound) out.push_back(i);
  }
  return out;
}

std::int64_t weighted_order(const std::vector<std::vector<std::int64_t>>& monomials,
                            const std::vector<std::int64_t>& weights) {
  if (monomials.empty()) throw InputError("weighted order of an empty monomial list");
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  for (const auto& mono : monomials) {
    if (mono.size() != weights.size())
      throw InputError("monomial has " + std::to_string(mono.size()) + " exponents for " +
                       std::to_string(weights.size()) + " weights");
    std::int64_t s = 0;
    for (std::size_t j = 0; j < mono.size(); ++j) {
      if (mono[j] < 0) throw InputError("negative exponent");
      s = checked_add(s, checked_mul(mono[j], weights[j]));
    }
    best = std::min(best, s);
  }
  return best;
}

std::int64_t wb_discrepancy(const std::vector<std::int64_t>& weights) {
  if (weights.empty()) throw InputError("weighted blowup needs at least one weight");
  std::int64_t s = 0;
  for (auto w : weights) {
    if (w < 1) throw InputError("blowup weights must be positive");
    s = checked_add(s, w);
  }
  return s - 1;
}

KollarReport kollar_family_report(std::int64_t m) {
  if (m <= 4) throw InputError("hypersurface degree must exceed 4");
  KollarReport r;
  r.degree = m;
  r.blowup_weights = {1, 5, 6, 1};
  // Local equation at (0,0,0,1) over (x, y, z, t): xyz^4 + y^6 + z^10 + t^30 + ...
  const std::vector<std::vector<std::int64_t>> monomials = {
      {1, 1, 4, 0}, {0, 6, 0, 0}, {0, 0, 10, 0}, {0, 0, 0, 30}};
  r.discrepancy = wb_discrepancy(r.blowup_weights);
  r.order = weighted_order(monomials, r.blowup_weights);
  r.adjoint_coefficient = r.order - r.discrepancy;
  r.ampleness_threshold = r.adjoint_coefficient + 4;
  r.ample = m > r.ampleness_threshold;
  // T-singularity of the exceptional component at the quotient point.
  r.singularity = QuotientType::make(180, 29);
  r.chain = hj_expand(r.singularity);
  r.multiplicity = multiplicity(r.chain);
  r.mumford_bound = mumford_bound(2);
  r.mumford_violated = r.multiplicity > r.mumford_bound;
  return r;
}

}  // namespace chowkit
