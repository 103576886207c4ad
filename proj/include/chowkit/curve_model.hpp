#pragma once

// Dual-graph model of weighted pointed nodal curves and degree bookkeeping
// for omega, omega(a.x), Laplacian twists and subcurves.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chowkit/rational.hpp"

namespace chowkit {

struct Component {
  std::string id;
  int genus = 0;
};

struct MarkedPoint {
  std::size_t component = 0;
  std::string label;
  Rational weight;
  std::optional<std::string> group;
};

/// Node between two components, stored as component indices with first <= second.
/// first == second is a self-node.
struct Node {
  std::size_t first = 0;
  std::size_t second = 0;
};

/// Raw description accepted by NodalCurve::make; ids refer to components.
struct CurveDescription {
  struct Point {
    std::string on;
    std::string label;
    Rational weight;
    std::optional<std::string> group;
  };
  std::vector<Component> components;
  std::vector<std::pair<std::string, std::string>> nodes;
  std::vector<Point> points;
};

/// Validated, immutable weighted pointed nodal curve.
class NodalCurve {
 public:
  /// Validates connectivity, weights in (0,1] (zero weights are dropped),
  /// known component ids, and total weight <= 1 per coincidence group.
  /// Throws InputError.
  static NodalCurve make(const CurveDescription& description);

  std::size_t component_count() const { return components_.size(); }
  const std::vector<Component>& components() const { return components_; }
  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<MarkedPoint>& points() const { return points_; }

  /// Index of a component id; throws InputError for unknown ids.
  std::size_t index_of(const std::string& id) const;

  /// Number of nodes joining components i and j (i != j), or self-nodes on i (i == j).
  int node_count(std::size_t i, std::size_t j) const;

  /// Sum of marked-point weights on component i.
  const Rational& weight_on(std::size_t i) const { return weight_on_[i]; }
  Rational total_weight() const;

 private:
  NodalCurve() = default;

  std::vector<Component> components_;
  std::vector<Node> nodes_;
  std::vector<MarkedPoint> points_;
  std::vector<std::vector<int>> adjacency_;
  std::vector<Rational> weight_on_;
};

/// Nonempty set of components, as a bit mask over component indices.
class Subcurve {
 public:
  Subcurve() = default;
  explicit Subcurve(std::uint64_t mask) : mask_(mask) {}

  /// Throws InputError on unknown ids or an empty list.
  static Subcurve of(const NodalCurve& curve, const std::vector<std::string>& ids);
  static Subcurve whole(const NodalCurve& curve);

  std::uint64_t mask() const { return mask_; }
  bool contains(std::size_t i) const { return (mask_ >> i) & 1U; }
  Subcurve complement(const NodalCurve& curve) const;
  bool is_whole(const NodalCurve& curve) const;
  std::vector<std::size_t> members() const;
  std::vector<std::string> member_ids(const NodalCurve& curve) const;

  friend bool operator==(const Subcurve&, const Subcurve&) = default;

 private:
  std::uint64_t mask_ = 0;
};

/// Per-component degrees, indexed like NodalCurve::components().
struct Multidegree {
  std::vector<Rational> degrees;

  Rational total() const;
  Rational on(const Subcurve& y) const;
  bool all_integral() const;

  Multidegree& operator+=(const Multidegree& other);
  friend Multidegree operator+(Multidegree a, const Multidegree& b) { return a += b; }
  friend Multidegree operator*(const Rational& s, Multidegree m) {
    for (auto& d : m.degrees) d *= s;
    return m;
  }
  friend bool operator==(const Multidegree&, const Multidegree&) = default;
};

enum class Weighting { plain, with_weights };

inline constexpr std::size_t kDefaultSubcurveLimit = 24;

int arithmetic_genus(const NodalCurve& curve);

/// Number of nodes with exactly one branch on y.
int boundary_length(const NodalCurve& curve, const Subcurve& y);

/// Nodes with both branches on y, self-nodes included.
int internal_nodes(const NodalCurve& curve, const Subcurve& y);

/// deg(omega_X|_Y) = sum(2g_i - 2) + 2 * internal nodes + boundary length.
long omega_degree_on(const NodalCurve& curve, const Subcurve& y);

Rational log_omega_degree_on(const NodalCurve& curve, const Subcurve& y,
                             Weighting which = Weighting::with_weights);

/// Component degrees of omega_X^r(r a.x).
Multidegree canonical_multidegree(const NodalCurve& curve, const Rational& r);

/// Multidegree of O_X(sum b_i X_i): component j gets sum_{i != j} n_ij (b_i - b_j).
Multidegree twist_degrees(const NodalCurve& curve, const std::vector<std::int64_t>& b);

/// Every nonempty subcurve, or with dedup_complements one representative per
/// complementary pair of proper subcurves (those missing the last component).
/// Ordered by mask. Throws SizeLimitError when component count > limit.
std::vector<Subcurve> enumerate_subcurves(const NodalCurve& curve, bool dedup_complements,
                                          std::size_t limit = kDefaultSubcurveLimit);

}  // namespace chowkit
