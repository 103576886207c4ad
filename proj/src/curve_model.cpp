#include "chowkit/curve_model.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "chowkit/errors.hpp"

namespace chowkit {

NodalCurve NodalCurve::make(const CurveDescription& d) {
  NodalCurve c;
  if (d.components.empty()) throw InputError("curve has no components");
  if (d.components.size() > 63) throw InputError("more than 63 components are not supported");

  std::map<std::string, std::size_t> index;
  for (const auto& comp : d.components) {
    if (comp.id.empty()) throw InputError("component with empty id");
    if (comp.genus < 0) throw InputError("component '" + comp.id + "' has negative genus");
    if (!index.emplace(comp.id, c.components_.size()).second)
      throw InputError("duplicate component id '" + comp.id + "'");
    c.components_.push_back(comp);
  }
  const auto lookup = [&](const std::string& id) {
    auto it = index.find(id);
    if (it == index.end()) throw InputError("unknown component id '" + id + "'");
    return it->second;
  };

  const std::size_t n = c.components_.size();
  c.adjacency_.assign(n, std::vector<int>(n, 0));
  for (const auto& [a, b] : d.nodes) {
    std::size_t i = lookup(a);
    std::size_t j = lookup(b);
    if (i > j) std::swap(i, j);
    c.nodes_.push_back({i, j});
    ++c.adjacency_[i][j];
    if (i != j) ++c.adjacency_[j][i];
  }

  // Connectivity of the dual graph.
  std::vector<bool> seen(n, false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  while (!stack.empty()) {
    const std::size_t v = stack.back();
    stack.pop_back();
    for (std::size_t w = 0; w < n; ++w) {
      if (w != v && c.adjacency_[v][w] > 0 && !seen[w]) {
        seen[w] = true;
        stack.push_back(w);
      }
    }
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end())
    throw InputError("dual graph is not connected");

  c.weight_on_.assign(n, Rational(0));
  std::map<std::string, std::pair<std::size_t, Rational>> groups;
  std::set<std::string> labels;
  for (const auto& p : d.points) {
    const std::size_t on = lookup(p.on);
    if (p.weight.sign() < 0 || p.weight > Rational(1))
      throw InputError("weight of point '" + p.label + "' is outside [0,1]");
    if (!labels.insert(p.label).second) throw InputError("duplicate point label '" + p.label + "'");
    if (p.weight.is_zero()) continue;
    if (p.group) {
      auto [it, inserted] = groups.try_emplace(*p.group, on, Rational(0));
      if (!inserted && it->second.first != on)
        throw InputError("coincidence group '" + *p.group + "' spans several components");
      it->second.second += p.weight;
      if (it->second.second > Rational(1))
        throw InputError("total weight of coincidence group '" + *p.group + "' exceeds 1");
    }
    c.points_.push_back({on, p.label, p.weight, p.group});
    c.weight_on_[on] += p.weight;
  }
  return c;
}

std::size_t NodalCurve::index_of(const std::string& id) const {
  for (std::size_t i = 0; i < components_.size(); ++i)
    if (components_[i].id == id) return i;
  throw InputError("unknown component id '" + id + "'");
}

int NodalCurve::node_count(std::size_t i, std::size_t j) const { return adjacency_[i][j]; }

Rational NodalCurve::total_weight() const {
  return std::accumulate(weight_on_.begin(), weight_on_.end(), Rational(0));
}

Subcurve Subcurve::of(const NodalCurve& curve, const std::vector<std::string>& ids) {
  if (ids.empty()) throw InputError("subcurve must be nonempty");
  std::uint64_t mask = 0;
  for (const auto& id : ids) mask |= std::uint64_t{1} << curve.index_of(id);
  return Subcurve(mask);
}

Subcurve Subcurve::whole(const NodalCurve& curve) {
  const std::size_t n = curve.component_count();
  return Subcurve(n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
}

Subcurve Subcurve::complement(const NodalCurve& curve) const {
  return Subcurve(whole(curve).mask() & ~mask_);
}

bool Subcurve::is_whole(const NodalCurve& curve) const { return mask_ == whole(curve).mask(); }

std::vector<std::size_t> Subcurve::members() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < 64; ++i)
    if (contains(i)) out.push_back(i);
  return out;
}

std::vector<std::string> Subcurve::member_ids(const NodalCurve& curve) const {
  std::vector<std::string> out;
  for (std::size_t i : members()) out.push_back(curve.components()[i].id);
  return out;
}

Rational Multidegree::total() const {
  return std::accumulate(degrees.begin(), degrees.end(), Rational(0));
}

Rational Multidegree::on(const Subcurve& y) const {
  Rational s = 0;
  for (std::size_t i = 0; i < degrees.size(); ++i)
    if (y.contains(i)) s += degrees[i];
  return s;
}

bool Multidegree::all_integral() const {
  return std::all_of(degrees.begin(), degrees.end(), [](const Rational& r) { return r.is_integer(); });
}

Multidegree& Multidegree::operator+=(const Multidegree& other) {
  if (other.degrees.size() != degrees.size()) throw InputError("multidegree size mismatch");
  for (std::size_t i = 0; i < degrees.size(); ++i) degrees[i] += other.degrees[i];
  return *this;
}

int arithmetic_genus(const NodalCurve& curve) {
  int g = 0;
  for (const auto& c : curve.components()) g += c.genus;
  return g + static_cast<int>(curve.nodes().size()) - static_cast<int>(curve.component_count()) + 1;
}

int boundary_length(const NodalCurve& curve, const Subcurve& y) {
  int l = 0;
  for (const auto& node : curve.nodes())
    if (y.contains(node.first) != y.contains(node.second)) ++l;
  return l;
}

int internal_nodes(const NodalCurve& curve, const Subcurve& y) {
  int k = 0;
  for (const auto& node : curve.nodes())
    if (y.contains(node.first) && y.contains(node.second)) ++k;
  return k;
}

long omega_degree_on(const NodalCurve& curve, const Subcurve& y) {
  long deg = 0;
  for (std::size_t i : y.members()) {
    if (i >= curve.component_count()) throw InputError("subcurve refers to an unknown component");
    deg += 2L * curve.components()[i].genus - 2;
  }
  return deg + 2L * internal_nodes(curve, y) + boundary_length(curve, y);
}

Rational log_omega_degree_on(const NodalCurve& curve, const Subcurve& y, Weighting which) {
  Rational deg = Rational(static_cast<long long>(omega_degree_on(curve, y)));
  if (which == Weighting::with_weights)
    for (std::size_t i : y.members()) deg += curve.weight_on(i);
  return deg;
}

Multidegree canonical_multidegree(const NodalCurve& curve, const Rational& r) {
  if (r.sign() <= 0) throw InputError("polarization power r must be positive");
  Multidegree m;
  for (std::size_t i = 0; i < curve.component_count(); ++i) {
    const Subcurve single(std::uint64_t{1} << i);
    m.degrees.push_back(r * log_omega_degree_on(curve, single, Weighting::with_weights));
  }
  return m;
}

Multidegree twist_degrees(const NodalCurve& curve, const std::vector<std::int64_t>& b) {
  const std::size_t n = curve.component_count();
  if (b.size() != n) throw InputError("twist must assign an integer to every component");
  Multidegree m;
  m.degrees.assign(n, Rational(0));
  for (std::size_t j = 0; j < n; ++j) {
    long long d = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (i != j) d += static_cast<long long>(curve.node_count(i, j)) * (b[i] - b[j]);
    m.degrees[j] = Rational(d);
  }
  return m;
}

std::vector<Subcurve> enumerate_subcurves(const NodalCurve& curve, bool dedup_complements,
                                          std::size_t limit) {
  const std::size_t n = curve.component_count();
  if (n > limit || n > 63)
    throw SizeLimitError("subcurve enumeration over " + std::to_string(n) +
                         " components exceeds the limit of " + std::to_string(std::min<std::size_t>(limit, 63)));
  const std::size_t bits = dedup_complements ? n - 1 : n;
  const std::uint64_t end = std::uint64_t{1} << bits;
  std::vector<Subcurve> out;
  out.reserve(end > 0 ? end - 1 : 0);
  for (std::uint64_t mask = 1; mask < end; ++mask) out.emplace_back(mask);
  return out;
}

}  // namespace chowkit
