#include "eqm/group.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

#include "eqm/linalg.hpp"

namespace eqm::core {

FiniteSpace::FiniteSpace(std::vector<std::string> labels) : points(std::move(labels)) {
  if (points.empty()) throw ValidationError("FiniteSpace needs at least one point");
  std::set<std::string> seen(points.begin(), points.end());
  if (seen.size() != points.size())
    throw ValidationError("FiniteSpace labels must be distinct");
}

int FiniteSpace::index_of(const std::string& label) const {
  auto it = std::find(points.begin(), points.end(), label);
  if (it == points.end()) throw ValidationError("unknown point label: " + label);
  return static_cast<int>(it - points.begin());
}

FiniteGroupAction::FiniteGroupAction(FiniteSpace space,
                                     std::vector<std::string> element_ids,
                                     std::vector<std::vector<int>> compose_table,
                                     std::vector<std::vector<int>> act_table)
    : space_(std::move(space)),
      elements_(std::move(element_ids)),
      compose_(std::move(compose_table)),
      act_(std::move(act_table)) {
  const int n = order();
  if (n == 0) throw ValidationError("group needs at least one element");
  std::set<std::string> seen(elements_.begin(), elements_.end());
  if (seen.size() != elements_.size())
    throw ValidationError("group element ids must be distinct");
  auto table_ok = [](const std::vector<std::vector<int>>& t, size_t rows,
                     size_t cols, int range) {
    if (t.size() != rows) return false;
    for (const auto& row : t) {
      if (row.size() != cols) return false;
      for (int v : row)
        if (v < 0 || v >= range) return false;
    }
    return true;
  };
  if (!table_ok(compose_, n, n, n)) throw ValidationError("malformed compose table");
  if (!table_ok(act_, n, space_.size(), space_.size()))
    throw ValidationError("malformed act table");

  // Identity: the unique e with e*g == g*e == g for all g.
  for (int e = 0; e < n; ++e) {
    bool ok = true;
    for (int g = 0; g < n && ok; ++g)
      ok = compose_[e][g] == g && compose_[g][e] == g;
    if (ok) {
      identity_ = e;
      break;
    }
  }
  if (identity_ < 0) throw ValidationError("compose table has no identity");

  inverse_.assign(n, -1);
  for (int g = 0; g < n; ++g) {
    for (int h = 0; h < n; ++h) {
      if (compose_[g][h] == identity_ && compose_[h][g] == identity_) {
        inverse_[g] = h;
        break;
      }
    }
    if (inverse_[g] < 0)
      throw ValidationError("element " + elements_[g] + " has no inverse");
  }

  validate();
}

void FiniteGroupAction::validate() const {
  const int n = order();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (compose_[compose_[a][b]][c] != compose_[a][compose_[b][c]])
          throw ValidationError("compose table is not associative");

  const int m = space_.size();
  for (int p = 0; p < m; ++p)
    if (act_[identity_][p] != p)
      throw ValidationError("identity does not act trivially");
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h)
      for (int p = 0; p < m; ++p)
        if (act_[g][act_[h][p]] != act_[compose_[g][h]][p])
          throw ValidationError("action is not compatible with composition");
}

int FiniteGroupAction::element_index(const std::string& id) const {
  auto it = std::find(elements_.begin(), elements_.end(), id);
  if (it == elements_.end()) throw ValidationError("unknown group element: " + id);
  return static_cast<int>(it - elements_.begin());
}

FiniteGroupAction FiniteGroupAction::restricted_to(
    const std::vector<int>& point_subset) const {
  std::vector<int> new_index(space_.size(), -1);
  std::vector<std::string> labels;
  for (size_t i = 0; i < point_subset.size(); ++i) {
    new_index[point_subset[i]] = static_cast<int>(i);
    labels.push_back(space_.points[point_subset[i]]);
  }
  std::vector<std::vector<int>> act(order(), std::vector<int>(point_subset.size()));
  for (int g = 0; g < order(); ++g) {
    for (size_t i = 0; i < point_subset.size(); ++i) {
      int image = act_[g][point_subset[i]];
      if (new_index[image] < 0)
        throw ValidationError("point subset is not invariant under the group");
      act[g][i] = new_index[image];
    }
  }
  return FiniteGroupAction(FiniteSpace(labels), elements_, compose_, act);
}

EVariableMap::EVariableMap(FiniteSpace domain_, std::vector<std::string> values_,
                           std::vector<int> assign_)
    : domain(std::move(domain_)), values(std::move(values_)), assign(std::move(assign_)) {
  if (values.empty()) throw ValidationError("e-variable needs at least one value");
  std::set<std::string> seen(values.begin(), values.end());
  if (seen.size() != values.size())
    throw ValidationError("e-variable value labels must be distinct");
  if (static_cast<int>(assign.size()) != domain.size())
    throw ValidationError("assign table must cover every point");
  std::vector<bool> attained(values.size(), false);
  for (int v : assign) {
    if (v < 0 || v >= value_count())
      throw ValidationError("assign entry out of range");
    attained[v] = true;
  }
  for (size_t k = 0; k < attained.size(); ++k)
    if (!attained[k])
      throw ValidationError("value " + values[k] + " is never attained");
}

std::vector<std::vector<int>> EVariableMap::level_sets() const {
  std::vector<std::vector<int>> sets(values.size());
  for (size_t p = 0; p < assign.size(); ++p)
    sets[assign[p]].push_back(static_cast<int>(p));
  return sets;
}

EVariableMap EVariableMap::restricted_to(const std::vector<int>& point_subset) const {
  std::vector<std::string> labels;
  std::vector<int> raw;
  for (int p : point_subset) {
    labels.push_back(domain.points[p]);
    raw.push_back(assign[p]);
  }
  // Keep only attained values, preserving their order.
  std::vector<int> remap(values.size(), -1);
  std::vector<std::string> kept;
  for (size_t k = 0; k < values.size(); ++k) {
    if (std::find(raw.begin(), raw.end(), static_cast<int>(k)) != raw.end()) {
      remap[k] = static_cast<int>(kept.size());
      kept.push_back(values[k]);
    }
  }
  std::vector<int> new_assign;
  for (int v : raw) new_assign.push_back(remap[v]);
  return EVariableMap(FiniteSpace(labels), kept, new_assign);
}

PermissibilityResult check_permissible(const EVariableMap& theta,
                                       const FiniteGroupAction& action) {
  if (theta.domain.points != action.space().points)
    throw ValidationError("e-variable domain does not match the action's space");
  const int m = action.space().size();
  for (int k = 0; k < action.order(); ++k) {
    for (int p1 = 0; p1 < m; ++p1) {
      for (int p2 = p1 + 1; p2 < m; ++p2) {
        if (theta.assign[p1] != theta.assign[p2]) continue;
        if (theta.assign[action.act(k, p1)] != theta.assign[action.act(k, p2)])
          return {false, std::array<int, 3>{k, p1, p2}};
      }
    }
  }
  return {true, std::nullopt};
}

InducedGroup induced_group(const EVariableMap& theta,
                           const FiniteGroupAction& action) {
  if (!check_permissible(theta, action).permissible)
    throw ValidationError("induced group undefined: e-variable is not permissible");

  const int d = theta.value_count();
  const int m = action.space().size();
  // Value map of element k: well defined by permissibility.
  auto value_map = [&](int k) {
    std::vector<int> g(d, -1);
    for (int p = 0; p < m; ++p) g[theta.assign[p]] = theta.assign[action.act(k, p)];
    return g;
  };

  std::vector<std::vector<int>> maps;
  std::vector<int> hom(action.order());
  for (int k = 0; k < action.order(); ++k) {
    auto g = value_map(k);
    auto it = std::find(maps.begin(), maps.end(), g);
    if (it == maps.end()) {
      hom[k] = static_cast<int>(maps.size());
      maps.push_back(g);
    } else {
      hom[k] = static_cast<int>(it - maps.begin());
    }
  }

  const int gn = static_cast<int>(maps.size());
  std::vector<std::vector<int>> compose(gn, std::vector<int>(gn, -1));
  for (int i = 0; i < gn; ++i) {
    for (int j = 0; j < gn; ++j) {
      std::vector<int> prod(d);
      for (int v = 0; v < d; ++v) prod[v] = maps[i][maps[j][v]];
      auto it = std::find(maps.begin(), maps.end(), prod);
      if (it == maps.end())
        throw ValidationError("induced value maps are not closed under composition");
      compose[i][j] = static_cast<int>(it - maps.begin());
    }
  }

  std::vector<std::string> ids;
  for (int i = 0; i < gn; ++i) ids.push_back("g" + std::to_string(i));
  FiniteGroupAction g_action(FiniteSpace(theta.values), ids, compose, maps);

  // Homomorphism property, enumerated over all pairs.
  for (int k1 = 0; k1 < action.order(); ++k1)
    for (int k2 = 0; k2 < action.order(); ++k2)
      if (hom[action.compose(k1, k2)] != g_action.compose(hom[k1], hom[k2]))
        throw ValidationError("induced map is not a homomorphism");

  return {std::move(g_action), std::move(hom)};
}

std::vector<std::vector<int>> orbits(const FiniteGroupAction& action) {
  const int m = action.space().size();
  std::vector<bool> seen(m, false);
  std::vector<std::vector<int>> result;
  for (int p = 0; p < m; ++p) {
    if (seen[p]) continue;
    std::vector<int> orbit;
    std::vector<int> frontier{p};
    seen[p] = true;
    while (!frontier.empty()) {
      int q = frontier.back();
      frontier.pop_back();
      orbit.push_back(q);
      for (int g = 0; g < action.order(); ++g) {
        int image = action.act(g, q);
        if (!seen[image]) {
          seen[image] = true;
          frontier.push_back(image);
        }
      }
    }
    std::sort(orbit.begin(), orbit.end());
    result.push_back(std::move(orbit));
  }
  return result;
}

bool is_transitive(const FiniteGroupAction& action) {
  return orbits(action).size() == 1;
}

std::vector<int> subgroup_closure(const FiniteGroupAction& action,
                                  const std::vector<int>& generators) {
  std::set<int> closure{action.identity()};
  for (int g : generators) {
    closure.insert(g);
    closure.insert(action.inverse(g));
  }
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<int> current(closure.begin(), closure.end());
    for (int a : current) {
      for (int b : current) {
        if (closure.insert(action.compose(a, b)).second) grew = true;
      }
    }
  }
  return {closure.begin(), closure.end()};
}

std::vector<int> compatible_subgroup(const EVariableMap& theta,
                                     const FiniteGroupAction& action) {
  std::vector<int> result;
  const int m = action.space().size();
  for (int k = 0; k < action.order(); ++k) {
    std::vector<int> image(theta.value_count(), -1);
    bool ok = true;
    for (int p = 0; p < m && ok; ++p) {
      int v = theta.assign[p];
      int w = theta.assign[action.act(k, p)];
      if (image[v] < 0)
        image[v] = w;
      else if (image[v] != w)
        ok = false;
    }
    if (ok) result.push_back(k);
  }
  return result;
}

FiniteGroupAction subgroup_action(const FiniteGroupAction& action,
                                  const std::vector<int>& members) {
  std::vector<int> local(action.order(), -1);
  for (size_t i = 0; i < members.size(); ++i) local[members[i]] = static_cast<int>(i);
  std::vector<std::string> ids;
  std::vector<std::vector<int>> compose(members.size(),
                                        std::vector<int>(members.size()));
  std::vector<std::vector<int>> act(members.size(),
                                    std::vector<int>(action.space().size()));
  for (size_t i = 0; i < members.size(); ++i) {
    ids.push_back(action.elements()[members[i]]);
    for (size_t j = 0; j < members.size(); ++j) {
      int c = action.compose(members[i], members[j]);
      if (local[c] < 0)
        throw ValidationError("subgroup members are not closed under compose");
      compose[i][j] = local[c];
    }
    for (int p = 0; p < action.space().size(); ++p)
      act[i][p] = action.act(members[i], p);
  }
  return FiniteGroupAction(action.space(), ids, compose, act);
}

EVariableSystem::EVariableSystem(FiniteGroupAction big_group,
                                 std::vector<std::string> variable_names,
                                 std::vector<EVariableMap> variables,
                                 std::map<std::pair<int, int>, int> connectors,
                                 std::vector<std::vector<int>> component_groups)
    : group_(std::move(big_group)),
      names_(std::move(variable_names)),
      variables_(std::move(variables)),
      connectors_(std::move(connectors)),
      component_groups_(std::move(component_groups)) {
  if (names_.size() != variables_.size())
    throw ValidationError("variable name/map count mismatch");
  if (variables_.empty()) throw ValidationError("system needs at least one e-variable");
  if (component_groups_.empty()) {
    for (const auto& v : variables_)
      component_groups_.push_back(compatible_subgroup(v, group_));
  }
  if (component_groups_.size() != variables_.size())
    throw ValidationError("component group count mismatch");
  validate();
}

void EVariableSystem::validate() const {
  for (const auto& v : variables_)
    if (v.domain.points != group_.space().points)
      throw ValidationError("e-variable domain does not match the system space");

  for (size_t a = 0; a < component_groups_.size(); ++a) {
    const auto& ka = component_groups_[a];
    std::set<int> members(ka.begin(), ka.end());
    if (!members.count(group_.identity()))
      throw ValidationError("component group must contain the identity");
    for (int g : ka) {
      if (g < 0 || g >= group_.order())
        throw ValidationError("component group element out of range");
      if (!members.count(group_.inverse(g)))
        throw ValidationError("component group not closed under inverse");
      for (int h : ka)
        if (!members.count(group_.compose(g, h)))
          throw ValidationError("component group not closed under composition");
    }
    // Every member must induce a value transformation of its variable.
    auto compatible = compatible_subgroup(variables_[a], group_);
    std::set<int> comp(compatible.begin(), compatible.end());
    for (int g : ka)
      if (!comp.count(g))
        throw ValidationError("component group element does not act on " +
                              names_[a] + "'s values");
  }

  for (const auto& [pair, k] : connectors_) {
    auto [a, b] = pair;
    if (a < 0 || a >= variable_count() || b < 0 || b >= variable_count() || a == b)
      throw ValidationError("connector variable indices out of range");
    if (k < 0 || k >= group_.order())
      throw ValidationError("connector element out of range");
    const auto& ta = variables_[a];
    const auto& tb = variables_[b];
    for (int p = 0; p < group_.space().size(); ++p) {
      if (tb.value_of(p) != ta.value_of(group_.act(k, p)))
        throw ValidationError("connector " + names_[a] + ":" + names_[b] +
                              " does not transport the e-variable");
    }
  }
}

int EVariableSystem::variable_index(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) throw ValidationError("unknown e-variable: " + name);
  return static_cast<int>(it - names_.begin());
}

std::optional<int> EVariableSystem::connector(int a, int b) const {
  auto it = connectors_.find({a, b});
  if (it != connectors_.end()) return it->second;
  // theta_b = theta_a o k_ab  implies  theta_a = theta_b o k_ab^{-1}.
  it = connectors_.find({b, a});
  if (it != connectors_.end()) return group_.inverse(it->second);
  return std::nullopt;
}

GeneratingCheck check_generating_assumption(const EVariableSystem& system) {
  std::vector<int> generators;
  for (int a = 0; a < system.variable_count(); ++a)
    for (int g : system.component_group(a)) generators.push_back(g);
  for (const auto& [pair, k] : system.connectors()) generators.push_back(k);
  auto closure = subgroup_closure(system.group(), generators);
  return {static_cast<int>(closure.size()) == system.group().order(),
          static_cast<int>(closure.size())};
}

}  // namespace eqm::core
