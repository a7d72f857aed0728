#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace eqm::core {

/// Finite set of opaque point labels with a fixed order.
struct FiniteSpace {
  std::vector<std::string> points;

  explicit FiniteSpace(std::vector<std::string> labels);
  FiniteSpace() = default;

  int size() const { return static_cast<int>(points.size()); }
  int index_of(const std::string& label) const;
};

/// A finite group together with its action on a FiniteSpace, given by
/// explicit tables. The constructor checks every group axiom and the
/// action compatibility law by full enumeration.
///
/// Composition convention: act(compose(g,h), p) == act(g, act(h, p)),
/// i.e. compose(g,h) means "apply h first, then g".
class FiniteGroupAction {
public:
  FiniteGroupAction(FiniteSpace space, std::vector<std::string> element_ids,
                    std::vector<std::vector<int>> compose_table,
                    std::vector<std::vector<int>> act_table);

  const FiniteSpace& space() const { return space_; }
  int order() const { return static_cast<int>(elements_.size()); }
  const std::vector<std::string>& elements() const { return elements_; }
  int element_index(const std::string& id) const;

  int identity() const { return identity_; }
  int inverse(int g) const { return inverse_[g]; }
  int compose(int g, int h) const { return compose_[g][h]; }
  int act(int g, int point) const { return act_[g][point]; }

  /// The same group acting on an invariant subset of points. Throws if some
  /// element maps the subset outside itself.
  FiniteGroupAction restricted_to(const std::vector<int>& point_subset) const;

private:
  FiniteSpace space_;
  std::vector<std::string> elements_;
  std::vector<std::vector<int>> compose_;
  std::vector<std::vector<int>> act_;
  std::vector<int> inverse_;
  int identity_ = -1;

  void validate() const;
};

/// Total map from points to a finite list of value labels, surjective onto
/// the declared values.
struct EVariableMap {
  FiniteSpace domain;
  std::vector<std::string> values;
  std::vector<int> assign;  // point index -> value index

  EVariableMap(FiniteSpace domain_, std::vector<std::string> values_,
               std::vector<int> assign_);
  EVariableMap() = default;

  int value_count() const { return static_cast<int>(values.size()); }
  const std::string& value_of(int point) const { return values[assign[point]]; }

  /// Points mapped to each value, in point order.
  std::vector<std::vector<int>> level_sets() const;

  EVariableMap restricted_to(const std::vector<int>& point_subset) const;
};

struct PermissibilityResult {
  bool permissible = false;
  // Witness of a violation: element k and points p1, p2 with equal values
  // whose images under k disagree.
  std::optional<std::array<int, 3>> witness;
};

/// Eq.-style permissibility: theta(p1) == theta(p2) implies
/// theta(k p1) == theta(k p2) for every group element k. Exhaustive.
PermissibilityResult check_permissible(const EVariableMap& theta,
                                       const FiniteGroupAction& action);

struct InducedGroup {
  /// Group acting on the value labels of theta.
  FiniteGroupAction group;
  /// Surjective homomorphism: element index in K -> element index in G.
  std::vector<int> homomorphism;
};

/// The group G induced on theta's values by a permissible action, together
/// with the homomorphism K -> G. Verifies the homomorphism property by
/// enumeration before returning. Throws if theta is not permissible.
InducedGroup induced_group(const EVariableMap& theta,
                           const FiniteGroupAction& action);

/// Orbit partition of the points. Each orbit lists its points ascending;
/// orbits ordered by smallest member.
std::vector<std::vector<int>> orbits(const FiniteGroupAction& action);

bool is_transitive(const FiniteGroupAction& action);

/// Closure of a generator set under composition and inverse, as sorted
/// element indices.
std::vector<int> subgroup_closure(const FiniteGroupAction& action,
                                  const std::vector<int>& generators);

/// Largest subgroup of the action under which theta is permissible: all k
/// mapping level sets of theta onto level sets. This is the natural
/// realization of a component group when none is declared.
std::vector<int> compatible_subgroup(const EVariableMap& theta,
                                     const FiniteGroupAction& action);

/// The action of a subgroup, given by element indices, as a standalone
/// group on the same space. Throws if the members are not closed.
FiniteGroupAction subgroup_action(const FiniteGroupAction& action,
                                  const std::vector<int>& members);

/// A family of e-variables over one space, the big symmetry group, the
/// per-variable component groups, and connector elements k_ab satisfying
/// theta_b(p) == theta_a(act(k_ab, p)).
class EVariableSystem {
public:
  EVariableSystem(FiniteGroupAction big_group,
                  std::vector<std::string> variable_names,
                  std::vector<EVariableMap> variables,
                  std::map<std::pair<int, int>, int> connectors,
                  std::vector<std::vector<int>> component_groups = {});

  const FiniteSpace& space() const { return group_.space(); }
  const FiniteGroupAction& group() const { return group_; }
  int variable_count() const { return static_cast<int>(variables_.size()); }
  const std::vector<std::string>& variable_names() const { return names_; }
  const EVariableMap& variable(int a) const { return variables_[a]; }
  int variable_index(const std::string& name) const;

  /// Component group K^a as element indices (declared or computed).
  const std::vector<int>& component_group(int a) const {
    return component_groups_[a];
  }
  const std::map<std::pair<int, int>, int>& connectors() const {
    return connectors_;
  }
  /// Connector k_ab with theta_b = theta_a  after acting by k_ab, if present
  /// either directly or as the inverse of the reversed entry.
  std::optional<int> connector(int a, int b) const;

private:
  FiniteGroupAction group_;
  std::vector<std::string> names_;
  std::vector<EVariableMap> variables_;
  std::map<std::pair<int, int>, int> connectors_;
  std::vector<std::vector<int>> component_groups_;

  void validate() const;
};

struct GeneratingCheck {
  bool generates = false;
  int closure_size = 0;
};

/// Closure of the union of all component groups and connectors under
/// composition and inverse, compared against the declared big group.
GeneratingCheck check_generating_assumption(const EVariableSystem& system);

}  // namespace eqm::core
