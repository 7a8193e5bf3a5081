#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qdup/linalg.hpp"

namespace qdup {

struct Arrow {
  std::string label;
  int source = 0;
  int target = 0;
};

/// Finite quiver with labeled vertices and arrows (indices into the vertex list).
class GeneralQuiver {
 public:
  GeneralQuiver() = default;
  /// Validates that every arrow endpoint names an existing vertex.
  GeneralQuiver(std::vector<std::string> vertices, std::vector<Arrow> arrows);

  int add_vertex(std::string label);
  void add_arrow(std::string label, int source, int target);

  const std::vector<std::string>& vertices() const { return vertices_; }
  const std::vector<Arrow>& arrows() const { return arrows_; }
  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t arrow_count() const { return arrows_.size(); }
  int vertex_index(const std::string& label) const;

  /// Same vertices, every arrow reversed.
  GeneralQuiver opposite() const;
  GeneralQuiver disjoint_union(const GeneralQuiver& other) const;

  /// Isomorphism-invariant encoding (minimum arrow list over all vertex relabelings).
  std::string canonical_form() const;
  bool isomorphic(const GeneralQuiver& other) const { return canonical_form() == other.canonical_form(); }
  /// True when the underlying undirected multigraph has no cycles (loops and parallel arrows count).
  bool is_forest() const;

  std::string to_dot(const std::string& name = "Q") const;

  bool operator==(const GeneralQuiver& o) const;

 private:
  std::vector<std::string> vertices_;
  std::vector<Arrow> arrows_;
};

/// Quiver of a set map: one arrow i -> phi(i) out of every vertex. Indices are 0-based
/// internally; text forms and labels use the 1-based names e1..en.
class FunctionalQuiver {
 public:
  FunctionalQuiver() = default;
  /// From 0-based targets.
  explicit FunctionalQuiver(std::vector<int> target);

  std::size_t size() const { return target_.size(); }
  int phi(int i) const { return target_.at(static_cast<std::size_t>(i)); }
  const std::vector<int>& targets() const { return target_; }
  std::vector<int> preimages(int i) const;
  bool is_loop(int i) const { return phi(i) == i; }

  /// 1-based rendering such as "1,1,2".
  std::string set_map_string() const;
  GeneralQuiver to_general() const;
  std::string to_dot(const std::vector<std::string>& colors = {}, const std::string& name = "Qf") const;

  bool operator==(const FunctionalQuiver& o) const = default;
  auto operator<=>(const FunctionalQuiver& o) const = default;

 private:
  std::vector<int> target_;
};

std::string vertex_name(int i);  // "e1" for index 0

/// Parses a 1-based set map ("1,1,2" or {1,1,2}) into its quiver and the algebra
/// endomorphism f(e_i) = sum of e_j over phi(j) = i of k^n.
FunctionalQuiver from_set_map(const std::vector<int>& one_based);
FunctionalQuiver parse_set_map(const std::string& text);
Matrix endomorphism_matrix(const FunctionalQuiver& q, const Field& field);

struct ComponentInfo {
  std::vector<int> vertices;      // sorted
  std::vector<int> cycle;         // phi(cycle[i]) == cycle[i+1 mod s], starting at its least vertex
  bool strict = false;            // the component is its cycle
  std::optional<int> loop_vertex; // when the cycle has length 1
  std::map<int, int> depth;       // distance to the cycle

  std::size_t cycle_length() const { return cycle.size(); }
};

std::vector<ComponentInfo> components(const FunctionalQuiver& q);

/// Induced functional quiver on one component, with the vertex renumbering old -> new.
FunctionalQuiver restrict_to(const FunctionalQuiver& q, const ComponentInfo& c, std::vector<int>* old_to_new = nullptr);

/// Removes the loop vertex of a 1-cycle, adds vertices "1" and "2", and attaches each
/// tree root to "1" when colored r1 and to "2" when colored r2. Tree vertices keep their
/// names e_i; tree arrows keep their direction.
GeneralQuiver cibils_transform(const FunctionalQuiver& q, const ComponentInfo& c, const std::vector<Scalar>& colors,
                               const Scalar& r1, const Scalar& r2);

struct ShapeClass {
  FunctionalQuiver representative;  // least set map of the class
  std::size_t size = 0;             // number of set maps with an isomorphic quiver
};

/// Groups the n^n set maps on n points by isomorphism of their quivers (n <= 6).
std::vector<ShapeClass> shape_classes(int n);

/// Least relabeling of a set map under conjugation by permutations.
FunctionalQuiver canonical_relabeling(const FunctionalQuiver& q);

}  // namespace qdup
