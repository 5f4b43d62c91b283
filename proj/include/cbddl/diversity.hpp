// Task-space diversity: typed syntax trees per task, layered tree-edit
// distances (Zhang-Shasha) and a force-directed 2D embedding.
#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cbddl/ast.hpp"

namespace cbddl {

struct SyntaxNode {
  enum class Type { Task, Predicate, Verb, Constraint, Object, Region };
  Type type = Type::Task;
  std::string label;
  std::vector<SyntaxNode> children;

  static SyntaxNode leaf(Type t, std::string label) {
    return {t, std::move(label), {}};
  }
  size_t size() const {
    size_t n = 1;
    for (const auto& c : children) n += c.size();
    return n;
  }
};

const char* syntax_type_name(SyntaxNode::Type t);

// Layered edit costs: inserting or deleting a node costs its type
// weight; updates cost update_base * mean type weight, discounted by
// token-level Jaccard similarity of the labels (identical nodes are
// free, mismatched types count as fully divergent).
struct CostModel {
  std::map<std::string, double> type_weights;  // keyed by type name
  double update_base = 1.0;

  static CostModel defaults();
  static CostModel from_json(const std::string& text);
  std::string to_json() const;

  double weight(SyntaxNode::Type t) const;
  double insert_cost(const SyntaxNode& n) const { return weight(n.type); }
  double delete_cost(const SyntaxNode& n) const { return weight(n.type); }
  double update_cost(const SyntaxNode& a, const SyntaxNode& b) const;
};

// 1 - Jaccard similarity of underscore/whitespace token sets.
double label_discount(const std::string& a, const std::string& b);

// Task root; one Verb leaf per instruction verb, Predicate subtrees from
// goal atoms (objects/regions as typed leaves), one Constraint subtree
// per cost term.
SyntaxNode task_to_tree(const TaskSpec& spec);

// Minimum-cost ordered edit script between rooted ordered trees,
// computed with the Zhang-Shasha keyroot/forest dynamic program.
double tree_edit_distance(const SyntaxNode& a, const SyntaxNode& b,
                          const CostModel& cm);

struct DistanceMatrix {
  std::vector<std::string> names;
  std::vector<double> values;  // row-major n x n

  size_t size() const { return names.size(); }
  double at(size_t i, size_t j) const { return values[i * size() + j]; }
  double& at(size_t i, size_t j) { return values[i * size() + j]; }
};

// Symmetric, zero-diagonal. Entries are independent, so the thread count
// never changes the values.
DistanceMatrix pairwise_matrix(const std::vector<SyntaxNode>& trees,
                               const std::vector<std::string>& names,
                               const CostModel& cm, int threads = 1);

using Layout = std::vector<std::array<double, 2>>;

// Fruchterman-Reingold with per-pair ideal length equal to the matrix
// distance and linear temperature cooling; deterministic per seed.
Layout fr_layout(const DistanceMatrix& m, uint64_t seed, int iterations = 500);

std::string matrix_to_csv(const DistanceMatrix& m);
std::string layout_to_csv(const DistanceMatrix& m, const Layout& layout);

}  // namespace cbddl
