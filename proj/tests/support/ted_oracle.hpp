// Test-only reference implementations for the tree-edit metric: the
// exhaustive ordered-forest recursion (no keyroots, no memoisation) and
// an enumerator for every ordered tree shape with up to four nodes.
#pragma once

#include <vector>

#include "cbddl/diversity.hpp"

namespace cbddl::testing {

inline double naive_forest_dist(std::vector<const SyntaxNode*> f1,
                                std::vector<const SyntaxNode*> f2,
                                const CostModel& cm) {
  if (f1.empty() && f2.empty()) return 0.0;
  double best = 1e300;
  if (!f1.empty()) {
    // Delete the rightmost root: splice its children in its place.
    const SyntaxNode* v = f1.back();
    std::vector<const SyntaxNode*> rest(f1.begin(), f1.end() - 1);
    for (const auto& c : v->children) rest.push_back(&c);
    double d = cm.delete_cost(*v) + naive_forest_dist(rest, f2, cm);
    if (d < best) best = d;
  }
  if (!f2.empty()) {
    const SyntaxNode* w = f2.back();
    std::vector<const SyntaxNode*> rest(f2.begin(), f2.end() - 1);
    for (const auto& c : w->children) rest.push_back(&c);
    double d = cm.insert_cost(*w) + naive_forest_dist(f1, rest, cm);
    if (d < best) best = d;
  }
  if (!f1.empty() && !f2.empty()) {
    const SyntaxNode* v = f1.back();
    const SyntaxNode* w = f2.back();
    std::vector<const SyntaxNode*> r1(f1.begin(), f1.end() - 1);
    std::vector<const SyntaxNode*> r2(f2.begin(), f2.end() - 1);
    std::vector<const SyntaxNode*> c1, c2;
    for (const auto& c : v->children) c1.push_back(&c);
    for (const auto& c : w->children) c2.push_back(&c);
    double d = cm.update_cost(*v, *w) + naive_forest_dist(c1, c2, cm) +
               naive_forest_dist(r1, r2, cm);
    if (d < best) best = d;
  }
  return best;
}

inline double naive_ted(const SyntaxNode& a, const SyntaxNode& b,
                        const CostModel& cm) {
  return naive_forest_dist({&a}, {&b}, cm);
}

// Preorder arity sequences that form a single tree of `remaining` nodes.
inline void gen_arities(int remaining, std::vector<int>& prefix,
                        std::vector<std::vector<int>>& out, int open) {
  if (remaining == 0) {
    if (open == 0) out.push_back(prefix);
    return;
  }
  if (open == 0 && !prefix.empty()) return;  // would start a second root
  for (int k = 0; k <= remaining - 1; ++k) {
    prefix.push_back(k);
    gen_arities(remaining - 1, prefix, out,
                open - (prefix.size() > 1 ? 1 : 0) + k);
    prefix.pop_back();
  }
}

inline size_t decode(const std::vector<int>& arity, size_t pos,
                     SyntaxNode& out, int& counter, bool mixed_types) {
  static const SyntaxNode::Type palette[] = {
      SyntaxNode::Type::Object, SyntaxNode::Type::Predicate,
      SyntaxNode::Type::Verb, SyntaxNode::Type::Region};
  out.type = mixed_types ? palette[counter % 4] : SyntaxNode::Type::Object;
  out.label = (counter % 2) ? "beta" : "alpha";
  ++counter;
  int kids = arity[pos];
  size_t next = pos + 1;
  for (int i = 0; i < kids; ++i) {
    SyntaxNode child;
    next = decode(arity, next, child, counter, mixed_types);
    out.children.push_back(std::move(child));
  }
  return next;
}

// 9 shapes x 2 label phases = 18 trees per type regime.
inline std::vector<SyntaxNode> all_trees_up_to_4(bool mixed_types,
                                                 int label_salt) {
  std::vector<SyntaxNode> trees;
  for (int n = 1; n <= 4; ++n) {
    std::vector<std::vector<int>> arities;
    std::vector<int> prefix;
    gen_arities(n, prefix, arities, 0);
    for (const auto& arity : arities) {
      for (int phase = 0; phase < 2; ++phase) {
        SyntaxNode root;
        int counter = phase + label_salt;
        decode(arity, 0, root, counter, mixed_types);
        if (root.size() == static_cast<size_t>(n)) trees.push_back(root);
      }
    }
  }
  return trees;
}

}  // namespace cbddl::testing
