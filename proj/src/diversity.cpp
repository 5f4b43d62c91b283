#include "cbddl/diversity.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>
#include <thread>

#include "cbddl/printer.hpp"
#include "cbddl/rng.hpp"
#include "json.hpp"

namespace cbddl {

const char* syntax_type_name(SyntaxNode::Type t) {
  switch (t) {
    case SyntaxNode::Type::Task: return "Task";
    case SyntaxNode::Type::Predicate: return "Predicate";
    case SyntaxNode::Type::Verb: return "Verb";
    case SyntaxNode::Type::Constraint: return "Constraint";
    case SyntaxNode::Type::Object: return "Object";
    case SyntaxNode::Type::Region: return "Region";
  }
  return "?";
}

CostModel CostModel::defaults() {
  CostModel cm;
  cm.type_weights = {{"Task", 4.0},   {"Predicate", 3.0}, {"Verb", 3.0},
                     {"Constraint", 3.0}, {"Object", 1.0},    {"Region", 1.0}};
  cm.update_base = 1.0;
  return cm;
}

CostModel CostModel::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  CostModel cm = defaults();
  if (j.contains("weights"))
    for (const auto& [k, v] : j.at("weights").items())
      cm.type_weights[k] = v.get<double>();
  if (j.contains("update_base")) cm.update_base = j.at("update_base");
  return cm;
}

std::string CostModel::to_json() const {
  nlohmann::json weights = nlohmann::json::object();
  for (const auto& [k, v] : type_weights) weights[k] = v;
  return nlohmann::json{{"weights", std::move(weights)},
                        {"update_base", update_base}}
      .dump(2);
}

double CostModel::weight(SyntaxNode::Type t) const {
  auto it = type_weights.find(syntax_type_name(t));
  return it == type_weights.end() ? 1.0 : it->second;
}

double label_discount(const std::string& a, const std::string& b) {
  auto tokens = [](const std::string& s) {
    std::set<std::string> out;
    std::string cur;
    for (char c : s) {
      if (c == '_' || std::isspace(static_cast<unsigned char>(c))) {
        if (!cur.empty()) out.insert(cur);
        cur.clear();
      } else {
        cur += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      }
    }
    if (!cur.empty()) out.insert(cur);
    return out;
  };
  std::set<std::string> ta = tokens(a), tb = tokens(b);
  if (ta.empty() && tb.empty()) return 0.0;
  size_t inter = 0;
  for (const auto& t : ta) inter += tb.count(t);
  size_t uni = ta.size() + tb.size() - inter;
  return 1.0 - static_cast<double>(inter) / static_cast<double>(uni);
}

double CostModel::update_cost(const SyntaxNode& a, const SyntaxNode& b) const {
  if (a.type == b.type && a.label == b.label) return 0.0;
  double w = 0.5 * (weight(a.type) + weight(b.type));
  double discount =
      a.type == b.type ? label_discount(a.label, b.label) : 1.0;
  return update_base * w * discount;
}

// ---------------------------------------------------------------------
// Task -> syntax tree

namespace {

const std::set<std::string>& verb_vocabulary() {
  static const std::set<std::string> verbs = {
      "pick",  "put",   "push",  "place",    "open",  "close",
      "take",  "move",  "pour",  "stack",    "shove", "nudge",
      "thrust", "slide", "choose", "select", "grab",  "seize",
      "position", "locate", "set", "turn"};
  return verbs;
}

bool is_region_name(const TaskSpec& spec, const std::string& name) {
  const ObjectDecl* obj = spec.find_object(name);
  return obj && obj->is_region();
}

SyntaxNode atom_node(const TaskSpec& spec, const Expr& atom,
                     SyntaxNode::Type type) {
  SyntaxNode n;
  n.type = type;
  n.label = atom.pred;
  for (const auto& a : atom.args) {
    switch (a.kind) {
      case Arg::Kind::Name:
        n.children.push_back(SyntaxNode::leaf(
            is_region_name(spec, a.name) ? SyntaxNode::Type::Region
                                         : SyntaxNode::Type::Object,
            a.name));
        break;
      case Arg::Kind::Number:
        n.label += " " + format_number(a.number);
        break;
      case Arg::Kind::NumberList: {
        for (double v : a.list) n.label += " " + format_number(v);
        break;
      }
    }
  }
  return n;
}

void collect_atoms(const Expr& e, std::vector<const Expr*>& out) {
  if (e.kind == Expr::Kind::Atom) {
    out.push_back(&e);
    return;
  }
  for (const auto& c : e.children) collect_atoms(c, out);
}

// Strip {id:base} markers, keeping the base words.
std::string plain_instruction(const std::string& text) {
  std::string out;
  size_t i = 0;
  while (i < text.size()) {
    if (text[i] != '{') {
      out += text[i++];
      continue;
    }
    size_t close = text.find('}', i);
    size_t colon = text.find(':', i);
    if (close == std::string::npos || colon == std::string::npos ||
        colon > close) {
      out += text[i++];
      continue;
    }
    out += text.substr(colon + 1, close - colon - 1);
    i = close + 1;
  }
  return out;
}

}  // namespace

SyntaxNode task_to_tree(const TaskSpec& spec) {
  SyntaxNode root;
  root.type = SyntaxNode::Type::Task;
  root.label = spec.name;

  if (spec.language) {
    std::string text = plain_instruction(*spec.language);
    std::string word;
    auto flush = [&] {
      if (!word.empty() && verb_vocabulary().count(word))
        root.children.push_back(
            SyntaxNode::leaf(SyntaxNode::Type::Verb, word));
      word.clear();
    };
    for (char c : text) {
      if (std::isalpha(static_cast<unsigned char>(c)))
        word += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      else
        flush();
    }
    flush();
  }

  std::vector<const Expr*> goal_atoms;
  collect_atoms(spec.goal, goal_atoms);
  for (const Expr* atom : goal_atoms)
    root.children.push_back(atom_node(spec, *atom, SyntaxNode::Type::Predicate));

  for (const Expr& raw_term : spec.cost) {
    // Mirror the cost semantics: a top-level And is a list of terms.
    std::vector<const Expr*> terms;
    if (raw_term.kind == Expr::Kind::And) {
      for (const auto& c : raw_term.children) terms.push_back(&c);
    } else {
      terms.push_back(&raw_term);
    }
    for (const Expr* term : terms) {
      if (term->kind == Expr::Kind::Atom) {
        root.children.push_back(
            atom_node(spec, *term, SyntaxNode::Type::Constraint));
      } else {
        SyntaxNode n;
        n.type = SyntaxNode::Type::Constraint;
        n.label = term->kind == Expr::Kind::Or ? "or"
                  : term->kind == Expr::Kind::Not ? "not"
                                                  : "and";
        std::vector<const Expr*> atoms;
        collect_atoms(*term, atoms);
        for (const Expr* atom : atoms)
          n.children.push_back(
              atom_node(spec, *atom, SyntaxNode::Type::Predicate));
        root.children.push_back(std::move(n));
      }
    }
  }
  return root;
}

// ---------------------------------------------------------------------
// Zhang-Shasha

namespace {

struct FlatTree {
  std::vector<const SyntaxNode*> nodes;  // postorder
  std::vector<int> lmd;                  // leftmost leaf descendant
  std::vector<int> keyroots;
};

int flatten(const SyntaxNode& n, FlatTree& out) {
  int first_leaf = -1;
  for (const auto& c : n.children) {
    int lmd = flatten(c, out);
    if (first_leaf < 0) first_leaf = lmd;
  }
  int index = static_cast<int>(out.nodes.size());
  out.nodes.push_back(&n);
  out.lmd.push_back(first_leaf < 0 ? index : first_leaf);
  return out.lmd.back();
}

FlatTree make_flat(const SyntaxNode& root) {
  FlatTree t;
  flatten(root, t);
  // Keyroots: nodes with no parent sharing their leftmost descendant,
  // i.e. the highest node for each distinct lmd value.
  std::map<int, int> highest;
  for (int i = 0; i < static_cast<int>(t.nodes.size()); ++i)
    highest[t.lmd[i]] = i;
  for (const auto& [lmd, i] : highest) t.keyroots.push_back(i);
  std::sort(t.keyroots.begin(), t.keyroots.end());
  return t;
}

}  // namespace

double tree_edit_distance(const SyntaxNode& a, const SyntaxNode& b,
                          const CostModel& cm) {
  FlatTree ta = make_flat(a);
  FlatTree tb = make_flat(b);
  int na = static_cast<int>(ta.nodes.size());
  int nb = static_cast<int>(tb.nodes.size());
  std::vector<std::vector<double>> treedist(na, std::vector<double>(nb, 0.0));

  std::vector<std::vector<double>> fd;
  auto forest_dist = [&](int i, int j) {
    int li = ta.lmd[i], lj = tb.lmd[j];
    int m = i - li + 2, n = j - lj + 2;
    fd.assign(m, std::vector<double>(n, 0.0));
    for (int x = 1; x < m; ++x)
      fd[x][0] = fd[x - 1][0] + cm.delete_cost(*ta.nodes[x + li - 1]);
    for (int y = 1; y < n; ++y)
      fd[0][y] = fd[0][y - 1] + cm.insert_cost(*tb.nodes[y + lj - 1]);
    for (int x = 1; x < m; ++x) {
      for (int y = 1; y < n; ++y) {
        const SyntaxNode& node_a = *ta.nodes[x + li - 1];
        const SyntaxNode& node_b = *tb.nodes[y + lj - 1];
        double del = fd[x - 1][y] + cm.delete_cost(node_a);
        double ins = fd[x][y - 1] + cm.insert_cost(node_b);
        if (ta.lmd[x + li - 1] == li && tb.lmd[y + lj - 1] == lj) {
          double upd = fd[x - 1][y - 1] + cm.update_cost(node_a, node_b);
          fd[x][y] = std::min({del, ins, upd});
          treedist[x + li - 1][y + lj - 1] = fd[x][y];
        } else {
          int p = ta.lmd[x + li - 1] - li;
          int q = tb.lmd[y + lj - 1] - lj;
          double sub = fd[p][q] + treedist[x + li - 1][y + lj - 1];
          fd[x][y] = std::min({del, ins, sub});
        }
      }
    }
  };

  for (int i : ta.keyroots)
    for (int j : tb.keyroots) forest_dist(i, j);
  return treedist[na - 1][nb - 1];
}

DistanceMatrix pairwise_matrix(const std::vector<SyntaxNode>& trees,
                               const std::vector<std::string>& names,
                               const CostModel& cm, int threads) {
  DistanceMatrix m;
  m.names = names;
  size_t n = trees.size();
  m.values.assign(n * n, 0.0);

  std::vector<std::pair<size_t, size_t>> pairs;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);

  auto work = [&](size_t worker, size_t stride) {
    for (size_t k = worker; k < pairs.size(); k += stride) {
      auto [i, j] = pairs[k];
      double d = tree_edit_distance(trees[i], trees[j], cm);
      m.at(i, j) = d;
      m.at(j, i) = d;
    }
  };
  if (threads <= 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t)
      pool.emplace_back(work, static_cast<size_t>(t),
                        static_cast<size_t>(threads));
    for (auto& t : pool) t.join();
  }
  return m;
}

Layout fr_layout(const DistanceMatrix& m, uint64_t seed, int iterations) {
  size_t n = m.size();
  Layout pos(n);
  double max_d = 0.0;
  for (double v : m.values) max_d = std::max(max_d, v);
  if (max_d <= 0.0) max_d = 1.0;

  RandomStream rng(seed);
  for (auto& p : pos) {
    p[0] = rng.uniform(0.0, max_d);
    p[1] = rng.uniform(0.0, max_d);
  }
  if (n < 2 || iterations <= 0) return pos;

  double t0 = 0.1 * max_d;
  for (int it = 0; it < iterations; ++it) {
    double temp = t0 * (1.0 - static_cast<double>(it) / iterations);
    std::vector<std::array<double, 2>> disp(n, {0.0, 0.0});
    for (size_t i = 0; i < n; ++i) {
      for (size_t j = i + 1; j < n; ++j) {
        double dx = pos[i][0] - pos[j][0];
        double dy = pos[i][1] - pos[j][1];
        double r = std::sqrt(dx * dx + dy * dy);
        if (r < 1e-9) {
          dx = 1e-9;
          dy = 0.0;
          r = 1e-9;
        }
        double k = m.at(i, j);
        double f;
        if (k <= 0.0) {
          f = -r;  // duplicates attract until they coincide
        } else {
          f = k * k / r - r * r / k;
        }
        double ux = dx / r, uy = dy / r;
        disp[i][0] += ux * f;
        disp[i][1] += uy * f;
        disp[j][0] -= ux * f;
        disp[j][1] -= uy * f;
      }
    }
    for (size_t i = 0; i < n; ++i) {
      double len = std::sqrt(disp[i][0] * disp[i][0] + disp[i][1] * disp[i][1]);
      if (len <= 0.0) continue;
      double cap = std::min(len, temp);
      pos[i][0] += disp[i][0] / len * cap;
      pos[i][1] += disp[i][1] / len * cap;
    }
  }
  return pos;
}

std::string matrix_to_csv(const DistanceMatrix& m) {
  std::string out = "task";
  for (const auto& name : m.names) out += "," + name;
  out += "\n";
  for (size_t i = 0; i < m.size(); ++i) {
    out += m.names[i];
    for (size_t j = 0; j < m.size(); ++j)
      out += "," + format_number(m.at(i, j));
    out += "\n";
  }
  return out;
}

std::string layout_to_csv(const DistanceMatrix& m, const Layout& layout) {
  std::string out = "task,x,y\n";
  for (size_t i = 0; i < layout.size(); ++i)
    out += m.names[i] + "," + format_number(layout[i][0]) + "," +
           format_number(layout[i][1]) + "\n";
  return out;
}

}  // namespace cbddl
