#include "nlshybrid/trees.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace nlshybrid {

namespace {

// children colors of the five generation-1 patterns (true = red)
constexpr std::array<std::array<bool, 3>, 5> kPatterns{{
    {false, false, false},  // |v|^2 v
    {true, true, false},    // |w|^2 v
    {true, false, true},    // w^2 conj(v)
    {false, false, true},   // |v|^2 w
    {false, true, false},   // v^2 conj(w)
}};

ColoredTree single_generation_tree(const std::array<bool, 3>& colors, bool root_red) {
  ColoredTree t;
  t.generation = 1;
  t.nodes.resize(4);
  t.nodes[0].parent = -1;
  t.nodes[0].red = root_red;
  t.nodes[0].child = {1, 2, 3};
  for (int c = 0; c < 3; ++c) {
    t.nodes[c + 1].parent = 0;
    t.nodes[c + 1].red = colors[c];
  }
  return t;
}

// Rebuild `t` in preorder with terminal `target` replaced by a nonterminal
// carrying the given children colors.
ColoredTree graft(const ColoredTree& t, int target, const std::array<bool, 3>& colors) {
  ColoredTree out;
  out.generation = t.generation + 1;
  out.nodes.reserve(t.nodes.size() + 3);
  std::function<int(int, int)> copy = [&](int node, int parent) -> int {
    const int idx = static_cast<int>(out.nodes.size());
    out.nodes.push_back({});
    out.nodes[idx].parent = parent;
    out.nodes[idx].red = t.nodes[node].red;
    if (!t.nodes[node].terminal()) {
      for (int c = 0; c < 3; ++c) out.nodes[idx].child[c] = copy(t.nodes[node].child[c], idx);
    } else if (node == target) {
      for (int c = 0; c < 3; ++c) {
        const int ch = static_cast<int>(out.nodes.size());
        out.nodes.push_back({});
        out.nodes[ch].parent = idx;
        out.nodes[ch].red = colors[c];
        out.nodes[idx].child[c] = ch;
      }
    }
    return idx;
  };
  copy(t.root(), -1);
  return out;
}

}  // namespace

int ColoredTree::count_terminals() const {
  int c = 0;
  for (const auto& n : nodes) c += n.terminal();
  return c;
}

int ColoredTree::count_black_terminals() const {
  int c = 0;
  for (const auto& n : nodes) c += n.terminal() && !n.red;
  return c;
}

int ColoredTree::count_red_terminals() const {
  int c = 0;
  for (const auto& n : nodes) c += n.terminal() && n.red;
  return c;
}

bool ColoredTree::well_formed() const {
  if (nodes.empty() || nodes[0].parent != -1) return false;
  const int J = generation;
  if (size() != 3 * J + 1) return false;
  int terminals = 0, nonterminals = 0;
  for (int i = 0; i < size(); ++i) {
    const Node& n = nodes[i];
    if (n.terminal()) {
      ++terminals;
      if (n.child[1] >= 0 || n.child[2] >= 0) return false;
    } else {
      ++nonterminals;
      for (int c = 0; c < 3; ++c) {
        const int ch = n.child[c];
        if (ch <= i || ch >= size() || nodes[ch].parent != i) return false;
      }
      // a red nonterminal only ever sprouts the red tree
      if (n.red)
        for (int c = 0; c < 3; ++c)
          if (!nodes[n.child[c]].red) return false;
    }
  }
  return terminals == 2 * J + 1 && nonterminals == J && count_black_terminals() >= 1;
}

std::vector<ColoredTree> first_generation() {
  std::vector<ColoredTree> out;
  out.reserve(5);
  for (const auto& p : kPatterns) out.push_back(single_generation_tree(p, false));
  return out;
}

std::vector<ColoredTree> expand(const ColoredTree& t) {
  if (!t.well_formed()) throw std::invalid_argument("expand: malformed tree");
  std::vector<ColoredTree> out;
  out.reserve(5 * t.count_black_terminals() + t.count_red_terminals());
  for (int i = 0; i < t.size(); ++i) {
    if (!t.nodes[i].terminal()) continue;
    if (t.nodes[i].red) {
      out.push_back(graft(t, i, {true, true, true}));
    } else {
      for (const auto& p : kPatterns) out.push_back(graft(t, i, p));
    }
  }
  return out;
}

std::vector<ColoredTree> generation(int J, int j_max) {
  if (J < 1 || J > j_max) throw std::out_of_range("generation: J outside materialization range");
  std::vector<ColoredTree> current = first_generation();
  for (int j = 1; j < J; ++j) {
    std::vector<ColoredTree> next;
    for (const auto& t : current) {
      auto children = expand(t);
      next.insert(next.end(), std::make_move_iterator(children.begin()),
                  std::make_move_iterator(children.end()));
    }
    current = std::move(next);
  }
  return current;
}

void for_each_tree(int J, const std::function<void(const ColoredTree&)>& visit) {
  if (J < 1) throw std::out_of_range("for_each_tree: J must be >= 1");
  std::function<void(const ColoredTree&, int)> walk = [&](const ColoredTree& t, int depth) {
    if (depth == J) {
      visit(t);
      return;
    }
    for (const auto& child : expand(t)) walk(child, depth + 1);
  };
  for (const auto& t : first_generation()) walk(t, 1);
}

GenerationCensus census_recursive(int J) {
  if (J < 1) throw std::out_of_range("census_recursive: J must be >= 1");
  // class (b, r) -> multiplicity; r = 2j+1-b is tracked explicitly for
  // clarity, the map stays small either way
  std::map<std::pair<int, int>, BigUint> classes;
  classes[{3, 0}] = 1;
  classes[{1, 2}] = 2;
  classes[{2, 1}] = 2;
  for (int j = 1; j < J; ++j) {
    std::map<std::pair<int, int>, BigUint> next;
    for (const auto& [key, count] : classes) {
      const auto [b, r] = key;
      // black terminal, pattern 1: two extra black terminals
      next[{b + 2, r}] += count * static_cast<std::uint64_t>(b);
      // black terminal, patterns 2 and 3; red terminal growing the red tree
      next[{b, r + 2}] += count * static_cast<std::uint64_t>(2 * b + r);
      // black terminal, patterns 4 and 5
      next[{b + 1, r + 1}] += count * static_cast<std::uint64_t>(2 * b);
    }
    classes = std::move(next);
  }
  GenerationCensus census;
  census.J = J;
  for (const auto& [key, count] : classes) {
    const auto [b, r] = key;
    census.n_trees += count;
    census.black_total += count * static_cast<std::uint64_t>(b);
    census.red_total += count * static_cast<std::uint64_t>(r);
  }
  census.per_tree = std::move(classes);
  return census;
}

BoundCheck bound_check(int J) {
  BoundCheck out;
  out.J = J;
  out.n_trees = census_recursive(J).n_trees;
  BigUint bound{1};
  for (int j = 1; j <= J; ++j) bound *= static_cast<std::uint64_t>(5 * (2 * j - 1));
  out.bound_double_factorial = bound;
  out.bound_gamma = std::exp(J * std::log(10.0) + std::lgamma(J + 0.5) - 0.5 * std::log(M_PI));
  out.ok = out.n_trees <= out.bound_double_factorial;
  return out;
}

int psgn(const ColoredTree& t, int node) {
  const int parent = t.nodes[node].parent;
  if (parent < 0) return +1;
  return t.nodes[parent].child[1] == node ? -1 : +1;
}

int fsgn(const ColoredTree& t, int node) {
  int middles = 0;
  for (int a = t.nodes[node].parent; a >= 0; a = t.nodes[a].parent)
    if (psgn(t, a) < 0) ++middles;
  return psgn(t, node) * (middles % 2 ? -1 : +1);
}

std::string to_bracket(const ColoredTree& t) {
  std::string out;
  std::function<void(int)> walk = [&](int node) {
    out += '[';
    out += t.nodes[node].red ? 'r' : 'b';
    if (!t.nodes[node].terminal())
      for (int c = 0; c < 3; ++c) walk(t.nodes[node].child[c]);
    out += ']';
  };
  walk(t.root());
  return out;
}

bool validate_index_assignment(const ColoredTree& t, const IndexAssignment& a,
                               std::vector<IndexViolation>* violations) {
  if (static_cast<int>(a.freq.size()) != t.size())
    throw std::invalid_argument("validate_index_assignment: assignment does not cover all nodes");
  auto near = [](int x, int y) { return std::abs(x - y) <= 1; };
  bool ok = true;
  auto report = [&](int node, std::string what) {
    ok = false;
    if (violations) violations->push_back({node, std::move(what)});
  };
  for (int i = 0; i < t.size(); ++i) {
    const auto& node = t.nodes[i];
    if (node.terminal()) continue;
    const int n = a.freq[i];
    const int n1 = a.freq[node.child[0]];
    const int n2 = a.freq[node.child[1]];
    const int n3 = a.freq[node.child[2]];
    if (node.red) {
      if (n != n1 - n2 + n3) report(i, "red node: n != n1 - n2 + n3");
      if (n == n1) report(i, "red node: n == n1");
      if (n == n3) report(i, "red node: n == n3");
    } else {
      if (!near(n, n1 - n2 + n3)) report(i, "black node: n !~ n1 - n2 + n3");
      if (near(n, n1)) report(i, "black node: n ~ n1");
      if (near(n, n3)) report(i, "black node: n ~ n3");
    }
  }
  const auto& root = t.nodes[t.root()];
  if (!root.terminal()) {
    const int n = a.freq[t.root()];
    const int n1 = a.freq[root.child[0]];
    const int n3 = a.freq[root.child[2]];
    const Real mu1 = 2.0 * (n - n1) * (n - n3);
    if (!(std::abs(mu1) > a.threshold)) report(t.root(), "root: |mu_1| <= threshold");
  }
  return ok;
}

std::optional<IndexAssignment> find_index_assignment(const ColoredTree& t, int root_freq,
                                                     Real threshold, int band) {
  if (t.generation > 2)
    throw std::invalid_argument("find_index_assignment: brute force is exposed for J <= 2 only");
  IndexAssignment a;
  a.freq.assign(t.size(), 0);
  a.threshold = threshold;
  a.freq[t.root()] = root_freq;
  // assign children triples node by node, in preorder
  std::vector<int> nonterminals;
  for (int i = 0; i < t.size(); ++i)
    if (!t.nodes[i].terminal()) nonterminals.push_back(i);
  std::function<bool(std::size_t)> assign = [&](std::size_t idx) -> bool {
    if (idx == nonterminals.size())
      return validate_index_assignment(t, a, nullptr);
    const int node = nonterminals[idx];
    for (int n1 = -band; n1 <= band; ++n1)
      for (int n2 = -band; n2 <= band; ++n2)
        for (int n3 = -band; n3 <= band; ++n3) {
          a.freq[t.nodes[node].child[0]] = n1;
          a.freq[t.nodes[node].child[1]] = n2;
          a.freq[t.nodes[node].child[2]] = n3;
          if (assign(idx + 1)) return true;
        }
    return false;
  };
  if (assign(0)) return a;
  return std::nullopt;
}

PhaseLedger make_phase_ledger(const std::vector<Real>& mu) {
  if (mu.empty()) throw std::invalid_argument("make_phase_ledger: empty mu list");
  PhaseLedger ledger;
  ledger.mu = mu;
  Real sum = 0, prod = 1;
  for (Real m : mu) {
    sum += m;
    prod *= sum;
    ledger.mu_tilde.push_back(sum);
    ledger.mu_hat.push_back(prod);
  }
  return ledger;
}

bool in_C_J(const PhaseLedger& ledger, int J) {
  if (J < 1 || static_cast<std::size_t>(J + 1) > ledger.mu_tilde.size())
    throw std::out_of_range("in_C_J: ledger too short for this J");
  const Real next = std::abs(ledger.mu_tilde[J]);  // mu_tilde_{J+1}, 0-based
  const Real cube = std::pow(2.0 * J + 3.0, 3.0);
  const Real a = std::pow(std::abs(ledger.mu_tilde[J - 1]), 0.99);
  const Real b = std::pow(std::abs(ledger.mu[0]), 0.99);
  return next <= cube * a || next <= cube * b;
}

void export_census_csv(const std::string& path, int j_max) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("export_census_csv: cannot open " + path);
  out << "J,N,b,r\n";
  for (int j = 1; j <= j_max; ++j) {
    const GenerationCensus c = census_recursive(j);
    out << j << "," << c.n_trees.to_string() << "," << c.black_total.to_string() << ","
        << c.red_total.to_string() << "\n";
  }
}

}  // namespace nlshybrid
