#pragma once

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nlshybrid/bigint.hpp"
#include "nlshybrid/types.hpp"

namespace nlshybrid {

// Rooted ternary tree with ordered children and a black/red color per node.
// Nodes are stored in preorder; every nonterminal node has exactly three
// children (left, middle, right).
struct ColoredTree {
  struct Node {
    std::int32_t parent = -1;
    std::array<std::int32_t, 3> child{-1, -1, -1};
    bool red = false;
    bool terminal() const { return child[0] < 0; }
  };
  std::vector<Node> nodes;
  int generation = 0;

  int size() const { return static_cast<int>(nodes.size()); }
  int root() const { return 0; }
  int count_terminals() const;
  int count_black_terminals() const;
  int count_red_terminals() const;
  bool well_formed() const;
};

// The five first-generation coloring patterns, in the order matching the
// operator kinds I..V (children colors bbb, rrb, rbr, bbr, brb under a
// black root).
std::vector<ColoredTree> first_generation();

// One tree per red terminal (sprouting three red children) and five per
// black terminal (one per first-generation pattern), terminals processed in
// preorder; output size 5b + r.
std::vector<ColoredTree> expand(const ColoredTree& t);

inline constexpr int kMaxMaterializedGeneration = 5;

std::vector<ColoredTree> generation(int J, int j_max = kMaxMaterializedGeneration);

// Visit every tree of C(J) without materializing the full generation.
void for_each_tree(int J, const std::function<void(const ColoredTree&)>& visit);

struct GenerationCensus {
  int J = 0;
  BigUint n_trees;
  BigUint black_total;
  BigUint red_total;
  // multiset of per-tree terminal counts: (b_k, r_k) -> multiplicity
  std::map<std::pair<int, int>, BigUint> per_tree;
};

// Exact census by the generation recursions, no tree materialization.
GenerationCensus census_recursive(int J);

struct BoundCheck {
  int J = 0;
  BigUint n_trees;
  double bound_gamma = 0;  // 10^J Gamma(J + 1/2) / sqrt(pi)
  BigUint bound_double_factorial;  // 5^J (2J-1)!!
  bool ok = false;
};

BoundCheck bound_check(int J);

// Principal sign: -1 exactly for middle children; +1 otherwise (the root is
// never a middle child).
int psgn(const ColoredTree& t, int node);
// Final sign: psgn times (-1)^(number of middle-child ancestors).
int fsgn(const ColoredTree& t, int node);

std::string to_bracket(const ColoredTree& t);

struct IndexAssignment {
  std::vector<int> freq;  // frequency n_a per node
  Real threshold = 0;     // root phase must exceed this in magnitude
};

struct IndexViolation {
  int node;
  std::string what;
};

// Checks the node constraints (approximate convolution relation at black
// nodes, exact at red ones, with the matching non-degeneracy) and the root
// phase condition |mu_1| > threshold.
bool validate_index_assignment(const ColoredTree& t, const IndexAssignment& a,
                               std::vector<IndexViolation>* violations = nullptr);

// Brute-force search over |n_a| <= band for a valid assignment with the
// given root frequency.  Intended for J <= 2.
std::optional<IndexAssignment> find_index_assignment(const ColoredTree& t, int root_freq,
                                                     Real threshold, int band);

struct PhaseLedger {
  std::vector<Real> mu;        // per-generation phase factors
  std::vector<Real> mu_tilde;  // partial sums
  std::vector<Real> mu_hat;    // partial products of the partial sums
};

PhaseLedger make_phase_ledger(const std::vector<Real>& mu);

// |mu_tilde_{J+1}| <= (2J+3)^3 |mu_tilde_J|^{1-1/100}  or the same with
// |mu_1| in place of |mu_tilde_J|.
bool in_C_J(const PhaseLedger& ledger, int J);

void export_census_csv(const std::string& path, int j_max);

}  // namespace nlshybrid
