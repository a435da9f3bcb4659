#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "armlin/multi_index.hpp"

namespace armlin {

class Tree;
using TreeList = std::vector<Tree>;

// N-decorated rooted tree in canonical form: children sorted by the
// total order below. Immutable value type.
class Tree {
  public:
    Tree(MultiIndex decoration, TreeList children);
    explicit Tree(MultiIndex decoration) : Tree(std::move(decoration), {}) {}

    const MultiIndex& decoration() const { return deco_; }
    const TreeList& children() const { return children_; }
    int dim() const { return deco_.dim(); }

    int size() const;        // #T
    int height() const;      // h(T)
    MultiIndex weight() const; // ||T||
    int abs_weight() const;  // |‖T‖| = sum over vertices of |decoration|

    friend bool operator==(const Tree& a, const Tree& b) {
        return a.deco_ == b.deco_ && a.children_ == b.children_;
    }
    friend bool operator!=(const Tree& a, const Tree& b) { return !(a == b); }
    // Recursive lexicographic order on (decoration, child list); any fixed
    // total order works, this one makes canonical forms deterministic.
    friend bool operator<(const Tree& a, const Tree& b);

  private:
    MultiIndex deco_;
    TreeList children_;
};

// Element of the free commutative monoid on N-trees. Canonical form keeps
// the expanded tree list sorted; the multiset decomposition T1^d1...Ts^ds
// is recovered by run-length grouping.
class Forest {
  public:
    explicit Forest(int dim) : dim_(dim) {
        if (dim < 1) throw StructuralError("forest: dimension must be >= 1");
    }
    Forest(int dim, TreeList trees);
    static Forest empty(int dim) { return Forest(dim); }
    static Forest single(Tree t);

    int dim() const { return dim_; }
    bool is_empty() const { return trees_.empty(); }
    const TreeList& trees() const { return trees_; }

    int size() const;       // #F
    int degree() const { return static_cast<int>(trees_.size()); }
    int height() const;
    MultiIndex weight() const;
    int abs_weight() const;

    // Unique decomposition into pairwise distinct trees with multiplicities.
    std::vector<std::pair<Tree, int>> factor_multiset() const;

    friend Forest operator*(const Forest& a, const Forest& b);

    friend bool operator==(const Forest& a, const Forest& b) {
        return a.dim_ == b.dim_ && a.trees_ == b.trees_;
    }
    friend bool operator!=(const Forest& a, const Forest& b) { return !(a == b); }
    friend bool operator<(const Forest& a, const Forest& b) {
        return a.trees_ < b.trees_;
    }

  private:
    int dim_;
    TreeList trees_;
};

// T = n <| F. Errors when n is not in N.
Tree graft(const MultiIndex& n, const Forest& forest);

// Bamboo [n1,...,nr] = n1 <| (n2 <| (... <| empty)).
Tree bamboo(const std::vector<MultiIndex>& decorations);

// Stable vertex handle: index of the tree among the forest's expanded
// top-level list, then child indices down the canonical child lists.
struct VertexRef {
    int root = 0;
    std::vector<int> path;

    friend bool operator==(const VertexRef& a, const VertexRef& b) {
        return a.root == b.root && a.path == b.path;
    }
    friend bool operator<(const VertexRef& a, const VertexRef& b) {
        return std::tie(a.root, a.path) < std::tie(b.root, b.path);
    }
    std::string to_string() const;
};

struct ForestStats {
    int size = 0;
    int degree = 0;
    int height = 0;
    MultiIndex weight;
    int abs_weight = 0;
    // sigma_hat(v) = ||Tree(v, F)|| for every vertex, in depth-first order.
    std::vector<std::pair<VertexRef, MultiIndex>> subtree_weights;
};

ForestStats forest_stats(const Forest& forest);

// F in F+(N): every subtree weight sigma_hat lies in N (empty forest included).
bool is_Fplus(const Forest& forest);
bool is_Fplus(const Tree& tree);

struct AdmissibleCut {
    std::vector<VertexRef> selected; // antichain below the roots-or-root rule
    Forest pruned;                   // P^c(F): product of subtrees rooted at the cut
    Forest remaining;                // R^c(F)
};

// All admissible cuts, deterministic order; the first entry is the empty
// cut (P = empty, R = F) and the last is the all-roots cut (P = F, R = empty).
std::vector<AdmissibleCut> admissible_cuts(const Forest& forest);

// sym(F) = |Aut(F)|: product over every vertex's child forest (and the top
// level) of the factorials of repeated-subtree multiplicities.
std::uint64_t symmetry_factor(const Forest& forest);
std::uint64_t symmetry_factor(const Tree& tree);

enum class ForestFilter { All, Fplus, NVCandidates };

// Every canonical forest with decorations from the given set and
// |‖F‖| <= weight_cap, each exactly once, ordered by increasing |‖F‖| then
// canonical order. NVCandidates prunes by the necessary conditions for a
// non-vanishing operator: F+ membership and |n| >= deg(children)-1 at
// every graft (a superset of NV, so consumers may still see vanishing F).
std::vector<Forest> enumerate_forests(int dim, const std::vector<MultiIndex>& decorations,
                                      int weight_cap, ForestFilter filter = ForestFilter::All);
std::vector<Tree> enumerate_trees(int dim, const std::vector<MultiIndex>& decorations,
                                  int weight_cap, ForestFilter filter = ForestFilter::All);

void for_each_forest(int dim, const std::vector<MultiIndex>& decorations, int weight_cap,
                     ForestFilter filter, const std::function<void(const Forest&)>& fn);

// All ordered pairs (F1, F2) with F = F1 * F2 in the forest monoid.
std::vector<std::pair<Forest, Forest>> ordered_factorizations(const Forest& forest);

std::set<MultiIndex> decorations_of(const Forest& forest);

// All n in N with |n| <= max_degree, in lexicographic order (finite:
// entries >= -1 with at most one -1 and positive total degree).
std::vector<MultiIndex> enumerate_N(int dim, int max_degree);

// Text notation: leaves "[2,0]", grafting "(1,-1)<([2,0]*[2,0])",
// forest product "*", empty forest "()". Round-trips through parse_forest.
std::string to_notation(const Tree& tree);
std::string to_notation(const Forest& forest);
Forest parse_forest(const std::string& text, int dim);
MultiIndex parse_multi_index(const std::string& text, int dim);

} // namespace armlin
