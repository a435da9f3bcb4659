#include "armlin/forest.hpp"

#include <algorithm>
#include <cctype>
#include <map>

namespace armlin {

Tree::Tree(MultiIndex decoration, TreeList children)
    : deco_(std::move(decoration)), children_(std::move(children)) {
    if (!deco_.in_N())
        throw StructuralError("tree: decoration " + deco_.to_string() + " is not in N");
    for (const auto& c : children_)
        if (c.dim() != deco_.dim()) throw StructuralError("tree: child dimension mismatch");
    std::sort(children_.begin(), children_.end());
}

int Tree::size() const {
    int s = 1;
    for (const auto& c : children_) s += c.size();
    return s;
}

int Tree::height() const {
    int h = 0;
    for (const auto& c : children_) h = std::max(h, c.height());
    return h + 1;
}

MultiIndex Tree::weight() const {
    MultiIndex w = deco_;
    for (const auto& c : children_) w += c.weight();
    return w;
}

int Tree::abs_weight() const { return weight().degree(); }

bool operator<(const Tree& a, const Tree& b) {
    if (a.deco_ != b.deco_) return a.deco_ < b.deco_;
    return a.children_ < b.children_;
}

Forest::Forest(int dim, TreeList trees) : Forest(dim) {
    for (const auto& t : trees)
        if (t.dim() != dim) throw StructuralError("forest: tree dimension mismatch");
    std::sort(trees.begin(), trees.end());
    trees_ = std::move(trees);
}

Forest Forest::single(Tree t) {
    int d = t.dim();
    return Forest(d, TreeList{std::move(t)});
}

int Forest::size() const {
    int s = 0;
    for (const auto& t : trees_) s += t.size();
    return s;
}

int Forest::height() const {
    int h = 0;
    for (const auto& t : trees_) h = std::max(h, t.height());
    return h;
}

MultiIndex Forest::weight() const {
    MultiIndex w = MultiIndex::zeros(dim_);
    for (const auto& t : trees_) w += t.weight();
    return w;
}

int Forest::abs_weight() const { return weight().degree(); }

std::vector<std::pair<Tree, int>> Forest::factor_multiset() const {
    std::vector<std::pair<Tree, int>> out;
    for (const auto& t : trees_) {
        if (!out.empty() && out.back().first == t)
            ++out.back().second;
        else
            out.emplace_back(t, 1);
    }
    return out;
}

Forest operator*(const Forest& a, const Forest& b) {
    if (a.dim_ != b.dim_) throw StructuralError("forest product: dimension mismatch");
    TreeList merged;
    merged.reserve(a.trees_.size() + b.trees_.size());
    std::merge(a.trees_.begin(), a.trees_.end(), b.trees_.begin(), b.trees_.end(),
               std::back_inserter(merged));
    Forest r(a.dim_);
    r.trees_ = std::move(merged);
    return r;
}

Tree graft(const MultiIndex& n, const Forest& forest) {
    if (n.dim() != forest.dim()) throw StructuralError("graft: dimension mismatch");
    return Tree(n, forest.trees());
}

Tree bamboo(const std::vector<MultiIndex>& decorations) {
    if (decorations.empty()) throw StructuralError("bamboo: needs at least one decoration");
    int dim = decorations.front().dim();
    Forest below = Forest::empty(dim);
    for (auto it = decorations.rbegin(); it != decorations.rend(); ++it)
        below = Forest::single(graft(*it, below));
    return below.trees().front();
}

std::string VertexRef::to_string() const {
    std::string s = std::to_string(root);
    for (int p : path) s += "." + std::to_string(p);
    return s;
}

namespace {

void collect_subtree_weights(const Tree& t, VertexRef ref,
                             std::vector<std::pair<VertexRef, MultiIndex>>& out) {
    out.emplace_back(ref, t.weight());
    for (int i = 0; i < static_cast<int>(t.children().size()); ++i) {
        VertexRef child = ref;
        child.path.push_back(i);
        collect_subtree_weights(t.children()[static_cast<size_t>(i)], child, out);
    }
}

} // namespace

ForestStats forest_stats(const Forest& forest) {
    ForestStats st;
    st.size = forest.size();
    st.degree = forest.degree();
    st.height = forest.height();
    st.weight = forest.weight();
    st.abs_weight = forest.abs_weight();
    for (int i = 0; i < static_cast<int>(forest.trees().size()); ++i)
        collect_subtree_weights(forest.trees()[static_cast<size_t>(i)], VertexRef{i, {}},
                                st.subtree_weights);
    return st;
}

bool is_Fplus(const Tree& tree) {
    if (!tree.weight().in_N()) return false;
    for (const auto& c : tree.children())
        if (!is_Fplus(c)) return false;
    return true;
}

bool is_Fplus(const Forest& forest) {
    for (const auto& t : forest.trees())
        if (!is_Fplus(t)) return false;
    return true;
}

namespace {

struct TreeCut {
    std::vector<std::vector<int>> paths; // relative to the tree root
    Forest pruned;
    Forest remaining; // degree <= 1; empty iff the root itself was cut

    explicit TreeCut(int dim) : pruned(dim), remaining(dim) {}
};

// adm(T) = { combinations of child cuts } followed by the root cut.
// Every child's cut list starts with its own empty cut, so "child kept
// whole" is already covered by the combination step.
std::vector<TreeCut> cuts_of_tree(const Tree& t) {
    const int dim = t.dim();
    std::vector<TreeCut> combos;
    combos.emplace_back(dim); // empty selection so far
    for (int ci = 0; ci < static_cast<int>(t.children().size()); ++ci) {
        const Tree& child = t.children()[static_cast<size_t>(ci)];
        auto child_cuts = cuts_of_tree(child);
        std::vector<TreeCut> next;
        next.reserve(combos.size() * child_cuts.size());
        for (const auto& base : combos) {
            for (const auto& cc : child_cuts) {
                TreeCut merged = base;
                for (auto p : cc.paths) {
                    p.insert(p.begin(), ci);
                    merged.paths.push_back(std::move(p));
                }
                merged.pruned = merged.pruned * cc.pruned;
                merged.remaining = merged.remaining * cc.remaining;
                next.push_back(std::move(merged));
            }
        }
        combos = std::move(next);
    }
    for (auto& c : combos)
        c.remaining = Forest::single(Tree(t.decoration(), c.remaining.trees()));

    TreeCut root_cut(dim);
    root_cut.paths.push_back({});
    root_cut.pruned = Forest::single(t);
    combos.push_back(std::move(root_cut));
    return combos;
}

} // namespace

std::vector<AdmissibleCut> admissible_cuts(const Forest& forest) {
    const int dim = forest.dim();
    std::vector<AdmissibleCut> cuts;
    cuts.push_back(AdmissibleCut{{}, Forest::empty(dim), Forest::empty(dim)});
    for (int ti = 0; ti < static_cast<int>(forest.trees().size()); ++ti) {
        const Tree& t = forest.trees()[static_cast<size_t>(ti)];
        auto tree_cuts = cuts_of_tree(t);
        std::vector<AdmissibleCut> next;
        next.reserve(cuts.size() * tree_cuts.size());
        for (const auto& base : cuts) {
            for (const auto& tc : tree_cuts) {
                AdmissibleCut merged = base;
                for (const auto& p : tc.paths) merged.selected.push_back(VertexRef{ti, p});
                merged.pruned = merged.pruned * tc.pruned;
                merged.remaining = merged.remaining * tc.remaining;
                next.push_back(std::move(merged));
            }
        }
        cuts = std::move(next);
    }
    // Generation order puts the empty cut first and the all-roots cut last.
    return cuts;
}

std::uint64_t symmetry_factor(const Tree& tree) {
    return symmetry_factor(Forest(tree.dim(), tree.children()));
}

std::uint64_t symmetry_factor(const Forest& forest) {
    std::uint64_t sym = 1;
    for (const auto& [t, mult] : forest.factor_multiset()) {
        for (int k = 2; k <= mult; ++k) sym *= static_cast<std::uint64_t>(k);
        std::uint64_t st = symmetry_factor(t);
        for (int k = 0; k < mult; ++k) sym *= st;
    }
    return sym;
}

namespace {

bool tree_passes(const Tree& t, const Forest& children, ForestFilter filter) {
    switch (filter) {
        case ForestFilter::All:
            return true;
        case ForestFilter::Fplus:
            // children already filtered, only the new root weight is at stake
            return t.weight().in_N();
        case ForestFilter::NVCandidates:
            return t.weight().in_N() &&
                   t.decoration().degree() >= children.degree() - 1;
    }
    return true;
}

// Trees grouped by |‖T‖|, each level canonically sorted.
std::vector<std::vector<Tree>> trees_by_weight(int dim, const std::vector<MultiIndex>& decorations,
                                               int weight_cap, ForestFilter filter) {
    for (const auto& n : decorations) {
        if (n.dim() != dim) throw StructuralError("enumerate: decoration dimension mismatch");
        if (!n.in_N())
            throw StructuralError("enumerate: decoration " + n.to_string() + " is not in N");
    }
    std::vector<std::vector<Tree>> byw(static_cast<size_t>(weight_cap) + 1);
    // flat pool of trees of weight < w, kept sorted by (weight, canonical)
    std::vector<Tree> pool;
    std::vector<int> pool_weight;

    for (int w = 1; w <= weight_cap; ++w) {
        std::vector<Tree> level;
        for (const auto& n : decorations) {
            int a = n.degree();
            if (a > w) continue;
            int rest = w - a;
            // multisets of pool trees with total weight = rest
            std::vector<Tree> chosen;
            std::function<void(int, int)> pick = [&](int start, int remaining) {
                if (remaining == 0) {
                    Forest children(dim, chosen);
                    Tree t(n, children.trees());
                    if (tree_passes(t, children, filter)) level.push_back(std::move(t));
                    return;
                }
                for (int j = start; j < static_cast<int>(pool.size()); ++j) {
                    if (pool_weight[static_cast<size_t>(j)] > remaining) continue;
                    chosen.push_back(pool[static_cast<size_t>(j)]);
                    pick(j, remaining - pool_weight[static_cast<size_t>(j)]);
                    chosen.pop_back();
                }
            };
            pick(0, rest);
        }
        std::sort(level.begin(), level.end());
        level.erase(std::unique(level.begin(), level.end()), level.end());
        for (const auto& t : level) {
            pool.push_back(t);
            pool_weight.push_back(w);
        }
        byw[static_cast<size_t>(w)] = std::move(level);
    }
    return byw;
}

} // namespace

std::vector<Tree> enumerate_trees(int dim, const std::vector<MultiIndex>& decorations,
                                  int weight_cap, ForestFilter filter) {
    auto byw = trees_by_weight(dim, decorations, weight_cap, filter);
    std::vector<Tree> out;
    for (auto& level : byw)
        for (auto& t : level) out.push_back(std::move(t));
    return out;
}

void for_each_forest(int dim, const std::vector<MultiIndex>& decorations, int weight_cap,
                     ForestFilter filter, const std::function<void(const Forest&)>& fn) {
    auto byw = trees_by_weight(dim, decorations, weight_cap, filter);
    std::vector<Tree> pool;
    std::vector<int> pool_weight;
    for (int w = 1; w <= weight_cap; ++w)
        for (const auto& t : byw[static_cast<size_t>(w)]) {
            pool.push_back(t);
            pool_weight.push_back(w);
        }

    fn(Forest::empty(dim));
    for (int w = 1; w <= weight_cap; ++w) {
        std::vector<Forest> level;
        std::vector<Tree> chosen;
        std::function<void(int, int)> pick = [&](int start, int remaining) {
            if (remaining == 0) {
                level.push_back(Forest(dim, chosen));
                return;
            }
            for (int j = start; j < static_cast<int>(pool.size()); ++j) {
                if (pool_weight[static_cast<size_t>(j)] > remaining) continue;
                chosen.push_back(pool[static_cast<size_t>(j)]);
                pick(j, remaining - pool_weight[static_cast<size_t>(j)]);
                chosen.pop_back();
            }
        };
        pick(0, w);
        std::sort(level.begin(), level.end());
        for (const auto& f : level) fn(f);
    }
}

std::vector<Forest> enumerate_forests(int dim, const std::vector<MultiIndex>& decorations,
                                      int weight_cap, ForestFilter filter) {
    std::vector<Forest> out;
    for_each_forest(dim, decorations, weight_cap, filter,
                    [&](const Forest& f) { out.push_back(f); });
    return out;
}

std::vector<std::pair<Forest, Forest>> ordered_factorizations(const Forest& forest) {
    auto factors = forest.factor_multiset();
    std::vector<std::pair<Forest, Forest>> out;
    std::vector<int> take(factors.size(), 0);
    while (true) {
        TreeList left, right;
        for (size_t k = 0; k < factors.size(); ++k) {
            for (int j = 0; j < take[k]; ++j) left.push_back(factors[k].first);
            for (int j = take[k]; j < factors[k].second; ++j) right.push_back(factors[k].first);
        }
        out.emplace_back(Forest(forest.dim(), std::move(left)),
                         Forest(forest.dim(), std::move(right)));
        size_t k = 0;
        while (k < factors.size() && take[k] == factors[k].second) take[k++] = 0;
        if (k == factors.size()) break;
        ++take[k];
    }
    return out;
}

std::vector<MultiIndex> enumerate_N(int dim, int max_degree) {
    std::vector<MultiIndex> out;
    std::vector<int> entries(static_cast<size_t>(dim), 0);
    std::function<void(int)> fill = [&](int pos) {
        if (pos == dim) {
            MultiIndex n{entries};
            if (n.degree() >= 1 && n.degree() <= max_degree && n.in_N()) out.push_back(n);
            return;
        }
        for (int v = -1; v <= max_degree + 1; ++v) {
            entries[static_cast<size_t>(pos)] = v;
            fill(pos + 1);
        }
        entries[static_cast<size_t>(pos)] = 0;
    };
    fill(0);
    return out;
}

std::set<MultiIndex> decorations_of(const Forest& forest) {
    std::set<MultiIndex> out;
    std::function<void(const Tree&)> walk = [&](const Tree& t) {
        out.insert(t.decoration());
        for (const auto& c : t.children()) walk(c);
    };
    for (const auto& t : forest.trees()) walk(t);
    return out;
}

namespace {

std::string entries_joined(const MultiIndex& m) {
    std::string s;
    for (int i = 0; i < m.dim(); ++i) {
        if (i) s += ",";
        s += std::to_string(m[i]);
    }
    return s;
}

struct Parser {
    const std::string& text;
    size_t pos = 0;
    int dim;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    bool peek(char c) {
        skip_ws();
        return pos < text.size() && text[pos] == c;
    }
    void expect(char c) {
        skip_ws();
        if (pos >= text.size() || text[pos] != c)
            throw ParseError("forest notation: expected '" + std::string(1, c) + "' at position " +
                             std::to_string(pos) + " in \"" + text + "\"");
        ++pos;
    }
    bool accept(char c) {
        if (!peek(c)) return false;
        ++pos;
        return true;
    }

    int parse_int() {
        skip_ws();
        size_t start = pos;
        if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == start || (pos == start + 1 && !std::isdigit(static_cast<unsigned char>(text[start]))))
            throw ParseError("forest notation: expected integer at position " +
                             std::to_string(start));
        return std::stoi(text.substr(start, pos - start));
    }

    MultiIndex parse_entries() {
        std::vector<int> entries;
        entries.push_back(parse_int());
        while (accept(',')) entries.push_back(parse_int());
        MultiIndex m{entries};
        if (m.dim() != dim)
            throw ParseError("forest notation: multi-index " + m.to_string() + " has dimension " +
                             std::to_string(m.dim()) + ", expected " + std::to_string(dim));
        return m;
    }

    Tree parse_tree() {
        if (accept('[')) {
            MultiIndex n = parse_entries();
            expect(']');
            return Tree(n);
        }
        MultiIndex n = [&] {
            if (accept('(')) {
                MultiIndex m = parse_entries();
                expect(')');
                return m;
            }
            return parse_entries(); // bare 1-D style, e.g. 1<([1])
        }();
        expect('<');
        expect('(');
        Forest children = parse_forest();
        expect(')');
        return graft(n, children);
    }

    Forest parse_forest() {
        skip_ws();
        if (peek('(')) {
            size_t save = pos;
            ++pos;
            if (accept(')')) return Forest::empty(dim); // "()" empty forest
            pos = save;
        }
        TreeList trees;
        trees.push_back(parse_tree());
        while (accept('*')) trees.push_back(parse_tree());
        return Forest(dim, std::move(trees));
    }
};

} // namespace

std::string to_notation(const Tree& tree) {
    if (tree.children().empty()) return "[" + entries_joined(tree.decoration()) + "]";
    std::string s = "(" + entries_joined(tree.decoration()) + ")<(";
    for (size_t i = 0; i < tree.children().size(); ++i) {
        if (i) s += "*";
        s += to_notation(tree.children()[i]);
    }
    return s + ")";
}

std::string to_notation(const Forest& forest) {
    if (forest.is_empty()) return "()";
    std::string s;
    for (size_t i = 0; i < forest.trees().size(); ++i) {
        if (i) s += "*";
        s += to_notation(forest.trees()[i]);
    }
    return s;
}

Forest parse_forest(const std::string& text, int dim) {
    Parser p{text, 0, dim};
    Forest f = p.parse_forest();
    p.skip_ws();
    if (p.pos != text.size())
        throw ParseError("forest notation: trailing characters at position " +
                         std::to_string(p.pos) + " in \"" + text + "\"");
    return f;
}

MultiIndex parse_multi_index(const std::string& text, int dim) {
    Parser p{text, 0, dim};
    MultiIndex m = [&] {
        if (p.accept('(')) {
            MultiIndex r = p.parse_entries();
            p.expect(')');
            return r;
        }
        return p.parse_entries();
    }();
    p.skip_ws();
    if (p.pos != text.size()) throw ParseError("multi-index: trailing characters in \"" + text + "\"");
    return m;
}

} // namespace armlin
