#include "armlin/coarmould.hpp"

namespace armlin {

namespace {

std::map<MultiIndex, int> decoration_multiset(const Forest& forest) {
    std::map<MultiIndex, int> out;
    std::function<void(const Tree&)> walk = [&](const Tree& t) {
        ++out[t.decoration()];
        for (const auto& c : t.children()) walk(c);
    };
    for (const auto& t : forest.trees()) walk(t);
    return out;
}

} // namespace

std::map<Forest, int> product_rule_multiplicities(const Forest& f1, const Forest& f2, int cap) {
    if (f1.dim() != f2.dim())
        throw StructuralError("product rule: dimension mismatch");
    std::map<Forest, int> out;
    const int total = f1.abs_weight() + f2.abs_weight();
    if (total > cap) return out;

    auto want = decoration_multiset(f1);
    for (const auto& [n, c] : decoration_multiset(f2)) want[n] += c;
    std::vector<MultiIndex> alphabet;
    alphabet.reserve(want.size());
    for (const auto& [n, c] : want) alphabet.push_back(n);

    for (const Forest& f : enumerate_forests(f1.dim(), alphabet, total, ForestFilter::All)) {
        if (f.abs_weight() != total || decoration_multiset(f) != want) continue;
        int k = 0;
        for (const auto& cut : admissible_cuts(f))
            if (cut.pruned == f1 && cut.remaining == f2) ++k;
        if (k > 0) out.emplace(f, k);
    }
    return out;
}

} // namespace armlin
