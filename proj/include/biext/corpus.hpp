// Enumeration of small two-term complexes used by the property checks.
#pragma once

#include "biext/complex.hpp"

namespace biext {

struct CorpusEntry {
    std::string name;
    TwoTermComplex K;
};

inline std::vector<std::pair<std::string, FgAbGroup>> corpus_groups() {
    return {{"0", FgAbGroup::zero()},
            {"Z/2", FgAbGroup::cyclic(2)},
            {"Z/3", FgAbGroup::cyclic(3)},
            {"Z/4", FgAbGroup::cyclic(4)},
            {"Z/2+Z/2", FgAbGroup::from_orders({2, 2})}};
}

// Every [A --u--> B] with A, B from the given list and every u in Hom(A, B).
inline std::vector<CorpusEntry> complexes_over(const std::vector<std::pair<std::string, FgAbGroup>>& groups) {
    std::vector<CorpusEntry> out;
    for (const auto& [an, a] : groups)
        for (const auto& [bn, b] : groups) {
            HomGroup h(a, b);
            auto elems = enumerate_elements(h.group());
            for (std::size_t k = 0; k < elems.size(); ++k) {
                GroupHom u = h.element(elems[k]);
                out.push_back({"[" + an + " -" + std::to_string(k) + "-> " + bn + "]", TwoTermComplex(a, b, u)});
            }
        }
    return out;
}

// All 60 complexes with A, B in {0, Z/2, Z/3, Z/4, Z/2+Z/2}.
inline std::vector<CorpusEntry> full_corpus() { return complexes_over(corpus_groups()); }

// Entries with |B| <= 3.
inline std::vector<CorpusEntry> small_b_corpus() {
    std::vector<CorpusEntry> out;
    for (auto& e : full_corpus())
        if (e.K.B.order() <= 3) out.push_back(e);
    return out;
}

// Entries with A, B in {0, Z/2, Z/3}.
inline std::vector<CorpusEntry> triple_corpus() {
    auto g = corpus_groups();
    g.resize(3);
    return complexes_over(g);
}

} // namespace biext
