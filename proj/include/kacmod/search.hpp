#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "kacmod/autoinv.hpp"
#include "kacmod/modular.hpp"

namespace kacmod {

// Partition of weight indices by invariants that any S/T-commuting permutation
// must preserve: the exact T exponent, the q-dimension (clustered, since Q is
// computed in floating point), and the per-(r,k)-block sorted o-counts.
struct SignatureClasses {
    std::vector<int> class_of;            // weight index -> class id
    std::vector<std::vector<int>> members; // class id -> sorted member indices
};

inline SignatureClasses signature_classes(const ModularData& md, double q_resolution = 1e-7) {
    const WeightTable& table = md.table();
    const AlgebraSpec& spec = table.spec();
    int n = table.size();
    int s = spec.num_factors();

    // cluster q-dimensions: split sorted values where the gap exceeds the
    // resolution, so float noise cannot separate equal values
    std::vector<std::pair<double, int>> qs(static_cast<size_t>(n));
    for (int t = 0; t < n; ++t) qs[static_cast<size_t>(t)] = {q_dimension(spec, table.at(t)), t};
    std::sort(qs.begin(), qs.end());
    std::vector<int> q_class(static_cast<size_t>(n), 0);
    int qc = 0;
    for (int i = 0; i < n; ++i) {
        if (i > 0 && qs[static_cast<size_t>(i)].first - qs[static_cast<size_t>(i - 1)].first > q_resolution)
            ++qc;
        q_class[static_cast<size_t>(qs[static_cast<size_t>(i)].second)] = qc;
    }

    // group factor indices by (r,k); a factor permutation may shuffle o-counts
    // within a block, so only the sorted multiset per block is invariant
    std::map<std::pair<int, int>, std::vector<int>> blocks;
    for (int i = 0; i < s; ++i)
        blocks[{spec.factors[static_cast<size_t>(i)].rank, spec.factors[static_cast<size_t>(i)].level}]
            .push_back(i);

    using Key = std::tuple<long long, long long, int, std::vector<int>>;
    std::map<Key, int> key_to_class;
    SignatureClasses sc;
    sc.class_of.resize(static_cast<size_t>(n));
    for (int t = 0; t < n; ++t) {
        const Rational& e = md.Texp(t);
        std::vector<int> osig;
        for (const auto& [rk, idxs] : blocks) {
            std::vector<int> os;
            for (int i : idxs) os.push_back(o_count(spec, table.at(t), i));
            std::sort(os.begin(), os.end());
            osig.insert(osig.end(), os.begin(), os.end());
            osig.push_back(-1); // block separator
        }
        Key key{e.num(), e.den(), q_class[static_cast<size_t>(t)], std::move(osig)};
        auto [it, fresh] = key_to_class.emplace(key, static_cast<int>(sc.members.size()));
        if (fresh) sc.members.emplace_back();
        sc.class_of[static_cast<size_t>(t)] = it->second;
        sc.members[static_cast<size_t>(it->second)].push_back(t);
    }
    return sc;
}

namespace detail {

struct SearchState {
    const ModularData* md;
    const SignatureClasses* sc;
    double tol_u;
    std::vector<int> image;    // -1 = unassigned
    std::vector<bool> used;
    std::vector<int> order;    // assignment order
    std::vector<int> assigned; // indices already assigned, in order
    std::vector<Permutation>* out;

    bool consistent(int t, int w) const {
        // S rows against everything already pinned, including the diagonal
        if (std::abs(md->S(w, w) - md->S(t, t)) > tol_u) return false;
        for (int u : assigned) {
            if (std::abs(md->S(w, image[static_cast<size_t>(u)]) - md->S(t, u)) > tol_u) return false;
        }
        return true;
    }

    void run(size_t depth) {
        if (depth == order.size()) {
            out->push_back(image);
            return;
        }
        int t = order[depth];
        for (int w : sc->members[static_cast<size_t>(sc->class_of[static_cast<size_t>(t)])]) {
            if (used[static_cast<size_t>(w)]) continue;
            if (!consistent(t, w)) continue;
            image[static_cast<size_t>(t)] = w;
            used[static_cast<size_t>(w)] = true;
            assigned.push_back(t);
            run(depth + 1);
            assigned.pop_back();
            used[static_cast<size_t>(w)] = false;
            image[static_cast<size_t>(t)] = -1;
        }
    }
};

} // namespace detail

// Exhaustive constraint-propagated search for all permutations commuting
// with S and T. Independent of the classification machinery.
inline std::vector<Permutation> search_all(const ModularData& md, double tol_u = 1e-9,
                                           int bound = 200) {
    int n = md.size();
    if (n > bound) throw std::length_error("search_all: table size exceeds bound");
    SignatureClasses sc = signature_classes(md);

    detail::SearchState st;
    st.md = &md;
    st.sc = &sc;
    st.tol_u = tol_u;
    st.image.assign(static_cast<size_t>(n), -1);
    st.used.assign(static_cast<size_t>(n), false);
    std::vector<Permutation> results;
    st.out = &results;

    // k*Lambda_0 is pinned: its S row is the unique strictly positive one
    st.image[0] = 0;
    st.used[0] = true;
    st.assigned.push_back(0);

    // assign small classes first; ties by index for determinism
    std::vector<int> rest;
    for (int t = 1; t < n; ++t) rest.push_back(t);
    std::stable_sort(rest.begin(), rest.end(), [&](int a, int b) {
        size_t ca = sc.members[static_cast<size_t>(sc.class_of[static_cast<size_t>(a)])].size();
        size_t cb = sc.members[static_cast<size_t>(sc.class_of[static_cast<size_t>(b)])].size();
        return ca < cb;
    });
    st.order = std::move(rest);
    st.run(0);

    std::sort(results.begin(), results.end());
    return results;
}

struct SearchReport {
    std::vector<Permutation> unexplained; // found by search, missing from classification
    std::vector<Permutation> not_found;   // classified, missed by search
    bool empty() const { return unexplained.empty() && not_found.empty(); }
};

inline SearchReport search_report(const std::vector<Permutation>& searched,
                                  const std::vector<Permutation>& classified) {
    std::set<Permutation> a(searched.begin(), searched.end());
    std::set<Permutation> b(classified.begin(), classified.end());
    SearchReport rep;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(rep.unexplained));
    std::set_difference(b.begin(), b.end(), a.begin(), a.end(), std::back_inserter(rep.not_found));
    return rep;
}

// Literal n!-enumeration filtered by the S/T commutation test; tiny-instance oracle.
inline std::vector<Permutation> search_exhaustive(const ModularData& md, double tol_u = 1e-9) {
    int n = md.size();
    Permutation p = identity_permutation(n);
    std::vector<Permutation> out;
    do {
        if (is_automorphism_invariant(md, p, tol_u)) out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace kacmod
