#pragma once

#include <algorithm>
#include <compare>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "kacmod/rational.hpp"

namespace kacmod {

// One simple factor A_r at level k.
struct Factor {
    int rank;   // r >= 1
    int level;  // k >= 1

    int rbar() const { return rank + 1; }
    int hdual() const { return rank + 1; }
    int kbar() const { return level + rank + 1; }

    // ktilde = kbar when r and kbar are both even, else k.
    int ktilde() const {
        return (rank % 2 == 0 && kbar() % 2 == 0) ? kbar() : level;
    }
};

struct AlgebraSpec {
    std::vector<Factor> factors;

    explicit AlgebraSpec(std::vector<Factor> f) : factors(std::move(f)) {
        if (factors.empty()) throw std::invalid_argument("AlgebraSpec: need at least one factor");
        for (const auto& fa : factors) {
            if (fa.rank < 1) throw std::invalid_argument("AlgebraSpec: rank must be >= 1");
            if (fa.level < 1) throw std::invalid_argument("AlgebraSpec: level must be >= 1");
        }
    }

    int num_factors() const { return static_cast<int>(factors.size()); }
};

// Dynkin labels, one vector of length r_i+1 per factor, each summing to k_i.
struct Weight {
    std::vector<std::vector<int>> labels;

    auto operator<=>(const Weight&) const = default;
};

inline bool valid_weight(const AlgebraSpec& spec, const Weight& w) {
    if (static_cast<int>(w.labels.size()) != spec.num_factors()) return false;
    for (int i = 0; i < spec.num_factors(); ++i) {
        const auto& l = w.labels[i];
        if (static_cast<int>(l.size()) != spec.factors[i].rbar()) return false;
        int sum = 0;
        for (int v : l) {
            if (v < 0) return false;
            sum += v;
        }
        if (sum != spec.factors[i].level) return false;
    }
    return true;
}

namespace detail {

// Compositions of k into n nonnegative parts, lexicographically decreasing.
inline void compositions(int k, int n, std::vector<int>& cur,
                         std::vector<std::vector<int>>& out) {
    if (n == 1) {
        cur.push_back(k);
        out.push_back(cur);
        cur.pop_back();
        return;
    }
    for (int v = k; v >= 0; --v) {
        cur.push_back(v);
        compositions(k - v, n - 1, cur, out);
        cur.pop_back();
    }
}

} // namespace detail

// Canonical indexing of all level-k highest weights. The order is the
// cartesian product of per-factor lists (factor 0 slowest), each per-factor
// list lexicographically decreasing, so k*Lambda_0 is first.
class WeightTable {
public:
    explicit WeightTable(AlgebraSpec spec) : spec_(std::move(spec)) {
        factor_weights_.resize(spec_.factors.size());
        for (size_t i = 0; i < spec_.factors.size(); ++i) {
            std::vector<int> cur;
            detail::compositions(spec_.factors[i].level, spec_.factors[i].rbar(), cur,
                                 factor_weights_[i]);
        }
        strides_.assign(spec_.factors.size(), 1);
        for (int i = spec_.num_factors() - 2; i >= 0; --i)
            strides_[i] = strides_[i + 1] * static_cast<long long>(factor_weights_[i + 1].size());
        n_ = strides_[0] * static_cast<long long>(factor_weights_[0].size());

        order_.reserve(static_cast<size_t>(n_));
        std::vector<size_t> idx(spec_.factors.size(), 0);
        for (long long t = 0; t < n_; ++t) {
            Weight w;
            w.labels.reserve(spec_.factors.size());
            long long rem = t;
            for (int i = 0; i < spec_.num_factors(); ++i) {
                long long q = rem / strides_[i];
                rem %= strides_[i];
                w.labels.push_back(factor_weights_[i][static_cast<size_t>(q)]);
            }
            index_.emplace(w, static_cast<int>(t));
            order_.push_back(std::move(w));
        }
    }

    const AlgebraSpec& spec() const { return spec_; }
    int size() const { return static_cast<int>(n_); }
    const Weight& at(int t) const { return order_.at(static_cast<size_t>(t)); }
    const std::vector<Weight>& order() const { return order_; }

    int index_of(const Weight& w) const {
        auto it = index_.find(w);
        if (it == index_.end()) throw std::out_of_range("WeightTable: weight not in table");
        return it->second;
    }

    // Per-factor sub-tables, and the mixed-radix decomposition of an index.
    const std::vector<std::vector<int>>& factor_weights(int i) const {
        return factor_weights_.at(static_cast<size_t>(i));
    }
    int factor_count(int i) const { return static_cast<int>(factor_weights_[static_cast<size_t>(i)].size()); }
    int factor_index(int t, int i) const {
        return static_cast<int>((t / strides_[static_cast<size_t>(i)]) % factor_count(i));
    }

private:
    AlgebraSpec spec_;
    std::vector<std::vector<std::vector<int>>> factor_weights_;
    std::vector<long long> strides_;
    long long n_ = 0;
    std::vector<Weight> order_;
    std::map<Weight, int> index_;
};

inline WeightTable enumerate_weights(const AlgebraSpec& spec) { return WeightTable(spec); }

// t(lambda) = sum_j j*lambda_j for one factor.
inline int t_charge(const AlgebraSpec& spec, const Weight& w, int factor) {
    if (factor < 0 || factor >= spec.num_factors())
        throw std::out_of_range("t_charge: factor index out of range");
    const auto& l = w.labels[static_cast<size_t>(factor)];
    int t = 0;
    for (size_t j = 1; j < l.size(); ++j) t += static_cast<int>(j) * l[j];
    return t;
}

// J rotation of the extended diagram: label at node j moves to node j+1 mod rbar,
// applied b_i times on factor i.
inline Weight apply_J(const AlgebraSpec& spec, const Weight& w, const std::vector<int>& exponents) {
    Weight out = w;
    for (int i = 0; i < spec.num_factors(); ++i) {
        int rbar = spec.factors[i].rbar();
        int b = ((exponents[static_cast<size_t>(i)] % rbar) + rbar) % rbar;
        if (b == 0) continue;
        const auto& src = w.labels[static_cast<size_t>(i)];
        auto& dst = out.labels[static_cast<size_t>(i)];
        for (int j = 0; j < rbar; ++j) dst[static_cast<size_t>((j + b) % rbar)] = src[static_cast<size_t>(j)];
    }
    return out;
}

// Conjugation: reverse labels 1..r, node 0 fixed, on factors with c_i = 1.
inline Weight apply_C(const AlgebraSpec& spec, const Weight& w, const std::vector<int>& bits) {
    Weight out = w;
    for (int i = 0; i < spec.num_factors(); ++i) {
        if (bits[static_cast<size_t>(i)] % 2 == 0) continue;
        auto& l = out.labels[static_cast<size_t>(i)];
        std::reverse(l.begin() + 1, l.end());
    }
    return out;
}

// Full orbit of w under all per-factor C bits and J exponents.
inline std::set<Weight> orbit(const AlgebraSpec& spec, const Weight& w) {
    std::set<Weight> out;
    int s = spec.num_factors();
    std::vector<int> b(static_cast<size_t>(s), 0);
    for (;;) {
        Weight jw = apply_J(spec, w, b);
        for (int cmask = 0; cmask < (1 << s); ++cmask) {
            std::vector<int> c(static_cast<size_t>(s));
            for (int i = 0; i < s; ++i) c[static_cast<size_t>(i)] = (cmask >> i) & 1;
            out.insert(apply_C(spec, jw, c));
        }
        int i = 0;
        while (i < s) {
            if (++b[static_cast<size_t>(i)] < spec.factors[i].rbar()) break;
            b[static_cast<size_t>(i)] = 0;
            ++i;
        }
        if (i == s) break;
    }
    return out;
}

// Number of strictly positive Dynkin labels in factor i.
inline int o_count(const AlgebraSpec& spec, const Weight& w, int factor) {
    const auto& l = w.labels.at(static_cast<size_t>(factor));
    int c = 0;
    for (int v : l) c += (v > 0) ? 1 : 0;
    return c;
}

// (Lambda_a | Lambda_b) = min(a,b) - a*b/rbar, the inverse Cartan matrix of A_r.
// x, y are finite fundamental-weight coordinate vectors of length r.
inline Rational inner_product_factor(int rank, const std::vector<int>& x, const std::vector<int>& y) {
    if (static_cast<int>(x.size()) != rank || static_cast<int>(y.size()) != rank)
        throw std::invalid_argument("inner_product_factor: dimension mismatch");
    long long rbar = rank + 1;
    long long acc_min = 0, sx = 0, sy = 0;
    for (int a = 1; a <= rank; ++a) {
        sx += static_cast<long long>(a) * x[static_cast<size_t>(a - 1)];
        sy += static_cast<long long>(a) * y[static_cast<size_t>(a - 1)];
        for (int b = 1; b <= rank; ++b)
            acc_min += static_cast<long long>(std::min(a, b)) * x[static_cast<size_t>(a - 1)] *
                       y[static_cast<size_t>(b - 1)];
    }
    return Rational(acc_min) - Rational(sx * sy, rbar);
}

// Finite part of a per-factor label vector: drop node 0.
inline std::vector<int> finite_part(const std::vector<int>& labels) {
    return std::vector<int>(labels.begin() + 1, labels.end());
}

// (rho|rho) = rbar*(rbar^2-1)/12 for A_r; equals hdual*dim/12 (strange formula).
inline Rational rho_norm2(int rank) {
    long long rbar = rank + 1;
    return Rational(rbar * (rbar * rbar - 1), 12);
}

struct FoldResult {
    std::vector<int> shifted; // all entries >= 1 when sign != 0
    int sign = 1;             // parity of the folding word; 0 on a wall
};

namespace detail {

// Reflect shifted Dynkin labels at node j. neighbors lists the adjacent nodes;
// a node adjacent twice (A_1 affine) receives the contribution twice.
template <typename GetNeighbors>
inline FoldResult fold_impl(std::vector<int> m, GetNeighbors neighbors) {
    int sign = 1;
    for (int guard = 0; guard < 1000000; ++guard) {
        int jmin = 0;
        for (size_t j = 1; j < m.size(); ++j)
            if (m[j] < m[jmin]) jmin = static_cast<int>(j);
        if (m[static_cast<size_t>(jmin)] > 0) return {std::move(m), sign};
        if (m[static_cast<size_t>(jmin)] == 0) return {std::move(m), 0};
        int v = m[static_cast<size_t>(jmin)];
        m[static_cast<size_t>(jmin)] = -v;
        for (int nb : neighbors(jmin)) m[static_cast<size_t>(nb)] += v;
        sign = -sign;
    }
    throw std::logic_error("fold: did not terminate");
}

} // namespace detail

// Fold a shifted weight (nu+rho in Dynkin labels, length rbar, entries summing
// to the shifted level) into the fundamental alcove of the affine Weyl group.
inline FoldResult affine_fold_labels(int rbar, std::vector<int> shifted) {
    if (static_cast<int>(shifted.size()) != rbar)
        throw std::invalid_argument("affine_fold: expected rbar labels");
    return detail::fold_impl(std::move(shifted), [rbar](int j) {
        std::vector<int> nb;
        nb.push_back(((j - 1) % rbar + rbar) % rbar);
        nb.push_back((j + 1) % rbar);
        return nb;
    });
}

// Same for the finite Weyl group of A_r: labels are nodes 1..r, no wraparound.
inline FoldResult finite_fold_labels(int rank, std::vector<int> shifted) {
    if (static_cast<int>(shifted.size()) != rank)
        throw std::invalid_argument("finite_fold: expected r labels");
    return detail::fold_impl(std::move(shifted), [rank](int j) {
        std::vector<int> nb;
        if (j > 0) nb.push_back(j - 1);
        if (j < rank - 1) nb.push_back(j + 1);
        return nb;
    });
}

// Spec-facing wrapper: fold shifted labels for one factor at shifted level
// kbar, returning the dominant weight (rho subtracted off) and the sign.
inline std::pair<std::vector<int>, int> affine_fold(const AlgebraSpec& spec, int factor,
                                                    std::vector<int> shifted) {
    int rbar = spec.factors.at(static_cast<size_t>(factor)).rbar();
    FoldResult fr = affine_fold_labels(rbar, std::move(shifted));
    if (fr.sign == 0) return {{}, 0};
    for (int& v : fr.shifted) v -= 1;
    return {std::move(fr.shifted), fr.sign};
}

} // namespace kacmod
