#pragma once

#include <cstdlib>
#include <map>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include "kacmod/algebra.hpp"
#include "kacmod/modular.hpp"

namespace kacmod {

// Finite A_r weights in fundamental-weight (Dynkin) coordinates, length r.
using FiniteWeight = std::vector<int>;

// All weights of the finite irreducible module with highest weight `base`,
// with multiplicities.
struct WeightSystem {
    FiniteWeight base;
    std::map<FiniteWeight, long long> mults;

    long long dimension() const {
        long long d = 0;
        for (const auto& [w, m] : mults) d += m;
        return d;
    }
};

namespace detail {

inline std::vector<FiniteWeight> simple_roots(int rank) {
    std::vector<FiniteWeight> roots;
    for (int j = 0; j < rank; ++j) {
        FiniteWeight a(static_cast<size_t>(rank), 0);
        a[static_cast<size_t>(j)] = 2;
        if (j > 0) a[static_cast<size_t>(j - 1)] = -1;
        if (j < rank - 1) a[static_cast<size_t>(j + 1)] = -1;
        roots.push_back(std::move(a));
    }
    return roots;
}

inline std::vector<FiniteWeight> positive_roots(int rank) {
    auto simple = simple_roots(rank);
    std::vector<FiniteWeight> roots;
    for (int a = 0; a < rank; ++a) {
        FiniteWeight acc(static_cast<size_t>(rank), 0);
        for (int b = a; b < rank; ++b) {
            for (int j = 0; j < rank; ++j) acc[static_cast<size_t>(j)] += simple[static_cast<size_t>(b)][static_cast<size_t>(j)];
            roots.push_back(acc);
        }
    }
    return roots;
}

inline FiniteWeight add(const FiniteWeight& x, const FiniteWeight& y) {
    FiniteWeight out(x.size());
    for (size_t j = 0; j < x.size(); ++j) out[j] = x[j] + y[j];
    return out;
}

inline FiniteWeight shift_rho(const FiniteWeight& x) {
    FiniteWeight out(x.size());
    for (size_t j = 0; j < x.size(); ++j) out[j] = x[j] + 1;
    return out;
}

} // namespace detail

// dim of the irreducible A_r module via the Weyl dimension formula.
inline long long weyl_dimension(int rank, const FiniteWeight& lam) {
    auto l = detail::shift_rho(lam); // lam+rho shifted labels
    Rational d(1);
    int rbar = rank + 1;
    for (int a = 1; a <= rbar; ++a) {
        long long part = 0;
        for (int b = a; b <= rank; ++b) {
            part += l[static_cast<size_t>(b - 1)];
            d *= Rational(part, b - a + 1);
        }
    }
    if (!d.is_integer()) throw std::logic_error("weyl_dimension: non-integral result");
    return d.num();
}

// Freudenthal recursion from the highest weight; returns every weight of the
// module with its multiplicity.
inline WeightSystem weight_multiplicities(int rank, const FiniteWeight& lam,
                                          long long dim_bound = 0) {
    for (int v : lam)
        if (v < 0) throw std::invalid_argument("weight_multiplicities: weight not dominant");
    if (dim_bound > 0 && weyl_dimension(rank, lam) > dim_bound)
        throw std::length_error("weight_multiplicities: module dimension exceeds bound");

    WeightSystem ws;
    ws.base = lam;
    ws.mults[lam] = 1;

    auto pos = detail::positive_roots(rank);
    auto simple = detail::simple_roots(rank);
    auto lrho = detail::shift_rho(lam);
    Rational top = inner_product_factor(rank, lrho, lrho);

    std::vector<FiniteWeight> frontier{lam};
    while (!frontier.empty()) {
        std::map<FiniteWeight, bool> candidates;
        for (const auto& w : frontier)
            for (const auto& a : simple) {
                FiniteWeight c(w.size());
                for (size_t j = 0; j < w.size(); ++j) c[j] = w[j] - a[j];
                candidates[c] = true;
            }
        std::vector<FiniteWeight> next;
        for (const auto& [mu, _] : candidates) {
            if (ws.mults.count(mu)) continue;
            auto mrho = detail::shift_rho(mu);
            Rational denom = top - inner_product_factor(rank, mrho, mrho);
            if (denom == Rational(0)) continue; // only lam itself has denom 0
            Rational num(0);
            for (const auto& a : pos) {
                FiniteWeight w = mu;
                for (;;) {
                    w = detail::add(w, a);
                    auto it = ws.mults.find(w);
                    if (it == ws.mults.end()) break;
                    num += Rational(2 * it->second) * inner_product_factor(rank, w, a);
                }
            }
            Rational m = num / denom;
            if (!m.is_integer()) throw std::logic_error("freudenthal: non-integral multiplicity");
            if (m.num() > 0) {
                ws.mults[mu] = m.num();
                next.push_back(mu);
            }
        }
        frontier = std::move(next);
    }
    return ws;
}

// Finite tensor product decomposition lam (x) mu by the Racah-Speiser rule:
// fold mu+beta+rho over the weight system of lam with signs.
inline std::map<FiniteWeight, long long> tensor_decompose(int rank, const FiniteWeight& lam,
                                                          const FiniteWeight& mu,
                                                          long long dim_bound = 0) {
    // fold the smaller weight system
    const FiniteWeight* a = &lam;
    const FiniteWeight* b = &mu;
    if (weyl_dimension(rank, lam) > weyl_dimension(rank, mu)) std::swap(a, b);
    WeightSystem ws = weight_multiplicities(rank, *a, dim_bound);

    std::map<FiniteWeight, long long> acc;
    for (const auto& [beta, m] : ws.mults) {
        FiniteWeight shifted(static_cast<size_t>(rank));
        for (int j = 0; j < rank; ++j)
            shifted[static_cast<size_t>(j)] = (*b)[static_cast<size_t>(j)] + beta[static_cast<size_t>(j)] + 1;
        FoldResult fr = finite_fold_labels(rank, std::move(shifted));
        if (fr.sign == 0) continue;
        FiniteWeight nu(static_cast<size_t>(rank));
        for (int j = 0; j < rank; ++j) nu[static_cast<size_t>(j)] = fr.shifted[static_cast<size_t>(j)] - 1;
        acc[nu] += fr.sign * m;
    }
    for (auto it = acc.begin(); it != acc.end();) {
        if (it->second < 0) throw std::logic_error("tensor_decompose: negative multiplicity");
        it = (it->second == 0) ? acc.erase(it) : std::next(it);
    }
    return acc;
}

inline long long tensor_multiplicity(int rank, const FiniteWeight& lam, const FiniteWeight& mu,
                                     const FiniteWeight& nu, long long dim_bound = 0) {
    auto dec = tensor_decompose(rank, lam, mu, dim_bound);
    auto it = dec.find(nu);
    return it == dec.end() ? 0 : it->second;
}

// Verlinde sum; the imaginary part and the distance to the nearest integer
// are the caller's consistency signals.
inline cplx fusion_verlinde(const ModularData& md, int lam, int mu, int nu) {
    int n = md.size();
    cplx acc = 0.0;
    for (int t = 0; t < n; ++t)
        acc += md.S(lam, t) * md.S(mu, t) * std::conj(md.S(nu, t)) / md.S(0, t);
    return acc;
}

inline long long fusion_verlinde_int(const ModularData& md, int lam, int mu, int nu,
                                     double tol_f = 1e-6) {
    cplx v = fusion_verlinde(md, lam, mu, nu);
    long long r = std::llround(v.real());
    if (std::abs(v.imag()) > tol_f || std::abs(v.real() - static_cast<double>(r)) > tol_f)
        throw std::logic_error("fusion_verlinde: value not integral within tolerance");
    return r;
}

// Level-k fusion of one factor by affine folding of the finite tensor product.
inline std::map<std::vector<int>, long long> fusion_factor_kac_walton(const Factor& f,
                                                                      const std::vector<int>& lam,
                                                                      const std::vector<int>& mu) {
    auto dec = tensor_decompose(f.rank, finite_part(lam), finite_part(mu));
    std::map<std::vector<int>, long long> acc; // full labels incl. node 0
    for (const auto& [nu, m] : dec) {
        std::vector<int> shifted(static_cast<size_t>(f.rbar()));
        int sum = 0;
        for (int j = 1; j <= f.rank; ++j) {
            shifted[static_cast<size_t>(j)] = nu[static_cast<size_t>(j - 1)] + 1;
            sum += shifted[static_cast<size_t>(j)];
        }
        shifted[0] = f.kbar() - sum;
        FoldResult fr = affine_fold_labels(f.rbar(), std::move(shifted));
        if (fr.sign == 0) continue;
        std::vector<int> full(static_cast<size_t>(f.rbar()));
        for (int j = 0; j < f.rbar(); ++j) full[static_cast<size_t>(j)] = fr.shifted[static_cast<size_t>(j)] - 1;
        acc[full] += fr.sign * m;
    }
    for (auto it = acc.begin(); it != acc.end();) {
        if (it->second < 0) throw std::logic_error("fusion_kac_walton: negative coefficient");
        it = (it->second == 0) ? acc.erase(it) : std::next(it);
    }
    return acc;
}

// Exact fusion coefficients of lam (x) mu, as a map from weight index to N.
inline std::map<int, long long> fusion_kac_walton(const WeightTable& table, int lam, int mu) {
    const AlgebraSpec& spec = table.spec();
    int s = spec.num_factors();
    std::vector<std::map<std::vector<int>, long long>> per_factor;
    per_factor.reserve(static_cast<size_t>(s));
    const Weight& wl = table.at(lam);
    const Weight& wm = table.at(mu);
    for (int i = 0; i < s; ++i)
        per_factor.push_back(fusion_factor_kac_walton(spec.factors[static_cast<size_t>(i)],
                                                      wl.labels[static_cast<size_t>(i)],
                                                      wm.labels[static_cast<size_t>(i)]));
    std::map<int, long long> out;
    // cartesian product over factors
    std::vector<std::map<std::vector<int>, long long>::const_iterator> its;
    for (const auto& pf : per_factor) {
        if (pf.empty()) return out;
        its.push_back(pf.begin());
    }
    for (;;) {
        Weight nu;
        long long coeff = 1;
        for (int i = 0; i < s; ++i) {
            nu.labels.push_back(its[static_cast<size_t>(i)]->first);
            coeff *= its[static_cast<size_t>(i)]->second;
        }
        out[table.index_of(nu)] = coeff;
        int i = s - 1;
        while (i >= 0) {
            if (++its[static_cast<size_t>(i)] != per_factor[static_cast<size_t>(i)].end()) break;
            its[static_cast<size_t>(i)] = per_factor[static_cast<size_t>(i)].begin();
            --i;
        }
        if (i < 0) break;
    }
    return out;
}

// Lazily filled, cached fusion coefficients.
class FusionTable {
public:
    explicit FusionTable(const WeightTable& table) : table_(&table) {}

    const std::map<int, long long>& fusion(int lam, int mu) {
        if (lam > mu) std::swap(lam, mu);
        auto key = std::make_pair(lam, mu);
        auto it = cache_.find(key);
        if (it == cache_.end())
            it = cache_.emplace(key, fusion_kac_walton(*table_, lam, mu)).first;
        return it->second;
    }

    long long coefficient(int lam, int mu, int nu) {
        const auto& row = fusion(lam, mu);
        auto it = row.find(nu);
        return it == row.end() ? 0 : it->second;
    }

private:
    const WeightTable* table_;
    std::map<std::pair<int, int>, std::map<int, long long>> cache_;
};

// S_{lam,mu}/S_{kL0,mu} as the finite Weyl character of lam evaluated at the
// special point attached to mu.
inline cplx char_ratio(const ModularData& md, int lam, int mu, long long dim_bound = 200000) {
    const AlgebraSpec& spec = md.table().spec();
    const Weight& wl = md.table().at(lam);
    const Weight& wm = md.table().at(mu);
    cplx out = 1.0;
    for (int i = 0; i < spec.num_factors(); ++i) {
        const Factor& f = spec.factors[static_cast<size_t>(i)];
        WeightSystem ws = weight_multiplicities(f.rank, finite_part(wl.labels[static_cast<size_t>(i)]),
                                                dim_bound);
        std::vector<int> mrho = finite_part(wm.labels[static_cast<size_t>(i)]);
        for (int& v : mrho) v += 1;
        cplx acc = 0.0;
        for (const auto& [beta, m] : ws.mults) {
            double ip = inner_product_factor(f.rank, beta, mrho).to_double();
            acc += static_cast<double>(m) *
                   std::polar(1.0, -2.0 * std::numbers::pi * ip / f.kbar());
        }
        out *= acc;
    }
    return out;
}

} // namespace kacmod
