#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "kacmod/algebra.hpp"

namespace kacmod {

using cplx = std::complex<double>;

struct Tolerances {
    double tol_u = 1e-9; // S-matrix equality
    double tol_c = 1e-8; // character ratios
    double tol_f = 1e-6; // Verlinde integrality
};

namespace detail {

// Zero-mean orthogonal coordinates of a finite A_r weight given its shifted
// Dynkin labels l_1..l_r (entries of lambda+rho). In these coordinates the
// bilinear form is the Euclidean dot product and the Weyl group acts by
// coordinate permutations.
inline std::vector<double> ortho_coords(const std::vector<int>& l) {
    int r = static_cast<int>(l.size());
    int rbar = r + 1;
    long long weighted = 0;
    for (int j = 1; j <= r; ++j) weighted += static_cast<long long>(j) * l[static_cast<size_t>(j - 1)];
    double mean = static_cast<double>(weighted) / rbar;
    // out[a-1] = sum_{j>=a} l_j - mean
    std::vector<double> out(static_cast<size_t>(rbar));
    long long tail = 0;
    for (int a = rbar; a >= 1; --a) {
        out[static_cast<size_t>(a - 1)] = static_cast<double>(tail) - mean;
        if (a >= 2) tail += l[static_cast<size_t>(a - 2)];
    }
    return out;
}

// Complex determinant by Gaussian elimination with partial pivoting.
inline cplx det(std::vector<std::vector<cplx>> m) {
    size_t n = m.size();
    cplx d = 1.0;
    for (size_t c = 0; c < n; ++c) {
        size_t piv = c;
        for (size_t rI = c + 1; rI < n; ++rI)
            if (std::abs(m[rI][c]) > std::abs(m[piv][c])) piv = rI;
        if (std::abs(m[piv][c]) == 0.0) return 0.0;
        if (piv != c) {
            std::swap(m[piv], m[c]);
            d = -d;
        }
        d *= m[c][c];
        for (size_t rI = c + 1; rI < n; ++rI) {
            cplx f = m[rI][c] / m[c][c];
            for (size_t cc = c; cc < n; ++cc) m[rI][cc] -= f * m[c][cc];
        }
    }
    return d;
}

// One entry of the per-factor S matrix. The Weyl sum over the r+1 factorial
// permutations collapses to an rbar x rbar determinant in orthogonal
// coordinates.
inline cplx s_entry_factor(const Factor& f, const std::vector<int>& lam,
                           const std::vector<int>& mu) {
    int rbar = f.rbar();
    int kbar = f.kbar();
    std::vector<int> ls(static_cast<size_t>(f.rank)), ms(static_cast<size_t>(f.rank));
    for (int j = 0; j < f.rank; ++j) {
        ls[static_cast<size_t>(j)] = lam[static_cast<size_t>(j + 1)] + 1;
        ms[static_cast<size_t>(j)] = mu[static_cast<size_t>(j + 1)] + 1;
    }
    auto x = ortho_coords(ls);
    auto y = ortho_coords(ms);
    std::vector<std::vector<cplx>> m(static_cast<size_t>(rbar),
                                     std::vector<cplx>(static_cast<size_t>(rbar)));
    for (int a = 0; a < rbar; ++a)
        for (int b = 0; b < rbar; ++b) {
            double arg = -2.0 * std::numbers::pi * x[static_cast<size_t>(a)] *
                         y[static_cast<size_t>(b)] / kbar;
            m[static_cast<size_t>(a)][static_cast<size_t>(b)] = std::polar(1.0, arg);
        }
    cplx pre = std::polar(1.0, std::numbers::pi * f.rank * rbar / 4.0) /
               (std::pow(static_cast<double>(kbar), f.rank / 2.0) * std::sqrt(static_cast<double>(rbar)));
    return pre * det(std::move(m));
}

// Literal Weyl sum over all rbar! permutations; test oracle for s_entry_factor.
inline cplx s_entry_factor_weyl_sum(const Factor& f, const std::vector<int>& lam,
                                    const std::vector<int>& mu) {
    int rbar = f.rbar();
    int kbar = f.kbar();
    std::vector<int> ls(static_cast<size_t>(f.rank)), ms(static_cast<size_t>(f.rank));
    for (int j = 0; j < f.rank; ++j) {
        ls[static_cast<size_t>(j)] = lam[static_cast<size_t>(j + 1)] + 1;
        ms[static_cast<size_t>(j)] = mu[static_cast<size_t>(j + 1)] + 1;
    }
    auto x = ortho_coords(ls);
    auto y = ortho_coords(ms);
    std::vector<int> perm(static_cast<size_t>(rbar));
    std::iota(perm.begin(), perm.end(), 0);
    cplx acc = 0.0;
    do {
        // parity of perm
        int sign = 1;
        std::vector<bool> seen(static_cast<size_t>(rbar), false);
        for (int a = 0; a < rbar; ++a) {
            if (seen[static_cast<size_t>(a)]) continue;
            int len = 0, c = a;
            while (!seen[static_cast<size_t>(c)]) {
                seen[static_cast<size_t>(c)] = true;
                c = perm[static_cast<size_t>(c)];
                ++len;
            }
            if (len % 2 == 0) sign = -sign;
        }
        double dot = 0.0;
        for (int a = 0; a < rbar; ++a)
            dot += x[static_cast<size_t>(perm[static_cast<size_t>(a)])] * y[static_cast<size_t>(a)];
        acc += static_cast<double>(sign) * std::polar(1.0, -2.0 * std::numbers::pi * dot / kbar);
    } while (std::next_permutation(perm.begin(), perm.end()));
    cplx pre = std::polar(1.0, std::numbers::pi * f.rank * rbar / 4.0) /
               (std::pow(static_cast<double>(kbar), f.rank / 2.0) * std::sqrt(static_cast<double>(rbar)));
    return pre * acc;
}

} // namespace detail

// Modular data of an algebra/level pair: the S matrix in double precision and
// exact rational T exponents (T_{ll} = exp(i pi e(l)), e reduced into [0,2)).
class ModularData {
public:
    explicit ModularData(WeightTable table) : table_(std::move(table)) {
        const AlgebraSpec& spec = table_.spec();
        int s = spec.num_factors();
        factor_S_.resize(static_cast<size_t>(s));
        for (int i = 0; i < s; ++i) {
            const auto& fw = table_.factor_weights(i);
            size_t ni = fw.size();
            factor_S_[static_cast<size_t>(i)].assign(ni * ni, cplx(0.0));
            for (size_t a = 0; a < ni; ++a)
                for (size_t b = a; b < ni; ++b) {
                    cplx v = detail::s_entry_factor(spec.factors[static_cast<size_t>(i)], fw[a], fw[b]);
                    factor_S_[static_cast<size_t>(i)][a * ni + b] = v;
                    factor_S_[static_cast<size_t>(i)][b * ni + a] = v;
                }
        }
        int n = table_.size();
        S_.assign(static_cast<size_t>(n) * static_cast<size_t>(n), cplx(1.0));
        for (int t = 0; t < n; ++t)
            for (int u = 0; u < n; ++u) {
                cplx v = 1.0;
                for (int i = 0; i < s; ++i) {
                    size_t ni = table_.factor_weights(i).size();
                    v *= factor_S_[static_cast<size_t>(i)]
                                  [static_cast<size_t>(table_.factor_index(t, i)) * ni +
                                   static_cast<size_t>(table_.factor_index(u, i))];
                }
                S_[static_cast<size_t>(t) * static_cast<size_t>(n) + static_cast<size_t>(u)] = v;
            }

        texp_.reserve(static_cast<size_t>(n));
        anomaly_.reserve(static_cast<size_t>(n));
        for (int t = 0; t < n; ++t) {
            Rational e(0), m(0);
            const Weight& w = table_.at(t);
            for (int i = 0; i < s; ++i) {
                const Factor& f = spec.factors[static_cast<size_t>(i)];
                std::vector<int> shifted = finite_part(w.labels[static_cast<size_t>(i)]);
                for (int& v : shifted) v += 1;
                Rational ip = inner_product_factor(f.rank, shifted, shifted);
                Rational ei = ip / Rational(f.kbar()) - rho_norm2(f.rank) / Rational(f.hdual());
                e += ei;
                m += ei / Rational(2);
            }
            texp_.push_back(e.mod(2));
            anomaly_.push_back(m);
        }
    }

    const WeightTable& table() const { return table_; }
    int size() const { return table_.size(); }
    cplx S(int a, int b) const {
        return S_[static_cast<size_t>(a) * static_cast<size_t>(table_.size()) + static_cast<size_t>(b)];
    }
    const Rational& Texp(int a) const { return texp_.at(static_cast<size_t>(a)); }
    const Rational& anomaly(int a) const { return anomaly_.at(static_cast<size_t>(a)); }

private:
    WeightTable table_;
    std::vector<std::vector<cplx>> factor_S_; // per factor, row-major over factor weights
    std::vector<cplx> S_;
    std::vector<Rational> texp_;
    std::vector<Rational> anomaly_;
};

inline ModularData build_modular_data(WeightTable table) { return ModularData(std::move(table)); }

// Q(lambda) as the positive-root sine product, computed directly rather than
// as a ratio of S entries.
inline double q_dimension(const AlgebraSpec& spec, const Weight& w) {
    double q = 1.0;
    for (int i = 0; i < spec.num_factors(); ++i) {
        const Factor& f = spec.factors[static_cast<size_t>(i)];
        int kbar = f.kbar();
        const auto& l = w.labels[static_cast<size_t>(i)];
        // (lambda+rho | alpha_{ab}) = sum of shifted labels a..b-1
        for (int a = 1; a <= f.rank; ++a) {
            int part = 0;
            for (int b = a; b <= f.rank; ++b) {
                part += l[static_cast<size_t>(b)] + 1;
                q *= std::sin(std::numbers::pi * part / kbar) /
                     std::sin(std::numbers::pi * (b - a + 1) / kbar);
            }
        }
    }
    return q;
}

inline double q_dimension(const ModularData& md, const Weight& w) {
    return q_dimension(md.table().spec(), w);
}

struct GaloisAction {
    long long ell = 1;
    std::vector<int> image; // weight index -> weight index
    std::vector<int> signs; // +1 / -1
};

// Safe multiple of the conductor of the cyclotomic field containing S.
inline long long galois_conductor(const AlgebraSpec& spec) {
    long long m = 1;
    for (const auto& f : spec.factors)
        m = std::lcm(m, 4LL * f.kbar() * f.rbar());
    return m;
}

// Galois action: per factor, fold ell*(lambda+rho) back into the alcove at
// shifted level kbar. The fold parity gives eps_g.
inline GaloisAction galois_action(const ModularData& md, long long ell) {
    const AlgebraSpec& spec = md.table().spec();
    long long cond = galois_conductor(spec);
    if (std::gcd(((ell % cond) + cond) % cond, cond) != 1)
        throw std::invalid_argument("galois_action: ell not coprime to conductor");
    GaloisAction g;
    g.ell = ell;
    int n = md.size();
    g.image.resize(static_cast<size_t>(n));
    g.signs.resize(static_cast<size_t>(n));
    for (int t = 0; t < n; ++t) {
        const Weight& w = md.table().at(t);
        Weight img = w;
        int sign = 1;
        for (int i = 0; i < spec.num_factors(); ++i) {
            const Factor& f = spec.factors[static_cast<size_t>(i)];
            std::vector<int> shifted(static_cast<size_t>(f.rbar()));
            long long sum = 0;
            for (int j = 1; j <= f.rank; ++j) {
                long long v = ell * (w.labels[static_cast<size_t>(i)][static_cast<size_t>(j)] + 1);
                shifted[static_cast<size_t>(j)] = static_cast<int>(v);
                sum += v;
            }
            // node-0 label fixed by the shifted level kbar
            shifted[0] = static_cast<int>(f.kbar() - sum);
            FoldResult fr = affine_fold_labels(f.rbar(), shifted);
            if (fr.sign == 0)
                throw std::logic_error("galois_action: fold hit a wall for coprime ell");
            sign *= fr.sign;
            for (int j = 0; j < f.rbar(); ++j)
                img.labels[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                    fr.shifted[static_cast<size_t>(j)] - 1;
        }
        g.image[static_cast<size_t>(t)] = md.table().index_of(img);
        g.signs[static_cast<size_t>(t)] = sign;
    }
    return g;
}

} // namespace kacmod
