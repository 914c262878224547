#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "kacmod/algebra.hpp"
#include "kacmod/modular.hpp"

namespace kacmod {

// A permutation of weight indices, stored as its image array.
using Permutation = std::vector<int>;

inline Permutation identity_permutation(int n) {
    Permutation p(static_cast<size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    return p;
}

inline Permutation compose(const Permutation& outer, const Permutation& inner) {
    Permutation out(inner.size());
    for (size_t t = 0; t < inner.size(); ++t)
        out[t] = outer[static_cast<size_t>(inner[t])];
    return out;
}

inline Permutation inverse(const Permutation& p) {
    Permutation out(p.size());
    for (size_t t = 0; t < p.size(); ++t) out[static_cast<size_t>(p[t])] = static_cast<int>(t);
    return out;
}

// Canonical (pi, c, a) triple naming an invariant sigma_pi . C^c . sigma_a.
struct AutoInvForm {
    std::vector<int> pi;              // factor permutation, pi[i] = source factor of slot i
    std::vector<int> c;               // conjugation bits per factor
    std::vector<std::vector<long long>> a; // s x s, a[i][j] reduced mod rbar_j

    auto operator<=>(const AutoInvForm&) const = default;
};

inline AutoInvForm identity_form(const AlgebraSpec& spec) {
    int s = spec.num_factors();
    AutoInvForm f;
    f.pi.resize(static_cast<size_t>(s));
    std::iota(f.pi.begin(), f.pi.end(), 0);
    f.c.assign(static_cast<size_t>(s), 0);
    f.a.assign(static_cast<size_t>(s), std::vector<long long>(static_cast<size_t>(s), 0));
    return f;
}

// --- admissibility conditions on a-matrices ---------------------------------

inline std::vector<std::string> check_a_conditions(const AlgebraSpec& spec,
                                                   const std::vector<std::vector<long long>>& a) {
    int s = spec.num_factors();
    std::vector<std::string> violations;
    auto rbar = [&](int i) { return static_cast<long long>(spec.factors[static_cast<size_t>(i)].rbar()); };
    auto lvl = [&](int i) { return static_cast<long long>(spec.factors[static_cast<size_t>(i)].level); };

    for (int i = 0; i < s; ++i)
        for (int j = 0; j < s; ++j) {
            Rational v = Rational(a[static_cast<size_t>(i)][static_cast<size_t>(j)] * rbar(i), rbar(j));
            if (!v.is_integer())
                violations.push_back("13a(" + std::to_string(i) + "," + std::to_string(j) + ")");
        }
    for (int i = 0; i < s; ++i) {
        Rational lhs = Rational(2 * a[static_cast<size_t>(i)][static_cast<size_t>(i)], rbar(i));
        long long rhs_int = 0;
        for (int j = 0; j < s; ++j) {
            long long aij = a[static_cast<size_t>(i)][static_cast<size_t>(j)];
            lhs += Rational(lvl(j) * aij * aij, rbar(j));
            rhs_int += lvl(j) * aij;
        }
        if ((lhs - Rational(rhs_int)).mod(2) != Rational(0))
            violations.push_back("13b(" + std::to_string(i) + ")");
    }
    for (int i = 0; i < s; ++i)
        for (int j = i; j < s; ++j) {
            Rational v = Rational(a[static_cast<size_t>(i)][static_cast<size_t>(j)], rbar(j)) +
                         Rational(a[static_cast<size_t>(j)][static_cast<size_t>(i)], rbar(i));
            for (int l = 0; l < s; ++l)
                v += Rational(lvl(l) * a[static_cast<size_t>(i)][static_cast<size_t>(l)] *
                                  a[static_cast<size_t>(j)][static_cast<size_t>(l)],
                              rbar(l));
            if (v.mod(1) != Rational(0))
                violations.push_back("13c(" + std::to_string(i) + "," + std::to_string(j) + ")");
        }
    return violations;
}

// --- the three constructions ----------------------------------------------

// sigma_m for a single factor: lambda -> J^{-v m t(lambda)} lambda.
inline Permutation sigma_m(const WeightTable& table, long long m) {
    const AlgebraSpec& spec = table.spec();
    if (spec.num_factors() != 1) throw std::invalid_argument("sigma_m: requires a single factor");
    const Factor& f = spec.factors[0];
    long long rbar = f.rbar();
    long long kt = f.ktilde();
    if (m <= 0 || rbar % m != 0) throw std::invalid_argument("sigma_m: m must divide rbar");
    if ((m * kt) % 2 != 0) throw std::invalid_argument("sigma_m: m*ktilde must be even");
    long long q = rbar / m;
    long long half = (m * kt) / 2;
    if (q > 1 && std::gcd(q, half % q) != 1)
        throw std::invalid_argument("sigma_m: gcd(rbar/m, m*ktilde/2) != 1");
    // least positive v with v*half == 1 (mod q); v = 1 when q == 1
    long long v = 1;
    if (q > 1) {
        v = 0;
        for (long long cand = 1; cand <= q; ++cand)
            if ((cand * (half % q)) % q == 1) { v = cand; break; }
        if (v == 0) throw std::invalid_argument("sigma_m: no inverse for v");
    }
    Permutation p(static_cast<size_t>(table.size()));
    for (int t = 0; t < table.size(); ++t) {
        long long e = -v * m * t_charge(spec, table.at(t), 0);
        int b = static_cast<int>(((e % rbar) + rbar) % rbar);
        p[static_cast<size_t>(t)] = table.index_of(apply_J(spec, table.at(t), {b}));
    }
    return p;
}

// All valid divisors m of rbar with their permutations, duplicate-free as
// permutations (first valid m kept).
inline std::vector<std::pair<long long, Permutation>> enumerate_sigma_m(const WeightTable& table) {
    const Factor& f = table.spec().factors[0];
    long long rbar = f.rbar();
    long long kt = f.ktilde();
    std::vector<std::pair<long long, Permutation>> out;
    std::set<Permutation> seen;
    for (long long m = 1; m <= rbar; ++m) {
        if (rbar % m != 0) continue;
        if ((m * kt) % 2 != 0) continue;
        long long q = rbar / m;
        if (q > 1 && std::gcd(q, (((m * kt / 2) % q) + q) % q) != 1) continue;
        Permutation p = sigma_m(table, m);
        if (seen.insert(p).second) out.emplace_back(m, std::move(p));
    }
    return out;
}

// Factor-block permutation sigma_pi; pi must preserve (r, k).
inline Permutation sigma_pi(const WeightTable& table, const std::vector<int>& pi) {
    const AlgebraSpec& spec = table.spec();
    int s = spec.num_factors();
    for (int i = 0; i < s; ++i) {
        int src = pi.at(static_cast<size_t>(i));
        if (spec.factors[static_cast<size_t>(i)].rank != spec.factors[static_cast<size_t>(src)].rank ||
            spec.factors[static_cast<size_t>(i)].level != spec.factors[static_cast<size_t>(src)].level)
            throw std::invalid_argument("sigma_pi: pi does not preserve (r,k) blocks");
    }
    Permutation p(static_cast<size_t>(table.size()));
    for (int t = 0; t < table.size(); ++t) {
        Weight w = table.at(t);
        Weight img = w;
        for (int i = 0; i < s; ++i)
            img.labels[static_cast<size_t>(i)] = w.labels[static_cast<size_t>(pi[static_cast<size_t>(i)])];
        p[static_cast<size_t>(t)] = table.index_of(img);
    }
    return p;
}

// sigma_a: factor j receives J^{sum_i a_{ij} t(lambda_(i))}.
inline Permutation sigma_a(const WeightTable& table, const std::vector<std::vector<long long>>& a,
                           bool check = true) {
    const AlgebraSpec& spec = table.spec();
    if (check) {
        auto viol = check_a_conditions(spec, a);
        if (!viol.empty()) {
            std::string msg = "sigma_a: conditions violated:";
            for (const auto& v : viol) msg += " " + v;
            throw std::invalid_argument(msg);
        }
    }
    int s = spec.num_factors();
    Permutation p(static_cast<size_t>(table.size()));
    for (int t = 0; t < table.size(); ++t) {
        const Weight& w = table.at(t);
        std::vector<int> exps(static_cast<size_t>(s), 0);
        for (int j = 0; j < s; ++j) {
            long long rbar = spec.factors[static_cast<size_t>(j)].rbar();
            long long e = 0;
            for (int i = 0; i < s; ++i)
                e += a[static_cast<size_t>(i)][static_cast<size_t>(j)] * t_charge(spec, w, i);
            exps[static_cast<size_t>(j)] = static_cast<int>(((e % rbar) + rbar) % rbar);
        }
        p[static_cast<size_t>(t)] = table.index_of(apply_J(spec, w, exps));
    }
    return p;
}

// The permutation of a canonical triple: sigma_a first, then C^c, then sigma_pi.
inline Permutation form_permutation(const WeightTable& table, const AutoInvForm& f) {
    const AlgebraSpec& spec = table.spec();
    Permutation pa = sigma_a(table, f.a, /*check=*/false);
    Permutation p(static_cast<size_t>(table.size()));
    for (int t = 0; t < table.size(); ++t) {
        Weight w = table.at(pa[static_cast<size_t>(t)]);
        w = apply_C(spec, w, f.c);
        Weight img = w;
        for (int i = 0; i < spec.num_factors(); ++i)
            img.labels[static_cast<size_t>(i)] = w.labels[static_cast<size_t>(f.pi[static_cast<size_t>(i)])];
        p[static_cast<size_t>(t)] = table.index_of(img);
    }
    return p;
}

// --- verification -----------------------------------------------------------

struct InvarianceResult {
    bool ok = true;
    int witness_lambda = -1;
    int witness_mu = -1;
    std::string reason;

    explicit operator bool() const { return ok; }
};

// T exponents must match exactly (mod 2), S entries within tol.
inline InvarianceResult is_automorphism_invariant(const ModularData& md, const Permutation& p,
                                                  double tol_u = 1e-9) {
    int n = md.size();
    for (int t = 0; t < n; ++t) {
        if (md.Texp(p[static_cast<size_t>(t)]) != md.Texp(t))
            return {false, t, t, "T exponent mismatch"};
    }
    for (int t = 0; t < n; ++t)
        for (int u = t; u < n; ++u) {
            if (std::abs(md.S(p[static_cast<size_t>(t)], p[static_cast<size_t>(u)]) - md.S(t, u)) > tol_u)
                return {false, t, u, "S entry mismatch"};
        }
    return {};
}

// --- classification ---------------------------------------------------------

struct ClassifiedInvariant {
    AutoInvForm form;
    Permutation permutation;
    // s=1 labeling: permutation == C^c0 sigma_m
    std::optional<std::pair<int, long long>> cm_label;
};

inline long long count_remark1(int r, int k) {
    int c = (r == 1 || k <= 2) ? 0 : 1;
    if (r == 1 && k == 2) c = -1;
    int rbar = r + 1;
    int p = 0;
    for (int q = 3; q <= rbar; q += 2) {
        bool prime = true;
        for (int d = 3; d * d <= q; d += 2)
            if (q % d == 0) { prime = false; break; }
        if (prime && rbar % q == 0 && k % q != 0) ++p;
    }
    int t = 1;
    if (r % 2 == 0) t = 0;
    else if (k % 4 == 0) t = 0;
    else if (k % 2 == 1 && r % 4 == 1) t = 0;
    long long e = c + p + t;
    return e < 0 ? 0 : (1LL << e);
}

namespace detail {

inline std::vector<std::vector<int>> canonical_factor_permutations(const AlgebraSpec& spec) {
    int s = spec.num_factors();
    std::vector<int> pi(static_cast<size_t>(s));
    std::iota(pi.begin(), pi.end(), 0);
    std::vector<std::vector<int>> out;
    do {
        bool ok = true;
        for (int i = 0; i < s && ok; ++i) {
            int src = pi[static_cast<size_t>(i)];
            const Factor& fi = spec.factors[static_cast<size_t>(i)];
            const Factor& fs = spec.factors[static_cast<size_t>(src)];
            if (fi.rank != fs.rank || fi.level != fs.level) ok = false;
            if (fi.level == 1 && src != i) ok = false; // canonical: pi i = i at level 1
        }
        if (ok) out.push_back(pi);
    } while (std::next_permutation(pi.begin(), pi.end()));
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<std::vector<int>> canonical_c_vectors(const AlgebraSpec& spec) {
    int s = spec.num_factors();
    std::vector<int> free_idx;
    for (int i = 0; i < s; ++i)
        if (spec.factors[static_cast<size_t>(i)].rank > 1 && spec.factors[static_cast<size_t>(i)].level > 2)
            free_idx.push_back(i);
    std::vector<std::vector<int>> out;
    for (int mask = 0; mask < (1 << free_idx.size()); ++mask) {
        std::vector<int> c(static_cast<size_t>(s), 0);
        for (size_t b = 0; b < free_idx.size(); ++b)
            c[static_cast<size_t>(free_idx[b])] = (mask >> b) & 1;
        out.push_back(std::move(c));
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<std::vector<std::vector<long long>>> admissible_a_matrices(const AlgebraSpec& spec) {
    int s = spec.num_factors();
    std::vector<std::vector<std::vector<long long>>> out;
    std::vector<long long> flat(static_cast<size_t>(s) * static_cast<size_t>(s), 0);
    auto rbar_of = [&](size_t pos) {
        return static_cast<long long>(spec.factors[pos % static_cast<size_t>(s)].rbar());
    };
    for (;;) {
        std::vector<std::vector<long long>> a(static_cast<size_t>(s),
                                              std::vector<long long>(static_cast<size_t>(s)));
        for (int i = 0; i < s; ++i)
            for (int j = 0; j < s; ++j)
                a[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                    flat[static_cast<size_t>(i) * static_cast<size_t>(s) + static_cast<size_t>(j)];
        if (check_a_conditions(spec, a).empty()) out.push_back(std::move(a));
        size_t pos = 0;
        while (pos < flat.size()) {
            if (++flat[pos] < rbar_of(pos)) break;
            flat[pos] = 0;
            ++pos;
        }
        if (pos == flat.size()) break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace detail

// The complete duplicate-free list of automorphism invariants predicted by the
// classification: all sigma_pi . C^c . sigma_a over canonical triples, each
// re-verified against the modular data before being reported.
inline std::vector<ClassifiedInvariant> classify(const ModularData& md, double tol_u = 1e-9) {
    const WeightTable& table = md.table();
    const AlgebraSpec& spec = table.spec();
    auto pis = detail::canonical_factor_permutations(spec);
    auto cs = detail::canonical_c_vectors(spec);
    auto as = detail::admissible_a_matrices(spec);

    std::vector<ClassifiedInvariant> out;
    std::set<Permutation> seen;
    for (const auto& pi : pis)
        for (const auto& c : cs)
            for (const auto& a : as) {
                AutoInvForm form{pi, c, a};
                Permutation p = form_permutation(table, form);
                if (!seen.insert(p).second) continue; // degenerate coincidences at tiny r,k
                if (!is_automorphism_invariant(md, p, tol_u))
                    throw std::logic_error("classify: admissible triple failed verification");
                ClassifiedInvariant ci;
                ci.form = std::move(form);
                ci.permutation = std::move(p);
                out.push_back(std::move(ci));
            }

    if (spec.num_factors() == 1) {
        auto sms = enumerate_sigma_m(table);
        for (auto& ci : out) {
            for (int cbit = 0; cbit < 2 && !ci.cm_label; ++cbit)
                for (const auto& [m, pm] : sms) {
                    Permutation cand = pm;
                    if (cbit) {
                        Permutation cp(static_cast<size_t>(table.size()));
                        for (int t = 0; t < table.size(); ++t)
                            cp[static_cast<size_t>(t)] =
                                table.index_of(apply_C(spec, table.at(t), {1}));
                        cand = compose(cp, pm);
                    }
                    if (cand == ci.permutation) {
                        ci.cm_label = std::make_pair(cbit, m);
                        break;
                    }
                }
        }
    }
    return out;
}

// Canonical form of the composite of two invariants: compose at the
// permutation level, then match against the enumerated canonical set.
inline AutoInvForm compose_forms(const WeightTable& table,
                                 const std::vector<ClassifiedInvariant>& classified,
                                 const AutoInvForm& first_applied, const AutoInvForm& second_applied) {
    Permutation p = compose(form_permutation(table, second_applied),
                            form_permutation(table, first_applied));
    for (const auto& ci : classified)
        if (ci.permutation == p) return ci.form;
    throw std::logic_error("compose_forms: composite not in the classified set");
}

// The a-part composition law (pure sigma_a forms).
inline std::vector<std::vector<long long>> compose_a(const AlgebraSpec& spec,
                                                     const std::vector<std::vector<long long>>& a,
                                                     const std::vector<std::vector<long long>>& b) {
    int s = spec.num_factors();
    std::vector<std::vector<long long>> c(static_cast<size_t>(s),
                                          std::vector<long long>(static_cast<size_t>(s), 0));
    for (int i = 0; i < s; ++i)
        for (int j = 0; j < s; ++j) {
            long long rbar = spec.factors[static_cast<size_t>(j)].rbar();
            long long v = a[static_cast<size_t>(i)][static_cast<size_t>(j)] +
                          b[static_cast<size_t>(i)][static_cast<size_t>(j)];
            for (int l = 0; l < s; ++l)
                v += spec.factors[static_cast<size_t>(l)].level *
                     a[static_cast<size_t>(i)][static_cast<size_t>(l)] *
                     b[static_cast<size_t>(l)][static_cast<size_t>(j)];
            c[static_cast<size_t>(i)][static_cast<size_t>(j)] = ((v % rbar) + rbar) % rbar;
        }
    return c;
}

// --- generator families ------------------------------------------------------

namespace detail {

inline bool modinv(long long h, long long n, long long& v) {
    h = ((h % n) + n) % n;
    for (long long cand = 1; cand <= n; ++cand)
        if ((cand * h) % n == 1) { v = cand; return true; }
    return n == 1 && (v = 1, true);
}

} // namespace detail

// Instances of the four generator families valid for the spec, each passing
// the admissibility conditions. Forms have pi = id, c = 0.
inline std::vector<AutoInvForm> theorem3_generators(const AlgebraSpec& spec) {
    int s = spec.num_factors();
    std::set<std::vector<std::vector<long long>>> amats;
    auto rbar = [&](int i) { return static_cast<long long>(spec.factors[static_cast<size_t>(i)].rbar()); };
    auto lvl = [&](int i) { return static_cast<long long>(spec.factors[static_cast<size_t>(i)].level); };
    auto kt = [&](int i) { return static_cast<long long>(spec.factors[static_cast<size_t>(i)].ktilde()); };

    // family (i): sigma[J^m]
    std::vector<long long> m(static_cast<size_t>(s), 0);
    for (;;) {
        Rational u(0);
        long long N = 1;
        for (int i = 0; i < s; ++i) {
            long long mi = m[static_cast<size_t>(i)];
            u += Rational(kt(i) * mi * (rbar(i) - mi), rbar(i));
            long long mbar = rbar(i) / std::gcd(mi, rbar(i));
            N = std::lcm(N, mbar);
        }
        Rational Nu = Rational(N) * u;
        if (Nu.is_integer() && Nu.num() % 2 == 0) {
            long long half = Nu.num() / 2;
            long long hm = ((half % N) + N) % N;
            if (std::gcd(hm == 0 ? N : hm, N) == 1 || N == 1) {
                long long v = 1;
                bool okv = (N == 1) || detail::modinv(half, N, v);
                if (okv) {
                    bool integral = true;
                    std::vector<std::vector<long long>> a(static_cast<size_t>(s),
                                                          std::vector<long long>(static_cast<size_t>(s), 0));
                    for (int i = 0; i < s && integral; ++i)
                        for (int j = 0; j < s && integral; ++j) {
                            long long num = v * N * m[static_cast<size_t>(i)] * m[static_cast<size_t>(j)];
                            if (num % rbar(i) != 0) { integral = false; break; }
                            long long aij = num / rbar(i);
                            long long rj = rbar(j);
                            a[static_cast<size_t>(i)][static_cast<size_t>(j)] = ((aij % rj) + rj) % rj;
                        }
                    if (integral && check_a_conditions(spec, a).empty()) amats.insert(std::move(a));
                }
            }
        }
        int i = 0;
        while (i < s) {
            if (++m[static_cast<size_t>(i)] < rbar(i)) break;
            m[static_cast<size_t>(i)] = 0;
            ++i;
        }
        if (i == s) break;
    }

    // family (ii): sigma[p; l, m]
    for (int l = 0; l < s; ++l)
        for (int mm = l + 1; mm < s; ++mm) {
            long long g = std::gcd(std::gcd(rbar(l), lvl(l)), std::gcd(rbar(mm), lvl(mm)));
            for (long long p = 2; p <= g; ++p) {
                if (g % p != 0) continue;
                bool prime = true;
                for (long long d = 2; d * d <= p; ++d)
                    if (p % d == 0) { prime = false; break; }
                if (!prime) continue;
                if (p == 2 && ((rbar(l) * lvl(l)) % 8 != 0 || (rbar(mm) * lvl(mm)) % 8 != 0)) continue;
                std::vector<std::vector<long long>> a(static_cast<size_t>(s),
                                                      std::vector<long long>(static_cast<size_t>(s), 0));
                a[static_cast<size_t>(l)][static_cast<size_t>(mm)] = rbar(mm) / p;
                long long neg = -(rbar(l) / p);
                a[static_cast<size_t>(mm)][static_cast<size_t>(l)] = ((neg % rbar(l)) + rbar(l)) % rbar(l);
                if (check_a_conditions(spec, a).empty()) amats.insert(std::move(a));
            }
        }

    // family (iii): sigma[l, m, n]
    for (int l = 0; l < s; ++l)
        for (int mm = l + 1; mm < s; ++mm)
            for (int n = 0; n < s; ++n) {
                if (n == l || n == mm) continue;
                if (lvl(l) % 2 == 0 || lvl(mm) % 2 == 0 || lvl(n) % 4 != 0) continue;
                if (rbar(l) % 4 != 2 || rbar(mm) % 4 != 2 || rbar(n) % 4 != 2) continue;
                if ((lvl(l) * rbar(l) + lvl(mm) * rbar(mm)) % 8 != 0) continue;
                std::vector<std::vector<long long>> a(static_cast<size_t>(s),
                                                      std::vector<long long>(static_cast<size_t>(s), 0));
                a[static_cast<size_t>(l)][static_cast<size_t>(n)] = rbar(n) / 2;
                a[static_cast<size_t>(mm)][static_cast<size_t>(n)] = rbar(n) / 2;
                a[static_cast<size_t>(n)][static_cast<size_t>(l)] = rbar(l) / 2;
                a[static_cast<size_t>(n)][static_cast<size_t>(mm)] = rbar(mm) / 2;
                if (check_a_conditions(spec, a).empty()) amats.insert(std::move(a));
            }

    // family (iv): sigma[l, m, n, o]
    for (int l = 0; l < s; ++l)
        for (int o = l + 1; o < s; ++o)
            for (int mm = 0; mm < s; ++mm)
                for (int n = mm + 1; n < s; ++n) {
                    if (mm == l || mm == o || n == l || n == o) continue;
                    if (lvl(l) % 2 == 0 || lvl(mm) % 2 == 0 || lvl(n) % 2 == 0 || lvl(o) % 2 == 0)
                        continue;
                    if (rbar(l) % 4 != 2 || rbar(mm) % 4 != 2 || rbar(n) % 4 != 2 || rbar(o) % 4 != 2)
                        continue;
                    if ((lvl(mm) * rbar(mm) + lvl(n) * rbar(n)) % 8 != 0) continue;
                    if ((lvl(l) * rbar(l) + lvl(o) * rbar(o)) % 8 != 0) continue;
                    std::vector<std::vector<long long>> a(
                        static_cast<size_t>(s), std::vector<long long>(static_cast<size_t>(s), 0));
                    a[static_cast<size_t>(l)][static_cast<size_t>(mm)] = rbar(mm) / 2;
                    a[static_cast<size_t>(o)][static_cast<size_t>(mm)] = rbar(mm) / 2;
                    a[static_cast<size_t>(l)][static_cast<size_t>(n)] = rbar(n) / 2;
                    a[static_cast<size_t>(o)][static_cast<size_t>(n)] = rbar(n) / 2;
                    a[static_cast<size_t>(mm)][static_cast<size_t>(l)] = rbar(l) / 2;
                    a[static_cast<size_t>(n)][static_cast<size_t>(l)] = rbar(l) / 2;
                    a[static_cast<size_t>(mm)][static_cast<size_t>(o)] = rbar(o) / 2;
                    a[static_cast<size_t>(n)][static_cast<size_t>(o)] = rbar(o) / 2;
                    if (check_a_conditions(spec, a).empty()) amats.insert(std::move(a));
                }

    std::vector<AutoInvForm> out;
    for (const auto& a : amats) {
        AutoInvForm f = identity_form(spec);
        f.a = a;
        out.push_back(std::move(f));
    }
    return out;
}

// Closure of a generating set under composition.
inline std::set<Permutation> generate_subgroup(const std::vector<Permutation>& gens, int n) {
    std::set<Permutation> group{identity_permutation(n)};
    std::vector<Permutation> frontier(group.begin(), group.end());
    while (!frontier.empty()) {
        std::vector<Permutation> next;
        for (const auto& p : frontier)
            for (const auto& g : gens) {
                Permutation q = compose(g, p);
                if (group.insert(q).second) next.push_back(std::move(q));
            }
        frontier = std::move(next);
    }
    return group;
}

} // namespace kacmod
