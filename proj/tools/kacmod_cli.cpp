// Command-line front end: every capability as a reproducible, scriptable
// command with stable serialization.
//
// Exit codes: 0 success/confirmed, 1 usage error, 2 mathematical mismatch.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "kacmod/algebra.hpp"
#include "kacmod/autoinv.hpp"
#include "kacmod/fusion.hpp"
#include "kacmod/json_io.hpp"
#include "kacmod/modular.hpp"
#include "kacmod/search.hpp"

namespace {

using namespace kacmod;

struct RunConfig {
    std::string alg;
    std::string level;
    std::string format = "json";
    std::string out_path;
    double tol_u = 1e-9;
    double tol_f = 1e-6;
    int bound = 200;
    bool check = false;
};

AlgebraSpec parse_spec(const RunConfig& cfg) {
    auto split = [](const std::string& s) {
        std::vector<std::string> parts;
        std::stringstream ss(s);
        std::string item;
        while (std::getline(ss, item, ',')) parts.push_back(item);
        return parts;
    };
    auto algs = split(cfg.alg);
    auto levels = split(cfg.level);
    if (algs.empty() || algs.size() != levels.size())
        throw CLI::ValidationError("--alg and --level must list the same number of factors");
    std::vector<Factor> factors;
    for (size_t i = 0; i < algs.size(); ++i) {
        if (algs[i].size() < 2 || (algs[i][0] != 'a' && algs[i][0] != 'A'))
            throw CLI::ValidationError("--alg entries must look like a1, a2, ...");
        int r = std::stoi(algs[i].substr(1));
        int k = std::stoi(levels[i]);
        factors.push_back({r, k});
    }
    return AlgebraSpec(std::move(factors));
}

void emit(const RunConfig& cfg, const std::string& text) {
    if (cfg.out_path.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << "\n";
    } else {
        std::ofstream f(cfg.out_path, std::ios::binary);
        f << text;
    }
}

void add_common(CLI::App* cmd, RunConfig& cfg, bool needs_spec = true) {
    auto* alg = cmd->add_option("--alg", cfg.alg, "algebra factors, e.g. a2 or a1,a1")
                    ->envname("KACMOD_ALG");
    auto* lvl = cmd->add_option("--level", cfg.level, "levels, e.g. 3 or 2,2")
                    ->envname("KACMOD_LEVEL");
    if (needs_spec) {
        alg->required();
        lvl->required();
    }
    cmd->add_option("--format", cfg.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}))
        ->envname("KACMOD_FORMAT");
    cmd->add_option("--out", cfg.out_path, "output file (default stdout)")->envname("KACMOD_OUT");
    cmd->add_option("--tol-u", cfg.tol_u, "S-matrix tolerance")
        ->check(CLI::PositiveNumber)
        ->envname("KACMOD_TOL_U");
    cmd->add_option("--tol-f", cfg.tol_f, "fusion integrality tolerance")
        ->check(CLI::PositiveNumber)
        ->envname("KACMOD_TOL_F");
    cmd->add_option("--bound", cfg.bound, "search size bound")
        ->check(CLI::PositiveNumber)
        ->envname("KACMOD_BOUND");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"modular data and automorphism invariants of affine A-type algebras"};
    app.require_subcommand(1);

    RunConfig cfg;
    long long galois_ell = 0;
    std::optional<int> fus_lambda, fus_mu;

    auto* c_weights = app.add_subcommand("weights", "enumerate the level-k highest weights");
    add_common(c_weights, cfg);
    auto* c_smatrix = app.add_subcommand("smatrix", "the modular S matrix");
    add_common(c_smatrix, cfg);
    auto* c_tvector = app.add_subcommand("tvector", "exact T exponents and modular anomalies");
    add_common(c_tvector, cfg);
    auto* c_qdim = app.add_subcommand("qdim", "q-dimensions in canonical order");
    add_common(c_qdim, cfg);
    auto* c_fusion = app.add_subcommand("fusion", "fusion coefficients (both methods)");
    add_common(c_fusion, cfg);
    c_fusion->add_flag("--check", cfg.check, "cross-check Verlinde against the exact folding");
    c_fusion->add_option("--lambda", fus_lambda, "restrict to this weight index");
    c_fusion->add_option("--mu", fus_mu, "restrict to this weight index");
    auto* c_classify = app.add_subcommand("classify", "closed-form list of automorphism invariants");
    add_common(c_classify, cfg);
    auto* c_search = app.add_subcommand("search", "brute-force search for automorphism invariants");
    add_common(c_search, cfg);
    auto* c_verify = app.add_subcommand("verify", "classify, search, and compare");
    add_common(c_verify, cfg);
    auto* c_galois = app.add_subcommand("galois", "Galois permutation and signs for a given ell");
    add_common(c_galois, cfg);
    c_galois->add_option("--ell", galois_ell, "Galois element, coprime to the conductor")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        AlgebraSpec spec = parse_spec(cfg);
        WeightTable table(spec);

        if (c_weights->parsed()) {
            emit(cfg, weight_table_json(table).dump(2));
            return 0;
        }

        if (c_qdim->parsed()) {
            ordered_json out = spec_json(spec);
            ordered_json q = ordered_json::array();
            for (const auto& w : table.order()) q.push_back(fmt_double(q_dimension(spec, w)));
            out["qdim"] = std::move(q);
            emit(cfg, out.dump(2));
            return 0;
        }

        ModularData md(table);

        if (c_smatrix->parsed()) {
            emit(cfg, cfg.format == "csv" ? smatrix_csv(md) : smatrix_json(md).dump(2));
            return 0;
        }
        if (c_tvector->parsed()) {
            emit(cfg, tvector_json(md).dump(2));
            return 0;
        }

        if (c_fusion->parsed()) {
            std::vector<int> lams, mus;
            for (int t = 0; t < table.size(); ++t) {
                if (!fus_lambda || *fus_lambda == t) lams.push_back(t);
                if (!fus_mu || *fus_mu == t) mus.push_back(t);
            }
            ordered_json out = spec_json(spec);
            ordered_json rows = ordered_json::array();
            double max_dev = 0.0;
            for (int l : lams)
                for (int m : mus) {
                    auto kw = fusion_kac_walton(table, l, m);
                    if (cfg.check) {
                        for (int nu = 0; nu < table.size(); ++nu) {
                            cplx v = fusion_verlinde(md, l, m, nu);
                            auto it = kw.find(nu);
                            double exact = it == kw.end() ? 0.0 : static_cast<double>(it->second);
                            max_dev = std::max(max_dev, std::abs(v - cplx(exact)));
                        }
                    }
                    for (const auto& [nu, coeff] : kw)
                        rows.push_back({{"lambda", weight_json(table.at(l))},
                                        {"mu", weight_json(table.at(m))},
                                        {"nu", weight_json(table.at(nu))},
                                        {"N", coeff}});
                }
            out["fusion"] = std::move(rows);
            if (cfg.check) out["max_deviation"] = fmt_double(max_dev);
            emit(cfg, out.dump(2));
            return (cfg.check && max_dev > cfg.tol_f) ? 2 : 0;
        }

        if (c_classify->parsed()) {
            auto inv = classify(md, cfg.tol_u);
            ordered_json out = spec_json(spec);
            ordered_json list = ordered_json::array();
            for (const auto& ci : inv) list.push_back(invariant_json(ci));
            out["count"] = inv.size();
            out["invariants"] = std::move(list);
            emit(cfg, out.dump(2));
            return 0;
        }

        if (c_search->parsed()) {
            auto perms = search_all(md, cfg.tol_u, cfg.bound);
            ordered_json out = spec_json(spec);
            out["count"] = perms.size();
            out["permutations"] = perms;
            emit(cfg, out.dump(2));
            return 0;
        }

        if (c_verify->parsed()) {
            auto inv = classify(md, cfg.tol_u);
            auto perms = search_all(md, cfg.tol_u, cfg.bound);
            std::vector<Permutation> classified;
            for (const auto& ci : inv) classified.push_back(ci.permutation);
            SearchReport rep = search_report(perms, classified);

            ordered_json out = spec_json(spec);
            out["classified"] = inv.size();
            out["searched"] = perms.size();
            out["unexplained"] = rep.unexplained;
            out["not_found"] = rep.not_found;
            bool ok = rep.empty();
            if (spec.num_factors() == 1) {
                long long expect = count_remark1(spec.factors[0].rank, spec.factors[0].level);
                out["expected_count"] = expect;
                ok = ok && static_cast<long long>(perms.size()) == expect;
            }
            out["confirmed"] = ok;
            emit(cfg, out.dump(2));
            if (ok)
                std::cerr << perms.size() << " invariants, classification confirmed\n";
            else
                std::cerr << "classification mismatch\n";
            return ok ? 0 : 2;
        }

        if (c_galois->parsed()) {
            GaloisAction g = galois_action(md, galois_ell);
            double worst = 0.0;
            int n = md.size();
            for (int t = 0; t < n; ++t)
                for (int u = 0; u < n; ++u)
                    worst = std::max(worst,
                                     std::abs(static_cast<double>(g.signs[static_cast<size_t>(t)]) *
                                                  md.S(g.image[static_cast<size_t>(t)], u) -
                                              static_cast<double>(g.signs[static_cast<size_t>(u)]) *
                                                  md.S(t, g.image[static_cast<size_t>(u)])));
            ordered_json out = spec_json(spec);
            out["ell"] = galois_ell;
            out["conductor"] = galois_conductor(spec);
            out["image"] = g.image;
            out["signs"] = g.signs;
            out["max_identity_deviation"] = fmt_double(worst);
            emit(cfg, out.dump(2));
            return worst > cfg.tol_u ? 2 : 0;
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
