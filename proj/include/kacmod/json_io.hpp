#pragma once

#include <cstdio>
#include <string>

#include <json.hpp>

#include "kacmod/algebra.hpp"
#include "kacmod/autoinv.hpp"
#include "kacmod/modular.hpp"

namespace kacmod {

using ordered_json = nlohmann::ordered_json;

// All floating output goes through one formatter: 15 significant digits.
inline std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.15g", v);
    return buf;
}

inline ordered_json spec_json(const AlgebraSpec& spec) {
    ordered_json factors = ordered_json::array();
    for (const auto& f : spec.factors) factors.push_back({{"r", f.rank}, {"k", f.level}});
    return {{"factors", factors}};
}

inline ordered_json weight_json(const Weight& w) {
    ordered_json out = ordered_json::array();
    for (const auto& l : w.labels) out.push_back(l);
    return out;
}

inline ordered_json weight_table_json(const WeightTable& table) {
    ordered_json out = spec_json(table.spec());
    out["n"] = table.size();
    ordered_json weights = ordered_json::array();
    for (const auto& w : table.order()) weights.push_back(weight_json(w));
    out["weights"] = std::move(weights);
    return out;
}

inline ordered_json smatrix_json(const ModularData& md) {
    ordered_json out = spec_json(md.table().spec());
    int n = md.size();
    out["n"] = n;
    ordered_json entries = ordered_json::array();
    for (int t = 0; t < n; ++t)
        for (int u = 0; u < n; ++u) {
            cplx v = md.S(t, u);
            entries.push_back({fmt_double(v.real()), fmt_double(v.imag())});
        }
    out["entries"] = std::move(entries);
    return out;
}

inline std::string smatrix_csv(const ModularData& md) {
    std::string out;
    int n = md.size();
    for (int t = 0; t < n; ++t) {
        for (int u = 0; u < n; ++u) {
            cplx v = md.S(t, u);
            if (u) out += ",";
            out += fmt_double(v.real());
            out += v.imag() < 0 ? "-" : "+";
            out += fmt_double(std::abs(v.imag()));
            out += "j";
        }
        out += "\n";
    }
    return out;
}

inline ordered_json tvector_json(const ModularData& md) {
    ordered_json out = spec_json(md.table().spec());
    out["n"] = md.size();
    ordered_json texp = ordered_json::array();
    ordered_json anomaly = ordered_json::array();
    for (int t = 0; t < md.size(); ++t) {
        texp.push_back(md.Texp(t).str());
        anomaly.push_back(md.anomaly(t).str());
    }
    out["texp"] = std::move(texp);
    out["anomaly"] = std::move(anomaly);
    return out;
}

inline ordered_json invariant_json(const ClassifiedInvariant& ci) {
    ordered_json form;
    form["pi"] = ci.form.pi;
    form["c"] = ci.form.c;
    form["a"] = ci.form.a;
    ordered_json out;
    out["form"] = std::move(form);
    out["permutation"] = ci.permutation;
    if (ci.cm_label) {
        out["type"] = "C^a sigma_m";
        out["a"] = ci.cm_label->first;
        out["m"] = ci.cm_label->second;
    }
    return out;
}

} // namespace kacmod
