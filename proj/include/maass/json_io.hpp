#pragma once

#include <string>

#include "json.hpp"
#include "maass/descent.hpp"

namespace maass {

using Json = nlohmann::ordered_json;

inline Json fe_to_json(const FieldElement& z) {
    return Json::array({rat_to_string(z.x), rat_to_string(z.y)});
}

inline FieldElement fe_from_json(const QuadField& K, const Json& j) {
    return {K.d, rat_from_string(j.at(0).get<std::string>()),
            rat_from_string(j.at(1).get<std::string>())};
}

/// {weight, level, N, coeffs: [[n, x, y], ...]} with exact rationals as
/// "num/den" strings; zero coefficients are omitted.
inline Json qexpansion_to_json(const QExpansion& Q) {
    Json j;
    j["weight"] = Q.weight;
    j["level"] = Q.level.get_si();
    j["N"] = Q.N.get_si();
    Json coeffs = Json::array();
    for (Int n = 0; n <= Q.N; ++n) {
        FieldElement v = Q.at(Rat(n));
        if (!v.is_zero())
            coeffs.push_back(Json::array({n.get_si(), rat_to_string(v.x), rat_to_string(v.y)}));
    }
    j["coeffs"] = std::move(coeffs);
    return j;
}

inline QExpansion qexpansion_from_json(const QuadField& K, const Json& j) {
    QExpansion Q = zero_expansion(K, j.at("weight").get<long>(), Int(j.at("N").get<long>()));
    if (Int(j.at("level").get<long>()) != K.D_F)
        throw std::invalid_argument("qexpansion_from_json: level does not match the field");
    for (const auto& c : j.at("coeffs")) {
        long n = c.at(0).get<long>();
        if (n < 0 || Int(n) > Q.N) throw std::invalid_argument("qexpansion_from_json: index");
        Q.a[static_cast<std::size_t>(n)] = {K.d, rat_from_string(c.at(1).get<std::string>()),
                                            rat_from_string(c.at(2).get<std::string>())};
    }
    return Q;
}

inline Json base_entry_to_json(const BaseEntry& e) {
    Json j;
    if (e.is_identity) {
        j["identity"] = true;
    } else {
        j["p"] = e.prime.p.get_si();
        j["bar"] = e.prime.bar;
        j["exponent"] = e.exponent;
    }
    return j;
}

/// {field, k, base, alphas: per-b [[n, x, y], ...]}.
inline Json maass_system_to_json(const MaassSystem& M) {
    Json j;
    j["field"] = M.K.d.get_si();
    j["k"] = M.k;
    j["N"] = M.N_alpha.get_si();
    Json base = Json::array();
    for (std::size_t b = 0; b < M.B.size(); ++b) base.push_back(base_entry_to_json(M.B.entry(b)));
    j["base"] = std::move(base);
    Json alphas = Json::array();
    for (std::size_t b = 0; b < M.B.size(); ++b) {
        Json tbl = Json::array();
        for (const auto& [n, v] : M.alpha[b])
            tbl.push_back(Json::array({n.get_si(), rat_to_string(v.x), rat_to_string(v.y)}));
        alphas.push_back(std::move(tbl));
    }
    j["alphas"] = std::move(alphas);
    return j;
}

inline Json qmat4_to_json(const QMat4& A) {
    Json rows = Json::array();
    for (int i = 0; i < 4; ++i) {
        Json row = Json::array();
        for (int j = 0; j < 4; ++j) row.push_back(rat_to_string(A.m[i][j]));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Json coset_table_to_json(const CosetTable& t) {
    Json j;
    j["op"] = t.op == HeckeOp::T ? "T" : t.op == HeckeOp::U ? "U" : "Delta";
    j["p"] = t.p.get_si();
    Json reps = Json::array();
    for (const auto& [A1, A2] : t.reps)
        reps.push_back(Json::array({qmat4_to_json(A1), qmat4_to_json(A2)}));
    j["reps"] = std::move(reps);
    return j;
}

/// {field, k, op, prime, checked_range, mismatches: [{n, b, lhs, rhs}]}.
inline Json report_to_json(const EquivarianceReport& r) {
    Json j;
    j["field"] = r.d.get_si();
    j["k"] = r.k;
    j["op"] = r.op;
    j["prime"] = r.p.get_si();
    j["checked_range"] = r.checked_N.get_si();
    Json ms = Json::array();
    for (const auto& m : r.mismatches) {
        Json e;
        e["n"] = m.n.get_si();
        e["b"] = m.b;
        e["lhs"] = fe_to_json(m.lhs);
        e["rhs"] = fe_to_json(m.rhs);
        ms.push_back(std::move(e));
    }
    j["mismatches"] = std::move(ms);
    return j;
}

}  // namespace maass
