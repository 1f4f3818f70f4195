/*
 * JSON encodings shared by every module:
 *   LaurentInt  {"lo": int, "coeffs": [int...]}, coefficients as decimal
 *               strings when they exceed 64 bits
 *   RatQ        {"num": LaurentInt, "den": LaurentInt}
 *   weights     {"i": 1, "j": 0}
 *   words       [["i", 1], ["j", 2]]
 *   mu entries  {"type": "II", "omega": {...}} | {"type": "I", "vertex": "i", "n": 2}
 */
#pragma once

#include <json.hpp>

#include "qcb/cartan.hpp"
#include "qcb/words.hpp"

namespace qcb {

using Json = nlohmann::ordered_json;

inline Json to_json(const BigInt& v) {
    if (v.fits_slong_p()) return Json(v.get_si());
    return Json(v.get_str());
}

inline BigInt bigint_from_json(const Json& j) {
    if (j.is_number_integer()) return BigInt(static_cast<long>(j.get<int64_t>()));
    if (j.is_string()) return BigInt(j.get<std::string>());
    throw input_error("expected integer or decimal string");
}

inline Json to_json(const LaurentInt& a) {
    Json coeffs = Json::array();
    for (const auto& c : a.coeffs()) coeffs.push_back(to_json(c));
    return Json{{"lo", a.lo()}, {"coeffs", coeffs}};
}

inline LaurentInt laurent_from_json(const Json& j) {
    if (j.is_number_integer()) return LaurentInt(static_cast<long>(j.get<int64_t>()));
    if (!j.is_object() || !j.contains("lo") || !j.contains("coeffs"))
        throw input_error("expected {\"lo\":..., \"coeffs\":[...]}");
    std::vector<BigInt> coeffs;
    for (const auto& c : j.at("coeffs")) coeffs.push_back(bigint_from_json(c));
    return LaurentInt(j.at("lo").get<long>(), std::move(coeffs));
}

inline Json to_json(const RatQ& r) {
    return Json{{"num", to_json(r.num())}, {"den", to_json(r.den())}};
}

inline RatQ ratq_from_json(const Json& j) {
    if (j.is_number_integer()) return RatQ(static_cast<long>(j.get<int64_t>()));
    if (j.is_object() && j.contains("num"))
        return RatQ(laurent_from_json(j.at("num")),
                    j.contains("den") ? laurent_from_json(j.at("den")) : LaurentInt(1));
    return RatQ(laurent_from_json(j));
}

template <class Vec>
inline Json weight_to_json(const CartanData& cd, const Vec& w) {
    Json j = Json::object();
    for (size_t i = 0; i < cd.rank(); ++i) j[cd.vertex_name(i)] = w[i];
    return j;
}

// Accepts a sparse map; missing vertices are 0.
inline std::vector<long> weight_vec_from_json(const CartanData& cd, const Json& j) {
    std::vector<long> v(cd.rank(), 0);
    if (!j.is_object()) throw input_error("expected a {vertex: multiplicity} object");
    for (auto it = j.begin(); it != j.end(); ++it)
        v[cd.vertex_index(it.key())] = it.value().get<long>();
    return v;
}

inline DominantWeight weight_from_json(const CartanData& cd, const Json& j) {
    return DominantWeight(weight_vec_from_json(cd, j));
}

inline Content content_from_json(const CartanData& cd, const Json& j) {
    Content c(weight_vec_from_json(cd, j));
    if (!c.nonnegative()) throw input_error("content must be nonnegative");
    return c;
}

inline Json word_to_json(const CartanData& cd, const FWord& w) {
    Json j = Json::array();
    for (const auto& l : w.letters()) j.push_back(Json::array({cd.vertex_name(l.vertex), l.n}));
    return j;
}

inline FWord word_from_json(const CartanData& cd, const Json& j) {
    if (!j.is_array()) throw input_error("expected a word [[vertex, n], ...]");
    std::vector<FLetter> letters;
    for (const auto& e : j) {
        if (!e.is_array() || e.size() != 2) throw input_error("bad word letter");
        letters.push_back({cd.vertex_index(e.at(0).get<std::string>()), e.at(1).get<long>()});
    }
    return FWord(std::move(letters));
}

}  // namespace qcb
