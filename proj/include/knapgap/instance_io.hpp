#ifndef KNAPGAP_INSTANCE_IO_HPP
#define KNAPGAP_INSTANCE_IO_HPP

/**
 * JSON (de)serialization of instances and solutions.
 *
 * Instance files look like
 *   {"sense":"packing","k":1,"n":2,"A":[[2,3]],"b":[4],"c":[1,"1/2"],"d":[1,"inf"]}
 * Costs are integers or "p/q" strings; copy bounds are integers or "inf".
 * parse(serialize(inst)) == inst holds exactly, including unbounded markers.
 */

#include <string>
#include <vector>

#include <json.hpp>

#include "knapgap/errors.hpp"
#include "knapgap/instance.hpp"
#include "knapgap/rational.hpp"

namespace knapgap {

using Json = nlohmann::ordered_json;

namespace detail {

inline long long require_int(const Json& v, const std::string& path) {
    if (!v.is_number_integer())
        throw ValidationError(path + ": expected an integer");
    return v.get<long long>();
}

inline Rational parse_cost(const Json& v, const std::string& path) {
    if (v.is_number_integer()) return Rational(v.get<long long>());
    if (v.is_string()) {
        auto q = parse_rational(v.get<std::string>());
        if (!q) throw ValidationError(path + ": malformed rational");
        return *q;
    }
    throw ValidationError(path + ": expected integer or \"p/q\" string");
}

inline CopyBound parse_bound(const Json& v, const std::string& path) {
    if (v.is_number_integer()) return v.get<long long>();
    if (v.is_string() && v.get<std::string>() == "inf") return std::nullopt;
    throw ValidationError(path + ": expected integer or \"inf\"");
}

inline const Json& field(const Json& doc, const char* name) {
    if (!doc.contains(name)) throw ValidationError(std::string(name) + ": missing field");
    return doc.at(name);
}

}  // namespace detail

inline KnapsackInstance parse_instance(const Json& doc) {
    using detail::field;
    if (!doc.is_object()) throw ValidationError("document: expected a JSON object");
    KnapsackInstance inst;
    const Json& sense = field(doc, "sense");
    if (!sense.is_string() || (sense != "packing" && sense != "covering"))
        throw ValidationError("sense: expected \"packing\" or \"covering\"");
    inst.sense = sense == "packing" ? Sense::Packing : Sense::Covering;
    inst.k = (int)detail::require_int(field(doc, "k"), "k");
    inst.n = (int)detail::require_int(field(doc, "n"), "n");

    const Json& A = field(doc, "A");
    if (!A.is_array()) throw ValidationError("A: expected an array of rows");
    for (std::size_t j = 0; j < A.size(); ++j) {
        const std::string rp = "A[" + std::to_string(j) + "]";
        if (!A[j].is_array()) throw ValidationError(rp + ": expected an array");
        std::vector<long long> row;
        for (std::size_t i = 0; i < A[j].size(); ++i)
            row.push_back(detail::require_int(A[j][i], rp + "[" + std::to_string(i) + "]"));
        inst.A.push_back(std::move(row));
    }
    const Json& b = field(doc, "b");
    if (!b.is_array()) throw ValidationError("b: expected an array");
    for (std::size_t j = 0; j < b.size(); ++j)
        inst.b.push_back(detail::require_int(b[j], "b[" + std::to_string(j) + "]"));
    const Json& c = field(doc, "c");
    if (!c.is_array()) throw ValidationError("c: expected an array");
    for (std::size_t i = 0; i < c.size(); ++i)
        inst.c.push_back(detail::parse_cost(c[i], "c[" + std::to_string(i) + "]"));
    const Json& d = field(doc, "d");
    if (!d.is_array()) throw ValidationError("d: expected an array");
    for (std::size_t i = 0; i < d.size(); ++i)
        inst.d.push_back(detail::parse_bound(d[i], "d[" + std::to_string(i) + "]"));

    validate(inst);
    return inst;
}

inline KnapsackInstance parse_instance(const std::string& text) {
    Json doc = Json::parse(text, nullptr, false);
    if (doc.is_discarded()) throw ValidationError("document: malformed JSON");
    return parse_instance(doc);
}

inline Json cost_to_json(const Rational& q) {
    if (is_integral(q) && numerator(q) >= std::numeric_limits<long long>::min() &&
        numerator(q) <= std::numeric_limits<long long>::max())
        return Json(numerator(q).convert_to<long long>());
    return Json(to_string(q));
}

inline Json serialize_instance(const KnapsackInstance& inst) {
    Json doc;
    doc["sense"] = to_string(inst.sense);
    doc["k"] = inst.k;
    doc["n"] = inst.n;
    doc["A"] = inst.A;
    doc["b"] = inst.b;
    Json c = Json::array();
    for (const Rational& ci : inst.c) c.push_back(cost_to_json(ci));
    doc["c"] = std::move(c);
    Json d = Json::array();
    for (const CopyBound& di : inst.d) d.push_back(di.has_value() ? Json(*di) : Json("inf"));
    doc["d"] = std::move(d);
    return doc;
}

inline Json serialize_solution(const IntegralSolution& sol) {
    Json doc;
    doc["x"] = sol.x;
    doc["value"] = to_string(sol.value);
    return doc;
}

}  // namespace knapgap

#endif  // KNAPGAP_INSTANCE_IO_HPP
