#include "bilops/report.hpp"

namespace bilops {

Json rational_to_json(const Rational& q) { return to_string(q); }

Rational rational_from_json(const Json& j) {
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (j.is_string()) return parse_rational(j.get<std::string>());
    throw ConfigError("expected a rational (\"p/q\" string or integer)");
}

Json weight_to_json(const Weight& w) {
    Json out = Json::array();
    for (const auto& c : w) out.push_back(rational_to_json(c));
    return out;
}

Weight weight_from_json(const Json& j) {
    if (!j.is_array() || j.empty()) throw ConfigError("weight must be a non-empty array");
    Weight w;
    for (const auto& c : j) w.push_back(rational_from_json(c));
    return w;
}

Json jet_vector_to_json(const JetVector& v) {
    Json terms = Json::array();
    for (const auto& [k, c] : v.terms) {
        Json t;
        t["dp1"] = k.a1;
        t["dp2"] = k.a2;
        t["i"] = k.i;
        t["j"] = k.j;
        t["c"] = rational_to_json(c);
        terms.push_back(std::move(t));
    }
    Json out;
    out["degree"] = v.degree;
    out["terms"] = std::move(terms);
    return out;
}

Json fiber_to_json(const IrredFiber& f) {
    Json out;
    out["n"] = f.n();
    out["top_weight"] = weight_to_json(f.top_weight());
    out["truncation"] = f.truncation();
    return out;
}

namespace {

const char* kind_tag(Kind k) {
    switch (k) {
        case Kind::Scalar: return "scalar";
        case Kind::Form: return "form";
        case Kind::Polyvector: return "polyvector";
        case Kind::Symtensor: return "symtensor";
        case Kind::VVForm: return "vvform";
    }
    return "?";
}

Kind kind_from_tag(const std::string& s) {
    if (s == "scalar" || s == "function" || s == "density") return Kind::Scalar;
    if (s == "form") return Kind::Form;
    if (s == "polyvector") return Kind::Polyvector;
    if (s == "symtensor") return Kind::Symtensor;
    if (s == "vvform") return Kind::VVForm;
    throw ConfigError("unknown tensor kind: " + s);
}

}  // namespace

Json tensor_field_to_json(const TensorField& f) {
    Json out;
    out["kind"] = kind_tag(f.kind());
    out["degree"] = f.degree();
    out["n"] = f.n();
    out["twist"] = rational_to_json(f.twist());
    Json terms = Json::array();
    for (const auto& [k, c] : f.coeffs()) {
        Json t;
        t["x"] = k.second;
        if (f.kind() == Kind::Form || f.kind() == Kind::Polyvector ||
            f.kind() == Kind::VVForm) {
            std::vector<int> idx;
            for (int i = 0; i < f.n(); ++i)
                if (k.first.mask & (1u << i)) idx.push_back(i + 1);
            t["indices"] = idx;
        }
        if (f.kind() == Kind::Symtensor)
            t["mom"] = k.first.mom.empty() ? std::vector<int>(f.n(), 0) : k.first.mom;
        if (f.kind() == Kind::VVForm) t["vec"] = k.first.vec + 1;
        t["c"] = rational_to_json(c);
        terms.push_back(std::move(t));
    }
    out["terms"] = std::move(terms);
    return out;
}

TensorField tensor_field_from_json(const Json& j) {
    if (!j.is_object()) throw ConfigError("tensor field must be a JSON object");
    Kind kind = kind_from_tag(j.at("kind").get<std::string>());
    int degree = j.value("degree", 0);
    int n = j.at("n").get<int>();
    Rational twist = j.contains("twist") ? rational_from_json(j.at("twist")) : Rational(0);
    TensorField f(kind, degree, n, twist);
    for (const auto& t : j.value("terms", Json::array())) {
        FiberKey fk;
        if (t.contains("indices")) {
            for (int i : t.at("indices").get<std::vector<int>>()) {
                if (i < 1 || i > n) throw ConfigError("tensor index out of range");
                fk.mask |= 1u << (i - 1);
            }
            if (__builtin_popcount(fk.mask) !=
                (kind == Kind::VVForm || kind == Kind::Form || kind == Kind::Polyvector
                     ? degree
                     : 0))
                throw ConfigError("index count does not match the declared degree");
        }
        if (t.contains("mom")) fk.mom = t.at("mom").get<std::vector<int>>();
        if (kind == Kind::VVForm) fk.vec = t.at("vec").get<int>() - 1;
        std::vector<int> e = t.at("x").get<std::vector<int>>();
        f.add(fk, e, rational_from_json(t.at("c")));
    }
    return f;
}

Json locus_to_json(const LocusDescription& locus) {
    Json out;
    out["whole_plane"] = locus.whole_plane;
    Json lines = Json::array();
    for (const auto& l : locus.lines) lines.push_back(l.str());
    out["lines"] = std::move(lines);
    Json pts = Json::array();
    for (const auto& [l, m] : locus.points)
        pts.push_back(Json::array({rational_to_json(l), rational_to_json(m)}));
    out["points"] = std::move(pts);
    out["residual"] = locus.residual;
    return out;
}

namespace {

std::string type_name(const Json& v) {
    if (v.is_object()) return "object";
    if (v.is_array()) return "array";
    if (v.is_string()) return "string";
    if (v.is_boolean()) return "boolean";
    if (v.is_number_integer()) return "integer";
    if (v.is_number()) return "number";
    return "null";
}

std::string validate_node(const Json& doc, const Json& schema, const std::string& path) {
    if (schema.contains("type")) {
        std::string want = schema.at("type").get<std::string>();
        std::string got = type_name(doc);
        bool ok = want == got || (want == "number" && got == "integer");
        if (!ok) return path + ": expected " + want + ", got " + got;
    }
    if (schema.contains("enum")) {
        bool ok = false;
        for (const auto& v : schema.at("enum"))
            if (v == doc) ok = true;
        if (!ok) return path + ": value not in enum";
    }
    if (doc.is_object()) {
        if (schema.contains("required"))
            for (const auto& k : schema.at("required"))
                if (!doc.contains(k.get<std::string>()))
                    return path + ": missing required key '" + k.get<std::string>() + "'";
        if (schema.contains("properties"))
            for (auto it = schema.at("properties").begin(); it != schema.at("properties").end();
                 ++it)
                if (doc.contains(it.key())) {
                    std::string err =
                        validate_node(doc.at(it.key()), it.value(), path + "." + it.key());
                    if (!err.empty()) return err;
                }
    }
    if (doc.is_array() && schema.contains("items")) {
        size_t i = 0;
        for (const auto& v : doc) {
            std::string err =
                validate_node(v, schema.at("items"), path + "[" + std::to_string(i) + "]");
            if (!err.empty()) return err;
            ++i;
        }
    }
    return "";
}

}  // namespace

std::string validate_against_schema(const Json& doc, const Json& schema) {
    return validate_node(doc, schema, "$");
}

const char* report_schema_text() {
    return R"({
  "$schema": "http://json-schema.org/draft-07/schema#",
  "title": "bilops report",
  "type": "object",
  "required": ["schema_version", "command", "config", "results"],
  "properties": {
    "schema_version": {"type": "string"},
    "command": {
      "type": "string",
      "enum": ["solve", "scan", "locus", "verify", "fit", "catalog_apply", "catalog_list"]
    },
    "config": {"type": "object"},
    "fixture_ids": {"type": "array", "items": {"type": "string"}},
    "results": {"type": "object"},
    "timing_ms": {"type": "number"}
  }
}
)";
}

}  // namespace bilops
