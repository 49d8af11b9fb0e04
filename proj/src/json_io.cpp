#include "horacirc/json_io.hpp"

#include "horacirc/errors.hpp"

namespace horacirc {

namespace {

Json integer_json(const Integer& z) {
    if (z.fits_slong_p()) return z.get_si();
    return z.get_str();
}

Integer integer_from_json(const Json& j) {
    if (j.is_number_integer()) return Integer(j.get<long>());
    if (j.is_string()) return Rational::parse(j.get<std::string>()).num();
    throw ParseError("expected an integer");
}

}  // namespace

Json to_json(const Rational& x) { return x.to_string(); }

Rational rational_from_json(const Json& j) {
    if (j.is_string()) return Rational::parse(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long>());
    throw ParseError("expected a rational string");
}

Json to_json(const QuadExt& x) {
    Json j;
    j["u"] = to_json(x.u());
    j["v"] = to_json(x.v());
    j["D"] = integer_json(x.discriminant());
    return j;
}

QuadExt quad_ext_from_json(const Json& j) {
    try {
        return QuadExt(rational_from_json(j.at("u")), rational_from_json(j.at("v")), integer_from_json(j.at("D")));
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad quadratic-field value: ") + e.what());
    }
}

Json to_json(const HoradamParams& params) {
    return Json{{"a", integer_json(params.a)},
                {"b", integer_json(params.b)},
                {"p", integer_json(params.p)},
                {"q", integer_json(params.q)}};
}

Json to_json(const Circulant& c) {
    Json j;
    j["n"] = c.n();
    Json row = Json::array();
    for (const auto& x : c.first_row()) row.push_back(to_json(x));
    j["first_row"] = std::move(row);
    return j;
}

Circulant circulant_from_json(const Json& j) {
    try {
        const auto n = j.at("n").get<std::size_t>();
        std::vector<Rational> row;
        for (const auto& x : j.at("first_row")) row.push_back(rational_from_json(x));
        if (row.size() != n) throw ParseError("first_row length does not match n");
        return Circulant(std::move(row));
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad circulant: ") + e.what());
    }
}

Json to_json(const DenseMatrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

namespace audit {

namespace {

Json value_json(const Value& v) {
    return std::visit(
        [](const auto& x) -> Json {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, std::monostate>) {
                return nullptr;
            } else if constexpr (std::is_same_v<T, Rational> || std::is_same_v<T, DenseMatrix>) {
                return horacirc::to_json(x);
            } else if constexpr (std::is_same_v<T, std::vector<Rational>>) {
                Json a = Json::array();
                for (const auto& e : x) a.push_back(horacirc::to_json(e));
                return a;
            } else {
                return Json(x);
            }
        },
        v);
}

Json discrepancy_json(const Discrepancy& d) {
    return std::visit(
        [](const auto& x) -> Json {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, std::monostate>) {
                return nullptr;
            } else if constexpr (std::is_same_v<T, Rational>) {
                return horacirc::to_json(x);
            } else if constexpr (std::is_same_v<T, EntryMismatch>) {
                return Json{{"row", x.row}, {"col", x.col}, {"printed", x.actual.to_string()},
                            {"oracle", x.expected.to_string()}};
            } else {
                return Json{{"index", x.index}, {"printed", x.printed}, {"oracle", x.oracle}, {"rel_err", x.rel_err}};
            }
        },
        d);
}

Json optional_string(const std::optional<std::string>& s) { return s ? Json(*s) : Json(nullptr); }

}  // namespace

Json to_json(const CaseKey& k) {
    return Json{{"a", integer_json(k.params.a)}, {"b", integer_json(k.params.b)}, {"p", integer_json(k.params.p)},
                {"q", integer_json(k.params.q)}, {"n", k.n},                      {"formula", to_string(k.formula)}};
}

Json to_json(const AuditReport& r) {
    Json j;
    j["case"] = to_json(r.key);
    j["printed"] = value_json(r.printed);
    j["oracle"] = value_json(r.oracle);
    j["match"] = r.match;
    j["discrepancy"] = discrepancy_json(r.discrepancy);
    j["skipped"] = optional_string(r.skipped);
    j["note"] = optional_string(r.note);
    j["integrity"] = optional_string(r.integrity);
    return j;
}

Json to_json(const AuditSummary& s) {
    Json formulas = Json::object();
    for (FormulaId id : all_formulas()) {
        const FormulaTotals& t = s.of(id);
        Json f;
        f["total"] = t.total();
        f["match"] = t.match;
        f["mismatch"] = t.mismatch;
        f["skipped"] = t.skipped;
        f["first_counterexample"] = t.first_counterexample ? to_json(*t.first_counterexample) : Json(nullptr);
        formulas[to_string(id)] = std::move(f);
    }
    Json errata = Json::array();
    for (const auto& e : s.errata) {
        errata.push_back(Json{{"id", e.id},
                              {"formula", to_string(e.formula)},
                              {"description", e.description},
                              {"mismatches", e.mismatches},
                              {"evaluated", e.evaluated},
                              {"systematic", e.mismatches == e.evaluated},
                              {"example", to_json(e.example)}});
    }
    Json j;
    j["formulas"] = std::move(formulas);
    j["errata"] = std::move(errata);
    j["consistent"] = s.consistent();
    j["integrity_violations"] = s.integrity_violations;
    return j;
}

}  // namespace audit

}  // namespace horacirc
