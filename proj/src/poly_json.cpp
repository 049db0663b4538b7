#include "minsurf/poly_json.hpp"

#include "minsurf/errors.hpp"

namespace minsurf {

Json to_json(const Polynomial& p, const VariableNaming& naming) {
    if (naming.size() != p.nvars()) throw UsageError("naming size does not match nvars");
    Json terms = Json::array();
    for (const auto& t : p.terms()) {
        Json exps = Json::array();
        for (auto e : t.monomial.exponents()) exps.push_back(e);
        terms.push_back(Json{{"num", t.coeff.get_num().get_str(10)},
                             {"den", t.coeff.get_den().get_str(10)},
                             {"exps", std::move(exps)}});
    }
    return Json{{"nvars", p.nvars()}, {"names", naming.names()}, {"terms", std::move(terms)}};
}

Json to_json(const Polynomial& p) {
    if (p.nvars() == 1) return to_json(p, VariableNaming::univariate());
    return to_json(p, VariableNaming::interleaved(p.nvars()));
}

Polynomial polynomial_from_json(const Json& j) {
    try {
        auto nvars = j.at("nvars").get<std::size_t>();
        if (j.contains("names") && j.at("names").size() != nvars)
            throw UsageError("polynomial JSON: names length does not match nvars");
        std::vector<Term> terms;
        for (const auto& t : j.at("terms")) {
            auto exps = t.at("exps").get<std::vector<Monomial::Exponent>>();
            if (exps.size() != nvars) throw UsageError("polynomial JSON: exps length does not match nvars");
            auto num = Integer(t.at("num").get<std::string>(), 10);
            auto den = Integer(t.at("den").get<std::string>(), 10);
            if (den <= 0) throw UsageError("polynomial JSON: denominator must be positive");
            terms.push_back({Monomial(std::move(exps)), make_rational(num, den)});
        }
        return Polynomial(nvars, std::move(terms));
    } catch (const nlohmann::json::exception& e) {
        throw UsageError(std::string("polynomial JSON: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("polynomial JSON: ") + e.what());
    }
}

}  // namespace minsurf
