#include "zq/series_io.hpp"

#include "zq/error.hpp"

namespace zq {

nlohmann::json series_to_json(const QSeries& s) {
    nlohmann::json j;
    j["denom"] = s.denom();
    if (s.order()) {
        j["order"] = {to_ll(s.order()->get_num()), to_ll(s.order()->get_den())};
    } else {
        j["order"] = nullptr;
    }
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [num, c] : s.terms())
        terms.push_back({num, c.get_num().get_str(), c.get_den().get_str()});
    j["terms"] = std::move(terms);
    return j;
}

QSeries series_from_json(const nlohmann::json& j) {
    try {
        long long denom = j.at("denom").get<long long>();
        std::optional<Rat> order;
        if (!j.at("order").is_null()) {
            order = make_rat(j.at("order").at(0).get<long long>(),
                             j.at("order").at(1).get<long long>());
        }
        QSeries s = order ? QSeries::zero(*order) : QSeries::exact_zero();
        for (const auto& term : j.at("terms")) {
            long long exp_num = term.at(0).get<long long>();
            Int cnum(term.at(1).get<std::string>());
            Int cden(term.at(2).get<std::string>());
            Rat coeff(cnum, cden);
            coeff.canonicalize();
            s.add_term(make_rat(exp_num, denom), coeff);
        }
        s.normalize();
        return s;
    } catch (const nlohmann::json::exception& e) {
        throw input_error(std::string("bad series record: ") + e.what());
    }
}

}  // namespace zq
