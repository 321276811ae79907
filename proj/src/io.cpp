#include "hecke/io.hpp"

#include <sstream>

namespace hecke {

json to_json(const RingElem& e) { return json(e.coeffs()); }

RingElem ring_from_json(int p, const json& j) {
    if (!j.is_array()) throw std::invalid_argument("ring element must be a JSON array of integers");
    Icoeffs c;
    for (const auto& v : j) c.push_back(v.get<long long>());
    return RingElem(p, std::move(c));
}

json to_json(const GroupElem& m) {
    return json{{"p", m.p()}, {"a", to_json(m.a())}, {"b", to_json(m.b())},
                {"c", to_json(m.c())}, {"d", to_json(m.d())}};
}

GroupElem group_from_json(const json& j) {
    int p = j.at("p").get<int>();
    return GroupElem(ring_from_json(p, j.at("a")), ring_from_json(p, j.at("b")),
                     ring_from_json(p, j.at("c")), ring_from_json(p, j.at("d")));
}

json to_json(const QuadraticForm& q) {
    return json{{"p", q.p()}, {"A", to_json(q.A())}, {"B", to_json(q.B())}, {"C", to_json(q.C())}};
}

QuadraticForm form_from_json(const json& j) {
    int p = j.at("p").get<int>();
    return QuadraticForm(ring_from_json(p, j.at("A")), ring_from_json(p, j.at("B")),
                         ring_from_json(p, j.at("C")));
}

json cycle_report(const SimpleCycle& c) {
    json members = json::array();
    for (std::size_t i = 0; i < c.members.size(); ++i) {
        const auto& m = c.members[i];
        members.push_back(json{{"form", to_json(m.form())},
                               {"value", m.to_double()},
                               {"conjugate_value", m.hecke_conjugate().to_double()},
                               {"interval_index", c.interval_idx[i]},
                               {"sigma_image", c.sigma[i]}});
    }
    json pairing = json::array();
    for (int j = 2; j <= c.p; ++j)
        pairing.push_back(json{{"j", j}, {"holds", verify_interval_pairing(c, j)}});
    return json{{"p", c.p},
                {"class_seed", to_json(c.class_seed)},
                {"discriminant", to_json(c.disc)},
                {"discriminant_value", c.disc.embed(64).mid_double()},
                {"members", members},
                {"sigma_orbit_count", c.sigma_orbit_count},
                {"depth_used", c.depth_used},
                {"forms_visited", c.forms_visited},
                {"interval_pairing", pairing},
                {"certificate_ok", c.certificate_ok}};
}

json to_json(const RpfSpec& spec) {
    json terms = json::array();
    for (const auto& t : spec.terms)
        terms.push_back(json{{"seed_form", to_json(t.cycle.class_seed)}, {"d", t.d}});
    return json{{"p", spec.p}, {"k", spec.k},     {"c0", spec.c0},
                {"nu", spec.nu}, {"eta", spec.eta}, {"terms", terms}};
}

RpfSpec spec_from_json(const json& j, const EnumerationOptions& opts) {
    RpfSpec spec;
    spec.p = j.at("p").get<int>();
    spec.k = j.at("k").get<int>();
    spec.c0 = j.value("c0", 0.0);
    spec.nu = j.value("nu", 0.0);
    spec.eta = j.value("eta", 0.0);
    if (j.contains("terms")) {
        for (const auto& tj : j.at("terms")) {
            QuadraticForm seed = form_from_json(tj.at("seed_form"));
            if (seed.p() != spec.p)
                throw std::invalid_argument("spec term with mismatched p");
            RpfTerm term{enumerate_simple_cycle(seed, opts), tj.value("d", 1.0)};
            spec.terms.push_back(std::move(term));
        }
    }
    spec.validate();
    return spec;
}

json to_json(const FourierSeries& s) {
    return json{{"lambda_p", s.p}, {"weight", s.weight}, {"coeffs", s.coeffs}};
}

FourierSeries series_from_json(const json& j) {
    FourierSeries s;
    s.p = j.at("lambda_p").get<int>();
    s.weight = j.at("weight").get<int>();
    s.coeffs = j.at("coeffs").get<std::vector<double>>();
    return s;
}

json to_json(const RelationReport& r) {
    return json{{"name", r.name},
                {"max_residual", r.max_residual},
                {"n_samples", r.n_samples},
                {"tolerance", r.tolerance},
                {"pass", r.pass}};
}

json to_json(const SecondRelationReport& r) {
    return json{{"name", "r2"},
                {"symbolic_empty", r.symbolic_empty},
                {"atoms_before_merge", r.atoms_before},
                {"atoms_after_merge", r.atoms_after},
                {"max_residual", r.max_residual},
                {"tolerance", r.tolerance},
                {"n_samples", r.n_samples},
                {"trace", r.trace},
                {"pass", r.pass}};
}

json to_json(const InverseMellinReport& r) {
    return json{{"name", "invmellin"},
                {"T", r.T},
                {"integral", {r.integral.real(), r.integral.imag()}},
                {"rhs", {r.rhs.real(), r.rhs.imag()}},
                {"abs_error", r.abs_error},
                {"truncation_estimate", r.truncation_estimate}};
}

json to_json(const FunctionalEquationReport& r) {
    json grid = json::array();
    for (auto s : r.grid) grid.push_back(json{s.real(), s.imag()});
    return json{{"name", "fe"},
                {"grid", grid},
                {"residuals", r.residuals},
                {"max_residual", r.max_residual},
                {"tolerance", r.tolerance},
                {"pass", r.pass}};
}

// "[A,B,C]" where each entry is either an integer or a nested coefficient
// vector in powers of lambda, e.g. "[1,[0,1],-1]" for [1, lambda, -1].
QuadraticForm form_from_brackets(int p, const std::string& text) {
    std::string t;
    for (char ch : text)
        if (!isspace(static_cast<unsigned char>(ch))) t.push_back(ch);
    if (t.size() < 2 || t.front() != '[' || t.back() != ']')
        throw std::invalid_argument("form must look like [A,B,C]");
    std::vector<std::string> items;
    int depth = 0;
    std::string cur;
    for (size_t i = 1; i + 1 < t.size(); ++i) {
        char ch = t[i];
        if (ch == '[') ++depth;
        if (ch == ']') --depth;
        if (ch == ',' && depth == 0) {
            items.push_back(cur);
            cur.clear();
        } else
            cur.push_back(ch);
    }
    items.push_back(cur);
    if (items.size() != 3) throw std::invalid_argument("form must have three entries");
    auto parse = [&](const std::string& item) -> RingElem {
        if (!item.empty() && item.front() == '[') {
            Icoeffs c;
            std::istringstream is(item.substr(1, item.size() - 2));
            std::string v;
            while (std::getline(is, v, ',')) c.push_back(std::stoll(v));
            return RingElem(p, std::move(c));
        }
        return RingElem::from_int(p, std::stoll(item));
    };
    return QuadraticForm(parse(items[0]), parse(items[1]), parse(items[2]));
}

}  // namespace hecke
