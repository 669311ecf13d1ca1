#include "hermgeo/json_io.hpp"

#include <set>
#include <stdexcept>
#include <string>

namespace hermgeo {

namespace {

ordered_json vec_json(const Field& f, const Vec4& v) {
    ordered_json out = ordered_json::array();
    for (const felem x : v) out.push_back(f.to_string(x));
    return out;
}

template <int N>
ordered_json poly_json(const PolyForm<N>& g) {
    ordered_json terms = ordered_json::array();
    for (const auto& [exp, c] : g.terms()) {
        ordered_json e = ordered_json::array();
        for (const unsigned x : exp) e.push_back(x);
        terms.push_back({{"exp", e}, {"c", g.field().to_string(c)}});
    }
    return {{"q", g.field().q()}, {"degree", g.degree()}, {"terms", terms}};
}

[[noreturn]] void bad_form(const std::string& what) {
    throw std::invalid_argument("form document: " + what);
}

std::uint64_t require_count(const ordered_json& j, const char* key) {
    if (!j.contains(key)) bad_form(std::string("missing \"") + key + "\"");
    const ordered_json& v = j.at(key);
    if (!v.is_number_integer() && !v.is_number_unsigned())
        bad_form(std::string("\"") + key + "\" is not an integer");
    if (v.is_number_integer() && v.get<std::int64_t>() < 0)
        bad_form(std::string("\"") + key + "\" is negative");
    return v.get<std::uint64_t>();
}

template <typename T>
ordered_json count_map_json(const std::map<T, std::uint64_t>& m) {
    ordered_json out = ordered_json::object();
    for (const auto& [key, value] : m) {
        if constexpr (std::is_same_v<T, std::string>)
            out[key] = value;
        else
            out[std::to_string(key)] = value;
    }
    return out;
}

} // namespace

ordered_json to_json(const Point& p) { return vec_json(*p.f, p.c); }

ordered_json to_json(const Plane& h) { return vec_json(*h.f, h.dual); }

ordered_json to_json(const Line& l) {
    return ordered_json::array({vec_json(*l.f, l.rows[0]), vec_json(*l.f, l.rows[1])});
}

ordered_json to_json(const Form2& g) { return poly_json(g); }

ordered_json to_json(const Form4& g) { return poly_json(g); }

Form4 form_from_json(const Field& f, const ordered_json& j) {
    if (!j.is_object()) bad_form("expected a JSON object");
    if (require_count(j, "q") != f.q())
        bad_form("q does not match the requested field GF(" + std::to_string(f.order()) +
                 ")");
    const std::uint64_t degree = require_count(j, "degree");
    if (!j.contains("terms") || !j.at("terms").is_array())
        bad_form("missing \"terms\" array");

    Form4 g(f, static_cast<unsigned>(degree));
    std::set<Form4::Exponents> seen;
    for (const ordered_json& term : j.at("terms")) {
        if (!term.is_object() || !term.contains("exp") || !term.contains("c"))
            bad_form("each term needs \"exp\" and \"c\"");
        const ordered_json& ej = term.at("exp");
        if (!ej.is_array() || ej.size() != 4) bad_form("\"exp\" must hold four entries");
        Form4::Exponents e{};
        std::uint64_t sum = 0;
        for (int v = 0; v < 4; ++v) {
            const ordered_json& x = ej.at(v);
            if (!x.is_number_integer() && !x.is_number_unsigned())
                bad_form("exponents must be integers");
            if (x.is_number_integer() && x.get<std::int64_t>() < 0)
                bad_form("exponents must not be negative");
            const std::uint64_t raw = x.get<std::uint64_t>();
            if (raw > 255) bad_form("exponent " + std::to_string(raw) + " is out of range");
            e[v] = static_cast<std::uint8_t>(raw);
            sum += raw;
        }
        if (sum != degree)
            bad_form("exponents sum to " + std::to_string(sum) + ", degree says " +
                     std::to_string(degree));
        if (!seen.insert(e).second) bad_form("duplicate exponent vector");
        if (!term.at("c").is_string()) bad_form("\"c\" must be a field-element string");
        g.set_coeff(e, f.parse(term.at("c").get<std::string>()));
    }
    return g;
}

ordered_json to_json(const Configuration& c) {
    ordered_json planes = ordered_json::array();
    for (const Plane& h : c.planes) planes.push_back(to_json(h));
    ordered_json axes = ordered_json::array();
    for (const Line& l : c.axis_lines) axes.push_back(to_json(l));
    ordered_json base = ordered_json::array();
    for (const Point& p : c.base_points) base.push_back(to_json(p));
    return {
        {"modulus_table", Field::modulus_table_version()},
        {"kind", to_string(c.kind)},
        {"q", c.form.field().q()},
        {"planes", planes},
        {"axis_lines", axes},
        {"base_points", base},
        {"form", to_json(c.form)},
        {"expected_count", c.expected_count},
        {"measured_count", c.measured_count},
    };
}

ordered_json to_json(const SurveyReport& r) {
    ordered_json witnesses = ordered_json::array();
    for (const Form4& w : r.witnesses) witnesses.push_back(to_json(w));
    return {
        {"modulus_table", Field::modulus_table_version()},
        {"survey", r.survey},
        {"q", r.q},
        {"d", r.d},
        {"mode", r.mode},
        {"seed", r.seed},
        {"sample_size", r.sample_size},
        {"histogram", count_map_json(r.histogram)},
        {"max_count", r.max_count},
        {"witnesses", witnesses},
        {"violations", r.violations},
        {"notes", r.notes},
    };
}

ordered_json to_json(const StructureReport& r) {
    ordered_json profiles = ordered_json::object();
    for (const auto& [cls, profile] : r.book_profiles)
        profiles[cls] = ordered_json::array({profile[0], profile[1]});
    return {
        {"modulus_table", Field::modulus_table_version()},
        {"q", r.q},
        {"mode", r.mode},
        {"seed", r.seed},
        {"surface_points", r.surface_points},
        {"lines_checked", r.lines_checked},
        {"planes_checked", r.planes_checked},
        {"pairs_checked", r.pairs_checked},
        {"line_census", count_map_json(r.line_census)},
        {"line_point_spectrum", count_map_json(r.line_point_spectrum)},
        {"plane_census", count_map_json(r.plane_census)},
        {"plane_point_spectrum", count_map_json(r.plane_point_spectrum)},
        {"book_profiles", profiles},
        {"violations", r.violations},
    };
}

ordered_json to_json(const CubicNF& nf) {
    ordered_json frame = ordered_json::array();
    for (const Vec4& row : nf.frame.m) frame.push_back(vec_json(*nf.f, row));
    return {
        {"q", nf.f->q()},          {"axis", to_json(nf.axis)},
        {"frame", frame},          {"even_char", nf.even_char},
        {"A", to_json(nf.A)},      {"B", to_json(nf.B)},
        {"C", to_json(nf.C)},      {"D", to_json(nf.D)},
        {"E", to_json(nf.E)},      {"K", to_json(nf.K)},
    };
}

ordered_json to_json(const TEllReport& r) {
    ordered_json sections = ordered_json::array();
    for (const auto& [plane, kind] : r.sections)
        sections.push_back({{"plane", to_json(plane)}, {"kind", to_string(kind)}});
    ordered_json members = ordered_json::array();
    for (const Plane& h : r.members) members.push_back(to_json(h));
    return {
        {"axis", to_json(r.axis)},
        {"invariant_nonzero", r.invariant_nonzero},
        {"sections", sections},
        {"members", members},
    };
}

} // namespace hermgeo
