#include "hermgeo/json_io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace hermgeo;

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string piece;
    std::istringstream in(text);
    while (std::getline(in, piece, sep)) out.push_back(piece);
    return out;
}

Vec4 parse_vec(const Field& f, const std::string& text) {
    const auto parts = split(text, ',');
    if (parts.size() != 4)
        throw std::invalid_argument("expected four comma-separated field elements, got \"" +
                                    text + "\"");
    Vec4 v{};
    for (int i = 0; i < 4; ++i) v[i] = f.parse(parts[i]);
    return v;
}

// a line argument is either an enumeration index or "p0,p1,p2,p3;r0,r1,r2,r3"
Line parse_line_arg(const Field& f, bool have_index, std::uint64_t index,
                    const std::string& points) {
    if (have_index) {
        if (index >= line_count(f))
            throw std::invalid_argument("line index " + std::to_string(index) +
                                        " out of range, the space has " +
                                        std::to_string(line_count(f)) + " lines");
        return line_at(f, index);
    }
    const auto rows = split(points, ';');
    if (rows.size() != 2)
        throw std::invalid_argument("expected two points separated by ';'");
    return line_through(make_point(f, parse_vec(f, rows[0])),
                        make_point(f, parse_vec(f, rows[1])));
}

ordered_json load_form_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open form file " + path);
    return ordered_json::parse(in); // json::parse_error on malformed input
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open output file " + out_path);
    out << text;
}

std::string json_text(const ordered_json& j) { return j.dump(2) + "\n"; }

std::string survey_csv(const SurveyReport& r) {
    std::string out = "count,frequency\n";
    for (const auto& [count, freq] : r.histogram)
        out += std::to_string(count) + "," + std::to_string(freq) + "\n";
    return out;
}

std::string structure_csv(const StructureReport& r) {
    std::string out = "table,key,value\n";
    const auto scalar = [&](const char* name, const std::string& value) {
        out += std::string(name) + ",," + value + "\n";
    };
    scalar("q", std::to_string(r.q));
    scalar("mode", r.mode);
    scalar("seed", std::to_string(r.seed));
    scalar("surface_points", std::to_string(r.surface_points));
    scalar("lines_checked", std::to_string(r.lines_checked));
    scalar("planes_checked", std::to_string(r.planes_checked));
    scalar("pairs_checked", std::to_string(r.pairs_checked));
    const auto table = [&](const char* name, const auto& m) {
        for (const auto& [key, value] : m) {
            std::string k;
            if constexpr (std::is_same_v<std::decay_t<decltype(key)>, std::string>)
                k = key;
            else
                k = std::to_string(key);
            out += std::string(name) + "," + k + "," + std::to_string(value) + "\n";
        }
    };
    table("line_census", r.line_census);
    table("line_point_spectrum", r.line_point_spectrum);
    table("plane_census", r.plane_census);
    table("plane_point_spectrum", r.plane_point_spectrum);
    for (const auto& [cls, profile] : r.book_profiles) {
        out += "book_profile_tangent," + cls + "," + std::to_string(profile[0]) + "\n";
        out += "book_profile_non_tangent," + cls + "," + std::to_string(profile[1]) + "\n";
    }
    scalar("violations", std::to_string(r.violations.size()));
    return out;
}

struct Options {
    std::uint64_t q = 0;
    unsigned d = 3;
    std::uint64_t seed = 0;
    std::uint64_t samples = 0; // 0 means the subcommand default
    unsigned jobs = 1;
    std::uint64_t max_q = 8;
    bool strict = false;
    std::string format = "json";
    std::string out_path;
    std::string form_path;
    std::uint64_t index = 0;
    bool have_index = false;
    std::string points;
    std::string dual;
    std::optional<std::uint64_t> construct_seed;
};

Field checked_field(const Options& opt) {
    if (opt.q > opt.max_q)
        throw std::invalid_argument("q = " + std::to_string(opt.q) +
                                    " exceeds the ceiling " + std::to_string(opt.max_q) +
                                    "; raise --max-q to allow larger fields");
    return Field(static_cast<std::uint32_t>(opt.q));
}

void require_json_format(const Options& opt) {
    if (opt.format != "json")
        throw std::invalid_argument("--format csv applies to verify reports only");
}

ordered_json header(const Field& f) {
    return {{"modulus_table", Field::modulus_table_version()}, {"q", f.q()}};
}

int run_count(const Options& opt) {
    require_json_format(opt);
    const Field f = checked_field(opt);
    const Form4 form = form_from_json(f, load_form_file(opt.form_path));
    const HermitianSurface s = canonical_surface(f);
    ordered_json j = header(f);
    j["degree"] = form.degree();
    j["count"] = intersection_count(form, s);
    emit(json_text(j), opt.out_path);
    return 0;
}

int run_classify_line(const Options& opt) {
    require_json_format(opt);
    const Field f = checked_field(opt);
    const Line l = parse_line_arg(f, opt.have_index, opt.index, opt.points);
    const HermitianSurface s = canonical_surface(f);
    std::uint64_t on_surface = 0;
    for (const Point& p : points_on_line(l))
        if (s.contains(p)) ++on_surface;
    ordered_json j = header(f);
    j["line"] = to_json(l);
    j["class"] = to_string(s.classify_line(l));
    j["surface_points"] = on_surface;
    emit(json_text(j), opt.out_path);
    return 0;
}

int run_classify_plane(const Options& opt) {
    require_json_format(opt);
    const Field f = checked_field(opt);
    Plane h{};
    if (opt.have_index) {
        if (opt.index >= plane_count(f))
            throw std::invalid_argument("plane index out of range");
        h = plane_at(f, opt.index);
    } else {
        h = make_plane(f, parse_vec(f, opt.dual));
    }
    const HermitianSurface s = canonical_surface(f);
    std::uint64_t section = 0;
    for (const std::uint64_t pi : s.point_indices())
        if (point_on_plane(point_at(f, pi), h)) ++section;
    ordered_json j = header(f);
    j["plane"] = to_json(h);
    j["class"] = to_string(s.classify_plane(h));
    j["section_points"] = section;
    emit(json_text(j), opt.out_path);
    return 0;
}

int run_book(const Options& opt) {
    require_json_format(opt);
    const Field f = checked_field(opt);
    const Line l = parse_line_arg(f, opt.have_index, opt.index, opt.points);
    const HermitianSurface s = canonical_surface(f);
    const BookProfile profile = s.book_profile(l);
    ordered_json planes = ordered_json::array();
    for (const Plane& h : book_of_planes(l))
        planes.push_back(
            {{"plane", to_json(h)}, {"class", to_string(s.classify_plane(h))}});
    ordered_json j = header(f);
    j["axis"] = to_json(l);
    j["axis_class"] = to_string(s.classify_line(l));
    j["profile"] = ordered_json::array({profile.tangent, profile.non_tangent});
    j["planes"] = planes;
    emit(json_text(j), opt.out_path);
    return 0;
}

int run_construct(const std::string& which, const Options& opt) {
    require_json_format(opt);
    const Field f = checked_field(opt);
    const HermitianSurface s = canonical_surface(f);
    const Configuration c = which == "sorensen" ? sorensen(s, opt.d, opt.construct_seed)
                            : which == "second" ? second_best(s, opt.construct_seed)
                                                : generator_book(s, opt.d, opt.construct_seed);
    emit(json_text(to_json(c)), opt.out_path);
    return 0;
}

int run_nf(const Options& opt) {
    require_json_format(opt);
    const Field f = checked_field(opt);
    const Form4 cubic = form_from_json(f, load_form_file(opt.form_path));
    const Line axis = parse_line_arg(f, opt.have_index, opt.index, opt.points);
    const CubicNF nf = normal_form(cubic, axis);
    const Form2 invariant = degeneracy_invariant(nf);
    ordered_json j = header(f);
    j["normal_form"] = to_json(nf);
    j["invariant"] = to_json(invariant);
    j["invariant_zero"] = invariant.is_zero();
    j["t_ell"] = to_json(t_ell(cubic, axis));
    emit(json_text(j), opt.out_path);
    return 0;
}

int run_verify(const std::string& which, const Options& opt) {
    const Field f = checked_field(opt);
    const HermitianSurface s = canonical_surface(f);
    if (which == "structure") {
        const std::uint64_t samples = opt.samples == 0 ? 2000 : opt.samples;
        const StructureReport r = structure_audit(s, opt.seed, samples);
        emit(opt.format == "csv" ? structure_csv(r) : json_text(to_json(r)),
             opt.out_path);
        return r.violations.empty() ? 0 : 1;
    }
    SurveyReport r; // the surveys throw std::runtime_error on violations
    if (which == "quadrics") {
        r = exhaustive_quadrics(s, opt.jobs);
    } else if (which == "triples") {
        r = elx_survey(s, opt.jobs);
    } else {
        SamplerSpec spec;
        spec.seed = opt.seed;
        spec.samples = opt.samples == 0 ? 1000 : opt.samples;
        spec.strict_conjecture = opt.strict;
        r = cubic_survey(s, spec, opt.jobs);
    }
    emit(opt.format == "csv" ? survey_csv(r) : json_text(to_json(r)), opt.out_path);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    Options opt;
    CLI::App app{"exact geometry of the Hermitian surface in PG(3, q^2)"};
    app.require_subcommand(1);
    app.add_option("--max-q", opt.max_q, "largest base field size to accept")
        ->capture_default_str();
    app.add_option("--format", opt.format, "output format for reports")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    app.add_option("--out", opt.out_path, "write the report to a file instead of stdout");

    const auto add_q = [&](CLI::App* sub) {
        sub->add_option("--q", opt.q, "base field size (the surface lives over GF(q^2))")
            ->required();
        sub->fallthrough();
    };
    const auto add_line_arg = [&](CLI::App* sub) {
        auto* idx = sub->add_option("--index", opt.index, "line index in enumeration order");
        sub->add_option("--points", opt.points,
                        "two spanning points \"a,b,c,d;e,f,g,h\" in field-element syntax")
            ->excludes(idx);
        return idx;
    };

    CLI::App* count = app.add_subcommand("count", "intersection count of a form document");
    add_q(count);
    count->add_option("--form", opt.form_path, "JSON form file")
        ->required()
        ->check(CLI::ExistingFile);

    CLI::App* cline = app.add_subcommand("classify-line", "line class against the surface");
    add_q(cline);
    CLI::Option* cline_idx = add_line_arg(cline);

    CLI::App* cplane = app.add_subcommand("classify-plane", "plane class against the surface");
    add_q(cplane);
    auto* cplane_idx =
        cplane->add_option("--index", opt.index, "plane index in enumeration order");
    cplane->add_option("--dual", opt.dual, "dual coordinates \"a,b,c,d\"")
        ->excludes(cplane_idx);

    CLI::App* book = app.add_subcommand("book", "classify the pencil of planes on a line");
    add_q(book);
    CLI::Option* book_idx = add_line_arg(book);

    CLI::App* construct =
        app.add_subcommand("construct", "build a named extremal plane arrangement");
    construct->require_subcommand(1);
    construct->fallthrough();
    std::uint64_t seed_val = 0;
    std::vector<CLI::Option*> seed_opts;
    for (const char* name : {"sorensen", "second", "generator-book"}) {
        CLI::App* sub = construct->add_subcommand(name);
        add_q(sub);
        if (std::string(name) != "second")
            sub->add_option("--d", opt.d, "number of planes")->capture_default_str();
        seed_opts.push_back(sub->add_option("--seed", seed_val, "randomize the picks"));
    }

    CLI::App* nf = app.add_subcommand("nf", "normal form, invariant and section scan of a "
                                            "cubic along a line it contains");
    add_q(nf);
    nf->add_option("--form", opt.form_path, "JSON form file")
        ->required()
        ->check(CLI::ExistingFile);
    CLI::Option* nf_idx = add_line_arg(nf);

    CLI::App* verify = app.add_subcommand("verify", "run an assertion-bearing survey");
    verify->require_subcommand(1);
    verify->fallthrough();
    for (const char* name : {"structure", "quadrics", "triples", "cubics"}) {
        CLI::App* sub = verify->add_subcommand(name);
        add_q(sub);
        sub->add_option("--seed", opt.seed, "sampling seed")->capture_default_str();
        sub->add_option("--samples", opt.samples, "sample count (subcommand default if 0)");
        sub->add_option("--jobs", opt.jobs, "worker threads")->check(CLI::PositiveNumber);
        if (std::string(name) == "cubics")
            sub->add_flag("--strict-conjecture", opt.strict,
                          "assert the count dichotomy even for q < 8");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        for (std::size_t i = 0; i < seed_opts.size(); ++i)
            if (seed_opts[i]->count() > 0) opt.construct_seed = seed_val;
        if (app.got_subcommand(count)) return run_count(opt);
        if (app.got_subcommand(cline)) {
            opt.have_index = cline_idx->count() > 0;
            if (!opt.have_index && opt.points.empty())
                throw std::invalid_argument("classify-line needs --index or --points");
            return run_classify_line(opt);
        }
        if (app.got_subcommand(cplane)) {
            opt.have_index = cplane_idx->count() > 0;
            if (!opt.have_index && opt.dual.empty())
                throw std::invalid_argument("classify-plane needs --index or --dual");
            return run_classify_plane(opt);
        }
        if (app.got_subcommand(book)) {
            opt.have_index = book_idx->count() > 0;
            if (!opt.have_index && opt.points.empty())
                throw std::invalid_argument("book needs --index or --points");
            return run_book(opt);
        }
        if (app.got_subcommand(construct))
            return run_construct(construct->get_subcommands().front()->get_name(), opt);
        if (app.got_subcommand(nf)) {
            opt.have_index = nf_idx->count() > 0;
            if (!opt.have_index && opt.points.empty())
                throw std::invalid_argument("nf needs --index or --points");
            return run_nf(opt);
        }
        if (app.got_subcommand(verify))
            return run_verify(verify->get_subcommands().front()->get_name(), opt);
        throw std::logic_error("unreachable: subcommand required");
    } catch (const ordered_json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        // assertion failures from the surveys and internal consistency checks
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
