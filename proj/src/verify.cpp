#include "hermgeo/verify.hpp"

#include <algorithm>
#include <exception>
#include <functional>
#include <random>
#include <stdexcept>
#include <thread>
#include <utility>

namespace hermgeo {

namespace {

constexpr std::size_t violation_cap = 64;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Runs fn(worker) on the requested number of threads, inline when the count
// is at most one, and rethrows the first worker exception.
void run_workers(unsigned jobs, const std::function<void(unsigned)>& fn) {
    if (jobs <= 1) {
        fn(0);
        return;
    }
    std::vector<std::exception_ptr> errs(jobs);
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (unsigned w = 0; w < jobs; ++w)
        pool.emplace_back([&errs, &fn, w] {
            try {
                fn(w);
            } catch (...) {
                errs[w] = std::current_exception();
            }
        });
    for (auto& t : pool) t.join();
    for (const auto& e : errs)
        if (e) std::rethrow_exception(e);
}

// Per-worker accumulator.  Witnesses and violations carry the sample key
// they belong to, so merging sorts by key and the worker count never shows
// in the output.  Each worker stores at most the global caps; the keys it
// would contribute to a merged prefix are always among its own first ones.
struct SurveyShard {
    std::map<std::uint64_t, std::uint64_t> histogram;
    bool has_max = false;
    std::uint64_t max_count = 0;
    std::vector<std::pair<std::uint64_t, Form4>> witnesses;
    std::vector<std::pair<std::uint64_t, std::string>> violations;
    std::uint64_t violations_total = 0;

    void record(std::uint64_t key, std::uint64_t count, const std::function<Form4()>& make) {
        ++histogram[count];
        if (!has_max || count > max_count) {
            has_max = true;
            max_count = count;
            witnesses.clear();
        }
        if (count == max_count && witnesses.size() < survey_witness_cap)
            witnesses.emplace_back(key, make());
    }

    void violate(std::uint64_t key, std::string msg) {
        ++violations_total;
        if (violations.size() < violation_cap) violations.emplace_back(key, std::move(msg));
    }
};

// Capped violation collector for the merged, survey-level view.
struct ViolationLog {
    std::vector<std::string> items;
    std::uint64_t total = 0;

    void add(std::string msg) {
        ++total;
        if (items.size() < violation_cap) items.push_back(std::move(msg));
    }
};

void merge_shards(std::vector<SurveyShard>& shards, SurveyReport& r, ViolationLog& log) {
    for (const SurveyShard& sh : shards)
        for (const auto& [count, freq] : sh.histogram) r.histogram[count] += freq;
    bool any = false;
    for (const SurveyShard& sh : shards)
        if (sh.has_max && (!any || sh.max_count > r.max_count)) {
            any = true;
            r.max_count = sh.max_count;
        }

    std::vector<std::pair<std::uint64_t, Form4>> wits;
    for (SurveyShard& sh : shards)
        if (sh.has_max && sh.max_count == r.max_count)
            for (auto& w : sh.witnesses) wits.push_back(std::move(w));
    std::sort(wits.begin(), wits.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    if (wits.size() > survey_witness_cap)
        wits.erase(wits.begin() + survey_witness_cap, wits.end());
    for (auto& [key, form] : wits) r.witnesses.push_back(std::move(form));

    std::vector<std::pair<std::uint64_t, std::string>> tagged;
    std::uint64_t untracked = 0;
    for (SurveyShard& sh : shards) {
        untracked += sh.violations_total - sh.violations.size();
        for (auto& v : sh.violations) tagged.push_back(std::move(v));
    }
    std::sort(tagged.begin(), tagged.end());
    for (auto& [key, msg] : tagged) log.add(std::move(msg));
    log.total += untracked;
}

[[noreturn]] void fail_survey(const char* op, SurveyReport& r, ViolationLog& log) {
    r.violations = std::move(log.items);
    throw std::runtime_error(std::string(op) + ": " + std::to_string(log.total) +
                             " violation(s); first: " + r.violations.front());
}

std::uint64_t histogram_mass(const std::map<std::uint64_t, std::uint64_t>& hist) {
    std::uint64_t m = 0;
    for (const auto& [count, freq] : hist) m += freq;
    return m;
}

// Coordinates of the surface points, cached once for the scan loops.
std::vector<Vec4> surface_coords(const HermitianSurface& s) {
    std::vector<Vec4> out;
    out.reserve(s.num_points());
    for (const std::uint64_t i : s.point_indices()) out.push_back(point_at(s.field(), i).c);
    return out;
}

felem dot(const Field& f, const Vec4& a, const Vec4& b) {
    felem acc = 0;
    for (int j = 0; j < 4; ++j) acc = f.add(acc, f.mul(a[j], b[j]));
    return acc;
}

} // namespace

CubicProfile profile_cubic(const Form4& cubic, const HermitianSurface& s) {
    if (cubic.is_zero()) throw std::invalid_argument("profile_cubic: zero form");
    if (cubic.degree() != 3)
        throw std::invalid_argument("profile_cubic: form of degree " +
                                    std::to_string(cubic.degree()) + ", expected 3");
    if (!s.nondegenerate()) throw std::invalid_argument("profile_cubic: degenerate surface");
    const Field& f = cubic.field();
    if (f.order() != s.field().order())
        throw std::invalid_argument("profile_cubic: field mismatch");

    CubicProfile out;
    out.intersection_count = intersection_count(cubic, s);

    for (const auto& [h, mult] : linear_factors(cubic)) {
        out.planes.push_back(h);
        if (s.classify_plane(h) != PlaneClass::Tangent) out.all_linear_factors_tangent = false;
    }
    out.reducible = !out.planes.empty();
    out.contains_plane = out.reducible;

    // A nonzero binary cubic has at most three roots, so a generator whose
    // four sampled points all vanish is contained outright.
    const felem t = f.gen();
    const auto contains_line = [&](const Line& l) {
        Vec4 p2{}, p3{};
        for (int j = 0; j < 4; ++j) {
            p2[j] = f.add(l.rows[0][j], l.rows[1][j]);
            p3[j] = f.add(l.rows[0][j], f.mul(t, l.rows[1][j]));
        }
        return cubic.evaluate(l.rows[0]) == 0 && cubic.evaluate(l.rows[1]) == 0 &&
               cubic.evaluate(p2) == 0 && cubic.evaluate(p3) == 0;
    };
    for (const Line& g : s.generators())
        if (contains_line(g)) out.generators_contained.push_back(g);

    Line first{}, second{};
    const auto& gens = out.generators_contained;
    for (std::size_t i = 0; i < gens.size() && !out.has_skew_generator_pair; ++i)
        for (std::size_t j = i + 1; j < gens.size(); ++j)
            if (!lines_meet(gens[i], gens[j])) {
                out.has_skew_generator_pair = true;
                first = gens[i];
                second = gens[j];
                break;
            }

    out.double_lines = double_lines(cubic);

    if (out.has_skew_generator_pair) {
        const Form4 moved = pullback(cubic, adapted_coords(first, second));
        const CubicNF nf = normal_form(moved, make_line(f, {1, 0, 0, 0}, {0, 1, 0, 0}));
        out.invariant_status = degeneracy_invariant(nf).is_zero() ? InvariantStatus::Zero
                                                                  : InvariantStatus::Nonzero;
    }
    return out;
}

std::vector<BoundCheck> assert_conditional_bounds(const CubicProfile& profile,
                                                  std::uint64_t q, unsigned d) {
    std::vector<BoundCheck> out;
    if (d > q) return out;
    const std::uint64_t n = profile.intersection_count;
    const std::uint64_t q2 = q * q, q3 = q * q * q;
    const auto push = [&](const char* lemma, std::uint64_t bound, std::string detail = "") {
        out.push_back({lemma, bound, n <= bound, std::move(detail)});
    };

    if (q > 2 && profile.generators_contained.empty()) push("nogen", d * (q3 + q + 1));

    if (!profile.generators_contained.empty() && !profile.has_skew_generator_pair &&
        !profile.contains_plane)
        push("noskew", (d - 1) * q3 + d * q2 + 1);

    if (profile.contains_plane && !profile.all_linear_factors_tangent)
        push("nontan", d == 2 ? 2 * q3 + q2 + 1 : d * q3 + (d - 1) * q2 - (d - 2) * q + 2);

    bool two_planes_share_generator = false;
    for (const Line& g : profile.generators_contained) {
        unsigned through = 0;
        for (const Plane& h : profile.planes)
            if (line_in_plane(g, h)) ++through;
        if (through >= 2) {
            two_planes_share_generator = true;
            break;
        }
    }
    if (two_planes_share_generator) push("gentang", d * q3 + (d - 1) * q2 + 1);

    if (d == 3 && q >= 3 && profile.reducible && profile.all_linear_factors_tangent) {
        const std::uint64_t attained = 3 * (q3 + q2 - q) + q + 1;
        if (n == attained) {
            out.push_back({"reducible", attained, true, "attained the extremal value"});
        } else {
            const std::uint64_t split = 3 * q3 + 2 * q2 + 2;
            const std::uint64_t triple = 3 * (q3 + q2 - q) + 1;
            push("reducible", std::max(split, triple),
                 split >= triple ? "bounded by 3q^3+2q^2+2" : "bounded by 3(q^3+q^2-q)+1");
        }
    }

    if (d == 3 && !profile.reducible && !profile.double_lines.empty())
        push("doubleline", 3 * q3 + 2 * q2 + 1);

    return out;
}

SurveyReport exhaustive_quadrics(const HermitianSurface& s, unsigned jobs) {
    if (!s.nondegenerate())
        throw std::invalid_argument("exhaustive_quadrics: degenerate surface");
    const Field& f = s.field();
    const std::uint64_t q = f.q();
    if (q != 2)
        throw std::invalid_argument("exhaustive_quadrics: the full spectrum scan is q = 2 only");

    const auto monos = monomial_exponents<4>(2);
    const std::size_t nm = monos.size(); // 10
    const auto coords = surface_coords(s);
    const std::size_t npts = coords.size();

    // monomial values at every surface point
    std::vector<std::vector<felem>> table(npts, std::vector<felem>(nm));
    for (std::size_t i = 0; i < npts; ++i)
        for (std::size_t m = 0; m < nm; ++m) {
            felem v = 1;
            for (int j = 0; j < 4; ++j)
                for (unsigned e = 0; e < monos[m][j]; ++e) v = f.mul(v, coords[i][j]);
            table[i][m] = v;
        }

    // canonical representatives: first nonzero coefficient scaled to one,
    // enumerated by lead position, trailing coefficients counting up
    const std::uint64_t ord = f.order();
    std::vector<std::uint64_t> block(nm);
    std::uint64_t total = 0;
    for (std::size_t j = 0; j < nm; ++j) {
        std::uint64_t pw = 1;
        for (std::size_t k = j + 1; k < nm; ++k) pw *= ord;
        block[j] = pw;
        total += pw;
    }
    const auto coeffs_at = [&](std::uint64_t idx) {
        std::vector<felem> c(nm, 0);
        for (std::size_t j = 0; j < nm; ++j) {
            if (idx < block[j]) {
                c[j] = 1;
                for (std::size_t k = nm; k-- > j + 1;) {
                    c[k] = static_cast<felem>(idx % ord);
                    idx /= ord;
                }
                return c;
            }
            idx -= block[j];
        }
        throw std::logic_error("exhaustive_quadrics: index out of range");
    };
    const auto form_at = [&](std::uint64_t idx) {
        const auto c = coeffs_at(idx);
        Form4 g(f, 2);
        for (std::size_t m = 0; m < nm; ++m)
            if (c[m] != 0) g.set_coeff(monos[m], c[m]);
        return g;
    };

    struct Shard {
        std::map<std::uint64_t, std::uint64_t> histogram;
        std::uint64_t max_count = 0;
        std::vector<std::uint64_t> max_indices;
    };
    const unsigned nw = jobs == 0 ? 1 : jobs;
    std::vector<Shard> shards(nw);
    run_workers(nw, [&](unsigned w) {
        Shard& sh = shards[w];
        for (std::uint64_t idx = w; idx < total; idx += nw) {
            const auto c = coeffs_at(idx);
            std::uint64_t count = 0;
            for (std::size_t i = 0; i < npts; ++i) {
                felem acc = 0;
                for (std::size_t m = 0; m < nm; ++m)
                    if (c[m] != 0) acc = f.add(acc, f.mul(c[m], table[i][m]));
                if (acc == 0) ++count;
            }
            ++sh.histogram[count];
            if (count > sh.max_count) {
                sh.max_count = count;
                sh.max_indices.clear();
            }
            if (count == sh.max_count) sh.max_indices.push_back(idx);
        }
    });

    SurveyReport r;
    r.survey = "quadrics";
    r.q = q;
    r.d = 2;
    r.mode = "exhaustive";
    r.sample_size = total;
    for (const Shard& sh : shards) {
        for (const auto& [count, freq] : sh.histogram) r.histogram[count] += freq;
        r.max_count = std::max(r.max_count, sh.max_count);
    }
    std::vector<std::uint64_t> maximizers;
    for (const Shard& sh : shards)
        if (sh.max_count == r.max_count)
            maximizers.insert(maximizers.end(), sh.max_indices.begin(), sh.max_indices.end());
    std::sort(maximizers.begin(), maximizers.end());

    ViolationLog log;
    if (histogram_mass(r.histogram) != total)
        log.add("histogram mass " + std::to_string(histogram_mass(r.histogram)) +
                " does not cover all " + std::to_string(total) + " quadrics");
    const std::uint64_t top = 2 * q * q * q + 2 * q * q - q + 1;
    const std::uint64_t runner_up = 2 * q * q * q + q * q + 1;
    if (r.max_count != top)
        log.add("maximum " + std::to_string(r.max_count) + ", expected " + std::to_string(top));
    for (const auto& [count, freq] : r.histogram)
        if (count > runner_up && count != top)
            log.add("count " + std::to_string(count) + " lies in the excluded band (" +
                    std::to_string(runner_up) + ", " + std::to_string(top) + ")");
    for (const std::uint64_t idx : maximizers) {
        const Form4 g = form_at(idx);
        const auto fac = linear_factors(g);
        if (fac.size() != 2 || fac[0].second != 1 || fac[1].second != 1)
            log.add("maximizer " + std::to_string(idx) +
                    " is not a product of two distinct planes");
        else if (s.classify_plane(fac[0].first) != PlaneClass::Tangent ||
                 s.classify_plane(fac[1].first) != PlaneClass::Tangent)
            log.add("maximizer " + std::to_string(idx) + " has a non-tangent factor");
        else if (s.classify_line(meet_planes(fac[0].first, fac[1].first)) != LineClass::Secant)
            log.add("maximizer " + std::to_string(idx) + " factors do not meet in a secant");
    }
    if (log.total > 0) fail_survey("exhaustive_quadrics", r, log);

    for (std::size_t i = 0; i < maximizers.size() && i < survey_witness_cap; ++i)
        r.witnesses.push_back(form_at(maximizers[i]));
    r.notes.push_back(std::to_string(maximizers.size()) + " quadrics attain the maximum");
    return r;
}

SurveyReport cubic_survey(const HermitianSurface& s, const SamplerSpec& spec, unsigned jobs) {
    if (!s.nondegenerate()) throw std::invalid_argument("cubic_survey: degenerate surface");
    const Field& f = s.field();
    const std::uint64_t q = f.q();
    if (q < 3) throw std::invalid_argument("cubic_survey: needs q >= 3 for degree 3");
    if (spec.samples < 15)
        throw std::invalid_argument("cubic_survey: at least 15 samples required");

    const std::uint64_t total = spec.samples;
    const std::uint64_t triples_end = std::max<std::uint64_t>(3, total / 5);
    const std::uint64_t products_end = triples_end + total / 5;
    const std::uint64_t floor_value = 3 * (q * q * q + q * q - q) + 1;
    const std::uint64_t top_value = floor_value + q;
    const bool assert_dichotomy = q >= 8 || spec.strict_conjecture;
    const std::uint64_t nplanes = plane_count(f);
    const std::uint64_t nlines = line_count(f);

    s.generators(); // build the shared cache before the workers race for it

    const unsigned nw = jobs == 0 ? 1 : jobs;
    std::vector<SurveyShard> shards(nw);
    run_workers(nw, [&](unsigned w) {
        SurveyShard& sh = shards[w];
        for (std::uint64_t i = w; i < total; i += nw) {
            std::mt19937_64 rng(splitmix64(spec.seed ^ splitmix64(i)));
            Form4 g(f, 3);
            if (i == 0) {
                g = sorensen(s, 3).form;
            } else if (i == 1) {
                g = second_best(s).form;
            } else if (i == 2) {
                g = generator_book(s, 3).form;
            } else if (i < triples_end) {
                std::array<Plane, 3> hs;
                if (i % 2 == 1) {
                    // three planes from the book of a random line
                    const auto book = book_of_planes(line_at(f, uniform_below(rng, nlines)));
                    std::vector<std::uint64_t> ranks(book.size());
                    for (std::size_t k = 0; k < ranks.size(); ++k) ranks[k] = k;
                    for (int k = 0; k < 3; ++k)
                        std::swap(ranks[k], ranks[k + uniform_below(rng, ranks.size() - k)]);
                    for (int k = 0; k < 3; ++k) hs[k] = book[ranks[k]];
                } else {
                    // three planes drawn independently
                    std::array<std::uint64_t, 3> idx{};
                    for (int k = 0; k < 3; ++k) {
                        bool fresh = false;
                        while (!fresh) {
                            idx[k] = uniform_below(rng, nplanes);
                            fresh = true;
                            for (int m = 0; m < k; ++m)
                                if (idx[m] == idx[k]) fresh = false;
                        }
                        hs[k] = plane_at(f, idx[k]);
                    }
                }
                g = plane_form(hs[0]) * plane_form(hs[1]) * plane_form(hs[2]);
            } else if (i < products_end) {
                const Plane h = plane_at(f, uniform_below(rng, nplanes));
                const Form4 quad = random_form(f, 2, rng);
                g = plane_form(h) * quad;
                if (intersection_count(g, s) < intersection_count(quad, s))
                    sh.violate(i, "sample " + std::to_string(i) +
                                      ": a plane factor decreased the count");
            } else {
                do {
                    g = random_form(f, 3, rng);
                } while (has_linear_factor(g));
            }

            const CubicProfile prof = profile_cubic(g, s);
            const std::uint64_t count = prof.intersection_count;
            sh.record(i, count, [&] { return g; });

            for (const BoundCheck& b : assert_conditional_bounds(prof, q, 3))
                if (!b.pass)
                    sh.violate(i, "sample " + std::to_string(i) + ": lemma " + b.lemma +
                                      ": count " + std::to_string(count) + " exceeds " +
                                      std::to_string(b.bound));
            if (i == 0 && count != top_value)
                sh.violate(i, "sample 0: the structured triple counts " + std::to_string(count) +
                                  " instead of " + std::to_string(top_value));
            if (assert_dichotomy) {
                if (count > top_value)
                    sh.violate(i, "sample " + std::to_string(i) + ": count " +
                                      std::to_string(count) + " exceeds " +
                                      std::to_string(top_value));
                else if (count > floor_value && count < top_value)
                    sh.violate(i, "sample " + std::to_string(i) + ": count " +
                                      std::to_string(count) + " lies in the open gap (" +
                                      std::to_string(floor_value) + ", " +
                                      std::to_string(top_value) + ")");
            }
        }
    });

    SurveyReport r;
    r.survey = "cubics";
    r.q = q;
    r.d = 3;
    r.mode = "random";
    r.seed = spec.seed;
    r.sample_size = total;
    ViolationLog log;
    merge_shards(shards, r, log);
    if (histogram_mass(r.histogram) != total)
        log.add("histogram mass " + std::to_string(histogram_mass(r.histogram)) +
                " does not cover all " + std::to_string(total) + " samples");
    if (log.total > 0) fail_survey("cubic_survey", r, log);

    const auto top_it = r.histogram.find(top_value);
    r.notes.push_back("extremal value " + std::to_string(top_value) + " attained " +
                      std::to_string(top_it == r.histogram.end() ? 0 : top_it->second) +
                      " time(s)");
    if (assert_dichotomy) {
        r.notes.push_back("dichotomy asserted: no count in (" + std::to_string(floor_value) +
                          ", " + std::to_string(top_value) + ") and none above " +
                          std::to_string(top_value));
    } else {
        std::uint64_t in_gap = 0, above = 0;
        for (const auto& [count, freq] : r.histogram) {
            if (count > floor_value && count < top_value) in_gap += freq;
            if (count > top_value) above += freq;
        }
        r.notes.push_back("dichotomy reported, not asserted: max " +
                          std::to_string(r.max_count) + ", counts in (" +
                          std::to_string(floor_value) + ", " + std::to_string(top_value) +
                          "): " + std::to_string(in_gap) + ", above: " + std::to_string(above));
    }
    return r;
}

SurveyReport elx_survey(const HermitianSurface& s, unsigned jobs) {
    if (!s.nondegenerate()) throw std::invalid_argument("elx_survey: degenerate surface");
    const Field& f = s.field();
    const std::uint64_t q = f.q();
    const std::uint64_t per_book = f.order() + 1;
    const std::uint64_t triples_per_line = per_book * (per_book - 1) * (per_book - 2) / 6;
    const std::uint64_t nlines = line_count(f);

    const std::uint64_t secant_value = 3 * (q * q * q + q * q - q) + q + 1;
    const std::uint64_t generator_value = 3 * q * q * q + q * q + 1;
    const std::uint64_t forbidden = 3 * (q * q * q + q * q - q) + 1;
    const std::uint64_t mixed_cap = 3 * q * q * q + 2 * q * q + 1;

    const auto coords = surface_coords(s);
    const std::size_t npts = coords.size();
    const std::size_t words = (npts + 63) / 64;

    struct Shard : SurveyShard {
        std::uint64_t secant_triples = 0;
        std::uint64_t generator_triples = 0;
    };
    const unsigned nw = jobs == 0 ? 1 : jobs;
    std::vector<Shard> shards(nw);
    run_workers(nw, [&](unsigned w) {
        Shard& sh = shards[w];
        std::vector<std::vector<std::uint64_t>> masks(per_book,
                                                      std::vector<std::uint64_t>(words));
        std::vector<bool> tangent(per_book);
        for (std::uint64_t li = w; li < nlines; li += nw) {
            const Line l = line_at(f, li);
            const LineClass axis = s.classify_line(l);
            const auto book = book_of_planes(l);
            for (std::size_t b = 0; b < per_book; ++b) {
                tangent[b] = s.classify_plane(book[b]) == PlaneClass::Tangent;
                std::fill(masks[b].begin(), masks[b].end(), 0);
                for (std::size_t i = 0; i < npts; ++i)
                    if (dot(f, book[b].dual, coords[i]) == 0)
                        masks[b][i >> 6] |= std::uint64_t{1} << (i & 63);
            }
            std::uint64_t rank = 0;
            for (std::size_t i = 0; i < per_book; ++i)
                for (std::size_t j = i + 1; j < per_book; ++j)
                    for (std::size_t k = j + 1; k < per_book; ++k, ++rank) {
                        std::uint64_t count = 0;
                        for (std::size_t wd = 0; wd < words; ++wd)
                            count += static_cast<std::uint64_t>(__builtin_popcountll(
                                masks[i][wd] | masks[j][wd] | masks[k][wd]));
                        const std::uint64_t key = li * triples_per_line + rank;
                        sh.record(key, count, [&] {
                            return plane_form(book[i]) * plane_form(book[j]) *
                                   plane_form(book[k]);
                        });
                        const auto where = [&] {
                            return "line " + std::to_string(li) + " triple (" +
                                   std::to_string(i) + "," + std::to_string(j) + "," +
                                   std::to_string(k) + ")";
                        };
                        if (count == forbidden)
                            sh.violate(key, where() + " attains the excluded value " +
                                                std::to_string(forbidden));
                        if (axis == LineClass::Generator) {
                            ++sh.generator_triples;
                            if (count != generator_value)
                                sh.violate(key, where() + " counts " + std::to_string(count) +
                                                    " instead of " +
                                                    std::to_string(generator_value));
                        } else if (axis == LineClass::Secant && tangent[i] && tangent[j] &&
                                   tangent[k]) {
                            ++sh.secant_triples;
                            if (count != secant_value)
                                sh.violate(key, where() + " counts " + std::to_string(count) +
                                                    " instead of " +
                                                    std::to_string(secant_value));
                        } else if (count > mixed_cap) {
                            sh.violate(key, where() + " counts " + std::to_string(count) +
                                                " beyond the mixed cap " +
                                                std::to_string(mixed_cap));
                        }
                    }
        }
    });

    SurveyReport r;
    r.survey = "triples";
    r.q = q;
    r.d = 3;
    r.mode = "exhaustive";
    r.sample_size = nlines * triples_per_line;
    ViolationLog log;
    std::vector<SurveyShard> base(shards.begin(), shards.end());
    merge_shards(base, r, log);
    std::uint64_t secant_triples = 0, generator_triples = 0;
    for (const Shard& sh : shards) {
        secant_triples += sh.secant_triples;
        generator_triples += sh.generator_triples;
    }
    if (histogram_mass(r.histogram) != r.sample_size)
        log.add("histogram mass " + std::to_string(histogram_mass(r.histogram)) +
                " does not cover all " + std::to_string(r.sample_size) + " triples");
    if (secant_triples == 0) log.add("no all-tangent triple through a secant was seen");
    if (generator_triples == 0) log.add("no triple through a generator was seen");
    if (log.total > 0) fail_survey("elx_survey", r, log);

    r.notes.push_back(std::to_string(secant_triples) + " all-tangent secant triples at " +
                      std::to_string(secant_value) + ", " + std::to_string(generator_triples) +
                      " generator triples at " + std::to_string(generator_value));
    return r;
}

StructureReport structure_audit(const HermitianSurface& s, std::uint64_t seed,
                                std::uint64_t samples) {
    const Field& f = s.field();
    const std::uint64_t q = f.q();
    const std::uint64_t s2 = f.order();

    StructureReport r;
    r.q = q;
    r.seed = seed;
    const bool full = q <= 3;
    r.mode = full ? "full" : "sampled";

    std::uint64_t vtotal = 0;
    const auto viol = [&](std::string msg) {
        ++vtotal;
        if (r.violations.size() < violation_cap) r.violations.push_back(std::move(msg));
    };

    r.surface_points = s.num_points();
    const std::uint64_t expected_points = (q * q * q + 1) * (q * q + 1);
    if (r.surface_points != expected_points)
        viol("surface has " + std::to_string(r.surface_points) + " points, expected " +
             std::to_string(expected_points));

    const auto coords = surface_coords(s);

    const auto check_line = [&](std::uint64_t li) {
        const Line l = line_at(f, li);
        const LineClass cls = s.classify_line(l);
        ++r.line_census[to_string(cls)];
        const auto tag = [&] { return std::string(to_string(cls)) + " line " + std::to_string(li); };

        std::vector<Point> on_surface;
        for (const Point& p : points_on_line(l))
            if (s.contains(p)) on_surface.push_back(p);
        ++r.line_point_spectrum[on_surface.size()];
        const std::uint64_t expect_pts =
            cls == LineClass::Tangent ? 1 : cls == LineClass::Secant ? q + 1 : s2 + 1;
        if (on_surface.size() != expect_pts)
            viol(tag() + " meets the surface in " + std::to_string(on_surface.size()) +
                 " points, expected " + std::to_string(expect_pts));

        std::uint64_t tangent_planes = 0, other_planes = 0;
        for (const Plane& h : book_of_planes(l)) {
            if (s.classify_plane(h) != PlaneClass::Tangent) {
                ++other_planes;
                continue;
            }
            ++tangent_planes;
            const Point touch = s.pole(h);
            if (!s.contains(touch)) viol(tag() + " has a tangent plane touching off-surface");
            switch (cls) {
            case LineClass::Generator:
                if (!point_on_line(touch, l))
                    viol(tag() + " has a tangent plane touching off the axis");
                break;
            case LineClass::Tangent:
                if (on_surface.size() == 1 && touch != on_surface[0])
                    viol(tag() + " is not touched at its surface point");
                break;
            case LineClass::Secant:
                if (point_on_line(touch, l))
                    viol(tag() + " has a tangent plane touching on the axis");
                break;
            }
        }
        const std::uint64_t expect_tangent =
            cls == LineClass::Tangent ? 1 : cls == LineClass::Secant ? q + 1 : s2 + 1;
        if (tangent_planes != expect_tangent || tangent_planes + other_planes != s2 + 1)
            viol(tag() + " has book profile (" + std::to_string(tangent_planes) + ", " +
                 std::to_string(other_planes) + ")");
        const std::array<std::uint64_t, 2> profile{tangent_planes, other_planes};
        const auto [it, fresh] = r.book_profiles.try_emplace(to_string(cls), profile);
        if (!fresh && it->second != profile)
            viol(tag() + " deviates from the book profile of its class");
        ++r.lines_checked;
    };

    const auto plane_class = [&](const Plane& h) { return s.classify_plane(h); };

    const auto check_plane = [&](std::uint64_t hi) {
        const Plane h = plane_at(f, hi);
        const PlaneClass cls = plane_class(h);
        ++r.plane_census[to_string(cls)];
        std::uint64_t section = 0;
        for (const Vec4& c : coords)
            if (dot(f, h.dual, c) == 0) ++section;
        ++r.plane_point_spectrum[section];
        const std::uint64_t expect =
            cls == PlaneClass::Tangent ? q * q * q + q * q + 1 : q * q * q + 1;
        if (section != expect)
            viol(std::string(to_string(cls)) + " plane " + std::to_string(hi) + " cuts " +
                 std::to_string(section) + " points, expected " + std::to_string(expect));
        const Point pole = s.pole(h);
        if (s.polar_plane(pole) != h)
            viol("plane " + std::to_string(hi) + " fails the polarity roundtrip");
        if (s.contains(pole) != (cls == PlaneClass::Tangent))
            viol("plane " + std::to_string(hi) + " has a pole on the wrong side");
        ++r.planes_checked;
    };

    const auto check_pair = [&](const Plane& a, PlaneClass ca, const Plane& b, PlaneClass cb) {
        const LineClass meet = s.classify_line(meet_planes(a, b));
        if (ca == PlaneClass::Tangent && cb == PlaneClass::Tangent) {
            if (meet == LineClass::Tangent)
                viol("two tangent planes meet in a tangent line");
        } else if (meet == LineClass::Generator) {
            viol("a pair with a non-tangent plane meets in a generator");
        }
        ++r.pairs_checked;
    };

    const auto check_point = [&](const Point& p) {
        const LineTally tally = s.line_tally(p);
        if (tally.generators != q + 1 || tally.tangents != s2 - q ||
            tally.secants != s2 * s2)
            viol("surface point " + std::to_string(point_index(p)) + " tallies (" +
                 std::to_string(tally.generators) + ", " + std::to_string(tally.tangents) +
                 ", " + std::to_string(tally.secants) + ")");
    };

    if (full) {
        for (std::uint64_t li = 0; li < line_count(f); ++li) check_line(li);
        const std::uint64_t nplanes = plane_count(f);
        std::vector<PlaneClass> classes(nplanes);
        for (std::uint64_t hi = 0; hi < nplanes; ++hi) {
            classes[hi] = plane_class(plane_at(f, hi));
            check_plane(hi);
        }
        for (std::uint64_t i = 0; i < nplanes; ++i)
            for (std::uint64_t j = i + 1; j < nplanes; ++j)
                check_pair(plane_at(f, i), classes[i], plane_at(f, j), classes[j]);
        for (const std::uint64_t pi : s.point_indices()) check_point(point_at(f, pi));
    } else {
        std::mt19937_64 rng(seed);
        const std::uint64_t nlines = line_count(f), nplanes = plane_count(f);
        for (std::uint64_t i = 0; i < samples; ++i) check_line(uniform_below(rng, nlines));
        for (std::uint64_t i = 0; i < samples; ++i) check_plane(uniform_below(rng, nplanes));
        for (std::uint64_t i = 0; i < samples; ++i) {
            const std::uint64_t a = uniform_below(rng, nplanes);
            std::uint64_t b = a;
            while (b == a) b = uniform_below(rng, nplanes);
            const Plane ha = plane_at(f, a), hb = plane_at(f, b);
            check_pair(ha, plane_class(ha), hb, plane_class(hb));
        }
        // point tallies scan every line through the point, so sample fewer
        const std::uint64_t npts = std::max<std::uint64_t>(1, samples / 20);
        for (std::uint64_t i = 0; i < npts; ++i) {
            const std::uint64_t pi =
                s.point_indices()[uniform_below(rng, s.num_points())];
            check_point(point_at(f, pi));
        }
    }

    const std::uint64_t shown = r.violations.size();
    if (vtotal > shown)
        r.violations.push_back("... " + std::to_string(vtotal - shown) +
                               " more violation(s) suppressed");
    return r;
}

const char* to_string(InvariantStatus st) {
    switch (st) {
    case InvariantStatus::NotApplicable: return "not-applicable";
    case InvariantStatus::Zero: return "zero";
    case InvariantStatus::Nonzero: return "nonzero";
    }
    return "?";
}

} // namespace hermgeo
