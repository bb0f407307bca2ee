#pragma once

// Command-line front end. Exit codes: 0 success, 1 failed check or domain
// violation, 2 usage error.

#include <cstdlib>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "avoider_lab/bijection.hpp"
#include "avoider_lab/paths.hpp"
#include "avoider_lab/permutation.hpp"
#include "avoider_lab/series.hpp"
#include "avoider_lab/verify.hpp"

namespace avoider_lab::cli {

using Json = nlohmann::ordered_json;

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

inline constexpr int kCountLimit = 12;
inline constexpr int kVerifyLimit = 10;

class UsageError : public std::runtime_error {
public:
    explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

inline unsigned resolve_threads(std::optional<unsigned> flag)
{
    if (flag) return std::max(1u, *flag);
    if (const char* env = std::getenv("AVOIDER_LAB_THREADS"); env && *env) {
        try {
            int value = std::stoi(env);
            if (value >= 1) return static_cast<unsigned>(value);
        } catch (const std::exception&) {
        }
        throw UsageError(std::string("AVOIDER_LAB_THREADS must be a positive integer, got \"") + env + "\"");
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

inline PatternSet parse_patterns(const std::vector<std::string>& texts)
{
    std::vector<Permutation> pats;
    for (const auto& text : texts) {
        std::vector<int> values;
        for (char ch : text) {
            if (ch < '1' || ch > '9') throw UsageError("bad pattern \"" + text + "\" (expected digits, e.g. 4321)");
            values.push_back(ch - '0');
        }
        try {
            pats.emplace_back(std::move(values));
        } catch (const InvalidInput& e) {
            throw UsageError("bad pattern \"" + text + "\": " + e.what());
        }
    }
    return PatternSet(std::move(pats));
}

inline std::string compact(const Permutation& p)
{
    std::string out;
    for (int v : p) out += std::to_string(v);
    return out;
}

inline std::string join(const std::vector<int>& values)
{
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) out += (i ? "," : "") + std::to_string(values[i]);
    return out;
}

inline std::vector<int> parse_heights(const std::string& text)
{
    if (text == "(empty)") return {};
    return parse_int_list(text);
}

inline Json triple_json(const Triple& t)
{
    Json j;
    j["a"] = t.a ? Json(*t.a) : Json(nullptr);
    j["b"] = t.b ? Json(*t.b) : Json(nullptr);
    j["c"] = t.c.is_finite() ? Json(t.c.value()) : Json("inf");
    j["degenerate"] = t.degenerate;
    return j;
}

inline void add_analysis(Json& j, const Analysis& a)
{
    j["blue"] = a.blue;
    j["peak_blue"] = a.peak_blue ? Json(*a.peak_blue) : Json(nullptr);
    j["triple"] = triple_json(a.triple);
    j["insertion_set"] = a.insertion_set;
    j["insertion_list"] = a.insertion_list;
    j["image"] = Json{{"q", a.image.q.to_vector()}, {"heights", a.image.heights.heights()}};
}

inline void print_analysis_text(std::ostream& out, const Analysis& a)
{
    out << "blue=" << join(a.blue) << "\n";
    out << "peak_blue=" << (a.peak_blue ? std::to_string(*a.peak_blue) : "none") << "\n";
    out << "triple=" << to_string(a.triple) << "\n";
    out << "insertion_set=" << join(a.insertion_set) << "\n";
    out << "insertion_list=" << join(a.insertion_list) << "\n";
    std::string heights = to_string(a.image.heights);
    out << "q=" << to_string(a.image.q) << " heights=" << (heights.empty() ? "(empty)" : heights) << "\n";
}

inline Json tally_json(const Tally& t)
{
    return Json{{"passed", t.ok()}, {"checked", t.checked}, {"failures", t.failed}, {"samples", t.samples}};
}

} // namespace detail

/// Report as JSON. Identical inputs give identical output apart from "duration_seconds".
inline Json report_json(const VerificationReport& report, OrderingRule rule)
{
    Json j;
    j["schema"] = "v1";
    j["command"] = "verify";
    j["max_n"] = report.max_n;
    j["ordering"] = rule == OrderingRule::canonical ? "canonical" : "terminal_rotated";
    j["passed"] = report.passed();
    j["round_trip_failures"] = report.round_trip_failures;
    Json lengths = Json::array();
    for (const auto& lr : report.lengths) {
        Json rows = Json::array();
        for (const auto& row : lr.per_k)
            rows.push_back(Json{{"k", row.k},
                                {"avoiders", row.avoiders},
                                {"product", row.product},
                                {"formula", row.formula.str()}});
        lengths.push_back(Json{{"n", lr.n}, {"equal", lr.counts.ok()}, {"per_k", rows}});
    }
    j["lengths"] = lengths;
    Json suites = Json::object();
    for (const auto& s : report.suites) suites[s.name] = detail::tally_json(s.tally);
    j["suites"] = suites;
    j["duration_seconds"] = report.duration_seconds;
    return j;
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Pattern-avoidance lab: {4321, 3241}-avoiders, their bijection, lattice paths and series"};
    app.require_subcommand(1);

    std::optional<unsigned> threads;
    bool unsafe = false;
    std::string format;

    // count
    auto* count = app.add_subcommand("count", "Count pattern-avoiding permutations for n = 0..max-n");
    std::vector<std::string> patterns;
    int max_n = 0;
    bool indecomposable = false;
    count->add_option("--patterns", patterns, "Patterns, comma separated (e.g. 4321,3241)")->delimiter(',');
    count->add_option("--max-n", max_n, "Largest length")->required()->check(CLI::NonNegativeNumber);
    count->add_flag("--indecomposable", indecomposable, "Only indecomposable permutations");
    count->add_option("--format", format, "csv | json | bfile")->check(CLI::IsMember({"csv", "json", "bfile"}));
    count->add_option("--threads", threads, "Worker threads");
    count->add_flag("--unsafe-no-limit", unsafe, "Disable the max-n guardrail");

    // enumerate
    auto* enumerate = app.add_subcommand("enumerate", "List pattern-avoiding permutations of one length");
    int length = 0;
    enumerate->add_option("--patterns", patterns, "Patterns, comma separated")->delimiter(',');
    enumerate->add_option("--n", length, "Length")->required()->check(CLI::NonNegativeNumber);
    enumerate->add_flag("--indecomposable", indecomposable, "Only indecomposable permutations");
    enumerate->add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
    enumerate->add_option("--threads", threads, "Worker threads");
    enumerate->add_flag("--unsafe-no-limit", unsafe, "Disable the length guardrail");

    // map / analyze / unmap
    std::string perm_text;
    std::string heights_text;
    auto* map = app.add_subcommand("map", "Analysis dump and bijection image of an avoider");
    map->add_option("--perm", perm_text, "Permutation, e.g. 2735164 or 2,7,3,5,1,6,4")->required();
    map->add_option("--format", format, "text | json")->check(CLI::IsMember({"text", "json"}));

    auto* analyze = app.add_subcommand("analyze", "Structure of any permutation, plus the avoider analysis when it applies");
    analyze->add_option("--perm", perm_text, "Permutation")->required();
    analyze->add_option("--format", format, "text | json")->check(CLI::IsMember({"text", "json"}));

    auto* unmap = app.add_subcommand("unmap", "Rebuild an avoider from (q, heights)");
    unmap->add_option("--perm", perm_text, "Indecomposable 321-avoider q")->required();
    unmap->add_option("--heights", heights_text, "Height sequence, comma separated (may be empty)");
    unmap->add_option("--format", format, "text | json")->check(CLI::IsMember({"text", "json"}));

    // paths
    auto* paths = app.add_subcommand("paths", "Convert between nonnegative paths and height sequences");
    std::string to_heights_text, from_heights_text, classify_text;
    std::optional<int> ups;
    auto* to_opt = paths->add_option("--to-heights", to_heights_text, "Path over U/D");
    auto* from_opt = paths->add_option("--from-heights", from_heights_text, "Height sequence");
    auto* classify_opt = paths->add_option("--classify", classify_text, "Path over U/D");
    paths->add_option("--ups", ups, "Surplus of upsteps m (with --from-heights)")->check(CLI::NonNegativeNumber);
    to_opt->excludes(from_opt)->excludes(classify_opt);
    from_opt->excludes(classify_opt);
    paths->require_option(1, 2);

    // series
    auto* series = app.add_subcommand("series", "Print generating-function coefficients");
    std::string which;
    int terms = 0;
    int offset = 0;
    series->add_option("--which", which, "F | G | catalan | u")->required()->check(CLI::IsMember({"F", "G", "catalan", "u"}));
    series->add_option("--terms", terms, "Number of terms")->required()->check(CLI::PositiveNumber);
    series->add_option("--format", format, "csv | json | bfile")->check(CLI::IsMember({"csv", "json", "bfile"}));
    series->add_option("--offset", offset, "First index in b-file output");

    // verify
    auto* verify = app.add_subcommand("verify", "Run every invariant suite up to max-n and print a JSON report");
    int verify_n = 7;
    bool corrupt = false;
    verify->add_option("--max-n", verify_n, "Largest length")->check(CLI::NonNegativeNumber);
    verify->add_option("--threads", threads, "Worker threads");
    verify->add_flag("--unsafe-no-limit", unsafe, "Disable the max-n guardrail");
    verify->add_flag("--corrupt-ordering", corrupt, "Negative control: use a wrong insertion-list order")->group("");

    std::vector<std::string> argv_storage{"avoider_lab"};
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& a : argv_storage) argv.push_back(a.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (count->parsed()) {
            if (!unsafe && max_n > kCountLimit)
                throw UsageError("--max-n " + std::to_string(max_n) + " exceeds " + std::to_string(kCountLimit) +
                                 " (use --unsafe-no-limit)");
            PatternSet pats = detail::parse_patterns(patterns);
            unsigned th = detail::resolve_threads(threads);
            std::vector<BigInt> counts;
            for (int n = 0; n <= max_n; ++n) counts.emplace_back(count_avoiders(n, pats, indecomposable, th));
            if (format == "json") {
                Json j;
                j["schema"] = "v1";
                j["command"] = "count";
                Json names = Json::array();
                for (const auto& p : pats.patterns()) names.push_back(detail::compact(p));
                j["patterns"] = names;
                j["indecomposable"] = indecomposable;
                j["max_n"] = max_n;
                Json values = Json::array();
                for (const auto& c : counts) values.push_back(c.convert_to<std::uint64_t>());
                j["counts"] = values;
                out << j.dump() << "\n";
            } else if (format == "bfile") {
                out << to_bfile(counts, 0);
            } else {
                out << to_csv_line(counts) << "\n";
            }
            return kExitOk;
        }

        if (enumerate->parsed()) {
            if (!unsafe && length > kCountLimit)
                throw UsageError("--n " + std::to_string(length) + " exceeds " + std::to_string(kCountLimit) +
                                 " (use --unsafe-no-limit)");
            PatternSet pats = detail::parse_patterns(patterns);
            auto perms = enumerate_avoiders(length, pats, indecomposable, detail::resolve_threads(threads));
            if (format == "json") {
                Json list = Json::array();
                for (const auto& p : perms) list.push_back(p.to_vector());
                Json j;
                j["schema"] = "v1";
                j["command"] = "enumerate";
                j["n"] = length;
                j["count"] = perms.size();
                j["permutations"] = list;
                out << j.dump() << "\n";
            } else {
                for (const auto& p : perms) out << to_string(p) << "\n";
            }
            return kExitOk;
        }

        if (map->parsed()) {
            Permutation p = parse_permutation(perm_text);
            Analysis a = analyze_avoider(p);
            if (format == "json") {
                Json j;
                j["schema"] = "v1";
                j["command"] = "map";
                j["perm"] = p.to_vector();
                detail::add_analysis(j, a);
                out << j.dump() << "\n";
            } else {
                out << "perm=" << to_string(p) << "\n";
                detail::print_analysis_text(out, a);
            }
            return kExitOk;
        }

        if (analyze->parsed()) {
            Permutation p = parse_permutation(perm_text);
            bool avoider = is_avoider(p);
            Json j;
            j["schema"] = "v1";
            j["command"] = "analyze";
            j["perm"] = p.to_vector();
            j["indecomposable"] = is_indecomposable(p);
            Json comps = Json::array();
            for (const auto& c : components(p)) comps.push_back(c.to_vector());
            j["components"] = comps;
            j["lrmax"] = left_to_right_maxima(p);
            Json contains = Json::object();
            for (const char* name : {"321", "4321", "3241"}) {
                auto witness = find_pattern(p, parse_permutation(name));
                contains[name] = witness ? Json(*witness) : Json(nullptr);
            }
            j["witnesses"] = contains;
            j["avoider"] = avoider;
            std::optional<Analysis> a;
            if (avoider) {
                a = analyze_avoider(p);
                detail::add_analysis(j, *a);
            }
            if (format == "json") {
                out << j.dump() << "\n";
            } else {
                out << "perm=" << to_string(p) << "\n";
                out << "indecomposable=" << (is_indecomposable(p) ? "true" : "false") << "\n";
                out << "components=";
                bool first = true;
                for (const auto& c : components(p)) {
                    out << (first ? "" : " | ") << to_string(c);
                    first = false;
                }
                out << "\n";
                out << "lrmax=" << detail::join(left_to_right_maxima(p)) << "\n";
                for (const char* name : {"321", "4321", "3241"}) {
                    auto witness = find_pattern(p, parse_permutation(name));
                    out << "contains_" << name << "=" << (witness ? "positions " + detail::join(*witness) : "no") << "\n";
                }
                out << "avoider=" << (avoider ? "true" : "false") << "\n";
                if (a) detail::print_analysis_text(out, *a);
            }
            return kExitOk;
        }

        if (unmap->parsed()) {
            Permutation q = parse_permutation(perm_text);
            Permutation p = inverse_map(q, detail::parse_heights(heights_text));
            if (format == "json") {
                Json j;
                j["schema"] = "v1";
                j["command"] = "unmap";
                j["q"] = q.to_vector();
                j["heights"] = detail::parse_heights(heights_text);
                j["perm"] = p.to_vector();
                out << j.dump() << "\n";
            } else {
                out << to_string(p) << "\n";
            }
            return kExitOk;
        }

        if (paths->parsed()) {
            if (to_opt->count() > 0) {
                HeightSequence h = path_to_heights(LatticePath::parse(to_heights_text));
                out << to_string(h) << "\n";
            } else if (from_opt->count() > 0) {
                if (!ups) throw UsageError("--from-heights needs --ups");
                LatticePath path = heights_to_path(HeightSequence(detail::parse_heights(from_heights_text), *ups), *ups);
                out << path.str() << "\n";
            } else {
                PathClass cls = classify_path(LatticePath::parse(classify_text));
                out << "nonnegative=" << (cls.nonnegative ? "true" : "false") << " dyck=" << (cls.dyck ? "true" : "false")
                    << " components=" << cls.component_count << "\n";
            }
            return kExitOk;
        }

        if (series->parsed()) {
            int order = terms - 1;
            std::vector<BigInt> values;
            if (which == "F") values = f_series(order).coefficients();
            else if (which == "G") values = g_series(order).coefficients();
            else if (which == "catalan") values = catalan_series(order).coefficients();
            else
                for (int n = 0; n <= order; ++n) values.push_back(u_by_formula(n));
            if (format == "json") {
                out << "{\"schema\":\"v1\",\"command\":\"series\",\"which\":\"" << which << "\",\"terms\":"
                    << to_json_array(values) << "}\n";
            } else if (format == "bfile") {
                out << to_bfile(values, offset);
            } else {
                out << to_csv_line(values) << "\n";
            }
            return kExitOk;
        }

        if (verify->parsed()) {
            if (!unsafe && verify_n > kVerifyLimit)
                throw UsageError("--max-n " + std::to_string(verify_n) + " exceeds " + std::to_string(kVerifyLimit) +
                                 " (use --unsafe-no-limit)");
            VerifyOptions options;
            options.max_n = verify_n;
            options.threads = detail::resolve_threads(threads);
            options.rule = corrupt ? OrderingRule::terminal_rotated : OrderingRule::canonical;
            VerificationReport report = run_verification(options);
            out << report_json(report, options.rule).dump(2) << "\n";
            if (!report.passed()) {
                for (const auto& s : report.suites)
                    for (const auto& sample : s.tally.samples) err << s.name << ": " << sample << "\n";
                return kExitFailure;
            }
            return kExitOk;
        }
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const InvalidInput& e) {
        err << "invalid input: " << e.what() << "\n";
        return kExitUsage;
    } catch (const DomainError& e) {
        err << "domain error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitUsage;
}

} // namespace avoider_lab::cli
