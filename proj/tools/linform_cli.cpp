// linform: images of integer linear forms over finite sets and residue rings.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "linform/linform.hpp"
#include "linform/serialization.hpp"

namespace {

using namespace linform;

constexpr int exit_ok = 0;
constexpr int exit_failure = 1;
constexpr int exit_usage = 2;

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct Globals {
    bool json = false;
    unsigned threads = 1;
};

/// Uniform result envelope for every command.
struct CommandResult {
    std::string command;
    json inputs = json::object();
    json outputs = json::object();
    bool success = true;
    std::string reason;

    json to_json() const {
        return {{"command", command},
                {"inputs", inputs},
                {"outputs", outputs},
                {"status", success ? "success" : "failure"},
                {"reason", reason}};
    }
};

unsigned default_threads() {
    if (const char* env = std::getenv("LINFORM_THREADS")) {
        try {
            const int n = std::stoi(env);
            if (n >= 1) return static_cast<unsigned>(n);
        } catch (const std::exception&) {
        }
        std::cerr << "linform: ignoring invalid LINFORM_THREADS='" << env << "'\n";
    }
    return 1;
}

struct SetSource {
    std::string file;
    std::string inline_list;

    void add_to(CLI::App* app) {
        auto* a = app->add_option("-A,--set", file, "set file (one integer per line, or a JSON array)");
        auto* i = app->add_option("--inline", inline_list, "inline comma-separated set, e.g. 0,1,2");
        a->excludes(i);
    }

    FiniteIntSet load() const {
        if (!file.empty()) return linform::load_set(file);
        if (!inline_list.empty()) return parse_set_list(inline_list);
        throw UsageError("a set is required: pass -A FILE or --inline LIST");
    }

    json describe() const { return file.empty() ? json{{"inline", inline_list}} : json{{"file", file}}; }
};

void print_text_kv(const json& outputs) {
    for (const auto& [k, v] : outputs.items()) std::cout << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
}

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

CommandResult cmd_image(const std::string& form, const SetSource& src, const std::string& strategy, bool show) {
    CommandResult r;
    r.command = "image";
    const auto f = LinearForm::parse(form);
    const auto A = src.load();
    const auto s = parse_strategy(strategy);
    r.inputs = {{"form", form_to_json(f)}, {"set", src.describe()}, {"strategy", std::string(to_string(s))}};
    r.outputs["set_size"] = A.size();
    if (show) {
        const auto img = image(f, A, s);
        r.outputs["cardinality"] = img.size();
        r.outputs["image"] = set_to_json(img);
    } else {
        r.outputs["cardinality"] = image_cardinality(f, A, s);
    }
    return r;
}

CommandResult cmd_compare(const std::string& fs, const std::string& gs, const SetSource& src) {
    CommandResult r;
    r.command = "compare";
    const auto f = LinearForm::parse(fs), g = LinearForm::parse(gs);
    const auto A = src.load();
    r.inputs = {{"f", form_to_json(f)}, {"g", form_to_json(g)}, {"set", src.describe()}};
    const auto fc = image_cardinality(f, A), gc = image_cardinality(g, A);
    r.outputs = {{"set_size", A.size()}, {"f_card", fc}, {"g_card", gc},
                 {"ordering", fc < gc ? "<" : fc > gc ? ">" : "="}};
    return r;
}

CommandResult cmd_classify3(const std::string& form, const std::optional<std::string>& bound) {
    CommandResult r;
    r.command = "classify3";
    const auto f = LinearForm::parse(form);
    std::optional<Int> b;
    if (bound) b = parse_int(*bound);
    const auto c = classify_triples(f, b);
    r.inputs = {{"form", form_to_json(f)}, {"bound", int_to_json(c.bound)}};
    json list = json::array();
    for (const auto& t : c.exceptional) list.push_back({{"set", set_to_json(t.canonical)}, {"cardinality", t.cardinality}});
    r.outputs["exceptional"] = list;
    if (f.u() >= 2) {
        const bool matches = c.exceptional == predicted_exceptional_triples(f);
        r.outputs["matches_prediction"] = matches;
        if (!matches) {
            r.success = false;
            r.reason = "classification differs from the predicted exceptional families";
        }
    }
    return r;
}

json witness_json(const WitnessPair& w) {
    return {{"f", form_to_json(w.f)}, {"g", form_to_json(w.g)}, {"A", set_to_json(w.A)}, {"B", set_to_json(w.B)},
            {"f_A", w.f_A}, {"g_A", w.g_A}, {"f_B", w.f_B}, {"g_B", w.g_B}};
}

CommandResult cmd_witness(const std::string& kind, const std::string& fs, const std::string& gs, const std::string& us,
                          const std::string& vs, const std::string& ts) {
    CommandResult r;
    r.command = "witness";
    r.inputs["kind"] = kind;
    auto need = [](const std::string& s, const char* flag) {
        if (s.empty()) throw UsageError(std::string("witness: ") + flag + " is required for this kind");
        return parse_int(s);
    };
    if (kind == "three") {
        if (fs.empty() || gs.empty()) throw UsageError("witness three: -f and -g are required");
        const auto f = LinearForm::parse(fs), g = LinearForm::parse(gs);
        r.inputs["f"] = form_to_json(f);
        r.inputs["g"] = form_to_json(g);
        r.outputs = witness_json(three_set_witness(f, g));
    } else if (kind == "four") {
        const Int u = need(us, "-u"), v = need(vs, "-v");
        r.inputs["u"] = int_to_json(u);
        r.inputs["v"] = int_to_json(v);
        r.outputs = witness_json(conjugate_four_set_witness(u, v));
    } else if (kind == "five") {
        const Int u = need(us, "-u"), v = need(vs, "-v");
        r.inputs["u"] = int_to_json(u);
        r.inputs["v"] = int_to_json(v);
        const auto w = five_set_witness(u, v);
        r.outputs = {{"A", set_to_json(w.A)}, {"f_card", w.f_card}, {"d_card", w.d_card}};
    } else if (kind == "ap") {
        const Int u = need(us, "-u"), v = need(vs, "-v"), t = need(ts, "-t");
        r.inputs["u"] = int_to_json(u);
        r.inputs["v"] = int_to_json(v);
        r.inputs["t"] = int_to_json(t);
        const auto A = ap_equality_set(u, v, t);
        r.outputs = {{"A", set_to_json(A)},
                     {"f_card", image_cardinality(LinearForm::binary(u, v), A)},
                     {"g_card", image_cardinality(LinearForm::binary(u, -v), A)}};
    } else {
        throw UsageError("witness: unknown kind '" + kind + "' (expected three, four, five or ap)");
    }
    return r;
}

CommandResult cmd_local_search(const std::string& fs, const std::string& gs, const std::string& ms,
                               const LocalSearchOptions& opt) {
    CommandResult r;
    r.command = "local-search";
    const auto f = LinearForm::parse(fs), g = LinearForm::parse(gs);
    const Int m = parse_int(ms);
    r.inputs = {{"f", form_to_json(f)}, {"g", form_to_json(g)}, {"m", int_to_json(m)},
                {"budget", opt.budget}, {"seed", opt.seed}, {"restarts", opt.restarts}};
    const auto sol = local_ratio_search(f, g, m, opt);
    r.outputs = local_solution_to_json(sol);
    r.outputs["line"] = format_residue_set(sol.residues);
    return r;
}

struct ConstructArgs {
    std::string f, g;
    std::string source = "qr";
    std::size_t count = 40;
    std::optional<std::string> window;
    std::string locals_file;
    std::string mode;
    std::string set_out;
    std::uint64_t set_cap = default_materialization_cap;
    std::string search_limit;
};

CommandResult cmd_construct(const ConstructArgs& a, unsigned threads) {
    CommandResult r;
    r.command = "construct";
    const auto f = LinearForm::parse(a.f), g = LinearForm::parse(a.g);
    BuildOptions build;
    build.set_cap = a.set_cap;
    r.inputs = {{"f", form_to_json(f)}, {"g", form_to_json(g)}, {"source", a.source}};

    std::vector<LocalSolution> locals;
    std::optional<LocalConstructionResult> found;
    if (a.source == "file") {
        if (a.locals_file.empty()) throw UsageError("construct --source file needs --locals FILE");
        const json doc = load_json(a.locals_file);
        for (const auto& R : residue_sets_from_json(doc)) locals.push_back(make_local_solution(f, g, R));
        if (doc.is_object() && doc.contains("window_start")) build.window_start = int_from_json(doc["window_start"]);
        build.mode = BuildMode::direct;
        r.inputs["locals"] = a.locals_file;
    } else {
        const auto src = parse_local_source(a.source);
        LocalConstructionOptions lopt;
        lopt.threads = threads;
        if (!a.search_limit.empty()) lopt.search_limit = parse_int(a.search_limit);
        f.require_binary("construct");
        found = src == LocalSource::qr ? qr_local_solutions(f.u(), f.v(), a.count, g, lopt)
                                       : kth_power_local_solutions(f.u(), f.v(), a.count, g, lopt);
        locals = found->locals;
        build.mode = BuildMode::adaptive;
        r.inputs["count"] = a.count;
    }
    if (!a.mode.empty()) {
        if (a.mode == "threshold") build.mode = BuildMode::threshold;
        else if (a.mode == "direct") build.mode = BuildMode::direct;
        else if (a.mode == "adaptive") build.mode = BuildMode::adaptive;
        else throw UsageError("construct: unknown mode '" + a.mode + "'");
    }
    if (a.window) build.window_start = parse_int(*a.window);
    r.inputs["mode"] = std::string(to_string(build.mode));
    r.inputs["window_start"] = int_to_json(build.window_start);

    auto report = build_separating_set(f, g, locals, build);
    if (found && found->search.shortfall)
        report.message += "; prime search shortfall: found " + std::to_string(found->search.primes.size()) + " of " +
                          std::to_string(a.count);
    r.outputs = report_to_json(report, 100'000, a.set_out);
    if (found) {
        r.outputs["exponent"] = found->exponent;
        r.outputs["excluded_value"] = int_to_json(found->excluded_value);
        r.outputs["prime_predicate"] = found->predicate;
    }
    r.success = report.success;
    if (!report.success) r.reason = report.message;
    return r;
}

CommandResult cmd_verify_paper(const std::vector<std::string>& only, const std::string& locals_file, unsigned threads) {
    CommandResult r;
    r.command = "verify-paper";
    CheckOptions opt;
    opt.threads = threads;
    if (!locals_file.empty()) {
        opt.locals = residue_sets_from_json(load_json(locals_file));
        r.inputs["locals"] = locals_file;
    }
    r.inputs["only"] = only;
    for (const auto& key : only) {
        const auto& checks = reproduction_checks();
        if (std::none_of(checks.begin(), checks.end(), [&](const Check& c) { return c.key == key; }))
            throw UsageError("verify-paper: unknown key '" + key + "'");
    }
    json rows = json::array();
    for (const auto& c : run_checks(opt, only)) {
        rows.push_back({{"criterion", c.criterion}, {"key", c.key}, {"name", c.name}, {"pass", c.passed()},
                        {"correct", c.ok}, {"seconds", c.seconds}, {"budget_seconds", c.budget_seconds},
                        {"detail", c.detail}});
        if (!c.passed()) {
            r.success = false;
            r.reason += (r.reason.empty() ? "" : "; ") + c.key + " " + c.name;
        }
    }
    r.outputs["checks"] = rows;
    return r;
}

// ---------------------------------------------------------------------------
// Text rendering
// ---------------------------------------------------------------------------

void print_text(const CommandResult& r) {
    const auto& o = r.outputs;
    if (r.command == "image") {
        std::cout << o["cardinality"].get<std::uint64_t>() << '\n';
        if (o.contains("image")) std::cout << o["image"].dump() << '\n';
    } else if (r.command == "compare") {
        std::cout << "|f(A)| = " << o["f_card"] << ' ' << o["ordering"].get<std::string>() << ' ' << o["g_card"]
                  << " = |g(A)|  (|A| = " << o["set_size"] << ")\n";
    } else if (r.command == "classify3") {
        for (const auto& t : o["exceptional"]) std::cout << t["set"].dump() << ' ' << t["cardinality"] << '\n';
        if (o.contains("matches_prediction"))
            std::cout << (o["matches_prediction"].get<bool>() ? "matches prediction" : "DIFFERS from prediction") << '\n';
    } else if (r.command == "verify-paper") {
        for (const auto& c : o["checks"]) {
            std::printf("%-4s %2d %-9s %-42s %8.3fs  %s\n", c["pass"].get<bool>() ? "PASS" : "FAIL",
                        c["criterion"].get<int>(), c["key"].get<std::string>().c_str(),
                        c["name"].get<std::string>().c_str(), c["seconds"].get<double>(),
                        c["detail"].get<std::string>().c_str());
        }
    } else if (r.command == "construct") {
        for (const char* k : {"moduli", "combined_modulus", "window", "set_size", "ratio_product", "target_threshold",
                              "threshold_met", "f_card", "g_card", "certificate", "message"})
            std::cout << k << ": " << (o[k].is_string() ? o[k].get<std::string>() : o[k].dump()) << '\n';
        if (o["A"].is_object()) std::cout << "A: written to " << o["A"]["file"].get<std::string>() << '\n';
    } else {
        print_text_kv(o);
    }
    if (!r.success) std::cout << "failure: " << r.reason << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Images of integer linear forms over finite sets and residue rings"};
    app.require_subcommand(1);
    Globals globals;
    globals.threads = default_threads();
    app.add_flag("--json", globals.json, "print the result as JSON");
    app.add_option("--threads", globals.threads, "worker threads (default LINFORM_THREADS or 1)")
        ->check(CLI::PositiveNumber);

    std::string f, g, strategy = "auto";
    bool show = false;
    SetSource set_src;
    auto* image_cmd = app.add_subcommand("image", "cardinality of f(A)");
    image_cmd->add_option("-f,--form", f, "form coefficients, e.g. 2,1")->required();
    set_src.add_to(image_cmd);
    image_cmd->add_option("--strategy", strategy, "auto, pairs, merge or bitset");
    image_cmd->add_flag("--show", show, "also print the image");

    auto* compare_cmd = app.add_subcommand("compare", "compare |f(A)| and |g(A)|");
    compare_cmd->add_option("-f", f, "first form")->required();
    compare_cmd->add_option("-g", g, "second form")->required();
    set_src.add_to(compare_cmd);

    std::optional<std::string> bound;
    auto* classify_cmd = app.add_subcommand("classify3", "exceptional three-element sets of a normalized form");
    classify_cmd->add_option("-f,--form", f, "normalized binary form u,v")->required();
    classify_cmd->add_option("--bound", bound, "largest element searched (default u+|v|)");

    std::string kind, us, vs, ts;
    auto* witness_cmd = app.add_subcommand("witness", "explicit separating sets");
    witness_cmd->add_option("kind", kind, "three, four, five or ap")->required();
    witness_cmd->add_option("-f", f, "first form (three)");
    witness_cmd->add_option("-g", g, "second form (three)");
    witness_cmd->add_option("-u", us, "u (four, five, ap)");
    witness_cmd->add_option("-v", vs, "v (four, five, ap)");
    witness_cmd->add_option("-t", ts, "progression length (ap)");

    std::string m;
    LocalSearchOptions search;
    auto* search_cmd = app.add_subcommand("local-search", "search R mod m minimizing |f(R)|/|g(R)| with g(R) full");
    search_cmd->add_option("-f", f, "first form")->required();
    search_cmd->add_option("-g", g, "second form")->required();
    search_cmd->add_option("-m,--modulus", m, "modulus")->required();
    search_cmd->add_option("--budget", search.budget, "candidate evaluations");
    search_cmd->add_option("--seed", search.seed, "random seed");
    search_cmd->add_option("--restarts", search.restarts, "independent restarts");

    ConstructArgs cargs;
    auto* construct_cmd = app.add_subcommand("construct", "build A with |f(A)| < |g(A)| from local solutions");
    construct_cmd->add_option("-f", cargs.f, "first form")->required();
    construct_cmd->add_option("-g", cargs.g, "second form")->required();
    construct_cmd->add_option("--source", cargs.source, "qr, kpower or file")
        ->check(CLI::IsMember({"qr", "kpower", "file"}));
    construct_cmd->add_option("--count", cargs.count, "number of primes to search for");
    construct_cmd->add_option("--window", cargs.window, "start of the representative window");
    construct_cmd->add_option("--locals", cargs.locals_file, "JSON residue sets (source file)");
    construct_cmd->add_option("--mode", cargs.mode, "threshold, direct or adaptive");
    construct_cmd->add_option("--set-out", cargs.set_out, "file for A when it is too large to inline");
    construct_cmd->add_option("--cap", cargs.set_cap, "largest |A| to materialize");
    construct_cmd->add_option("--search-limit", cargs.search_limit, "prime search limit");

    std::vector<std::string> only;
    std::string fixture;
    auto* verify_cmd = app.add_subcommand("verify-paper", "run the reproduction checks");
    verify_cmd->add_option("--only", only, "restrict to keys such as sec2 (repeatable)");
    verify_cmd->add_option("--locals", fixture, "replacement JSON for the four reference residue sets");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    CommandResult result;
    try {
        if (*image_cmd) result = cmd_image(f, set_src, strategy, show);
        else if (*compare_cmd) result = cmd_compare(f, g, set_src);
        else if (*classify_cmd) result = cmd_classify3(f, bound);
        else if (*witness_cmd) result = cmd_witness(kind, f, g, us, vs, ts);
        else if (*search_cmd) {
            search.threads = globals.threads;
            result = cmd_local_search(f, g, m, search);
        } else if (*construct_cmd) result = cmd_construct(cargs, globals.threads);
        else if (*verify_cmd) result = cmd_verify_paper(only, fixture, globals.threads);
        if (*search_cmd || *construct_cmd || *verify_cmd) result.inputs["threads"] = globals.threads;
    } catch (const std::invalid_argument& e) {
        std::cerr << "linform: " << e.what() << '\n';
        return exit_usage;
    } catch (const json::exception& e) {
        std::cerr << "linform: malformed JSON input: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "linform: " << e.what() << '\n';
        return exit_failure;
    }

    if (globals.json) std::cout << result.to_json().dump(2) << '\n';
    else print_text(result);
    return result.success ? exit_ok : exit_failure;
}
