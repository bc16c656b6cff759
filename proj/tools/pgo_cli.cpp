#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pgo/bigraph.hpp"
#include "pgo/obstruction.hpp"
#include "pgo/reference.hpp"
#include "pgo/roots.hpp"
#include "pgo/temperley_lieb.hpp"

namespace {

using namespace pgo;

struct RunConfig {
    std::string omega = "both";
    int precision = 30;
    std::string json_path;
    bool timestamp = true;
    std::string fault;
    bool verbose = false;

    std::vector<Omega> omegas() const {
        if (omega == "-1") return {Omega::Minus};
        if (omega == "+1" || omega == "1") return {Omega::Plus};
        return {Omega::Minus, Omega::Plus};
    }
    std::optional<Omega> omega_filter() const {
        auto w = omegas();
        return w.size() == 1 ? std::optional<Omega>(w[0]) : std::nullopt;
    }
    CollapseOptions faults() const {
        CollapseOptions o;
        o.flip_lws2_sign = fault == "lws2";
        o.flip_lws3_p_sign = fault == "lws3";
        return o;
    }
};

std::string utc_now() {
    std::time_t t = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

void write_json(const RunConfig& cfg, nlohmann::json j, double seconds) {
    if (cfg.json_path.empty()) return;
    if (cfg.timestamp) {
        j["timestamp"] = utc_now();
        j["elapsed_seconds"] = seconds;
    }
    std::ofstream out(cfg.json_path);
    if (!out) throw std::runtime_error("cannot write " + cfg.json_path);
    out << j.dump(2) << "\n";
}

double since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---------------------------------------------------------------- check

struct Input {
    std::string origin;  // "argument 1", "file:line"
    std::string text;
};

std::vector<Input> gather_inputs(const std::vector<std::string>& args) {
    std::vector<Input> out;
    for (std::size_t i = 0; i < args.size(); ++i) {
        const std::string& a = args[i];
        std::error_code ec;
        if (a.rfind("bwd", 0) != 0 && std::filesystem::is_regular_file(a, ec)) {
            for (const auto& line : read_graph_lines(a)) out.push_back({fmt::format("{}:{}", a, line.line), line.text});
        } else {
            out.push_back({fmt::format("argument {}", i + 1), a});
        }
    }
    return out;
}

int cmd_check(const RunConfig& cfg, const std::vector<std::string>& args) {
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<Input> inputs;
    try {
        inputs = gather_inputs(args);
    } catch (const std::exception& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return 1;
    }

    bool parse_error = false;
    std::vector<std::variant<GraphPair, std::string>> parsed;
    for (const auto& in : inputs) {
        try {
            parsed.emplace_back(parse_graph_pair(in.text));
        } catch (const BigraphParseError& e) {
            parse_error = true;
            parsed.emplace_back(e.what());
        }
    }

    std::vector<EliminationResult> results;
    for (Omega w : cfg.omegas()) results.push_back(run_elimination(w, cfg.faults()));
    const auto admissible = admissible_indices(results, cfg.precision);
    const double tol = std::pow(10.0, -(cfg.precision - 6));

    std::vector<std::future<Verdict>> jobs;
    for (const auto& p : parsed)
        if (const auto* g = std::get_if<GraphPair>(&p))
            jobs.push_back(std::async(std::launch::async, [&, g] { return verdict(*g, admissible, cfg.precision, tol); }));

    nlohmann::json out = {{"command", "check"}, {"precision", cfg.precision}};
    nlohmann::json adm = nlohmann::json::array();
    for (const auto& a : admissible)
        adm.push_back({{"factor", a.factor.to_string()}, {"index", a.index.to_string(cfg.precision)}, {"exact", a.exact}});
    out["admissible_indices"] = adm;
    nlohmann::json rows = nlohmann::json::array();

    bool undecided = false;
    std::size_t next = 0;
    for (std::size_t i = 0; i < parsed.size(); ++i) {
        if (const auto* err = std::get_if<std::string>(&parsed[i])) {
            fmt::print("ERROR  {}  {}\n    {}\n", inputs[i].origin, inputs[i].text, *err);
            rows.push_back({{"input", inputs[i].origin}, {"graph", inputs[i].text}, {"error", *err}});
            continue;
        }
        Verdict v;
        try {
            v = jobs[next++].get();
        } catch (const std::exception& e) {
            parse_error = true;
            fmt::print("ERROR  {}  {}\n    {}\n", inputs[i].origin, inputs[i].text, e.what());
            rows.push_back({{"input", inputs[i].origin}, {"graph", inputs[i].text}, {"error", e.what()}});
            continue;
        }
        undecided = undecided || v.kind == VerdictKind::Undecided;
        fmt::print("{}  {}\n    {}\n", v.name(), v.graph, v.detail);
        nlohmann::json j = v.to_json();
        j["input"] = inputs[i].origin;
        rows.push_back(std::move(j));
    }
    out["results"] = rows;
    write_json(cfg, out, since(t0));
    if (parse_error) return 1;
    return undecided ? 2 : 0;
}

// ---------------------------------------------------------------- verify

int cmd_verify(const RunConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    ReferenceOptions opt;
    opt.omega = cfg.omega_filter();
    opt.faults = cfg.faults();
    opt.digits = cfg.precision;
    ReferenceReport rep = run_reference_checks(opt);
    int criterion = -1;
    for (const auto& c : rep.checks) {
        if (c.criterion != criterion) {
            criterion = c.criterion;
            fmt::print("-- criterion {}\n", criterion);
        }
        std::string where = c.omega ? fmt::format(" ({}{})", *c.omega == Omega::Minus ? "omega=-1" : "omega=+1",
                                                 c.stage.empty() ? "" : ", " + c.stage)
                                    : "";
        fmt::print("{} {}{}\n", c.pass ? "PASS" : "FAIL", c.name, where);
        if (!c.pass || cfg.verbose) fmt::print("     computed: {}\n     expected: {}\n", c.computed, c.expected);
    }
    const auto passed = std::count_if(rep.checks.begin(), rep.checks.end(), [](const auto& c) { return c.pass; });
    fmt::print("{} of {} checks passed\n", passed, rep.checks.size());
    if (const ReferenceCheck* f = rep.first_failure())
        fmt::print("first failure: criterion {}{}: {}\n", f->criterion, f->stage.empty() ? "" : " at " + f->stage, f->name);
    for (const auto& c : rep.checks)
        if (!c.pass && !c.stage.empty()) {
            fmt::print("first failing stage: {} ({})\n", c.stage, *c.omega == Omega::Minus ? "omega=-1" : "omega=+1");
            break;
        }
    nlohmann::json j = rep.to_json();
    j["command"] = "verify";
    if (!cfg.fault.empty()) j["injected_fault"] = cfg.fault;
    write_json(cfg, j, since(t0));
    return rep.all_pass() ? 0 : 1;
}

// ---------------------------------------------------------------- jw

int cmd_jw(const RunConfig& cfg, int n, const std::string& entry) {
    const auto t0 = std::chrono::steady_clock::now();
    nlohmann::json out = {{"command", "jw"}, {"n", n}};
    if (!entry.empty()) {
        if (n != 4) {
            fmt::print(stderr, "error: --entry is available for n = 4 only\n");
            return 1;
        }
        Loop l;
        try {
            l = parse_entry(entry);
        } catch (const std::exception& e) {
            fmt::print(stderr, "error: {}\n", e.what());
            return 1;
        }
        if (!in_subalgebra(l)) {
            fmt::print(stderr, "error: {} lies outside the blocks M_(a,b), a,b in {{0,2,P,Q}}, (a,b) != (P,P),(Q,Q)\n", entry);
            return 1;
        }
        nlohmann::json vals = nlohmann::json::object();
        for (Omega w : cfg.omegas()) {
            const RadicalScalar v = jw_box(dimension_table(w)).at(l);
            const std::string tag = w == Omega::Minus ? "omega=-1" : "omega=+1";
            fmt::print("(f4)_{{{}}} = {}   [{} dimensions]\n", entry, v.to_string(), tag);
            vals[tag] = v.to_string();
        }
        out["entry"] = entry;
        out["values"] = vals;
    } else {
        const TLElement& f = jw_expansion(n);
        fmt::print("f^({}) has {} Temperley-Lieb diagrams\n", n, f.size());
        nlohmann::json coeffs = nlohmann::json::array();
        for (const auto& [d, c] : f) {
            std::vector<int> w = e_word(d);
            std::string word = w.empty() ? "1" : "";
            for (int i : w) word += (word.empty() ? "" : " ") + fmt::format("e{}", i);
            fmt::print("  {:<28} {:<16} {}\n", d.to_string(), word, c.to_string());
            coeffs.push_back({{"diagram", d.to_string()}, {"word", word}, {"coefficient", c.to_string()}});
        }
        out["coefficients"] = coeffs;
    }
    write_json(cfg, out, since(t0));
    return 0;
}

// ---------------------------------------------------------------- roots

int cmd_roots(const RunConfig& cfg, const std::string& text) {
    const auto t0 = std::chrono::steady_clock::now();
    RationalFunction f;
    try {
        f = parse_rational_function(text);
    } catch (const std::exception& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return 1;
    }
    if (f.is_zero()) {
        fmt::print(stderr, "error: the zero polynomial has no isolated roots\n");
        return 1;
    }
    const ZPoly p = f.num();
    mpz_class ten;
    mpz_ui_pow_ui(ten.get_mpz_t(), 10, static_cast<unsigned long>(cfg.precision));
    RootIsolation iso = real_roots_gt1(p, mpq_class(1, ten));
    const bool haagerup = count_roots_gt1(p) > 0 && matches_haagerup_index(p);
    fmt::print("polynomial: {}\n", p.to_string());
    fmt::print("real roots in (1, oo): {}\n", iso.roots.size());
    nlohmann::json roots = nlohmann::json::array();
    const mpfr_prec_t prec = bits_for_digits(cfg.precision + 10);
    for (std::size_t i = 0; i < iso.roots.size(); ++i) {
        const auto& r = iso.roots[i];
        Interval q(r.lo, r.hi, prec);
        Interval idx = index_of(q);
        fmt::print("  q{} = {}\n      in {}\n", i, q.to_string(cfg.precision), r.to_string(cfg.precision));
        fmt::print("  index q^2 + 2 + q^-2 = {}\n", idx.to_string(cfg.precision));
        roots.push_back({{"q", q.to_string(cfg.precision)}, {"enclosure", r.to_string(cfg.precision)},
                         {"index", idx.to_string(cfg.precision)}});
    }
    if (haagerup) fmt::print("every root > 1 gives index {} exactly\n", haagerup_index().to_string());
    nlohmann::json out = {{"command", "roots"}, {"polynomial", p.to_string()}, {"roots", roots}, {"haagerup_index", haagerup}};
    if (haagerup) out["index_exact"] = haagerup_index().to_string();
    write_json(cfg, out, since(t0));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Obstruction engine for 3-supertransitive principal graphs"};
    app.require_subcommand(1);
    app.fallthrough();
    RunConfig cfg;
    app.add_option("--omega", cfg.omega, "rotational eigenvalue: -1, +1 or both")
        ->check(CLI::IsMember({"-1", "+1", "1", "both"}))
        ->capture_default_str();
    app.add_option("--precision", cfg.precision, "decimal digits for certified numerics (>= 16)")
        ->check(CLI::Range(16, 1000))
        ->capture_default_str();
    app.add_option("--json", cfg.json_path, "write a JSON report to this path");
    app.add_flag("--no-timestamp{false}", cfg.timestamp, "omit timestamp and timing from the JSON report");
    app.add_flag("-v,--verbose", cfg.verbose, "print computed and expected values for passing checks too");
    app.add_option("--inject-fault", cfg.fault, "test mode: corrupt one relation family")
        ->check(CLI::IsMember({"lws2", "lws3"}))
        ->group("");

    std::vector<std::string> graphs;
    auto* check = app.add_subcommand("check", "decide candidate principal graphs (strings or files, one per line)");
    check->add_option("graphs", graphs, "bigraph string, \"principal, dual\" pair, or file")->required();

    auto* verify = app.add_subcommand("verify", "recompute every published value and report PASS/FAIL");
    verify->alias("verify-paper");

    int n = 4;
    std::string entry;
    auto* jw = app.add_subcommand("jw", "Jones-Wenzl idempotent coefficients or f4 entries");
    jw->add_option("n", n, "number of strands")->required()->check(CLI::Range(1, 6));
    jw->add_option("--entry", entry, "f4 entry \"top,bottom\", e.g. 2323P,2323P");

    std::string poly;
    auto* roots = app.add_subcommand("roots", "isolate roots q > 1 and report index values");
    roots->add_option("polynomial", poly, "polynomial in q, e.g. \"q^8-q^6-q^4-q^2+1\"")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }
    try {
        if (*check) return cmd_check(cfg, graphs);
        if (*verify) return cmd_verify(cfg);
        if (*jw) return cmd_jw(cfg, n, entry);
        if (*roots) return cmd_roots(cfg, poly);
    } catch (const std::exception& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return 1;
    }
    return 1;
}
