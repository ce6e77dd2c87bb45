#include "hmknf/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <set>
#include <sstream>

#include "hmknf/bench.hpp"
#include "hmknf/diagnostics.hpp"
#include "hmknf/error.hpp"
#include "hmknf/export.hpp"
#include "hmknf/parser.hpp"
#include "hmknf/printer.hpp"
#include "hmknf/query.hpp"

namespace hmknf {

namespace {

using json = nlohmann::json;

constexpr std::string_view kCompiledHeader = "% hmknf compiled program";

struct UsageError : Error {
    using Error::Error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Loaded {
    DoubledProgram program;
    std::vector<Diagnostic> warnings;
};

Loaded load(const std::string& path) {
    std::string text = read_file(path);
    Loaded out;
    if (text.rfind(kCompiledHeader, 0) == 0) {
        out.program = read_compiled(text);
        return out;
    }
    KnowledgeBase kb = parse_program_unchecked(text);
    auto diagnostics = validate(kb);
    if (has_errors(diagnostics)) throw ValidationError(std::move(diagnostics));
    out.warnings = std::move(diagnostics);
    out.program = compile(kb);
    return out;
}

void report_unsupported(const DoubledProgram& p, std::ostream& err) {
    for (const auto& u : p.unsupported) {
        err << "unsupported axiom: " << to_string(u.axiom) << "  reason: " << u.reason << '\n';
    }
}

std::vector<std::string> origin_texts(const DoubledProgram& p, const GroundProgram& g,
                                      const std::vector<std::size_t>& ground_rules) {
    std::set<std::size_t> seen;
    std::vector<std::string> out;
    for (std::size_t ri : ground_rules) {
        std::uint32_t src = g.rules()[ri].source;
        if (src >= p.rules.size()) continue;
        std::size_t o = p.rules[src].origin;
        if (o >= p.origins.size() || !seen.insert(o).second) continue;
        out.push_back(std::string(to_string(p.origins[o].kind)) + " " + std::to_string(p.origins[o].index) + ": " +
                      p.origins[o].text);
    }
    return out;
}

void print_report(const KnowledgeModel& m, const InconsistencyReport& report, bool as_json, std::ostream& out) {
    for (const auto& inc : report.atoms) {
        auto support = origin_texts(m.program(), m.ground(), inc.support);
        auto blocking = origin_texts(m.program(), m.ground(), inc.blocking);
        if (as_json) {
            out << json{{"atom", to_string(inc.literal)}, {"support", support}, {"blocking", blocking}}.dump() << '\n';
            continue;
        }
        out << "inconsistent: " << to_string(inc.literal) << '\n';
        for (const auto& s : support) out << "  supported by " << s << '\n';
        for (const auto& b : blocking) out << "  blocked by " << b << '\n';
    }
    if (!as_json && report.empty()) out << "no inconsistencies\n";
}

void print_answers(const std::string& query, const AnswerSet& set, bool as_json, std::ostream& out) {
    for (const auto& a : set.answers) {
        if (as_json) {
            json binding = json::object();
            for (std::size_t i = 0; i < set.answer_vars.size(); ++i) binding[set.answer_vars[i]] = a.binding[i];
            out << json{{"query", query}, {"binding", binding}, {"classification", to_string(a.classification)}}.dump()
                << '\n';
        } else {
            std::string b = binding_string(set, a);
            out << (b.empty() ? "yes" : b) << "  " << to_string(a.classification) << '\n';
        }
    }
}

std::vector<std::string> read_lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '%') continue;
        auto last = line.find_last_not_of(" \t\r");
        out.push_back(line.substr(first, last - first + 1));
    }
    return out;
}

json report_json(const RunReport& r) {
    json phases = json::object();
    for (const auto& p : r.phases) phases[p.name] = p.ms;
    json queries = json::array();
    for (const auto& q : r.queries) {
        json row{{"query", q.query},
                 {"ms", q.ms},
                 {"consistent", q.consistent},
                 {"contradictory", q.contradictory},
                 {"undefined", q.undefined}};
        if (!q.error.empty()) row["error"] = q.error;
        queries.push_back(row);
    }
    return json{{"phases", phases},
                {"wall_ms", r.wall_ms},
                {"program_rules", r.program_rules},
                {"ground_rules", r.ground_rules},
                {"ground_atoms", r.ground_atoms},
                {"afp_iterations", r.afp_iterations},
                {"inconsistencies", r.inconsistencies},
                {"queries", queries}};
}

struct Options {
    std::string input;
    std::string output;
    std::string format = "native";
    std::string query;
    std::string mode = "all";
    std::string queries;
    std::string kb;
    bool as_json = false;
    bool strict = false;
    bool full = false;
    bool parallel = false;
    bool no_disjointness = false;
    BenchConfig bench;
    std::size_t query_count = 10;
};

int cmd_compile(const Options& o, std::ostream& out, std::ostream& err) {
    Loaded l = load(o.input);
    for (const auto& w : l.warnings) err << format(w) << '\n';
    report_unsupported(l.program, err);
    std::string text = write_compiled(l.program, o.format == "prolog" ? ExportFormat::Prolog : ExportFormat::Native);
    if (o.output.empty() || o.output == "-") {
        out << text;
    } else {
        std::ofstream f(o.output, std::ios::binary);
        if (!f || !(f << text)) throw Error("cannot write " + o.output);
    }
    return kExitOk;
}

int cmd_query(const Options& o, std::ostream& out, std::ostream& err) {
    Mode mode = parse_mode(o.mode);
    Loaded l = load(o.input);
    ConjunctiveQuery q = parse_query(o.query);
    double_query(q, l.program.symbols);
    DoubledProgram program = o.full ? l.program : relevance_slice(l.program, q);
    KnowledgeModel model(std::move(program));
    print_answers(o.query, answer(q, model, mode), o.as_json, out);
    if (o.strict) {
        KnowledgeModel full(std::move(l.program));
        InconsistencyReport report = full.check();
        if (!report.empty()) {
            print_report(full, report, false, err);
            return kExitInconsistent;
        }
    }
    return kExitOk;
}

int cmd_check(const Options& o, std::ostream& out, std::ostream& err) {
    Loaded l = load(o.input);
    report_unsupported(l.program, err);
    KnowledgeModel model(std::move(l.program));
    InconsistencyReport report = model.check();
    print_report(model, report, o.as_json, out);
    return o.strict && !report.empty() ? kExitInconsistent : kExitOk;
}

int cmd_repl(const Options& o, std::istream& in, std::ostream& out, std::ostream& err) {
    Mode mode = parse_mode(o.mode);
    Loaded l = load(o.input);
    report_unsupported(l.program, err);
    const KnowledgeModel model(std::move(l.program));
    std::string line;
    while (std::getline(in, line)) {
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        line = line.substr(first, line.find_last_not_of(" \t\r") - first + 1);
        try {
            if (line == ":quit" || line == ":q") break;
            if (line == ":check") {
                print_report(model, model.check(), o.as_json, out);
            } else if (line.rfind(":mode", 0) == 0) {
                std::string arg = line.substr(5);
                arg.erase(0, arg.find_first_not_of(' '));
                if (arg.empty()) {
                    out << "mode " << to_string(mode) << '\n';
                } else {
                    mode = parse_mode(arg);
                }
            } else if (line == ":help") {
                out << "query syntax: p(X), not q(X)\n:mode consistent|inconsistent|all\n:check\n:quit\n";
            } else if (line[0] == ':') {
                err << "error: unknown directive " << line << '\n';
            } else {
                print_answers(line, answer(parse_query(line), model, mode), o.as_json, out);
            }
        } catch (const Error& e) {
            err << "error: " << e.what() << '\n';
        }
    }
    return kExitOk;
}

int cmd_gen(const Options& o, std::ostream& out) {
    BenchConfig c = o.bench;
    c.disjointness = !o.no_disjointness;
    std::string text = to_string(generate_bench(c));
    if (o.output.empty() || o.output == "-") {
        out << text;
    } else {
        std::ofstream f(o.output, std::ios::binary);
        if (!f || !(f << text)) throw Error("cannot write " + o.output);
    }
    return kExitOk;
}

int cmd_bench(const Options& o, std::ostream& out) {
    BenchConfig c = o.bench;
    c.disjointness = !o.no_disjointness;
    std::string kb = o.kb.empty() ? to_string(generate_bench(c)) : read_file(o.kb);
    std::vector<std::string> queries;
    if (!o.queries.empty()) {
        std::ifstream f(o.queries);
        if (!f) throw UsageError("cannot read queries file " + o.queries);
        std::ostringstream ss;
        ss << f.rdbuf();
        queries = read_lines(ss.str());
    } else {
        queries = generate_queries(parse_program(kb), o.query_count, c.seed + 1);
    }
    RunOptions ro;
    ro.parallel_queries = o.parallel;
    RunReport report = run_bench(kb, queries, ro);
    if (o.as_json) {
        out << report_json(report).dump() << '\n';
    } else {
        out << format_report(report);
    }
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"Hybrid MKNF compiler and query engine", "hmknf"};
    app.require_subcommand(1);
    Options o;

    auto* compile_cmd = app.add_subcommand("compile", "Compile a knowledge base to a doubled program");
    compile_cmd->add_option("input", o.input, "Knowledge-base file")->required();
    compile_cmd->add_option("-o,--output", o.output, "Output file (default: standard output)");
    compile_cmd->add_option("--format", o.format, "native or prolog")
        ->check(CLI::IsMember({"native", "prolog"}))
        ->capture_default_str();

    auto* query_cmd = app.add_subcommand("query", "Answer a conjunctive query");
    query_cmd->add_option("input", o.input, "Knowledge-base or compiled file")->required();
    query_cmd->add_option("query", o.query, "Query, e.g. 'rwy(X), not cldRwy(X)'")->required();
    query_cmd->add_option("--mode", o.mode, "consistent, inconsistent or all")
        ->check(CLI::IsMember({"consistent", "inconsistent", "all"}))
        ->capture_default_str();
    query_cmd->add_flag("--json", o.as_json, "One JSON record per answer");
    query_cmd->add_flag("--strict", o.strict, "Exit with 3 when the knowledge base is inconsistent");
    query_cmd->add_flag("--full", o.full, "Evaluate over the whole program instead of the relevant slice");

    auto* repl_cmd = app.add_subcommand("repl", "Read queries from standard input");
    repl_cmd->add_option("input", o.input, "Knowledge-base or compiled file")->required();
    repl_cmd->add_option("--mode", o.mode, "Initial mode")
        ->check(CLI::IsMember({"consistent", "inconsistent", "all"}))
        ->capture_default_str();
    repl_cmd->add_flag("--json", o.as_json, "One JSON record per answer");

    auto* check_cmd = app.add_subcommand("check", "Report atoms true at a-level and false at d-level");
    check_cmd->add_option("input", o.input, "Knowledge-base or compiled file")->required();
    check_cmd->add_flag("--json", o.as_json, "One JSON record per atom");
    check_cmd->add_flag("--strict", o.strict, "Exit with 3 when the report is not empty");

    auto add_bench_options = [&](CLI::App* cmd) {
        cmd->add_option("--seed", o.bench.seed, "Generator seed")->capture_default_str();
        cmd->add_option("--rules", o.bench.n_rules, "Number of generated rules")->capture_default_str();
        cmd->add_option("--constants", o.bench.n_constants, "Number of constants")->capture_default_str();
        cmd->add_option("--depth", o.bench.chain_depth, "Length of recursive rule chains")->capture_default_str();
        cmd->add_flag("--no-disjointness", o.no_disjointness, "Leave out the disjointness axiom");
    };
    auto* gen_cmd = app.add_subcommand("gen", "Write a generated knowledge base");
    add_bench_options(gen_cmd);
    gen_cmd->add_option("-o,--output", o.output, "Output file (default: standard output)");

    auto* bench_cmd = app.add_subcommand("bench", "Time the pipeline on a generated knowledge base");
    add_bench_options(bench_cmd);
    bench_cmd->add_option("--queries", o.queries, "File with one query per line");
    bench_cmd->add_option("--query-count", o.query_count, "Generated queries when --queries is absent")
        ->capture_default_str();
    bench_cmd->add_option("--kb", o.kb, "Benchmark this knowledge base instead of a generated one");
    bench_cmd->add_flag("--json", o.as_json, "Structured report");
    bench_cmd->add_flag("--parallel", o.parallel, "Evaluate queries concurrently");

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n' << "run with --help for usage\n";
        return kExitUsage;
    }

    try {
        if (compile_cmd->parsed()) return cmd_compile(o, out, err);
        if (query_cmd->parsed()) return cmd_query(o, out, err);
        if (repl_cmd->parsed()) return cmd_repl(o, in, out, err);
        if (check_cmd->parsed()) return cmd_check(o, out, err);
        if (gen_cmd->parsed()) return cmd_gen(o, out);
        if (bench_cmd->parsed()) return cmd_bench(o, out);
        return kExitUsage;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitError;
    }
}

}  // namespace hmknf
