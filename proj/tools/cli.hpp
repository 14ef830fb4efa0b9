#ifndef REDUP_TOOLS_CLI_HPP
#define REDUP_TOOLS_CLI_HPP

#include <cstdlib>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "redup/redup.hpp"

namespace redup::cli {

// Exit statuses.
inline constexpr int kOk = 0;
inline constexpr int kRejected = 1; // parse rejected or empty language
inline constexpr int kUsage = 2;    // usage, IO, syntax or compile error

struct Options {
    std::string grammar;
    std::vector<std::string> positionals;
    std::string engine;
    bool bare = false;
    // compile / dump-dot
    std::string output;
    std::string mode = "minimize";
    // generate
    bool raw = false;
    std::size_t max = 100;
    std::size_t max_len = 64;
};

namespace detail {

inline dsl::Engine engine_of(const std::string& name) {
    if (name == "lazy") return dsl::Engine::lazy;
    if (name == "eager" || name.empty()) return dsl::Engine::eager;
    throw CLI::ValidationError("engine", "must be 'lazy' or 'eager', got '" + name + "'");
}

inline std::string default_engine() {
    const char* env = std::getenv("REDUP_ENGINE");
    return env ? env : "eager";
}

inline Fsa compile_entry(const dsl::Grammar& g, const std::string& entry, const Options& o) {
    dsl::Compiler c(g, engine_of(o.engine));
    return c.compile_entry(entry, o.bare);
}

inline std::string format_path(const Alphabet& alpha, const LabelPath& path) {
    std::string s;
    for (std::size_t i = 0; i < path.size(); ++i) {
        if (i) s += ' ';
        s += alpha.format_set(path[i].symbols);
    }
    return s;
}

inline NormalizeMode mode_of(const std::string& m) {
    if (m == "trim") return NormalizeMode::trim;
    if (m == "determinize") return NormalizeMode::determinize;
    return NormalizeMode::minimize;
}

inline int write_to(const std::string& path, std::ostream& out, std::ostream& err, auto&& writer) {
    if (path.empty() || path == "-") {
        writer(out);
        return kOk;
    }
    std::ofstream file(path);
    if (!file) {
        err << "error: cannot write '" << path << "'\n";
        return kUsage;
    }
    writer(file);
    return kOk;
}

inline int cmd_compile(const Options& o, std::ostream& out, std::ostream& err) {
    dsl::Grammar g = dsl::load_grammar(o.grammar);
    std::string entry = o.positionals.empty() ? "" : o.positionals.front();
    Fsa a = normalize(compile_entry(g, entry, o), mode_of(o.mode));
    int rc = write_to(o.output, out, err, [&](std::ostream& s) { write_dump(s, a); });
    if (rc != kOk) return rc;
    std::ostream& info = (o.output.empty() || o.output == "-") ? err : out;
    info << "states " << a.num_states() << " arcs " << a.num_arcs() << '\n';
    return kOk;
}

inline int cmd_generate(const Options& o, std::ostream& out, std::ostream& err) {
    dsl::Grammar g = dsl::load_grammar(o.grammar);
    std::string entry = o.positionals.empty() ? "" : o.positionals.front();
    Fsa closed = close(compile_entry(g, entry, o));
    if (is_empty(closed)) {
        err << "empty language\n";
        return kRejected;
    }
    bool truncated = false;
    if (o.raw) {
        // Minimal form, so distinct paths carry distinct label sequences.
        auto paths = label_paths(minimize(closed), o.max_len, o.max, &truncated);
        std::vector<std::string> lines;
        for (const auto& p : paths) lines.push_back(format_path(*g.alphabet, p));
        std::sort(lines.begin(), lines.end());
        lines.erase(std::unique(lines.begin(), lines.end()), lines.end());
        for (const auto& l : lines) out << l << '\n';
    } else {
        auto forms = surface_forms(closed, o.max_len, o.max);
        truncated = forms.truncated;
        for (const auto& f : forms.forms) out << f << '\n';
    }
    if (truncated) err << "warning: output truncated (raise --max or --max-len)\n";
    return kOk;
}

inline int cmd_parse(const Options& o, std::ostream& out, std::ostream& err) {
    if (o.positionals.empty() || o.positionals.size() > 2) {
        err << "error: parse expects GRAMMAR [ENTRY] SURFACE\n";
        return kUsage;
    }
    dsl::Grammar g = dsl::load_grammar(o.grammar);
    std::string entry = o.positionals.size() == 2 ? o.positionals.front() : "";
    const std::string& surface = o.positionals.back();
    std::vector<std::size_t> tokens;
    try {
        tokens = g.alphabet->tokenize(surface);
    } catch (const InventoryError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
    Fsa input = prepare_parse_input(g.alphabet, tokens);
    dsl::Compiler c(g, engine_of(o.engine));
    dsl::Value grammar = c.entry_value(entry, o.bare);
    Fsa analysis = std::holds_alternative<LazyPtr>(grammar)
                       ? trim(materialize(lazy_close(lazy_intersect(std::get<LazyPtr>(grammar), input))))
                       : close(intersect_open(c.to_automaton(grammar), input));
    bool accepted = !is_empty(analysis);
    out << (accepted ? "ACCEPT" : "REJECT") << '\n';
    return accepted ? kOk : kRejected;
}

inline int cmd_dot(const Options& o, std::ostream& out, std::ostream& err) {
    dsl::Grammar g = dsl::load_grammar(o.grammar);
    std::string entry = o.positionals.empty() ? "" : o.positionals.front();
    Fsa a = normalize(compile_entry(g, entry, o), mode_of(o.mode));
    return write_to(o.output, out, err,
                    [&](std::ostream& s) { write_dot(s, a, entry.empty() ? "lexicon" : entry); });
}

} // namespace detail

/// Runs the command line; returns the process exit status.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Reduplication as automaton intersection: compile grammars, generate and parse word forms.",
                 "redup"};
    app.set_config("--config", "", "Read options from a TOML/INI file");
    app.require_subcommand(1);
    Options o;
    o.engine = detail::default_engine();

    auto common = [&](CLI::App* sub, const char* entry_help) {
        sub->add_option("grammar", o.grammar, "Grammar file")->required()->check(CLI::ExistingFile);
        sub->add_option("args", o.positionals, entry_help);
        sub->add_option("--engine", o.engine, "lazy or eager (default from REDUP_ENGINE)")
            ->check(CLI::IsMember({"lazy", "eager"}));
        sub->add_flag_callback("--lazy", [&] { o.engine = "lazy"; }, "Use the lazy engine");
        sub->add_flag_callback("--eager", [&] { o.engine = "eager"; }, "Use the eager engine");
        sub->add_flag("--bare", o.bare, "Do not apply the grammar's derivation to lexicon entries");
    };

    auto* compile = app.add_subcommand("compile", "Compile an entry point and write its automaton dump");
    common(compile, "Entry point (macro name or expression); default: whole lexicon");
    compile->add_option("-o,--output", o.output, "Dump file (default: standard output)");
    compile->add_option("--mode", o.mode, "Normalization")->check(CLI::IsMember({"trim", "determinize", "minimize"}));

    auto* generate = app.add_subcommand("generate", "List the word forms of an entry point");
    common(generate, "Entry point; default: whole lexicon");
    generate->add_flag_callback("--raw", [&] { o.raw = true; }, "Print symbol paths including repeat and skip");
    generate->add_flag_callback("--surface", [&] { o.raw = false; }, "Print surface spellings (default)");
    generate->add_option("--max", o.max, "Maximum number of forms")->check(CLI::PositiveNumber);
    generate->add_option("--max-len", o.max_len, "Maximum path length")->check(CLI::PositiveNumber);

    auto* parse = app.add_subcommand("parse", "Accept or reject a surface string");
    common(parse, "[ENTRY] SURFACE");

    auto* dot = app.add_subcommand("dump-dot", "Write an entry point as a Graphviz graph");
    common(dot, "Entry point; default: whole lexicon");
    dot->add_option("-o,--output", o.output, "Output file (default: standard output)");
    dot->add_option("--mode", o.mode, "Normalization")->check(CLI::IsMember({"trim", "determinize", "minimize"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }

    try {
        if (compile->parsed()) return detail::cmd_compile(o, out, err);
        if (generate->parsed()) return detail::cmd_generate(o, out, err);
        if (parse->parsed()) return detail::cmd_parse(o, out, err);
        if (dot->parsed()) return detail::cmd_dot(o, out, err);
    } catch (const ParseError& e) {
        err << o.grammar << ": error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}

} // namespace redup::cli

#endif // REDUP_TOOLS_CLI_HPP
