#ifndef REDUP_IO_HPP
#define REDUP_IO_HPP

#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "redup/fsa.hpp"

namespace redup {

// Dump format, one item per line:
//
//   redup-fsa 1
//   inventory a:V t:C ...
//   class low a
//   states N
//   start S
//   finals F1 F2 ...
//   arc FROM TO P|C LABEL
//
// LABEL is a bare symbol term or `{term term ...}` as produced by
// Alphabet::format_set. Lines starting with `#` are comments.

inline void write_dump(std::ostream& out, const Fsa& a) {
    const Alphabet& alpha = a.alphabet();
    out << "redup-fsa 1\n";
    out << "inventory";
    for (const auto& seg : alpha.segments())
        out << ' ' << seg.token << ':' << (seg.cls == SegmentClass::vowel ? 'V' : 'C');
    out << '\n';
    for (const auto& [name, members] : alpha.classes()) {
        out << "class " << name;
        for (auto m : members) out << ' ' << alpha.segments()[m].token;
        out << '\n';
    }
    out << "states " << a.num_states() << '\n';
    out << "start " << a.start() << '\n';
    out << "finals";
    for (StateId f : a.finals()) out << ' ' << f;
    out << '\n';
    for (StateId q = 0; q < a.num_states(); ++q)
        for (const auto& arc : a.arcs(q))
            out << "arc " << q << ' ' << arc.target << ' ' << (arc.label.producer ? 'P' : 'C') << ' '
                << alpha.format_set(arc.label.symbols) << '\n';
}

inline std::string to_dump(const Fsa& a) {
    std::ostringstream out;
    write_dump(out, a);
    return out.str();
}

/// Parses a dump. When `alphabet` is given the dump's inventory must match
/// it and the result shares that alphabet object.
inline Fsa read_dump(std::istream& in, AlphabetPtr alphabet = nullptr) {
    std::string line;
    std::size_t lineno = 0;
    auto next = [&]() -> bool {
        while (std::getline(in, line)) {
            ++lineno;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty() || line[0] == '#') continue;
            return true;
        }
        return false;
    };
    if (!next() || line != "redup-fsa 1") throw ParseError(lineno, "missing 'redup-fsa 1' header");

    Alphabet::Builder builder;
    std::optional<Fsa> fsa;
    AlphabetPtr built;
    auto need_fsa = [&]() -> Fsa& {
        if (!fsa) throw ParseError(lineno, "'states' must precede start/finals/arc lines");
        return *fsa;
    };
    while (next()) {
        std::istringstream ls(line);
        std::string kw;
        ls >> kw;
        try {
            if (kw == "inventory") {
                std::string item;
                while (ls >> item) {
                    auto colon = item.rfind(':');
                    if (colon == std::string::npos || colon + 2 != item.size())
                        throw ParseError(lineno, "malformed inventory item '" + item + "'");
                    char c = item.back();
                    if (c != 'V' && c != 'C') throw ParseError(lineno, "segment class must be V or C");
                    builder.segment(item.substr(0, colon), c == 'V' ? SegmentClass::vowel : SegmentClass::consonant);
                }
            } else if (kw == "class") {
                std::string name, tok;
                ls >> name;
                std::vector<std::string> members;
                while (ls >> tok) members.push_back(tok);
                builder.char_class(name, members);
            } else if (kw == "states") {
                std::size_t n = 0;
                if (!(ls >> n) || n == 0) throw ParseError(lineno, "bad state count");
                built = builder.build();
                if (alphabet) {
                    if (!(*alphabet == *built)) throw ParseError(lineno, "dump inventory differs from the expected alphabet");
                    built = alphabet;
                }
                fsa.emplace(built, n);
            } else if (kw == "start") {
                StateId s;
                if (!(ls >> s)) throw ParseError(lineno, "bad start state");
                need_fsa().set_start(s);
            } else if (kw == "finals") {
                StateId f;
                while (ls >> f) need_fsa().set_final(f);
            } else if (kw == "arc") {
                StateId from, to;
                std::string pc;
                if (!(ls >> from >> to >> pc) || (pc != "P" && pc != "C"))
                    throw ParseError(lineno, "malformed arc line");
                std::string rest;
                std::getline(ls, rest);
                auto b = rest.find_first_not_of(' ');
                rest = b == std::string::npos ? "" : rest.substr(b);
                Fsa& f = need_fsa();
                f.add_arc(from, to, f.alphabet().parse_set(rest), pc == "P");
            } else {
                throw ParseError(lineno, "unknown keyword '" + kw + "'");
            }
        } catch (const ParseError&) {
            throw;
        } catch (const Error& e) {
            throw ParseError(lineno, e.what());
        }
    }
    if (!fsa) throw ParseError(lineno, "dump has no 'states' line");
    return std::move(*fsa);
}

inline Fsa from_dump(const std::string& text, AlphabetPtr alphabet = nullptr) {
    std::istringstream in(text);
    return read_dump(in, std::move(alphabet));
}

/// Graphviz export; producer arcs are drawn bold, consumer arcs dashed.
inline void write_dot(std::ostream& out, const Fsa& a, const std::string& name = "fsa") {
    const Alphabet& alpha = a.alphabet();
    out << "digraph \"" << name << "\" {\n";
    out << "  rankdir=LR;\n";
    out << "  node [shape=circle];\n";
    out << "  __start [shape=point];\n";
    out << "  __start -> " << a.start() << ";\n";
    for (StateId q = 0; q < a.num_states(); ++q)
        if (a.is_final(q)) out << "  " << q << " [shape=doublecircle];\n";
    for (StateId q = 0; q < a.num_states(); ++q)
        for (const auto& arc : a.arcs(q)) {
            std::string label = alpha.format_set(arc.label.symbols);
            std::string escaped;
            for (char c : label) {
                if (c == '"' || c == '\\') escaped += '\\';
                escaped += c;
            }
            out << "  " << q << " -> " << arc.target << " [label=\"" << escaped << "\""
                << (arc.label.producer ? ", style=bold" : ", style=dashed") << "];\n";
        }
    out << "}\n";
}

} // namespace redup

#endif // REDUP_IO_HPP
