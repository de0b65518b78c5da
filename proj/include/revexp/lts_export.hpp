#pragma once

// DOT and JSON renderings of transition systems.
//
// JSON schema:
//   { "root": id,
//     "states": [ { "id": n, "term": string, "initial": bool } ],
//     "transitions": [ { "src": n, "proof": string, "ready": [string]?, "dst": n } ] }

#include "proved_lts.hpp"
#include "syntax.hpp"

#include <json.hpp>

#include <string>

namespace revexp {

enum class ExportFormat { Dot, Json };

namespace detail {

inline std::string dot_escape(const std::string& s)
{
    std::string r;
    for (char c : s) {
        if (c == '"' || c == '\\')
            r += '\\';
        r += c;
    }
    return r;
}

inline std::string edge_label(const ProofTerm& t) { return to_string(t); }
inline std::string edge_label(const BrsLabel& l) { return to_string(l.proof) + " / " + render_set(l.ready); }

inline void json_label(nlohmann::json& j, const ProofTerm& t) { j["proof"] = to_string(t); }
inline void json_label(nlohmann::json& j, const BrsLabel& l)
{
    j["proof"] = to_string(l.proof);
    j["ready"] = std::vector<std::string>(l.ready.begin(), l.ready.end());
}

} // namespace detail

template <class Term, class Label, class Hash>
std::string export_lts(const BasicLts<Term, Label, Hash>& lts, ExportFormat format, const RenderOptions& ro = {})
{
    if (format == ExportFormat::Dot) {
        std::string out = "digraph lts {\n";
        for (StateId s = 0; s < lts.size(); ++s) {
            out += "  s" + std::to_string(s) + " [label=\"" + detail::dot_escape(render(lts.states[s], ro)) + "\"";
            if (s == lts.root)
                out += ", shape=box";
            out += "];\n";
        }
        for (const auto& t : lts.transitions)
            out += "  s" + std::to_string(t.src) + " -> s" + std::to_string(t.dst) + " [label=\"" +
                   detail::dot_escape(detail::edge_label(t.label)) + "\"];\n";
        out += "}\n";
        return out;
    }
    nlohmann::json j;
    j["root"] = lts.root;
    j["states"] = nlohmann::json::array();
    for (StateId s = 0; s < lts.size(); ++s)
        j["states"].push_back({{"id", s}, {"term", render(lts.states[s], ro)}, {"initial", lts.initial_flags[s]}});
    j["transitions"] = nlohmann::json::array();
    for (const auto& t : lts.transitions) {
        nlohmann::json e;
        e["src"] = t.src;
        detail::json_label(e, t.label);
        e["dst"] = t.dst;
        j["transitions"].push_back(std::move(e));
    }
    return j.dump(2) + "\n";
}

} // namespace revexp
