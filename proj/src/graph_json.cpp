#include "schreier/graph_json.hpp"

#include "schreier/error.hpp"

#include <unordered_map>

namespace schreier {

using nlohmann::json;

json graph_to_json(const FiniteGraph& g) {
    const Ball b = explore(g);
    json edges = json::array();
    for (int v = 0; v < b.size(); ++v) {
        for (Letter l = 0; l < 2 * b.m; l += 2) {
            const int w = b.at(v, l);
            if (w < 0) continue;
            edges.push_back({{"from", b.names[v]}, {"label", std::string(1, letter_symbol(l))}, {"to", b.names[w]}});
        }
    }
    return {{"m", g.rank()}, {"basepoint", g.basepoint()}, {"edges", std::move(edges)}};
}

json ball_to_json(const Ball& b) {
    json edges = json::array();
    json stems = json::array();
    for (int v = 0; v < b.size(); ++v) {
        for (Letter l = 0; l < 2 * b.m; ++l) {
            const int w = b.at(v, l);
            if (w == kStem) {
                stems.push_back({{"from", b.names[v]}, {"label", std::string(1, letter_symbol(l))}});
            } else if (w >= 0 && is_positive(l)) {
                edges.push_back({{"from", b.names[v]}, {"label", std::string(1, letter_symbol(l))}, {"to", b.names[w]}});
            }
        }
    }
    return {{"m", b.m},
            {"basepoint", b.names.front()},
            {"radius", b.radius},
            {"edges", std::move(edges)},
            {"stems", std::move(stems)}};
}

FiniteGraph graph_from_json(const json& j) {
    if (!j.is_object()) throw DomainError("graph JSON must be an object");
    // A report that embeds the graph, such as the output of fold.
    if (!j.contains("edges") && j.contains("graph")) return graph_from_json(j["graph"]);
    if (!j.contains("m") || !j["m"].is_number_integer()) throw DomainError("graph JSON needs an integer \"m\"");
    const int m = j["m"].get<int>();
    const Alphabet alphabet(m);
    if (!j.contains("basepoint") || !j["basepoint"].is_string()) {
        throw DomainError("graph JSON needs a string \"basepoint\"");
    }
    if (!j.contains("edges") || !j["edges"].is_array()) throw DomainError("graph JSON needs an \"edges\" array");

    std::vector<std::string> names;
    std::unordered_map<std::string, int> index;
    auto vertex = [&](const std::string& name) {
        auto [it, inserted] = index.emplace(name, static_cast<int>(names.size()));
        if (inserted) names.push_back(name);
        return it->second;
    };
    vertex(j["basepoint"].get<std::string>());
    struct Raw {
        int from;
        Letter label;
        int to;
    };
    std::vector<Raw> raw;
    std::size_t position = 0;
    for (const json& e : j["edges"]) {
        if (!e.is_object() || !e.contains("from") || !e.contains("label") || !e.contains("to") ||
            !e["from"].is_string() || !e["label"].is_string() || !e["to"].is_string()) {
            throw ParseError("edge must have string fields from, label, to", position);
        }
        const std::string label = e["label"].get<std::string>();
        if (label.size() != 1) throw ParseError("edge label must be a single letter", position);
        const Letter l = alphabet.parse_letter(label[0], position);
        if (!is_positive(l)) throw ParseError("edge labels must be positive letters", position);
        const int from = vertex(e["from"].get<std::string>());
        const int to = vertex(e["to"].get<std::string>());
        raw.push_back({from, l, to});
        ++position;
    }
    const int k = 2 * m;
    std::vector<int> trans(names.size() * k, -1);
    auto set = [&](int v, Letter l, int w, std::size_t edge) {
        int& slot = trans[static_cast<std::size_t>(v) * k + l];
        if (slot >= 0 && slot != w) {
            throw ParseError("vertex '" + names[v] + "' has two " + letter_symbol(l) + "-transitions", edge);
        }
        slot = w;
    };
    for (std::size_t i = 0; i < raw.size(); ++i) {
        set(raw[i].from, raw[i].label, raw[i].to, i);
        set(raw[i].to, inverse(raw[i].label), raw[i].from, i);
    }
    return FiniteGraph(m, std::move(names), std::move(trans), 0);
}

FiniteGraph graph_from_json_text(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid graph JSON: ") + e.what(), e.byte);
    }
    return graph_from_json(j);
}

}  // namespace schreier
