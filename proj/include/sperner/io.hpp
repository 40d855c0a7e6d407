#pragma once

#include <cstddef>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "sperner/error.hpp"
#include "sperner/graph.hpp"

// Graph files are JSON:
//   { "vertices": ["s", "v"], "source": "s",
//     "edges": [ {"id": "e1", "from": "s", "to": "v", "length": "1.5"}, ... ] }
// Lengths are positive decimal strings.

namespace sperner {

namespace io_detail {

inline std::string line_column(const std::string& text, std::size_t byte) {
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

inline const nlohmann::json& field(const nlohmann::json& obj, const char* key,
                                   const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end()) throw ParseError(where + ": missing field \"" + key + "\"");
    return *it;
}

inline std::string string_field(const nlohmann::json& obj, const char* key,
                                const std::string& where) {
    const auto& value = field(obj, key, where);
    if (!value.is_string()) throw ParseError(where + "." + key + ": expected a string");
    return value.get<std::string>();
}

}  // namespace io_detail

inline MetricDigraph parse_graph_json(const std::string& text, const std::string& origin = "<input>") {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(origin + ": invalid JSON at " + io_detail::line_column(text, e.byte) +
                         ": " + e.what());
    }
    if (!doc.is_object()) throw ParseError(origin + ": top level must be an object");

    const auto& vertices_json = io_detail::field(doc, "vertices", origin);
    if (!vertices_json.is_array()) throw ParseError(origin + ".vertices: expected an array");
    std::vector<std::string> vertices;
    for (std::size_t i = 0; i < vertices_json.size(); ++i) {
        if (!vertices_json[i].is_string())
            throw ParseError(origin + ".vertices[" + std::to_string(i) + "]: expected a string");
        vertices.push_back(vertices_json[i].get<std::string>());
    }
    const std::string source = io_detail::string_field(doc, "source", origin);

    const auto& edges_json = io_detail::field(doc, "edges", origin);
    if (!edges_json.is_array()) throw ParseError(origin + ".edges: expected an array");
    std::vector<EdgeSpec> edges;
    for (std::size_t i = 0; i < edges_json.size(); ++i) {
        const std::string where = origin + ".edges[" + std::to_string(i) + "]";
        const auto& e = edges_json[i];
        if (!e.is_object()) throw ParseError(where + ": expected an object");
        EdgeSpec spec{io_detail::string_field(e, "id", where), io_detail::string_field(e, "from", where),
                      io_detail::string_field(e, "to", where),
                      io_detail::string_field(e, "length", where)};
        try {
            parse_length(spec.length);
        } catch (const StructuralError& err) {
            throw ParseError(where + ".length: " + err.what());
        }
        edges.push_back(std::move(spec));
    }

    try {
        return MetricDigraph(std::move(vertices), edges, source);
    } catch (const StructuralError& err) {
        throw ParseError(origin + ": " + err.what());
    }
}

inline MetricDigraph read_graph_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path + ": cannot open file");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_graph_json(text, path);
}

inline nlohmann::ordered_json graph_to_json(const MetricDigraph& g) {
    nlohmann::ordered_json doc;
    doc["vertices"] = nlohmann::ordered_json::array();
    for (const auto& v : g.vertex_ids()) doc["vertices"].push_back(v);
    doc["source"] = g.vertex_id(g.source());
    doc["edges"] = nlohmann::ordered_json::array();
    for (const Edge& e : g.edges()) {
        nlohmann::ordered_json edge;
        edge["id"] = e.id;
        edge["from"] = g.vertex_id(e.tail);
        edge["to"] = g.vertex_id(e.head);
        edge["length"] = e.length_text;
        doc["edges"].push_back(std::move(edge));
    }
    return doc;
}

inline std::string write_graph_json(const MetricDigraph& g) { return graph_to_json(g).dump(2) + "\n"; }

inline void write_graph_file(const MetricDigraph& g, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError(path + ": cannot open for writing");
    out << write_graph_json(g);
    if (!out) throw ParseError(path + ": write failed");
}

}  // namespace sperner
