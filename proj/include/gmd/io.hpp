#pragma once

// Graph serialization and LETTER dataset ingestion.
//
// Native format (UTF-8 JSON):
//   {"d": 2, "vertices": [[x, y], ...], "edges": [[i, j], ...]}
// 0-based indices, i < j. Vertex order is preserved and defines GMD order.
//
// GXL (read only): <node id> elements with float attributes "x" and "y",
// <edge from to> elements; node document order defines vertex order.
//
// Dataset layout: <root>/<LOW|MED|HIGH>/ holding *.gxl graphs and *.cxl class
// files (<print file="..." class="A"/>), and a prototype directory with one
// native-format file per letter named <letter>.json.

#include <algorithm>
#include <array>
#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include <nlohmann/json.hpp>

#include "gmd/error.hpp"
#include "gmd/geometry.hpp"

namespace gmd {

// ---------------------------------------------------------------------------
// Native JSON

inline GeometricGraph read_json_graph(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw DataError(std::string("malformed graph document: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("d") || !doc.contains("vertices") || !doc.contains("edges"))
        throw DataError("malformed graph document: expected keys d, vertices, edges");
    const auto& jd = doc["d"];
    if (!jd.is_number_integer() || jd.get<long long>() < 1)
        throw DataError("malformed graph document: d must be a positive integer");
    const auto dim = static_cast<std::size_t>(jd.get<long long>());

    const auto& jv = doc["vertices"];
    const auto& je = doc["edges"];
    if (!jv.is_array() || !je.is_array()) throw DataError("malformed graph document: vertices/edges must be arrays");

    std::vector<Point> verts;
    verts.reserve(jv.size());
    for (const auto& p : jv) {
        if (!p.is_array() || p.size() != dim)
            throw DataError("malformed graph document: vertex must be an array of d numbers");
        std::vector<double> c;
        c.reserve(dim);
        for (const auto& x : p) {
            if (!x.is_number()) throw DataError("non-finite coordinate");
            c.push_back(x.get<double>());
        }
        verts.emplace_back(std::move(c));
    }

    std::vector<Edge> edges;
    edges.reserve(je.size());
    for (const auto& e : je) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
            throw DataError("malformed graph document: edge must be a pair of integers");
        const long long a = e[0].get<long long>();
        const long long b = e[1].get<long long>();
        if (a < 0 || b < 0 || static_cast<std::size_t>(a) >= verts.size() ||
            static_cast<std::size_t>(b) >= verts.size())
            throw DataError("bad edge index [" + std::to_string(a) + "," + std::to_string(b) + "]");
        edges.emplace_back(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
    }
    GeometricGraph g(dim, std::move(verts), std::move(edges));
    require_valid_structure(g);
    return g;
}

inline std::string write_json_graph(const GeometricGraph& g) {
    // nlohmann prints doubles in shortest round-trip form.
    auto num = [](double x) { return nlohmann::json(x).dump(); };
    std::string out = "{\"d\": " + std::to_string(g.dim()) + ", \"vertices\": [";
    for (std::size_t i = 0; i < g.vertex_count(); ++i) {
        out += i ? ",\n  [" : "\n  [";
        const auto c = g.vertex(i).coords();
        for (std::size_t k = 0; k < c.size(); ++k) {
            if (k) out += ", ";
            out += num(c[k]);
        }
        out += ']';
    }
    out += g.vertex_count() ? "\n], \"edges\": [" : "], \"edges\": [";
    for (std::size_t k = 0; k < g.edge_count(); ++k) {
        if (k) out += ", ";
        out += '[' + std::to_string(g.edges()[k].a) + ", " + std::to_string(g.edges()[k].b) + ']';
    }
    out += "]}\n";
    return out;
}

// ---------------------------------------------------------------------------
// GXL

namespace detail {

inline std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

inline double parse_float(const std::string& raw, const std::string& what) {
    const std::string s = trim(raw);
    if (s.empty()) throw DataError("non-float value for " + what);
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size() || errno == ERANGE || !std::isfinite(v))
        throw DataError("non-float value for " + what + ": '" + s + "'");
    return v;
}

inline boost::property_tree::ptree parse_xml(std::string_view text) {
    boost::property_tree::ptree tree;
    std::istringstream is{std::string(text)};
    try {
        boost::property_tree::read_xml(is, tree);
    } catch (const boost::property_tree::xml_parser_error& e) {
        throw DataError(std::string("malformed XML: ") + e.what());
    }
    return tree;
}

// First descendant (depth-first, document order) with the given tag.
inline const boost::property_tree::ptree* find_child(const boost::property_tree::ptree& t, const std::string& tag) {
    for (const auto& [key, child] : t) {
        if (key == tag) return &child;
        if (const auto* hit = find_child(child, tag)) return hit;
    }
    return nullptr;
}

}  // namespace detail

inline GeometricGraph read_gxl_letter(std::string_view text) {
    const auto tree = detail::parse_xml(text);
    const auto* graph = detail::find_child(tree, "graph");
    if (!graph) throw DataError("GXL document has no <graph> element");

    std::vector<Point> verts;
    std::unordered_map<std::string, std::size_t> index;
    std::vector<std::pair<std::string, std::string>> raw_edges;

    for (const auto& [key, node] : *graph) {
        if (key == "node") {
            const std::string id = node.get<std::string>("<xmlattr>.id", "");
            if (id.empty()) throw DataError("GXL node without id");
            std::optional<double> x, y;
            for (const auto& [akey, attr] : node) {
                if (akey != "attr") continue;
                const std::string name = attr.get<std::string>("<xmlattr>.name", "");
                if (name != "x" && name != "y") continue;
                const auto f = attr.get_child_optional("float");
                if (!f) throw DataError("GXL attribute " + name + " of node " + id + " is not a float");
                const double v = detail::parse_float(f->data(), "attribute " + name + " of node " + id);
                (name == "x" ? x : y) = v;
            }
            if (!x) throw DataError("GXL node " + id + " is missing attribute x");
            if (!y) throw DataError("GXL node " + id + " is missing attribute y");
            if (!index.emplace(id, verts.size()).second) throw DataError("duplicate GXL node id " + id);
            verts.push_back(Point{*x, *y});
        } else if (key == "edge") {
            raw_edges.emplace_back(node.get<std::string>("<xmlattr>.from", ""),
                                   node.get<std::string>("<xmlattr>.to", ""));
        }
    }

    std::vector<Edge> edges;
    std::set<Edge> seen;
    for (const auto& [from, to] : raw_edges) {
        const auto a = index.find(from);
        const auto b = index.find(to);
        if (a == index.end() || b == index.end())
            throw DataError("GXL edge references unknown node (" + from + " -> " + to + ")");
        if (a->second == b->second) throw DataError("GXL self-loop at node " + from);
        // Undirected graphs sometimes list both orientations; keep one.
        const Edge e(a->second, b->second);
        if (seen.insert(e).second) edges.push_back(e);
    }
    return {2, std::move(verts), std::move(edges)};
}

// ---------------------------------------------------------------------------
// Files

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::filesystem::path& path, std::string_view text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write " + path.string());
    out << text;
}

// Native JSON, or GXL when the extension is .gxl (case-insensitive).
inline GeometricGraph load_graph(const std::filesystem::path& path) {
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    const std::string text = read_file(path);
    try {
        return ext == ".gxl" ? read_gxl_letter(text) : read_json_graph(text);
    } catch (const DataError& e) {
        throw DataError(path.string() + ": " + e.what());
    }
}

// ---------------------------------------------------------------------------
// LETTER dataset

inline constexpr std::string_view kLetters = "AEFHIKLMNTVWXYZ";

inline bool is_letter_label(char c) { return kLetters.find(c) != std::string_view::npos; }

inline std::size_t letter_index(char c) {
    const auto k = kLetters.find(c);
    if (k == std::string_view::npos) throw DataError(std::string("not a LETTER class: ") + c);
    return k;
}

enum class Distortion { Low, Med, High };

inline std::string to_string(Distortion d) {
    switch (d) {
        case Distortion::Low: return "LOW";
        case Distortion::Med: return "MED";
        case Distortion::High: return "HIGH";
    }
    return {};
}

inline Distortion parse_distortion(std::string_view s) {
    std::string up(s);
    std::transform(up.begin(), up.end(), up.begin(), [](unsigned char c) { return std::toupper(c); });
    if (up == "LOW") return Distortion::Low;
    if (up == "MED") return Distortion::Med;
    if (up == "HIGH") return Distortion::High;
    throw DataError("unknown distortion level '" + std::string(s) + "'");
}

struct LetterRecord {
    GeometricGraph graph;
    char label = 'A';
    Distortion distortion = Distortion::Low;
    std::string source_id;
};

// (file, class) entries of a CXL class file, in document order.
inline std::vector<std::pair<std::string, std::string>> read_cxl_classes(std::string_view text) {
    const auto tree = detail::parse_xml(text);
    std::vector<std::pair<std::string, std::string>> out;
    auto walk = [&](auto&& self, const boost::property_tree::ptree& t) -> void {
        for (const auto& [key, child] : t) {
            if (key == "print") {
                const auto file = child.template get<std::string>("<xmlattr>.file", "");
                const auto cls = child.template get<std::string>("<xmlattr>.class", "");
                if (file.empty() || cls.empty()) throw DataError("CXL <print> without file or class");
                out.emplace_back(file, cls);
            } else if (key != "<xmlattr>") {
                self(self, child);
            }
        }
    };
    walk(walk, tree);
    return out;
}

// Every graph listed in the level directory's *.cxl files, sorted by source id.
inline std::vector<LetterRecord> load_letter_level(const std::filesystem::path& dir, Distortion level) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(dir)) throw DataError("not a directory: " + dir.string());
    std::vector<fs::path> class_files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        std::string ext = entry.path().extension().string();
        std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
        if (entry.is_regular_file() && ext == ".cxl") class_files.push_back(entry.path());
    }
    if (class_files.empty()) throw DataError("no .cxl class files in " + dir.string());
    std::sort(class_files.begin(), class_files.end());

    std::map<std::string, char> labels;
    for (const auto& cf : class_files) {
        for (const auto& [file, cls] : read_cxl_classes(read_file(cf))) {
            if (cls.size() != 1 || !is_letter_label(cls[0]))
                throw DataError(cf.string() + ": class '" + cls + "' is not one of the 15 letters");
            const auto [it, fresh] = labels.emplace(file, cls[0]);
            if (!fresh && it->second != cls[0]) throw DataError("conflicting classes for " + file);
        }
    }

    std::vector<LetterRecord> out;
    out.reserve(labels.size());
    for (const auto& [file, label] : labels) {
        LetterRecord r;
        r.graph = load_graph(dir / file);
        r.label = label;
        r.distortion = level;
        r.source_id = fs::path(file).stem().string();
        out.push_back(std::move(r));
    }
    return out;
}

// Prototype graphs indexed like kLetters.
using PrototypeSet = std::array<GeometricGraph, 15>;

inline PrototypeSet load_prototypes(const std::filesystem::path& dir) {
    PrototypeSet out;
    for (std::size_t k = 0; k < kLetters.size(); ++k) {
        const auto path = dir / (std::string(1, kLetters[k]) + ".json");
        if (!std::filesystem::exists(path))
            throw DataError(std::string("missing prototype for letter ") + kLetters[k] + " (" + path.string() + ")");
        out[k] = load_graph(path);
    }
    return out;
}

}  // namespace gmd
