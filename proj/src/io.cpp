#include "ddce/io.hpp"

#include "ddce/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace ddce {

using nlohmann::json;

namespace {

[[noreturn]] void parse_fail(const std::string& msg) { throw Error(ErrorCode::ParseError, msg); }

int as_int(const json& j, const std::string& what) {
    if (!j.is_number_integer()) parse_fail(what + " must be an integer");
    return j.get<int>();
}

double as_double(const json& j, const std::string& what) {
    if (!j.is_number()) parse_fail(what + " must be a number");
    return j.get<double>();
}

HalfEdge as_halfedge(const json& j) {
    if (!j.is_array() || j.size() != 2) parse_fail("half-edge must be a [face, slot] pair");
    return {as_int(j[0], "face"), as_int(j[1], "slot")};
}

// Values keyed by labels; ids maps label -> id.
std::vector<double> read_label_map(const json& doc, const char* key, const std::map<std::string, int>& ids,
                                   int count) {
    const json& j = doc.at(key);
    if (!j.is_object()) parse_fail(std::string(key) + " must be an object keyed by labels");
    std::vector<double> out(count, 0.0);
    std::vector<char> seen(count, 0);
    for (auto it = j.begin(); it != j.end(); ++it) {
        auto found = ids.find(it.key());
        if (found == ids.end()) parse_fail(std::string(key) + ": '" + it.key() + "' is not a canonical label");
        out[found->second] = as_double(it.value(), std::string(key) + "[" + it.key() + "]");
        seen[found->second] = 1;
    }
    for (auto& [label, id] : ids)
        if (!seen[id]) parse_fail(std::string(key) + ": missing entry for '" + label + "'");
    return out;
}

std::vector<std::pair<std::string, int>> sorted_labels(const Triangulation& T, bool vertices) {
    std::vector<std::pair<int, int>> lab;
    int n = vertices ? T.vertex_count() : T.edge_count();
    for (int i = 0; i < n; ++i) lab.push_back({vertices ? T.vertex_label(i) : T.edge_label(i), i});
    std::sort(lab.begin(), lab.end());
    std::vector<std::pair<std::string, int>> out;
    for (auto& [h, i] : lab) out.push_back({halfedge_label(h), i});
    return out;
}

std::string label_map(const std::vector<std::pair<std::string, int>>& labels, const std::vector<double>& values) {
    std::string s = "{";
    for (size_t k = 0; k < labels.size(); ++k) {
        if (k) s += ", ";
        s += json_string(labels[k].first) + ": " + json_number(values[labels[k].second]);
    }
    return s + "}";
}

} // namespace

SurfaceFile parse_surface(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        parse_fail(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) parse_fail("document must be a JSON object");
    for (const char* key : {"background", "faces", "gluing", "lengths", "radii"})
        if (!doc.contains(key)) parse_fail(std::string("missing key '") + key + "'");
    if (!doc["background"].is_string()) parse_fail("background must be a string");

    SurfaceFile f;
    f.metric.bg = background_from_string(doc["background"].get<std::string>());
    int faces = as_int(doc["faces"], "faces");
    const json& g = doc["gluing"];
    if (!g.is_array()) parse_fail("gluing must be an array");
    Gluing gluing;
    for (const json& p : g) {
        if (!p.is_array() || p.size() != 2) parse_fail("gluing entries must be pairs of half-edges");
        gluing.push_back({as_halfedge(p[0]), as_halfedge(p[1])});
    }
    f.metric.tri = Triangulation::from_gluing(faces, gluing);
    const Triangulation& T = f.metric.tri;

    std::map<std::string, int> edge_ids, vertex_ids;
    for (int e = 0; e < T.edge_count(); ++e) edge_ids[halfedge_label(T.edge_label(e))] = e;
    for (int v = 0; v < T.vertex_count(); ++v) vertex_ids[halfedge_label(T.vertex_label(v))] = v;
    f.metric.length = read_label_map(doc, "lengths", edge_ids, T.edge_count());
    f.metric.radius = read_label_map(doc, "radii", vertex_ids, T.vertex_count());
    if (doc.contains("theta_target"))
        f.theta_target = read_label_map(doc, "theta_target", vertex_ids, T.vertex_count());
    if (doc.contains("heights")) f.heights = read_label_map(doc, "heights", vertex_ids, T.vertex_count());
    return f;
}

SurfaceFile read_surface(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) parse_fail("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_surface(ss.str());
}

std::string json_number(double x) {
    if (!std::isfinite(x)) return "null";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string json_string(const std::string& s) { return json(s).dump(); }

std::string json_array(const std::vector<double>& v) {
    std::string s = "[";
    for (size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + json_number(v[i]);
    return s + "]";
}

std::string json_array(const std::vector<int>& v) {
    std::string s = "[";
    for (size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + std::to_string(v[i]);
    return s + "]";
}

std::string write_surface(const SurfaceFile& f, const JsonMembers& extra) {
    const Triangulation& T = f.metric.tri;
    auto edges = sorted_labels(T, false);
    auto verts = sorted_labels(T, true);
    std::string s = "{\n";
    s += "  \"background\": " + json_string(to_string(f.metric.bg)) + ",\n";
    s += "  \"faces\": " + std::to_string(T.face_count()) + ",\n";
    s += "  \"gluing\": [";
    auto gl = T.gluing();
    for (size_t k = 0; k < gl.size(); ++k) {
        auto& [a, b] = gl[k];
        s += (k ? ", " : "");
        s += "[[" + std::to_string(a.face) + ", " + std::to_string(a.slot) + "], [" + std::to_string(b.face) + ", " +
             std::to_string(b.slot) + "]]";
    }
    s += "],\n";
    s += "  \"lengths\": " + label_map(edges, f.metric.length) + ",\n";
    s += "  \"radii\": " + label_map(verts, f.metric.radius);
    if (f.theta_target) s += ",\n  \"theta_target\": " + label_map(verts, *f.theta_target);
    if (f.heights) s += ",\n  \"heights\": " + label_map(verts, *f.heights);
    for (auto& [k, v] : extra) s += ",\n  " + json_string(k) + ": " + v;
    s += "\n}\n";
    return s;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) parse_fail("cannot write '" + path + "'");
    out << text;
}

} // namespace ddce
