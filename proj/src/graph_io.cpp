#include "pcurv/graph_io.hpp"

#include <cmath>

#include "json.hpp"

namespace pcurv {

namespace {

using nlohmann::json;

json parse_document(std::string_view text) {
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded()) throw ParseError("invalid JSON document");
  return doc;
}

double finite_number(const json& j, const char* what) {
  if (!j.is_number()) throw ParseError(std::string(what) + " must be a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) throw ParseError(std::string(what) + " must be finite");
  return x;
}

}  // namespace

WeightedGraph parse_graph(std::string_view text) {
  const json doc = parse_document(text);
  if (!doc.is_object()) throw ParseError("graph document must be a JSON object");
  if (!doc.contains("vertices") || !doc["vertices"].is_array())
    throw ParseError("graph document needs a \"vertices\" array");

  GraphBuilder b;
  for (const json& jv : doc["vertices"]) {
    if (!jv.is_object() || !jv.contains("id") || !jv["id"].is_string())
      throw ParseError("each vertex needs a string \"id\"");
    const double mu = jv.contains("mu") ? finite_number(jv["mu"], "vertex mu") : 1.0;
    b.add_vertex(jv["id"].get<std::string>(), mu);
  }
  if (doc.contains("edges")) {
    if (!doc["edges"].is_array()) throw ParseError("\"edges\" must be an array");
    for (const json& je : doc["edges"]) {
      if (!je.is_object() || !je.contains("u") || !je.contains("v") ||
          !je["u"].is_string() || !je["v"].is_string())
        throw ParseError("each edge needs string endpoints \"u\" and \"v\"");
      const double w = je.contains("w") ? finite_number(je["w"], "edge w") : 1.0;
      const int u = b.find(je["u"].get<std::string>());
      const int v = b.find(je["v"].get<std::string>());
      if (u < 0 || v < 0) throw ParseError("edge endpoint not in vertex list");
      b.add_edge(u, v, w);
    }
  }
  return b.build();
}

std::string serialize_graph(const WeightedGraph& g) {
  json doc = json::object();
  doc["vertices"] = json::array();
  for (int v = 0; v < g.vertex_count(); ++v)
    doc["vertices"].push_back({{"id", g.label(v)}, {"mu", g.mu(v)}});
  doc["edges"] = json::array();
  for (const Edge& e : g.edges())
    doc["edges"].push_back({{"u", g.label(e.u)}, {"v", g.label(e.v)}, {"w", e.w}});
  return doc.dump(2) + "\n";
}

VertexFunction parse_vertex_function(const WeightedGraph& g, std::string_view text) {
  const json doc = parse_document(text);
  if (!doc.is_object() || !doc.contains("values") || !doc["values"].is_object())
    throw ParseError("function document needs a \"values\" object");
  VertexFunction f(g.vertex_count());
  for (const auto& [label, jv] : doc["values"].items()) {
    const int v = g.find(label);
    if (v < 0) throw ParseError("function value for unknown vertex '" + label + "'");
    f.set(v, finite_number(jv, "function value"));
  }
  return f;
}

bool graphs_equal(const WeightedGraph& a, const WeightedGraph& b) {
  if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count()) return false;
  for (int v = 0; v < a.vertex_count(); ++v) {
    const int w = b.find(a.label(v));
    if (w < 0 || a.mu(v) != b.mu(w)) return false;
  }
  for (const Edge& e : a.edges()) {
    const int u = b.find(a.label(e.u));
    const int v = b.find(a.label(e.v));
    if (b.weight(u, v) != e.w) return false;
  }
  return true;
}

}  // namespace pcurv
