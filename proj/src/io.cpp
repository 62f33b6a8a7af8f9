#include "sagraph/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "sagraph/error.hpp"

namespace sagraph {

namespace {

void require_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw InputError(where + " must be an object");
  for (const auto& [key, value] : j.items()) {
    if (!allowed.count(key)) throw InputError("unknown key '" + key + "' in " + where);
  }
}

double number(const json& j, const std::string& key, const std::string& where) {
  if (!j.contains(key)) throw InputError("missing '" + key + "' in " + where);
  if (!j.at(key).is_number()) throw InputError("'" + key + "' in " + where + " must be a number");
  return j.at(key).get<double>();
}

std::string text(const json& j, const std::string& key, const std::string& where) {
  if (!j.contains(key)) throw InputError("missing '" + key + "' in " + where);
  if (!j.at(key).is_string()) throw InputError("'" + key + "' in " + where + " must be a string");
  return j.at(key).get<std::string>();
}

}  // namespace

json row_formula_to_json(const RowFormula& f) {
  json out = json::array();
  for (const auto& t : f.terms) out.push_back({{"coef", t.coef}, {"exponent", t.exponent}, {"shift", t.shift}});
  return out;
}

RowFormula row_formula_from_json(const json& j) {
  if (!j.is_array()) throw InputError("row formula must be an array of terms");
  RowFormula f;
  for (const auto& t : j) {
    require_keys(t, {"coef", "exponent", "shift"}, "formula term");
    PowerTerm term;
    term.coef = number(t, "coef", "formula term");
    term.exponent = number(t, "exponent", "formula term");
    if (t.contains("shift")) {
      if (!t.at("shift").is_number_integer()) throw InputError("formula shift must be an integer");
      term.shift = t.at("shift").get<int>();
    }
    f.terms.push_back(term);
  }
  return f;
}

json family_to_json(const LayeredFamilySpec& spec) {
  json out;
  out["kind"] = to_string(spec.kind);
  switch (spec.kind) {
    case FamilyKind::Triangular:
      out["alpha"] = spec.alpha;
      out["beta"] = spec.beta;
      out["holonomy"] = spec.holonomy;
      break;
    case FamilyKind::Bipartite: break;
    case FamilyKind::Path:
      out["b_coef"] = spec.b_coef;
      out["b_exp"] = spec.b_exp;
      out["mu_coef"] = spec.mu_coef;
      out["mu_exp"] = spec.mu_exp;
      break;
  }
  out["potential"] = row_formula_to_json(spec.potential);
  if (spec.q) out["q"] = row_formula_to_json(*spec.q);
  return out;
}

LayeredFamilySpec family_from_json(const json& j) {
  require_keys(j, {"kind", "alpha", "beta", "holonomy", "b_coef", "b_exp", "mu_coef", "mu_exp",
                   "potential", "q"},
               "family");
  const FamilyKind kind = family_kind_from_string(text(j, "kind", "family"));
  LayeredFamilySpec spec;
  switch (kind) {
    case FamilyKind::Triangular:
      spec = LayeredFamilySpec::triangular(number(j, "alpha", "family"), number(j, "beta", "family"));
      if (j.contains("holonomy")) spec.holonomy = number(j, "holonomy", "family");
      break;
    case FamilyKind::Bipartite: spec = LayeredFamilySpec::bipartite(); break;
    case FamilyKind::Path:
      spec = LayeredFamilySpec::path(number(j, "b_coef", "family"), number(j, "b_exp", "family"),
                                     number(j, "mu_coef", "family"), number(j, "mu_exp", "family"));
      break;
  }
  if (j.contains("potential")) spec.potential = row_formula_from_json(j.at("potential"));
  if (j.contains("q")) spec.q = row_formula_from_json(j.at("q"));
  spec.check();
  return spec;
}

json graph_to_json(const GraphBundle& bundle, const std::optional<LayeredFamilySpec>& family,
                   int rows) {
  const WeightedGraph& g = bundle.graph;
  json vertices = json::array();
  json potential = json::object();
  for (VertexIndex x = 0; x < g.vertex_count(); ++x) {
    json v{{"id", g.id(x).name()}, {"mu", g.mu(x)}};
    if (const auto& layer = g.id(x).layer()) {
      v["row"] = layer->row;
      v["index"] = layer->index;
    }
    vertices.push_back(std::move(v));
    if (bundle.potential[x] != 0.0) potential[g.id(x).name()] = bundle.potential[x];
  }
  json edges = json::array();
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    const auto& edge = g.edge(e);
    json je{{"u", g.id(edge.u).name()}, {"v", g.id(edge.v).name()}, {"b", edge.b}};
    if (bundle.theta.canonical(e) != 0.0) je["theta"] = bundle.theta.canonical(e);
    if (bundle.sigma) je["sigma"] = (*bundle.sigma)[e];
    edges.push_back(std::move(je));
  }
  json out{{"vertices", std::move(vertices)}, {"edges", std::move(edges)}};
  if (!potential.empty()) out["potential"] = std::move(potential);
  if (!bundle.frontier.empty()) {
    json frontier = json::array();
    for (VertexIndex f : bundle.frontier) frontier.push_back(g.id(f).name());
    out["frontier"] = std::move(frontier);
  }
  if (family) {
    out["family"] = family_to_json(*family);
    out["rows"] = rows;
  }
  return out;
}

GraphFile graph_from_json(const json& j) {
  require_keys(j, {"vertices", "edges", "potential", "frontier", "family", "rows"}, "graph file");
  if (!j.contains("vertices") || !j.at("vertices").is_array()) {
    throw InputError("graph file needs a 'vertices' array");
  }
  BundleBuilder builder;
  for (const auto& v : j.at("vertices")) {
    require_keys(v, {"id", "mu", "row", "index"}, "vertex");
    const std::string id = text(v, "id", "vertex");
    const double mu = number(v, "mu", "vertex");
    if (v.contains("row") || v.contains("index")) {
      if (!v.contains("row") || !v.contains("index") || !v.at("row").is_number_integer() ||
          !v.at("index").is_number_integer()) {
        throw InputError("vertex " + id + " needs integer 'row' and 'index' together");
      }
      VertexId layered(v.at("row").get<int>(), v.at("index").get<int>());
      if (layered.name() != id) throw InputError("vertex " + id + " does not match its row and index");
      builder.add_vertex(std::move(layered), mu);
    } else {
      builder.add_vertex(VertexId(id), mu);
    }
  }
  auto index = [&](const std::string& name) { return builder.peek().index_of(name); };
  if (j.contains("edges")) {
    if (!j.at("edges").is_array()) throw InputError("'edges' must be an array");
    bool any_sigma = false;
    bool all_sigma = true;
    for (const auto& e : j.at("edges")) {
      require_keys(e, {"u", "v", "b", "theta", "sigma"}, "edge");
      const VertexIndex u = index(text(e, "u", "edge"));
      const VertexIndex v = index(text(e, "v", "edge"));
      const double b = number(e, "b", "edge");
      const double theta = e.contains("theta") ? number(e, "theta", "edge") : 0.0;
      std::optional<double> sigma;
      if (e.contains("sigma")) sigma = number(e, "sigma", "edge");
      any_sigma = any_sigma || sigma.has_value();
      all_sigma = all_sigma && sigma.has_value();
      builder.add_edge(u, v, b, theta, sigma);
    }
    if (any_sigma && !all_sigma) throw InputError("'sigma' must be given on every edge or on none");
  }
  if (j.contains("potential")) {
    if (!j.at("potential").is_object()) throw InputError("'potential' must map vertex ids to numbers");
    for (const auto& [name, w] : j.at("potential").items()) {
      if (!w.is_number()) throw InputError("potential of " + name + " must be a number");
      builder.set_potential(index(name), w.get<double>());
    }
  }
  if (j.contains("frontier")) {
    for (const auto& f : j.at("frontier")) {
      if (!f.is_string()) throw InputError("frontier entries must be vertex ids");
      builder.mark_frontier(index(f.get<std::string>()));
    }
  }
  GraphFile out;
  out.bundle = std::move(builder).build();
  if (j.contains("family")) {
    out.family = family_from_json(j.at("family"));
    if (!j.contains("rows") || !j.at("rows").is_number_integer()) {
      throw InputError("a graph with a family needs an integer 'rows'");
    }
    out.rows = j.at("rows").get<int>();
  } else if (j.contains("rows")) {
    throw InputError("'rows' is only meaningful together with 'family'");
  }
  return out;
}

json covering_to_json(const WeightedGraph& g, const GoodCovering& cover) {
  json cells = json::array();
  for (const auto& cell : cover.cells) {
    json vertices = json::array();
    for (VertexIndex v : cell.vertices) vertices.push_back(g.id(v).name());
    json edges = json::array();
    for (EdgeIndex e : cell.edges) edges.push_back({g.id(g.edge(e).u).name(), g.id(g.edge(e).v).name()});
    cells.push_back({{"vertices", std::move(vertices)}, {"edges", std::move(edges)}});
  }
  return {{"m", cover.m}, {"cells", std::move(cells)}};
}

GoodCovering covering_from_json(const json& j, const WeightedGraph& g) {
  require_keys(j, {"m", "cells"}, "covering file");
  GoodCovering cover;
  if (!j.contains("m") || !j.at("m").is_number_integer()) throw InputError("covering needs an integer 'm'");
  cover.m = j.at("m").get<int>();
  if (!j.contains("cells") || !j.at("cells").is_array()) throw InputError("covering needs a 'cells' array");
  for (const auto& c : j.at("cells")) {
    require_keys(c, {"vertices", "edges"}, "cell");
    CoveringCell cell;
    for (const auto& v : c.value("vertices", json::array())) {
      if (!v.is_string()) throw InputError("cell vertices must be ids");
      cell.vertices.push_back(g.index_of(v.get<std::string>()));
    }
    for (const auto& e : c.value("edges", json::array())) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string()) {
        throw InputError("cell edges must be [u, v] pairs of ids");
      }
      const auto u = g.index_of(e[0].get<std::string>());
      const auto v = g.index_of(e[1].get<std::string>());
      const auto k = g.edge_between(u, v);
      if (!k) throw InputError("cell edge not in graph: " + e[0].get<std::string>() + "-" + e[1].get<std::string>());
      cell.edges.push_back(*k);
    }
    cover.cells.push_back(std::move(cell));
  }
  return cover;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError("malformed JSON in " + path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

}  // namespace sagraph
