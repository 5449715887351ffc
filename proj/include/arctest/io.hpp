#pragma once

#include <cstddef>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "arctest/coset.hpp"
#include "arctest/digraph.hpp"
#include "arctest/error.hpp"
#include "arctest/perm.hpp"
#include "arctest/permgroup.hpp"
#include "arctest/subgroup.hpp"

namespace arctest {

/// Reads and parses a JSON file; any failure is an InvalidInput error.
inline nlohmann::json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidInput, "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return nlohmann::json::parse(buf.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::InvalidInput, path + ": " + e.what());
  }
}

namespace detail {

inline const nlohmann::json& field(const nlohmann::json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(ErrorKind::InvalidInput, std::string("missing field '") + key + "'");
  return j.at(key);
}

inline std::size_t size_field(const nlohmann::json& j, const char* key) {
  const auto& v = field(j, key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
    throw Error(ErrorKind::InvalidInput, std::string("field '") + key + "' must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

}  // namespace detail

/// 0-based image array of the given degree.
inline Perm perm_from_json(const nlohmann::json& j, std::size_t degree) {
  if (!j.is_array()) throw Error(ErrorKind::InvalidInput, "permutation must be an array of images");
  if (j.size() != degree) {
    throw Error(ErrorKind::DegreeMismatch,
                "permutation has " + std::to_string(j.size()) + " images, expected " + std::to_string(degree));
  }
  std::vector<Point> img;
  img.reserve(degree);
  for (const auto& x : j) {
    if (!x.is_number_integer() || x.get<long long>() < 0) throw Error(ErrorKind::InvalidInput, "image is not a point");
    img.push_back(x.get<Point>());
  }
  return Perm(std::move(img));
}

inline nlohmann::json perm_to_json(const Perm& p) {
  return nlohmann::json(std::vector<Point>(p.images().begin(), p.images().end()));
}

/// `{"degree": n, "generators": [[images...], ...]}`.
inline PermGroup group_from_json(const nlohmann::json& j) {
  const std::size_t n = detail::size_field(j, "degree");
  const auto& gens = detail::field(j, "generators");
  if (!gens.is_array()) throw Error(ErrorKind::InvalidInput, "'generators' must be an array");
  std::vector<Perm> out;
  for (const auto& g : gens) out.push_back(perm_from_json(g, n));
  return PermGroup(n, std::move(out));
}

inline nlohmann::json group_to_json(const PermGroup& g) {
  nlohmann::json gens = nlohmann::json::array();
  for (const Perm& p : g.generators()) gens.push_back(perm_to_json(p));
  return {{"degree", g.degree()}, {"generators", gens}};
}

/// `{"n": n, "arcs": [[u, v], ...]}`.
inline Digraph digraph_from_json(const nlohmann::json& j) {
  const std::size_t n = detail::size_field(j, "n");
  const auto& arcs = detail::field(j, "arcs");
  if (!arcs.is_array()) throw Error(ErrorKind::InvalidInput, "'arcs' must be an array");
  std::vector<Arc> list;
  for (const auto& a : arcs) {
    if (!a.is_array() || a.size() != 2 || !a[0].is_number_integer() || !a[1].is_number_integer() ||
        a[0].get<long long>() < 0 || a[1].get<long long>() < 0) {
      throw Error(ErrorKind::InvalidInput, "arc must be a pair of vertex indices");
    }
    list.emplace_back(a[0].get<Vertex>(), a[1].get<Vertex>());
  }
  return Digraph::from_arcs(n, list);
}

/// Arcs in lexicographic order.
inline nlohmann::json digraph_to_json(const Digraph& d) {
  nlohmann::json arcs = nlohmann::json::array();
  for (const Arc& a : d.arcs()) arcs.push_back({a.first, a.second});
  return {{"n", d.size()}, {"arcs", arcs}};
}

/// `{"group": <group>, "subgroup_generators": [...], "connector": [images]}`.
inline CosetDigraphSpec spec_from_json(const nlohmann::json& j, const Limits& limits = {}) {
  const PermGroup g = group_from_json(detail::field(j, "group"));
  const auto& hg = detail::field(j, "subgroup_generators");
  if (!hg.is_array()) throw Error(ErrorKind::InvalidInput, "'subgroup_generators' must be an array");
  std::vector<Perm> h_gens;
  for (const auto& x : hg) h_gens.push_back(perm_from_json(x, g.degree()));
  const Perm connector = perm_from_json(detail::field(j, "connector"), g.degree());
  SubgroupSet h = SubgroupSet::generated_by(g.degree(), std::move(h_gens), limits.max_elements);
  CosetSpace space = CosetSpace::build(g, std::move(h), limits.max_vertices);
  return CosetDigraphSpec(std::move(space), connector, limits.max_elements);
}

inline nlohmann::json spec_to_json(const PermGroup& g, const std::vector<Perm>& subgroup_generators,
                                   const Perm& connector) {
  nlohmann::json h = nlohmann::json::array();
  for (const Perm& p : subgroup_generators) h.push_back(perm_to_json(p));
  return {{"group", group_to_json(g)}, {"subgroup_generators", h}, {"connector", perm_to_json(connector)}};
}

}  // namespace arctest
