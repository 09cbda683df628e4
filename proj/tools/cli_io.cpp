#include "cli_io.hpp"

#include <fstream>
#include <sstream>

namespace qg::cli {

namespace {

template <class T>
T field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("field '") + key + "': " + e.what());
  }
}

template <class T>
T field_or(const Json& j, const char* key, T fallback) {
  return j.is_object() && j.contains(key) ? field<T>(j, key) : fallback;
}

std::size_t positive(const Json& params, const char* key) {
  const long v = field<long>(params, key);
  if (v < 0) throw ParseError(std::string("parameter '") + key + "' must be non-negative");
  return static_cast<std::size_t>(v);
}

std::vector<Elem> element_list(const FiniteGroup& g, const Json& j, const char* key) {
  const auto raw = field<std::vector<long>>(j, key);
  std::vector<Elem> out;
  for (long x : raw) {
    if (x < 0 || static_cast<std::size_t>(x) >= g.size())
      throw ParseError(std::string("element ") + std::to_string(x) + " in '" + key + "' is out of range");
    out.push_back(static_cast<Elem>(x));
  }
  return out;
}

FiniteGroup builtin_group(const Json& j, const Limits& limits) {
  const std::string family = field<std::string>(j, "family");
  const Json params = j.contains("params") ? j.at("params") : Json::object();
  if (family == "cyclic") return builtin::cyclic(positive(params, "n"));
  if (family == "dihedral") return builtin::dihedral(positive(params, "n"));
  if (family == "quaternion8") return builtin::quaternion8();
  if (family == "symmetric") return builtin::symmetric(positive(params, "n"));
  if (family == "elementary") return builtin::elementary(positive(params, "p"), positive(params, "k"));
  if (family == "heisenberg") return builtin::heisenberg(positive(params, "p"));
  if (family == "product")
    return builtin::direct_product(group_from_json(field<Json>(params, "left"), limits),
                                   group_from_json(field<Json>(params, "right"), limits), limits);
  if (family == "power_series_units")
    return builtin::power_series_units(positive(params, "m"), positive(params, "N"), limits);
  if (family == "lazard") {
    builtin::LieRing lie;
    const std::size_t m = positive(params, "modulus");
    if (field_or<std::string>(params, "lie", "") == "heisenberg") {
      lie = builtin::LieRing::heisenberg(m);
    } else {
      lie.modulus = m;
      lie.brackets = field<std::vector<std::vector<std::vector<long>>>>(params, "brackets");
      lie.dim = lie.brackets.size();
    }
    return builtin::lazard(lie, limits);
  }
  throw ParseError("unknown builtin family '" + family + "'");
}

}  // namespace

Json load_json(const std::string& path_or_inline) {
  std::string text = path_or_inline;
  if (text.empty() || text.front() != '{') {
    std::ifstream in(path_or_inline);
    if (!in) throw ParseError("cannot open '" + path_or_inline + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path_or_inline.size() > 60 ? std::string("invalid JSON: ") + e.what()
                                                : "invalid JSON in '" + path_or_inline + "': " + e.what());
  }
}

FiniteGroup group_from_json(const Json& j, const Limits& limits) {
  const std::string kind = field<std::string>(j, "kind");
  const std::string name = field_or<std::string>(j, "name", "");
  if (kind == "table") {
    const auto rows = field<std::vector<std::vector<long>>>(j, "table");
    const std::size_t n = field_or<std::size_t>(j, "size", rows.size());
    if (rows.size() != n) throw ParseError("table has " + std::to_string(rows.size()) + " rows, size says " + std::to_string(n));
    require_within(n, limits.max_order, "group order");
    std::vector<std::vector<Elem>> table(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (rows[i].size() != n) throw ParseError("row " + std::to_string(i) + " does not have " + std::to_string(n) + " entries");
      for (long x : rows[i]) {
        if (x < 0 || static_cast<std::size_t>(x) >= n) throw ParseError("table entry " + std::to_string(x) + " is out of range");
        table[i].push_back(static_cast<Elem>(x));
      }
    }
    return FiniteGroup::from_rows(table, name, limits);
  }
  if (kind == "perm") {
    const auto gens = field<std::vector<std::vector<std::size_t>>>(j, "generators");
    return builtin::from_permutations(field<std::size_t>(j, "degree"), gens, name, limits);
  }
  if (kind == "builtin") {
    FiniteGroup g = builtin_group(j, limits);
    return name.empty() ? g : g.renamed(name);
  }
  throw ParseError("unknown group kind '" + kind + "'");
}

Subgroup subgroup_from_json(const FiniteGroup& g, const Json& j) {
  if (j.contains("elements")) return Subgroup::from_elements(g, element_list(g, j, "elements"));
  if (j.contains("generators")) return Subgroup::generated(g, element_list(g, j, "generators"));
  throw ParseError("subgroup needs 'elements' or 'generators'");
}

Subgroup subgroup_from_spec(const FiniteGroup& g, const std::string& spec) {
  if (spec == "trivial") return Subgroup::trivial(g);
  if (spec == "all") return Subgroup::whole(g);
  if (spec == "center") return center(g);
  if (spec == "derived") return derived_subgroup(g);
  return subgroup_from_json(g, load_json(spec));
}

FgAb fgab_from_json(const Json& j) {
  std::vector<BigInt> factors;
  for (long f : field<std::vector<long>>(j, "factors")) {
    if (f < 0) throw ParseError("factors must be non-negative");
    factors.emplace_back(f);
  }
  try {
    return FgAb(factors);
  } catch (const AlgebraError& e) {
    throw ParseError(std::string("factors are not in invariant-factor form: ") + e.what());
  }
}

GroupFunction map_from_json(const Json& j, const FiniteGroup& domain, const FiniteGroup& codomain) {
  const auto values = element_list(codomain, j, "values");
  if (values.size() != domain.size())
    throw ParseError("map has " + std::to_string(values.size()) + " values for a domain of order " +
                     std::to_string(domain.size()));
  return GroupFunction(domain, codomain, values);
}

AbValuedMap poly_map_from_json(const Json& j, const FiniteGroup& domain, const FgAb& codomain) {
  const Json values = field<Json>(j, "values");
  if (!values.is_array() || values.size() != domain.size())
    throw ParseError("map needs one value per domain element (" + std::to_string(domain.size()) + ")");
  AbValuedMap f{domain, codomain, {}};
  for (const Json& v : values) {
    if (v.is_number_integer()) {
      const long k = v.get<long>();
      if (!codomain.is_finite() || k < 0 || static_cast<std::uint64_t>(k) >= codomain.order_u64())
        throw ParseError("value index " + std::to_string(k) + " is out of range");
      f.values.push_back(codomain.element_at(static_cast<std::uint64_t>(k)));
    } else if (v.is_array()) {
      if (v.size() != codomain.rank()) throw ParseError("coordinate value has the wrong length");
      Vec x;
      for (const Json& c : v) {
        if (!c.is_number_integer()) throw ParseError("coordinates must be integers");
        x.emplace_back(c.get<long>());
      }
      f.values.push_back(codomain.reduce(x));
    } else {
      throw ParseError("values must be indices or coordinate lists");
    }
  }
  return f;
}

Presentation presentation_from_json(const Json& j, const Limits& limits) {
  Presentation p;
  p.generators = field<std::size_t>(j, "generators");
  for (const Json& rel : field<Json>(j, "relators")) {
    FreeWord w;
    for (const Json& letter : rel) {
      if (!letter.is_array() || letter.size() != 2 || !letter[0].is_string() || !letter[1].is_number_integer())
        throw ParseError("letters are [\"x<i>\", exponent]");
      const std::string sym = letter[0].get<std::string>();
      if (sym.size() < 2 || sym[0] != 'x') throw ParseError("generator symbol '" + sym + "' is not x<i>");
      std::size_t gen = 0;
      try {
        gen = std::stoul(sym.substr(1));
      } catch (const std::exception&) {
        throw ParseError("generator symbol '" + sym + "' is not x<i>");
      }
      if (gen >= p.generators) throw ParseError("generator " + sym + " is out of range");
      const long e = letter[1].get<long>();
      for (long k = 0; k < std::labs(e); ++k) w.push_back(Letter{gen, e > 0 ? 1 : -1});
    }
    p.relators.push_back(std::move(w));
  }
  if (j.contains("pi")) {
    const Json& pi = j.at("pi");
    p.target = group_from_json(field<Json>(pi, "group"), limits);
    p.images = element_list(*p.target, pi, "images");
    if (p.images.size() != p.generators) throw ParseError("pi needs one image per generator");
  }
  return p;
}

GenPair genpair_from_json(const Json& j) {
  GenPair gp;
  for (long x : field<std::vector<long>>(j, "chi")) {
    if (x < 0) throw ParseError("chi values must be element indices");
    gp.chi.push_back(static_cast<Elem>(x));
  }
  for (const auto& row : field<std::vector<std::vector<long>>>(j, "psi")) {
    std::vector<Elem> r;
    for (long x : row) {
      if (x < 0) throw ParseError("psi values must be element indices");
      r.push_back(static_cast<Elem>(x));
    }
    gp.psi.push_back(std::move(r));
  }
  return gp;
}

}  // namespace qg::cli
