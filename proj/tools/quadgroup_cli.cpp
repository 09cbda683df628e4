#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "cli_io.hpp"
#include "cli_report.hpp"

using namespace qg;
using namespace qg::cli;

namespace {

enum Exit { kOk = 0, kFail = 1, kUsage = 2, kInvalid = 3, kCap = 4 };

Json subgroup_json(const Subgroup& b) { return elements_json(b.elements()); }

Report analyze(const std::string& file, const Limits& limits) {
  const FiniteGroup g = group_from_json(load_json(file), limits);
  Report r("analyze");
  Json& res = r.results();
  res["group"] = group_json(g);
  res["associativity"] = to_string(g.associativity());
  res["abelian"] = g.is_abelian();
  res["center"] = subgroup_json(center(g));
  res["derived_subgroup"] = subgroup_json(derived_subgroup(g));
  Json lcs = Json::array();
  for (const Subgroup& s : lower_central_series(g)) lcs.push_back(s.size());
  res["lower_central_series_orders"] = lcs;
  const auto c = nilpotency_class(g);
  res["nilpotency_class"] = c ? Json(*c) : Json("not nilpotent");
  res["abelianization"] = factors_json(abelianization(g).group);
  return r;
}

Report qgroup(const std::string& file, const std::string& sub, const Limits& limits) {
  const FiniteGroup g = group_from_json(load_json(file), limits);
  const Subgroup b = subgroup_from_spec(g, sub);
  const QGroup q = build_q(g, b, limits);
  Report r("qgroup");
  Json& res = r.results();
  res["group"] = group_json(g);
  res["subgroup"] = subgroup_json(b);
  res["order"] = q.group.size();
  const auto c = nilpotency_class(q.group);
  res["nilpotency_class"] = c ? Json(*c) : Json("not nilpotent");
  res["abelianization"] = factors_json(abelianization(q.group).group);
  res["tensor_square"] = factors_json(q.square.group());
  r.add_section("central_extension", {{"group", g.name()}, {"subgroup_order", b.size()}}, q.checks);
  return r;
}

Report passi(const std::string& file, const std::string& sub, int degree, const Limits& limits) {
  const FiniteGroup g = group_from_json(load_json(file), limits);
  const Subgroup b = subgroup_from_spec(g, sub);
  const PassiGroup p = passi_group(g, b, degree, limits);
  Report r("passi");
  Json& res = r.results();
  res["group"] = group_json(g);
  res["subgroup"] = subgroup_json(b);
  res["degree"] = degree;
  res["factors"] = factors_json(p.group());
  res["order"] = p.group().is_finite() ? Json(p.group().order().get_str()) : Json("infinite");
  if (p.mu2) {
    res["tensor_square"] = factors_json(p.square->group());
    res["mu2_images_of_generators"] = matrix_json(*p.mu2);
  }
  r.add_section("passi_group", {{"group", g.name()}, {"subgroup_order", b.size()}, {"degree", degree}}, p.checks);
  return r;
}

Report checkmap(const std::string& dom, const std::string& cod, const std::string& map, const std::string& sub,
                const Limits& limits) {
  const FiniteGroup g = group_from_json(load_json(dom), limits);
  const FiniteGroup h = group_from_json(load_json(cod), limits);
  const GroupFunction f = map_from_json(load_json(map), g, h);
  const Subgroup b = subgroup_from_spec(g, sub);
  const QuadVerdict v = quadratic_verdict(f, b, limits);
  Report r("checkmap");
  Json& res = r.results();
  res["domain"] = group_json(g);
  res["codomain"] = group_json(h);
  res["subgroup"] = subgroup_json(b);
  res["method"] = v.method;
  res["linear"] = v.is_linear;
  res["quadratic"] = v.is_quadratic;
  if (v.linearity_witness) res["linearity_witness"] = {v.linearity_witness->first, v.linearity_witness->second};
  if (!v.is_quadratic) {
    r.fail_verdict();
    res["witness"] = {{"law", to_string(v.counterexample->law)},
                      {"tuple", elements_json(v.counterexample->tuple)},
                      {"description", v.counterexample->describe()}};
    return r;
  }
  const Radical rad = radical(f, limits);
  res["radical"] = subgroup_json(rad.subgroup);
  const BilinearPart bp = bilinear_part(f, b, limits);
  res["tensor_square"] = factors_json(bp.square.group());
  Json w = Json::array();
  for (std::size_t k = 0; k < bp.square.group().rank(); ++k) w.push_back(bp.value(bp.square.group().generator(k)));
  res["w_f_on_tensor_generators"] = w;
  r.add_section("radical", {{"group", g.name()}}, rad.checks);
  r.add_section("identity_suite", {{"group", g.name()}, {"subgroup_order", b.size()}}, identity_suite(f, b));
  return r;
}

Report checkpoly(const std::string& dom, const std::string& cod, const std::string& map, const std::string& sub,
                 int degree, const Limits& limits) {
  const FiniteGroup g = group_from_json(load_json(dom), limits);
  const FgAb a = fgab_from_json(load_json(cod));
  const AbValuedMap f = poly_map_from_json(load_json(map), g, a);
  const Subgroup b = subgroup_from_spec(g, sub);
  const PassiGroup p = passi_group(g, b, degree, limits, false);
  const PolyVerdict lat = is_polynomial(f, p);
  const PolyVerdict rec = is_polynomial_rec(f, degree, b, limits);
  Report r("checkpoly");
  Json& res = r.results();
  res["domain"] = group_json(g);
  res["codomain"] = factors_json(a);
  res["subgroup"] = subgroup_json(b);
  res["degree"] = degree;
  res["polynomial"] = lat.passed;
  if (!lat.passed) {
    r.fail_verdict();
    res["reason"] = lat.reason;
    res["witness"] = vec_json(*lat.witness);
  }
  CheckList agree;
  agree.add("lattice_and_recursive_verdicts_agree", lat.passed == rec.passed, rec.reason);
  r.add_section("verdicts", {{"group", g.name()}, {"degree", degree}}, agree);
  if (lat.passed) {
    const PassiGroup full = passi_group(g, b, degree, limits);
    const PolyFactorization fac = factor_poly(f, full, limits);
    res["passi_group"] = factors_json(full.group());
    res["fbar_images_of_generators"] = matrix_json(fac.fbar);
    if (fac.w) res["w_f_images_of_tensor_generators"] = matrix_json(*fac.w);
    r.add_section("factorization", {{"group", g.name()}, {"degree", degree}}, fac.checks);
  }
  return r;
}

Report presented(const std::string& pres_file, const std::string& target_file, const std::string& pair_file,
                 const Limits& limits) {
  const Presentation p = presentation_from_json(load_json(pres_file), limits);
  const FiniteGroup h = group_from_json(load_json(target_file), limits);
  const GenPair gp = genpair_from_json(load_json(pair_file));
  const PresentedVerdict v = presented_check(p, h, gp);
  Report r("presented");
  Json& res = r.results();
  res["generators"] = p.generators;
  res["relators"] = p.relators.size();
  res["target"] = group_json(h);
  res["verdict"] = v.accepted ? "ACCEPT" : "REJECT";
  r.add_section("conditions", {{"target", h.name()}}, v.conditions);
  if (!v.accepted) {
    r.fail_verdict();
    return r;
  }
  if (p.target) {
    const GroupFunction f = presented_build(p, h, gp, limits);
    res["map"] = elements_json(f.table());
  }
  return r;
}

Report verify(const std::string& zoo, bool timings, const Limits& limits) {
  std::vector<std::string> names;
  if (zoo == "default") {
    names = default_zoo();
  } else {
    std::stringstream ss(zoo);
    for (std::string item; std::getline(ss, item, ',');)
      if (!item.empty()) names.push_back(item);
  }
  for (const std::string& n : names) zoo_group(n);  // unknown names are usage errors
  return verify_report(names, limits, timings ? &std::cerr : nullptr);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quadratic maps, universal quadratic groups and Passi groups of finite groups"};
  app.require_subcommand(1);
  app.fallthrough();
  Limits limits;
  std::string format = "text", json_out;
  app.add_option("--max-order", limits.max_order, "Largest group table to materialize")->capture_default_str();
  app.add_option("--max-degree", limits.max_degree, "Largest Passi degree")->capture_default_str();
  app.add_option("--budget", limits.scan_budget, "Work budget for exhaustive scans")->capture_default_str();
  app.add_option("--report", format, "Output on stdout")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
  app.add_option("--json", json_out, "Also write the JSON report to this file");

  std::string group, domain, codomain, map, sub = "trivial", pres, target, pair, zoo = "default";
  int degree = 2;
  bool timings = false;

  auto* an = app.add_subcommand("analyze", "Structure of a finite group");
  an->add_option("group", group, "Group file")->required();
  auto* qg_cmd = app.add_subcommand("qgroup", "Universal quadratic group Q(G, B)");
  qg_cmd->add_option("group", group, "Group file")->required();
  qg_cmd->add_option("--subgroup", sub, "trivial | all | center | derived | subgroup file")->capture_default_str();
  auto* pa = app.add_subcommand("passi", "Passi group P_n(G, B)");
  pa->add_option("group", group, "Group file")->required();
  pa->add_option("--subgroup", sub, "trivial | all | center | derived | subgroup file")->capture_default_str();
  pa->add_option("--degree", degree, "n")->capture_default_str();
  auto* cm = app.add_subcommand("checkmap", "Quadraticity of a map between finite groups");
  cm->add_option("domain", domain, "Group file")->required();
  cm->add_option("codomain", codomain, "Group file")->required();
  cm->add_option("map", map, "Map file")->required();
  cm->add_option("--subgroup", sub, "Relative subgroup of the domain")->capture_default_str();
  auto* cp = app.add_subcommand("checkpoly", "Polynomial degree of a map into an abelian group");
  cp->add_option("domain", domain, "Group file")->required();
  cp->add_option("codomain", codomain, "Abelian group {\"factors\":[...]}")->required();
  cp->add_option("map", map, "Map file")->required();
  cp->add_option("--subgroup", sub, "Relative subgroup of the domain")->capture_default_str();
  cp->add_option("--degree", degree, "n")->capture_default_str();
  auto* pr = app.add_subcommand("presented", "Quadratic maps out of a presented group");
  pr->add_option("presentation", pres, "Presentation file")->required();
  pr->add_option("target", target, "Group file for the codomain")->required();
  pr->add_option("pair", pair, "File with chi and psi")->required();
  auto* ve = app.add_subcommand("verify", "Run the verification battery");
  ve->add_option("--zoo", zoo, "default, or a comma-separated list of zoo names")->capture_default_str();
  ve->add_flag("--timings", timings, "Print per-instance wall time on stderr");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (degree < 0) throw ParseError("--degree must be non-negative");
    Report report = [&] {
      if (*an) return analyze(group, limits);
      if (*qg_cmd) return qgroup(group, sub, limits);
      if (*pa) return passi(group, sub, degree, limits);
      if (*cm) return checkmap(domain, codomain, map, sub, limits);
      if (*cp) return checkpoly(domain, codomain, map, sub, degree, limits);
      if (*pr) return presented(pres, target, pair, limits);
      return verify(zoo, timings, limits);
    }();
    std::cout << (format == "json" ? report.json() : report.text());
    if (!json_out.empty()) {
      std::ofstream out(json_out);
      if (!out) throw ParseError("cannot write '" + json_out + "'");
      out << report.json();
    }
    return report.failed() ? kFail : kOk;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const CapExceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return kCap;
  } catch (const AlgebraError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kInvalid;
  } catch (const LibraryDefect& e) {
    std::cerr << "internal defect: " << e.what() << "\n";
    return kFail;
  }
}
