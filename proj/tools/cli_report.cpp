#include "cli_report.hpp"

#include <algorithm>
#include <sstream>

namespace qg::cli {

Report::Report(std::string command) {
  root_["schema"] = kSchema;
  root_["command"] = std::move(command);
  root_["status"] = "PASS";
  root_["results"] = Json::object();
  root_["sections"] = Json::array();
}

void Report::add_section(const std::string& title, Json instance, const CheckList& checks) {
  Json s;
  s["title"] = title;
  s["instance"] = std::move(instance);
  s["checks"] = checks_json(checks);
  root_["sections"].push_back(std::move(s));
}

bool Report::failed() const {
  if (verdict_failed_) return true;
  for (const Json& s : root_["sections"])
    for (const Json& c : s["checks"])
      if (c["status"] == "FAIL") return true;
  return false;
}

Json Report::document() const {
  Json out = root_;
  out["status"] = failed() ? "FAIL" : "PASS";
  std::size_t pass = 0, fail = 0, skipped = 0;
  for (const Json& s : root_["sections"])
    for (const Json& c : s["checks"]) {
      const std::string st = c["status"];
      pass += st == "PASS";
      fail += st == "FAIL";
      skipped += st == "SKIPPED";
    }
  out["summary"] = {{"sections", root_["sections"].size()},
                    {"claims", pass + fail + skipped},
                    {"pass", pass},
                    {"fail", fail},
                    {"skipped", skipped}};
  return out;
}

std::string Report::json() const { return document().dump(2) + "\n"; }

namespace {

std::string scalar(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

bool flat(const Json& v) {
  if (!v.is_array()) return !v.is_object();
  return std::all_of(v.begin(), v.end(), [](const Json& x) { return !x.is_object() && !x.is_array(); });
}

void render(std::ostringstream& out, const Json& v, const std::string& indent) {
  std::size_t width = 0;
  for (auto it = v.begin(); it != v.end(); ++it) width = std::max(width, it.key().size());
  for (auto it = v.begin(); it != v.end(); ++it) {
    const Json& x = it.value();
    out << indent << it.key() << std::string(width - it.key().size(), ' ') << " :";
    if (flat(x)) {
      out << " " << scalar(x) << "\n";
    } else if (x.is_object()) {
      out << "\n";
      render(out, x, indent + "  ");
    } else {
      out << "\n";
      for (const Json& row : x) out << indent << "  - " << (flat(row) ? scalar(row) : row.dump()) << "\n";
    }
  }
}

}  // namespace

std::string Report::text() const {
  const Json doc = document();
  std::ostringstream out;
  out << doc["command"].get<std::string>() << ": " << doc["status"].get<std::string>() << "\n";
  if (!doc["results"].empty()) render(out, doc["results"], "  ");
  for (const Json& s : doc["sections"]) {
    out << "\n[" << s["title"].get<std::string>() << "]";
    for (auto it = s["instance"].begin(); it != s["instance"].end(); ++it)
      out << " " << it.key() << "=" << scalar(it.value());
    out << "\n";
    std::size_t width = 0;
    for (const Json& c : s["checks"]) width = std::max(width, c["name"].get<std::string>().size());
    for (const Json& c : s["checks"]) {
      const std::string status = c["status"], name = c["name"], detail = c["detail"];
      out << "  " << status << std::string(8 - status.size(), ' ') << name;
      if (!detail.empty() || !c["witness"].empty()) out << std::string(width - name.size(), ' ');
      if (!detail.empty()) out << "  " << detail;
      if (!c["witness"].empty()) out << "  witness " << c["witness"].dump();
      out << "\n";
    }
  }
  const Json& sum = doc["summary"];
  out << "\n" << sum["claims"] << " claims: " << sum["pass"] << " pass / " << sum["fail"] << " fail / "
      << sum["skipped"] << " skipped\n";
  return out.str();
}

Json checks_json(const CheckList& checks) {
  Json out = Json::array();
  for (const Check& c : checks.checks)
    out.push_back({{"name", c.name}, {"status", to_string(c.status)}, {"detail", c.detail}, {"witness", c.witness}});
  return out;
}

Json elements_json(const std::vector<Elem>& elements) { return Json(elements); }

Json vec_json(const Vec& v) {
  Json out = Json::array();
  for (const BigInt& x : v) {
    if (x.fits_slong_p())
      out.push_back(x.get_si());
    else
      out.push_back(x.get_str());
  }
  return out;
}

Json factors_json(const FgAb& a) { return vec_json(a.factors()); }

Json matrix_json(const AbMap& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.domain().rank(); ++i) out.push_back(vec_json(m.image_of_generator(i)));
  return out;
}

Json group_json(const FiniteGroup& g) { return {{"name", g.name()}, {"order", g.size()}}; }

Report verify_report(const std::vector<std::string>& names, const Limits& limits, std::ostream* timings) {
  const auto reports = run_battery(names, limits);
  Report r("verify");
  Json& res = r.results();
  res["zoo"] = names;
  for (const TheoremReport& t : reports) {
    Json inst{{"group", t.group}, {"order", t.group_order}};
    inst["subgroup"] = t.group_level ? Json("n/a") : elements_json(t.subgroup);
    r.add_section(t.theorem, inst, t.checks);
    if (timings) *timings << t.theorem << " " << t.group << " |B|=" << t.subgroup.size() << " " << t.seconds << " s\n";
  }
  res["summary_line"] = summarize(reports).line();
  return r;
}

}  // namespace qg::cli
