#include "gfe/pipeline/report.hpp"

namespace gfe::pipeline {

namespace {

json coords(const std::vector<Rat>& c) {
  json a = json::array();
  for (auto& x : c) a.push_back(arith::to_string(x));
  return a;
}

json values(const std::vector<STValue>& v) {
  json a = json::array();
  for (auto& x : v) a.push_back(to_json(x));
  return a;
}

}  // namespace

json to_json(const STValue& v) { return v.to_string(); }

json to_json(const SolutionTriple& s) {
  return json::array({arith::to_string(s.x), arith::to_string(s.y), arith::to_string(s.z)});
}

json to_json(const Claim& c) {
  json j{{"id", c.id}, {"verdict", verdict_name(c.verdict)}, {"printed", c.printed}, {"recomputed", c.recomputed}};
  if (!c.detail.empty()) j["detail"] = c.detail;
  if (c.verdict == Verdict::Corrected) j["expected"] = expected_corrections().count(c.id) > 0;
  return j;
}

json to_json(const chabauty::ClassRecord& r) {
  json j{{"class", r.cls.to_string()}, {"modulus", r.modulus}, {"p", r.p},          {"mechanism", r.mechanism},
         {"bound", r.bound},           {"known", r.known},     {"depth", r.depth},  {"closed", r.closed}};
  if (!r.detail.empty()) j["detail"] = r.detail;
  if (!r.children.empty()) {
    json ch = json::array();
    for (auto& c : r.children) ch.push_back(to_json(c));
    j["children"] = ch;
  }
  return j;
}

json to_json(const chabauty::ChabautyOutcome& o) {
  json w = json::object();
  for (auto& [v, c] : o.witnesses) w[v.to_string()] = {{"generators", c.n}, {"torsion", c.torsion}};
  json cert = json::array();
  for (auto& r : o.certificate) cert.push_back(to_json(r));
  json j{{"status", o.complete() ? "Complete" : "Inconclusive"},
         {"values", values(o.values)},
         {"witnesses", w},
         {"primes", o.primes},
         {"modulus", o.modulus},
         {"classes_total", o.classes_total},
         {"classes_excluded", o.classes_excluded},
         {"precision", o.precision},
         {"attempts", o.attempts},
         {"audit", chabauty::audit(o)},
         {"certificate", cert}};
  if (!o.complete()) j["reason"] = o.reason;
  return j;
}

json to_json(const CurveRun& r) {
  return {{"equation", r.equation},
          {"row", r.row + 1},
          {"delta", coords(r.delta.coords())},
          {"curve", r.curve},
          {"printed_st", to_json(r.printed)},
          {"torsion_trivial", r.torsion_trivial},
          {"index_prime_to_3", r.saturated},
          {"outcome", to_json(r.outcome)}};
}

json to_json(const SweepEntry& e) {
  const auto& v = e.verdict;
  json x{{"delta", coords(e.delta.coords())}, {"p", v.p}, {"status", v.status_name()}, {"depth", v.depth_searched}};
  if (v.base_point) x["st"] = to_json(*v.base_point);
  if (v.witness) {
    json pt = json::array();
    for (auto& c : v.witness->point) pt.push_back(c.get_str());
    x["witness"] = {{"point", pt},
                    {"precision", v.witness->precision},
                    {"form_valuations", v.witness->form_valuations},
                    {"minor_valuation", v.witness->minor_valuation},
                    {"minor_columns", v.witness->minor_columns}};
  }
  return x;
}

json to_json(const LocalSweep& s, bool all_entries) {
  json list = json::array();
  for (auto& e : s.entries)
    if (all_entries || e.verdict.status == local::LocalVerdict::Status::Soluble) list.push_back(to_json(e));
  return {{"equation", s.equation},     {"enumerated", s.enumerated}, {"candidates", s.candidates},
          {"soluble", s.soluble()},     {"undecided", s.undecided()}, {all_entries ? "entries" : "survivors", list}};
}

json to_json(const Eq5Row& r) {
  json q = json::array();
  for (auto& x : r.quotients) {
    json e{{"label", x.label}, {"c", arith::to_string(x.c)}, {"rank", x.rank}};
    if (x.rank == 0) {
      e["torsion"] = x.torsion;
      e["values"] = values(x.values);
    }
    q.push_back(e);
  }
  return {{"delta", coords(r.delta.coords())}, {"quotients", q}, {"values", values(r.values)}};
}

json to_json(const LiftRow& r) {
  json j{{"parametrization", r.parametrization},
         {"s", arith::to_string(r.s)},
         {"t", arith::to_string(r.t)},
         {"x", arith::to_string(r.x)},
         {"v", arith::to_string(r.v)},
         {"z", arith::to_string(r.z)}};
  j["lifted"] = r.lifted ? to_json(*r.lifted) : json(nullptr);
  return j;
}

json claims_json(const std::vector<Claim>& claims) {
  json a = json::array();
  std::size_t pass = 0, fail = 0, corrected = 0;
  for (auto& c : claims) {
    a.push_back(to_json(c));
    (c.verdict == Verdict::Pass ? pass : c.verdict == Verdict::Fail ? fail : corrected)++;
  }
  return {{"claims", a}, {"pass", pass}, {"fail", fail}, {"corrected", corrected}, {"ok", verdicts_ok(claims)}};
}

json to_json(const PipelineReport& r) {
  json h = json::object();
  for (auto& [name, sha] : r.hashes) h[name] = sha;
  json sw = json::array(), e5 = json::array(), cv = json::array(), lf = json::array(), sol = json::array();
  for (auto& s : r.sweeps) sw.push_back(to_json(s));
  for (auto& e : r.eq5) e5.push_back(to_json(e));
  for (auto& c : r.curves) cv.push_back(to_json(c));
  for (auto& l : r.lifts) lf.push_back(to_json(l));
  for (auto& s : r.solutions) sol.push_back(to_json(s));
  json vs = json::object();
  for (auto& [eq, v] : r.value_sets) vs[std::to_string(eq)] = values(v);
  return {{"schema_version", kReportSchemaVersion},
          {"trusted_data", h},
          {"local", sw},
          {"equation5", e5},
          {"chabauty", cv},
          {"value_sets", vs},
          {"lifting", lf},
          {"solutions", sol},
          {"verification", claims_json(r.claims)},
          {"ok", r.ok}};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace gfe::pipeline
