#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "gfe/pipeline/report.hpp"

using namespace gfe;
using namespace gfe::pipeline;

namespace {

struct Globals {
  std::string data_dir;
  int precision = 30;
  std::string json_out;
};

DataSet load(const Globals& g) { return g.data_dir.empty() ? DataSet{} : DataSet{g.data_dir}; }

void emit(const Globals& g, const json& j, bool quiet_stdout = false) {
  if (!g.json_out.empty()) {
    std::ofstream f(g.json_out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + g.json_out);
    f << dump(j);
  }
  if (!quiet_stdout || g.json_out.empty()) std::cout << dump(j);
}

json forms_json(const descent::CubicFormSystem& sys) {
  static const std::vector<std::string> names{"y0", "y1", "y2", "y3"};
  json forms = json::array();
  for (std::size_t i = 0; i < sys.Q.size(); ++i) {
    json terms = json::array();
    for (auto& [e, c] : sys.Q[i].terms()) terms.push_back({{"exponent", e}, {"coeff", arith::to_string(c)}});
    forms.push_back({{"name", "Q" + std::to_string(i)}, {"form", sys.Q[i].to_string(names)}, {"terms", terms}});
  }
  json d = json::array();
  for (auto& c : sys.delta.coords()) d.push_back(arith::to_string(c));
  return {{"delta", d}, {"forms", forms}, {"identity", descent_identity_holds(sys)}};
}

std::vector<long> parse_primes(const std::string& s) {
  std::vector<long> out;
  std::stringstream in(s);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    if (tok.empty()) continue;
    std::size_t used = 0;
    long p = std::stol(tok, &used);
    if (used != tok.size() || p < 2) throw CLI::ValidationError("--primes", "bad prime '" + tok + "'");
    out.push_back(p);
  }
  if (out.empty()) throw CLI::ValidationError("--primes", "empty list");
  return out;
}

json summary(const PipelineReport& r) {
  json vs = json::object();
  for (auto& [eq, v] : r.value_sets) {
    json a = json::array();
    for (auto& x : v) a.push_back(x.to_string());
    vs[std::to_string(eq)] = a;
  }
  json sol = json::array();
  for (auto& s : r.solutions) sol.push_back(to_json(s));
  auto c = claims_json(r.claims);
  return {{"value_sets", vs}, {"solutions", sol}, {"pass", c["pass"]}, {"fail", c["fail"]},
          {"corrected", c["corrected"]}, {"ok", r.ok}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gfe: verified resolution of x^3 + y^9 = z^2"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--data-dir", g.data_dir, "directory with the trusted JSON data");
  app.add_option("--precision", g.precision, "p-adic working precision")->check(CLI::Range(8, 400));
  app.add_option("--json-out", g.json_out, "also write the JSON result here");

  int rc = 0;

  long y_bound = 3, x_bound = 10000;
  auto* search = app.add_subcommand("search", "brute-force primitive solutions");
  search->add_option("--y-bound", y_bound)->check(CLI::NonNegativeNumber);
  search->add_option("--x-bound", x_bound)->check(CLI::PositiveNumber);
  search->callback([&] {
    json a = json::array();
    for (auto& s : brute_search(y_bound, x_bound)) a.push_back(to_json(s));
    emit(g, {{"y_bound", y_bound}, {"x_bound", x_bound}, {"solutions", a}});
  });

  auto* param_cmd = app.add_subcommand("param", "Mordell parametrizations");
  param_cmd->require_subcommand(1);
  param_cmd->add_subcommand("verify-identities", "check the 12 identities")->callback([&] {
    json a = json::array();
    bool all = true;
    for (auto& p : param::mordell_families()) {
      bool ok = param::verify_identity(p);
      all = all && ok;
      std::cout << p.name() << " " << (ok ? "PASS" : "FAIL") << "\n";
      a.push_back({{"name", p.name()}, {"verdict", ok ? "PASS" : "FAIL"}});
    }
    if (!g.json_out.empty()) emit(g, {{"identities", a}, {"ok", all}}, true);
    if (!all) rc = 1;
  });
  std::string lx, lv, lz;
  auto* lift = param_cmd->add_subcommand("lift", "primitive x^3 + y^9 = z^2 from x^3 + v^3 = z^2");
  lift->add_option("--x", lx)->required();
  lift->add_option("--v", lv)->required();
  lift->add_option("--z", lz)->required();
  lift->callback([&] {
    arith::Int x(lx), v(lv), z(lz);
    json j{{"x", lx}, {"v", lv}, {"z", lz}};
    if (x * x * x + v * v * v != z * z) {
      j["verdict"] = "not-a-solution";
      rc = 1;
    } else if (auto s = param::lift_to_ninth(x, v, z)) {
      j["verdict"] = "lifted";
      j["solution"] = to_json(*s);
    } else {
      j["verdict"] = "no-primitive-lift";
      j["solution"] = nullptr;
    }
    emit(g, j);
  });

  int eq = 5;
  std::size_t index = 0;
  auto* descent_cmd = app.add_subcommand("descent", "descent curves");
  descent_cmd->require_subcommand(1);
  auto* build = descent_cmd->add_subcommand("build", "the four cubic forms for one delta");
  build->add_option("--eq", eq)->required();
  build->add_option("--delta", index, "position in the generator-exponent enumeration, from 0")->required();
  build->callback([&] {
    auto spec = load(g).selmer(eq);
    auto all = descent::enumerate_delta(spec);
    if (index >= all.size()) throw CLI::ValidationError("--delta", "at most " + std::to_string(all.size() - 1));
    json j = forms_json(descent::build_descent_forms(all[index]));
    j["equation"] = eq;
    j["index"] = index;
    j["exponents"] = descent::delta_exponents(spec.generators.size(), index);
    emit(g, j);
  });

  long p = 3;
  int depth = 12;
  auto* local_cmd = app.add_subcommand("local", "local solubility");
  local_cmd->require_subcommand(1);
  auto* sweep = local_cmd->add_subcommand("sweep", "Q_p-solubility of every delta with cubic norm");
  sweep->add_option("--eq", eq)->required();
  sweep->add_option("--p", p)->check(CLI::PositiveNumber);
  sweep->add_option("--depth", depth)->check(CLI::Range(1, 40));
  sweep->callback([&] {
    auto s = local_sweep(load(g), eq, depth, p);
    emit(g, to_json(s, true));
    if (s.undecided() > 0) rc = 1;
  });

  auto* ec_cmd = app.add_subcommand("ec", "elliptic-curve tables");
  ec_cmd->require_subcommand(1);
  ec_cmd->add_subcommand("verify-tables", "per-claim verdicts for the printed tables")->callback([&] {
    auto claims = verify_tables(load(g));
    for (auto& c : claims) std::cout << verdict_name(c.verdict) << " " << c.id << "\n";
    if (!g.json_out.empty()) emit(g, claims_json(claims), true);
    if (!verdicts_ok(claims)) rc = 1;
  });

  std::size_t row = 1;
  std::string primes = "11,31";
  auto* chab = app.add_subcommand("chabauty", "elliptic Chabauty");
  chab->require_subcommand(1);
  auto* run = chab->add_subcommand("run", "rational s/t values on one quotient curve");
  run->add_option("--eq", eq)->required()->check(CLI::IsMember({1, 2}));
  run->add_option("--delta", row, "row of the curve table for this equation, from 1")->required()->check(CLI::PositiveNumber);
  run->add_option("--primes", primes);
  run->callback([&] {
    PipelineOptions opt;
    opt.precision = g.precision;
    opt.primes = parse_primes(primes);
    auto data = load(g);
    if (row > data.curve_rows(eq).size()) throw CLI::ValidationError("--delta", "no such row");
    auto r = run_curve(data, eq, row - 1, opt);
    emit(g, to_json(r));
    if (!r.outcome.complete() || !chabauty::audit(r.outcome)) rc = 1;
  });

  auto* pipe = app.add_subcommand("pipeline", "end-to-end reproduction");
  pipe->require_subcommand(1);
  pipe->add_subcommand("run", "run every stage and print the outcome")->callback([&] {
    PipelineOptions opt;
    opt.precision = g.precision;
    auto r = run_pipeline(load(g), opt);
    std::cout << dump(summary(r));
    if (!g.json_out.empty()) emit(g, to_json(r), true);
    if (!r.ok) rc = 1;
  });

  app.add_subcommand("report", "full JSON report")->callback([&] {
    PipelineOptions opt;
    opt.precision = g.precision;
    auto r = run_pipeline(load(g), opt);
    emit(g, to_json(r), true);
    if (!r.ok) rc = 1;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return rc;
}
