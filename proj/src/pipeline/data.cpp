#include "gfe/pipeline/data.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "json.hpp"

namespace gfe::pipeline {

using arith::AlgebraComponent;
using arith::AlgElem;
using arith::EtaleAlgebra;
using arith::NumberField;
using arith::UPoly;
using nlohmann::json;

namespace {

std::vector<Rat> rats(const json& arr) {
  std::vector<Rat> out;
  for (const auto& x : arr) out.push_back(arith::parse_rat(x.get<std::string>()));
  return out;
}

json load(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw DataError("cannot open data file " + p.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw DataError("malformed JSON in " + p.string() + ": " + e.what());
  }
}

}  // namespace

std::filesystem::path default_data_dir() { return GFE_DATA_DIR; }

DataSet::DataSet(std::filesystem::path data_dir) : dir(std::move(data_dir)) {
  json j = load(dir / "selmer_generators.json");
  const auto& k = j.at("fields").at("K");
  K = NumberField::create(UPoly(rats(k.at("min_poly"))), k.at("generator").get<std::string>());
}

std::string DataSet::read_file(const std::string& name) const {
  std::ifstream in(dir / name, std::ios::binary);
  if (!in) throw DataError("cannot open data file " + (dir / name).string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::vector<int> DataSet::selmer_equations() const {
  std::vector<int> out;
  json doc = load(dir / "selmer_generators.json");
  for (const auto& e : doc.at("equations")) out.push_back(e.at("id").get<int>());
  return out;
}

descent::SelmerSetSpec DataSet::selmer(int equation_id) const {
  json j = load(dir / "selmer_generators.json");
  for (const auto& e : j.at("equations")) {
    if (e.at("id").get<int>() != equation_id) continue;
    descent::SelmerSetSpec spec;
    spec.equation_id = equation_id;
    spec.C = arith::parse_rat(e.at("C").get<std::string>());
    for (const auto& p : e.at("S")) spec.S.push_back(p.get<long>());
    UPoly f(rats(e.at("defining_poly")));
    std::string mode = e.at("components").get<std::string>();
    if (mode == "factorization") {
      spec.algebra = EtaleAlgebra::from_factorization(f);
    } else if (mode == "field") {
      if (e.at("field").get<std::string>() != "K") throw DataError("unknown field in selmer data");
      NfElem th(K, rats(e.at("theta")));
      spec.algebra = EtaleAlgebra::with_components(f, {AlgebraComponent{K, th}});
    } else {
      throw DataError("unknown component mode " + mode);
    }
    bool field_basis = e.at("generator_basis").get<std::string>() == "field";
    for (const auto& g : e.at("generators")) {
      if (field_basis)
        spec.generators.push_back(AlgElem::from_components(spec.algebra, {NfElem(K, rats(g))}));
      else
        spec.generators.push_back(AlgElem(spec.algebra, rats(g)));
    }
    return spec;
  }
  throw DataError("no selmer data for equation " + std::to_string(equation_id));
}

std::vector<DataSet::DeltaRow> DataSet::delta_rows() const {
  auto spec = selmer(5);
  std::vector<DeltaRow> out;
  json doc = load(dir / "eq5_deltas.json");
  for (const auto& r : doc.at("rows"))
    out.push_back({AlgElem(spec.algebra, rats(r.at("delta"))), arith::parse_rat(r.at("c1").get<std::string>()),
                   arith::parse_rat(r.at("c2").get<std::string>()), r.at("rank1").get<int>(), r.at("rank2").get<int>()});
  return out;
}

std::vector<DataSet::CurveRow> DataSet::curve_rows(int equation_id) const {
  std::vector<CurveRow> out;
  json doc = load(dir / "curve_rows.json");
  for (const auto& e : doc.at("equations")) {
    if (e.at("id").get<int>() != equation_id) continue;
    for (const auto& r : e.at("rows"))
      out.push_back({NfElem(K, rats(r.at("delta"))), param::STValue::parse(r.at("st_p0").get<std::string>()),
                     r.at("curve").get<int>()});
  }
  if (out.empty()) throw DataError("no table data for equation " + std::to_string(equation_id));
  return out;
}

std::vector<DataSet::MWCurve> DataSet::mw_curves() const {
  std::vector<MWCurve> out;
  json doc = load(dir / "mw_generators.json");
  for (const auto& c : doc.at("curves")) {
    MWCurve m{c.at("id").get<int>(), NfElem(K, rats(c.at("B"))), {}};
    for (const auto& p : c.at("points")) m.points.emplace_back(NfElem(K, rats(p.at("x"))), NfElem(K, rats(p.at("y"))));
    out.push_back(std::move(m));
  }
  return out;
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr);
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  return os.str();
}

std::vector<std::pair<std::string, std::string>> DataSet::hashes() const {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.path().extension() != ".json") continue;
    std::string name = entry.path().filename().string();
    out.emplace_back(name, sha256_hex(read_file(name)));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace gfe::pipeline
