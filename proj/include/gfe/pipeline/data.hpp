#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "gfe/descent/descent.hpp"

namespace gfe::pipeline {

using arith::FieldPtr;
using arith::NfElem;
using arith::Rat;

class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::filesystem::path default_data_dir();

struct DataSet {
  std::filesystem::path dir;
  FieldPtr K;

  explicit DataSet(std::filesystem::path data_dir = default_data_dir());

  descent::SelmerSetSpec selmer(int equation_id) const;
  std::vector<int> selmer_equations() const;

  struct DeltaRow {
    arith::AlgElem delta;
    Rat c1, c2;
    int rank1, rank2;
  };
  std::vector<DeltaRow> delta_rows() const;

  struct CurveRow {
    NfElem delta;  // over K
    param::STValue st_p0;
    int curve;
  };
  std::vector<CurveRow> curve_rows(int equation_id) const;

  struct MWCurve {
    int id;
    NfElem B;  // y^2 = x^3 + B
    std::vector<std::pair<NfElem, NfElem>> points;
  };
  std::vector<MWCurve> mw_curves() const;

  /* file name -> lowercase hex SHA-256, sorted by name */
  std::vector<std::pair<std::string, std::string>> hashes() const;
  std::string read_file(const std::string& name) const;
};

std::string sha256_hex(const std::string& bytes);

}  // namespace gfe::pipeline
