#include "infogeom/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace infogeom {

using nlohmann::json;

namespace {

Mat matrix_from_json(const json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("re"))
    throw SchemaError("matrix JSON must carry 'dim' and 're'");
  Eigen::Index d = j.at("dim").get<Eigen::Index>();
  if (d < 1 || d > 32) throw SchemaError("matrix dim out of the supported range [1,32]");
  auto re = j.at("re");
  json im = j.value("im", json::array());
  Mat m(d, d);
  if (Eigen::Index(re.size()) != d) throw SchemaError("matrix 're' has wrong row count");
  bool has_im = !im.empty();
  if (has_im && Eigen::Index(im.size()) != d)
    throw SchemaError("matrix 'im' has wrong row count");
  for (Eigen::Index i = 0; i < d; ++i) {
    if (Eigen::Index(re[i].size()) != d)
      throw SchemaError("matrix 're' row has wrong length");
    for (Eigen::Index k = 0; k < d; ++k) {
      double imv = has_im ? im[i][k].get<double>() : 0.0;
      m(i, k) = Cplx(re[i][k].get<double>(), imv);
    }
  }
  if (!m.allFinite()) throw SchemaError("matrix JSON contains non-finite entries");
  return m;
}

json matrix_to_json(const Mat& m) {
  json re = json::array(), im = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json rrow = json::array(), irow = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
      rrow.push_back(m(i, k).real());
      irow.push_back(m(i, k).imag());
    }
    re.push_back(rrow);
    im.push_back(irow);
  }
  return json{{"dim", m.rows()}, {"re", re}, {"im", im}};
}

json parse(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw SchemaError("malformed JSON input");
  return j;
}

}  // namespace

Mat read_matrix_json(const std::string& text) { return matrix_from_json(parse(text)); }

MatrixReadResult read_hermitian_json(const std::string& text) {
  Mat raw = read_matrix_json(text);
  MatrixReadResult res;
  res.matrix = hermitian_part(raw);
  res.hermitize_correction = (raw - res.matrix).norm();
  return res;
}

std::string write_matrix_json(const Mat& m) { return matrix_to_json(m).dump(2); }

Lindbladian read_generator_json(const std::string& text) {
  json j = parse(text);
  if (!j.is_object() || !j.contains("H") || !j.contains("jumps"))
    throw SchemaError("generator JSON must carry 'H' and 'jumps'");
  Mat h = hermitian_part(matrix_from_json(j.at("H")));
  std::vector<Mat> jumps;
  for (const json& jm : j.at("jumps")) jumps.push_back(matrix_from_json(jm));

  if (j.contains("schedule")) {
    auto sched = j.at("schedule");
    if (!sched.is_array() || sched.empty())
      throw SchemaError("generator schedule must be a non-empty array");
    std::vector<double> ts;
    std::vector<RVec> rs;
    for (const json& row : sched) {
      if (Eigen::Index(row.size()) != Eigen::Index(jumps.size()) + 1)
        throw SchemaError("schedule rows must hold t plus one rate per jump");
      ts.push_back(row[0].get<double>());
      RVec r(Eigen::Index(jumps.size()));
      for (Eigen::Index a = 0; a < r.size(); ++a)
        r(a) = row[std::size_t(a) + 1].get<double>();
      rs.push_back(std::move(r));
    }
    for (std::size_t k = 1; k < ts.size(); ++k)
      if (ts[k] <= ts[k - 1]) throw SchemaError("schedule times must increase");
    auto rate_fn = [ts, rs](double t) {
      if (t <= ts.front()) return rs.front();
      if (t >= ts.back()) return rs.back();
      std::size_t hi = 1;
      while (ts[hi] < t) ++hi;
      double w = (t - ts[hi - 1]) / (ts[hi] - ts[hi - 1]);
      return RVec((1.0 - w) * rs[hi - 1] + w * rs[hi]);
    };
    return Lindbladian(h, jumps, rate_fn, Eigen::Index(jumps.size()));
  }

  if (!j.contains("rates")) throw SchemaError("generator JSON must carry 'rates'");
  auto jr = j.at("rates");
  if (Eigen::Index(jr.size()) != Eigen::Index(jumps.size()))
    throw SchemaError("generator 'rates' must match the jump count");
  RVec rates(Eigen::Index(jumps.size()));
  for (Eigen::Index a = 0; a < rates.size(); ++a)
    rates(a) = jr[std::size_t(a)].get<double>();
  return Lindbladian(h, jumps, rates);
}

std::string write_generator_json(const Lindbladian& lind) {
  json jumps = json::array();
  for (const Mat& jm : lind.jumps()) jumps.push_back(matrix_to_json(jm));
  RVec r = lind.rates(0.0);
  json rates = json::array();
  for (Eigen::Index a = 0; a < r.size(); ++a) rates.push_back(r(a));
  return json{{"H", matrix_to_json(lind.hamiltonian())},
              {"jumps", jumps},
              {"rates", rates}}
      .dump(2);
}

std::string slurp_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const std::string& path, const std::string& content) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write file: " + tmp);
    out << content;
  }
  std::filesystem::rename(tmp, path);
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace infogeom
