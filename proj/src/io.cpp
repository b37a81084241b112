#include "orbitframes/io.hpp"

#include "orbitframes/errors.hpp"

#include <cstdio>

namespace orbitframes::io {

namespace {

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Json optional_number(const std::optional<double>& x) { return x ? Json(*x) : Json(nullptr); }

}  // namespace

Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json to_json(const VectorXcd& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(to_json(v(i)));
  return out;
}

Json to_json(const MatrixXcd& m) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) out.push_back(to_json(VectorXcd(m.row(r).transpose())));
  return out;
}

Json to_json(const ZeroSequence<double>& zeros) {
  Json out = Json::array();
  for (const auto& z : zeros) out.push_back(to_json(z));
  return out;
}

Json to_json(const FrameReport& r) {
  return Json{{"lower_bound", r.lower_bound},
              {"upper_bound", r.upper_bound},
              {"parseval_defect", r.parseval_defect},
              {"n_max", r.n_max},
              {"tail_estimate", optional_number(r.tail_estimate)}};
}

Json to_json(const BoundInterval& b) { return Json{{"lower", b.lower}, {"upper", b.upper}}; }

Json to_json(const NormalOrbitSpec& s) {
  Json coeffs = Json::array();
  for (const auto& c : s.coeffs) coeffs.push_back(to_json(c));
  return Json{{"zeros", to_json(s.zeros)},
              {"coeffs", coeffs},
              {"alpha", s.alpha},
              {"beta", s.beta},
              {"delta", s.delta},
              {"Delta", optional_number(s.Delta)},
              {"coefficient_tail", s.coefficient_tail ? Json(*s.coefficient_tail) : Json("finite model")}};
}

Json to_json(const ArcSet& sigma) {
  Json out = Json::array();
  for (const auto& [s, e] : sigma.arcs()) out.push_back(Json::array({s, e}));
  return out;
}

Json model_space_summary(const ModelSpace& ms) {
  return Json{{"zeros", to_json(ms.h().zeros)},
              {"dim", ms.dim()},
              {"trunc", ms.trunc()},
              {"shift_matrix", to_json(ms.shift_matrix())},
              {"phi", to_json(ms.phi())},
              {"gram_residual", ms.gram_residual()}};
}

Complex complex_from_json(const Json& j, const std::string& what) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  throw InputError(what + ": expected a number or an [re, im] pair, got " + j.dump());
}

std::vector<Complex> complex_list_from_json(const Json& j, const std::string& what) {
  if (!j.is_array()) throw InputError(what + ": expected a list");
  std::vector<Complex> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(complex_from_json(j[i], what + "[" + std::to_string(i) + "]"));
  return out;
}

VectorXcd vector_from_json(const Json& j, const std::string& what) {
  const std::vector<Complex> v = complex_list_from_json(j, what);
  if (v.empty()) throw InputError(what + ": empty vector");
  return Eigen::Map<const VectorXcd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

MatrixXcd matrix_from_json(const Json& j, const std::string& what) {
  if (!j.is_array() || j.empty()) throw InputError(what + ": expected a non-empty list of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  MatrixXcd m;
  for (Eigen::Index r = 0; r < rows; ++r) {
    const std::vector<Complex> row = complex_list_from_json(j[static_cast<std::size_t>(r)], what + " row " + std::to_string(r));
    if (r == 0) m.resize(rows, static_cast<Eigen::Index>(row.size()));
    if (static_cast<Eigen::Index>(row.size()) != m.cols()) throw InputError(what + ": ragged rows");
    for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = row[static_cast<std::size_t>(c)];
  }
  if (m.cols() == 0) throw InputError(what + ": empty rows");
  return m;
}

ZeroSequence<double> zeros_from_json(const Json& j, const std::string& what) {
  return ZeroSequence<double>(complex_list_from_json(j, what));
}

ArcSet arcs_from_json(const Json& j, const std::string& what) {
  if (j.is_string()) {
    if (j.get<std::string>() == "full") return ArcSet::full_circle();
    throw InputError(what + ": the only named arc set is \"full\"");
  }
  if (!j.is_array()) throw InputError(what + ": expected \"full\" or a list of [start, end] pairs");
  std::vector<std::pair<double, double>> arcs;
  for (const auto& a : j) {
    if (!a.is_array() || a.size() != 2 || !a[0].is_number() || !a[1].is_number()) {
      throw InputError(what + ": arc " + a.dump() + " is not a [start, end] pair");
    }
    arcs.emplace_back(a[0].get<double>(), a[1].get<double>());
  }
  return ArcSet(std::move(arcs));
}

void write_matrix_csv(std::ostream& os, const MatrixXcd& m) {
  os << "row,col,re,im\n";
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      os << r << ',' << c << ',' << format_double(m(r, c).real()) << ',' << format_double(m(r, c).imag()) << '\n';
    }
  }
}

void write_columns_csv(std::ostream& os, const std::vector<std::string>& header,
                       const std::vector<std::vector<double>>& columns) {
  if (header.size() != columns.size()) throw InputError("CSV header and column count differ");
  for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
  os << '\n';
  const std::size_t rows = columns.empty() ? 0 : columns.front().size();
  for (const auto& c : columns) {
    if (c.size() != rows) throw InputError("CSV columns have different lengths");
  }
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << format_double(columns[i][r]);
    os << '\n';
  }
}

}  // namespace orbitframes::io
