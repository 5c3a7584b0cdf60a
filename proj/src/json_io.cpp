#include "gqec/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace gqec {

std::string format_real(Real v) {
  if (std::isinf(v)) {
    return v > 0 ? "\"inf\"" : "\"-inf\"";
  }
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

Json real_to_json(Real v) {
  if (std::isinf(v)) {
    return v > 0 ? Json("inf") : Json("-inf");
  }
  return Json(v);
}

Real real_from_json(const Json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<Real>::infinity();
    if (s == "-inf") return -std::numeric_limits<Real>::infinity();
    throw std::invalid_argument("expected a number or \"inf\"");
  }
  return j.get<Real>();
}

namespace {

void dump_rec(const Json& j, std::ostringstream& out, int indent, int depth) {
  const std::string pad(static_cast<std::size_t>(indent) * depth, ' ');
  const std::string pad_in(static_cast<std::size_t>(indent) * (depth + 1), ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out << "{}";
        return;
      }
      out << "{\n";
      std::size_t i = 0;
      for (auto it = j.begin(); it != j.end(); ++it, ++i) {
        out << pad_in << Json(it.key()).dump() << ": ";
        dump_rec(it.value(), out, indent, depth + 1);
        if (i + 1 < j.size()) out << ",";
        out << "\n";
      }
      out << pad << "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out << "[]";
        return;
      }
      out << "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        out << pad_in;
        dump_rec(j[i], out, indent, depth + 1);
        if (i + 1 < j.size()) out << ",";
        out << "\n";
      }
      out << pad << "]";
      return;
    }
    case Json::value_t::number_float:
      out << format_real(j.get<Real>());
      return;
    default:
      out << j.dump();
      return;
  }
}

}  // namespace

std::string dump_with_full_precision(const Json& j, int indent) {
  std::ostringstream out;
  dump_rec(j, out, indent, 0);
  return out.str();
}

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
      row.push_back(m(i, k));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) {
    throw std::invalid_argument("expected a nested array of numbers");
  }
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    if (static_cast<Eigen::Index>(j[i].size()) != cols) {
      throw std::invalid_argument("ragged matrix rows");
    }
    for (Eigen::Index k = 0; k < cols; ++k) {
      m(i, k) = j[i][k].get<Real>();
    }
  }
  return m;
}

Json covariance_to_json(const CovarianceMatrix& gamma) {
  return Json{{"n_modes", gamma.n_modes}, {"data", matrix_to_json(gamma.data)}};
}

CovarianceMatrix covariance_from_json(const Json& j) {
  const int n = j.at("n_modes").get<int>();
  Matrix data = matrix_from_json(j.at("data"));
  if (data.rows() != 2 * n || data.cols() != 2 * n) {
    throw std::invalid_argument("covariance data does not match n_modes");
  }
  return make_covariance(std::move(data));
}

Json channel_to_json(const GaussianChannel& channel) {
  return Json{{"M", matrix_to_json(channel.M)}, {"N", matrix_to_json(channel.N)}};
}

GaussianChannel channel_from_json(const Json& j) {
  const Matrix m = matrix_from_json(j.at("M"));
  const Matrix n = matrix_from_json(j.at("N"));
  if (m.rows() != 2 || m.cols() != 2 || n.rows() != 2 || n.cols() != 2) {
    throw std::invalid_argument("channel matrices must be 2x2");
  }
  return make_channel(m, n);
}

Json code_to_json(const GECCode& code) {
  return Json{{"n", code.n},
              {"S_E", matrix_to_json(code.S_E.data)},
              {"S_D", matrix_to_json(code.S_D.data)}};
}

GECCode code_from_json(const Json& j) {
  const int n = j.at("n").get<int>();
  SymplecticMatrix encoder = make_symplectic(matrix_from_json(j.at("S_E")));
  SymplecticMatrix decoder = make_symplectic(matrix_from_json(j.at("S_D")));
  return make_gecc(n, std::move(encoder), std::move(decoder));
}

Json degradation_to_json(const DegradationResult& result) {
  return Json{{"D", result.D},
              {"nu_minus_sq", real_to_json(result.nu_minus_squared)},
              {"log_negativity", real_to_json(result.log_negativity)},
              {"entanglement_breaking", result.entanglement_breaking},
              {"log_base", kLogBase}};
}

Json search_result_to_json(const SearchResult& result) {
  auto params_to_json = [](const Vector& v) {
    Json arr = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
    return arr;
  };
  return Json{{"best_D", result.best_D},
              {"baseline_D", result.baseline_D},
              {"evaluations", result.evaluations},
              {"skipped", result.skipped},
              {"seed", result.seed},
              {"violated", result.violated},
              {"best_det_M_GC", result.best_det_M_GC},
              {"best_det_N_GC", result.best_det_N_GC},
              {"best_params",
               Json{{"n", result.best_params.n},
                    {"encoder", params_to_json(result.best_params.encoder_params)},
                    {"decoder", params_to_json(result.best_params.decoder_params)}}}};
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open file: " + path);
  }
  Json j;
  try {
    in >> j;
  } catch (const Json::parse_error& e) {
    throw std::runtime_error("cannot parse " + path + ": " + e.what());
  }
  return j;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot open file for writing: " + path);
  }
  out << text;
  if (!out) {
    throw std::runtime_error("write failed: " + path);
  }
}

}  // namespace gqec
