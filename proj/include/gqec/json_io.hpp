#pragma once

#include <string>

#include <json.hpp>

#include "gqec/gecc.hpp"
#include "gqec/search.hpp"
#include "gqec/teleport.hpp"

namespace gqec {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;
inline constexpr int kLogBase = 2;

/// %.17g, round-trip faithful.
std::string format_real(Real v);

/// Numbers become JSON numbers; infinities become the string "inf"/"-inf".
Json real_to_json(Real v);
Real real_from_json(const Json& j);

/// Serialize with every floating-point value printed to 17 significant digits.
std::string dump_with_full_precision(const Json& j, int indent = 2);

Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

/// {"n_modes": int, "data": [[...]]}
Json covariance_to_json(const CovarianceMatrix& gamma);
CovarianceMatrix covariance_from_json(const Json& j);

/// {"M": [[...]], "N": [[...]]}
Json channel_to_json(const GaussianChannel& channel);
GaussianChannel channel_from_json(const Json& j);

/// {"n": int, "S_E": [[...]], "S_D": [[...]]}
Json code_to_json(const GECCode& code);
GECCode code_from_json(const Json& j);

/// {"D", "nu_minus_sq", "log_negativity", "entanglement_breaking", "log_base"}
Json degradation_to_json(const DegradationResult& result);

Json search_result_to_json(const SearchResult& result);

Json load_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace gqec
