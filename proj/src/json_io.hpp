#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <json.hpp>
#include <string>
#include <vector>

#include "ttolab/circlefn.hpp"
#include "ttolab/inner.hpp"

namespace ttolab::io {

using json = nlohmann::json;

// monomial / blaschke / singular / product / power, plus {"type":"family","name":...,"K":...}
InnerFunction parse_inner(const json& j);
json inner_to_json(const InnerFunction& theta);

// number, [re, im] or {"re": .., "im": ..}
cd parse_complex(const json& j);
json complex_to_json(cd z);
std::vector<cd> parse_complex_list(const json& j);
json complex_list_to_json(const Eigen::VectorXcd& v);
Eigen::MatrixXcd parse_matrix(const json& j);  // rows of [re, im] pairs
json matrix_to_json(const Eigen::MatrixXcd& m);
// [{"n": k, "re": x, "im": y}] or {"k": [re, im] or number}
FourierPolynomial parse_polynomial(const json& j);
json polynomial_to_json(const FourierPolynomial& p);

void require_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& where);

std::uint64_t fnv1a(const std::string& s);
std::string config_hash(const json& config);  // FNV-1a of the canonical dump, 16 hex digits

}  // namespace ttolab::io
