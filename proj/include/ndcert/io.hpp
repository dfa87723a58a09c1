// io.hpp
// JSON schemas shared by the CLI and the certificates.
//
//   vector:        {"dim": d, "entries": [[re, im], ...]}
//   vector file:   [vector, ...]
//   index space:   {"axes": [...], "alphabet_size": d}
//   product spec:  {"axes": [...], "alphabet_size": d, "directions": {"axis": vector, ...}}
//   stage:         {"regime": "paper"|"toy", "levels": [{"m": 1, "d": 4}, ...]}
//
// Objects are serialized with sorted keys and no whitespace; those bytes are
// what digests are computed over.

#pragma once

#include "ndcert/family.hpp"
#include "ndcert/incline_search.hpp"
#include "ndcert/tensor_projection.hpp"

#include <json.hpp>

#include <filesystem>

namespace ndcert {

using Json = nlohmann::json;

/// Malformed or inconsistent input data.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string canonical_dump(const Json& j);

/// Lowercase hex SHA-256.
std::string sha256_hex(std::string_view bytes);

Json vector_to_json(const ComplexVector& v);
ComplexVector vector_from_json(const Json& j);
Json vectors_to_json(std::span<const ComplexVector> vectors);
std::vector<ComplexVector> vectors_from_json(const Json& j);

/// SHA-256 of the canonical vector-file bytes.
std::string vector_list_digest(std::span<const ComplexVector> vectors);

Json space_to_json(const TensorIndexSpace& space);
TensorIndexSpace space_from_json(const Json& j);

Json product_spec_to_json(const ProductProjectionSpec& spec);
ProductProjectionSpec product_spec_from_json(const Json& j);

Json stage_to_json(const StageParameters& stage);
StageParameters stage_from_json(const Json& j);

Json inclination_to_json(const InclinationCertificate& cert);
InclinationCertificate inclination_from_json(const Json& j);

Json suppression_to_json(const SuppressionCertificate& cert);
SuppressionCertificate suppression_from_json(const Json& j);

Json branch_spec_to_json(const BranchProjectionSpec& spec);
BranchProjectionSpec branch_spec_from_json(const Json& j);

Json read_json_file(const std::filesystem::path& path);
/// Writes canonical_dump(j) followed by a newline.
void write_json_file(const std::filesystem::path& path, const Json& j);

}  // namespace ndcert
