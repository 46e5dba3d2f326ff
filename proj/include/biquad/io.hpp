#pragma once

#include <json.hpp>

#include <string>

#include "biquad/certificate.hpp"
#include "biquad/tensor.hpp"

namespace biquad::io {

// Tensor files:      {"m", "n", "entries": [{"i","j","k","l","v":"p/q"}, ...]}
// Certificate files: {"m", "n", "terms": [{"weight":"p/q", "W":[["p/q",...],...]}]}
// Indices are 1-based; omitted tensor entries are zero; rationals are strings.

nlohmann::json to_json(const BiquadraticTensor& t);
nlohmann::json to_json(const SOSCertificate& cert);

/// Throws ParseError (schema) or DimensionError (index or shape).
BiquadraticTensor tensor_from_json(const nlohmann::json& doc);
SOSCertificate certificate_from_json(const nlohmann::json& doc);

/// Accepts a JSON string "p/q" or a JSON integer.
Rational rational_from_json(const nlohmann::json& value);

/// Parses text; ParseError message carries line and column.
nlohmann::json parse_document(const std::string& text, const std::string& source);
nlohmann::json read_document(const std::string& path);

/// Sorted keys, two-space indent, trailing newline.
std::string dump(const nlohmann::json& doc);

}  // namespace biquad::io
