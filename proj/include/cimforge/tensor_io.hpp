// Tensor manifest files: JSON with base64-coded little-endian payload.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cimforge {

struct TensorFile {
    std::string name;
    std::vector<std::int64_t> shape;
    std::string dtype;  // "int8" or "uint8"
    std::vector<std::uint8_t> raw;

    std::int64_t element_count() const;
    std::vector<std::int32_t> as_int8() const;
    std::vector<std::uint32_t> as_uint8() const;

    static TensorFile from_int8(const std::string& name, const std::vector<std::int32_t>& values);
    static TensorFile from_uint8(const std::string& name, const std::vector<std::uint32_t>& values);
};

std::string tensor_to_json(const TensorFile& t);
// Throws std::invalid_argument on schema violations (bad dtype, shape /
// payload mismatch, broken base64).
TensorFile tensor_from_json(const std::string& json_text);

std::string base64_encode(const std::vector<std::uint8_t>& data);
std::vector<std::uint8_t> base64_decode(const std::string& text);

}  // namespace cimforge
