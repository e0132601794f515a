#include "cimforge/tensor_io.hpp"

#include <stdexcept>

#include <nlohmann/json.hpp>

namespace cimforge {

namespace {
constexpr char kAlphabet[] = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";

int decode_char(char c) {
    if (c >= 'A' && c <= 'Z') return c - 'A';
    if (c >= 'a' && c <= 'z') return c - 'a' + 26;
    if (c >= '0' && c <= '9') return c - '0' + 52;
    if (c == '+') return 62;
    if (c == '/') return 63;
    return -1;
}
}  // namespace

std::string base64_encode(const std::vector<std::uint8_t>& data) {
    std::string out;
    out.reserve((data.size() + 2) / 3 * 4);
    for (std::size_t i = 0; i < data.size(); i += 3) {
        std::uint32_t chunk = static_cast<std::uint32_t>(data[i]) << 16;
        const std::size_t remain = data.size() - i;
        if (remain > 1) chunk |= static_cast<std::uint32_t>(data[i + 1]) << 8;
        if (remain > 2) chunk |= data[i + 2];
        out += kAlphabet[(chunk >> 18) & 0x3F];
        out += kAlphabet[(chunk >> 12) & 0x3F];
        out += remain > 1 ? kAlphabet[(chunk >> 6) & 0x3F] : '=';
        out += remain > 2 ? kAlphabet[chunk & 0x3F] : '=';
    }
    return out;
}

std::vector<std::uint8_t> base64_decode(const std::string& text) {
    if (text.size() % 4 != 0) {
        throw std::invalid_argument("base64: length must be a multiple of 4");
    }
    std::vector<std::uint8_t> out;
    out.reserve(text.size() / 4 * 3);
    for (std::size_t i = 0; i < text.size(); i += 4) {
        int vals[4];
        int pad = 0;
        for (int k = 0; k < 4; ++k) {
            const char c = text[i + k];
            if (c == '=' && k >= 2) {
                vals[k] = 0;
                ++pad;
            } else {
                vals[k] = decode_char(c);
                if (vals[k] < 0 || pad > 0) {
                    throw std::invalid_argument("base64: invalid character");
                }
            }
        }
        const std::uint32_t chunk = (static_cast<std::uint32_t>(vals[0]) << 18) |
                                    (static_cast<std::uint32_t>(vals[1]) << 12) |
                                    (static_cast<std::uint32_t>(vals[2]) << 6) |
                                    static_cast<std::uint32_t>(vals[3]);
        out.push_back(static_cast<std::uint8_t>((chunk >> 16) & 0xFF));
        if (pad < 2) out.push_back(static_cast<std::uint8_t>((chunk >> 8) & 0xFF));
        if (pad < 1) out.push_back(static_cast<std::uint8_t>(chunk & 0xFF));
    }
    return out;
}

std::int64_t TensorFile::element_count() const {
    std::int64_t n = 1;
    for (std::int64_t d : shape) n *= d;
    return shape.empty() ? 0 : n;
}

std::vector<std::int32_t> TensorFile::as_int8() const {
    if (dtype != "int8") {
        throw std::invalid_argument("tensor '" + name + "': expected dtype int8, got " + dtype);
    }
    std::vector<std::int32_t> out(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        out[i] = static_cast<std::int8_t>(raw[i]);
    }
    return out;
}

std::vector<std::uint32_t> TensorFile::as_uint8() const {
    if (dtype != "uint8") {
        throw std::invalid_argument("tensor '" + name + "': expected dtype uint8, got " + dtype);
    }
    return {raw.begin(), raw.end()};
}

TensorFile TensorFile::from_int8(const std::string& name, const std::vector<std::int32_t>& values) {
    TensorFile t;
    t.name = name;
    t.dtype = "int8";
    t.shape = {static_cast<std::int64_t>(values.size())};
    t.raw.reserve(values.size());
    for (std::int32_t v : values) {
        if (v < -128 || v > 127) {
            throw std::invalid_argument("tensor '" + name + "': value outside int8 range");
        }
        t.raw.push_back(static_cast<std::uint8_t>(static_cast<std::int8_t>(v)));
    }
    return t;
}

TensorFile TensorFile::from_uint8(const std::string& name,
                                  const std::vector<std::uint32_t>& values) {
    TensorFile t;
    t.name = name;
    t.dtype = "uint8";
    t.shape = {static_cast<std::int64_t>(values.size())};
    t.raw.reserve(values.size());
    for (std::uint32_t v : values) {
        if (v > 255) {
            throw std::invalid_argument("tensor '" + name + "': value outside uint8 range");
        }
        t.raw.push_back(static_cast<std::uint8_t>(v));
    }
    return t;
}

std::string tensor_to_json(const TensorFile& t) {
    nlohmann::json j;
    j["name"] = t.name;
    j["shape"] = t.shape;
    j["dtype"] = t.dtype;
    j["data"] = base64_encode(t.raw);
    return j.dump(2);
}

TensorFile tensor_from_json(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("tensor: not valid JSON: ") + e.what());
    }
    TensorFile t;
    try {
        t.name = j.at("name").get<std::string>();
        t.shape = j.at("shape").get<std::vector<std::int64_t>>();
        t.dtype = j.at("dtype").get<std::string>();
        t.raw = base64_decode(j.at("data").get<std::string>());
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("tensor: bad manifest: ") + e.what());
    }
    if (t.dtype != "int8" && t.dtype != "uint8") {
        throw std::invalid_argument("tensor '" + t.name + "': dtype must be int8 or uint8");
    }
    if (t.element_count() != static_cast<std::int64_t>(t.raw.size())) {
        throw std::invalid_argument("tensor '" + t.name + "': shape does not match payload size");
    }
    return t;
}

}  // namespace cimforge
