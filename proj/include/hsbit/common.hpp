#pragma once

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace hsbit {

// Error hierarchy. The CLI maps these onto exit codes:
// UsageError -> 1, DataError (and subclasses) -> 2, NumericalError -> 3.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class UsageError : public Error {
 public:
  explicit UsageError(const std::string& msg) : Error(msg) {}
};

class ConfigError : public UsageError {
 public:
  explicit ConfigError(const std::string& msg) : UsageError(msg) {}
};

class DataError : public Error {
 public:
  explicit DataError(const std::string& msg) : Error(msg) {}
};

class DimensionError : public DataError {
 public:
  explicit DimensionError(const std::string& msg) : DataError(msg) {}
};

class FormatError : public DataError {
 public:
  explicit FormatError(const std::string& msg) : DataError(msg) {}
};

class GenerationError : public DataError {
 public:
  explicit GenerationError(const std::string& msg) : DataError(msg) {}
};

class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& msg) : Error(msg) {}
};

namespace detail {

inline std::string shape_string(const std::vector<int>& shape) {
  std::ostringstream os;
  os << '[';
  for (size_t i = 0; i < shape.size(); ++i) {
    if (i) os << 'x';
    os << shape[i];
  }
  os << ']';
  return os.str();
}

}  // namespace detail

// ---- little-endian binary helpers -----------------------------------------

inline void write_u8(std::ostream& os, uint8_t v) {
  os.put(static_cast<char>(v));
}

inline void write_u16le(std::ostream& os, uint16_t v) {
  char b[2] = {static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff)};
  os.write(b, 2);
}

inline void write_u32le(std::ostream& os, uint32_t v) {
  char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  os.write(b, 4);
}

inline void write_u64le(std::ostream& os, uint64_t v) {
  char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  os.write(b, 8);
}

inline void write_f32le(std::ostream& os, float v) {
  uint32_t u;
  std::memcpy(&u, &v, 4);
  write_u32le(os, u);
}

inline void write_f32le_array(std::ostream& os, const float* data, size_t n) {
  // x86 and every platform this targets is little-endian; bulk write with a
  // compile-time guard keeps the format bit-exact.
  static_assert(std::endian::native == std::endian::little,
                "big-endian hosts need byte swapping here");
  os.write(reinterpret_cast<const char*>(data), static_cast<std::streamsize>(n * 4));
}

struct ByteReader {
  std::istream& is;
  const std::string file;
  uint64_t offset = 0;

  ByteReader(std::istream& s, std::string name) : is(s), file(std::move(name)) {}

  void raw(void* dst, size_t n) {
    is.read(static_cast<char*>(dst), static_cast<std::streamsize>(n));
    if (static_cast<size_t>(is.gcount()) != n) {
      throw FormatError(file + ": truncated at byte offset " + std::to_string(offset));
    }
    offset += n;
  }

  uint8_t u8() {
    uint8_t v;
    raw(&v, 1);
    return v;
  }

  uint16_t u16() {
    uint8_t b[2];
    raw(b, 2);
    return static_cast<uint16_t>(b[0] | (b[1] << 8));
  }

  uint32_t u32() {
    uint8_t b[4];
    raw(b, 4);
    return static_cast<uint32_t>(b[0]) | (static_cast<uint32_t>(b[1]) << 8) |
           (static_cast<uint32_t>(b[2]) << 16) | (static_cast<uint32_t>(b[3]) << 24);
  }

  uint64_t u64() {
    uint64_t v = 0;
    uint8_t b[8];
    raw(b, 8);
    for (int i = 7; i >= 0; --i) v = (v << 8) | b[i];
    return v;
  }

  float f32() {
    uint32_t u = u32();
    float v;
    std::memcpy(&v, &u, 4);
    return v;
  }

  void f32_array(float* dst, size_t n) {
    static_assert(std::endian::native == std::endian::little,
                  "big-endian hosts need byte swapping here");
    raw(dst, n * 4);
  }

  void expect_magic(const char magic[4]) {
    char m[4];
    raw(m, 4);
    if (std::memcmp(m, magic, 4) != 0) {
      throw FormatError(file + ": bad magic at byte offset 0, expected \"" +
                        std::string(magic, 4) + "\" got \"" + std::string(m, 4) + "\"");
    }
  }
};

// ---- hashing / misc --------------------------------------------------------

inline uint64_t fnv1a64(const void* data, size_t n, uint64_t h = 0xcbf29ce484222325ull) {
  const auto* p = static_cast<const uint8_t*>(data);
  for (size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ull;
  }
  return h;
}

inline uint64_t fnv1a64_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open file for hashing: " + path);
  uint64_t h = 0xcbf29ce484222325ull;
  char buf[1 << 16];
  while (in) {
    in.read(buf, sizeof(buf));
    h = fnv1a64(buf, static_cast<size_t>(in.gcount()), h);
  }
  return h;
}

inline std::string hex64(uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i) {
    s[static_cast<size_t>(i)] = digits[v & 0xf];
    v >>= 4;
  }
  return s;
}

// Derives an independent stream seed; used to keep placement and noise
// draws decoupled inside the scene generator.
inline uint64_t mix_seed(uint64_t seed, uint64_t salt) {
  uint64_t z = seed + 0x9e3779b97f4a7c15ull * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace hsbit
