#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>

#include "vjoin/errors.hpp"

namespace vjoin::detail {

// Little-endian primitives, independent of host byte order.

inline void write_bytes(std::ostream& out, std::string_view bytes) {
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

template <typename UInt>
void write_le(std::ostream& out, UInt value) {
  std::array<char, sizeof(UInt)> buf{};
  for (std::size_t i = 0; i < sizeof(UInt); ++i) {
    buf[i] = static_cast<char>((value >> (8 * i)) & 0xFF);
  }
  out.write(buf.data(), buf.size());
}

inline void write_f32(std::ostream& out, float value) {
  write_le(out, std::bit_cast<std::uint32_t>(value));
}

class Reader {
 public:
  Reader(std::istream& in, std::string what) : in_(in), what_(std::move(what)) {}

  void read_exact(char* dst, std::size_t n, const char* field) {
    in_.read(dst, static_cast<std::streamsize>(n));
    if (static_cast<std::size_t>(in_.gcount()) != n) {
      throw FormatError(what_ + ": truncated while reading " + field);
    }
  }

  template <typename UInt>
  UInt le(const char* field) {
    std::array<unsigned char, sizeof(UInt)> buf{};
    read_exact(reinterpret_cast<char*>(buf.data()), buf.size(), field);
    UInt value = 0;
    for (std::size_t i = 0; i < sizeof(UInt); ++i) {
      value |= static_cast<UInt>(buf[i]) << (8 * i);
    }
    return value;
  }

  float f32(const char* field) {
    return std::bit_cast<float>(le<std::uint32_t>(field));
  }

  void expect_magic(std::string_view magic) {
    std::string got(magic.size(), '\0');
    read_exact(got.data(), got.size(), "magic");
    if (got != magic) {
      throw VersionError(what_ + ": bad magic, expected " + std::string(magic));
    }
  }

  void expect_end() {
    if (in_.peek() != std::char_traits<char>::eof()) {
      throw FormatError(what_ + ": trailing bytes after payload");
    }
  }

  const std::string& what() const { return what_; }

 private:
  std::istream& in_;
  std::string what_;
};

}  // namespace vjoin::detail
