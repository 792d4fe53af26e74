#pragma once

#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

// Little-endian binary primitives shared by the checkpoint and segment-cache
// formats. Explicit byte composition, independent of host endianness.

namespace ieeg::io {

inline void write_u8(std::ostream& out, std::uint8_t v) {
  out.put(static_cast<char>(v));
}

inline void write_u32(std::ostream& out, std::uint32_t v) {
  char b[4] = {static_cast<char>(v & 0xFF), static_cast<char>((v >> 8) & 0xFF),
               static_cast<char>((v >> 16) & 0xFF), static_cast<char>((v >> 24) & 0xFF)};
  out.write(b, 4);
}

inline void write_u64(std::ostream& out, std::uint64_t v) {
  write_u32(out, static_cast<std::uint32_t>(v & 0xFFFFFFFFULL));
  write_u32(out, static_cast<std::uint32_t>(v >> 32));
}

inline void write_f64(std::ostream& out, double v) {
  std::uint64_t bits;
  static_assert(sizeof(bits) == sizeof(v));
  std::memcpy(&bits, &v, 8);
  write_u64(out, bits);
}

inline void write_f32(std::ostream& out, float v) {
  std::uint32_t bits;
  std::memcpy(&bits, &v, 4);
  write_u32(out, bits);
}

inline void write_string(std::ostream& out, const std::string& s) {
  write_u32(out, static_cast<std::uint32_t>(s.size()));
  out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

inline void fail_eof(const std::string& what) {
  throw std::runtime_error("unexpected end of data while reading " + what);
}

inline std::uint8_t read_u8(std::istream& in, const char* what) {
  int c = in.get();
  if (c == std::char_traits<char>::eof()) fail_eof(what);
  return static_cast<std::uint8_t>(c);
}

inline std::uint32_t read_u32(std::istream& in, const char* what) {
  unsigned char b[4];
  if (!in.read(reinterpret_cast<char*>(b), 4)) fail_eof(what);
  return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

inline std::uint64_t read_u64(std::istream& in, const char* what) {
  std::uint64_t lo = read_u32(in, what);
  std::uint64_t hi = read_u32(in, what);
  return lo | (hi << 32);
}

inline double read_f64(std::istream& in, const char* what) {
  std::uint64_t bits = read_u64(in, what);
  double v;
  std::memcpy(&v, &bits, 8);
  return v;
}

inline float read_f32(std::istream& in, const char* what) {
  std::uint32_t bits = read_u32(in, what);
  float v;
  std::memcpy(&v, &bits, 4);
  return v;
}

inline std::string read_string(std::istream& in, const char* what) {
  std::uint32_t n = read_u32(in, what);
  std::string s(n, '\0');
  if (n && !in.read(s.data(), n)) fail_eof(what);
  return s;
}

template <typename T>
void write_scalar_array(std::ostream& out, const T* data, std::size_t n) {
  if constexpr (sizeof(T) == 4) {
    for (std::size_t i = 0; i < n; ++i) write_f32(out, static_cast<float>(data[i]));
  } else {
    for (std::size_t i = 0; i < n; ++i) write_f64(out, static_cast<double>(data[i]));
  }
}

template <typename T>
void read_scalar_array(std::istream& in, T* data, std::size_t n, const char* what) {
  if constexpr (sizeof(T) == 4) {
    for (std::size_t i = 0; i < n; ++i) data[i] = static_cast<T>(read_f32(in, what));
  } else {
    for (std::size_t i = 0; i < n; ++i) data[i] = static_cast<T>(read_f64(in, what));
  }
}

}  // namespace ieeg::io
