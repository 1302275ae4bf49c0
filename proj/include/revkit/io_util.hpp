#pragma once

#include <cstdint>
#include <cstring>
#include <stdexcept>
#include <string>
#include <vector>

namespace revkit::io {

// Little-endian binary buffer helpers for the model and index files.

class ByteWriter {
 public:
  void u32(uint32_t v) { raw(&v, sizeof v); }
  void u64(uint64_t v) { raw(&v, sizeof v); }
  void f32(float v) { raw(&v, sizeof v); }
  void f64(double v) { raw(&v, sizeof v); }
  void bytes(const std::string& s) { raw(s.data(), s.size()); }

  const std::vector<char>& data() const { return buf_; }
  void write_file(const std::string& path) const;

 private:
  void raw(const void* p, size_t n) {
    const size_t off = buf_.size();
    buf_.resize(off + n);
    std::memcpy(buf_.data() + off, p, n);
  }
  std::vector<char> buf_;
};

class ByteReader {
 public:
  explicit ByteReader(std::vector<char> buf) : buf_(std::move(buf)) {}
  static ByteReader from_file(const std::string& path);

  uint32_t u32() { return get<uint32_t>(); }
  uint64_t u64() { return get<uint64_t>(); }
  float f32() { return get<float>(); }
  double f64() { return get<double>(); }
  std::string bytes(size_t n);

  size_t pos() const { return pos_; }
  size_t size() const { return buf_.size(); }
  size_t remaining() const { return buf_.size() - pos_; }
  const std::vector<char>& data() const { return buf_; }

 private:
  template <typename T>
  T get() {
    if (pos_ + sizeof(T) > buf_.size()) throw std::runtime_error("truncated file");
    T v;
    std::memcpy(&v, buf_.data() + pos_, sizeof(T));
    pos_ += sizeof(T);
    return v;
  }
  std::vector<char> buf_;
  size_t pos_ = 0;
};

// FNV-1a, the 64-bit checksum used by the binary formats.
uint64_t fnv1a64(const char* data, size_t n);

}  // namespace revkit::io
