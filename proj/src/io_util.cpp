#include "revkit/io_util.hpp"

#include <fstream>

namespace revkit::io {

void ByteWriter::write_file(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out.write(buf_.data(), static_cast<std::streamsize>(buf_.size()));
  if (!out) throw std::runtime_error("write failure on: " + path);
}

ByteReader ByteReader::from_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::vector<char> buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return ByteReader(std::move(buf));
}

std::string ByteReader::bytes(size_t n) {
  if (pos_ + n > buf_.size()) throw std::runtime_error("truncated file");
  std::string s(buf_.data() + pos_, n);
  pos_ += n;
  return s;
}

uint64_t fnv1a64(const char* data, size_t n) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (size_t i = 0; i < n; ++i) {
    h ^= static_cast<unsigned char>(data[i]);
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace revkit::io
