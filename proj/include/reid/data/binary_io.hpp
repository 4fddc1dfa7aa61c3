#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace reid {

// Little-endian encoder used by every persisted format and by the wire
// protocol. Byte order is explicit so files are portable across hosts.
class ByteWriter {
 public:
  void u8(std::uint8_t v) { bytes_.push_back(v); }
  void u16(std::uint16_t v);
  void u32(std::uint32_t v);
  void u64(std::uint64_t v);
  void f64(double v);
  void f64s(std::span<const double> values);
  void raw(std::span<const std::uint8_t> data);
  void raw(std::string_view text);
  // u16 length prefix followed by UTF-8 bytes.
  void str16(std::string_view text);

  const std::vector<std::uint8_t>& bytes() const { return bytes_; }
  std::vector<std::uint8_t> take() { return std::move(bytes_); }
  std::size_t size() const { return bytes_.size(); }

 private:
  std::vector<std::uint8_t> bytes_;
};

// Bounds-checked decoder. Every read past the end throws DataError naming
// the context passed at construction.
class ByteReader {
 public:
  ByteReader(std::span<const std::uint8_t> data, std::string context)
      : data_(data), context_(std::move(context)) {}

  std::uint8_t u8();
  std::uint16_t u16();
  std::uint32_t u32();
  std::uint64_t u64();
  double f64();
  std::vector<double> f64s(std::size_t count);
  std::span<const std::uint8_t> raw(std::size_t count);
  std::string str16();
  // Remaining bytes interpreted as UTF-8.
  std::string rest_as_string();

  void expect_magic(std::string_view magic);
  std::size_t remaining() const { return data_.size() - pos_; }
  bool at_end() const { return pos_ == data_.size(); }

 private:
  void require(std::size_t count) const;

  std::span<const std::uint8_t> data_;
  std::size_t pos_ = 0;
  std::string context_;
};

std::vector<std::uint8_t> read_file_bytes(const std::string& path);
// Writes to `path + ".tmp"` then renames, so readers never see a torn file.
void write_file_atomic(const std::string& path, std::span<const std::uint8_t> data);

}  // namespace reid
