#include "reid/data/binary_io.hpp"

#include <bit>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>

#include "reid/error.hpp"

namespace reid {

void ByteWriter::u16(std::uint16_t v) {
  for (int i = 0; i < 2; ++i) bytes_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void ByteWriter::u32(std::uint32_t v) {
  for (int i = 0; i < 4; ++i) bytes_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void ByteWriter::u64(std::uint64_t v) {
  for (int i = 0; i < 8; ++i) bytes_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void ByteWriter::f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }

void ByteWriter::f64s(std::span<const double> values) {
  bytes_.reserve(bytes_.size() + 8 * values.size());
  for (double v : values) f64(v);
}

void ByteWriter::raw(std::span<const std::uint8_t> data) {
  bytes_.insert(bytes_.end(), data.begin(), data.end());
}

void ByteWriter::raw(std::string_view text) {
  bytes_.insert(bytes_.end(), text.begin(), text.end());
}

void ByteWriter::str16(std::string_view text) {
  if (text.size() > 0xFFFF) throw InvalidArgument("string longer than 65535 bytes");
  u16(static_cast<std::uint16_t>(text.size()));
  raw(text);
}

void ByteReader::require(std::size_t count) const {
  if (count > data_.size() - pos_) {
    throw DataError(context_ + ": truncated (need " + std::to_string(count) + " bytes at offset " +
                    std::to_string(pos_) + ", have " + std::to_string(data_.size() - pos_) + ")");
  }
}

std::uint8_t ByteReader::u8() {
  require(1);
  return data_[pos_++];
}

std::uint16_t ByteReader::u16() {
  require(2);
  std::uint16_t v = 0;
  for (int i = 0; i < 2; ++i) v |= static_cast<std::uint16_t>(data_[pos_ + i]) << (8 * i);
  pos_ += 2;
  return v;
}

std::uint32_t ByteReader::u32() {
  require(4);
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(data_[pos_ + i]) << (8 * i);
  pos_ += 4;
  return v;
}

std::uint64_t ByteReader::u64() {
  require(8);
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(data_[pos_ + i]) << (8 * i);
  pos_ += 8;
  return v;
}

double ByteReader::f64() { return std::bit_cast<double>(u64()); }

std::vector<double> ByteReader::f64s(std::size_t count) {
  if (count > remaining() / 8) require(count * 8);
  std::vector<double> out(count);
  for (auto& v : out) v = f64();
  return out;
}

std::span<const std::uint8_t> ByteReader::raw(std::size_t count) {
  require(count);
  auto out = data_.subspan(pos_, count);
  pos_ += count;
  return out;
}

std::string ByteReader::str16() {
  const auto n = u16();
  auto bytes = raw(n);
  return std::string(bytes.begin(), bytes.end());
}

std::string ByteReader::rest_as_string() {
  auto bytes = raw(remaining());
  return std::string(bytes.begin(), bytes.end());
}

void ByteReader::expect_magic(std::string_view magic) {
  auto bytes = raw(magic.size());
  if (!std::equal(bytes.begin(), bytes.end(), magic.begin())) {
    throw DataError(context_ + ": bad magic, expected '" + std::string(magic) + "'");
  }
}

std::vector<std::uint8_t> read_file_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path);
  return std::vector<std::uint8_t>(std::istreambuf_iterator<char>(in), {});
}

void write_file_atomic(const std::string& path, std::span<const std::uint8_t> data) {
  const std::string tmp = path + ".tmp";
  {
    std::FILE* f = std::fopen(tmp.c_str(), "wb");
    if (f == nullptr) throw DataError("cannot write " + tmp);
    const bool ok = std::fwrite(data.data(), 1, data.size(), f) == data.size() &&
                    std::fflush(f) == 0;
    std::fclose(f);
    if (!ok) throw DataError("short write to " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw DataError("cannot rename " + tmp + " to " + path + ": " + ec.message());
}

}  // namespace reid
