#include "reid/service/protocol.hpp"

#include <cerrno>
#include <cstring>

#include <sys/socket.h>
#include <unistd.h>

#include "reid/data/binary_io.hpp"

namespace reid {

namespace {

constexpr std::uint8_t kNoColor = 0xFF;

void write_descriptor(ByteWriter& w, std::span<const double> d) {
  w.u32(static_cast<std::uint32_t>(d.size()));
  w.f64s(d);
}

std::vector<double> read_descriptor(ByteReader& r) {
  const auto dim = r.u32();
  if (static_cast<std::size_t>(dim) * 8 > r.remaining()) throw DataError("descriptor longer than the message");
  return r.f64s(dim);
}

void expect_type(const Message& m, MessageType t) {
  if (m.type != t) {
    throw BadMessage(ErrorCode::kBadRequest, "unexpected message type " + std::to_string(static_cast<int>(m.type)));
  }
}

template <typename F>
auto decode_body(const Message& m, MessageType t, const char* what, F&& f) {
  expect_type(m, t);
  try {
    ByteReader r(m.body, what);
    auto out = f(r);
    if (!r.at_end()) throw DataError(std::string(what) + ": trailing bytes");
    return out;
  } catch (const BadMessage&) {
    throw;
  } catch (const Error& e) {
    throw BadMessage(ErrorCode::kBadRequest, e.what());
  }
}

bool valid_type(std::uint8_t t) { return t >= 1 && t <= 5; }

void write_all(int fd, const std::uint8_t* data, std::size_t n) {
  while (n > 0) {
    const ssize_t k = ::send(fd, data, n, MSG_NOSIGNAL);
    if (k < 0) {
      if (errno == EINTR) continue;
      throw ProtocolError(std::string("send failed: ") + std::strerror(errno));
    }
    data += k;
    n -= static_cast<std::size_t>(k);
  }
}

// Returns bytes read before EOF.
std::size_t read_all(int fd, std::uint8_t* data, std::size_t n) {
  std::size_t got = 0;
  while (got < n) {
    const ssize_t k = ::recv(fd, data + got, n - got, 0);
    if (k < 0) {
      if (errno == EINTR) continue;
      throw ProtocolError(std::string("recv failed: ") + std::strerror(errno));
    }
    if (k == 0) break;
    got += static_cast<std::size_t>(k);
  }
  return got;
}

}  // namespace

bool IdentifyReply::operator==(const IdentifyReply& o) const {
  if (ranking.size() != o.ranking.size()) return false;
  for (std::size_t i = 0; i < ranking.size(); ++i) {
    if (ranking[i].subject_id != o.ranking[i].subject_id) return false;
    if (std::memcmp(&ranking[i].distance, &o.ranking[i].distance, sizeof(double)) != 0) return false;
  }
  return true;
}

std::vector<std::uint8_t> frame_message(const Message& message) {
  if (message.body.size() > kMaxBodyBytes) throw ProtocolError("message body too large");
  ByteWriter w;
  w.u32(static_cast<std::uint32_t>(message.body.size()));
  w.u8(static_cast<std::uint8_t>(message.type));
  w.raw(message.body);
  return w.take();
}

std::optional<Message> parse_message(std::span<const std::uint8_t> bytes, std::size_t& consumed) {
  consumed = 0;
  if (bytes.size() < 5) return std::nullopt;
  ByteReader r(bytes.first(5), "message header");
  const auto length = r.u32();
  const auto type = r.u8();
  if (length > kMaxBodyBytes) throw ProtocolError("message body of " + std::to_string(length) + " bytes is too large");
  if (!valid_type(type)) throw ProtocolError("unknown message type " + std::to_string(type));
  if (bytes.size() - 5 < length) return std::nullopt;
  Message m;
  m.type = static_cast<MessageType>(type);
  m.body.assign(bytes.begin() + 5, bytes.begin() + 5 + length);
  consumed = 5 + length;
  return m;
}

Message encode(const EnrollRequest& m) {
  ByteWriter w;
  w.u32(m.subject_id);
  w.str16(m.name);
  write_descriptor(w, m.descriptor);
  return {MessageType::kEnroll, w.take()};
}

Message encode(const IdentifyRequest& m) {
  ByteWriter w;
  w.u32(m.k);
  write_descriptor(w, m.descriptor);
  return {MessageType::kIdentify, w.take()};
}

Message encode(const ParseTagsRequest& m) {
  ByteWriter w;
  w.u32(m.k);
  write_descriptor(w, m.descriptor);
  w.u8(m.frame ? 1 : 0);
  if (m.frame) {
    const auto& f = *m.frame;
    w.u32(f.width);
    w.u32(f.height);
    w.raw(f.rgb);
    w.raw(f.mask);
    for (const auto& j : f.joints) {
      w.f64(j.u);
      w.f64(j.v);
      w.u8(j.state);
    }
  }
  return {MessageType::kParseTags, w.take()};
}

Message encode(const EnrollReply& m) {
  ByteWriter w;
  w.u32(m.gallery_count);
  return {MessageType::kOk, w.take()};
}

Message encode(const IdentifyReply& m) {
  ByteWriter w;
  w.u32(static_cast<std::uint32_t>(m.ranking.size()));
  for (const auto& r : m.ranking) {
    w.u32(r.subject_id);
    w.f64(r.distance);
  }
  return {MessageType::kOk, w.take()};
}

Message encode(const TagReply& m) {
  ByteWriter w;
  w.u32(static_cast<std::uint32_t>(m.tags.size()));
  for (const auto& t : m.tags) {
    w.str16(t.name);
    w.u8(t.color ? static_cast<std::uint8_t>(*t.color) : kNoColor);
  }
  return {MessageType::kOk, w.take()};
}

Message encode(const ErrorReply& m) {
  ByteWriter w;
  w.u16(m.code);
  w.raw(m.message);
  return {MessageType::kError, w.take()};
}

EnrollRequest decode_enroll(const Message& m) {
  return decode_body(m, MessageType::kEnroll, "ENROLL", [](ByteReader& r) {
    EnrollRequest e;
    e.subject_id = r.u32();
    e.name = r.str16();
    e.descriptor = read_descriptor(r);
    return e;
  });
}

IdentifyRequest decode_identify(const Message& m) {
  return decode_body(m, MessageType::kIdentify, "IDENTIFY", [](ByteReader& r) {
    IdentifyRequest q;
    q.k = r.u32();
    q.descriptor = read_descriptor(r);
    return q;
  });
}

ParseTagsRequest decode_parse_tags(const Message& m) {
  return decode_body(m, MessageType::kParseTags, "PARSE_TAGS", [](ByteReader& r) {
    ParseTagsRequest q;
    q.k = r.u32();
    q.descriptor = read_descriptor(r);
    const auto has_frame = r.u8();
    if (has_frame > 1) throw BadMessage(ErrorCode::kBadRequest, "PARSE_TAGS: bad frame flag");
    if (!has_frame) return q;
    try {
      WireFrame f;
      f.width = r.u32();
      f.height = r.u32();
      const std::uint64_t pixels = static_cast<std::uint64_t>(f.width) * f.height;
      if (pixels == 0 || pixels * 4 > r.remaining()) throw DataError("frame size does not match the payload");
      const auto rgb = r.raw(static_cast<std::size_t>(pixels * 3));
      f.rgb.assign(rgb.begin(), rgb.end());
      const auto mask = r.raw(static_cast<std::size_t>(pixels));
      f.mask.assign(mask.begin(), mask.end());
      for (auto& j : f.joints) {
        j.u = r.f64();
        j.v = r.f64();
        j.state = r.u8();
        if (j.state > 2) throw DataError("bad joint tracking state");
      }
      if (!r.at_end()) throw DataError("trailing bytes after the frame");
      q.frame = std::move(f);
    } catch (const Error& e) {
      throw BadMessage(ErrorCode::kMalformedFrame, std::string("malformed frame: ") + e.what());
    }
    return q;
  });
}

EnrollReply decode_enroll_reply(const Message& m) {
  return decode_body(m, MessageType::kOk, "ENROLL reply", [](ByteReader& r) { return EnrollReply{r.u32()}; });
}

IdentifyReply decode_identify_reply(const Message& m) {
  return decode_body(m, MessageType::kOk, "IDENTIFY reply", [](ByteReader& r) {
    IdentifyReply out;
    const auto n = r.u32();
    if (static_cast<std::size_t>(n) * 12 > r.remaining()) throw DataError("ranking longer than the message");
    for (std::uint32_t i = 0; i < n; ++i) {
      RankedSubject s;
      s.subject_id = r.u32();
      s.distance = r.f64();
      out.ranking.push_back(s);
    }
    return out;
  });
}

TagReply decode_tag_reply(const Message& m) {
  return decode_body(m, MessageType::kOk, "PARSE_TAGS reply", [](ByteReader& r) {
    TagReply out;
    const auto n = r.u32();
    if (static_cast<std::size_t>(n) * 3 > r.remaining()) throw DataError("tag list longer than the message");
    for (std::uint32_t i = 0; i < n; ++i) {
      WireTag t;
      t.name = r.str16();
      const auto c = r.u8();
      if (c != kNoColor) {
        if (c >= kColorTermCount) throw DataError("unknown color term " + std::to_string(c));
        t.color = static_cast<ColorTerm>(c);
      }
      out.tags.push_back(std::move(t));
    }
    return out;
  });
}

ErrorReply decode_error(const Message& m) {
  return decode_body(m, MessageType::kError, "ERROR", [](ByteReader& r) {
    ErrorReply e;
    e.code = r.u16();
    e.message = r.rest_as_string();
    return e;
  });
}

WireFrame to_wire(const cv::Mat& rgb, const cv::Mat& mask, const Skeleton2D& pose) {
  if (rgb.type() != CV_8UC3 || mask.type() != CV_8UC1 || rgb.size() != mask.size()) {
    throw InvalidArgument("frame needs an RGB image and a same-sized 8-bit mask");
  }
  WireFrame f;
  f.width = static_cast<std::uint32_t>(rgb.cols);
  f.height = static_cast<std::uint32_t>(rgb.rows);
  for (int y = 0; y < rgb.rows; ++y) {
    const auto* row = rgb.ptr<std::uint8_t>(y);
    f.rgb.insert(f.rgb.end(), row, row + rgb.cols * 3);
    const auto* mrow = mask.ptr<std::uint8_t>(y);
    f.mask.insert(f.mask.end(), mrow, mrow + mask.cols);
  }
  for (std::size_t i = 0; i < static_cast<std::size_t>(kJointCount); ++i) {
    const auto& j = pose.joints[i];
    f.joints[i] = {j.position.u, j.position.v, static_cast<std::uint8_t>(j.state)};
  }
  return f;
}

void from_wire(const WireFrame& frame, cv::Mat& rgb, cv::Mat& mask, Skeleton2D& pose) {
  const auto w = static_cast<int>(frame.width);
  const auto h = static_cast<int>(frame.height);
  if (frame.rgb.size() != static_cast<std::size_t>(w) * h * 3 || frame.mask.size() != static_cast<std::size_t>(w) * h) {
    throw BadMessage(ErrorCode::kMalformedFrame, "frame buffers do not match its size");
  }
  rgb = cv::Mat(h, w, CV_8UC3, const_cast<std::uint8_t*>(frame.rgb.data())).clone();
  mask = cv::Mat(h, w, CV_8UC1, const_cast<std::uint8_t*>(frame.mask.data())).clone();
  for (std::size_t i = 0; i < static_cast<std::size_t>(kJointCount); ++i) {
    const auto& j = frame.joints[i];
    pose.joints[i].position = {j.u, j.v};
    pose.joints[i].state = static_cast<TrackingState>(j.state);
  }
}

void write_message(int fd, const Message& message) {
  const auto bytes = frame_message(message);
  write_all(fd, bytes.data(), bytes.size());
}

std::optional<Message> read_message(int fd) {
  std::uint8_t header[5];
  const auto got = read_all(fd, header, sizeof header);
  if (got == 0) return std::nullopt;
  if (got < sizeof header) throw ProtocolError("connection closed inside a message header");
  std::size_t consumed = 0;
  const std::uint32_t length = static_cast<std::uint32_t>(header[0]) | static_cast<std::uint32_t>(header[1]) << 8 |
                               static_cast<std::uint32_t>(header[2]) << 16 | static_cast<std::uint32_t>(header[3]) << 24;
  if (length > kMaxBodyBytes) throw ProtocolError("message body of " + std::to_string(length) + " bytes is too large");
  std::vector<std::uint8_t> buffer(header, header + 5);
  buffer.resize(5 + length);
  if (read_all(fd, buffer.data() + 5, length) < length) throw ProtocolError("connection closed inside a message body");
  auto m = parse_message(buffer, consumed);
  if (!m) throw ProtocolError("incomplete message");
  return m;
}

}  // namespace reid
