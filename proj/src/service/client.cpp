#include "reid/service/client.hpp"

#include <cerrno>
#include <cstring>

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

namespace reid {

Client::Client(const std::string& host, std::uint16_t port) {
  addrinfo hints{};
  hints.ai_family = AF_INET;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo* found = nullptr;
  const int rc = ::getaddrinfo(host.c_str(), std::to_string(port).c_str(), &hints, &found);
  if (rc != 0) throw ProtocolError("cannot resolve " + host + ": " + ::gai_strerror(rc));
  for (auto* a = found; a != nullptr; a = a->ai_next) {
    fd_ = ::socket(a->ai_family, a->ai_socktype, a->ai_protocol);
    if (fd_ < 0) continue;
    if (::connect(fd_, a->ai_addr, a->ai_addrlen) == 0) break;
    ::close(fd_);
    fd_ = -1;
  }
  ::freeaddrinfo(found);
  if (fd_ < 0) throw ProtocolError("cannot connect to " + host + ":" + std::to_string(port));
}

Client::~Client() {
  if (fd_ >= 0) ::close(fd_);
}

Message Client::call(const Message& request) {
  write_message(fd_, request);
  auto reply = read_message(fd_);
  if (!reply) throw ProtocolError("server closed the connection");
  if (reply->type == MessageType::kError) {
    const auto e = decode_error(*reply);
    throw RemoteError(static_cast<ErrorCode>(e.code), e.message);
  }
  return *reply;
}

std::uint32_t Client::enroll(std::uint32_t subject_id, const std::string& name, std::span<const double> descriptor) {
  const EnrollRequest r{subject_id, name, {descriptor.begin(), descriptor.end()}};
  return decode_enroll_reply(call(encode(r))).gallery_count;
}

std::vector<RankedSubject> Client::identify(std::span<const double> descriptor, std::uint32_t k) {
  const IdentifyRequest r{k, {descriptor.begin(), descriptor.end()}};
  return decode_identify_reply(call(encode(r))).ranking;
}

TagReply Client::parse_tags(const ParseTagsRequest& request) { return decode_tag_reply(call(encode(request))); }

}  // namespace reid
