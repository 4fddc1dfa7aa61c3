#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "reid/service/protocol.hpp"

namespace reid {

// Blocking client for one connection. ERROR replies raise RemoteError.
class Client {
 public:
  Client(const std::string& host, std::uint16_t port);
  ~Client();

  Client(const Client&) = delete;
  Client& operator=(const Client&) = delete;

  Message call(const Message& request);

  std::uint32_t enroll(std::uint32_t subject_id, const std::string& name, std::span<const double> descriptor);
  std::vector<RankedSubject> identify(std::span<const double> descriptor, std::uint32_t k);
  TagReply parse_tags(const ParseTagsRequest& request);

 private:
  int fd_ = -1;
};

}  // namespace reid
