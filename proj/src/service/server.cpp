#include "reid/service/server.hpp"

#include <cerrno>
#include <cstring>
#include <iostream>

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include "reid/data/vocabulary.hpp"
#include "reid/features/pixel_features.hpp"

namespace reid {

namespace {

Message error_message(ErrorCode code, const std::string& text) {
  return encode(ErrorReply{static_cast<std::uint16_t>(code), text});
}

std::string dim_text(std::size_t got, std::uint32_t want) {
  return "descriptor has dimension " + std::to_string(got) + ", expected " + std::to_string(want);
}

}  // namespace

Server::Server(ServerOptions options) : options_(std::move(options)) {
  auto snap = std::make_shared<GallerySnapshot>();
  if (!options_.gallery_path.empty() && std::filesystem::exists(options_.gallery_path)) {
    snap->file = load_gallery(options_.gallery_path.string());
    if (options_.dim != 0 && snap->file.dim != options_.dim) {
      throw DataError("gallery " + options_.gallery_path.string() + " has dimension " +
                      std::to_string(snap->file.dim) + ", server configured for " + std::to_string(options_.dim));
    }
  } else {
    snap->file.dim = options_.dim;
  }
  dim_ = snap->file.dim;
  if (dim_ == 0) throw InvalidArgument("server needs a descriptor dimension or an existing gallery");
  if (!snap->file.entries.empty()) snap->index.emplace(dim_, snap->file.entries);
  snapshot_ = std::move(snap);

  if (options_.fashion_dir) {
    if (!options_.model_dir) throw InvalidArgument("a fashion gallery needs the parse model directory");
    fashion_.emplace(load_fashion_store(*options_.fashion_dir));
    parse_models_ = ParseModels::load(*options_.model_dir);
  }
}

Server::~Server() {
  stop();
}

std::shared_ptr<const GallerySnapshot> Server::snapshot() const {
  std::lock_guard lock(snapshot_mutex_);
  return snapshot_;
}

Message Server::handle(const Message& request) {
  try {
    switch (request.type) {
      case MessageType::kEnroll:
        return enroll(decode_enroll(request));
      case MessageType::kIdentify:
        return identify(decode_identify(request));
      case MessageType::kParseTags:
        return parse_tags(decode_parse_tags(request));
      default:
        return error_message(ErrorCode::kBadRequest, "not a request type");
    }
  } catch (const BadMessage& e) {
    return error_message(e.code(), e.what());
  } catch (const Error& e) {
    return error_message(ErrorCode::kBadRequest, e.what());
  }
}

Message Server::enroll(const EnrollRequest& request) {
  if (request.descriptor.size() != dim_) {
    return error_message(ErrorCode::kDimensionMismatch, dim_text(request.descriptor.size(), dim_));
  }
  std::lock_guard writer(writer_mutex_);
  auto next = std::make_shared<GallerySnapshot>();
  next->file = snapshot()->file;
  next->file.entries.push_back({request.subject_id, request.name, request.descriptor});
  next->index.emplace(dim_, next->file.entries);
  if (!options_.gallery_path.empty()) save_gallery(next->file, options_.gallery_path.string());
  const auto count = static_cast<std::uint32_t>(next->file.entries.size());
  {
    std::lock_guard lock(snapshot_mutex_);
    snapshot_ = std::move(next);
  }
  return encode(EnrollReply{count});
}

Message Server::identify(const IdentifyRequest& request) const {
  if (request.descriptor.size() != dim_) {
    return error_message(ErrorCode::kDimensionMismatch, dim_text(request.descriptor.size(), dim_));
  }
  if (request.k == 0) return error_message(ErrorCode::kBadRequest, "K must be at least 1");
  const auto snap = snapshot();
  if (!snap->index) return error_message(ErrorCode::kEmptyGallery, "gallery is empty");
  return encode(IdentifyReply{snap->index->identify(request.descriptor, request.k)});
}

Message Server::parse_tags(const ParseTagsRequest& request) const {
  if (!fashion_) return error_message(ErrorCode::kMissingFashionGallery, "no fashion gallery loaded");
  if (request.descriptor.size() != fashion_->dim()) {
    return error_message(ErrorCode::kDimensionMismatch,
                         dim_text(request.descriptor.size(), static_cast<std::uint32_t>(fashion_->dim())));
  }
  if (request.k == 0) return error_message(ErrorCode::kBadRequest, "K must be at least 1");
  const auto& vocab = Vocabulary::canonical();
  PipelineConfig config = options_.config;
  config.tag_neighbors = request.k;

  TagReply reply;
  if (!request.frame) {
    for (LabelId t : fashion_->retrieve_tags(request.descriptor, config.tag_neighbors, config.vote_min)) {
      reply.tags.push_back({vocab.name(t), std::nullopt});
    }
    return encode(reply);
  }

  PersonView view;
  from_wire(*request.frame, view.rgb, view.mask, view.pose);
  FeatureMap features;
  try {
    features = person_features(view, parse_models_->skin_hair, config.descriptor.features);
  } catch (const Error& e) {
    return error_message(ErrorCode::kMalformedFrame, std::string("frame rejected: ") + e.what());
  }
  const ParseResult parse = parse_person(view, features, request.descriptor, *fashion_, *parse_models_, config);
  std::map<LabelId, ColorTerm> colors;
  for (const auto& c : item_colors(view.rgb, parse, config.color_space)) colors[c.label] = c.term;
  for (LabelId t : parse.tags) {
    WireTag tag{vocab.name(t), std::nullopt};
    if (auto it = colors.find(t); it != colors.end()) tag.color = it->second;
    reply.tags.push_back(std::move(tag));
  }
  return encode(reply);
}

std::uint16_t Server::listen() {
  listen_fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
  if (listen_fd_ < 0) throw ProtocolError(std::string("socket: ") + std::strerror(errno));
  const int one = 1;
  ::setsockopt(listen_fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(options_.port);
  if (::inet_pton(AF_INET, options_.host.c_str(), &addr.sin_addr) != 1) {
    throw InvalidArgument("bad listen address " + options_.host);
  }
  if (::bind(listen_fd_, reinterpret_cast<sockaddr*>(&addr), sizeof addr) < 0) {
    throw ProtocolError("bind " + options_.host + ":" + std::to_string(options_.port) + ": " + std::strerror(errno));
  }
  if (::listen(listen_fd_, 64) < 0) throw ProtocolError(std::string("listen: ") + std::strerror(errno));
  socklen_t len = sizeof addr;
  ::getsockname(listen_fd_, reinterpret_cast<sockaddr*>(&addr), &len);
  return ntohs(addr.sin_port);
}

void Server::serve() {
  if (listen_fd_ < 0) listen();
  while (!stopping_) {
    const int fd = ::accept(listen_fd_, nullptr, nullptr);
    if (fd < 0) {
      if (errno == EINTR) continue;
      if (stopping_) break;
      throw ProtocolError(std::string("accept: ") + std::strerror(errno));
    }
    std::lock_guard lock(connections_mutex_);
    client_fds_.push_back(fd);
    threads_.emplace_back([this, fd] { connection(fd); });
  }
}

void Server::connection(int fd) {
  try {
    while (auto request = read_message(fd)) write_message(fd, handle(*request));
  } catch (const ProtocolError& e) {
    // Framing errors leave the stream unusable; report and hang up.
    try {
      write_message(fd, error_message(ErrorCode::kBadRequest, e.what()));
    } catch (const Error&) {
    }
  }
  std::lock_guard lock(connections_mutex_);
  std::erase(client_fds_, fd);
  ::close(fd);
}

void Server::stop() {
  if (stopping_.exchange(true)) return;
  if (listen_fd_ >= 0) {
    ::shutdown(listen_fd_, SHUT_RDWR);
    ::close(listen_fd_);
  }
  std::vector<std::thread> threads;
  {
    std::lock_guard lock(connections_mutex_);
    for (int fd : client_fds_) ::shutdown(fd, SHUT_RDWR);
    threads.swap(threads_);
  }
  for (auto& t : threads) t.join();
}

}  // namespace reid
