#pragma once

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "reid/pipeline.hpp"
#include "reid/retrieval/gallery.hpp"
#include "reid/service/protocol.hpp"

namespace reid {

struct ServerOptions {
  std::string host = "127.0.0.1";
  std::uint16_t port = 0;  // 0 picks a free port
  std::filesystem::path gallery_path;
  // Descriptor dimension; 0 takes it from an existing gallery file.
  std::uint32_t dim = 0;
  // Fashion gallery and parse models for PARSE_TAGS; optional.
  std::optional<std::filesystem::path> fashion_dir;
  std::optional<std::filesystem::path> model_dir;
  PipelineConfig config;
};

// Gallery state visible to readers. Replaced wholesale on enrollment.
struct GallerySnapshot {
  GalleryFile file;
  std::optional<Gallery> index;  // empty while the gallery has no entries
};

class Server {
 public:
  // Loads the gallery file if present and the fashion data if configured.
  explicit Server(ServerOptions options);
  ~Server();

  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  // Binds and listens; returns the bound port.
  std::uint16_t listen();
  // Accepts connections until stop(); one thread per connection.
  void serve();
  void stop();

  // Request dispatch, usable without sockets.
  Message handle(const Message& request);

  std::shared_ptr<const GallerySnapshot> snapshot() const;
  std::uint32_t dim() const { return dim_; }

 private:
  Message enroll(const EnrollRequest& request);
  Message identify(const IdentifyRequest& request) const;
  Message parse_tags(const ParseTagsRequest& request) const;
  void connection(int fd);

  ServerOptions options_;
  std::uint32_t dim_ = 0;
  mutable std::mutex snapshot_mutex_;
  std::shared_ptr<const GallerySnapshot> snapshot_;
  std::mutex writer_mutex_;

  std::optional<FashionGallery> fashion_;
  std::optional<ParseModels> parse_models_;

  int listen_fd_ = -1;
  std::atomic<bool> stopping_{false};
  std::mutex connections_mutex_;
  std::vector<std::thread> threads_;
  std::vector<int> client_fds_;
};

}  // namespace reid
