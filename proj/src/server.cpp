#include <arpa/inet.h>
#include <netinet/in.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <string>
#include <thread>
#include <vector>

#include "hypergrid/engine_io.hpp"

namespace hg::io {

namespace {

bool send_all(int fd, const std::string& data) {
  std::size_t sent = 0;
  while (sent < data.size()) {
    const ssize_t n = ::send(fd, data.data() + sent, data.size() - sent, MSG_NOSIGNAL);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) return false;
    sent += static_cast<std::size_t>(n);
  }
  return true;
}

bool send_lines(int fd, const std::vector<std::string>& lines) {
  std::string buf;
  for (const auto& l : lines) buf += l + '\n';
  return send_all(fd, buf);
}

void run_connection(int fd, SessionConfig config, const std::atomic<bool>& stop) {
  std::optional<Session> session;
  try {
    session.emplace(config);
  } catch (const std::exception& e) {
    send_lines(fd, {canonical_dump(error_to_json(CommandError("", e.what())))});
    ::close(fd);
    return;
  }
  if (!send_lines(fd, {serialize_frame(session->snapshot())})) {
    ::close(fd);
    return;
  }
  std::string pending;
  char chunk[4096];
  while (!stop.load() && !session->closed()) {
    pollfd pfd{fd, POLLIN, 0};
    const int ready = ::poll(&pfd, 1, 100);
    if (ready < 0 && errno != EINTR) break;
    if (ready <= 0) continue;
    const ssize_t n = ::recv(fd, chunk, sizeof chunk, 0);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) break;
    pending.append(chunk, static_cast<std::size_t>(n));
    std::size_t nl;
    bool ok = true;
    while (ok && !session->closed() && (nl = pending.find('\n')) != std::string::npos) {
      std::string line = pending.substr(0, nl);
      pending.erase(0, nl + 1);
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.find_first_not_of(" \t") == std::string::npos) continue;
      ok = send_lines(fd, session->handle_line(line));
    }
    if (!ok) break;
  }
  ::close(fd);
}

}  // namespace

int serve(int port, const SessionConfig& config, const std::atomic<bool>& stop,
          const std::function<void(int)>& on_ready) {
  const int listener = ::socket(AF_INET, SOCK_STREAM, 0);
  if (listener < 0) return 1;
  const int yes = 1;
  ::setsockopt(listener, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof yes);
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
  addr.sin_port = htons(static_cast<std::uint16_t>(port));
  if (::bind(listener, reinterpret_cast<sockaddr*>(&addr), sizeof addr) < 0 || ::listen(listener, 16) < 0) {
    ::close(listener);
    return 1;
  }
  socklen_t len = sizeof addr;
  ::getsockname(listener, reinterpret_cast<sockaddr*>(&addr), &len);
  if (on_ready) on_ready(ntohs(addr.sin_port));

  std::vector<std::thread> workers;
  while (!stop.load()) {
    pollfd pfd{listener, POLLIN, 0};
    const int ready = ::poll(&pfd, 1, 100);
    if (ready <= 0) continue;
    const int fd = ::accept(listener, nullptr, nullptr);
    if (fd < 0) continue;
    workers.emplace_back(run_connection, fd, config, std::cref(stop));
  }
  for (auto& w : workers) w.join();
  ::close(listener);
  return 0;
}

}  // namespace hg::io
