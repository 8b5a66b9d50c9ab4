#pragma once

#include <arpa/inet.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cstring>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>

#include "tec/bigint.hpp"
#include "tec/errors.hpp"

namespace tecnet {

class Fd {
public:
    Fd() = default;
    explicit Fd(int fd) : fd_(fd) {}
    Fd(Fd&& o) noexcept : fd_(std::exchange(o.fd_, -1)) {}
    Fd& operator=(Fd&& o) noexcept {
        if (this != &o) {
            close_now();
            fd_ = std::exchange(o.fd_, -1);
        }
        return *this;
    }
    Fd(const Fd&) = delete;
    Fd& operator=(const Fd&) = delete;
    ~Fd() { close_now(); }

    int get() const { return fd_; }
    bool valid() const { return fd_ >= 0; }

private:
    void close_now() {
        if (fd_ >= 0)
            ::close(fd_);
        fd_ = -1;
    }
    int fd_ = -1;
};

inline sockaddr_in make_addr(const std::string& host, std::uint16_t port) {
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_port = htons(port);
    if (::inet_pton(AF_INET, host.c_str(), &addr.sin_addr) != 1)
        throw std::runtime_error("bad IPv4 address: " + host);
    return addr;
}

inline Fd listen_on(const std::string& host, std::uint16_t port, std::uint16_t& bound_port) {
    Fd fd(::socket(AF_INET, SOCK_STREAM, 0));
    if (!fd.valid())
        throw std::runtime_error("socket() failed");
    int yes = 1;
    ::setsockopt(fd.get(), SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));
    sockaddr_in addr = make_addr(host, port);
    if (::bind(fd.get(), reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0)
        throw std::runtime_error("bind() failed on " + host + ":" + std::to_string(port));
    if (::listen(fd.get(), 16) != 0)
        throw std::runtime_error("listen() failed");
    socklen_t len = sizeof(addr);
    if (::getsockname(fd.get(), reinterpret_cast<sockaddr*>(&addr), &len) != 0)
        throw std::runtime_error("getsockname() failed");
    bound_port = ntohs(addr.sin_port);
    return fd;
}

inline Fd accept_conn(const Fd& listener) {
    int fd = ::accept(listener.get(), nullptr, nullptr);
    if (fd < 0)
        throw std::runtime_error("accept() failed");
    return Fd(fd);
}

inline Fd connect_to(const std::string& host, std::uint16_t port) {
    Fd fd(::socket(AF_INET, SOCK_STREAM, 0));
    if (!fd.valid())
        throw std::runtime_error("socket() failed");
    sockaddr_in addr = make_addr(host, port);
    if (::connect(fd.get(), reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0)
        throw std::runtime_error("connect() failed to " + host + ":" + std::to_string(port));
    return fd;
}

inline void send_all(int fd, std::span<const std::uint8_t> data) {
    std::size_t sent = 0;
    while (sent < data.size()) {
        const ssize_t n = ::send(fd, data.data() + sent, data.size() - sent, MSG_NOSIGNAL);
        if (n <= 0)
            throw std::runtime_error("send() failed");
        sent += static_cast<std::size_t>(n);
    }
}

inline tec::Bytes recv_exact(int fd, std::size_t count) {
    tec::Bytes out(count);
    std::size_t got = 0;
    while (got < count) {
        const ssize_t n = ::recv(fd, out.data() + got, count - got, 0);
        if (n <= 0)
            throw std::runtime_error("connection closed mid-frame");
        got += static_cast<std::size_t>(n);
    }
    return out;
}

// Reads one protocol frame: 1 type byte + 4-byte length + body.
inline tec::Bytes read_frame(int fd) {
    tec::Bytes frame = recv_exact(fd, 5);
    std::uint64_t body_len = 0;
    for (int i = 1; i < 5; ++i)
        body_len = (body_len << 8) | frame[static_cast<std::size_t>(i)];
    if (body_len > (1u << 20))
        throw tec::FrameError("frame: body exceeds 1 MiB");
    tec::Bytes body = recv_exact(fd, body_len);
    frame.insert(frame.end(), body.begin(), body.end());
    return frame;
}

inline void write_frame(int fd, const tec::Bytes& frame) {
    send_all(fd, frame);
}

// "host:port" -> pair; port may be 0 to request an ephemeral port.
inline std::pair<std::string, std::uint16_t> split_endpoint(const std::string& endpoint) {
    const auto colon = endpoint.rfind(':');
    if (colon == std::string::npos)
        throw std::runtime_error("endpoint must look like host:port");
    const std::string host = endpoint.substr(0, colon);
    const int port = std::stoi(endpoint.substr(colon + 1));
    if (port < 0 || port > 0xFFFF)
        throw std::runtime_error("port out of range");
    return {host.empty() ? "127.0.0.1" : host, static_cast<std::uint16_t>(port)};
}

}  // namespace tecnet
