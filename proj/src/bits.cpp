#include "tec/bits.hpp"

namespace tec {

BitBuffer BitBuffer::from_bytes(Bytes bytes, std::size_t bit_len) {
    if (bytes.size() != (bit_len + 7) / 8)
        throw std::invalid_argument("BitBuffer: byte count does not match bit length");
    BitBuffer b;
    b.bytes_ = std::move(bytes);
    b.bit_len_ = bit_len;
    return b;
}

BitBuffer BitBuffer::from_string(std::string_view s) {
    BitBuffer b;
    for (char c : s) {
        if (c != '0' && c != '1')
            throw std::invalid_argument("BitBuffer: expected only '0'/'1'");
        b.push_bit(c == '1');
    }
    return b;
}

void BitBuffer::push_bit(bool v) {
    if (bit_len_ % 8 == 0)
        bytes_.push_back(0);
    if (v)
        bytes_.back() |= static_cast<std::uint8_t>(1u << (7 - (bit_len_ & 7)));
    ++bit_len_;
}

void BitBuffer::push_uint(std::uint64_t value, unsigned bits) {
    if (bits > 64)
        throw std::invalid_argument("BitBuffer: push_uint supports at most 64 bits");
    for (unsigned i = 0; i < bits; ++i)
        push_bit((value >> (bits - 1 - i)) & 1);
}

void BitBuffer::append(const BitBuffer& other) {
    for (std::size_t i = 0; i < other.size(); ++i)
        push_bit(other.bit(i));
}

std::string BitBuffer::to_string() const {
    std::string s;
    s.reserve(bit_len_);
    for (std::size_t i = 0; i < bit_len_; ++i)
        s.push_back(bit(i) ? '1' : '0');
    return s;
}

}  // namespace tec
