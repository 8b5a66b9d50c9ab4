#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "tec/bigint.hpp"

namespace tec {

// Append-only bit buffer. Bit 0 is the most significant bit of byte 0;
// the final partial byte is zero-padded.
class BitBuffer {
public:
    BitBuffer() = default;

    static BitBuffer from_bytes(Bytes bytes, std::size_t bit_len);
    static BitBuffer from_string(std::string_view zeros_and_ones);

    void push_bit(bool b);
    void push_uint(std::uint64_t value, unsigned bits);  // MSB first
    void append(const BitBuffer& other);

    bool bit(std::size_t i) const {
        if (i >= bit_len_)
            throw std::out_of_range("BitBuffer: bit index out of range");
        return (bytes_[i >> 3] >> (7 - (i & 7))) & 1;
    }

    std::size_t size() const { return bit_len_; }
    bool empty() const { return bit_len_ == 0; }
    const Bytes& bytes() const { return bytes_; }
    std::string to_string() const;

    bool operator==(const BitBuffer&) const = default;

private:
    Bytes bytes_;
    std::size_t bit_len_ = 0;
};

}  // namespace tec
