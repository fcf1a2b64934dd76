#pragma once

// Packed binary words and keyed codebooks.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace vpstealth {

constexpr std::size_t blocks_for(std::size_t n) noexcept { return (n + 63) / 64; }

std::size_t hamming_weight(std::span<const std::uint64_t> x) noexcept;
/// Both spans must have the same length and zero padding bits.
std::size_t hamming_distance(std::span<const std::uint64_t> x,
                             std::span<const std::uint64_t> y) noexcept;

class BitString {
public:
  BitString() = default;
  explicit BitString(std::size_t n) : n_(n), blocks_(blocks_for(n), 0) {}

  /// Parses a string of '0'/'1' characters, symbol 0 first.
  static BitString from_string(std::string_view bits);

  std::size_t size() const noexcept { return n_; }
  bool test(std::size_t i) const noexcept { return (blocks_[i / 64] >> (i % 64)) & 1U; }
  void set(std::size_t i, bool value = true) noexcept;
  void flip(std::size_t i) noexcept { blocks_[i / 64] ^= std::uint64_t{1} << (i % 64); }

  std::span<const std::uint64_t> blocks() const noexcept { return blocks_; }
  std::span<std::uint64_t> blocks() noexcept { return blocks_; }

  std::size_t weight() const noexcept { return hamming_weight(blocks_); }
  std::string to_string() const;

  friend bool operator==(const BitString&, const BitString&) = default;

private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> blocks_;
};

/// M·K codewords of length n. Codeword (message w, key v) with 0-based
/// indices is stored at flat position v·M + w, so each subcodebook is a
/// contiguous run of M rows.
class Codebook {
public:
  /// All-zero codebook.
  Codebook(std::size_t n, std::size_t m, std::size_t k);

  /// Words listed in flat order (key-major). Throws std::invalid_argument on
  /// a count or length mismatch.
  static Codebook from_words(std::size_t m, std::size_t k,
                             const std::vector<std::string>& words);

  std::size_t n() const noexcept { return n_; }
  std::size_t m() const noexcept { return m_; }
  std::size_t k() const noexcept { return k_; }
  std::size_t size() const noexcept { return m_ * k_; }
  std::size_t stride() const noexcept { return stride_; }

  std::span<const std::uint64_t> row(std::size_t flat) const noexcept {
    return {bits_.data() + flat * stride_, stride_};
  }
  std::span<std::uint64_t> row(std::size_t flat) noexcept {
    return {bits_.data() + flat * stride_, stride_};
  }
  std::span<const std::uint64_t> word(std::size_t message, std::size_t key) const noexcept {
    return row(key * m_ + message);
  }

  BitString bitstring(std::size_t message, std::size_t key) const;

  /// Codeword as an integer mask, bit i = symbol i. Requires n <= 32.
  std::uint32_t mask(std::size_t flat) const noexcept {
    return static_cast<std::uint32_t>(bits_[flat * stride_]);
  }
  /// Masks of every codeword in flat order. Requires n <= 32.
  std::vector<std::uint32_t> masks() const;
  /// Masks of subcodebook `key`. Requires n <= 32.
  std::vector<std::uint32_t> subcode_masks(std::size_t key) const;

private:
  std::size_t n_;
  std::size_t m_;
  std::size_t k_;
  std::size_t stride_;
  std::vector<std::uint64_t> bits_;
};

}  // namespace vpstealth
