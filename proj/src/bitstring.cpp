#include "vpstealth/bitstring.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace vpstealth {

std::size_t hamming_weight(std::span<const std::uint64_t> x) noexcept {
  std::size_t w = 0;
  for (std::uint64_t b : x) w += static_cast<std::size_t>(std::popcount(b));
  return w;
}

std::size_t hamming_distance(std::span<const std::uint64_t> x,
                             std::span<const std::uint64_t> y) noexcept {
  std::size_t d = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    d += static_cast<std::size_t>(std::popcount(x[i] ^ y[i]));
  }
  return d;
}

BitString BitString::from_string(std::string_view bits) {
  BitString out(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      out.set(i);
    } else if (bits[i] != '0') {
      throw std::invalid_argument("BitString: expected only '0' and '1'");
    }
  }
  return out;
}

void BitString::set(std::size_t i, bool value) noexcept {
  const std::uint64_t bit = std::uint64_t{1} << (i % 64);
  if (value) {
    blocks_[i / 64] |= bit;
  } else {
    blocks_[i / 64] &= ~bit;
  }
}

std::string BitString::to_string() const {
  std::string s(n_, '0');
  for (std::size_t i = 0; i < n_; ++i) {
    if (test(i)) s[i] = '1';
  }
  return s;
}

Codebook::Codebook(std::size_t n, std::size_t m, std::size_t k)
    : n_(n), m_(m), k_(k), stride_(blocks_for(n)), bits_(m * k * blocks_for(n), 0) {
  if (n == 0 || m == 0 || k == 0) {
    throw std::invalid_argument("Codebook: n, m and k must be positive");
  }
}

Codebook Codebook::from_words(std::size_t m, std::size_t k,
                              const std::vector<std::string>& words) {
  if (words.empty() || words.size() != m * k) {
    throw std::invalid_argument("Codebook::from_words: expected m·k words");
  }
  Codebook code(words.front().size(), m, k);
  for (std::size_t f = 0; f < words.size(); ++f) {
    if (words[f].size() != code.n()) {
      throw std::invalid_argument("Codebook::from_words: words differ in length");
    }
    const BitString w = BitString::from_string(words[f]);
    auto dst = code.row(f);
    std::copy(w.blocks().begin(), w.blocks().end(), dst.begin());
  }
  return code;
}

BitString Codebook::bitstring(std::size_t message, std::size_t key) const {
  BitString out(n_);
  const auto src = word(message, key);
  std::copy(src.begin(), src.end(), out.blocks().begin());
  return out;
}

std::vector<std::uint32_t> Codebook::masks() const {
  std::vector<std::uint32_t> out(size());
  for (std::size_t f = 0; f < size(); ++f) out[f] = mask(f);
  return out;
}

std::vector<std::uint32_t> Codebook::subcode_masks(std::size_t key) const {
  std::vector<std::uint32_t> out(m_);
  for (std::size_t w = 0; w < m_; ++w) out[w] = mask(key * m_ + w);
  return out;
}

}  // namespace vpstealth
