#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "opetope/error.hpp"

namespace opetope {

/// A bijection on {0, ..., k-1}, stored as its image array.
///
/// Composition follows the right-action convention used for operations:
/// (s * t)(i) = s(t(i)), so that f.(s*t) == (f.s).t.
class Permutation {
 public:
  Permutation() = default;

  explicit Permutation(std::vector<std::size_t> image) : image_(std::move(image)) {
    std::vector<bool> seen(image_.size(), false);
    for (auto v : image_) {
      if (v >= image_.size() || seen[v])
        throw Error(Errc::not_a_permutation, "image array is not a bijection");
      seen[v] = true;
    }
  }

  static Permutation identity(std::size_t k) {
    std::vector<std::size_t> im(k);
    std::iota(im.begin(), im.end(), std::size_t{0});
    return Permutation(std::move(im));
  }

  /// Transposition of positions i and j in degree k.
  static Permutation swap(std::size_t k, std::size_t i, std::size_t j) {
    auto p = identity(k);
    std::swap(p.image_.at(i), p.image_.at(j));
    return p;
  }

  std::size_t degree() const noexcept { return image_.size(); }
  std::size_t operator()(std::size_t i) const { return image_.at(i); }
  std::span<const std::size_t> image() const noexcept { return image_; }

  bool is_identity() const {
    for (std::size_t i = 0; i < image_.size(); ++i)
      if (image_[i] != i) return false;
    return true;
  }

  Permutation inverse() const {
    std::vector<std::size_t> inv(image_.size());
    for (std::size_t i = 0; i < image_.size(); ++i) inv[image_[i]] = i;
    return Permutation(std::move(inv));
  }

  friend Permutation operator*(const Permutation& s, const Permutation& t) {
    if (s.degree() != t.degree())
      throw Error(Errc::degree_mismatch, "composing permutations of different degree");
    std::vector<std::size_t> im(s.degree());
    for (std::size_t i = 0; i < im.size(); ++i) im[i] = s.image_[t.image_[i]];
    return Permutation(std::move(im));
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

  std::string str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < image_.size(); ++i) {
      if (i) s += ' ';
      s += std::to_string(image_[i]);
    }
    return s + ")";
  }

 private:
  std::vector<std::size_t> image_;
};

/// All permutations of degree k in lexicographic order of image arrays.
inline std::vector<Permutation> all_permutations(std::size_t k) {
  std::vector<std::size_t> im(k);
  std::iota(im.begin(), im.end(), std::size_t{0});
  std::vector<Permutation> out;
  do {
    out.emplace_back(im);
  } while (std::next_permutation(im.begin(), im.end()));
  return out;
}

/// The block homomorphism S_k -> S_{i_1+...+i_k}: position p of the permuted
/// concatenation (blocks taken in the order sigma(0), sigma(1), ...) maps to
/// the position of the same element in the original concatenation.
inline Permutation block_permutation(const Permutation& sigma,
                                     std::span<const std::size_t> block_sizes) {
  if (sigma.degree() != block_sizes.size())
    throw Error(Errc::degree_mismatch, "block_permutation: degree " +
                                           std::to_string(sigma.degree()) + " vs " +
                                           std::to_string(block_sizes.size()) + " blocks");
  std::vector<std::size_t> start(block_sizes.size() + 1, 0);
  for (std::size_t i = 0; i < block_sizes.size(); ++i) start[i + 1] = start[i] + block_sizes[i];
  std::vector<std::size_t> im;
  im.reserve(start.back());
  for (std::size_t j = 0; j < sigma.degree(); ++j) {
    const auto b = sigma(j);
    for (std::size_t r = 0; r < block_sizes[b]; ++r) im.push_back(start[b] + r);
  }
  return Permutation(std::move(im));
}

/// Direct sum of per-block permutations (the homomorphism of the second
/// equivariance axiom).
inline Permutation direct_sum(std::span<const Permutation> blocks) {
  std::vector<std::size_t> im;
  std::size_t offset = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.degree(); ++i) im.push_back(offset + b(i));
    offset += b.degree();
  }
  return Permutation(std::move(im));
}

}  // namespace opetope
