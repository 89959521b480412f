#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "amalgams/error.hpp"

namespace amalgams {

using Point = std::uint32_t;

/// Permutation of {0..n-1} stored as its image array.
///
/// Products follow function composition: (p * q)(x) = p(q(x)), so q acts
/// first. Automorphism groups are materialized as permutations of element
/// indices, and this convention makes their carrier product agree with
/// composition of the automorphisms themselves.
class Perm {
 public:
  Perm() = default;

  explicit Perm(std::vector<Point> images) : images_(std::move(images)) {
    std::vector<bool> seen(images_.size(), false);
    for (Point p : images_) {
      if (p >= images_.size() || seen[p]) {
        throw Error(ErrorKind::SchemaError,
                    "image array is not a permutation of {0.." +
                        std::to_string(images_.size()) + "-1}");
      }
      seen[p] = true;
    }
  }

  static Perm identity(std::size_t degree) {
    Perm p;
    p.images_.resize(degree);
    for (std::size_t i = 0; i < degree; ++i) p.images_[i] = static_cast<Point>(i);
    return p;
  }

  std::size_t degree() const noexcept { return images_.size(); }
  Point operator[](std::size_t i) const { return images_[i]; }
  std::span<const Point> images() const noexcept { return images_; }

  bool is_identity() const noexcept {
    for (std::size_t i = 0; i < images_.size(); ++i) {
      if (images_[i] != i) return false;
    }
    return true;
  }

  Perm inverse() const {
    Perm r;
    r.images_.resize(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i) {
      r.images_[images_[i]] = static_cast<Point>(i);
    }
    return r;
  }

  friend Perm operator*(const Perm& p, const Perm& q) {
    if (p.degree() != q.degree()) {
      throw Error(ErrorKind::DegreeMismatch, "cannot compose permutations of degree " +
                                                 std::to_string(p.degree()) + " and " +
                                                 std::to_string(q.degree()));
    }
    Perm r;
    r.images_.resize(p.images_.size());
    for (std::size_t i = 0; i < p.images_.size(); ++i) {
      r.images_[i] = p.images_[q.images_[i]];
    }
    return r;
  }

  friend bool operator==(const Perm&, const Perm&) = default;
  friend auto operator<=>(const Perm&, const Perm&) = default;

 private:
  std::vector<Point> images_;
};

struct PermHash {
  std::size_t operator()(const Perm& p) const noexcept {
    // FNV-1a over the image array.
    std::uint64_t h = 1469598103934665603ULL;
    for (Point x : p.images()) {
      h ^= x;
      h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

}  // namespace amalgams
