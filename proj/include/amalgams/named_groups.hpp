#pragma once

#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "amalgams/group.hpp"
#include "amalgams/perm.hpp"

namespace amalgams {

/// Permutation of the given degree from disjoint cycles.
inline Perm cycles(std::size_t degree, std::initializer_list<std::initializer_list<Point>> cs) {
  std::vector<Point> img(degree);
  for (std::size_t i = 0; i < degree; ++i) img[i] = static_cast<Point>(i);
  for (const auto& c : cs) {
    std::vector<Point> v(c);
    for (std::size_t k = 0; k < v.size(); ++k) img[v[k]] = v[(k + 1) % v.size()];
  }
  return Perm(img);
}

inline GroupPtr trivial_group() { return generate_group(1, {}); }

/// Z_n generated by the n-cycle (0 1 ... n-1).
inline GroupPtr cyclic(std::size_t n) {
  std::vector<Point> img(n);
  for (std::size_t i = 0; i < n; ++i) img[i] = static_cast<Point>((i + 1) % n);
  return generate_group(n, {Perm(img)});
}

/// (0 1)(2 3), (0 2)(1 3)
inline GroupPtr klein4() { return generate_group(4, {cycles(4, {{0, 1}, {2, 3}}), cycles(4, {{0, 2}, {1, 3}})}); }

/// (0 1), (0 1 2)
inline GroupPtr s3() { return generate_group(3, {cycles(3, {{0, 1}}), cycles(3, {{0, 1, 2}})}); }

/// Symmetries of the square on vertices 0..3: r = (0 1 2 3), s = (1 3).
inline GroupPtr d8() { return generate_group(4, {cycles(4, {{0, 1, 2, 3}}), cycles(4, {{1, 3}})}); }

/// Left regular representation of Q8 on {1,i,j,k,-1,-i,-j,-k} = 0..7,
/// generated by i and j.
inline GroupPtr q8() {
  // product of basis units: {basis, sign flip}
  static const int table[4][4][2] = {
      {{0, 0}, {1, 0}, {2, 0}, {3, 0}},
      {{1, 0}, {0, 1}, {3, 0}, {2, 1}},
      {{2, 0}, {3, 1}, {0, 1}, {1, 0}},
      {{3, 0}, {2, 0}, {1, 1}, {0, 1}},
  };
  auto left = [&](int q) {
    std::vector<Point> img(8);
    for (int x = 0; x < 8; ++x) {
      const auto& r = table[q][x % 4];
      const int sign = (r[1] + x / 4) % 2;
      img[x] = static_cast<Point>(sign * 4 + r[0]);
    }
    return Perm(img);
  };
  return generate_group(8, {left(1), left(2)});
}

/// Lookup by name: "1", "Z<n>", "V4", "S3", "D8", "Q8".
inline std::optional<GroupPtr> named_group(const std::string& name) {
  if (name == "1") return trivial_group();
  if (name == "V4") return klein4();
  if (name == "S3") return s3();
  if (name == "D8") return d8();
  if (name == "Q8") return q8();
  if (name.size() > 1 && name[0] == 'Z' && name.find_first_not_of("0123456789", 1) == std::string::npos &&
      name.size() < 6) {
    const auto n = std::stoul(name.substr(1));
    if (n >= 1) return cyclic(n);
  }
  return std::nullopt;
}

}  // namespace amalgams
