#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <unordered_set>
#include <vector>

#include "amalgams/error.hpp"
#include "amalgams/path_group.hpp"

namespace amalgams {

inline constexpr std::size_t kDefaultBound = 6;
inline constexpr std::uint64_t kDefaultBallBudget = 2'000'000;

/// All products of at most `radius` generators and inverses, as canonical
/// forms. `saturated` means some radius r <= `radius` added nothing new, so
/// the ball is the whole subgroup.
struct SubgroupBall {
  std::unordered_set<PathWord, PathWordHash> words;
  std::vector<std::size_t> layer_sizes;
  bool saturated = false;

  bool contains(const PathWord& w) const { return words.count(w) > 0; }
};

inline SubgroupBall subgroup_ball(const PathGroup& pg, Vertex base, const std::vector<CanonicalForm>& gens,
                                  std::size_t radius, std::uint64_t budget = kDefaultBallBudget) {
  std::vector<CanonicalForm> steps;
  for (const auto& g : gens) {
    if (g.start != base || pg.end(g) != base) throw Error(ErrorKind::EndpointMismatch, "generator not closed at base");
    steps.push_back(g);
    steps.push_back(pg.invert(g));
  }
  SubgroupBall ball;
  std::vector<PathWord> frontier{pg.identity(base)};
  ball.words.insert(frontier.front());
  ball.layer_sizes.push_back(1);
  for (std::size_t r = 1; r <= radius; ++r) {
    std::vector<PathWord> next;
    for (const auto& w : frontier) {
      for (const auto& s : steps) {
        auto x = pg.multiply(w, s);
        if (ball.words.insert(x).second) {
          next.push_back(std::move(x));
          if (ball.words.size() > budget) {
            throw Error(ErrorKind::BudgetExceeded, "subgroup ball exceeded " + std::to_string(budget) + " words");
          }
        }
      }
    }
    ball.layer_sizes.push_back(next.size());
    if (next.empty()) {
      ball.saturated = true;
      break;
    }
    frontier = std::move(next);
  }
  return ball;
}

enum class GroupVerdict { Equal, Distinct, Unknown };

inline std::string to_string(GroupVerdict v) {
  switch (v) {
    case GroupVerdict::Equal: return "Equal";
    case GroupVerdict::Distinct: return "Distinct";
    case GroupVerdict::Unknown: return "Unknown";
  }
  return "?";
}

struct GroupComparison {
  GroupVerdict verdict = GroupVerdict::Unknown;
  bool first_saturated = false;
  bool second_saturated = false;
  std::size_t first_ball = 0;
  std::size_t second_ball = 0;
};

/// Mutual membership of generators in radius-L balls. Exclusion only counts
/// as a proof when the ball it was checked against saturated.
inline GroupComparison compare_balls(const std::vector<CanonicalForm>& gens1, const SubgroupBall& b1,
                                     const std::vector<CanonicalForm>& gens2, const SubgroupBall& b2) {
  auto all_in = [](const std::vector<CanonicalForm>& gens, const SubgroupBall& b) {
    return std::all_of(gens.begin(), gens.end(), [&](const CanonicalForm& g) { return b.contains(g); });
  };
  const bool one_in_two = all_in(gens1, b2);
  const bool two_in_one = all_in(gens2, b1);
  GroupComparison out{GroupVerdict::Unknown, b1.saturated, b2.saturated, b1.words.size(), b2.words.size()};
  if (one_in_two && two_in_one) {
    out.verdict = GroupVerdict::Equal;
  } else if ((!one_in_two && b2.saturated) || (!two_in_one && b1.saturated)) {
    out.verdict = GroupVerdict::Distinct;
  }
  return out;
}

inline GroupComparison compare_fundamental_groups(const PathGroup& pg, const FundamentalGeneratorSet& s1,
                                                  const FundamentalGeneratorSet& s2, std::size_t bound = kDefaultBound,
                                                  std::uint64_t budget = kDefaultBallBudget) {
  if (s1.base != s2.base) throw Error(ErrorKind::EndpointMismatch, "generator sets use different base vertices");
  return compare_balls(s1.generators, subgroup_ball(pg, s1.base, s1.generators, bound, budget), s2.generators,
                       subgroup_ball(pg, s2.base, s2.generators, bound, budget));
}

inline GroupVerdict same_fundamental_group_bounded(const PathGroup& pg, const Pointing& p1, const Pointing& p2,
                                                   Vertex base, std::size_t bound = kDefaultBound,
                                                   std::uint64_t budget = kDefaultBallBudget) {
  return compare_fundamental_groups(pg, fundamental_generators(pg, p1, base), fundamental_generators(pg, p2, base),
                                    bound, budget)
      .verdict;
}

}  // namespace amalgams
