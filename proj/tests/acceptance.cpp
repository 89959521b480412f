// Acceptance suite over the corpus: prints one PASS/FAIL line per criterion.
// The process exits 0 once every criterion has been evaluated; a nonzero exit
// means the suite itself could not run.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <set>

#include <CLI11.hpp>

#include "amalgams/report.hpp"
#include "support/brute.hpp"
#include "support/corpus.hpp"
#include "support/word_fuzz.hpp"

using namespace amalgams;
using namespace amalgams::testing;

namespace {

constexpr std::size_t kFuzzWords = 10'000;
constexpr std::size_t kClosureDarts = 4;
constexpr std::size_t kBound = 6;

struct Loaded {
  std::string stem;
  InstanceFile file;
  GraphOfGroups c;
  std::string shape;
  std::size_t max_order = 0;
};

std::string shape_of(const OrientedGraph& g) {
  using Edges = std::vector<std::pair<Vertex, Vertex>>;
  if (g.vertex_count() == 2 && g.edge_list() == Edges{{0, 1}}) return "single-edge";
  if (g.vertex_count() == 3 && g.edge_list() == Edges{{0, 1}, {1, 2}}) return "2-path";
  if (g.vertex_count() == 1 && g.edge_list() == Edges{{0, 0}, {0, 0}}) return "double-loop";
  if (is_triangle_graph(g)) return "triangle";
  return "other";
}

std::vector<Loaded> load_corpus() {
  std::vector<Loaded> out;
  for (const auto& stem : corpus_stems()) {
    Loaded l{stem, corpus_instance(stem), {}, {}, 0};
    l.c = reference_graph(*l.file.type);
    l.shape = shape_of(l.file.type->graph());
    const auto& ref = l.file.type->reference();
    for (const auto& g : ref.vertex_groups()) l.max_order = std::max(l.max_order, g->order());
    for (const auto& g : ref.edge_groups()) l.max_order = std::max(l.max_order, g->order());
    out.push_back(std::move(l));
  }
  return out;
}

struct Outcome {
  bool pass = true;
  std::string summary;
  Json report = Json::array();
};

ClassifyOptions options(Execution mode) {
  ClassifyOptions o;
  o.execution = mode;
  return o;
}

std::vector<Amalgam> amalgams_of(const Loaded& l, const std::vector<Pointing>& ps) {
  std::vector<Amalgam> out;
  for (const auto& p : ps) out.push_back(amalgam_from_pointing(*l.file.type, l.c, p));
  return out;
}

std::optional<std::size_t> expected_count(const Loaded& l) {
  if (!l.file.expected.contains("class_count")) return std::nullopt;
  return l.file.expected["class_count"].get<std::size_t>();
}

// Pointing classes equal oracle classes, member by member.
Outcome criterion1(const std::vector<Loaded>& corpus, Execution mode) {
  Outcome o;
  std::size_t checked = 0;
  for (const auto& l : corpus) {
    if (l.max_order > 16) continue;
    ++checked;
    const auto report = classify(l.c, options(mode));
    const auto as = amalgams_of(l, report.enumerated);
    const auto part = oracle_partition(as, mode);
    bool roundtrip = true;
    for (std::size_t i = 0; i < as.size(); ++i) {
      roundtrip = roundtrip && pointing_from_amalgam(*l.file.type, l.c, as[i]) == report.enumerated[i];
    }
    const auto expected = expected_count(l);
    const bool ok = part.class_of == report.class_of && roundtrip &&
                    (!expected || *expected == report.class_count());
    o.pass = o.pass && ok;
    o.report.push_back(Json{{"instance", l.stem},
                            {"shape", l.shape},
                            {"enumerated", report.examined()},
                            {"pointing_classes", report.class_count()},
                            {"oracle_classes", part.class_count()},
                            {"same_partition", part.class_of == report.class_of},
                            {"roundtrip", roundtrip},
                            {"expected", expected ? Json(*expected) : Json(nullptr)},
                            {"pass", ok}});
  }
  o.pass = o.pass && checked > 0;
  o.summary = std::to_string(checked) + " instances, partitions compared member by member";
  return o;
}

// Goldschmidt: double cosets = pointing classes = oracle classes.
Outcome criterion2(const std::vector<Loaded>& corpus, Execution mode) {
  Outcome o;
  std::size_t checked = 0;
  bool saw_v4_d8 = false;
  for (const auto& l : corpus) {
    if (!l.file.is_double_loop()) continue;
    ++checked;
    const auto dc = goldschmidt_classes(*l.file.goldschmidt).size();
    const auto report = classify(l.c, options(mode));
    const auto part = oracle_partition(amalgams_of(l, report.enumerated), mode);
    bool ok = dc == report.class_count() && dc == part.class_count();
    if (l.stem == "double_loop_v4_d8") {
      saw_v4_d8 = true;
      ok = ok && dc == 2;
    }
    o.pass = o.pass && ok;
    o.report.push_back(Json{{"instance", l.stem},
                            {"double_cosets", dc},
                            {"pointing_classes", report.class_count()},
                            {"oracle_classes", part.class_count()},
                            {"pass", ok}});
  }
  o.pass = o.pass && saw_v4_d8;
  o.summary = std::to_string(checked) + " double-loop instances, V4-in-D8 has " +
              (saw_v4_d8 ? "been checked against 2" : "not been found");
  return o;
}

// Triangles: orbits = pointing classes = oracle classes, Ξ and Ξ^-1 inverse.
Outcome criterion3(const std::vector<Loaded>& corpus, Execution mode) {
  Outcome o;
  std::size_t checked = 0;
  for (const auto& l : corpus) {
    if (!l.file.is_triangle()) continue;
    ++checked;
    const auto t = make_triangle(l.c);
    const auto orbits = triangle_orbits(t);
    const auto report = classify(l.c, options(mode));
    const auto part = oracle_partition(amalgams_of(l, report.enumerated), mode);
    const PointingDecider decider(l.c);
    bool xi_ok = true;
    for (const auto& cls : orbits.classes) xi_ok = xi_ok && xi_map(t, xi_inverse(t, cls.representative)) == cls.representative;
    for (const auto& cls : report.classes) {
      const auto back = xi_inverse(t, xi_map(t, cls.representative));
      xi_ok = xi_ok && decider.isomorphic(back, cls.representative).has_value();
    }
    const bool ok = orbits.classes.size() == report.class_count() && orbits.classes.size() == part.class_count() && xi_ok;
    o.pass = o.pass && ok;
    o.report.push_back(Json{{"instance", l.stem},
                            {"orbits", orbits.classes.size()},
                            {"pointing_classes", report.class_count()},
                            {"oracle_classes", part.class_count()},
                            {"xi_inverse_pair", xi_ok},
                            {"pass", ok}});
  }
  o.pass = o.pass && checked > 0;
  o.summary = std::to_string(checked) + " triangle instances";
  return o;
}

// Brute force: does one subgroup of order |A|/|N| meet every N_j trivially?
bool brute_common_complement(const std::vector<Subgroup>& normals) {
  const auto& a = normals.front().parent();
  for (const auto& t : two_generated_subgroups(a)) {
    if (t.size() * normals.front().order() != a->order()) continue;
    bool ok = true;
    for (const auto& n : normals) {
      std::size_t meet = 0;
      for (Elem x : t) meet += n.contains(x);
      ok = ok && meet == 1;
    }
    if (ok) return true;
  }
  return false;
}

// Reduced classification agrees on rigid instances; the failing
// dart is reported on the others.
Outcome criterion4(const std::vector<Loaded>& corpus, Execution mode) {
  Outcome o;
  std::size_t rigid = 0, failed = 0, nonrigid = 0;
  for (const auto& l : corpus) {
    const auto rig = is_rigid(l.c);
    const bool annotated = !l.file.expected.contains("rigid") || l.file.expected["rigid"].get<bool>() == rig.rigid();
    o.pass = o.pass && annotated;
    if (rig.rigid()) {
      ++rigid;
      const auto full = classify(l.c, options(mode));
      const auto reduced = classify_rigid(*rig.reduced, options(mode));
      bool reps = full.class_count() == reduced.class_count();
      for (std::size_t k = 0; reps && k < full.class_count(); ++k) {
        reps = full.classes[k].representative == reduced.classes[k].representative;
      }
      const bool ok = reps && full.class_of == reduced.class_of;
      failed += !ok;
      o.pass = o.pass && ok;
      o.report.push_back(Json{{"instance", l.stem},
                              {"rigid", true},
                              {"classify", full.class_count()},
                              {"classify_rigid", reduced.class_count()},
                              {"same_partition", full.class_of == reduced.class_of},
                              {"pass", ok}});
    } else {
      ++nonrigid;
      bool ok = rig.failing_dart.has_value();
      if (ok) {
        const auto& g = l.c.graph;
        const Dart e = *rig.failing_dart;
        const Subgroup k0 = kernel(l.c.alpha(e));
        const Subgroup k1 = kernel(l.c.alpha(g.bar(e)));
        ok = !brute_common_complement({k0}) || !brute_common_complement({k0, k1});
      }
      o.pass = o.pass && ok;
      o.report.push_back(Json{{"instance", l.stem},
                              {"rigid", false},
                              {"failing_dart", rig.failing_dart ? Json(*rig.failing_dart) : Json(nullptr)},
                              {"reason", rig.reason},
                              {"pass", ok}});
    }
  }
  o.summary = std::to_string(rigid) + " rigid instances (" + std::to_string(failed) + " disagree), " +
              std::to_string(nonrigid) + " non-rigid";
  return o;
}

struct RigidInstance {
  const Loaded* loaded;
  ReducedGraphOfGroups r;
};

std::vector<RigidInstance> rigid_instances(const std::vector<Loaded>& corpus) {
  std::vector<RigidInstance> out;
  for (const auto& l : corpus) {
    auto rig = is_rigid(l.c);
    if (rig.rigid()) out.push_back({&l, std::move(*rig.reduced)});
  }
  return out;
}

// Word engine: fuzzed relation moves, congruence closure on the ball of
// words with at most four darts, reduced words.
Outcome criterion5(const std::vector<Loaded>& corpus, Execution mode) {
  const auto rigid = rigid_instances(corpus);
  std::vector<Json> rows(rigid.size());
  std::vector<char> ok(rigid.size());
  parallel_for(rigid.size(), mode, [&](std::size_t i) {
    const auto& r = rigid[i].r;
    const PathGroup pg(r);
    std::mt19937_64 rng(1000 + i);
    std::size_t move_violations = 0;
    for (std::size_t k = 0; k < kFuzzWords; ++k) {
      const auto w = random_word(r.base, rng, pick(rng, 9));
      if (pg.canonicalize(random_move(r, w, rng)) != pg.canonicalize(w)) ++move_violations;
    }
    const WordBall ball(r.base, kClosureDarts);
    const auto closure_bad = closure_disagreements(pg, ball, congruence_closure(r, ball));
    std::size_t reduced_checked = 0, reduced_empty = 0;
    auto check_reduced = [&](const PathWord& w) {
      for (std::size_t k = 1; k < w.darts.size(); ++k) {
        if (w.darts[k] == r.base.graph.bar(w.darts[k - 1])) return;
      }
      if (w.darts.empty()) return;
      ++reduced_checked;
      reduced_empty += pg.canonicalize(w).darts.empty();
    };
    for (std::size_t k = 0; k < ball.size(); ++k) check_reduced(ball.word(k));
    for (std::size_t k = 0; k < kFuzzWords; ++k) check_reduced(random_word(r.base, rng, 1 + pick(rng, 12), true));
    ok[i] = move_violations == 0 && closure_bad == 0 && reduced_empty == 0;
    rows[i] = Json{{"instance", rigid[i].loaded->stem},
                   {"fuzzed_moves", kFuzzWords},
                   {"move_violations", move_violations},
                   {"ball_words", ball.size()},
                   {"closure_disagreements", closure_bad},
                   {"reduced_words", reduced_checked},
                   {"reduced_to_empty", reduced_empty},
                   {"pass", static_cast<bool>(ok[i])}};
  });
  Outcome o;
  std::size_t moves = 0, words = 0;
  for (std::size_t i = 0; i < rigid.size(); ++i) {
    o.pass = o.pass && ok[i];
    moves += rows[i]["fuzzed_moves"].get<std::size_t>();
    words += rows[i]["ball_words"].get<std::size_t>();
    o.report.push_back(rows[i]);
  }
  o.pass = o.pass && !rigid.empty();
  o.summary = std::to_string(rigid.size()) + " rigid instances, " + std::to_string(moves) + " moves, " +
              std::to_string(words) + " ball words";
  return o;
}

// Fundamental-group verdicts at L = 6 over every pair of normalized pointings.
Outcome criterion6(const std::vector<Loaded>& corpus, Execution mode) {
  const auto rigid = rigid_instances(corpus);
  Outcome o;
  std::size_t same_equal = 0, same_unknown = 0, same_distinct = 0;
  std::size_t diff_equal = 0, diff_unknown = 0, diff_distinct = 0;
  std::size_t saturated_mismatch = 0, unknown_on_saturated = 0, conjugate = 0;
  for (const auto& inst : rigid) {
    const auto& r = inst.r;
    if (!is_connected(r.base.graph)) continue;
    const PathGroup pg(r);
    const auto report = classify_rigid(r, options(mode));
    const auto& ps = report.enumerated;
    std::vector<FundamentalGeneratorSet> gens(ps.size());
    std::vector<SubgroupBall> balls(ps.size());
    parallel_for(ps.size(), mode, [&](std::size_t i) {
      gens[i] = fundamental_generators(pg, ps[i], 0);
      balls[i] = subgroup_ball(pg, 0, gens[i].generators, kBound);
    });
    // witness vertex element at the base, representative -> member
    std::vector<Elem> to_rep(ps.size());
    for (const auto& cls : report.classes) {
      for (std::size_t m = 0; m < cls.members.size(); ++m) to_rep[cls.members[m]] = cls.witnesses[m].vertex[0];
    }
    std::size_t row_same[3] = {0, 0, 0}, row_diff[3] = {0, 0, 0}, row_conj = 0;
    const auto& a0 = *r.base.vertex_groups[0];
    auto conj = [&](const CanonicalForm& g, Elem x) {
      // x g x^-1 as a word at the base
      return pg.multiply(pg.multiply(PathWord{0, {x}, {}}, g), PathWord{0, {a0.inv(x)}, {}});
    };
    for (std::size_t i = 0; i < ps.size(); ++i) {
      for (std::size_t j = i + 1; j < ps.size(); ++j) {
        const auto cmp = compare_balls(gens[i].generators, balls[i], gens[j].generators, balls[j]);
        const bool same = report.class_of[i] == report.class_of[j];
        auto* row = same ? row_same : row_diff;
        ++row[static_cast<int>(cmp.verdict)];
        if (cmp.verdict == GroupVerdict::Unknown && cmp.first_saturated && cmp.second_saturated) ++unknown_on_saturated;
        if (cmp.first_saturated && cmp.second_saturated && (cmp.verdict == GroupVerdict::Distinct) == same) {
          ++saturated_mismatch;
        }
        if (same && cmp.verdict != GroupVerdict::Equal) {
          // π(p_j) = x^-1 π(p_i) x with x = a_i^-1 a_j from the class witnesses
          const Elem x = a0.mul(a0.inv(to_rep[i]), to_rep[j]);
          bool both = true;
          for (const auto& g : gens[j].generators) both = both && balls[i].contains(conj(g, x));
          for (const auto& g : gens[i].generators) both = both && balls[j].contains(conj(g, a0.inv(x)));
          row_conj += both;
        }
      }
    }
    same_equal += row_same[0], same_distinct += row_same[1], same_unknown += row_same[2];
    diff_equal += row_diff[0], diff_distinct += row_diff[1], diff_unknown += row_diff[2];
    conjugate += row_conj;
    std::size_t saturated = 0;
    for (const auto& b : balls) saturated += b.saturated;
    o.report.push_back(Json{{"instance", inst.loaded->stem},
                            {"pointings", ps.size()},
                            {"classes", report.class_count()},
                            {"saturated_balls", saturated},
                            {"same_class", {{"Equal", row_same[0]}, {"Distinct", row_same[1]}, {"Unknown", row_same[2]}}},
                            {"distinct_class", {{"Equal", row_diff[0]}, {"Distinct", row_diff[1]}, {"Unknown", row_diff[2]}}},
                            {"same_class_conjugate_by_witness", row_conj}});
  }
  const bool sound = same_distinct == 0;
  const bool complete = same_unknown == 0;
  const bool converse = saturated_mismatch == 0 && unknown_on_saturated == 0;
  o.pass = sound && complete && converse;
  o.report.push_back(Json{{"sound", sound},
                          {"same_class_all_equal", complete},
                          {"saturated_converse", converse},
                          {"distinct_class_equal", diff_equal}});
  o.summary = "same-class pairs: " + std::to_string(same_equal) + " Equal, " + std::to_string(same_unknown) +
              " Unknown (" + std::to_string(conjugate) + " conjugate by the witness), " +
              std::to_string(same_distinct) + " Distinct; distinct-class pairs: " + std::to_string(diff_equal) +
              " Equal, " + std::to_string(diff_unknown) + " Unknown, " + std::to_string(diff_distinct) + " Distinct";
  return o;
}

using CriterionFn = Outcome (*)(const std::vector<Loaded>&, Execution);

struct Criterion {
  int number;
  const char* title;
  const char* tolerance;
  double target_seconds;
  CriterionFn run;
};

const Criterion kCriteria[] = {
    {1, "pointing classes = oracle classes", "exact", 300, criterion1},
    {2, "double cosets = pointing classes = oracle classes", "exact", 60, criterion2},
    {3, "triangle orbits = pointing classes = oracle classes", "exact", 120, criterion3},
    {4, "reduced classification = classification on rigid instances", "exact", 120, criterion4},
    {5, "word engine soundness", "zero violations", 180, criterion5},
    {6, "fundamental groups of same-class pointings at L = 6", "zero violations", 300, criterion6},
};

// Every command report for every corpus file, rendered.
std::string command_reports(const std::vector<Loaded>& corpus, Execution mode) {
  RunOptions opt;
  opt.execution = mode;
  std::string out;
  for (const auto& l : corpus) {
    const auto& f = l.file;
    out += render(cmd_classify(f, opt));
    out += render(cmd_oracle(f, opt));
    out += render(cmd_rigid(f, opt));
    out += render(cmd_crosscheck(f, opt));
    if (f.goldschmidt) out += render(cmd_goldschmidt(f, opt));
    if (f.is_triangle()) out += render(cmd_triangle(f, opt));
    if (is_rigid(l.c).rigid() && is_connected(l.c.graph)) out += render(cmd_fundamental(f, opt));
  }
  return out;
}

void print_line(bool pass, int number, const std::string& title, const std::string& summary,
                const std::string& tolerance, double seconds, double target) {
  std::printf("%s criterion %d: %s; %s [tolerance: %s; %.1f s, target < %.0f s]\n", pass ? "PASS" : "FAIL", number,
              title.c_str(), summary.c_str(), tolerance.c_str(), seconds, target);
  std::fflush(stdout);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance suite over the instance corpus"};
  std::string report_path;
  bool skip_determinism = false;
  app.add_option("--report", report_path, "write the full JSON report here");
  app.add_flag("--skip-determinism", skip_determinism, "evaluate criteria 1-6 only");
  CLI11_PARSE(app, argc, argv);

  try {
    const auto corpus = load_corpus();
    Json full = Json::object();
    std::vector<std::string> first_run;
    int failures = 0;
    for (const auto& c : kCriteria) {
      const auto start = std::chrono::steady_clock::now();
      const auto o = c.run(corpus, Execution::Serial);
      const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      print_line(o.pass, c.number, c.title, o.summary, c.tolerance, s, c.target_seconds);
      failures += !o.pass;
      first_run.push_back(render(o.report));
      full["criterion_" + std::to_string(c.number)] = Json{{"pass", o.pass}, {"summary", o.summary}, {"details", o.report}};
    }

    if (!skip_determinism) {
      const auto start = std::chrono::steady_clock::now();
      std::size_t mismatches = 0;
      std::vector<int> differing;
      for (std::size_t k = 0; k < std::size(kCriteria); ++k) {
        const auto again = render(kCriteria[k].run(corpus, Execution::Serial).report);
        const auto parallel = render(kCriteria[k].run(corpus, Execution::Parallel).report);
        if (again != first_run[k] || parallel != first_run[k]) {
          ++mismatches;
          differing.push_back(kCriteria[k].number);
        }
      }
      const auto serial_a = command_reports(corpus, Execution::Serial);
      const auto serial_b = command_reports(corpus, Execution::Serial);
      const auto parallel = command_reports(corpus, Execution::Parallel);
      const bool commands_same = serial_a == serial_b && serial_a == parallel;
      const bool pass = mismatches == 0 && commands_same;
      const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      std::string summary = "criteria 1-6 reports and " + std::to_string(corpus.size()) +
                            " instances' command reports, serial twice and parallel once";
      if (!differing.empty()) summary += "; differing criteria:";
      for (int n : differing) summary += " " + std::to_string(n);
      if (!commands_same) summary += "; command reports differ";
      print_line(pass, 7, "byte-identical reports", summary, "exact", s, 600);
      failures += !pass;
      full["criterion_7"] = Json{{"pass", pass}, {"summary", summary}};
    }

    std::printf("%d of %zu criteria failed\n", failures, std::size(kCriteria) + (skip_determinism ? 0 : 1));
    if (!report_path.empty()) std::ofstream(report_path) << render(full) << "\n";
  } catch (const std::exception& e) {
    std::fprintf(stderr, "acceptance suite aborted: %s\n", e.what());
    return 2;
  }
  return 0;
}
