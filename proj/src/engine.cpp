#include "s2al/engine.hpp"

#include <algorithm>
#include <cassert>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "s2al/errors.hpp"
#include "s2al/rng.hpp"

namespace s2al {

StoppingRule StoppingRule::budget(int limit) {
  if (limit < 1) throw input_error("budget must be positive");
  StoppingRule r;
  r.kind = Kind::budget;
  r.limit = limit;
  return r;
}

StoppingRule StoppingRule::boundary_known(int target_boundary_size) {
  if (target_boundary_size < 1) throw input_error("boundary target must be positive");
  StoppingRule r;
  r.kind = Kind::boundary_known;
  r.target_boundary_size = target_boundary_size;
  return r;
}

StoppingRule StoppingRule::holdout(double fraction, double max_error) {
  if (!(fraction > 0.0 && fraction < 1.0)) throw input_error("holdout fraction must lie in (0,1)");
  if (!(max_error >= 0.0 && max_error <= 1.0)) throw input_error("holdout error threshold must lie in [0,1]");
  StoppingRule r;
  r.kind = Kind::holdout;
  r.holdout_fraction = fraction;
  r.holdout_max_error = max_error;
  return r;
}

namespace {

// Distances written by the most recent flood; the per-vertex stamp makes
// old entries invisible without clearing the whole array between floods.
struct DistMap {
  std::vector<int> dist, stamp;
  int epoch = 0;

  void begin(std::size_t n) {
    if (dist.size() != n) {
      dist.assign(n, 0);
      stamp.assign(n, 0);
      epoch = 0;
    }
    ++epoch;
  }
  bool seen(int v) const { return stamp[static_cast<std::size_t>(v)] == epoch; }
  int get(int v) const { return seen(v) ? dist[static_cast<std::size_t>(v)] : -1; }
  void put(int v, int d) {
    stamp[static_cast<std::size_t>(v)] = epoch;
    dist[static_cast<std::size_t>(v)] = d;
  }
};

// Mutable view of the run: CSR adjacency with lazy edge removal (-1 slots),
// observed labels split by sign, and reusable BFS scratch space.
struct Workspace {
  int n;
  std::vector<int> offsets;
  std::vector<int> targets;
  std::vector<signed char> observed;
  std::vector<int> pos_obs, neg_obs;  // sorted ascending
  std::vector<Edge> found_cuts;
  std::vector<signed char> on_boundary;
  int boundary_count = 0;

  DistMap dist_pos, dist_neg, dist_sp;
  std::vector<int> parent, bfs_queue;

  explicit Workspace(const Graph& g) : n(g.vertex_count()) {
    offsets.resize(static_cast<std::size_t>(n) + 1);
    targets.reserve(2 * g.edge_count());
    for (int v = 0; v < n; ++v) {
      offsets[static_cast<std::size_t>(v)] = static_cast<int>(targets.size());
      const auto& nb = g.neighbors(v);
      targets.insert(targets.end(), nb.begin(), nb.end());
    }
    offsets[static_cast<std::size_t>(n)] = static_cast<int>(targets.size());
    observed.assign(static_cast<std::size_t>(n), 0);
    on_boundary.assign(static_cast<std::size_t>(n), 0);
    parent.resize(static_cast<std::size_t>(n));
    bfs_queue.reserve(static_cast<std::size_t>(n));
  }

  void insert_sorted(std::vector<int>& xs, int v) {
    xs.insert(std::lower_bound(xs.begin(), xs.end(), v), v);
  }

  void observe(int v, int label) {
    auto& slot = observed[static_cast<std::size_t>(v)];
    if (slot == label) return;
    if (slot != 0) throw input_error("vertex observed twice with conflicting labels");
    slot = static_cast<signed char>(label);
    insert_sorted(label > 0 ? pos_obs : neg_obs, v);
  }

  void kill_directed(int from, int to) {
    for (int s = offsets[static_cast<std::size_t>(from)]; s < offsets[static_cast<std::size_t>(from) + 1]; ++s) {
      if (targets[static_cast<std::size_t>(s)] == to) {
        targets[static_cast<std::size_t>(s)] = -1;
        return;
      }
    }
    assert(false && "edge slot missing");
  }

  // Removes every edge joining v to an oppositely-observed neighbor.
  // Returns how many cut edges were discovered.
  int strip(int v) {
    int lv = observed[static_cast<std::size_t>(v)];
    int found = 0;
    for (int s = offsets[static_cast<std::size_t>(v)]; s < offsets[static_cast<std::size_t>(v) + 1]; ++s) {
      int u = targets[static_cast<std::size_t>(s)];
      if (u < 0 || observed[static_cast<std::size_t>(u)] != -lv) continue;
      targets[static_cast<std::size_t>(s)] = -1;
      kill_directed(u, v);
      found_cuts.push_back(make_edge(u, v));
      ++found;
      for (int w : {u, v}) {
        auto& flag = on_boundary[static_cast<std::size_t>(w)];
        if (!flag) {
          flag = 1;
          ++boundary_count;
        }
      }
    }
    return found;
  }

  // Flood from the sources out to `limit`; discovering a vertex observed
  // with `shrink_sign` (when nonzero) pulls the limit down to that vertex's
  // distance. BFS discovers vertices in distance order, so every vertex
  // within the final limit still gets its exact distance. Returns the
  // distance of the nearest shrink vertex, -1 when none was reached.
  int multi_source_bfs(const std::vector<int>& sources, DistMap& d, int limit, int shrink_sign) {
    d.begin(static_cast<std::size_t>(n));
    bfs_queue.clear();
    for (int s : sources) {
      d.put(s, 0);
      bfs_queue.push_back(s);
    }
    bool found = false;
    for (std::size_t head = 0; head < bfs_queue.size(); ++head) {
      int u = bfs_queue[head];
      int du = d.dist[static_cast<std::size_t>(u)];
      if (du >= limit) break;
      for (int s = offsets[static_cast<std::size_t>(u)]; s < offsets[static_cast<std::size_t>(u) + 1]; ++s) {
        int w = targets[static_cast<std::size_t>(s)];
        if (w < 0 || d.seen(w)) continue;
        d.put(w, du + 1);
        bfs_queue.push_back(w);
        if (shrink_sign != 0 && observed[static_cast<std::size_t>(w)] == shrink_sign && du + 1 < limit) {
          limit = du + 1;
          found = true;
        }
      }
    }
    return found ? limit : -1;
  }

  // Parent-tracked BFS from src in ascending neighbor order, flooding out to
  // `limit`; reaching `target` (when >= 0) pulls the limit to its distance.
  void bfs_from(int src, int limit, int target = -1) {
    dist_sp.begin(static_cast<std::size_t>(n));
    bfs_queue.clear();
    dist_sp.put(src, 0);
    parent[static_cast<std::size_t>(src)] = -1;
    bfs_queue.push_back(src);
    if (src == target) limit = 0;
    for (std::size_t head = 0; head < bfs_queue.size(); ++head) {
      int u = bfs_queue[head];
      int du = dist_sp.dist[static_cast<std::size_t>(u)];
      if (du >= limit) break;
      for (int s = offsets[static_cast<std::size_t>(u)]; s < offsets[static_cast<std::size_t>(u) + 1]; ++s) {
        int w = targets[static_cast<std::size_t>(s)];
        if (w < 0 || dist_sp.seen(w)) continue;
        dist_sp.put(w, du + 1);
        parent[static_cast<std::size_t>(w)] = u;
        bfs_queue.push_back(w);
        if (w == target && du + 1 < limit) limit = du + 1;
      }
    }
  }

  // Lower-id central vertex of the tree path from the last bfs_from root to
  // t, whose depth is d. Candidates are floor/ceil of the center. d >= 2.
  int central_vertex(int t, int d) {
    int lo = d / 2, hi = (d + 1) / 2;
    int x = t, idx = d, cand_hi = -1, cand_lo = -1;
    while (idx >= lo) {
      if (idx == hi) cand_hi = x;
      if (idx == lo) cand_lo = x;
      x = parent[static_cast<std::size_t>(x)];
      --idx;
    }
    return std::min(cand_lo, cand_hi);
  }

  struct PairPick {
    int a, b, dist;  // a < b
  };

  // Closest oppositely-observed pair under the (distance, smaller id,
  // larger id) order, or nullopt when the classes are empty or disconnected.
  // Leaves the parent tree rooted at the winning smaller endpoint in place.
  std::optional<PairPick> minimal_pair() {
    if (pos_obs.empty() || neg_obs.empty()) return std::nullopt;
    int best = multi_source_bfs(pos_obs, dist_pos, n, -1);
    if (best < 0) return std::nullopt;
    if (best == 1)
      throw input_error("oppositely labeled adjacent pair present: remove known cut edges before calling mssp");
    multi_source_bfs(neg_obs, dist_neg, best, 0);

    // Both endpoints of any closest pair see their nearest opposite at
    // exactly `best`, so the smallest id among such vertices is the smaller
    // endpoint of the winning pair.
    int a = -1;
    for (int u : pos_obs) {
      if (dist_neg.get(u) == best) {
        a = u;
        break;
      }
    }
    for (int u : neg_obs) {
      if (u >= a && a != -1) break;
      if (dist_pos.get(u) == best) {
        a = (a == -1 || u < a) ? u : a;
        break;
      }
    }
    assert(a >= 0);

    int want = -observed[static_cast<std::size_t>(a)];
    bfs_from(a, best);
    int b = -1;
    const auto& partners = want > 0 ? pos_obs : neg_obs;
    for (int v : partners) {
      if (dist_sp.get(v) == best) {
        b = v;
        break;
      }
    }
    assert(b > a);
    return PairPick{a, b, best};
  }

  struct Midpoint {
    int dist;    // -1 when disconnected
    int vertex;  // -1 when dist < 2
  };

  // BFS-path midpoint between u and v, walking the deterministic path from
  // the smaller endpoint.
  Midpoint midpoint_between(int u, int v) {
    int s = std::min(u, v), t = std::max(u, v);
    bfs_from(s, n, t);
    int d = dist_sp.get(t);
    if (d < 2) return {d, -1};
    return {d, central_vertex(t, d)};
  }

  std::optional<int> mssp_midpoint() {
    auto pick = minimal_pair();
    if (!pick) return std::nullopt;
    // minimal_pair left the parent tree rooted at pick->a, and a < b, so the
    // midpoint walk can reuse it directly.
    assert(dist_sp.get(pick->b) == pick->dist);
    return central_vertex(pick->b, pick->dist);
  }

  // Per-component majority vote over the alive adjacency with the usual
  // global-majority and +1 tie fallbacks. Same result as label_completion
  // on the working graph, without materializing it.
  Labeling complete() {
    std::vector<int> comp(static_cast<std::size_t>(n), -1);
    std::vector<int> comp_pos, comp_neg;
    int global_pos = 0, global_neg = 0;
    for (int s0 = 0; s0 < n; ++s0) {
      if (comp[static_cast<std::size_t>(s0)] != -1) continue;
      int c = static_cast<int>(comp_pos.size());
      comp_pos.push_back(0);
      comp_neg.push_back(0);
      comp[static_cast<std::size_t>(s0)] = c;
      bfs_queue.clear();
      bfs_queue.push_back(s0);
      for (std::size_t head = 0; head < bfs_queue.size(); ++head) {
        int u = bfs_queue[head];
        if (observed[static_cast<std::size_t>(u)] > 0) ++comp_pos[static_cast<std::size_t>(c)];
        if (observed[static_cast<std::size_t>(u)] < 0) ++comp_neg[static_cast<std::size_t>(c)];
        for (int s = offsets[static_cast<std::size_t>(u)]; s < offsets[static_cast<std::size_t>(u) + 1]; ++s) {
          int w = targets[static_cast<std::size_t>(s)];
          if (w < 0 || comp[static_cast<std::size_t>(w)] != -1) continue;
          comp[static_cast<std::size_t>(w)] = c;
          bfs_queue.push_back(w);
        }
      }
      global_pos += comp_pos[static_cast<std::size_t>(c)];
      global_neg += comp_neg[static_cast<std::size_t>(c)];
    }
    int global_label = global_pos >= global_neg ? 1 : -1;
    Labeling out(n);
    for (int v = 0; v < n; ++v) {
      int c = comp[static_cast<std::size_t>(v)];
      int p = comp_pos[static_cast<std::size_t>(c)], q = comp_neg[static_cast<std::size_t>(c)];
      if (p == 0 && q == 0)
        out.set(v, global_label);
      else
        out.set(v, p >= q ? 1 : -1);
    }
    return out;
  }

  // Completion over the alive adjacency, ignoring held-out observations, and
  // error of that completion on the held-out set.
  double holdout_error(const std::vector<signed char>& heldout) {
    std::vector<int> comp(static_cast<std::size_t>(n), -1);
    std::vector<int> comp_pos, comp_neg;
    std::vector<signed char> comp_label;
    int global_pos = 0, global_neg = 0;
    for (int s0 = 0; s0 < n; ++s0) {
      if (comp[static_cast<std::size_t>(s0)] != -1) continue;
      int c = static_cast<int>(comp_pos.size());
      comp_pos.push_back(0);
      comp_neg.push_back(0);
      comp[static_cast<std::size_t>(s0)] = c;
      bfs_queue.clear();
      bfs_queue.push_back(s0);
      for (std::size_t head = 0; head < bfs_queue.size(); ++head) {
        int u = bfs_queue[head];
        if (!heldout[static_cast<std::size_t>(u)]) {
          if (observed[static_cast<std::size_t>(u)] > 0) ++comp_pos[static_cast<std::size_t>(c)];
          if (observed[static_cast<std::size_t>(u)] < 0) ++comp_neg[static_cast<std::size_t>(c)];
        }
        for (int s = offsets[static_cast<std::size_t>(u)]; s < offsets[static_cast<std::size_t>(u) + 1]; ++s) {
          int w = targets[static_cast<std::size_t>(s)];
          if (w < 0 || comp[static_cast<std::size_t>(w)] != -1) continue;
          comp[static_cast<std::size_t>(w)] = c;
          bfs_queue.push_back(w);
        }
      }
      global_pos += comp_pos[static_cast<std::size_t>(c)];
      global_neg += comp_neg[static_cast<std::size_t>(c)];
    }
    int global_label = global_pos >= global_neg ? 1 : -1;
    comp_label.resize(comp_pos.size());
    for (std::size_t c = 0; c < comp_pos.size(); ++c) {
      if (comp_pos[c] == 0 && comp_neg[c] == 0)
        comp_label[c] = static_cast<signed char>(global_label);
      else
        comp_label[c] = static_cast<signed char>(comp_pos[c] >= comp_neg[c] ? 1 : -1);
    }
    int held = 0, wrong = 0;
    for (int v = 0; v < n; ++v) {
      if (!heldout[static_cast<std::size_t>(v)]) continue;
      ++held;
      if (comp_label[static_cast<std::size_t>(comp[static_cast<std::size_t>(v)])] != observed[static_cast<std::size_t>(v)]) ++wrong;
    }
    return held == 0 ? 1.0 : static_cast<double>(wrong) / held;
  }
};

enum class Mode { s2, random_only, bisect };

void validate_rule(const StoppingRule& stop, int n) {
  if (stop.kind == StoppingRule::Kind::budget && stop.limit > n)
    throw input_error("budget exceeds vertex count");
}

RunResult run_impl(const Graph& g, LabelOracle& oracle, const RunOptions& opt, Mode mode) {
  const int n = g.vertex_count();
  if (n == 0) throw input_error("cannot run on an empty graph");
  if (oracle.vertex_count() != n) throw input_error("oracle covers a different vertex count");
  if (opt.repetitions < 1) throw input_error("repetitions must be positive");
  validate_rule(opt.stop, n);

  Workspace ws(g);
  Rng rng(opt.seed);
  const std::uint64_t raw_before = oracle.query_count();

  for (auto [v, l] : opt.initial_observed) {
    g.check_vertex(v);
    if (l != -1 && l != 1) throw input_error("initial observation label must be -1 or +1");
    ws.observe(v, l);
    ws.strip(v);
  }

  // Pool of never-queried vertices for the random phase; pre-observed
  // vertices are excluded up front.
  std::vector<int> pool;
  std::vector<int> pool_pos(static_cast<std::size_t>(n), -1);
  pool.reserve(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) {
    if (ws.observed[static_cast<std::size_t>(v)] != 0) continue;
    pool_pos[static_cast<std::size_t>(v)] = static_cast<int>(pool.size());
    pool.push_back(v);
  }
  auto pool_remove = [&](int v) {
    int at = pool_pos[static_cast<std::size_t>(v)];
    if (at < 0) return;
    int last = pool.back();
    pool[static_cast<std::size_t>(at)] = last;
    pool_pos[static_cast<std::size_t>(last)] = at;
    pool.pop_back();
    pool_pos[static_cast<std::size_t>(v)] = -1;
  };

  std::vector<signed char> heldout(static_cast<std::size_t>(n), 0);
  int heldout_count = 0;

  RunResult result;
  std::optional<std::pair<int, int>> active_pair;  // bisect state

  for (;;) {
    int v = -1;
    Phase phase = Phase::random;

    if (mode == Mode::s2) {
      if (auto mid = ws.mssp_midpoint()) {
        v = *mid;
        phase = Phase::aggressive;
      }
    } else if (mode == Mode::bisect) {
      if (active_pair) {
        auto mp = ws.midpoint_between(active_pair->first, active_pair->second);
        if (mp.dist >= 2) {
          v = mp.vertex;
          phase = Phase::aggressive;
        } else {
          active_pair.reset();
        }
      }
      if (v < 0) {
        if (auto pick = ws.minimal_pair()) {
          active_pair = {pick->a, pick->b};
          v = ws.midpoint_between(pick->a, pick->b).vertex;
          phase = Phase::aggressive;
        }
      }
    }

    if (v < 0) {
      if (pool.empty()) break;
      v = pool[rng.uniform_index(pool.size())];
      phase = Phase::random;
    }

    int label = majority_query(oracle, v, opt.repetitions);
    result.log.push_back(QueryRecord{static_cast<int>(result.log.size()), phase, v, label});
    pool_remove(v);
    ws.observe(v, label);
    int discovered = ws.strip(v);

    if (mode == Mode::bisect && active_pair) {
      if (discovered > 0) {
        active_pair.reset();
      } else if (phase == Phase::aggressive) {
        // Keep the endpoint whose label disagrees with the probe.
        if (label == ws.observed[static_cast<std::size_t>(active_pair->first)])
          active_pair = {v, active_pair->second};
        else
          active_pair = {active_pair->first, v};
      }
    }

    const StoppingRule& stop = opt.stop;
    if (stop.kind == StoppingRule::Kind::budget) {
      if (static_cast<int>(result.log.size()) >= stop.limit) break;
    } else if (stop.kind == StoppingRule::Kind::boundary_known) {
      if (ws.boundary_count >= stop.target_boundary_size) break;
    } else {
      if (rng.bernoulli(stop.holdout_fraction)) {
        if (!heldout[static_cast<std::size_t>(v)]) ++heldout_count;
        heldout[static_cast<std::size_t>(v)] = 1;
      }
      if (heldout_count > 0 && ws.holdout_error(heldout) <= stop.holdout_max_error) break;
    }
  }

  std::sort(ws.found_cuts.begin(), ws.found_cuts.end());
  result.found_cuts = ws.found_cuts;
  result.queries_used = result.log.size();
  result.raw_queries = oracle.query_count() - raw_before;
  result.predicted = ws.complete();
  if (opt.ground_truth != nullptr) {
    result.cut_recovered = (result.found_cuts == induced_cuts(g, *opt.ground_truth));
  }
  return result;
}

}  // namespace

std::optional<int> mssp(const Graph& g, const Labeling& observed) {
  if (observed.size() != g.vertex_count()) throw input_error("labeling size does not match graph");
  Workspace ws(g);
  for (int v : observed.assigned_vertices()) ws.observe(v, observed.label(v));
  return ws.mssp_midpoint();
}

Labeling label_completion(const Graph& g, const Labeling& observed) {
  if (observed.size() != g.vertex_count()) throw input_error("labeling size does not match graph");
  const auto comp = component_ids(g);
  int count = 0;
  for (int c : comp) count = std::max(count, c + 1);
  std::vector<int> pos(static_cast<std::size_t>(count), 0), neg(static_cast<std::size_t>(count), 0);
  int global_pos = 0, global_neg = 0;
  for (int v : observed.assigned_vertices()) {
    int c = comp[static_cast<std::size_t>(v)];
    if (observed.label(v) > 0) {
      ++pos[static_cast<std::size_t>(c)];
      ++global_pos;
    } else {
      ++neg[static_cast<std::size_t>(c)];
      ++global_neg;
    }
  }
  const int global_label = global_pos >= global_neg ? 1 : -1;
  Labeling out(g.vertex_count());
  for (int v = 0; v < g.vertex_count(); ++v) {
    int c = comp[static_cast<std::size_t>(v)];
    int p = pos[static_cast<std::size_t>(c)], q = neg[static_cast<std::size_t>(c)];
    if (p == 0 && q == 0)
      out.set(v, global_label);
    else
      out.set(v, p >= q ? 1 : -1);
  }
  return out;
}

RunResult s2_run(const Graph& g, LabelOracle& oracle, const RunOptions& opt) {
  return run_impl(g, oracle, opt, Mode::s2);
}

RunResult random_run(const Graph& g, LabelOracle& oracle, const RunOptions& opt) {
  return run_impl(g, oracle, opt, Mode::random_only);
}

RunResult bisect_run(const Graph& g, LabelOracle& oracle, const RunOptions& opt) {
  return run_impl(g, oracle, opt, Mode::bisect);
}

std::vector<Edge> induced_cuts(const Graph& g, const Labeling& f) {
  if (f.size() != g.vertex_count()) throw input_error("labeling size does not match graph");
  if (!f.total()) throw input_error("labeling must be total to induce a cut set");
  std::vector<Edge> cuts;
  for (const Edge& e : g.edges())
    if (f.label(e.u) != f.label(e.v)) cuts.push_back(e);
  return cuts;
}

void write_run_log(const std::vector<QueryRecord>& log, std::ostream& out) {
  for (const QueryRecord& r : log) {
    out << r.step << ' ' << (r.phase == Phase::random ? "random" : "aggressive") << ' ' << r.vertex
        << ' ' << (r.label > 0 ? "+1" : "-1") << '\n';
  }
}

std::vector<QueryRecord> read_run_log(std::istream& in) {
  std::vector<QueryRecord> log;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ss(line);
    QueryRecord r;
    std::string phase, label;
    if (!(ss >> r.step >> phase >> r.vertex >> label))
      throw input_error("malformed run log at line " + std::to_string(lineno));
    if (phase == "random")
      r.phase = Phase::random;
    else if (phase == "aggressive")
      r.phase = Phase::aggressive;
    else
      throw input_error("unknown phase in run log at line " + std::to_string(lineno));
    if (label == "+1")
      r.label = 1;
    else if (label == "-1")
      r.label = -1;
    else
      throw input_error("bad label in run log at line " + std::to_string(lineno));
    log.push_back(r);
  }
  return log;
}

}  // namespace s2al
