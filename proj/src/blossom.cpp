#include "bmatch/blossom.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <set>
#include <utility>

namespace bmatch {

void SimpleWeightedGraph::check() const {
  std::set<std::pair<Vertex, Vertex>> seen;
  for (const Edge& e : edges) {
    if (e.u >= vertex_count || e.v >= vertex_count) throw Error("edge endpoint out of range");
    if (e.u == e.v) throw Error("simple graph contains a loop");
    if (!seen.insert(std::minmax(e.u, e.v)).second) throw Error("simple graph contains a parallel edge");
  }
}

namespace {

// Vertices are 0..n-1, blossoms n..2n-1. Edge k has endpoints 2k (at u) and
// 2k+1 (at v); endpoint p belongs to vertex endpoint_[p].
class Blossom {
 public:
  Blossom(const SimpleWeightedGraph& g, std::vector<Weight> weights, bool max_cardinality, bool warm_start)
      : n_(static_cast<long>(g.vertex_count)),
        m_(static_cast<long>(g.edges.size())),
        max_cardinality_(max_cardinality),
        weight_(std::move(weights)) {
    Weight max_weight = 0;
    for (Weight w : weight_) max_weight = std::max(max_weight, w);
    endpoint_.resize(2 * m_);
    neighbend_.resize(n_);
    for (long k = 0; k < m_; ++k) {
      const auto u = static_cast<long>(g.edges[k].u);
      const auto v = static_cast<long>(g.edges[k].v);
      endpoint_[2 * k] = u;
      endpoint_[2 * k + 1] = v;
      neighbend_[u].push_back(2 * k + 1);
      neighbend_[v].push_back(2 * k);
    }
    mate_.assign(n_, -1);
    label_.assign(2 * n_, 0);
    labelend_.assign(2 * n_, -1);
    inblossom_.resize(n_);
    for (long v = 0; v < n_; ++v) inblossom_[v] = v;
    blossomparent_.assign(2 * n_, -1);
    blossomchilds_.assign(2 * n_, {});
    blossombase_.assign(2 * n_, -1);
    for (long v = 0; v < n_; ++v) blossombase_[v] = v;
    blossomendps_.assign(2 * n_, {});
    bestedge_.assign(2 * n_, -1);
    blossombestedges_.assign(2 * n_, {});
    has_bestedges_.assign(2 * n_, false);
    for (long b = 2 * n_ - 1; b >= n_; --b) unused_.push_back(b);
    dualvar_.assign(2 * n_, 0);
    allowedge_.assign(m_, false);
    if (!warm_start) {
      for (long v = 0; v < n_; ++v) dualvar_[v] = max_weight;
      return;
    }
    // When only perfect matchings count, vertex duals are free and any
    // feasible start works: each vertex takes its heaviest incident weight and
    // tight edges are matched greedily, which removes most stages.
    for (long k = 0; k < m_; ++k)
      for (long v : {endpoint_[2 * k], endpoint_[2 * k + 1]}) dualvar_[v] = std::max(dualvar_[v], weight_[k]);
    for (long k = 0; k < m_; ++k) {
      const long u = endpoint_[2 * k], v = endpoint_[2 * k + 1];
      if (mate_[u] == -1 && mate_[v] == -1 && slack(k) == 0) match(k);
    }
    // Second pass: a free vertex drops its dual to the least feasible value
    // (still even, so free duals share a parity as the stages require), then
    // takes a tight edge to a free vertex or a tight augmenting path of
    // length three.
    for (long v = 0; v < n_; ++v) {
      if (mate_[v] != -1 || neighbend_[v].empty()) continue;
      Weight low = std::numeric_limits<Weight>::min();
      for (long p : neighbend_[v]) low = std::max(low, 2 * weight_[p / 2] - dualvar_[endpoint_[p]]);
      dualvar_[v] = low;
      augment_short(v);
    }
  }

  void match(long k) {
    mate_[endpoint_[2 * k]] = 2 * k + 1;
    mate_[endpoint_[2 * k + 1]] = 2 * k;
  }

  void augment_short(long v) {
    for (long p : neighbend_[v]) {
      if (slack(p / 2) != 0) continue;
      const long a = endpoint_[p];
      if (mate_[a] == -1) {
        match(p / 2);
        return;
      }
    }
    for (long p : neighbend_[v]) {
      if (slack(p / 2) != 0) continue;
      const long a = endpoint_[p];
      const long b = endpoint_[mate_[a]];
      for (long q : neighbend_[b]) {
        const long u = endpoint_[q];
        if (u == v || mate_[u] != -1 || slack(q / 2) != 0) continue;
        match(q / 2);
        match(p / 2);
        return;
      }
    }
  }

  std::vector<long> run() {
    for (long stage = 0; stage < n_; ++stage) {
      std::fill(label_.begin(), label_.end(), 0);
      std::fill(bestedge_.begin(), bestedge_.end(), -1);
      for (long b = n_; b < 2 * n_; ++b) {
        blossombestedges_[b].clear();
        has_bestedges_[b] = false;
      }
      std::fill(allowedge_.begin(), allowedge_.end(), false);
      queue_.clear();
      for (long v = 0; v < n_; ++v)
        if (mate_[v] == -1 && label_[inblossom_[v]] == 0) assign_label(v, 1, -1);

      bool augmented = false;
      while (true) {
        while (!queue_.empty() && !augmented) {
          const long v = queue_.back();
          queue_.pop_back();
          for (long p : neighbend_[v]) {
            const long k = p / 2;
            const long w = endpoint_[p];
            if (inblossom_[v] == inblossom_[w]) continue;
            Weight kslack = 0;
            if (!allowedge_[k]) {
              kslack = slack(k);
              if (kslack <= 0) allowedge_[k] = true;
            }
            if (allowedge_[k]) {
              if (label_[inblossom_[w]] == 0) {
                assign_label(w, 2, p ^ 1);
              } else if (label_[inblossom_[w]] == 1) {
                const long base = scan_blossom(v, w);
                if (base >= 0) {
                  add_blossom(base, k);
                } else {
                  augment_matching(k);
                  augmented = true;
                  break;
                }
              } else if (label_[w] == 0) {
                label_[w] = 2;
                labelend_[w] = p ^ 1;
              }
            } else if (label_[inblossom_[w]] == 1) {
              const long b = inblossom_[v];
              if (bestedge_[b] == -1 || kslack < slack(bestedge_[b])) bestedge_[b] = k;
            } else if (label_[w] == 0) {
              if (bestedge_[w] == -1 || kslack < slack(bestedge_[w])) bestedge_[w] = k;
            }
          }
        }
        if (augmented) break;

        int deltatype = -1;
        Weight delta = 0;
        long deltaedge = -1, deltablossom = -1;
        if (!max_cardinality_) {
          deltatype = 1;
          delta = *std::min_element(dualvar_.begin(), dualvar_.begin() + n_);
        }
        for (long v = 0; v < n_; ++v) {
          if (label_[inblossom_[v]] == 0 && bestedge_[v] != -1) {
            const Weight d = slack(bestedge_[v]);
            if (deltatype == -1 || d < delta) {
              delta = d;
              deltatype = 2;
              deltaedge = bestedge_[v];
            }
          }
        }
        for (long b = 0; b < 2 * n_; ++b) {
          if (blossomparent_[b] == -1 && label_[b] == 1 && bestedge_[b] != -1) {
            const Weight kslack = slack(bestedge_[b]);
            if (kslack % 2 != 0) throw Error("blossom: odd slack between S-blossoms");
            const Weight d = kslack / 2;
            if (deltatype == -1 || d < delta) {
              delta = d;
              deltatype = 3;
              deltaedge = bestedge_[b];
            }
          }
        }
        for (long b = n_; b < 2 * n_; ++b) {
          if (blossombase_[b] >= 0 && blossomparent_[b] == -1 && label_[b] == 2 &&
              (deltatype == -1 || dualvar_[b] < delta)) {
            delta = dualvar_[b];
            deltatype = 4;
            deltablossom = b;
          }
        }
        if (deltatype == -1) {
          deltatype = 1;
          delta = std::max<Weight>(0, *std::min_element(dualvar_.begin(), dualvar_.begin() + n_));
        }

        for (long v = 0; v < n_; ++v) {
          if (label_[inblossom_[v]] == 1)
            dualvar_[v] -= delta;
          else if (label_[inblossom_[v]] == 2)
            dualvar_[v] += delta;
        }
        for (long b = n_; b < 2 * n_; ++b) {
          if (blossombase_[b] >= 0 && blossomparent_[b] == -1) {
            if (label_[b] == 1)
              dualvar_[b] += delta;
            else if (label_[b] == 2)
              dualvar_[b] -= delta;
          }
        }

        if (deltatype == 1) {
          break;
        } else if (deltatype == 2) {
          allowedge_[deltaedge] = true;
          long i = endpoint_[2 * deltaedge], j = endpoint_[2 * deltaedge + 1];
          if (label_[inblossom_[i]] == 0) std::swap(i, j);
          queue_.push_back(i);
        } else if (deltatype == 3) {
          allowedge_[deltaedge] = true;
          queue_.push_back(endpoint_[2 * deltaedge]);
        } else {
          expand_blossom(deltablossom, false);
        }
      }
      if (!augmented) break;

      for (long b = n_; b < 2 * n_; ++b) {
        if (blossomparent_[b] == -1 && blossombase_[b] >= 0 && label_[b] == 1 && dualvar_[b] == 0)
          expand_blossom(b, true);
      }
    }

    std::vector<long> mate_edge(n_, -1);
    for (long v = 0; v < n_; ++v)
      if (mate_[v] >= 0) mate_edge[v] = mate_[v] / 2;
    return mate_edge;
  }

 private:
  Weight slack(long k) const {
    return dualvar_[endpoint_[2 * k]] + dualvar_[endpoint_[2 * k + 1]] - 2 * weight_[k];
  }

  void leaves(long b, std::vector<long>& out) const {
    if (b < n_) {
      out.push_back(b);
      return;
    }
    for (long t : blossomchilds_[b]) leaves(t, out);
  }

  std::vector<long> leaves(long b) const {
    std::vector<long> out;
    leaves(b, out);
    return out;
  }

  void assign_label(long w, int t, long p) {
    const long b = inblossom_[w];
    label_[w] = label_[b] = t;
    labelend_[w] = labelend_[b] = p;
    bestedge_[w] = bestedge_[b] = -1;
    if (t == 1) {
      leaves(b, queue_);
    } else {
      const long base = blossombase_[b];
      assign_label(endpoint_[mate_[base]], 1, mate_[base] ^ 1);
    }
  }

  long scan_blossom(long v, long w) {
    std::vector<long> path;
    long base = -1;
    while (v != -1 || w != -1) {
      long b = inblossom_[v];
      if (label_[b] & 4) {
        base = blossombase_[b];
        break;
      }
      path.push_back(b);
      label_[b] = 5;
      if (labelend_[b] == -1) {
        v = -1;
      } else {
        v = endpoint_[labelend_[b]];
        b = inblossom_[v];
        v = endpoint_[labelend_[b]];
      }
      if (w != -1) std::swap(v, w);
    }
    for (long b : path) label_[b] = 1;
    return base;
  }

  void add_blossom(long base, long k) {
    long v = endpoint_[2 * k], w = endpoint_[2 * k + 1];
    const long bb = inblossom_[base];
    long bv = inblossom_[v], bw = inblossom_[w];
    const long b = unused_.back();
    unused_.pop_back();
    blossombase_[b] = base;
    blossomparent_[b] = -1;
    blossomparent_[bb] = b;
    auto& path = blossomchilds_[b];
    auto& endps = blossomendps_[b];
    path.clear();
    endps.clear();
    while (bv != bb) {
      blossomparent_[bv] = b;
      path.push_back(bv);
      endps.push_back(labelend_[bv]);
      v = endpoint_[labelend_[bv]];
      bv = inblossom_[v];
    }
    path.push_back(bb);
    std::reverse(path.begin(), path.end());
    std::reverse(endps.begin(), endps.end());
    endps.push_back(2 * k);
    while (bw != bb) {
      blossomparent_[bw] = b;
      path.push_back(bw);
      endps.push_back(labelend_[bw] ^ 1);
      w = endpoint_[labelend_[bw]];
      bw = inblossom_[w];
    }
    label_[b] = 1;
    labelend_[b] = labelend_[bb];
    dualvar_[b] = 0;
    for (long x : leaves(b)) {
      if (label_[inblossom_[x]] == 2) queue_.push_back(x);
      inblossom_[x] = b;
    }

    std::vector<long> bestedgeto(2 * n_, -1);
    for (long child : path) {
      std::vector<long> candidates;
      if (!has_bestedges_[child]) {
        for (long x : leaves(child))
          for (long p : neighbend_[x]) candidates.push_back(p / 2);
      } else {
        candidates = blossombestedges_[child];
      }
      for (long kk : candidates) {
        long i = endpoint_[2 * kk], j = endpoint_[2 * kk + 1];
        if (inblossom_[j] == b) std::swap(i, j);
        const long bj = inblossom_[j];
        if (bj != b && label_[bj] == 1 && (bestedgeto[bj] == -1 || slack(kk) < slack(bestedgeto[bj])))
          bestedgeto[bj] = kk;
      }
      blossombestedges_[child].clear();
      has_bestedges_[child] = false;
      bestedge_[child] = -1;
    }
    auto& best = blossombestedges_[b];
    best.clear();
    for (long kk : bestedgeto)
      if (kk != -1) best.push_back(kk);
    has_bestedges_[b] = true;
    bestedge_[b] = -1;
    for (long kk : best)
      if (bestedge_[b] == -1 || slack(kk) < slack(bestedge_[b])) bestedge_[b] = kk;
  }

  void expand_blossom(long b, bool endstage) {
    const std::vector<long> childs = blossomchilds_[b];
    for (long s : childs) {
      blossomparent_[s] = -1;
      if (s < n_) {
        inblossom_[s] = s;
      } else if (endstage && dualvar_[s] == 0) {
        expand_blossom(s, endstage);
      } else {
        for (long x : leaves(s)) inblossom_[x] = s;
      }
    }
    if (!endstage && label_[b] == 2) {
      const auto& endps = blossomendps_[b];
      const long len = static_cast<long>(childs.size());
      const long entrychild = inblossom_[endpoint_[labelend_[b] ^ 1]];
      long j = static_cast<long>(std::find(childs.begin(), childs.end(), entrychild) - childs.begin());
      long jstep, endptrick;
      if (j & 1) {
        j -= len;
        jstep = 1;
        endptrick = 0;
      } else {
        jstep = -1;
        endptrick = 1;
      }
      auto at = [len](const std::vector<long>& xs, long idx) { return xs[((idx % len) + len) % len]; };
      long p = labelend_[b];
      while (j != 0) {
        label_[endpoint_[p ^ 1]] = 0;
        label_[endpoint_[at(endps, j - endptrick) ^ endptrick ^ 1]] = 0;
        assign_label(endpoint_[p ^ 1], 2, p);
        allowedge_[at(endps, j - endptrick) / 2] = true;
        j += jstep;
        p = at(endps, j - endptrick) ^ endptrick;
        allowedge_[p / 2] = true;
        j += jstep;
      }
      long bv = at(childs, j);
      label_[endpoint_[p ^ 1]] = label_[bv] = 2;
      labelend_[endpoint_[p ^ 1]] = labelend_[bv] = p;
      bestedge_[bv] = -1;
      j += jstep;
      while (at(childs, j) != entrychild) {
        bv = at(childs, j);
        if (label_[bv] == 1) {
          j += jstep;
          continue;
        }
        long found = -1;
        for (long x : leaves(bv)) {
          if (label_[x] != 0) {
            found = x;
            break;
          }
        }
        if (found != -1) {
          label_[found] = 0;
          label_[endpoint_[mate_[blossombase_[bv]]]] = 0;
          assign_label(found, 2, labelend_[found]);
        }
        j += jstep;
      }
    }
    label_[b] = labelend_[b] = -1;
    blossomchilds_[b].clear();
    blossomendps_[b].clear();
    blossombase_[b] = -1;
    blossombestedges_[b].clear();
    has_bestedges_[b] = false;
    bestedge_[b] = -1;
    unused_.push_back(b);
  }

  void augment_blossom(long b, long v) {
    long t = v;
    while (blossomparent_[t] != b) t = blossomparent_[t];
    if (t >= n_) augment_blossom(t, v);
    auto& childs = blossomchilds_[b];
    auto& endps = blossomendps_[b];
    const long len = static_cast<long>(childs.size());
    const long i = static_cast<long>(std::find(childs.begin(), childs.end(), t) - childs.begin());
    long j = i, jstep, endptrick;
    if (i & 1) {
      j -= len;
      jstep = 1;
      endptrick = 0;
    } else {
      jstep = -1;
      endptrick = 1;
    }
    auto at = [len](const std::vector<long>& xs, long idx) { return xs[((idx % len) + len) % len]; };
    while (j != 0) {
      j += jstep;
      t = at(childs, j);
      const long p = at(endps, j - endptrick) ^ endptrick;
      if (t >= n_) augment_blossom(t, endpoint_[p]);
      j += jstep;
      t = at(childs, j);
      if (t >= n_) augment_blossom(t, endpoint_[p ^ 1]);
      mate_[endpoint_[p]] = p ^ 1;
      mate_[endpoint_[p ^ 1]] = p;
    }
    std::rotate(childs.begin(), childs.begin() + i, childs.end());
    std::rotate(endps.begin(), endps.begin() + i, endps.end());
    blossombase_[b] = blossombase_[childs[0]];
  }

  void augment_matching(long k) {
    const long ends[2][2] = {{endpoint_[2 * k], 2 * k + 1}, {endpoint_[2 * k + 1], 2 * k}};
    for (const auto& start : ends) {
      long s = start[0], p = start[1];
      while (true) {
        const long bs = inblossom_[s];
        if (bs >= n_) augment_blossom(bs, s);
        mate_[s] = p;
        if (labelend_[bs] == -1) break;
        const long t = endpoint_[labelend_[bs]];
        const long bt = inblossom_[t];
        s = endpoint_[labelend_[bt]];
        const long j = endpoint_[labelend_[bt] ^ 1];
        if (bt >= n_) augment_blossom(bt, j);
        mate_[j] = labelend_[bt];
        p = labelend_[bt] ^ 1;
      }
    }
  }

  long n_, m_;
  bool max_cardinality_;
  std::vector<Weight> weight_;
  std::vector<long> endpoint_;
  std::vector<std::vector<long>> neighbend_;
  std::vector<long> mate_;
  std::vector<int> label_;
  std::vector<long> labelend_;
  std::vector<long> inblossom_;
  std::vector<long> blossomparent_;
  std::vector<std::vector<long>> blossomchilds_;
  std::vector<long> blossombase_;
  std::vector<std::vector<long>> blossomendps_;
  std::vector<long> bestedge_;
  std::vector<std::vector<long>> blossombestedges_;
  std::vector<bool> has_bestedges_;
  std::vector<long> unused_;
  std::vector<Weight> dualvar_;
  std::vector<bool> allowedge_;
  std::vector<long> queue_;
};

// Duals, slacks, and their sums must stay representable.
constexpr Weight kMaxInternalWeight = std::numeric_limits<Weight>::max() / 16;

std::vector<long> run_blossom(const SimpleWeightedGraph& g, std::vector<Weight> weights, bool max_cardinality,
                              bool warm_start = false) {
  for (Weight& w : weights) {
    if (w > kMaxInternalWeight / 2 || w < -kMaxInternalWeight / 2) throw WeightOverflow();
    w *= 2;
  }
  return Blossom(g, std::move(weights), max_cardinality, warm_start).run();
}

}  // namespace

std::vector<long> max_weight_matching(const SimpleWeightedGraph& g, bool max_cardinality) {
  g.check();
  std::vector<Weight> weights;
  weights.reserve(g.edges.size());
  for (const Edge& e : g.edges) weights.push_back(e.w);
  return run_blossom(g, std::move(weights), max_cardinality);
}

std::optional<PerfectMatching> max_weight_perfect_matching(const SimpleWeightedGraph& g) {
  g.check();
  if (g.vertex_count % 2 != 0) return std::nullopt;
  if (g.vertex_count == 0) return PerfectMatching{};

  // Every perfect matching has n/2 edges, so a uniform shift keeps the
  // optimum and makes all weights positive.
  Weight lo = 0;
  for (const Edge& e : g.edges) lo = std::min(lo, e.w);
  std::vector<Weight> shifted;
  shifted.reserve(g.edges.size());
  for (const Edge& e : g.edges) shifted.push_back(checked_add(checked_sub(e.w, lo), 1));

  const auto mate = run_blossom(g, std::move(shifted), true, true);
  PerfectMatching pm;
  for (Vertex v = 0; v < g.vertex_count; ++v) {
    if (mate[v] < 0) return std::nullopt;
    const auto e = static_cast<EdgeId>(mate[v]);
    if (g.edges[e].u == v) {
      pm.edges.push_back(e);
      pm.weight = checked_add(pm.weight, g.edges[e].w);
    }
  }
  std::sort(pm.edges.begin(), pm.edges.end());
  return pm;
}

}  // namespace bmatch
