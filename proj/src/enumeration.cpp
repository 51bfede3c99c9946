#include "mds/enumeration.hpp"

#include <algorithm>
#include <sstream>

namespace mds {

EnumContext make_context(const NiceDBTD& d, const EnumerationOrder& o, const Factors& f,
                         const std::vector<Domain>& name_dom) {
  EnumContext ctx;
  ctx.dbtd = &d;
  ctx.order = &o;
  ctx.factors = &f;
  ctx.domains = name_dom;
  const std::size_t n = o.Q.size();
  ctx.earlier.resize(n);
  ctx.bag_ranks.resize(n);
  ctx.labels.resize(n);
  ctx.copy.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const int x = o.Q[i];
    for (int y : d.graph.neighbors(x))
      if (o.rank[y] < static_cast<int>(i)) ctx.earlier[i].push_back(o.rank[y]);
    for (int y : f.bag_order[o.B[x]]) ctx.bag_ranks[i].push_back(o.rank[y]);
    ctx.labels[i] = domain_labels(name_dom[x]);
    ctx.copy[i] = d.is_copy(x);
    if (ctx.copy[i] && !ctx.earlier[i].empty()) throw std::logic_error("copy with an earlier neighbour");
    if (!ctx.copy[i]) ctx.top_ranks.push_back(static_cast<int>(i));
  }
  std::sort(ctx.top_ranks.begin(), ctx.top_ranks.end(),
            [&](int a, int b) { return d.names[o.Q[a]].orig < d.names[o.Q[b]].orig; });
  return ctx;
}

PartialLabeling empty_labeling(const EnumContext& ctx) {
  PartialLabeling p;
  p.theta.assign(ctx.order->Q.size(), kUnset);
  return p;
}

namespace {

struct Undo {
  int rank;
  std::uint8_t old;
};

// Increment step on rank i. Returns the number of admissible variants (0, 1 or 2) without touching theta.
int variants(const EnumContext& ctx, const std::vector<std::uint8_t>& theta, int i, std::uint8_t c, int* split) {
  *split = -1;
  if (ctx.copy[i]) return 1;
  int n_sigma = 0, n_omega = 0, sigma_rank = -1;
  bool has_si = false, has_w0 = false;
  for (int y : ctx.earlier[i]) {
    const auto l = theta[y];
    if (is_sigma(l)) {
      ++n_sigma;
      sigma_rank = y;
    }
    if (is_omega(l)) ++n_omega;
    if (l == SI) has_si = true;
    if (l == W0) has_w0 = true;
  }
  if (is_sigma(c)) {
    if (c == SI) return (n_sigma || n_omega) ? 0 : 1;
    if (has_si || has_w0) return 0;
    if (c == S0 && n_omega == 0) return 0;
    return 1;
  }
  if (is_rho(c)) return counter(c) == std::max(0, 2 - n_sigma) ? 1 : 0;
  if (has_si || n_sigma >= 2) return 0;
  if (n_sigma == 0) return c == W1 ? 1 : 0;
  if (c == W1) return 0;
  const auto l = theta[sigma_rank];
  if (l == S0) return 0;
  *split = sigma_rank;
  return 2;
}

void apply(const EnumContext& ctx, std::vector<std::uint8_t>& theta, int i, std::uint8_t c, int split, int variant,
           std::vector<Undo>& log, std::uint64_t& writes) {
  auto write = [&](int r, std::uint8_t l) {
    log.push_back({r, theta[r]});
    theta[r] = l;
    ++writes;
  };
  if (!ctx.copy[i]) {
    if (is_sigma(c)) {
      for (int y : ctx.earlier[i]) {
        const auto l = theta[y];
        if (l == R1 || l == R2) write(y, static_cast<std::uint8_t>(l - 1));
        else if (l == W1 && c != SI) write(y, W0);
      }
    } else if (c == W0 && split >= 0 && variant == 0) {
      write(split, S0);
    }
  }
  write(i, c);
}

void undo_to(std::vector<std::uint8_t>& theta, std::vector<Undo>& log, std::size_t mark, std::uint64_t& writes) {
  while (log.size() > mark) {
    theta[log.back().rank] = log.back().old;
    log.pop_back();
    ++writes;
  }
}

bool lookup(const EnumContext& ctx, const std::vector<std::uint8_t>& theta, int i) {
  const auto& ranks = ctx.bag_ranks[i];
  std::uint8_t buf[256];
  std::vector<std::uint8_t> big;
  std::uint8_t* key = buf;
  if (ranks.size() > sizeof(buf)) {
    big.resize(ranks.size());
    key = big.data();
  }
  for (std::size_t k = 0; k < ranks.size(); ++k) key[k] = theta[ranks[k]];
  const int node = ctx.order->B[ctx.order->Q[i]];
  return ctx.factors->tries[node].lookup(key);
}

}  // namespace

std::vector<PartialLabeling> increment_labeling(const EnumContext& ctx, const PartialLabeling& theta, std::uint8_t c) {
  std::vector<PartialLabeling> out;
  const int i = theta.i;
  if (i >= static_cast<int>(ctx.order->Q.size())) return out;
  int split;
  int nv = variants(ctx, theta.theta, i, c, &split);
  for (int v = 0; v < nv; ++v) {
    PartialLabeling next = theta;
    std::vector<Undo> log;
    std::uint64_t writes = 0;
    apply(ctx, next.theta, i, c, split, v, log, writes);
    next.i = i + 1;
    out.push_back(std::move(next));
  }
  return out;
}

bool is_extendable(const EnumContext& ctx, const PartialLabeling& theta) {
  if (theta.i == 0) return ctx.factors->root_nonempty;
  return lookup(ctx, theta.theta, theta.i - 1);
}

bool prefix_admissible(const EnumContext& ctx, const PartialLabeling& p) {
  const auto& d = *ctx.dbtd;
  const auto& o = *ctx.order;
  for (int j = 0; j < p.i; ++j) {
    const auto l = p.theta[j];
    int cnt[kLabels] = {0};
    for (int y : d.graph.neighbors(o.Q[j])) {
      int r = o.rank[y];
      if (r < p.i) ++cnt[p.theta[r]];
    }
    const int ks = cnt[S0] + cnt[S1] + cnt[SI];
    const bool top = !ctx.copy[j];
    switch (l) {
      case SI:
        if (ks || cnt[W0] || cnt[W1]) return false;
        break;
      case W0: case W1:
        if (cnt[SI]) return false;
        if (top ? ks != 1 - counter(l) : ks > 1 - counter(l)) return false;
        break;
      case S1:
        if (cnt[SI] || cnt[W1]) return false;
        break;
      case S0:
        if (cnt[SI] || cnt[W1] || (top && cnt[W0] == 0)) return false;
        break;
      case R1: case R2:
        if (top ? ks != 2 - counter(l) : ks + counter(l) > 2) return false;
        break;
      case R0:
        if (top && ks < 2) return false;
        break;
      default: return false;
    }
  }
  return true;
}

EnumResult enum_ds(const EnumContext& ctx, const Emit& emit, const EnumOptions& opts) {
  EnumResult res;
  const int n = static_cast<int>(ctx.order->Q.size());
  auto& rep = res.delay;
  rep.n = static_cast<std::size_t>(n);
  rep.w = opts.width;
  std::uint64_t lookups = 0, increments = 0, writes = 0;
  std::uint64_t gap_start = 0;
  auto cost = [&] { return lookups + increments + writes; };
  auto close_gap = [&] {
    if (!opts.stats) return;
    rep.gaps.push_back(cost() - gap_start);
    gap_start = cost();
  };

  ++lookups;
  if (!ctx.factors->root_nonempty) {
    close_gap();
  } else {
    struct Frame {
      int label_idx = 0;  // next label to try
      int variant = 0;    // next variant of the current label
      int nvariants = 0;
      int split = -1;
      std::size_t mark = 0;  // undo log size before the applied candidate
      bool applied = false;
      std::uint64_t emitted_at_entry = 0;
    };
    std::vector<std::uint8_t> theta(n, kUnset);
    std::vector<Undo> log;
    std::vector<Frame> stack(1);
    PartialLabeling view;
    std::vector<int> solution;
    bool stop = false;
    while (!stack.empty() && !stop) {
      const int i = static_cast<int>(stack.size()) - 1;
      if (i == n) {
        solution.clear();
        for (int r : ctx.top_ranks)
          if (is_sigma(theta[r])) solution.push_back(ctx.dbtd->names[ctx.order->Q[r]].orig);
        ++res.emitted;
        close_gap();
        if (!emit(solution) || (opts.limit && res.emitted >= opts.limit)) {
          stop = true;
          res.stopped = true;
        }
        stack.pop_back();
        continue;
      }
      Frame& f = stack.back();
      if (f.applied) {
        undo_to(theta, log, f.mark, writes);
        f.applied = false;
      }
      bool descended = false;
      const auto& labs = ctx.labels[i];
      while (f.label_idx < static_cast<int>(labs.size())) {
        const auto c = labs[f.label_idx];
        if (f.variant == 0) {
          ++increments;
          f.nvariants = variants(ctx, theta, i, c, &f.split);
        }
        if (f.variant >= f.nvariants) {
          ++f.label_idx;
          f.variant = 0;
          continue;
        }
        f.mark = log.size();
        apply(ctx, theta, i, c, f.split, f.variant, log, writes);
        f.applied = true;
        ++f.variant;
        ++lookups;
        bool ok = lookup(ctx, theta, i);
        if (opts.on_check || (opts.debug && ok)) {
          view.i = i + 1;
          view.theta = theta;
          if (opts.on_check) opts.on_check(view, ok);
          if (opts.debug && ok && !prefix_admissible(ctx, view)) ++res.inadmissible_prefixes;
        }
        if (ok) {
          Frame child;
          child.emitted_at_entry = res.emitted;
          stack.push_back(child);
          descended = true;
          break;
        }
        undo_to(theta, log, f.mark, writes);
        f.applied = false;
      }
      if (descended) continue;
      if (opts.debug && res.emitted == f.emitted_at_entry) ++res.dead_branches;
      stack.pop_back();
    }
    if (!stop) close_gap();
  }
  rep.lookups = lookups;
  rep.increments = increments;
  rep.writes = writes;
  if (!rep.gaps.empty()) {
    rep.max_gap = *std::max_element(rep.gaps.begin(), rep.gaps.end());
    double sum = 0;
    for (auto g : rep.gaps) sum += static_cast<double>(g);
    rep.mean_gap = sum / static_cast<double>(rep.gaps.size());
    rep.ratio = static_cast<double>(rep.max_gap) / (static_cast<double>(std::max<std::size_t>(rep.n, 1)) * (rep.w + 1));
  }
  return res;
}

std::string format_delay(const DelayReport& r) {
  std::ostringstream os;
  os << "# delay N=" << r.n << " w=" << r.w << " gaps=" << r.gaps.size() << " max_gap=" << r.max_gap
     << " mean_gap=" << r.mean_gap << " ratio=" << r.ratio << '\n';
  os << "# delay lookups=" << r.lookups << " increments=" << r.increments << " writes=" << r.writes << '\n';
  return os.str();
}

}  // namespace mds
