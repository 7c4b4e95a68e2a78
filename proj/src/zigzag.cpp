#include "mod2betti/zigzag.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "mod2betti/errors.hpp"

namespace mod2betti {

Chain build_chain(const GenusData& d, int parity) {
  Chain c;
  c.parity = parity;
  const long top = d.max_degree();
  for (long t = parity; t <= top; t += 2) {
    c.nodes.push_back({true, t, d.nplus.count(t)});
    c.nodes.push_back({false, t, d.h.count(t)});
  }
  for (std::size_t k = 0; k < c.nodes.size(); ++k) {
    const ChainNode& n = c.nodes[k];
    const auto nu = d.nu_at(n.degree);
    if (!nu) {
      throw ValidationError("nu^" + std::to_string(d.genus) + "_" + std::to_string(n.degree) +
                            " is unknown; supply its rank");
    }
    if (n.sink) {
      c.edge_rank.push_back(nu->rank);  // to the source of the same degree
      c.joint.push_back(d.mu_at(n.degree).rank);
    } else {
      const std::size_t rho = d.rho_at(n.degree + 2).rank;
      if (k + 1 < c.nodes.size()) c.edge_rank.push_back(rho);
      c.joint.push_back(std::min(n.dim, nu->rank + rho));
    }
  }
  return c;
}

namespace {

struct Group {
  std::size_t start;
  std::size_t count;
};

struct NodeCounts {
  std::size_t through;     // arriving intervals that continue
  std::size_t fresh;       // intervals starting here and continuing
  std::size_t singletons;  // intervals living only here
};

NodeCounts node_counts(const Chain& c, std::size_t k) {
  const std::size_t left = k > 0 ? c.edge_rank[k - 1] : 0;
  const std::size_t right = k < c.edge_rank.size() ? c.edge_rank[k] : 0;
  const std::size_t joint = c.joint[k];
  const ChainNode& n = c.nodes[k];
  if (joint < std::max(left, right) || joint > std::min(n.dim, left + right)) {
    throw InfeasibleError(std::string(n.sink ? "H+_" : "H#_") + std::to_string(n.degree) +
                          " of parity " + std::to_string(c.parity) +
                          ": joint rank " + std::to_string(joint) +
                          " incompatible with adjacent ranks " + std::to_string(left) + ", " +
                          std::to_string(right) + " and dimension " + std::to_string(n.dim));
  }
  const std::size_t through = left + right - joint;
  return {through, right - through, n.dim - joint};
}

// Walks the chain left to right. `choose` decides, at each node, how many
// intervals of every arriving group continue; returning false from `emit`
// stops the walk.
class Sweep {
 public:
  using Choice = std::vector<std::size_t>;
  using Chooser = std::function<void(const std::vector<Group>&, std::size_t through,
                                     const std::function<bool(const Choice&)>& next)>;

  Sweep(const Chain& c, Chooser choose, std::function<bool(const ChainDecomposition&)> emit)
      : c_(c), choose_(std::move(choose)), emit_(std::move(emit)) {
    for (std::size_t k = 0; k < c.nodes.size(); ++k) counts_.push_back(node_counts(c, k));
  }

  void run() { step(0, {}, {}); }

 private:
  bool step(std::size_t k, const std::vector<Group>& arriving, ChainDecomposition done) {
    if (k == c_.nodes.size()) {
      std::sort(done.begin(), done.end());
      return emit_(done);
    }
    const NodeCounts nc = counts_[k];
    bool keep_going = true;
    choose_(arriving, nc.through, [&](const Choice& cont) {
      ChainDecomposition out = done;
      std::vector<Group> next;
      for (std::size_t i = 0; i < arriving.size(); ++i) {
        for (std::size_t e = cont[i]; e < arriving[i].count; ++e) out.push_back({arriving[i].start, k});
        if (cont[i] > 0) next.push_back({arriving[i].start, cont[i]});
      }
      if (nc.fresh > 0) next.push_back({k, nc.fresh});
      for (std::size_t s = 0; s < nc.singletons; ++s) out.push_back({k, k});
      keep_going = step(k + 1, next, std::move(out));
      return keep_going;
    });
    return keep_going;
  }

  const Chain& c_;
  Chooser choose_;
  std::function<bool(const ChainDecomposition&)> emit_;
  std::vector<NodeCounts> counts_;
};

// Oldest first: fill the earliest-starting groups.
void choose_oldest(const std::vector<Group>& groups, std::size_t through,
                   const std::function<bool(const Sweep::Choice&)>& next) {
  Sweep::Choice c(groups.size(), 0);
  for (std::size_t i = 0; i < groups.size() && through > 0; ++i) {
    c[i] = std::min(groups[i].count, through);
    through -= c[i];
  }
  next(c);
}

}  // namespace

ChainDecomposition canonical_decomposition(const Chain& c) {
  ChainDecomposition result;
  Sweep(c, choose_oldest, [&](const ChainDecomposition& d) {
    result = d;
    return false;
  }).run();
  return result;
}

ChainDecomposition random_decomposition(const Chain& c, std::mt19937_64& rng) {
  ChainDecomposition result;
  auto choose = [&](const std::vector<Group>& groups, std::size_t through,
                    const std::function<bool(const Sweep::Choice&)>& next) {
    std::vector<std::size_t> owners;
    for (std::size_t i = 0; i < groups.size(); ++i) owners.insert(owners.end(), groups[i].count, i);
    std::shuffle(owners.begin(), owners.end(), rng);
    Sweep::Choice pick(groups.size(), 0);
    for (std::size_t i = 0; i < through; ++i) ++pick[owners[i]];
    next(pick);
  };
  Sweep(c, choose, [&](const ChainDecomposition& d) {
    result = d;
    return false;
  }).run();
  return result;
}

std::vector<ChainDecomposition> enumerate_decompositions(const Chain& c, std::size_t limit,
                                                         bool* truncated) {
  std::vector<ChainDecomposition> out;
  bool cut = false;
  // All ways to continue `through` intervals, largest share to the oldest
  // group first so that the canonical choice comes out first.
  auto choose = [](const std::vector<Group>& groups, std::size_t through,
                   const std::function<bool(const Sweep::Choice&)>& next) {
    Sweep::Choice pick(groups.size(), 0);
    std::vector<std::size_t> tail(groups.size() + 1, 0);
    for (std::size_t i = groups.size(); i-- > 0;) tail[i] = tail[i + 1] + groups[i].count;
    std::function<bool(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t left) {
      if (i == groups.size()) return left == 0 ? next(pick) : true;
      const std::size_t hi = std::min(groups[i].count, left);
      const std::size_t lo = left > tail[i + 1] ? left - tail[i + 1] : 0;
      for (std::size_t v = hi + 1; v-- > lo;) {
        pick[i] = v;
        if (!rec(i + 1, left - v)) return false;
      }
      return true;
    };
    rec(0, through);
  };
  Sweep(c, choose, [&](const ChainDecomposition& d) {
    if (out.size() >= limit) {
      cut = true;
      return false;
    }
    out.push_back(d);
    return true;
  }).run();
  if (truncated) *truncated = cut;
  return out;
}

const BitMatrix& GenusRealization::map(MapKind kind, long degree) const {
  const auto& v = kind == MapKind::nu ? nu : rho;
  if (kind == MapKind::mu || degree < 0 || degree >= static_cast<long>(v.size())) {
    throw StructuralError("no stored matrix for " + to_string(kind) + "_" +
                          std::to_string(degree));
  }
  return v[static_cast<std::size_t>(degree)];
}

BitMatrix GenusRealization::mu(long degree) const {
  return hstack(map(MapKind::nu, degree), map(MapKind::rho, degree));
}

GenusRealization realize_decomposition(const GenusData& d, const Decomposition& dec,
                                       std::uint64_t seed) {
  GenusRealization out;
  out.genus = d.genus;
  const long top = d.max_degree();
  for (long r = 0; r <= top; ++r) {
    out.nu.emplace_back(d.nplus.count(r), d.h.count(r));
    out.rho.emplace_back(d.nplus.count(r), d.h.count(r - 2));
  }
  std::mt19937_64 rng(seed);
  for (int parity = 0; parity < 2; ++parity) {
    const Chain c = build_chain(d, parity);
    const ChainDecomposition& ivs = parity == 0 ? dec.even : dec.odd;
    // Position of each interval in the basis of every node it covers.
    std::vector<std::size_t> fill(c.nodes.size(), 0);
    std::vector<std::vector<std::size_t>> pos(ivs.size());
    for (std::size_t i = 0; i < ivs.size(); ++i)
      for (std::size_t k = ivs[i].lo; k <= ivs[i].hi; ++k) pos[i].push_back(fill[k]++);
    for (std::size_t k = 0; k < c.nodes.size(); ++k) {
      if (fill[k] != c.nodes[k].dim) {
        throw ConsistencyError("decomposition does not fill node " + std::to_string(k) +
                               " of parity " + std::to_string(parity));
      }
    }
    for (std::size_t i = 0; i < ivs.size(); ++i) {
      for (std::size_t k = ivs[i].lo; k < ivs[i].hi; ++k) {
        const std::size_t a = pos[i][k - ivs[i].lo];
        const std::size_t b = pos[i][k + 1 - ivs[i].lo];
        const ChainNode& n = c.nodes[k];
        const auto t = static_cast<std::size_t>(n.sink ? n.degree : n.degree + 2);
        if (n.sink) {
          out.nu[t].set(a, b, true);
        } else {
          out.rho[t].set(b, a, true);
        }
      }
    }
    if (seed == 0) continue;
    std::vector<BitMatrix> basis, basis_inv;
    for (const auto& n : c.nodes) {
      basis.push_back(random_invertible(n.dim, rng));
      basis_inv.push_back(*inverse(basis.back()));
    }
    for (std::size_t k = 0; k + 1 < c.nodes.size(); ++k) {
      const bool sink_left = c.nodes[k].sink;
      const std::size_t sink = sink_left ? k : k + 1;
      const std::size_t src = sink_left ? k + 1 : k;
      const auto t = static_cast<std::size_t>(c.nodes[sink].degree);
      BitMatrix& m = sink_left ? out.nu[t] : out.rho[t];
      m = compose(compose(basis[sink], m), basis_inv[src]);
    }
  }
  return out;
}

namespace {

std::size_t domain_degree(const MapRef& m) {
  return static_cast<std::size_t>(m.kind == MapKind::rho ? m.degree - 2 : m.degree);
}

std::optional<BitMatrix> fetch(const GenusRealization& r, const MapRef& m) {
  if (m.degree < 0 || m.degree >= static_cast<long>(r.nu.size())) return std::nullopt;
  if (m.kind == MapKind::rho && m.degree < 2) return std::nullopt;
  if (m.kind == MapKind::mu) return r.mu(m.degree);
  return r.map(m.kind, m.degree);
}

// ker A meets ker B. A mu operand is read through the summand of its
// domain that A shares: either as the projection of ker mu onto that
// summand (`typed` false) or as the component map there (`typed` true).
std::optional<std::size_t> kernel_meet(const GenusRealization& r, MapRef a, MapRef b,
                                       bool typed) {
  if (a.kind == MapKind::mu) std::swap(a, b);
  if (a.kind == MapKind::mu) return std::nullopt;
  const auto ma = fetch(r, a);
  if (!ma) return std::nullopt;
  const long s = static_cast<long>(domain_degree(a));
  if (b.kind != MapKind::mu) {
    const auto mb = fetch(r, b);
    if (!mb || static_cast<long>(domain_degree(b)) != s || mb->cols() != ma->cols()) {
      return std::nullopt;
    }
    return ma->cols() - rank(vstack(*ma, *mb));
  }
  const long t = b.degree;
  if (s != t && s != t - 2) return std::nullopt;
  if (typed) {
    MapRef part = b;
    part.kind = s == t ? MapKind::nu : MapKind::rho;
    return kernel_meet(r, a, part, true);
  }
  const auto mu = fetch(r, b);
  if (!mu) return std::nullopt;
  const std::size_t first = r.nu[static_cast<std::size_t>(t)].cols();
  const BitMatrix k = kernel_basis(*mu);
  const BitMatrix proj = s == t ? k.slice(0, first, 0, k.cols())
                                : k.slice(first, k.rows() - first, 0, k.cols());
  if (proj.rows() != ma->cols()) return std::nullopt;
  return rank(proj) - rank(compose(*ma, proj));
}

std::optional<std::size_t> composite_kernel(const GenusRealization& r,
                                            const std::vector<MapRef>& ops) {
  std::optional<BitMatrix> acc;
  for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
    auto m = fetch(r, *it);
    if (!m) return std::nullopt;
    if (it->inverted) {
      m = inverse(*m);
      if (!m) return std::nullopt;
    }
    if (acc && m->cols() != acc->rows()) return std::nullopt;
    acc = acc ? compose(*m, *acc) : *m;
  }
  if (!acc) return std::nullopt;
  return acc->cols() - rank(*acc);
}

std::optional<std::size_t> evaluate_as(const SideConstraint& c, const GenusRealization& r,
                                       bool typed) {
  switch (c.kind) {
    case ConstraintKind::kernel_intersection_dim:
      if (c.operands.size() != 2) return std::nullopt;
      return kernel_meet(r, c.operands[0], c.operands[1], typed);
    case ConstraintKind::image_containment: {
      if (c.operands.size() != 2) return std::nullopt;
      const auto inner = fetch(r, c.operands[0]);
      const auto outer = fetch(r, c.operands[1]);
      if (!inner || !outer || inner->rows() != outer->rows()) return std::nullopt;
      return rank(hstack(*outer, *inner)) == rank(*outer) ? 1U : 0U;
    }
    case ConstraintKind::composite_kernel_dim:
      return composite_kernel(r, c.operands);
  }
  return std::nullopt;
}

}  // namespace

std::vector<ReadingValue> evaluate_constraint(const SideConstraint& c, const GenusRealization& r) {
  SideConstraint corrected = c;
  bool same_genus = true;
  for (auto& op : corrected.operands) {
    same_genus = same_genus && op.genus == r.genus;
    op.genus = r.genus;
  }
  std::vector<ReadingValue> out;
  out.push_back({"genus-corrected", evaluate_as(corrected, r, false)});
  out.push_back({"as-printed", same_genus ? evaluate_as(c, r, false) : std::nullopt});
  if (c.kind == ConstraintKind::kernel_intersection_dim) {
    out.push_back({"component", evaluate_as(corrected, r, true)});
  }
  return out;
}

bool satisfies_constraints(const GenusData& d, const GenusRealization& r) {
  for (const auto& c : d.constraints) {
    const auto v = evaluate_constraint(c, r).front().value;
    if (!v) throw ValidationError("constraint " + c.str() + " cannot be evaluated");
    if (*v != c.value) return false;
  }
  return true;
}

namespace {

std::string failing_constraints(const GenusData& d, const GenusRealization& r) {
  std::string out;
  for (const auto& c : d.constraints) {
    const auto v = evaluate_constraint(c, r).front().value;
    if (v && *v == c.value) continue;
    out += (out.empty() ? "" : "; ") + c.str();
  }
  return out;
}

}  // namespace

RealizationSet admissible_decompositions(const GenusData& d, std::size_t limit,
                                         std::size_t samples, std::uint64_t seed) {
  const Chain even = build_chain(d, 0);
  const Chain odd = build_chain(d, 1);
  bool cut_even = false;
  bool cut_odd = false;
  const auto ev = enumerate_decompositions(even, limit, &cut_even);
  const auto od = enumerate_decompositions(odd, limit, &cut_odd);

  std::vector<Decomposition> candidates;
  RealizationSet set;
  if (!cut_even && !cut_odd && ev.size() * od.size() <= limit) {
    for (const auto& a : ev)
      for (const auto& b : od) candidates.push_back({a, b});
  } else {
    set.exhaustive = false;
    std::set<Decomposition> seen;
    candidates.push_back({ev.front(), od.front()});
    seen.insert(candidates.back());
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < samples; ++i) {
      Decomposition dec{random_decomposition(even, rng), random_decomposition(odd, rng)};
      if (seen.insert(dec).second) candidates.push_back(std::move(dec));
    }
  }
  set.examined = candidates.size();
  for (auto& dec : candidates) {
    if (d.constraints.empty() || satisfies_constraints(d, realize_decomposition(d, dec, 0))) {
      set.decompositions.push_back(std::move(dec));
    }
  }
  if (set.decompositions.empty()) {
    throw InfeasibleError("genus " + std::to_string(d.genus) + ": no realization meets " +
                          failing_constraints(d, realize_decomposition(d, candidates.front(), 0)));
  }
  return set;
}

GenusRealization realize_genus(const GenusData& d, std::uint64_t seed) {
  const RealizationSet set = admissible_decompositions(d, 4096, 64, seed);
  std::size_t pick = 0;
  if (seed != 0) {
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    pick = static_cast<std::size_t>(rng() % set.decompositions.size());
  }
  return realize_decomposition(d, set.decompositions[pick], seed);
}

}  // namespace mod2betti
