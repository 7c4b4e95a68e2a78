#include <algorithm>
#include <map>

#include <fmt/format.h>

#include "json.hpp"
#include "mod2betti/errors.hpp"
#include "mod2betti/mv.hpp"

namespace mod2betti {

std::string to_string(Side s) {
  switch (s) {
    case Side::red:
      return "red";
    case Side::blue:
      return "blue";
    case Side::other:
      return "other";
  }
  return "?";
}

std::size_t Diagram::domain_dim() const {
  std::size_t n = 0;
  for (const auto& s : domain) n += s.dim;
  return n;
}

std::size_t Diagram::codomain_dim() const {
  std::size_t n = 0;
  for (const auto& s : codomain) n += s.dim;
  return n;
}

std::string Range::str() const {
  return exact() ? std::to_string(lo) : fmt::format("[{},{}]", lo, hi);
}

std::string Split::str() const { return fmt::format("{}+{}", a, b); }

Split parse_split(const std::string& s) {
  if (s == "1+1") return {1, 1};
  if (s == "1+2") return {1, 2};
  if (s == "2+2") return {2, 2};
  throw ParseError("unknown split \"" + s + "\" (expected 1+1, 1+2 or 2+2)");
}

namespace {

std::optional<std::pair<std::size_t, std::size_t>> payload_shape(const Payload& p) {
  if (const auto* m = std::get_if<BitMatrix>(&p)) return std::pair{m->rows(), m->cols()};
  if (const auto* q = std::get_if<MapProfile>(&p)) return std::pair{q->cod, q->dom};
  return std::nullopt;
}

}  // namespace

void check(const Diagram& d) {
  for (std::size_t i = 0; i < d.edges.size(); ++i) {
    const Edge& e = d.edges[i];
    if (e.from >= d.domain.size() || e.to >= d.codomain.size()) {
      throw StructuralError(fmt::format("edge {} points outside the diagram", i));
    }
    const Summand& x = d.domain[e.from];
    const Summand& y = d.codomain[e.to];
    if (x.dim == 0 || y.dim == 0) {
      throw StructuralError(fmt::format("edge {} touches a zero summand", i));
    }
    if (const auto shape = payload_shape(e.payload)) {
      if (shape->first != y.dim || shape->second != x.dim) {
        throw StructuralError(fmt::format("edge {} -> {}: block is {}x{}, summands need {}x{}",
                                          x.label, y.label, shape->first, shape->second, y.dim,
                                          x.dim));
      }
    }
  }
}

Diagram build_split(long r, const GenusData& da, const GenusData& db) {
  const int a = da.genus;
  const int b = db.genus;
  Diagram d;
  d.name = fmt::format("lambda_{}^{{{},{}}}", r, a, b);
  const long top_a = 6L * a - 3;
  const long top_b = 6L * b - 3;

  std::map<std::pair<long, long>, std::size_t> red_at, blue_at;
  for (long k = 0; k <= 6L * a; ++k) {
    const long s = r - k;
    if (s < 0 || s > top_b) continue;
    const std::size_t dim = da.nplus.count(k) * db.h.count(s);
    if (dim == 0) continue;
    red_at[{k, s}] = d.codomain.size();
    d.codomain.push_back({fmt::format("H{}(N{}+)xH{}(N{}#)", k, a, s, b), dim});
  }
  for (long j = 0; j <= top_a; ++j) {
    const long t = r - j;
    if (t < 0 || t > 6L * b) continue;
    const std::size_t dim = da.h.count(j) * db.nplus.count(t);
    if (dim == 0) continue;
    blue_at[{j, t}] = d.codomain.size();
    d.codomain.push_back({fmt::format("H{}(N{}#)xH{}(N{}+)", j, a, t, b), dim});
  }
  for (long i : {0L, 2L}) {
    for (long j = 0; j <= top_a; ++j) {
      const long s = r - i - j;
      if (s < 0 || s > top_b) continue;
      const std::size_t dim = da.h.count(j) * db.h.count(s);
      if (dim == 0) continue;
      const std::size_t x = d.domain.size();
      d.domain.push_back({fmt::format("H{}(S2)xH{}(N{}#)xH{}(N{}#)", i, j, a, s, b), dim});
      const MapKind kind = i == 0 ? MapKind::nu : MapKind::rho;
      if (auto it = red_at.find({i + j, s}); it != red_at.end()) {
        d.edges.push_back({x, it->second, TensorPayload{{0, kind, i + j}, true, db.h.count(s)},
                           Side::red});
      }
      if (auto it = blue_at.find({j, s + i}); it != blue_at.end()) {
        d.edges.push_back({x, it->second, TensorPayload{{1, kind, s + i}, false, da.h.count(j)},
                           Side::blue});
      }
    }
  }
  return d;
}

Diagram build_1g(long r, const GenusData& d1, const GenusData& dg) {
  if (d1.genus != 1) throw ValidationError("build_1g needs genus-1 data first");
  return build_split(r, d1, dg);
}

Diagram build_2g(long r, const GenusData& d2, const GenusData& dg) {
  if (d2.genus != 2) throw ValidationError("build_2g needs genus-2 data first");
  return build_split(r, d2, dg);
}

namespace {

const GenusRealization& factor(const Factors& f, int which) {
  const GenusRealization* r = which == 0 ? f.a : f.b;
  if (!r) throw StructuralError("diagram refers to a factor map but no realization was given");
  return *r;
}

BitMatrix factor_matrix(const Factors& f, const FactorMap& m) {
  const GenusRealization& r = factor(f, m.factor);
  return m.kind == MapKind::mu ? r.mu(m.degree) : r.map(m.kind, m.degree);
}

BitMatrix block(const Payload& p, const Factors& f, std::uint64_t seed) {
  return std::visit(
      [&](const auto& v) -> BitMatrix {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, BitMatrix>) {
          return v;
        } else if constexpr (std::is_same_v<T, MapProfile>) {
          return synth_with_rank(v.cod, v.dom, v.rank, seed);
        } else if constexpr (std::is_same_v<T, FactorMap>) {
          return factor_matrix(f, v);
        } else {
          const BitMatrix m = factor_matrix(f, v.map);
          const BitMatrix id = BitMatrix::identity(v.identity_dim);
          return v.map_on_left ? kron(m, id) : kron(id, m);
        }
      },
      p);
}

}  // namespace

BitMatrix realize(const Diagram& d, const Factors& f, std::uint64_t seed) {
  check(d);
  BlockGrid grid(d.codomain.size(), std::vector<std::optional<BitMatrix>>(d.domain.size()));
  for (std::size_t i = 0; i < d.edges.size(); ++i) {
    const Edge& e = d.edges[i];
    BitMatrix m = block(e.payload, f, seed == 0 ? 0 : seed + 7919 * (i + 1));
    auto& slot = grid[e.to][e.from];
    slot = slot ? *slot + m : std::move(m);
  }
  std::vector<std::size_t> rows, cols;
  for (const auto& s : d.codomain) rows.push_back(s.dim);
  for (const auto& s : d.domain) cols.push_back(s.dim);
  return block_assemble(grid, rows, cols);
}

BitMatrix realize(const Diagram& d, const GenusData& da, const GenusData& db,
                  std::uint64_t seed) {
  const GenusRealization ra = realize_genus(da, seed);
  const GenusRealization rb = realize_genus(db, seed == 0 ? 0 : seed * 0x2545F4914F6CDD1DULL + 1);
  return realize(d, Factors{&ra, &rb}, seed);
}

Diagram materialize(const Diagram& d, const Factors& f) {
  check(d);
  Diagram out = d;
  for (auto& e : out.edges) {
    if (std::holds_alternative<FactorMap>(e.payload) ||
        std::holds_alternative<TensorPayload>(e.payload)) {
      e.payload = block(e.payload, f, 0);
    }
  }
  check(out);
  return out;
}

KerCoker ker_coker(const BitMatrix& m) {
  const std::size_t rk = rank(m);
  return {{m.cols() - rk, m.cols() - rk}, {m.rows() - rk, m.rows() - rk}};
}

KerCoker diagram_ker_coker(const Diagram& d, std::uint64_t seed) {
  return ker_coker(realize(d, Factors{}, seed));
}

namespace {

struct Node {
  std::string label;
  std::size_t dim = 0;
  bool alive = true;
};

struct Arrow {
  Payload payload;  // BitMatrix or MapProfile only
  Side side = Side::other;
};

class Reducer {
 public:
  explicit Reducer(const Diagram& d) : name_(d.name) {
    for (const auto& s : d.domain) dom_.push_back({s.label, s.dim, true});
    for (const auto& s : d.codomain) cod_.push_back({s.label, s.dim, true});
    for (const auto& e : d.edges) {
      if (!std::holds_alternative<BitMatrix>(e.payload) &&
          !std::holds_alternative<MapProfile>(e.payload)) {
        throw StructuralError("materialize factor payloads before elimination");
      }
      auto [it, fresh] = arrows_.try_emplace({e.from, e.to}, Arrow{e.payload, e.side});
      if (!fresh) {
        auto* acc = std::get_if<BitMatrix>(&it->second.payload);
        const auto* add = std::get_if<BitMatrix>(&e.payload);
        if (!acc || !add) throw StructuralError("parallel profile edges cannot be merged");
        *acc = *acc + *add;
      }
    }
  }

  void run(Pivots pivots) {
    while (step(pivots)) {
    }
  }

  Diagram result() const {
    Diagram out;
    out.name = name_ + " reduced";
    std::vector<std::size_t> dmap(dom_.size()), cmap(cod_.size());
    for (std::size_t i = 0; i < dom_.size(); ++i) {
      if (!dom_[i].alive) continue;
      dmap[i] = out.domain.size();
      out.domain.push_back({dom_[i].label, dom_[i].dim});
    }
    for (std::size_t i = 0; i < cod_.size(); ++i) {
      if (!cod_[i].alive) continue;
      cmap[i] = out.codomain.size();
      out.codomain.push_back({cod_[i].label, cod_[i].dim});
    }
    for (const auto& [key, a] : arrows_) {
      out.edges.push_back({dmap[key.first], cmap[key.second], a.payload, a.side});
    }
    return out;
  }

 private:
  using Key = std::pair<std::size_t, std::size_t>;

  static bool is_zero(const Payload& p) {
    if (const auto* m = std::get_if<BitMatrix>(&p)) return m->is_zero();
    return std::get<MapProfile>(p).rank == 0;
  }

  std::size_t count_into(std::size_t y) const {
    std::size_t n = 0;
    for (const auto& [k, a] : arrows_) n += k.second == y;
    return n;
  }
  std::size_t count_out_of(std::size_t x) const {
    std::size_t n = 0;
    for (const auto& [k, a] : arrows_) n += k.first == x;
    return n;
  }
  bool all_explicit_at(std::size_t x, std::size_t y) const {
    for (const auto& [k, a] : arrows_) {
      if ((k.first == x || k.second == y) && !std::holds_alternative<BitMatrix>(a.payload)) {
        return false;
      }
    }
    return true;
  }

  bool step(Pivots pivots) {
    std::erase_if(arrows_, [](const auto& kv) { return is_zero(kv.second.payload); });
    for (const auto& [key, a] : arrows_) {
      if (pivots == Pivots::red_only && a.side != Side::red) continue;
      if (const auto* p = std::get_if<MapProfile>(&a.payload)) {
        if (p->iso() && (count_into(key.second) == 1 || count_out_of(key.first) == 1)) {
          pivot(key);
          return true;
        }
        continue;
      }
      if (!all_explicit_at(key.first, key.second)) continue;
      const BitMatrix& f = std::get<BitMatrix>(a.payload);
      if (f.rows() == f.cols() && rank(f) == f.rows()) {
        pivot(key);
      } else {
        pivot(split(key));
      }
      return true;
    }
    return false;
  }

  // Rewrites x and y in the bases of the rank normal form of f = (x -> y),
  // leaving an identity block between the coimage of x and the image in y.
  Key split(Key key) {
    const auto [x, y] = key;
    const BitMatrix f = std::get<BitMatrix>(arrows_.at(key).payload);
    const RankNormalForm nf = rank_normal_form(f);
    const std::size_t k = nf.rank;
    const std::size_t nx = f.cols();
    const std::size_t ny = f.rows();

    std::map<Key, Arrow> next;
    std::size_t x_ker = SIZE_MAX, y_cok = SIZE_MAX;
    if (nx > k) {
      x_ker = dom_.size();
      dom_.push_back({dom_[x].label + "/ker", nx - k, true});
    }
    if (ny > k) {
      y_cok = cod_.size();
      cod_.push_back({cod_[y].label + "/coker", ny - k, true});
    }
    dom_[x].label += "/coim";
    dom_[x].dim = k;
    cod_[y].label += "/im";
    cod_[y].dim = k;

    for (auto& [kk, a] : arrows_) {
      if (kk == key) continue;
      if (kk.first == x) {
        const BitMatrix g = compose(std::get<BitMatrix>(a.payload), nf.col_transform);
        next[{x, kk.second}] = {g.slice(0, g.rows(), 0, k), a.side};
        if (x_ker != SIZE_MAX) next[{x_ker, kk.second}] = {g.slice(0, g.rows(), k, nx - k), a.side};
      } else if (kk.second == y) {
        const BitMatrix h = compose(nf.row_transform, std::get<BitMatrix>(a.payload));
        next[{kk.first, y}] = {h.slice(0, k, 0, h.cols()), a.side};
        if (y_cok != SIZE_MAX) next[{kk.first, y_cok}] = {h.slice(k, ny - k, 0, h.cols()), a.side};
      } else {
        next[kk] = std::move(a);
      }
    }
    next[key] = {BitMatrix::identity(k), arrows_.at(key).side};
    arrows_ = std::move(next);
    return key;
  }

  // Removes an invertible f: x -> y; every path z -> y <- x -> w becomes a
  // direct arrow z -> w carrying g f^{-1} h, on the side of g.
  void pivot(Key key) {
    const auto [x, y] = key;
    std::vector<std::pair<std::size_t, BitMatrix>> into, out;
    std::vector<Side> out_side;
    std::optional<BitMatrix> finv;
    if (const auto* f = std::get_if<BitMatrix>(&arrows_.at(key).payload)) finv = inverse(*f);
    for (const auto& [k, a] : arrows_) {
      if (k == key) continue;
      const auto* m = std::get_if<BitMatrix>(&a.payload);
      if (k.second == y && m) into.emplace_back(k.first, *m);
      if (k.first == x && m) {
        out.emplace_back(k.second, *m);
        out_side.push_back(a.side);
      }
    }
    if (finv) {
      for (std::size_t i = 0; i < out.size(); ++i) {
        const BitMatrix gf = compose(out[i].second, *finv);
        for (const auto& [z, h] : into) {
          BitMatrix add = compose(gf, h);
          auto [it, fresh] = arrows_.try_emplace({z, out[i].first}, Arrow{add, out_side[i]});
          if (!fresh) {
            auto& acc = std::get<BitMatrix>(it->second.payload);
            acc = acc + add;
          }
        }
      }
    }
    std::erase_if(arrows_, [&](const auto& kv) { return kv.first.first == x || kv.first.second == y; });
    dom_[x].alive = false;
    cod_[y].alive = false;
  }

  std::string name_;
  std::vector<Node> dom_, cod_;
  std::map<Key, Arrow> arrows_;
};

}  // namespace

Diagram eliminate(const Diagram& d, Pivots pivots) {
  check(d);
  Reducer red(d);
  red.run(pivots);
  return red.result();
}

std::string dump_diagram(const Diagram& d) {
  using nlohmann::json;
  json doc;
  doc["name"] = d.name;
  doc["domain"] = json::array();
  doc["codomain"] = json::array();
  for (const auto& s : d.domain) doc["domain"].push_back({{"label", s.label}, {"dim", s.dim}});
  for (const auto& s : d.codomain) doc["codomain"].push_back({{"label", s.label}, {"dim", s.dim}});
  doc["edges"] = json::array();
  for (const auto& e : d.edges) {
    json je{{"from", e.from}, {"to", e.to}, {"side", to_string(e.side)}};
    std::visit(
        [&](const auto& v) {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, BitMatrix>) {
            je["kind"] = "explicit";
            je["rank"] = rank(v);
          } else if constexpr (std::is_same_v<T, MapProfile>) {
            je["kind"] = "profile";
            je["profile"] = v.str();
          } else if constexpr (std::is_same_v<T, FactorMap>) {
            je["kind"] = "factor";
            je["map"] = fmt::format("{}[{}]_{}", to_string(v.kind), v.factor, v.degree);
          } else {
            const std::string m = fmt::format("{}[{}]_{}", to_string(v.map.kind), v.map.factor,
                                              v.map.degree);
            const std::string id = fmt::format("I_{}", v.identity_dim);
            je["kind"] = "tensor";
            je["map"] = v.map_on_left ? m + " (x) " + id : id + " (x) " + m;
          }
        },
        e.payload);
    doc["edges"].push_back(std::move(je));
  }
  return doc.dump(2);
}

}  // namespace mod2betti
