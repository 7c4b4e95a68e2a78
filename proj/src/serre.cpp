#include "mod2betti/serre.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

#include "mod2betti/errors.hpp"

namespace mod2betti {

using nlohmann::json;

std::size_t AlphaAction::dim(long r) const {
  if (r < 0 || r >= static_cast<long>(dims.size())) return 0;
  return dims[static_cast<std::size_t>(r)];
}

std::size_t AlphaAction::alpha_rank(long k) const {
  if (k < 0 || k >= static_cast<long>(alpha_ranks.size())) return 0;
  return alpha_ranks[static_cast<std::size_t>(k)];
}

namespace {

std::size_t expected_dims(int g) { return static_cast<std::size_t>(6 * g - 5); }
std::size_t expected_ranks(int g) { return g >= 2 ? static_cast<std::size_t>(6 * g - 7) : 0; }

// Kernel and cokernel of alpha out of degree s, with zero spaces outside the
// stored range. Every degree shift in the spectral sequence goes through here.
struct AlphaSlot {
  std::size_t ker;
  std::size_t coker;
};
AlphaSlot alpha_slot(const AlphaAction& a, long s) {
  const std::size_t rk = a.alpha_rank(s);
  return {a.dim(s) - rk, a.dim(s + 2) - rk};
}

}  // namespace

std::vector<std::string> violations(const AlphaAction& a) {
  std::vector<std::string> out;
  if (a.genus < 1) {
    out.push_back("genus must be >= 1");
    return out;
  }
  if (a.dims.size() != expected_dims(a.genus)) {
    out.push_back("dims must list degrees 0.." + std::to_string(6 * a.genus - 6));
    return out;
  }
  if (a.alpha_ranks.size() != expected_ranks(a.genus)) {
    out.push_back("alpha_ranks must list degrees 0.." + std::to_string(6 * a.genus - 8));
    return out;
  }
  if (a.dims[0] != 1) out.push_back("dims[0] must be 1 (connected base)");
  if (a.dims.size() > 1 && a.dims[1] != 0) out.push_back("simple connectivity: dims[1] must be 0");
  const long top = static_cast<long>(a.dims.size()) - 1;
  for (long r = 0; r <= top; ++r) {
    if (a.dim(r) != a.dim(top - r)) {
      out.push_back("duality: dims[" + std::to_string(r) + "] != dims[" +
                    std::to_string(top - r) + "]");
      break;
    }
  }
  for (long k = 0; k < static_cast<long>(a.alpha_ranks.size()); ++k) {
    if (a.alpha_rank(k) > std::min(a.dim(k), a.dim(k + 2))) {
      out.push_back("rank bound: alpha rank " + std::to_string(a.alpha_rank(k)) +
                    " out of degree " + std::to_string(k) + " exceeds min(dims)");
    }
  }
  // alpha out of k is adjoint to alpha out of top-2-k under the cup pairing
  for (long k = 0; k < static_cast<long>(a.alpha_ranks.size()); ++k) {
    if (a.alpha_rank(k) != a.alpha_rank(top - 2 - k)) {
      out.push_back("duality: alpha rank out of degree " + std::to_string(k) + " differs from " +
                    "the rank out of degree " + std::to_string(top - 2 - k));
      break;
    }
  }
  if (a.alpha_matrices) {
    const auto& ms = *a.alpha_matrices;
    if (ms.size() != a.alpha_ranks.size()) {
      out.push_back("alpha_matrices must list degrees 0.." + std::to_string(6 * a.genus - 8));
      return out;
    }
    bool shapes_ok = true;
    for (std::size_t k = 0; k < ms.size(); ++k) {
      const long lk = static_cast<long>(k);
      if (ms[k].rows() != a.dim(lk + 2) || ms[k].cols() != a.dim(lk)) {
        out.push_back("alpha matrix out of degree " + std::to_string(k) + " has shape " +
                      std::to_string(ms[k].rows()) + "x" + std::to_string(ms[k].cols()));
        shapes_ok = false;
      } else if (rank(ms[k]) != a.alpha_ranks[k]) {
        out.push_back("alpha matrix out of degree " + std::to_string(k) +
                      " disagrees with its declared rank");
      }
    }
    if (shapes_ok) {
      // alpha^g = 0: any g consecutive alpha maps compose to zero.
      const std::size_t g = static_cast<std::size_t>(a.genus);
      for (std::size_t k = 0; k + 2 * (g - 1) < ms.size(); ++k) {
        BitMatrix acc = ms[k];
        for (std::size_t step = 1; step < g; ++step) acc = compose(ms[k + 2 * step], acc);
        if (!acc.is_zero()) {
          out.push_back("nilpotency: alpha^" + std::to_string(g) + " is non-zero from degree " +
                        std::to_string(k));
          break;
        }
      }
    }
  }
  return out;
}

void validate(const AlphaAction& a) {
  const auto v = violations(a);
  if (v.empty()) return;
  std::string msg = "invalid alpha action";
  for (const auto& s : v) msg += "; " + s;
  throw ValidationError(msg);
}

BettiTable serre_betti(const AlphaAction& a) {
  validate(a);
  const long top = 6L * a.genus - 3;
  std::vector<BigCount> h(static_cast<std::size_t>(top + 1), 0);
  for (long r = 0; r <= top; ++r) {
    h[static_cast<std::size_t>(r)] = alpha_slot(a, r - 2).coker + alpha_slot(a, r - 1).ker +
                                     alpha_slot(a, r - 4).coker + alpha_slot(a, r - 3).ker;
  }
  return {a.genus, Field::F2, Space::framed, std::move(h)};
}

AlphaAction genus2_ring() {
  // Basis by degree: 1 | - | alpha | psi_1..psi_4 | delta_2 | - | alpha*delta_2.
  AlphaAction a;
  a.genus = 2;
  a.dims = {1, 0, 1, 4, 1, 0, 1};
  std::vector<BitMatrix> ms;
  ms.push_back(BitMatrix::identity(1));  // 1 -> alpha
  ms.emplace_back(4, 0);                 // degree 1 is zero
  ms.emplace_back(1, 1);                 // alpha^2 = 0
  ms.emplace_back(0, 4);                 // H^5 = 0
  ms.push_back(BitMatrix::identity(1));  // delta_2 -> alpha*delta_2
  for (const auto& m : ms) a.alpha_ranks.push_back(rank(m));
  a.alpha_matrices = std::move(ms);
  validate(a);
  return a;
}

namespace {

std::size_t as_count(const json& v, const std::string& where) {
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw ParseError(where + ": expected a non-negative integer");
  }
  return v.get<std::size_t>();
}

std::vector<std::size_t> as_counts(const json& v, const std::string& where) {
  if (!v.is_array()) throw ParseError(where + ": expected an array");
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < v.size(); ++i)
    out.push_back(as_count(v[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

BitMatrix as_matrix(const json& v, std::size_t rows, std::size_t cols, const std::string& where) {
  if (!v.is_array()) throw ParseError(where + ": expected an array");
  std::vector<int> flat;
  const bool nested = !v.empty() && v.front().is_array();
  if (nested) {
    if (v.size() != rows) throw ParseError(where + ": expected " + std::to_string(rows) + " rows");
    for (std::size_t r = 0; r < v.size(); ++r) {
      if (!v[r].is_array() || v[r].size() != cols) {
        throw ParseError(where + "[" + std::to_string(r) + "]: expected " +
                         std::to_string(cols) + " entries");
      }
      for (const auto& e : v[r]) flat.push_back(static_cast<int>(as_count(e, where)));
    }
  } else {
    if (v.size() != rows * cols) {
      throw ParseError(where + ": expected " + std::to_string(rows * cols) + " entries");
    }
    for (const auto& e : v) flat.push_back(static_cast<int>(as_count(e, where)));
  }
  BitMatrix m(rows, cols);
  for (std::size_t i = 0; i < flat.size(); ++i) {
    if (flat[i] > 1) throw ParseError(where + ": entries must be 0 or 1");
    m.set(i / cols, i % cols, flat[i] == 1);
  }
  return m;
}

}  // namespace

AlphaAction parse_alpha_profile(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("alpha profile is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("alpha profile must be a JSON object");
  for (const auto& [key, _] : doc.items()) {
    if (key != "genus" && key != "dims" && key != "alpha_ranks" && key != "alpha_matrices") {
      throw ParseError("unknown key \"" + key + "\"");
    }
  }
  if (!doc.contains("genus")) throw ParseError("missing \"genus\"");
  if (!doc.contains("dims")) throw ParseError("missing \"dims\"");
  AlphaAction a;
  const std::size_t g = as_count(doc["genus"], "genus");
  if (g < 1 || g > 1000) throw ParseError("genus: out of range");
  a.genus = static_cast<int>(g);
  a.dims = as_counts(doc["dims"], "dims");
  if (a.dims.size() != expected_dims(a.genus)) {
    throw ParseError("dims: expected " + std::to_string(expected_dims(a.genus)) + " entries, got " +
                     std::to_string(a.dims.size()));
  }
  const std::size_t nranks = expected_ranks(a.genus);
  if (doc.contains("alpha_ranks")) {
    a.alpha_ranks = as_counts(doc["alpha_ranks"], "alpha_ranks");
    if (a.alpha_ranks.size() != nranks) {
      throw ParseError("alpha_ranks: expected " + std::to_string(nranks) + " entries, got " +
                       std::to_string(a.alpha_ranks.size()));
    }
  } else if (!doc.contains("alpha_matrices")) {
    throw ParseError("missing \"alpha_ranks\"");
  }
  if (doc.contains("alpha_matrices")) {
    const json& jm = doc["alpha_matrices"];
    if (!jm.is_array() || jm.size() != nranks) {
      throw ParseError("alpha_matrices: expected " + std::to_string(nranks) + " matrices");
    }
    std::vector<BitMatrix> ms;
    std::vector<std::size_t> ranks;
    for (std::size_t k = 0; k < nranks; ++k) {
      const long lk = static_cast<long>(k);
      ms.push_back(as_matrix(jm[k], a.dim(lk + 2), a.dim(lk),
                             "alpha_matrices[" + std::to_string(k) + "]"));
      ranks.push_back(rank(ms.back()));
    }
    if (!a.alpha_ranks.empty() && a.alpha_ranks != ranks) {
      throw ValidationError("alpha_ranks disagree with the ranks of alpha_matrices");
    }
    a.alpha_ranks = std::move(ranks);
    a.alpha_matrices = std::move(ms);
  }
  validate(a);
  return a;
}

AlphaAction load_alpha_profile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open ring file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_alpha_profile(ss.str());
}

std::string dump_alpha_profile(const AlphaAction& a) {
  json doc;
  doc["genus"] = a.genus;
  doc["dims"] = a.dims;
  doc["alpha_ranks"] = a.alpha_ranks;
  if (a.alpha_matrices) {
    json ms = json::array();
    for (const auto& m : *a.alpha_matrices) ms.push_back(m.to_rows());
    doc["alpha_matrices"] = ms;
  }
  return doc.dump();
}

}  // namespace mod2betti
