#include "mod2betti/output.hpp"

#include <algorithm>
#include <charconv>

#include <fmt/format.h>

#include "json.hpp"
#include "mod2betti/errors.hpp"

namespace mod2betti {

Format parse_format(const std::string& s) {
  if (s == "markdown" || s == "md") return Format::markdown;
  if (s == "csv") return Format::csv;
  if (s == "json") return Format::json;
  throw ParseError("unknown format \"" + s + "\" (expected markdown, csv or json)");
}

namespace {

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

nlohmann::json json_cell(const std::string& s) {
  long long v = 0;
  const char* end = s.data() + s.size();
  const auto [p, ec] = std::from_chars(s.data(), end, v);
  if (!s.empty() && ec == std::errc() && p == end) return v;
  return s;
}

std::string markdown(const Table& t) {
  std::string out;
  if (!t.title.empty()) out += "## " + t.title + "\n\n";
  std::vector<std::size_t> w(t.columns.size(), 3);
  for (std::size_t c = 0; c < t.columns.size(); ++c) w[c] = std::max(w[c], t.columns[c].size());
  for (const auto& row : t.rows)
    for (std::size_t c = 0; c < row.size() && c < w.size(); ++c) w[c] = std::max(w[c], row[c].size());
  auto line = [&](const std::vector<std::string>& cells) {
    std::string s = "|";
    for (std::size_t c = 0; c < w.size(); ++c)
      s += fmt::format(" {:>{}} |", c < cells.size() ? cells[c] : "", w[c]);
    return s + "\n";
  };
  out += line(t.columns);
  out += "|";
  for (auto n : w) out += std::string(n + 1, '-') + ":|";
  out += "\n";
  for (const auto& row : t.rows) out += line(row);
  for (const auto& n : t.notes) out += "\n" + n + "\n";
  return out;
}

std::string csv(const Table& t) {
  std::string out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t c = 0; c < t.columns.size(); ++c) {
      if (c) out += ',';
      if (c < cells.size()) out += csv_cell(cells[c]);
    }
    out += '\n';
  };
  line(t.columns);
  for (const auto& row : t.rows) line(row);
  return out;
}

nlohmann::json json_table(const Table& t) {
  nlohmann::json j;
  j["title"] = t.title;
  j["columns"] = t.columns;
  j["rows"] = nlohmann::json::array();
  for (const auto& row : t.rows) {
    nlohmann::json r = nlohmann::json::array();
    for (const auto& c : row) r.push_back(json_cell(c));
    j["rows"].push_back(std::move(r));
  }
  j["notes"] = t.notes;
  return j;
}

}  // namespace

std::string render(const std::vector<Table>& tables, Format f) {
  std::string out;
  switch (f) {
    case Format::markdown:
      for (std::size_t i = 0; i < tables.size(); ++i) out += (i ? "\n" : "") + markdown(tables[i]);
      return out;
    case Format::csv:
      for (std::size_t i = 0; i < tables.size(); ++i) {
        if (i) out += '\n';
        if (tables.size() > 1) out += "# " + tables[i].title + "\n";
        out += csv(tables[i]);
      }
      return out;
    case Format::json: {
      if (tables.size() == 1) return json_table(tables.front()).dump(2) + "\n";
      nlohmann::json arr = nlohmann::json::array();
      for (const auto& t : tables) arr.push_back(json_table(t));
      return arr.dump(2) + "\n";
    }
  }
  return out;
}

Table betti_rows(const BettiTable& t, const std::string& title) {
  Table out{title, {"degree", "betti"}, {}, {}};
  for (std::size_t r = 0; r < t.size(); ++r) out.rows.push_back({std::to_string(r), t.values()[r].str()});
  return out;
}

Table half_column_table(int max_genus, Field f, bool full) {
  if (max_genus < 1) throw ValidationError("max genus must be >= 1");
  Table out;
  out.title = fmt::format("{} Betti numbers of the framed moduli space", f == Field::F2 ? "Z/2" : "Q");
  out.columns.push_back("r");
  std::vector<BettiTable> cols;
  for (int g = 1; g <= max_genus; ++g) {
    out.columns.push_back(fmt::format("g={}", g));
    cols.push_back(f == Field::F2 ? mod2_table(g) : rational_table(g));
  }
  const long depth = full ? 6L * max_genus - 3 : 3L * max_genus - 2;
  for (long r = 0; r <= depth; ++r) {
    std::vector<std::string> row{std::to_string(r)};
    for (int g = 1; g <= max_genus; ++g) {
      const long last = full ? 6L * g - 3 : 3L * g - 2;
      row.push_back(r <= last ? cols[static_cast<std::size_t>(g - 1)].at(r).str() : "");
    }
    out.rows.push_back(std::move(row));
  }
  if (!full) out.notes.push_back("Half columns; the rest follow from Poincare duality h_r = h_{6g-3-r}.");
  return out;
}

}  // namespace mod2betti
