#ifndef FORGE_IO_HPP
#define FORGE_IO_HPP

#include <cstdio>
#include <cstdlib>
#include <map>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "chern.hpp"
#include "resolution.hpp"

namespace forge {

namespace detail {

inline std::string strip(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

/// Non-empty, non-comment lines ('#' or '//' starts a comment line).
inline std::vector<std::string> content_lines(std::istream& in) {
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    line = strip(line);
    if (line.empty() || line[0] == '#' || line.rfind("//", 0) == 0) continue;
    out.push_back(line);
  }
  return out;
}

inline Ring parse_ring_header(const std::string& line) {
  std::istringstream is(line);
  std::string kw;
  long long p = -1, n = -1;
  is >> kw >> p >> n;
  if (kw != "ring" || p <= 0 || n < 0) throw UsageError("expected header `ring p n`, got: " + line);
  if (n + 1 > kMaxVars) throw UsageError("at most 16 variables are supported");
  return Ring::projective(static_cast<std::uint32_t>(p), static_cast<int>(n));
}

inline std::vector<int> parse_ints(const std::string& rest) {
  std::istringstream is(rest);
  std::vector<int> v;
  int x;
  while (is >> x) v.push_back(x);
  if (!is.eof()) throw UsageError("malformed integer list: " + rest);
  return v;
}

inline std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(strip(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(strip(cur));
  return out;
}

inline std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  return in;
}

}  // namespace detail

/// Ideal file: header `ring p n`, then one generator per line.
inline Ideal read_ideal(std::istream& in) {
  auto lines = detail::content_lines(in);
  if (lines.empty()) throw UsageError("empty ideal file");
  Ring R = detail::parse_ring_header(lines[0]);
  std::vector<Polynomial> gens;
  for (std::size_t i = 1; i < lines.size(); ++i) gens.push_back(parse_polynomial(R, lines[i]));
  return Ideal(R, std::move(gens));
}

inline Ideal load_ideal(const std::string& path) {
  auto in = detail::open_in(path);
  return read_ideal(in);
}

inline void write_ideal(std::ostream& os, const Ring& R, const std::vector<Polynomial>& gens) {
  os << "ring " << R.field.characteristic() << ' ' << R.projective_dim() << '\n';
  for (auto& g : gens) os << g.to_string() << '\n';
}

/// Matrix file: header `ring p n`, optional `twists-rows ...` and
/// `twists-cols ...` lines, then one row per line with entries separated by commas.
inline GradedMatrix read_matrix(std::istream& in) {
  auto lines = detail::content_lines(in);
  if (lines.empty()) throw UsageError("empty matrix file");
  Ring R = detail::parse_ring_header(lines[0]);
  std::optional<std::vector<int>> rt, ct;
  std::vector<std::vector<Polynomial>> rows;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::string& l = lines[i];
    if (l.rfind("twists-rows", 0) == 0) {
      rt = detail::parse_ints(l.substr(11));
    } else if (l.rfind("twists-cols", 0) == 0) {
      ct = detail::parse_ints(l.substr(11));
    } else {
      std::vector<Polynomial> row;
      for (auto& e : detail::split_commas(l)) row.push_back(parse_polynomial(R, e));
      rows.push_back(std::move(row));
    }
  }
  return GradedMatrix::from_rows(R, rows, rt, ct);
}

inline GradedMatrix load_matrix(const std::string& path) {
  auto in = detail::open_in(path);
  return read_matrix(in);
}

inline void write_matrix(std::ostream& os, const GradedMatrix& M, bool header = true) {
  if (header)
    os << "ring " << M.ring().field.characteristic() << ' ' << M.ring().projective_dim() << '\n';
  os << "twists-rows";
  for (int t : M.row_twists()) os << ' ' << t;
  os << "\ntwists-cols";
  for (int t : M.col_twists()) os << ' ' << t;
  os << '\n';
  for (std::size_t i = 0; i < M.rows(); ++i) {
    for (std::size_t j = 0; j < M.cols(); ++j) os << (j ? ", " : "") << M(i, j).to_string();
    os << '\n';
  }
}

/// Betti text: rows `step twist rank` with twist = -degree.
inline BettiTable read_betti(std::istream& in) {
  BettiTable b;
  for (auto& l : detail::content_lines(in)) {
    auto v = detail::parse_ints(l);
    if (v.size() != 3) throw UsageError("betti row must be `step twist rank`: " + l);
    b.ranks[{v[0], -v[1]}] += v[2];
  }
  return b;
}

inline void write_resolution(std::ostream& os, const Resolution& res) {
  os << "ring " << res.ring.field.characteristic() << ' ' << res.ring.projective_dim() << '\n';
  os << "minimal " << (res.minimal ? 1 : 0) << '\n';
  for (std::size_t k = 0; k < res.maps.size(); ++k) {
    os << "# map " << k << '\n';
    write_matrix(os, res.maps[k], false);
  }
}

/// Session-style display of both Hilbert series.
inline std::string format_hilb(const HilbertReport& r) {
  std::ostringstream os;
  auto block = [&](const Series& s) {
    for (std::size_t k = 0; k < s.size(); ++k) {
      if (!s[k]) continue;
      char buf[64];
      std::snprintf(buf, sizeof buf, "//%10lld t^%zu\n", static_cast<long long>(s[k]), k);
      os << buf;
    }
  };
  block(r.first_series);
  os << '\n';
  block(r.second_series);
  os << "// codimension = " << r.codim << '\n';
  os << "// dimension   = " << r.dim << '\n';
  os << "// degree      = " << r.degree << '\n';
  return os.str();
}

inline nlohmann::json to_json(const HilbertReport& r) {
  return {{"first_series", r.first_series},
          {"second_series", r.second_series},
          {"dim", r.dim},
          {"codim", r.codim},
          {"degree", r.degree}};
}

inline HilbertReport hilbert_report_from_json(const nlohmann::json& j) {
  HilbertReport r;
  r.first_series = j.at("first_series").get<Series>();
  r.second_series = j.at("second_series").get<Series>();
  r.dim = j.at("dim").get<int>();
  r.codim = j.at("codim").get<int>();
  r.degree = j.at("degree").get<std::int64_t>();
  return r;
}

inline nlohmann::json to_json(const BettiTable& b) {
  nlohmann::json rows = nlohmann::json::array();
  for (auto& [k, v] : b.ranks) rows.push_back({k.first, -k.second, v});
  return rows;
}

inline BettiTable betti_from_json(const nlohmann::json& j) {
  BettiTable b;
  for (auto& row : j) b.ranks[{row.at(0).get<int>(), -row.at(1).get<int>()}] += row.at(2).get<int>();
  return b;
}

inline nlohmann::json to_json(const GorensteinCertificate& c) {
  return {{"codim", c.codim},
          {"projective_dimension", c.projective_dimension},
          {"cohen_macaulay", c.cohen_macaulay},
          {"last_rank", c.last_rank},
          {"symmetric_h", c.symmetric_h},
          {"gorenstein", c.gorenstein},
          {"h_vector", c.h_vector},
          {"betti", to_json(c.betti)}};
}

inline nlohmann::json to_json(const std::vector<Polynomial>& gens) {
  nlohmann::json a = nlohmann::json::array();
  for (auto& g : gens) a.push_back(g.to_string());
  return a;
}

/// Characteristic from FORGE_CHAR, else 32003.
inline std::uint32_t default_characteristic() {
  const char* env = std::getenv("FORGE_CHAR");
  if (!env || !*env) return 32003;
  char* end = nullptr;
  unsigned long v = std::strtoul(env, &end, 10);
  if (*end || v < 2 || v > 0xFFFFFFFFul) throw UsageError(std::string("FORGE_CHAR is not a valid characteristic: ") + env);
  return static_cast<std::uint32_t>(v);
}

/// Config file: `key = value` lines ('#' comments), or a JSON object.
inline std::map<std::string, std::string> read_config(std::istream& in) {
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  std::map<std::string, std::string> kv;
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    auto j = nlohmann::json::parse(text);
    for (auto& [k, v] : j.items()) {
      if (v.is_array()) {
        std::string joined;
        for (std::size_t i = 0; i < v.size(); ++i) joined += (i ? "," : "") + std::to_string(v[i].get<int>());
        kv[k] = joined;
      } else if (v.is_number_integer()) {
        kv[k] = std::to_string(v.get<long long>());
      } else {
        kv[k] = v.get<std::string>();
      }
    }
    return kv;
  }
  std::istringstream is(text);
  for (auto& l : detail::content_lines(is)) {
    auto eq = l.find('=');
    if (eq == std::string::npos) throw UsageError("config line without '=': " + l);
    kv[detail::strip(l.substr(0, eq))] = detail::strip(l.substr(eq + 1));
  }
  return kv;
}

namespace detail {

inline std::vector<int> int_list(const std::string& s) {
  std::vector<int> v;
  if (strip(s).empty()) return v;
  for (auto& part : split_commas(s)) {
    try {
      std::size_t pos = 0;
      v.push_back(std::stoi(part, &pos));
      if (pos != part.size()) throw UsageError("");
    } catch (...) {
      throw UsageError("malformed integer in list: " + s);
    }
  }
  return v;
}

inline const std::string& need(const std::map<std::string, std::string>& kv, const std::string& key) {
  auto it = kv.find(key);
  if (it == kv.end()) throw UsageError("config is missing key `" + key + "`");
  return it->second;
}

inline int one_int(const std::map<std::string, std::string>& kv, const std::string& key) {
  auto v = int_list(need(kv, key));
  if (v.size() != 1) throw UsageError("config key `" + key + "` needs a single integer");
  return v[0];
}

}  // namespace detail

inline TwistSpec twist_spec_from_config(const std::map<std::string, std::string>& kv) {
  TwistSpec t;
  t.a = detail::int_list(detail::need(kv, "a"));
  t.b = detail::int_list(detail::need(kv, "b"));
  if (kv.count("p")) t.p = detail::int_list(kv.at("p"));
  if (kv.count("n")) t.n = detail::one_int(kv, "n");
  t.validate();
  return t;
}

inline GenBRSpec genbr_spec_from_config(const std::map<std::string, std::string>& kv) {
  GenBRSpec g;
  g.e1 = detail::int_list(detail::need(kv, "e1"));
  g.e2 = detail::int_list(detail::need(kv, "e2"));
  g.d1 = detail::one_int(kv, "d1");
  g.d2 = detail::one_int(kv, "d2");
  g.d3 = detail::one_int(kv, "d3");
  g.l = detail::one_int(kv, "l");
  g.d = detail::one_int(kv, "d");
  if (kv.count("n")) g.n = detail::one_int(kv, "n");
  g.validate();
  return g;
}

inline nlohmann::json to_json(const ExpectedShape& s) { return to_json(s.betti()); }

}  // namespace forge

#endif  // FORGE_IO_HPP
