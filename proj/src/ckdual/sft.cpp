#include "ckdual/sft.hpp"

#include <cctype>
#include <fstream>
#include <numeric>
#include <queue>
#include <sstream>

#include <json.hpp>

namespace ckdual {

const char* to_string(ErrorKind kind) {
  switch (kind) {
  case ErrorKind::NotSquare: return "NotSquare";
  case ErrorKind::NonBinaryEntry: return "NonBinaryEntry";
  case ErrorKind::ZeroRow: return "ZeroRow";
  case ErrorKind::ZeroColumn: return "ZeroColumn";
  case ErrorKind::ParseError: return "ParseError";
  case ErrorKind::LevelTooSmall: return "LevelTooSmall";
  case ErrorKind::SignatureMismatch: return "SignatureMismatch";
  case ErrorKind::UnsupportedGenerator: return "UnsupportedGenerator";
  case ErrorKind::BasisMismatch: return "BasisMismatch";
  case ErrorKind::InvalidArgument: return "InvalidArgument";
  case ErrorKind::Overflow: return "Overflow";
  }
  return "Unknown";
}

} // namespace ckdual

namespace ckdual::sft {

std::vector<std::vector<int>> ZeroOneMatrix::rows() const {
  std::vector<std::vector<int>> out(static_cast<std::size_t>(n_), std::vector<int>(static_cast<std::size_t>(n_)));
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) out[i][j] = at(i, j);
  return out;
}

ZeroOneMatrix validate_matrix(const std::vector<std::vector<long long>>& raw) {
  const auto n = raw.size();
  if (n == 0) throw Error(ErrorKind::NotSquare, "matrix is empty");
  for (std::size_t i = 0; i < n; ++i) {
    if (raw[i].size() != n)
      throw Error(ErrorKind::NotSquare, "row " + std::to_string(i + 1) + " has " + std::to_string(raw[i].size()) +
                                            " entries, expected " + std::to_string(n));
  }
  ZeroOneMatrix m;
  m.n_ = static_cast<int>(n);
  m.bits_.assign(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const long long v = raw[i][j];
      if (v != 0 && v != 1)
        throw Error(ErrorKind::NonBinaryEntry, "entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                                   ") = " + std::to_string(v) + " is not 0 or 1");
      m.bits_[i * n + j] = static_cast<std::uint8_t>(v);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    bool any = false;
    for (std::size_t j = 0; j < n; ++j) any = any || raw[i][j] != 0;
    if (!any) throw Error(ErrorKind::ZeroRow, "row " + std::to_string(i + 1) + " is all zeros", static_cast<int>(i + 1));
  }
  for (std::size_t j = 0; j < n; ++j) {
    bool any = false;
    for (std::size_t i = 0; i < n; ++i) any = any || raw[i][j] != 0;
    if (!any)
      throw Error(ErrorKind::ZeroColumn, "column " + std::to_string(j + 1) + " is all zeros", static_cast<int>(j + 1));
  }
  return m;
}

ZeroOneMatrix transpose(const ZeroOneMatrix& a) {
  const int n = a.size();
  std::vector<std::vector<long long>> raw(static_cast<std::size_t>(n), std::vector<long long>(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) raw[j][i] = a.at(i, j);
  return validate_matrix(raw);
}

namespace {

// BFS distances from vertex 0 along edges (or reversed edges).
std::vector<int> bfs_levels(const ZeroOneMatrix& a, bool reversed) {
  const int n = a.size();
  std::vector<int> level(static_cast<std::size_t>(n), -1);
  std::queue<int> queue;
  level[0] = 0;
  queue.push(0);
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop();
    for (int v = 0; v < n; ++v) {
      const bool edge = reversed ? a(v, u) : a(u, v);
      if (edge && level[v] < 0) {
        level[v] = level[u] + 1;
        queue.push(v);
      }
    }
  }
  return level;
}

} // namespace

bool is_irreducible(const ZeroOneMatrix& a) {
  for (bool reversed : {false, true}) {
    const auto level = bfs_levels(a, reversed);
    for (int l : level)
      if (l < 0) return false;
  }
  return true;
}

bool is_aperiodic(const ZeroOneMatrix& a) {
  if (!is_irreducible(a)) return false;
  // For a strongly connected graph the period is the gcd of
  // level(u) + 1 - level(v) over all edges u -> v.
  const auto level = bfs_levels(a, false);
  int period = 0;
  const int n = a.size();
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (a(u, v)) period = std::gcd(period, std::abs(level[u] + 1 - level[v]));
  return period == 1;
}

bool is_permutation_matrix(const ZeroOneMatrix& a) {
  const int n = a.size();
  for (int i = 0; i < n; ++i) {
    int ones = 0;
    for (int j = 0; j < n; ++j) ones += a.at(i, j);
    if (ones != 1) return false;
  }
  // validated matrices have no zero column, so one 1 per row forces a permutation
  return true;
}

bool satisfies_cantor_condition(const ZeroOneMatrix& a) {
  return is_irreducible(a) && !is_permutation_matrix(a);
}

bool is_admissible(const ZeroOneMatrix& a, const Word& w) {
  for (const Letter l : w)
    if (l < 0 || l >= a.size()) return false;
  for (std::size_t j = 1; j < w.size(); ++j)
    if (!a(w[j - 1], w[j])) return false;
  return true;
}

std::vector<Word> enumerate_words(const ZeroOneMatrix& a, int m) {
  if (m < 0) throw Error(ErrorKind::InvalidArgument, "word length must be nonnegative");
  std::vector<Word> layer{Word{}};
  for (int len = 0; len < m; ++len) {
    std::vector<Word> next;
    for (const auto& w : layer) {
      for (Letter k = 0; k < a.size(); ++k) {
        if (!w.empty() && !a(w.back(), k)) continue;
        Word ext = w;
        ext.push_back(k);
        next.push_back(std::move(ext));
      }
    }
    layer = std::move(next);
  }
  return layer;
}

mpz_class count_words(const ZeroOneMatrix& a, int m) {
  if (m < 0) throw Error(ErrorKind::InvalidArgument, "word length must be nonnegative");
  if (m == 0) return 1;
  const int n = a.size();
  // ends[j] = number of admissible words of the current length ending in j
  std::vector<mpz_class> ends(static_cast<std::size_t>(n), 1);
  for (int len = 1; len < m; ++len) {
    std::vector<mpz_class> next(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (a(i, j)) next[j] += ends[i];
    ends = std::move(next);
  }
  mpz_class total = 0;
  for (const auto& e : ends) total += e;
  return total;
}

std::string word_to_string(const Word& w, int n) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (n >= 10 && i > 0) out += ',';
    out += std::to_string(w[i] + 1);
  }
  return out;
}

std::vector<std::vector<long long>> parse_matrix_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::ParseError, std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("rows") || !doc["rows"].is_array())
    throw Error(ErrorKind::ParseError, "expected an object with a \"rows\" array");
  std::vector<std::vector<long long>> raw;
  for (const auto& row : doc["rows"]) {
    if (!row.is_array()) throw Error(ErrorKind::ParseError, "each row must be an array");
    std::vector<long long> r;
    for (const auto& v : row) {
      if (!v.is_number_integer()) throw Error(ErrorKind::ParseError, "matrix entries must be integers");
      r.push_back(v.get<long long>());
    }
    raw.push_back(std::move(r));
  }
  if (doc.contains("n")) {
    if (!doc["n"].is_number_integer()) throw Error(ErrorKind::ParseError, "\"n\" must be an integer");
    if (doc["n"].get<long long>() != static_cast<long long>(raw.size()))
      throw Error(ErrorKind::ParseError, "\"n\" does not match the number of rows");
  }
  for (const auto& [key, value] : doc.items()) {
    if (key != "n" && key != "rows") throw Error(ErrorKind::ParseError, "unexpected key \"" + key + "\"");
  }
  return raw;
}

std::vector<std::vector<long long>> parse_matrix_text(std::string_view text) {
  std::vector<std::vector<long long>> raw;
  std::istringstream lines{std::string(text)};
  std::string line;
  while (std::getline(lines, line)) {
    std::istringstream fields(line);
    std::vector<long long> row;
    std::string token;
    while (fields >> token) {
      std::size_t used = 0;
      long long v = 0;
      try {
        v = std::stoll(token, &used);
      } catch (const std::exception&) {
        throw Error(ErrorKind::ParseError, "not an integer: \"" + token + "\"");
      }
      if (used != token.size()) throw Error(ErrorKind::ParseError, "not an integer: \"" + token + "\"");
      row.push_back(v);
    }
    if (row.empty()) continue;
    raw.push_back(std::move(row));
  }
  if (raw.empty()) throw Error(ErrorKind::ParseError, "no matrix rows found");
  return raw;
}

ZeroOneMatrix parse_matrix(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) throw Error(ErrorKind::ParseError, "empty matrix file");
  if (text[first] == '{') return validate_matrix(parse_matrix_json(text));
  return validate_matrix(parse_matrix_text(text));
}

ZeroOneMatrix load_matrix_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open matrix file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_matrix(buf.str());
}

} // namespace ckdual::sft
