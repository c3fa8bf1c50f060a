#pragma once

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <stdexcept>
#include <sstream>
#include <string>
#include <vector>

#include "soaxis/soaxis.hpp"

namespace fs = std::filesystem;

inline fs::path test_data(const std::string& name) { return fs::path(SOAXIS_TEST_DATA) / name; }
inline fs::path expected(const std::string& name) { return fs::path(SOAXIS_TEST_DATA) / "expected" / name; }

inline std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

inline std::vector<std::string> split_on(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

// key=value lines
inline std::map<std::string, std::string> read_kv(const fs::path& p) {
  std::map<std::string, std::string> kv;
  for (const auto& line : split_lines(slurp(p))) {
    auto eq = line.find('=');
    if (eq != std::string::npos) kv[line.substr(0, eq)] = line.substr(eq + 1);
  }
  return kv;
}

template <typename Fn>
soaxis::ErrorKind error_kind_of(Fn&& fn) {
  try {
    fn();
  } catch (const soaxis::Error& e) {
    return e.kind();
  }
  throw std::logic_error("expected soaxis::Error");
}

#define CHECK_ERROR_KIND(expr, k) CHECK(error_kind_of([&] { (void)(expr); }) == (k))

inline soaxis::TaggedDocument make_doc(const std::string& id, const std::vector<std::pair<std::string, std::string>>& toks,
                                       std::optional<soaxis::Polarity> label = std::nullopt) {
  soaxis::TaggedDocument d;
  d.id = id;
  d.label = label;
  for (const auto& [w, t] : toks) d.tokens.push_back({w, t});
  return d;
}

// Words with one shared tag, e.g. make_plain("d0", "a b c").
inline soaxis::TaggedDocument make_plain(const std::string& id, const std::string& text, const std::string& tag = "NN",
                                         std::optional<soaxis::Polarity> label = std::nullopt) {
  soaxis::TaggedDocument d;
  d.id = id;
  d.label = label;
  std::istringstream in(text);
  for (std::string w; in >> w;) d.tokens.push_back({w, tag});
  return d;
}
