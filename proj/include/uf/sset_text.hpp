#pragma once

#include <cctype>
#include <string>
#include <utility>
#include <vector>

#include "sset.hpp"

namespace uf {

// Text form of stored simplicial sets and maps:
//
//   simplex <id> dim=<n> faces=<f0>,...,<fn>
//   send <src> -> <tgt>
//
// where simplex references are <id> or <id>!<j1>.<j2>... with a strictly
// decreasing degeneracy word.  Ids are dense and in cell order, vertices
// carry no faces field.  Printing is canonical; parsing accepts exactly what
// printing emits, plus blank lines and # comments.

inline std::string print_sset(const FinSSet& X) {
  std::string out;
  for (size_t c = 0; c < X.cells.size(); ++c) {
    const Simplex& s = X.cells[c];
    out += "simplex " + std::to_string(c) + " dim=" + std::to_string(s.dim);
    if (s.dim >= 1) {
      out += " faces=";
      for (size_t i = 0; i < s.faces.size(); ++i) out += (i ? "," : "") + encode_dsimp(s.faces[i]);
    }
    out += "\n";
  }
  return out;
}

inline std::string print_map(const SSetMap& f) {
  std::string out;
  for (size_t c = 0; c < f.asg.size(); ++c)
    out += "send " + std::to_string(c) + " -> " + encode_dsimp(f.asg[c]) + "\n";
  return out;
}

namespace detail {

struct LineLexer {
  const std::string& s;
  int line;
  size_t p = 0;

  [[noreturn]] void fail(size_t at, const std::string& what) const {
    throw ParseError(line, (int)at + 1, what);
  }
  void ws() {
    while (p < s.size() && (s[p] == ' ' || s[p] == '\t' || s[p] == '\r')) ++p;
  }
  bool done() {
    ws();
    return p >= s.size() || s[p] == '#';
  }
  std::string word() {
    ws();
    size_t q = p;
    while (q < s.size() && !std::isspace((unsigned char)s[q])) ++q;
    if (q == p) fail(p, "expected a token");
    std::string w = s.substr(p, q - p);
    p = q;
    return w;
  }
  void expect(const std::string& lit) {
    ws();
    size_t at = p;
    std::string w = word();
    if (w != lit) fail(at, "expected '" + lit + "', found '" + w + "'");
  }
  long integer() {
    ws();
    size_t at = p;
    std::string w = word();
    size_t q = 0;
    while (q < w.size() && std::isdigit((unsigned char)w[q])) ++q;
    if (q == 0 || q != w.size()) fail(at, "expected a number, found '" + w + "'");
    return std::stol(w);
  }
  // value of a key=value token whose key is known
  std::string keyed(const std::string& key) {
    ws();
    size_t at = p;
    std::string w = word();
    if (w.size() <= key.size() + 1 || w.compare(0, key.size(), key) != 0 || w[key.size()] != '=')
      fail(at, "expected '" + key + "=...', found '" + w + "'");
    return w.substr(key.size() + 1);
  }
  DSimp dsimp(const std::string& w, size_t at) const {
    auto digits = [&](const std::string& t) {
      if (t.empty()) fail(at, "malformed simplex reference '" + w + "'");
      for (char c : t)
        if (!std::isdigit((unsigned char)c)) fail(at, "malformed simplex reference '" + w + "'");
      return std::stoi(t);
    };
    auto bang = w.find('!');
    DSimp d{digits(w.substr(0, bang)), {}};
    if (bang != std::string::npos) {
      std::string rest = w.substr(bang + 1);
      size_t q = 0;
      while (q <= rest.size()) {
        auto dot = rest.find('.', q);
        if (dot == std::string::npos) dot = rest.size();
        d.word.push_back(digits(rest.substr(q, dot - q)));
        q = dot + 1;
      }
      for (size_t i = 0; i + 1 < d.word.size(); ++i)
        if (d.word[i] <= d.word[i + 1]) fail(at, "degeneracy word not strictly decreasing in '" + w + "'");
    }
    return d;
  }
};

template <typename F>
inline void for_lines(const std::string& text, F use) {
  int line = 0;
  size_t start = 0;
  while (start <= text.size()) {
    auto nl = text.find('\n', start);
    if (nl == std::string::npos) nl = text.size();
    ++line;
    std::string ln = text.substr(start, nl - start);
    use(ln, line);
    start = nl + 1;
    if (nl == text.size()) break;
  }
}

}  // namespace detail

inline FinSSet parse_sset(const std::string& text) {
  FinSSet X;
  detail::for_lines(text, [&](const std::string& ln, int line) {
    detail::LineLexer lx{ln, line};
    if (lx.done()) return;
    lx.expect("simplex");
    lx.ws();
    size_t idat = lx.p;
    long id = lx.integer();
    if (id != (long)X.cells.size())
      lx.fail(idat, "simplex ids must be dense and in order, expected " + std::to_string(X.cells.size()));
    lx.ws();
    size_t dimat = lx.p;
    std::string dv = lx.keyed("dim");
    for (char c : dv)
      if (!std::isdigit((unsigned char)c)) lx.fail(dimat, "expected a number, found '" + dv + "'");
    if (dv.empty()) lx.fail(dimat, "expected a number");
    Simplex s;
    s.dim = std::stoi(dv);
    if (s.dim >= 1) {
      lx.ws();
      size_t fat = lx.p;
      std::string fv = lx.keyed("faces");
      size_t q = 0;
      while (q <= fv.size()) {
        auto comma = fv.find(',', q);
        if (comma == std::string::npos) comma = fv.size();
        s.faces.push_back(lx.dsimp(fv.substr(q, comma - q), fat));
        q = comma + 1;
      }
      if ((int)s.faces.size() != s.dim + 1)
        lx.fail(fat, "expected " + std::to_string(s.dim + 1) + " faces, found " + std::to_string(s.faces.size()));
    }
    if (!lx.done()) lx.fail(lx.p, "unexpected trailing input");
    X.cells.push_back(std::move(s));
  });
  return X;
}

inline std::vector<std::pair<int, DSimp>> parse_sends(const std::string& text) {
  std::vector<std::pair<int, DSimp>> out;
  detail::for_lines(text, [&](const std::string& ln, int line) {
    detail::LineLexer lx{ln, line};
    if (lx.done()) return;
    lx.expect("send");
    lx.ws();
    size_t srcat = lx.p;
    long src = lx.integer();
    if (src != (long)out.size())
      lx.fail(srcat, "send sources must be dense and in order, expected " + std::to_string(out.size()));
    lx.expect("->");
    lx.ws();
    size_t at = lx.p;
    std::string w = lx.word();
    out.emplace_back((int)src, lx.dsimp(w, at));
    if (!lx.done()) lx.fail(lx.p, "unexpected trailing input");
  });
  return out;
}

}  // namespace uf
