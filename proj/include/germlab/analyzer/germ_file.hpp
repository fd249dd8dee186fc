#pragma once

#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "germlab/germ/map_germ.hpp"

namespace germlab {

/// Input file error with a 1-based line and column.
class GermFileError : public StructuralError {
 public:
  GermFileError(const std::string& where, std::size_t line, std::size_t col, const std::string& msg)
      : StructuralError(where + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + msg),
        line_(line),
        col_(col) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return col_; }

 private:
  std::size_t line_, col_;
};

/// Contents of a germ or function file.
struct GermInput {
  std::string path;
  std::optional<MapGerm> germ;
  /// Number of trailing parameters when the file declares params.
  std::size_t params = 0;
  bool is_unfolding = false;
  std::optional<Polynomial> function;
  std::map<std::string, std::string> notes;

  Unfolding unfolding() const { return Unfolding(*germ, params); }
};

namespace detail {

struct FileValue {
  bool is_list = false;
  std::vector<std::string> items;
  std::vector<std::pair<std::size_t, std::size_t>> pos;  // line, column of each item's text
  std::size_t line = 0, col = 0;
};

class GermFileLexer {
 public:
  GermFileLexer(std::string text, std::string where) : s_(std::move(text)), where_(std::move(where)) {}

  std::map<std::string, FileValue> run() {
    std::map<std::string, FileValue> out;
    while (true) {
      skip_space(true);
      if (at_end()) break;
      auto [kl, kc] = here();
      std::string key = identifier();
      if (key.empty()) fail("expected a key");
      skip_space(false);
      expect('=');
      skip_space(false);
      FileValue v = value();
      if (out.count(key)) fail_at(kl, kc, "duplicate key '" + key + "'");
      out[key] = std::move(v);
      skip_space(false);
      if (!at_end() && peek() != '\n') fail("expected end of line");
    }
    return out;
  }

  [[noreturn]] void fail_at(std::size_t l, std::size_t c, const std::string& msg) const {
    throw GermFileError(where_, l, c, msg);
  }

 private:
  bool at_end() const { return i_ >= s_.size(); }
  char peek() const { return s_[i_]; }
  std::pair<std::size_t, std::size_t> here() const { return {line_, col_}; }
  [[noreturn]] void fail(const std::string& msg) const { fail_at(line_, col_, msg); }

  void advance() {
    if (s_[i_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++i_;
  }

  void skip_space(bool newlines) {
    while (!at_end()) {
      char c = peek();
      if (c == '#') {
        while (!at_end() && peek() != '\n') advance();
      } else if (c == ' ' || c == '\t' || c == '\r' || (newlines && c == '\n')) {
        advance();
      } else {
        break;
      }
    }
  }

  void expect(char c) {
    if (at_end() || peek() != c) fail(std::string("expected '") + c + "'");
    advance();
  }

  std::string identifier() {
    std::string id;
    while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) {
      id += peek();
      advance();
    }
    return id;
  }

  std::string quoted() {
    expect('"');
    std::string t;
    while (!at_end() && peek() != '"') {
      if (peek() == '\n') fail("unterminated string");
      t += peek();
      advance();
    }
    expect('"');
    return t;
  }

  std::string item(std::size_t& l, std::size_t& c) {
    std::tie(l, c) = here();
    if (!at_end() && peek() == '"') {
      ++c;
      return quoted();
    }
    std::string id = identifier();
    if (id.empty()) fail("expected a name or a quoted string");
    return id;
  }

  FileValue value() {
    FileValue v;
    std::tie(v.line, v.col) = here();
    if (!at_end() && peek() == '[') {
      v.is_list = true;
      advance();
      skip_space(true);
      if (!at_end() && peek() == ']') {
        advance();
        return v;
      }
      while (true) {
        skip_space(true);
        std::size_t l, c;
        v.items.push_back(item(l, c));
        v.pos.push_back({l, c});
        skip_space(true);
        if (at_end()) fail("unterminated list");
        if (peek() == ',') {
          advance();
          continue;
        }
        expect(']');
        break;
      }
      return v;
    }
    std::size_t l, c;
    v.items.push_back(item(l, c));
    v.pos.push_back({l, c});
    return v;
  }

  std::string s_, where_;
  std::size_t i_ = 0, line_ = 1, col_ = 1;
};

}  // namespace detail

/// Germ file: source, target, components and optional params; or a function
/// file: vars and function. Any other key must be note_<name> = "text".
inline GermInput parse_germ_text(const std::string& text, const std::string& where = "<input>") {
  detail::GermFileLexer lex(text, where);
  auto kv = lex.run();
  GermInput in;
  in.path = where;
  auto need_list = [&](const std::string& k) -> const detail::FileValue& {
    auto it = kv.find(k);
    if (it == kv.end()) throw GermFileError(where, 1, 1, "missing key '" + k + "'");
    if (!it->second.is_list) lex.fail_at(it->second.line, it->second.col, "'" + k + "' must be a list");
    return it->second;
  };
  auto poly_at = [&](const detail::FileValue& v, std::size_t i, const VarsPtr& vars) {
    try {
      return parse_polynomial(v.items[i], vars);
    } catch (const ParseError& e) {
      lex.fail_at(v.pos[i].first, v.pos[i].second + e.column() - 1, e.bare_message());
    } catch (const StructuralError& e) {
      lex.fail_at(v.pos[i].first, v.pos[i].second, e.what());
    }
  };
  for (const auto& [k, v] : kv) {
    static const char* known[] = {"source", "target", "components", "params", "vars", "function"};
    bool ok = std::find(std::begin(known), std::end(known), k) != std::end(known);
    if (k.rfind("note_", 0) == 0) {
      if (v.is_list) lex.fail_at(v.line, v.col, "notes are single strings");
      in.notes[k.substr(5)] = v.items[0];
      ok = true;
    }
    if (!ok) lex.fail_at(v.line, v.col, "unknown key '" + k + "'");
  }
  if (kv.count("function")) {
    if (kv.count("source") || kv.count("components")) throw GermFileError(where, 1, 1, "file mixes a function and a germ");
    const auto& vars = need_list("vars");
    auto V = make_vars(vars.items);
    const auto& f = kv.at("function");
    if (f.is_list) lex.fail_at(f.line, f.col, "'function' must be a single string");
    Polynomial g = poly_at(f, 0, V);
    if (sgn(g.constant_term()) != 0) lex.fail_at(f.pos[0].first, f.pos[0].second, "function must vanish at the origin");
    in.function = g;
    return in;
  }
  const auto& src = need_list("source");
  const auto& tgt = need_list("target");
  const auto& cmp = need_list("components");
  if (cmp.items.size() != tgt.items.size())
    lex.fail_at(cmp.line, cmp.col,
                "expected " + std::to_string(tgt.items.size()) + " components, found " + std::to_string(cmp.items.size()));
  VarsPtr S, T;
  try {
    S = make_vars(src.items);
  } catch (const StructuralError& e) {
    lex.fail_at(src.line, src.col, e.what());
  }
  try {
    T = make_vars(tgt.items);
  } catch (const StructuralError& e) {
    lex.fail_at(tgt.line, tgt.col, e.what());
  }
  for (std::size_t i = 0; i < tgt.items.size(); ++i)
    if (S->find(tgt.items[i])) lex.fail_at(tgt.pos[i].first, tgt.pos[i].second, "variable '" + tgt.items[i] + "' used in both source and target");
  PolyVector comps;
  for (std::size_t j = 0; j < cmp.items.size(); ++j) {
    Polynomial c = poly_at(cmp, j, S);
    if (sgn(c.constant_term()) != 0) lex.fail_at(cmp.pos[j].first, cmp.pos[j].second, "germ must fix origin");
    comps.push_back(std::move(c));
  }
  in.germ = MapGerm(S, T, std::move(comps));
  if (auto it = kv.find("params"); it != kv.end()) {
    const auto& pv = it->second;
    if (!pv.is_list) lex.fail_at(pv.line, pv.col, "'params' must be a list");
    std::size_t m = pv.items.size(), n = S->size(), p = T->size();
    if (m > n || m > p) lex.fail_at(pv.line, pv.col, "more parameters than coordinates");
    for (std::size_t k = 0; k < m; ++k)
      if (pv.items[k] != S->name(n - m + k))
        lex.fail_at(pv.pos[k].first, pv.pos[k].second, "parameters must be the last source variables, in order");
    try {
      Unfolding check(*in.germ, m);
    } catch (const StructuralError& e) {
      lex.fail_at(pv.line, pv.col, e.what());
    }
    in.params = m;
    in.is_unfolding = true;
  }
  return in;
}

inline GermInput parse_germ_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw GermFileError(path, 0, 0, "cannot open file");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_germ_text(ss.str(), path);
}

}  // namespace germlab
