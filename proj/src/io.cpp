#include "wseq/io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace wseq {

ParseError::ParseError(const std::string& source, SourcePos pos, const std::string& message)
    : DomainError(source + ":" + std::to_string(pos.line) + ":" + std::to_string(pos.column) + ": " + message),
      pos_(pos),
      message_(message) {}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

namespace {

struct Token {
  enum Kind { name, number, symbol, end } kind = end;
  std::string text;
  SourcePos pos;
};

bool name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool name_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

// Tokens of one line, comment stripped. "->" is one symbol.
std::vector<Token> tokenize(const std::string& line, int lineno, const std::string& source) {
  std::vector<Token> out;
  size_t i = 0;
  while (i < line.size()) {
    char c = line[i];
    if (c == '#') break;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    Token t;
    t.pos = {lineno, static_cast<int>(i) + 1};
    if (name_start(c)) {
      size_t j = i;
      while (j < line.size() && name_char(line[j])) ++j;
      t.kind = Token::name;
      t.text = line.substr(i, j - i);
      i = j;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i;
      while (j < line.size() && std::isdigit(static_cast<unsigned char>(line[j]))) ++j;
      t.kind = Token::number;
      t.text = line.substr(i, j - i);
      i = j;
    } else if (c == '-' && i + 1 < line.size() && line[i + 1] == '>') {
      t.kind = Token::symbol;
      t.text = "->";
      i += 2;
    } else if (std::string("=+-*^").find(c) != std::string::npos) {
      t.kind = Token::symbol;
      t.text = std::string(1, c);
      ++i;
    } else {
      throw ParseError(source, t.pos, std::string("unexpected character '") + c + "'");
    }
    out.push_back(t);
  }
  Token e;
  e.pos = {lineno, static_cast<int>(line.size()) + 1};
  out.push_back(e);
  return out;
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

class Cursor {
 public:
  Cursor(std::vector<Token> toks, const std::string& source) : toks_(std::move(toks)), source_(source) {}
  const Token& peek() const { return toks_[i_]; }
  Token next() { return toks_[i_ == toks_.size() - 1 ? i_ : i_++]; }
  bool at_end() const { return peek().kind == Token::end; }
  bool accept(const std::string& sym) {
    if (peek().kind == Token::symbol && peek().text == sym) {
      ++i_;
      return true;
    }
    return false;
  }
  Token expect(Token::Kind kind, const std::string& what) {
    if (peek().kind != kind) fail(peek(), "expected " + what);
    return next();
  }
  void expect_symbol(const std::string& sym) {
    if (!accept(sym)) fail(peek(), "expected '" + sym + "'");
  }
  void expect_end() {
    if (!at_end()) fail(peek(), "unexpected '" + peek().text + "'");
  }
  [[noreturn]] void fail(const Token& t, const std::string& msg) const { throw ParseError(source_, t.pos, msg); }
  int integer(const Token& t) const {
    try {
      return std::stoi(t.text);
    } catch (const std::exception&) {
      fail(t, "integer out of range");
    }
  }
  /// Rest of the line as raw text, starting at the current token.
  std::string rest(const std::string& line) const {
    if (at_end()) return "";
    std::string s = line.substr(static_cast<size_t>(peek().pos.column - 1));
    auto hash = s.find('#');
    return hash == std::string::npos ? s : s.substr(0, hash);
  }

 private:
  std::vector<Token> toks_;
  size_t i_ = 0;
  const std::string& source_;
};

AbGroup parse_group_at(Cursor& c, const std::string& line, const std::string& source) {
  const Token start = c.peek();
  if (c.at_end()) c.fail(start, "expected a group");
  try {
    return AbGroup::parse(c.rest(line));
  } catch (const DomainError& e) {
    throw ParseError(source, start.pos, e.what());
  }
}

}  // namespace

DgaDocument parse_dga(const std::string& text, const std::string& source) {
  DgaDocument doc;
  std::vector<std::pair<Token, Cursor>> diffs;
  const auto lines = split_lines(text);
  for (size_t ln = 0; ln < lines.size(); ++ln) {
    Cursor c(tokenize(lines[ln], static_cast<int>(ln) + 1, source), source);
    if (c.at_end()) continue;
    Token kw = c.expect(Token::name, "'generator' or 'd'");
    if (kw.text == "generator") {
      Token name = c.expect(Token::name, "generator name");
      Token deg = c.expect(Token::number, "degree");
      c.expect_end();
      for (const auto& g : doc.generators)
        if (g.name == name.text) c.fail(name, "generator '" + name.text + "' declared twice");
      const int degree = c.integer(deg);
      if (degree < 1) c.fail(deg, "degree must be at least 1");
      doc.generators.push_back({name.text, degree, name.pos});
    } else if (kw.text == "d") {
      diffs.emplace_back(kw, std::move(c));
    } else {
      c.fail(kw, "unknown statement '" + kw.text + "'");
    }
  }
  for (const auto& g : doc.generators) doc.dga.add_generator(g.name, g.degree);

  std::map<std::string, SourcePos> assigned;
  for (auto& [kw, c] : diffs) {
    Token name = c.expect(Token::name, "generator name");
    auto target = doc.dga.find(name.text);
    if (!target) c.fail(name, "unknown generator '" + name.text + "'");
    if (assigned.count(name.text)) c.fail(name, "differential of '" + name.text + "' assigned twice");
    assigned[name.text] = name.pos;
    c.expect_symbol("=");
    const int want = doc.dga.generator(*target).degree - 1;

    AlgElement value;
    bool first = true;
    while (true) {
      int sign = 1;
      if (c.accept("-"))
        sign = -1;
      else if (!first && !c.accept("+"))
        break;
      else if (first)
        c.accept("+");
      first = false;
      const Token start = c.peek();
      Integer coef = 1;
      bool has_coef = false;
      if (start.kind == Token::number) {
        coef = Integer(c.next().text);
        has_coef = true;
        c.accept("*");
      }
      Word w;
      if (c.peek().kind == Token::name) {
        while (true) {
          Token g = c.expect(Token::name, "generator name");
          auto idx = doc.dga.find(g.text);
          if (!idx) c.fail(g, "unknown generator '" + g.text + "'");
          w.push_back(*idx);
          if (!c.accept("*")) break;
        }
      } else if (!has_coef) {
        c.fail(start, "expected a term");
      } else if (coef != 0) {
        c.fail(start, "a constant has degree 0 and cannot be a differential");
      }
      if (w.empty()) continue;
      if (doc.dga.degree(w) != want)
        c.fail(start, "term '" + doc.dga.word_str(w) + "' has degree " + std::to_string(doc.dga.degree(w)) +
                          ", expected " + std::to_string(want));
      value.add(w, sign * coef);
    }
    c.expect_end();
    doc.dga.set_diff(*target, value);
    doc.differentials.push_back({name.text, value, name.pos});
  }
  if (auto v = doc.dga.validate(); !v.ok) throw ParseError(source, {1, 1}, "invalid DGA: " + v.message);
  return doc;
}

DgaDocument load_dga(const std::string& path) { return parse_dga(read_file(path), path); }

std::string render_dga(const FreeDGA& d, const std::string& header) {
  std::ostringstream os;
  if (!header.empty()) {
    std::istringstream in(header);
    std::string line;
    while (std::getline(in, line)) os << "# " << line << '\n';
  }
  for (const auto& g : d.generators()) os << "generator " << g.name << ' ' << g.degree << '\n';
  for (int g = 0; g < d.num_generators(); ++g)
    if (!d.diff(g).is_zero()) os << "d " << d.generator(g).name << " = " << d.element_str(d.diff(g)) << '\n';
  return os.str();
}

GradedGroup parse_hgr(const std::string& text, const std::string& source) {
  GradedGroup h;
  const auto lines = split_lines(text);
  for (size_t ln = 0; ln < lines.size(); ++ln) {
    Cursor c(tokenize(lines[ln], static_cast<int>(ln) + 1, source), source);
    if (c.at_end()) continue;
    Token kw = c.expect(Token::name, "'H'");
    if (kw.text != "H") c.fail(kw, "expected 'H'");
    Token deg = c.expect(Token::number, "degree");
    c.expect_symbol("=");
    const int n = c.integer(deg);
    if (h.count(n)) c.fail(deg, "H_" + deg.text + " given twice");
    AbGroup g = parse_group_at(c, lines[ln], source);
    if (!g.is_trivial()) h[n] = g;
  }
  return h;
}

GradedGroup load_hgr(const std::string& path) { return parse_hgr(read_file(path), path); }

std::string render_hgr(const GradedGroup& h) {
  std::ostringstream os;
  for (const auto& [n, g] : h) os << "H " << n << " = " << g.str() << '\n';
  return os.str();
}

GammaTable parse_gamma_table(const std::string& text, const std::string& source) {
  GammaTable table;
  const auto lines = split_lines(text);
  for (size_t ln = 0; ln < lines.size(); ++ln) {
    Cursor c(tokenize(lines[ln], static_cast<int>(ln) + 1, source), source);
    if (c.at_end()) continue;
    Token kw = c.expect(Token::name, "'gamma'");
    if (kw.text != "gamma") c.fail(kw, "expected 'gamma'");
    GammaTable::Rule rule;
    Token deg = c.expect(Token::number, "degree");
    rule.degree = c.integer(deg);
    if (c.peek().kind == Token::name && c.peek().text == "if") {
      c.next();
      Token b = c.expect(Token::name, "b<m>");
      if (b.text.size() < 2 || b.text[0] != 'b' ||
          b.text.find_first_not_of("0123456789", 1) != std::string::npos)
        c.fail(b, "expected b<m>");
      const int m = std::stoi(b.text.substr(1));
      c.expect_symbol("=");
      Token k = c.expect(Token::number, "value index");
      c.expect_symbol("->");
      rule.condition = std::make_pair(m, static_cast<Index>(c.integer(k)));
    } else {
      c.expect_symbol("=");
    }
    for (const auto& r : table.rules)
      if (r.degree == rule.degree && r.condition == rule.condition) c.fail(deg, "rule given twice");
    rule.group = parse_group_at(c, lines[ln], source);
    table.rules.push_back(rule);
  }
  return table;
}

GammaTable load_gamma_table(const std::string& path) { return parse_gamma_table(read_file(path), path); }

}  // namespace wseq
