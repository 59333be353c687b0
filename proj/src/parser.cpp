#include "hopfcyc/system.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace hopfcyc {

namespace {

struct Token {
  enum Kind { kNumber, kName, kPunct, kEnd } kind = kEnd;
  std::string text;
  int column = 0;
};

class Lexer {
 public:
  Lexer(std::string_view text, int line, int column_offset) : line_(line) {
    std::size_t i = 0;
    while (i < text.size()) {
      unsigned char ch = static_cast<unsigned char>(text[i]);
      int col = column_offset + static_cast<int>(i) + 1;
      if (std::isspace(ch)) {
        ++i;
      } else if (std::isdigit(ch)) {
        std::size_t j = i;
        while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
        tokens_.push_back({Token::kNumber, std::string(text.substr(i, j - i)), col});
        i = j;
      } else if (std::isalpha(ch) || ch == '_') {
        std::size_t j = i;
        while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) ++j;
        tokens_.push_back({Token::kName, std::string(text.substr(i, j - i)), col});
        i = j;
      } else if (std::string_view("+-*/^()=;").find(static_cast<char>(ch)) != std::string_view::npos) {
        tokens_.push_back({Token::kPunct, std::string(1, static_cast<char>(ch)), col});
        ++i;
      } else {
        throw ParseError(line, col, std::string("unexpected character '") + static_cast<char>(ch) + "'");
      }
    }
    tokens_.push_back({Token::kEnd, "", column_offset + static_cast<int>(text.size()) + 1});
  }

  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() { return tokens_[pos_++]; }
  bool accept(std::string_view punct) {
    if (peek().kind == Token::kPunct && peek().text == punct) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(std::string_view punct) {
    if (!accept(punct)) fail("expected '" + std::string(punct) + "'");
  }
  bool at_end() const { return peek().kind == Token::kEnd; }
  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = peek();
    std::string found = t.kind == Token::kEnd ? "end of line" : "'" + t.text + "'";
    throw ParseError(line_, t.column, msg + ", found " + found);
  }
  int line() const { return line_; }

 private:
  int line_;
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

int parse_small_int(Lexer& lex) {
  const Token& t = lex.peek();
  if (t.kind != Token::kNumber) lex.fail("expected an integer exponent");
  if (t.text.size() > 4) lex.fail("exponent too large");
  lex.next();
  return std::stoi(t.text);
}

// Rational literal: NUMBER ['/' NUMBER]. The current token must be a number.
Rational parse_literal(Lexer& lex) {
  Integer num(lex.next().text);
  if (lex.peek().kind == Token::kPunct && lex.peek().text == "/") {
    lex.next();
    if (lex.peek().kind != Token::kNumber) lex.fail("expected a positive integer denominator");
    Integer den(lex.next().text);
    if (den == 0) lex.fail("zero denominator");
    return make_rational(num, den);
  }
  return Rational(num);
}

// polyexpr over x,y,z with coefficients that are products of rational
// literals and declared names.
TriPoly<MPoly> parse_polyexpr(Lexer& lex, const std::vector<std::string>& names, const std::string& role) {
  TriPoly<MPoly> out;
  const std::size_t n = names.size();
  if (lex.at_end()) return out;
  bool first = true;
  while (true) {
    int sign = 1;
    if (lex.accept("-")) {
      sign = -1;
    } else if (lex.accept("+")) {
    } else if (!first) {
      break;
    }
    first = false;
    MPoly coeff(n, Rational(sign));
    Exp3 mono{0, 0, 0};
    bool any = false;
    do {
      const Token& t = lex.peek();
      if (t.kind == Token::kNumber) {
        coeff *= parse_literal(lex);
      } else if (t.kind == Token::kName) {
        std::string name = lex.next().text;
        int exponent = 1;
        if (lex.accept("^")) exponent = parse_small_int(lex);
        if (name == "x" || name == "y" || name == "z") {
          mono[static_cast<std::size_t>(name[0] - 'x')] += exponent;
        } else {
          auto it = std::find(names.begin(), names.end(), name);
          if (it == names.end())
            throw ParseError(lex.line(), t.column, "undeclared " + role + " '" + name + "'");
          coeff = coeff * MPoly::variable(n, static_cast<std::size_t>(it - names.begin())).pow(exponent);
        }
      } else {
        lex.fail("expected a coefficient, a name or a variable");
      }
      any = true;
    } while (lex.accept("*"));
    if (any) out.add_term(mono, coeff);
    if (lex.at_end()) break;
    const Token& t = lex.peek();
    if (t.kind != Token::kPunct || (t.text != "+" && t.text != "-")) lex.fail("expected '+' or '-'");
  }
  if (!lex.at_end()) lex.fail("unexpected trailing input");
  return out;
}

class ExprParser {
 public:
  ExprParser(Lexer& lex, const std::vector<std::string>& names) : lex_(lex), names_(names) {}

  Expr expr() {
    Expr lhs = term();
    while (true) {
      if (lex_.accept("+"))
        lhs = Expr::binary(Expr::Kind::kAdd, lhs, term());
      else if (lex_.accept("-"))
        lhs = Expr::binary(Expr::Kind::kSub, lhs, term());
      else
        return lhs;
    }
  }

 private:
  Expr term() {
    Expr lhs = unary();
    while (true) {
      if (lex_.accept("*"))
        lhs = Expr::binary(Expr::Kind::kMul, lhs, unary());
      else if (lex_.accept("/"))
        lhs = Expr::binary(Expr::Kind::kDiv, lhs, unary());
      else
        return lhs;
    }
  }

  Expr unary() {
    if (lex_.accept("-")) {
      Expr inner = unary();
      if (inner.kind() == Expr::Kind::kNumber) return Expr::number(-inner.evaluate([](const std::string&) {
        return std::optional<Rational>();
      }));
      return Expr::negate(inner);
    }
    if (lex_.accept("+")) return unary();
    return power();
  }

  Expr power() {
    Expr base = primary();
    if (lex_.accept("^")) return Expr::power(base, parse_small_int(lex_));
    return base;
  }

  Expr primary() {
    const Token& t = lex_.peek();
    if (t.kind == Token::kNumber) return Expr::number(parse_literal(lex_));
    if (t.kind == Token::kName) {
      if (std::find(names_.begin(), names_.end(), t.text) == names_.end())
        throw ParseError(lex_.line(), t.column, "undeclared coefficient '" + t.text + "'");
      return Expr::name(lex_.next().text);
    }
    if (lex_.accept("(")) {
      Expr e = expr();
      lex_.expect(")");
      return e;
    }
    lex_.fail("expected an expression");
  }

  Lexer& lex_;
  const std::vector<std::string>& names_;
};

std::vector<Equation> parse_conditions(Lexer& lex, const std::vector<std::string>& names) {
  std::vector<Equation> out;
  ExprParser p(lex, names);
  do {
    if (lex.at_end()) break;
    Expr lhs = p.expr();
    lex.expect("=");
    Expr rhs = p.expr();
    out.push_back({lhs, rhs});
  } while (lex.accept(";"));
  if (!lex.at_end()) lex.fail("expected ';' or end of line");
  return out;
}

std::vector<std::string> parse_name_list(std::string_view text, int line, int col) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    std::string_view item = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    std::size_t b = item.find_first_not_of(" \t\r");
    std::size_t e = item.find_last_not_of(" \t\r");
    int item_col = col + static_cast<int>(start) + 1;
    if (b == std::string_view::npos) {
      if (comma == std::string_view::npos && out.empty()) break;
      throw ParseError(line, item_col, "empty name in list");
    }
    std::string name(item.substr(b, e - b + 1));
    bool ok = std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_';
    for (char ch : name) ok = ok && (std::isalnum(static_cast<unsigned char>(ch)) || ch == '_');
    if (!ok) throw ParseError(line, item_col + static_cast<int>(b), "invalid name '" + name + "'");
    if (name == "x" || name == "y" || name == "z")
      throw ParseError(line, item_col + static_cast<int>(b), "'" + name + "' is reserved for a state variable");
    if (std::find(out.begin(), out.end(), name) != out.end())
      throw ParseError(line, item_col + static_cast<int>(b), "duplicate name '" + name + "'");
    out.push_back(name);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

struct RawLine {
  std::string key;
  std::string value;
  int line = 0;
  int value_column = 0;  // 0-based column where value starts
  int key_column = 0;
};

std::string trim(std::string_view s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  std::size_t e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys{"id", "source", "lambda", "coeffs", "params", "trace", "P", "Q", "R", "G1",
                                          "G2", "G3", "condition", "expected_rank", "focal_count"};
  return keys;
}

int parse_int_value(const RawLine& r) {
  std::string v = trim(r.value);
  if (v.empty() || !std::all_of(v.begin(), v.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }) ||
      v.size() > 6)
    throw ParseError(r.line, r.value_column + 1, "expected a non-negative integer");
  return std::stoi(v);
}

}  // namespace

SystemDocument parse_document(std::string_view text) {
  std::vector<RawLine> raw;
  std::map<std::string, int> seen;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    std::size_t b = line.find_first_not_of(" \t\r");
    if (b != std::string_view::npos) {
      std::size_t eq = line.find('=');
      if (eq == std::string_view::npos) throw ParseError(line_no, static_cast<int>(b) + 1, "expected 'key = value'");
      std::string key = trim(line.substr(0, eq));
      if (!known_keys().count(key)) throw ParseError(line_no, static_cast<int>(b) + 1, "unknown key '" + key + "'");
      if (key != "condition") {
        if (seen.count(key))
          throw ParseError(line_no, static_cast<int>(b) + 1,
                           "duplicate key '" + key + "' (first on line " + std::to_string(seen[key]) + ")");
        seen[key] = line_no;
      }
      raw.push_back({key, std::string(line.substr(eq + 1)), line_no, static_cast<int>(eq + 1), static_cast<int>(b)});
    }
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }

  SystemDocument doc;
  for (const auto& r : raw) {
    if (r.key == "id") {
      doc.id = trim(r.value);
    } else if (r.key == "source") {
      doc.source = trim(r.value);
    } else if (r.key == "lambda") {
      Lexer lex(r.value, r.line, r.value_column);
      bool negative = lex.accept("-");
      if (!negative) lex.accept("+");
      if (lex.peek().kind != Token::kNumber) lex.fail("expected a rational");
      Rational v = parse_literal(lex);
      if (!lex.at_end()) lex.fail("unexpected trailing input");
      doc.lambda = negative ? Rational(-v) : v;
    } else if (r.key == "coeffs") {
      doc.coeffs = parse_name_list(r.value, r.line, r.value_column);
    } else if (r.key == "params") {
      doc.params = parse_name_list(r.value, r.line, r.value_column);
    } else if (r.key == "trace") {
      std::string v = trim(r.value);
      if (v == "true" || v == "on")
        doc.trace = true;
      else if (v == "false" || v == "off")
        doc.trace = false;
      else
        throw ParseError(r.line, r.value_column + 1, "expected true or false");
    } else if (r.key == "expected_rank") {
      doc.expected_rank = parse_int_value(r);
    } else if (r.key == "focal_count") {
      doc.focal_count = parse_int_value(r);
    }
  }
  for (const auto& c : doc.coeffs)
    if (std::find(doc.params.begin(), doc.params.end(), c) != doc.params.end())
      throw ValidationError("name '" + c + "' declared both as coefficient and as parameter");

  for (const auto& r : raw) {
    if (r.key != "P" && r.key != "Q" && r.key != "R" && r.key != "G1" && r.key != "G2" && r.key != "G3" &&
        r.key != "condition")
      continue;
    Lexer lex(r.value, r.line, r.value_column);
    if (r.key == "P" || r.key == "Q" || r.key == "R") {
      int i = r.key == "P" ? 0 : (r.key == "Q" ? 1 : 2);
      doc.field[static_cast<std::size_t>(i)] = parse_polyexpr(lex, doc.coeffs, "coefficient");
    } else if (r.key == "G1" || r.key == "G2" || r.key == "G3") {
      int i = r.key[1] - '1';
      doc.pert[static_cast<std::size_t>(i)] = parse_polyexpr(lex, doc.params, "parameter");
    } else if (r.key == "condition") {
      auto eqs = parse_conditions(lex, doc.coeffs);
      doc.conditions.insert(doc.conditions.end(), eqs.begin(), eqs.end());
    }
  }

  if (sgn(doc.lambda) == 0) throw ValidationError("lambda must be nonzero");
  static const char* kFieldNames[3] = {"P", "Q", "R"};
  static const char* kPertNames[3] = {"G1", "G2", "G3"};
  for (int i = 0; i < 3; ++i) {
    for (const auto& [e, c] : doc.field[static_cast<std::size_t>(i)].terms())
      if (total_degree(e) < 2)
        throw ValidationError(std::string(kFieldNames[i]) + " has a constant or linear term '" +
                              (monomial_string(e).empty() ? "1" : monomial_string(e)) + "'");
    for (const auto& [e, c] : doc.pert[static_cast<std::size_t>(i)].terms())
      if (total_degree(e) < 2)
        throw ValidationError(std::string(kPertNames[i]) + " has a constant or linear term '" +
                              (monomial_string(e).empty() ? "1" : monomial_string(e)) + "'");
  }
  return doc;
}

SystemDocument load_document(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_document(buf.str());
}

namespace {

std::string print_poly(const TriPoly<MPoly>& p, const std::vector<std::string>& names) {
  if (p.is_zero()) return "0";
  std::string out;
  for (const auto& [e, c] : p.terms()) {
    std::string mono = monomial_string(e);
    for (auto it = c.terms().rbegin(); it != c.terms().rend(); ++it) {
      const auto& [ce, cv] = *it;
      std::string factor;
      for (std::size_t i = 0; i < ce.size(); ++i) {
        if (ce[i] == 0) continue;
        if (!factor.empty()) factor += '*';
        factor += names[i];
        if (ce[i] > 1) factor += '^' + std::to_string(ce[i]);
      }
      if (!mono.empty()) factor += (factor.empty() ? "" : "*") + mono;
      Rational mag = abs(cv);
      std::string term;
      if (factor.empty())
        term = to_string(mag);
      else if (mag == 1)
        term = factor;
      else
        term = to_string(mag) + "*" + factor;
      if (out.empty())
        out = (sgn(cv) < 0 ? "-" : "") + term;
      else
        out += (sgn(cv) < 0 ? " - " : " + ") + term;
    }
  }
  return out;
}

std::string join(const std::vector<std::string>& v) {
  std::string out;
  for (const auto& s : v) out += (out.empty() ? "" : ", ") + s;
  return out;
}

}  // namespace

std::string print_document(const SystemDocument& doc) {
  std::ostringstream out;
  if (!doc.id.empty()) out << "id = " << doc.id << '\n';
  if (!doc.source.empty()) out << "source = " << doc.source << '\n';
  out << "lambda = " << to_string(doc.lambda) << '\n';
  if (!doc.coeffs.empty()) out << "coeffs = " << join(doc.coeffs) << '\n';
  if (!doc.params.empty()) out << "params = " << join(doc.params) << '\n';
  if (doc.trace) out << "trace = true\n";
  static const char* kFieldNames[3] = {"P", "Q", "R"};
  static const char* kPertNames[3] = {"G1", "G2", "G3"};
  for (int i = 0; i < 3; ++i) out << kFieldNames[i] << " = " << print_poly(doc.field[static_cast<std::size_t>(i)], doc.coeffs) << '\n';
  for (int i = 0; i < 3; ++i) out << kPertNames[i] << " = " << print_poly(doc.pert[static_cast<std::size_t>(i)], doc.params) << '\n';
  for (const auto& eq : doc.conditions) out << "condition = " << eq.text() << '\n';
  if (doc.expected_rank) out << "expected_rank = " << *doc.expected_rank << '\n';
  if (doc.focal_count) out << "focal_count = " << *doc.focal_count << '\n';
  return out.str();
}

bool operator==(const SystemDocument& a, const SystemDocument& b) {
  if (a.id != b.id || a.source != b.source || a.lambda != b.lambda || a.coeffs != b.coeffs || a.params != b.params ||
      a.trace != b.trace || a.field != b.field || a.pert != b.pert || a.expected_rank != b.expected_rank ||
      a.focal_count != b.focal_count || a.conditions.size() != b.conditions.size())
    return false;
  for (std::size_t i = 0; i < a.conditions.size(); ++i)
    if (a.conditions[i].text() != b.conditions[i].text()) return false;
  return true;
}

}  // namespace hopfcyc
