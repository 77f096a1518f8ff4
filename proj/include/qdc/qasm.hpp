#pragma once

#include <cctype>
#include <charconv>
#include <cstdio>
#include <map>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "qdc/circuit.hpp"
#include "qdc/types.hpp"

namespace qdc {

namespace qasm_detail {

enum class TokKind { ident, number, string, symbol, arrow, eof };

struct Token {
  TokKind kind = TokKind::eof;
  std::string text;
  double value = 0.0;
  int line = 1;
  int col = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    skip_ws_and_comments();
    Token t;
    t.line = line_;
    t.col = col_;
    if (pos_ >= src_.size()) {
      t.kind = TokKind::eof;
      return t;
    }
    char c = src_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
        advance();
      t.kind = TokKind::ident;
      t.text = std::string(src_.substr(start, pos_ - start));
      return t;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t start = pos_;
      bool seen_dot = false, seen_exp = false;
      while (pos_ < src_.size()) {
        char d = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(d))) {
          advance();
        } else if (d == '.' && !seen_dot && !seen_exp) {
          seen_dot = true;
          advance();
        } else if ((d == 'e' || d == 'E') && !seen_exp) {
          seen_exp = true;
          advance();
          if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) advance();
        } else {
          break;
        }
      }
      t.kind = TokKind::number;
      t.text = std::string(src_.substr(start, pos_ - start));
      auto res = std::from_chars(t.text.data(), t.text.data() + t.text.size(), t.value);
      if (res.ec != std::errc{}) throw ParseError("malformed number '" + t.text + "'", t.line, t.col);
      return t;
    }
    if (c == '"') {
      advance();
      std::size_t start = pos_;
      while (pos_ < src_.size() && src_[pos_] != '"') advance();
      if (pos_ >= src_.size()) throw ParseError("unterminated string literal", t.line, t.col);
      t.kind = TokKind::string;
      t.text = std::string(src_.substr(start, pos_ - start));
      advance();  // closing quote
      return t;
    }
    if (c == '-' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') {
      advance();
      advance();
      t.kind = TokKind::arrow;
      t.text = "->";
      return t;
    }
    static constexpr std::string_view symbols = ";,()[]+-*/";
    if (symbols.find(c) != std::string_view::npos) {
      advance();
      t.kind = TokKind::symbol;
      t.text = std::string(1, c);
      return t;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", line_, col_);
  }

 private:
  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_ws_and_comments() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else if (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '/') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else {
        break;
      }
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

struct Register {
  int offset = 0;
  int size = 0;
};

class Parser {
 public:
  explicit Parser(std::string_view src) : lex_(src) { bump(); }

  Circuit parse() {
    expect_ident("OPENQASM");
    expect(TokKind::number, "version number");
    expect_symbol(";");

    Circuit circuit;
    circuit.num_qubits = 0;
    while (cur_.kind != TokKind::eof) {
      if (cur_.kind != TokKind::ident)
        throw ParseError("expected a statement", cur_.line, cur_.col);
      std::string word = cur_.text;
      if (word == "include") {
        bump();
        expect(TokKind::string, "include file name");
        expect_symbol(";");
      } else if (word == "qreg") {
        bump();
        auto [name, size, line, col] = parse_reg_decl();
        if (qregs_.count(name)) throw ParseError("register '" + name + "' redeclared", line, col);
        if (size < 1) throw ParseError("register '" + name + "' must have positive size", line, col);
        qregs_.emplace(name, Register{circuit.num_qubits, size});
        circuit.num_qubits += size;
      } else if (word == "creg") {
        bump();
        parse_reg_decl();  // parsed for well-formedness, classical bits are not modeled
      } else if (word == "barrier" || word == "measure") {
        skip_statement();
      } else if (auto kind = gate_from_name(word)) {
        parse_gate(circuit, *kind);
      } else {
        throw ParseError("unsupported statement '" + word + "'", cur_.line, cur_.col);
      }
    }
    if (circuit.num_qubits < 1)
      throw ParseError("program declares no qubits", cur_.line, cur_.col);
    circuit.validate();
    return circuit;
  }

 private:
  struct RegDecl {
    std::string name;
    int size;
    int line, col;
  };

  RegDecl parse_reg_decl() {
    Token name = cur_;
    expect(TokKind::ident, "register name");
    expect_symbol("[");
    Token size = cur_;
    expect(TokKind::number, "register size");
    expect_symbol("]");
    expect_symbol(";");
    return {name.text, static_cast<int>(size.value), name.line, name.col};
  }

  void parse_gate(Circuit& circuit, GateKind kind) {
    Token gate_tok = cur_;
    bump();
    std::optional<double> param;
    if (cur_.kind == TokKind::symbol && cur_.text == "(") {
      if (!has_param(kind))
        throw ParseError(std::string(gate_name(kind)) + " takes no parameter", cur_.line, cur_.col);
      bump();
      param = parse_expr();
      expect_symbol(")");
    } else if (has_param(kind)) {
      throw ParseError(std::string(gate_name(kind)) + " requires a parameter", cur_.line, cur_.col);
    }

    std::vector<int> operands;
    operands.push_back(parse_qubit());
    while (cur_.kind == TokKind::symbol && cur_.text == ",") {
      bump();
      operands.push_back(parse_qubit());
    }
    expect_symbol(";");

    int arity = is_two_qubit(kind) ? 2 : 1;
    if (static_cast<int>(operands.size()) != arity)
      throw ParseError(std::string(gate_name(kind)) + " expects " + std::to_string(arity) +
                           " operand(s), got " + std::to_string(operands.size()),
                       gate_tok.line, gate_tok.col);
    if (arity == 2 && operands[0] == operands[1])
      throw ParseError("two-qubit gate operands must be distinct", gate_tok.line, gate_tok.col);
    if (arity == 1)
      circuit.add(kind, operands[0], param);
    else
      circuit.add(kind, operands[0], operands[1], param);
  }

  int parse_qubit() {
    Token name = cur_;
    expect(TokKind::ident, "qubit operand");
    auto it = qregs_.find(name.text);
    if (it == qregs_.end())
      throw ParseError("undeclared register '" + name.text + "'", name.line, name.col);
    expect_symbol("[");
    Token idx = cur_;
    expect(TokKind::number, "qubit index");
    expect_symbol("]");
    int i = static_cast<int>(idx.value);
    if (i < 0 || i >= it->second.size)
      throw ParseError("qubit index " + std::to_string(i) + " out of range for register '" +
                           name.text + "'",
                       idx.line, idx.col);
    return it->second.offset + i;
  }

  // expr := term (('+' | '-') term)* ; term := factor (('*' | '/') factor)*
  // factor := number | 'pi' | '-' factor | '(' expr ')'
  double parse_expr() {
    double v = parse_term();
    while (cur_.kind == TokKind::symbol && (cur_.text == "+" || cur_.text == "-")) {
      bool plus = cur_.text == "+";
      bump();
      double rhs = parse_term();
      v = plus ? v + rhs : v - rhs;
    }
    return v;
  }

  double parse_term() {
    double v = parse_factor();
    while (cur_.kind == TokKind::symbol && (cur_.text == "*" || cur_.text == "/")) {
      bool mul = cur_.text == "*";
      Token op = cur_;
      bump();
      double rhs = parse_factor();
      if (!mul && rhs == 0.0) throw ParseError("division by zero in parameter", op.line, op.col);
      v = mul ? v * rhs : v / rhs;
    }
    return v;
  }

  double parse_factor() {
    if (cur_.kind == TokKind::symbol && cur_.text == "-") {
      bump();
      return -parse_factor();
    }
    if (cur_.kind == TokKind::symbol && cur_.text == "(") {
      bump();
      double v = parse_expr();
      expect_symbol(")");
      return v;
    }
    if (cur_.kind == TokKind::number) {
      double v = cur_.value;
      bump();
      return v;
    }
    if (cur_.kind == TokKind::ident && cur_.text == "pi") {
      bump();
      return std::numbers::pi;
    }
    throw ParseError("expected a parameter expression", cur_.line, cur_.col);
  }

  void skip_statement() {
    while (!(cur_.kind == TokKind::symbol && cur_.text == ";")) {
      if (cur_.kind == TokKind::eof)
        throw ParseError("unterminated statement", cur_.line, cur_.col);
      bump();
    }
    bump();  // consume ';'
  }

  void bump() { cur_ = lex_.next(); }

  void expect(TokKind kind, const char* what) {
    if (cur_.kind != kind)
      throw ParseError(std::string("expected ") + what + ", got '" + cur_.text + "'", cur_.line,
                       cur_.col);
    bump();
  }

  void expect_ident(const char* word) {
    if (cur_.kind != TokKind::ident || cur_.text != word)
      throw ParseError(std::string("expected '") + word + "'", cur_.line, cur_.col);
    bump();
  }

  void expect_symbol(const char* sym) {
    if (cur_.kind != TokKind::symbol || cur_.text != sym)
      throw ParseError(std::string("expected '") + sym + "', got '" + cur_.text + "'", cur_.line,
                       cur_.col);
    bump();
  }

  Lexer lex_;
  Token cur_;
  std::map<std::string, Register> qregs_;
};

}  // namespace qasm_detail

// Parses the OPENQASM 2.0 subset used by the toolkit: header, qreg/creg
// declarations, gates h/x/rz/cx/crz, barrier and measure (both dropped),
// line comments. Anything else is rejected with a position.
inline Circuit parse_qasm(std::string_view text) { return qasm_detail::Parser(text).parse(); }

inline std::string emit_qasm(const Circuit& circuit) {
  circuit.validate();
  std::string out = "OPENQASM 2.0;\n";
  out += "qreg q[" + std::to_string(circuit.num_qubits) + "];\n";
  char buf[64];
  for (const auto& g : circuit.gates) {
    out += gate_name(g.kind);
    if (g.param) {
      std::snprintf(buf, sizeof(buf), "%.17g", *g.param);
      out += "(";
      out += buf;
      out += ")";
    }
    out += " q[" + std::to_string(g.qs[0]) + "]";
    if (is_two_qubit(g.kind)) out += ",q[" + std::to_string(g.qs[1]) + "]";
    out += ";\n";
  }
  return out;
}

}  // namespace qdc
