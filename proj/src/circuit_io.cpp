#include <charconv>
#include <cmath>
#include <numbers>
#include <string>

#include <json.hpp>

#include "gatetrim/circuit.hpp"
#include "gatetrim/errors.hpp"

namespace gatetrim {

namespace {

std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

void check_qubit(int q, int n, const std::string& where) {
  if (q < 0 || q >= n) {
    throw QubitRangeError(where + "qubit " + std::to_string(q) + " out of range for " +
                          std::to_string(n) + "-qubit register");
  }
}

// ---------------------------------------------------------------------------
// native JSON

std::pair<int, int> line_column(std::string_view text, std::size_t offset) {
  int line = 1;
  int column = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

Circuit parse_json(std::string_view text) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    auto [line, column] = line_column(text, e.byte > 0 ? e.byte - 1 : 0);
    throw ParseError("malformed JSON", line, column);
  }

  auto schema_error = [](const std::string& what) { return ParseError(what, 1, 1); };
  if (!doc.is_object()) throw schema_error("top-level value must be an object");
  if (!doc.contains("n_qubits") || !doc["n_qubits"].is_number_integer()) {
    throw schema_error("missing integer field 'n_qubits'");
  }

  Circuit c;
  c.n_qubits = doc["n_qubits"].get<int>();
  if (c.n_qubits < 0) throw schema_error("'n_qubits' must be non-negative");
  if (doc.contains("global_phase")) {
    if (!doc["global_phase"].is_number()) throw schema_error("'global_phase' must be a number");
    c.global_phase = doc["global_phase"].get<double>();
  }
  if (!doc.contains("gates")) return c;
  if (!doc["gates"].is_array()) throw schema_error("'gates' must be an array");

  const auto& gates = doc["gates"];
  for (std::size_t i = 0; i < gates.size(); ++i) {
    const auto& g = gates[i];
    const std::string where = "gates[" + std::to_string(i) + "]: ";
    if (!g.is_object()) throw schema_error(where + "must be an object");
    if (!g.contains("kind") || !g["kind"].is_string()) {
      throw schema_error(where + "missing string field 'kind'");
    }
    Gate gate;
    const auto name = g["kind"].get<std::string>();
    if (!gate_kind_from_name(name, gate.kind)) throw UnsupportedGateError(name, where);
    if (!g.contains("qubits") || !g["qubits"].is_array()) {
      throw schema_error(where + "missing array field 'qubits'");
    }
    for (const auto& q : g["qubits"]) {
      if (!q.is_number_integer()) throw schema_error(where + "qubit indices must be integers");
      gate.qubits.push_back(q.get<int>());
    }
    if (static_cast<int>(gate.qubits.size()) != arity(gate.kind)) {
      throw schema_error(where + "'" + name + "' takes " + std::to_string(arity(gate.kind)) +
                         " qubit(s)");
    }
    for (int q : gate.qubits) check_qubit(q, c.n_qubits, where);
    if (gate.qubits.size() == 2 && gate.qubits[0] == gate.qubits[1]) {
      throw schema_error(where + "duplicate qubit");
    }
    if (g.contains("angle")) {
      if (!g["angle"].is_number()) throw schema_error(where + "'angle' must be a number");
      gate.angle = g["angle"].get<double>();
    } else if (is_native(gate.kind)) {
      throw schema_error(where + "missing field 'angle'");
    }
    if (g.contains("error_rate") && !g["error_rate"].is_null()) {
      if (!g["error_rate"].is_number()) throw schema_error(where + "'error_rate' must be a number");
      const double e = g["error_rate"].get<double>();
      if (!is_entangling(gate.kind)) throw schema_error(where + "error rate on a one-qubit gate");
      if (e < 0.0 || e >= 1.0) throw schema_error(where + "'error_rate' outside [0, 1)");
      gate.error_rate = e;
    }
    c.gates.push_back(std::move(gate));
  }
  return c;
}

std::string serialize_json(const Circuit& c) {
  nlohmann::ordered_json doc;
  doc["n_qubits"] = c.n_qubits;
  doc["global_phase"] = c.global_phase;
  doc["gates"] = nlohmann::ordered_json::array();
  for (const Gate& g : c.gates) {
    nlohmann::ordered_json j;
    j["kind"] = std::string(gate_name(g.kind));
    j["qubits"] = g.qubits;
    j["angle"] = g.angle;
    if (g.error_rate) j["error_rate"] = *g.error_rate;
    doc["gates"].push_back(std::move(j));
  }
  return doc.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// QASM subset

enum class Tok { Ident, Number, String, Symbol, End };

struct Token {
  Tok type = Tok::End;
  std::string text;
  double number = 0.0;
  int line = 1;
  int column = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    skip_space_and_comments();
    Token t;
    t.line = line_;
    t.column = column_;
    if (pos_ >= text_.size()) return t;

    const char ch = text_[pos_];
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      t.type = Tok::Ident;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        t.text += advance();
      }
      return t;
    }
    if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.') {
      t.type = Tok::Number;
      const char* begin = text_.data() + pos_;
      const char* end = text_.data() + text_.size();
      auto [ptr, ec] = std::from_chars(begin, end, t.number);
      if (ec != std::errc{}) throw ParseError("malformed number", line_, column_);
      while (text_.data() + pos_ < ptr) t.text += advance();
      return t;
    }
    if (ch == '"') {
      t.type = Tok::String;
      advance();
      while (pos_ < text_.size() && text_[pos_] != '"' && text_[pos_] != '\n') t.text += advance();
      if (pos_ >= text_.size() || text_[pos_] != '"') {
        throw ParseError("unterminated string", t.line, t.column);
      }
      advance();
      return t;
    }
    if (std::string_view(";,()[]+-*/^").find(ch) != std::string_view::npos) {
      t.type = Tok::Symbol;
      t.text = advance();
      return t;
    }
    throw ParseError(std::string("unexpected character '") + ch + "'", line_, column_);
  }

 private:
  char advance() {
    const char ch = text_[pos_++];
    if (ch == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    return ch;
  }

  void skip_space_and_comments() {
    while (pos_ < text_.size()) {
      const char ch = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(ch))) {
        advance();
      } else if (text_.substr(pos_, 2) == "//") {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (text_.substr(pos_, 2) == "/*") {
        const int line = line_;
        const int column = column_;
        advance();
        advance();
        while (pos_ < text_.size() && text_.substr(pos_, 2) != "*/") advance();
        if (pos_ >= text_.size()) throw ParseError("unterminated comment", line, column);
        advance();
        advance();
      } else {
        break;
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

class QasmParser {
 public:
  explicit QasmParser(std::string_view text) : lexer_(text) { tok_ = lexer_.next(); }

  Circuit run() {
    while (tok_.type != Tok::End) statement();
    return circuit_;
  }

 private:
  [[noreturn]] void fail(const std::string& message, const Token& at) const {
    throw ParseError(message, at.line, at.column);
  }

  Token take() {
    Token t = tok_;
    tok_ = lexer_.next();
    return t;
  }

  bool is_symbol(std::string_view s) const { return tok_.type == Tok::Symbol && tok_.text == s; }

  void expect_symbol(std::string_view s) {
    if (!is_symbol(s)) {
      fail("expected '" + std::string(s) + "'" +
               (tok_.type == Tok::End ? std::string(" before end of input")
                                      : " but found '" + tok_.text + "'"),
           tok_);
    }
    take();
  }

  Token expect_ident() {
    if (tok_.type != Tok::Ident) fail("expected identifier", tok_);
    return take();
  }

  int expect_integer() {
    if (tok_.type != Tok::Number || tok_.number != std::floor(tok_.number) ||
        tok_.text.find_first_of(".eE") != std::string::npos) {
      fail("expected integer", tok_);
    }
    return static_cast<int>(take().number);
  }

  void statement() {
    const Token head = expect_ident();
    const std::string& word = head.text;
    if (word == "OPENQASM") {
      if (tok_.type != Tok::Number) fail("expected version number", tok_);
      take();
      expect_symbol(";");
    } else if (word == "include") {
      if (tok_.type != Tok::String) fail("expected file name string", tok_);
      take();
      expect_symbol(";");
    } else if (word == "qreg") {
      if (has_register_) fail("only one qreg is supported", head);
      register_name_ = expect_ident().text;
      expect_symbol("[");
      circuit_.n_qubits = expect_integer();
      expect_symbol("]");
      expect_symbol(";");
      has_register_ = true;
    } else if (word == "barrier") {
      // Barriers carry no semantics for a unitary circuit.
      qubit_list();
      expect_symbol(";");
    } else if (word == "gphase") {
      expect_symbol("(");
      circuit_.global_phase += expression();
      expect_symbol(")");
      expect_symbol(";");
    } else if (word == "creg" || word == "measure" || word == "reset" || word == "if" ||
               word == "gate" || word == "opaque") {
      fail("'" + word + "' is not supported (unitary, measurement-free subset)", head);
    } else {
      gate(head);
    }
  }

  void gate(const Token& head) {
    Gate g;
    if (!gate_kind_from_name(head.text, g.kind)) {
      throw UnsupportedGateError(head.text, "line " + std::to_string(head.line) + ", column " +
                                                std::to_string(head.column) + ": ");
    }
    const bool wants_angle = is_native(g.kind);
    if (is_symbol("(")) {
      if (!wants_angle) fail("gate '" + head.text + "' takes no parameters", tok_);
      take();
      g.angle = expression();
      expect_symbol(")");
    } else if (wants_angle) {
      fail("gate '" + head.text + "' requires an angle parameter", tok_);
    }
    g.qubits = qubit_list();
    if (static_cast<int>(g.qubits.size()) != arity(g.kind)) {
      fail("gate '" + head.text + "' takes " + std::to_string(arity(g.kind)) + " qubit(s)", head);
    }
    if (g.qubits.size() == 2 && g.qubits[0] == g.qubits[1]) {
      fail("gate '" + head.text + "' applied to the same qubit twice", head);
    }
    expect_symbol(";");
    circuit_.gates.push_back(std::move(g));
  }

  std::vector<int> qubit_list() {
    std::vector<int> qubits{qubit()};
    while (is_symbol(",")) {
      take();
      qubits.push_back(qubit());
    }
    return qubits;
  }

  int qubit() {
    const Token name = expect_ident();
    if (!has_register_) fail("qubit used before any qreg declaration", name);
    if (name.text != register_name_) fail("unknown register '" + name.text + "'", name);
    if (!is_symbol("[")) fail("register broadcast is not supported; index a qubit", tok_);
    take();
    const Token at = tok_;
    const int index = expect_integer();
    expect_symbol("]");
    check_qubit(index, circuit_.n_qubits,
                "line " + std::to_string(at.line) + ", column " + std::to_string(at.column) + ": ");
    return index;
  }

  double expression() {
    double v = term();
    while (is_symbol("+") || is_symbol("-")) {
      const bool plus = take().text == "+";
      const double rhs = term();
      v = plus ? v + rhs : v - rhs;
    }
    return v;
  }

  double term() {
    double v = power();
    while (is_symbol("*") || is_symbol("/")) {
      const bool times = take().text == "*";
      const double rhs = power();
      v = times ? v * rhs : v / rhs;
    }
    return v;
  }

  double power() {
    const double base = unary();
    if (is_symbol("^")) {
      take();
      return std::pow(base, power());
    }
    return base;
  }

  double unary() {
    if (is_symbol("-")) {
      take();
      return -unary();
    }
    if (is_symbol("+")) {
      take();
      return unary();
    }
    return primary();
  }

  double primary() {
    if (tok_.type == Tok::Number) return take().number;
    if (is_symbol("(")) {
      take();
      const double v = expression();
      expect_symbol(")");
      return v;
    }
    if (tok_.type == Tok::Ident) {
      const Token id = take();
      if (id.text == "pi") return std::numbers::pi;
      double (*fn)(double) = nullptr;
      if (id.text == "sin") fn = [](double x) { return std::sin(x); };
      if (id.text == "cos") fn = [](double x) { return std::cos(x); };
      if (id.text == "tan") fn = [](double x) { return std::tan(x); };
      if (id.text == "exp") fn = [](double x) { return std::exp(x); };
      if (id.text == "ln") fn = [](double x) { return std::log(x); };
      if (id.text == "sqrt") fn = [](double x) { return std::sqrt(x); };
      if (!fn) fail("unknown identifier '" + id.text + "' in expression", id);
      expect_symbol("(");
      const double arg = expression();
      expect_symbol(")");
      return fn(arg);
    }
    fail(tok_.type == Tok::End ? "unexpected end of input in expression"
                               : "unexpected '" + tok_.text + "' in expression",
         tok_);
  }

  Lexer lexer_;
  Token tok_;
  Circuit circuit_;
  bool has_register_ = false;
  std::string register_name_;
};

std::string serialize_qasm(const Circuit& c) {
  std::string out = "OPENQASM 2.0;\nqreg q[" + std::to_string(c.n_qubits) + "];\n";
  if (c.global_phase != 0.0) out += "gphase(" + format_double(c.global_phase) + ");\n";
  for (const Gate& g : c.gates) {
    out += gate_name(g.kind);
    if (is_native(g.kind)) out += "(" + format_double(g.angle) + ")";
    for (std::size_t i = 0; i < g.qubits.size(); ++i) {
      out += (i == 0 ? " q[" : ",q[") + std::to_string(g.qubits[i]) + "]";
    }
    out += ";\n";
  }
  return out;
}

}  // namespace

Circuit parse(std::string_view text, Format format) {
  if (format == Format::NativeJson) return parse_json(text);
  return QasmParser(text).run();
}

std::string serialize(const Circuit& circuit, Format format) {
  return format == Format::NativeJson ? serialize_json(circuit) : serialize_qasm(circuit);
}

}  // namespace gatetrim
