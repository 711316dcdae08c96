#include "llab/expr.hpp"

#include <cctype>

#include "llab/divergence.hpp"
#include "llab/io.hpp"
#include "llab/maps.hpp"
#include "llab/means.hpp"
#include "llab/scalar_function.hpp"

namespace llab {

EvalBindings parse_bindings(const std::vector<std::string>& args) {
  EvalBindings bindings;
  for (const std::string& arg : args) {
    const std::size_t eq = arg.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == arg.size())
      throw ConfigError("binding \"" + arg + "\" must have the form NAME=path");
    const std::string name = arg.substr(0, eq);
    if (bindings.count(name))
      throw ConfigError("name \"" + name + "\" is bound twice");
    bindings[name] = arg.substr(eq + 1);
  }
  return bindings;
}

namespace {

bool atom_char(char c) {
  return c != '(' && c != ')' && c != ',' &&
         !std::isspace(static_cast<unsigned char>(c));
}

struct Parser {
  const std::string& text;
  const EvalBindings& bindings;
  double floor;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() &&
           std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  }

  bool peek_is(char c) {
    skip_ws();
    return pos < text.size() && text[pos] == c;
  }

  void expect(char c) {
    skip_ws();
    if (pos >= text.size() || text[pos] != c)
      throw ParseError(std::string("expected '") + c + "'",
                       static_cast<int>(pos));
    ++pos;
  }

  std::string atom(const char* what) {
    skip_ws();
    const std::size_t start = pos;
    while (pos < text.size() && atom_char(text[pos])) ++pos;
    if (pos == start)
      throw ParseError(std::string("expected ") + what,
                       static_cast<int>(start));
    return text.substr(start, pos - start);
  }

  ScalarFunction function_arg() {
    skip_ws();
    const std::size_t start = pos;
    const std::string spec = atom("a function spec");
    try {
      return parse_function(spec);
    } catch (const ParseError& e) {
      throw ParseError("in function spec \"" + spec + "\": " + e.what(),
                       static_cast<int>(start));
    }
  }

  const std::string& path_for(const std::string& name, std::size_t at) {
    const auto it = bindings.find(name);
    if (it == bindings.end())
      throw ParseError("unbound name \"" + name + "\"; pass " + name +
                       "=path on the command line",
                       static_cast<int>(at));
    return it->second;
  }

  HermitianMatrix expr() {
    skip_ws();
    const std::size_t start = pos;
    const std::string head = atom("an expression");
    if (peek_is('(')) {
      if (head == "mean") return call_mean();
      if (head == "persp") return call_persp();
      if (head == "theta") return call_theta();
      if (head == "map") return call_map();
      if (head == "fn") return call_fn();
      throw ParseError("unknown operation \"" + head + "\"",
                       static_cast<int>(start));
    }
    return load_matrix(path_for(head, start));
  }

  HermitianMatrix call_mean() {
    expect('(');
    skip_ws();
    const std::size_t at = pos;
    const std::string selector = atom("sharp, nabla, or harm");
    expect(',');
    const HermitianMatrix x = expr();
    expect(',');
    const HermitianMatrix y = expr();
    expect(')');
    if (selector == "sharp") return mean_geometric(x, y, floor);
    if (selector == "nabla") return mean_arithmetic(x, y);
    if (selector == "harm") return mean_harmonic(x, y, floor);
    throw ParseError("mean selector must be sharp, nabla, or harm, got \"" +
                     selector + "\"",
                     static_cast<int>(at));
  }

  HermitianMatrix call_persp() {
    expect('(');
    const ScalarFunction f = function_arg();
    expect(',');
    const HermitianMatrix x = expr();
    expect(',');
    const HermitianMatrix y = expr();
    expect(')');
    return perspective(f, x, y, floor);
  }

  HermitianMatrix call_theta() {
    expect('(');
    const ScalarFunction f = function_arg();
    expect(',');
    skip_ws();
    std::size_t at = pos;
    const OperatorField fa = load_field(path_for(atom("a field name"), at));
    expect(',');
    skip_ws();
    at = pos;
    const OperatorField fb = load_field(path_for(atom("a field name"), at));
    expect(')');
    return theta(f, fa, fb, floor);
  }

  HermitianMatrix call_map() {
    expect('(');
    skip_ws();
    const std::size_t at = pos;
    const PositiveLinearMap phi = load_map(path_for(atom("a map name"), at));
    expect(',');
    const HermitianMatrix x = expr();
    expect(')');
    return phi(x);
  }

  HermitianMatrix call_fn() {
    expect('(');
    const ScalarFunction f = function_arg();
    expect(',');
    const HermitianMatrix x = expr();
    expect(')');
    return apply_function(f, x, floor);
  }
};

}  // namespace

HermitianMatrix eval_expression(const std::string& text,
                                const EvalBindings& bindings, double floor) {
  Parser parser{text, bindings, floor};
  HermitianMatrix result = parser.expr();
  parser.skip_ws();
  if (parser.pos < text.size())
    throw ParseError("unexpected trailing characters",
                     static_cast<int>(parser.pos));
  return result;
}

}  // namespace llab
