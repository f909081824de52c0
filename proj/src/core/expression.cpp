#include "dashsnap/core/expression.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <variant>

#include "dashsnap/core/error.hpp"
#include "dashsnap/core/value.hpp"

namespace dashsnap {

struct Expression::Node {
  struct Number { double value; };
  struct Ref { std::string name; };
  struct Negate { std::shared_ptr<const Node> operand; };
  struct Binary {
    char op;
    std::shared_ptr<const Node> lhs, rhs;
  };
  std::variant<Number, Ref, Negate, Binary> v;
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;

bool is_name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_name_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class Parser {
 public:
  Parser(std::string_view text, std::vector<std::string>& refs) : text_(text), refs_(refs) {}

  NodePtr parse() {
    auto n = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected character");
    return n;
  }

 private:
  [[noreturn]] void fail(const std::string& what) {
    throw Error(Code::ExpressionSyntax,
                what + " at offset " + std::to_string(pos_) + " in '" + std::string(text_) + "'");
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr expr() {
    auto lhs = term();
    for (;;) {
      if (accept('+')) {
        lhs = binary('+', lhs, term());
      } else if (accept('-')) {
        lhs = binary('-', lhs, term());
      } else {
        return lhs;
      }
    }
  }

  NodePtr term() {
    auto lhs = factor();
    for (;;) {
      if (accept('*')) {
        lhs = binary('*', lhs, factor());
      } else if (accept('/')) {
        lhs = binary('/', lhs, factor());
      } else {
        return lhs;
      }
    }
  }

  NodePtr factor() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      auto inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (c == '-') {
      ++pos_;
      return std::make_shared<const Expression::Node>(Expression::Node{Expression::Node::Negate{factor()}});
    }
    if (c == '[') {
      auto close = text_.find(']', pos_);
      if (close == std::string_view::npos) fail("unterminated '['");
      std::string name(text_.substr(pos_ + 1, close - pos_ - 1));
      if (name.empty()) fail("empty measure name");
      pos_ = close + 1;
      return ref(std::move(name));
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) {
        ++pos_;
      }
      double v = 0;
      auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, v);
      if (ec != std::errc{} || ptr != text_.data() + pos_) fail("malformed number");
      return std::make_shared<const Expression::Node>(Expression::Node{Expression::Node::Number{v}});
    }
    if (is_name_start(c)) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && is_name_char(text_[pos_])) ++pos_;
      return ref(std::string(text_.substr(start, pos_ - start)));
    }
    fail("unexpected character");
  }

  NodePtr ref(std::string name) {
    if (std::find(refs_.begin(), refs_.end(), name) == refs_.end()) refs_.push_back(name);
    return std::make_shared<const Expression::Node>(Expression::Node{Expression::Node::Ref{std::move(name)}});
  }

  static NodePtr binary(char op, NodePtr lhs, NodePtr rhs) {
    return std::make_shared<const Expression::Node>(
        Expression::Node{Expression::Node::Binary{op, std::move(lhs), std::move(rhs)}});
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::vector<std::string>& refs_;
};

Expression::Outcome eval(const Expression::Node& node,
                         const std::function<std::optional<double>(const std::string&)>& lookup) {
  using N = Expression::Node;
  return std::visit(
      [&](const auto& n) -> Expression::Outcome {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, N::Number>) {
          return {n.value, false};
        } else if constexpr (std::is_same_v<T, N::Ref>) {
          return {lookup(n.name), false};
        } else if constexpr (std::is_same_v<T, N::Negate>) {
          auto o = eval(*n.operand, lookup);
          if (o.value) o.value = -*o.value;
          return o;
        } else {
          auto l = eval(*n.lhs, lookup);
          auto r = eval(*n.rhs, lookup);
          Expression::Outcome out;
          out.division_by_zero = l.division_by_zero || r.division_by_zero;
          if (!l.value || !r.value) return out;
          switch (n.op) {
            case '+': out.value = *l.value + *r.value; break;
            case '-': out.value = *l.value - *r.value; break;
            case '*': out.value = *l.value * *r.value; break;
            default:
              if (*r.value == 0.0) {
                out.division_by_zero = true;
              } else {
                out.value = *l.value / *r.value;
              }
          }
          return out;
        }
      },
      node.v);
}

int precedence(char op) { return op == '+' || op == '-' ? 1 : 2; }

std::string print(const Expression::Node& node, int parent_prec, bool right) {
  using N = Expression::Node;
  return std::visit(
      [&](const auto& n) -> std::string {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, N::Number>) {
          return format_number(n.value);
        } else if constexpr (std::is_same_v<T, N::Ref>) {
          bool bare = !n.name.empty() && is_name_start(n.name[0]) &&
                      std::all_of(n.name.begin(), n.name.end(), is_name_char);
          return bare ? n.name : "[" + n.name + "]";
        } else if constexpr (std::is_same_v<T, N::Negate>) {
          return "-" + print(*n.operand, 3, false);
        } else {
          int p = precedence(n.op);
          std::string s = print(*n.lhs, p, false) + " " + n.op + " " + print(*n.rhs, p, true);
          if (p < parent_prec || (right && p == parent_prec)) s = "(" + s + ")";
          return s;
        }
      },
      node.v);
}

}  // namespace

Expression Expression::parse(std::string_view text) {
  Expression e;
  Parser p(text, e.refs_);
  e.root_ = p.parse();
  return e;
}

Expression::Outcome Expression::evaluate(
    const std::function<std::optional<double>(const std::string&)>& lookup) const {
  return eval(*root_, lookup);
}

std::string Expression::str() const { return print(*root_, 0, false); }

std::optional<std::string> find_cycle(
    const std::vector<std::pair<std::string, std::vector<std::string>>>& graph) {
  std::map<std::string, const std::vector<std::string>*> edges;
  for (const auto& [name, refs] : graph) edges[name] = &refs;
  enum class Mark { None, Active, Done };
  std::map<std::string, Mark> marks;
  std::optional<std::string> found;
  std::function<void(const std::string&)> visit = [&](const std::string& n) {
    if (found) return;
    auto it = edges.find(n);
    if (it == edges.end()) return;
    auto& m = marks[n];
    if (m == Mark::Done) return;
    if (m == Mark::Active) {
      found = n;
      return;
    }
    m = Mark::Active;
    for (const auto& r : *it->second) visit(r);
    marks[n] = Mark::Done;
  };
  for (const auto& [name, refs] : graph) visit(name);
  return found;
}

}  // namespace dashsnap
