#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dashsnap {

/// Arithmetic over measure names: `+ - * /`, parentheses, numeric literals,
/// unary minus. Bare names match [A-Za-z_][A-Za-z0-9_]*; names containing
/// other characters are written in brackets, e.g. `[Order Count] / Orders`.
class Expression {
 public:
  struct Node;

  /// Throws Error(ExpressionSyntax) with the offending character offset.
  static Expression parse(std::string_view text);

  /// Referenced measure names, deduplicated, in first-occurrence order.
  const std::vector<std::string>& references() const { return refs_; }

  struct Outcome {
    std::optional<double> value;
    bool division_by_zero = false;
  };

  /// `lookup` returns nullopt for a null operand; nulls propagate.
  Outcome evaluate(const std::function<std::optional<double>(const std::string&)>& lookup) const;

  /// Canonical text, fully bracketed where names need it.
  std::string str() const;

 private:
  std::shared_ptr<const Node> root_;
  std::vector<std::string> refs_;
};

/// Topologically orders computed measures by their references. Returns the
/// name of a measure on a cycle when one exists.
std::optional<std::string> find_cycle(
    const std::vector<std::pair<std::string, std::vector<std::string>>>& graph);

}  // namespace dashsnap
