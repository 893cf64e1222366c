#pragma once

// Shared sentence corpus over letters {Z, O} with the order "<". The first
// twenty entries also serve the solver agreement checks.

#include <string>
#include <vector>

namespace fowb::testing {

inline const std::vector<std::string>& corpus_sentences() {
  static const std::vector<std::string> corpus = {
      "true",
      "false",
      "exists x. Z(x)",
      "exists x. O(x)",
      "forall x. Z(x)",
      "forall x. Z(x) | O(x)",
      "exists x. Z(x) & O(x)",
      "forall x. !(x < x)",
      "exists x. x < x",
      "forall x. exists y. x < y",
      "exists x. forall y. !(x < y)",
      "exists x. forall y. !(y < x) & Z(x)",
      "exists x. forall y. !(y < x) & O(x)",
      "forall x. forall y. x < y -> Z(x) | O(y)",
      "exists x. exists y. x < y & Z(x) & O(y)",
      "forall x. forall y. Z(x) & Z(y) -> x = y",
      "exists x. exists y. !(x = y)",
      "forall x. forall y. x = y",
      "exists x. exists y. x < y & !(exists z. x < z & z < y)",
      "forall x. Z(x) -> (exists y. x < y & O(y))",
      "exists x. O(x) & (forall y. y < x | y = x)",
      "true & exists x. Z(x)",
      "!(exists x. O(x))",
      "!(forall x. Z(x))",
      "exists x. Z(x) -> false",
      "forall x. exists y. y < x | x < y",
      "exists x. forall y. x < y -> O(y)",
      "forall x. forall y. forall z. x < y & y < z -> x < z",
      "exists x. exists y. exists z. x < y & y < z",
      "forall x. (exists y. y < x) -> Z(x)",
  };
  return corpus;
}

}  // namespace fowb::testing
