// Classify su(5,8) with two nonzero compact labels and print the missing
// highest weights with their condition-(A) sequences.

#include "unitarity/classifier.hpp"
#include "unitarity/diagram.hpp"

#include <iostream>

int main() {
  using namespace unitarity;
  RootSystem rs(Family::su(5, 8));
  JakobsenDiagram diagram(rs);
  auto result = classify(rs, {{5, 2}, {8, 1}});

  std::cout << rs.family().name() << ": lambda0 = " << to_string(result.lambda0)
            << " at " << diagram.node(result.alpha0).grid.name()
            << ", reduction level " << result.reduction_level << "\n";
  for (const auto& m : result.missing) {
    std::cout << "  lambda = " << to_string(m.lambda_q) << ", order " << m.order << ", omega = "
              << simple_expansion(rs, m.omega_q) << "\n    certificate:";
    for (const auto& step : *m.certificate)
      std::cout << " " << diagram.node(step.root).grid.name() << " (n=" << to_string(step.multiplicity) << ")";
    std::cout << "\n";
  }
  for (auto lambda : {Rational(-6), Rational(-13) / 2, Rational(-9)})
    std::cout << "  verdict at " << to_string(lambda) << ": " << unitarity_verdict(result, lambda).name() << "\n";
  return result.inconsistencies.empty() ? 0 : 1;
}
