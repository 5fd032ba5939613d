#pragma once

#include "qforms/exactnum.hpp"

#include <string>
#include <vector>

namespace qf::verify {

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Aggregated symbolic identities: composition-norm multiplicativity for
/// folds 1-3, the fold-3 associator being nonzero, Hopf sphere
/// certificates, the product-map identity grid, and the hand-checked
/// quadric family x1*x2 + x3^2 = 1.
std::vector<Check> identities_suite();

/// Independent oracles: the exhaustive p-adic solubility search against
/// the closed-form Hilbert symbol, witness search against the
/// local-global isotropy decision, constructive against invariant-level
/// Witt decomposition, and square-class laws on random samples.
std::vector<Check> oracle_suite();

/// Exhaustive solubility of z^2 = a x^2 + b y^2 over the completion at v:
/// bounded search modulo p^k with a Hensel-lift certificate. Independent
/// of the closed-form hilbert_symbol implementation.
int hilbert_symbol_oracle(const SquareClass& a, const SquareClass& b, const Place& v);

}  // namespace qf::verify
