#ifndef THINLOOP_CROSSCHECK_HPP
#define THINLOOP_CROSSCHECK_HPP

#include <string>

#include "thinloop/curve.hpp"
#include "thinloop/holonomy.hpp"
#include "thinloop/homotopy.hpp"
#include "thinloop/tree.hpp"

namespace thinloop {

struct BatteryParams {
  DecomposeParams decompose;
  FactorParams factor;
  HomotopyParams homotopy;
  LieGroupSpec group = LieGroupSpec::make(GroupName::SU2);
  int connections = 20;
  std::uint64_t seed = 20240801;
  int transport_steps = 1024;
  double tol_trivial = 1e-5;     // whisker loops stay below this
  double tol_nontrivial = 1e-2;  // non-whiskers must exceed this somewhere
  double tol_factor_rel = 1e-3;  // ||gamma - fold o gamma_tilde|| <= rel * L
  double fold_lip_max = 1.01;
  ThinnessTolerances thin;
};

// The four equivalence routes of the main theorem, run on one loop:
// (a) the word reduces, (b) the constructed homotopy contracts the loop
// and is thin, (c) sampled holonomy (with the constructive tube backing
// the negative side), (d) the tree factorization exists within
// tolerance.
struct LoopBattery {
  Word word;
  Word reduced;

  bool route_a = false;

  bool route_b = false;
  ThinnessReport thin;
  double target_spread = 0.0;
  double replica_error = 0.0;

  bool route_c = false;
  TrivialityReport sampling;
  double tube_deviation = 0.0;  // 0 when the tube route was not needed

  bool route_d = false;
  double factor_error = 0.0;
  double fold_lip = 0.0;

  bool agree_abd = false;
  bool c_agrees = false;
  std::string group;
};

LoopBattery run_battery(const SampledCurve& loop, const BatteryParams& params);

// Corollary route (a) alone: reduced words in a shared alphabet, built
// by matching the two decompositions' arcs geometrically.
struct WordComparison {
  bool matched = false;  // every arc of b identified or given a fresh letter
  bool equal = false;
  Word reduced_a, reduced_b;
  std::string word_a, word_b;  // token syntax
};

WordComparison compare_reduced_words(const SampledCurve& a,
                                     const SampledCurve& b,
                                     const DecomposeParams& dparams);

// The Corollary: all four routes on gamma1 . reverse(gamma2), plus the
// direct reduced-word comparison after geometric arc matching.
struct CrosscheckReport {
  LoopBattery product;
  bool words_matched = false;  // arcs of B identified with arcs of A
  bool words_equal = false;    // reduced words equal in the shared alphabet
  bool equivalent = false;
  bool agree = false;  // routes a, b, d and the word comparison
  std::string word_a, word_b;  // reduced words, token syntax
};

CrosscheckReport crosscheck(const SampledCurve& a, const SampledCurve& b,
                            const BatteryParams& params);

std::string render_battery(const LoopBattery& battery);
std::string render_crosscheck(const CrosscheckReport& report);

}  // namespace thinloop

#endif
