#pragma once

#include <cstdint>
#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "echkatok/arithmetic.hpp"

namespace ech {

struct SpectrumEntry {
  std::int64_t k = 0;
  Weights weights;
  double value = 0.0;
  std::optional<std::int64_t> grading;
};

// The two formal generators x, y whose nonnegative combinations m1*x + m2*y
// are streamed.  Values are kept symbolic (rational coefficients, optionally
// of pi) or as high-precision reals; ordering is exact or certified, and
// numbers are materialized only on output.
class ActionPair {
 public:
  static ActionPair rationals(Rational x, Rational y, bool times_pi = false);
  static ActionPair reals(BigFloat x, BigFloat y);
  // x = 2*pi/(1+a), y = 2*pi/(1-a).
  static ActionPair katok(const Param& param);

  // Certified ordering of the combination values.
  Ordering compare(const Weights& w1, const Weights& w2) const;
  double value(const Weights& w) const;
  bool exact_available() const { return mode_ == Mode::Rational; }
  // "0", "9/2" or "20/7*pi" — rational mode only.
  std::string exact_string(const Weights& w) const;

  // Full tie order used by the streams: value ascending, then total weight
  // descending, then m1 descending.  Returns true when w1 strictly precedes.
  bool precedes(const Weights& w1, const Weights& w2) const;

 private:
  enum class Mode { Rational, Real };
  ActionPair() = default;

  Mode mode_ = Mode::Rational;
  Rational rx_, ry_;
  bool times_pi_ = false;
  BigFloat bx_{128}, by_{128};
};

// Streaming generator of the sorted combination sequence.  Frontier min-heap
// with dominance pruning: (m1+1, m2) is always pushed, (m1, m2+1) only from
// m1 = 0, so every pair enters exactly once and memory stays O(frontier).
class NabStream {
 public:
  explicit NabStream(ActionPair gens);
  NabStream(const NabStream&) = delete;
  NabStream& operator=(const NabStream&) = delete;
  SpectrumEntry next();

 private:
  struct Cmp {
    const ActionPair* g;
    bool operator()(const Weights& a, const Weights& b) const {
      return g->precedes(b, a);  // min-heap
    }
  };
  ActionPair gens_;
  std::priority_queue<Weights, std::vector<Weights>, Cmp> heap_;
  std::int64_t next_index_ = 0;
};

// NabStream filtered to even total weight, reindexed from 0.
class M2Stream {
 public:
  explicit M2Stream(ActionPair gens) : inner_(std::move(gens)) {}
  SpectrumEntry next();

 private:
  NabStream inner_;
  std::int64_t next_index_ = 0;
};

std::vector<SpectrumEntry> nab_stream(const ActionPair& gens,
                                      std::int64_t count);
std::vector<SpectrumEntry> m2_stream(const ActionPair& gens,
                                     std::int64_t count);
// The ECH spectrum of the ellipsoid with axes x, y: alias of nab_stream.
std::vector<SpectrumEntry> ellipsoid_spectrum(const ActionPair& gens,
                                              std::int64_t count);
// M2 stream over the Katok generators, each entry annotated with the
// absolute grading of its orbit set in the even homology class.
std::vector<SpectrumEntry> katok_spectrum(const Param& param,
                                          std::int64_t count);

}  // namespace ech
