#pragma once

#include <cstdint>
#include <vector>

#include "btn/bitvec.hpp"

namespace btn {

/// A single threshold unit: fires iff weights . input >= theta.
struct ThresholdUnit {
  std::vector<std::int64_t> weights;
  std::int64_t theta = 0;

  bool operator==(const ThresholdUnit&) const = default;
};

using Layer = std::vector<ThresholdUnit>;

/// Feed-forward network of threshold units. layers[0] reads the input
/// vector; layer i>0 reads the activations of layer i-1; the last layer is
/// the output layer.
struct LayeredNet {
  std::size_t input_dim = 0;
  std::vector<Layer> layers;

  bool operator==(const LayeredNet&) const = default;
};

/// size: node count excluding the input layer.
/// depth: layer count minus one, counting the input layer.
/// width: max nodes per layer excluding input and output layers.
struct NetMetrics {
  std::size_t size = 0;
  std::size_t depth = 0;
  std::size_t width = 0;
};

int eval_unit(const ThresholdUnit& unit, const BitVec& input);

BitVec eval_net(const LayeredNet& net, const BitVec& input);

/// Preprocessed evaluator for bulk runs. Units of a layer that share a
/// weight vector are grouped so the weighted sum is computed once per group
/// and only compared against each member's threshold; per group the sum
/// runs over either the nonzero weights or the active inputs, whichever is
/// fewer. Holds a reference to the net, which must outlive it. Produces the
/// same outputs as eval_net; eval is const and safe to call from several
/// threads at once.
class CompiledNet {
public:
  explicit CompiledNet(const LayeredNet& net);

  BitVec eval(const BitVec& input) const;
  std::vector<BitVec> eval_trace(const BitVec& input) const;

private:
  struct SparseTerm {
    std::uint32_t index;
    std::int64_t weight;
  };
  struct Member {
    std::uint32_t unit;
    std::int64_t theta;
  };
  struct WeightClass {
    std::vector<SparseTerm> terms;
    const std::vector<std::int64_t>* dense; // weights of the first member
    std::vector<Member> members;
  };

  struct Scratch;
  void run(const BitVec& input, Scratch& s, std::vector<BitVec>* trace) const;

  const LayeredNet& net_;
  std::vector<std::vector<WeightClass>> layers_;
  std::vector<std::size_t> widths_;
};

/// Layer-by-layer activations, one BitVec per layer (output last).
std::vector<BitVec> eval_net_trace(const LayeredNet& net, const BitVec& input);

NetMetrics metrics(const LayeredNet& net);

/// Throws if any unit's weight count does not match the width of the layer
/// it reads from.
void validate_net(const LayeredNet& net);

/// Unit that fires exactly when the dim-bit input encodes value (most
/// significant bit first): weight +1 where the target bit is 1, -1 where it
/// is 0, theta = popcount(value).
ThresholdUnit make_equality_recognizer(std::uint64_t value, std::size_t dim);

/// Unit that fires exactly on input == v.
ThresholdUnit make_vector_recognizer(const BitVec& v);

} // namespace btn
