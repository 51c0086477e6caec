#pragma once

// The 3/2/3 reference autoencoder used as a golden test throughout:
//   encoder  f0 = [x0 + x1 - x2 >= 1],  f1 = [x2 >= 1]
//   decoder  g0 = [z0 + z1 >= 1],  g1 = [z0 + z1 >= 2],  g2 = [z1 >= 1]
// It recovers {000, 100, 101, 111} exactly.

#include "btn/codec.hpp"
#include "btn/net.hpp"
#include "btn/vector_set.hpp"

namespace btn::testing {

inline LayeredNet reference_encoder() {
  LayeredNet net;
  net.input_dim = 3;
  net.layers = {{
      ThresholdUnit{{1, 1, -1}, 1},
      ThresholdUnit{{0, 0, 1}, 1},
  }};
  return net;
}

inline LayeredNet reference_decoder() {
  LayeredNet net;
  net.input_dim = 2;
  net.layers = {{
      ThresholdUnit{{1, 1}, 1},
      ThresholdUnit{{1, 1}, 2},
      ThresholdUnit{{0, 1}, 1},
  }};
  return net;
}

inline LayeredNet reference_autoencoder() {
  LayeredNet net = reference_encoder();
  net.layers.push_back(reference_decoder().layers[0]);
  return net;
}

inline VectorSet reference_vectors() {
  return make_vector_set({
      BitVec::from_string("000"),
      BitVec::from_string("100"),
      BitVec::from_string("101"),
      BitVec::from_string("111"),
  });
}

inline CodecBundle reference_bundle() {
  CodecBundle bundle;
  bundle.mode = CodecMode::perfect;
  bundle.n = 4;
  bundle.dim = 3;
  bundle.code_dim = 2;
  bundle.block_size = 2;
  bundle.encoder = reference_encoder();
  bundle.decoder = reference_decoder();
  return bundle;
}

// Truth table rows: input, middle, output.
struct ReferenceRow {
  const char* input;
  const char* middle;
  const char* output;
};

inline constexpr ReferenceRow kReferenceTable[] = {
    {"000", "00", "000"},
    {"100", "10", "100"},
    {"101", "01", "101"},
    {"111", "11", "111"},
};

} // namespace btn::testing
