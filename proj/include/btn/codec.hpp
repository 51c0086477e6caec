#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "btn/bitvec.hpp"
#include "btn/net.hpp"

namespace btn {

enum class CodecMode { perfect, approx, approx_uncorrected };

std::string to_string(CodecMode mode);
CodecMode codec_mode_from_string(std::string_view s);

/// Compiled encoder/decoder pair plus construction metadata.
///
/// The decoder maps the code_dim-bit code of index k back to vector k. The
/// encoder is present only when the source vectors are pairwise distinct
/// (duplicates admit no injective encoder); verification falls back to the
/// positional code assignment when it is absent.
struct CodecBundle {
  CodecMode mode = CodecMode::perfect;
  std::size_t n = 0;          // number of vectors
  std::size_t dim = 0;        // vector dimension D
  std::size_t code_dim = 0;   // middle-layer width d = ceil(log2 n)
  std::size_t block_size = 0; // B
  std::optional<LayeredNet> encoder;
  LayeredNet decoder;
  std::optional<BitVec> rare_pattern; // c, corrected approx only
  std::optional<BitVec> mask;         // a, corrected approx only
};

/// Manifest text: a header line
///   CODEC mode=<perfect|approx|approx-uncorrected> n=<n> D=<D> d=<d> B=<B> [c=<bits> a=<bits>]
/// then an ENCODER line with the encoder netlist (omitted when absent), then
/// a DECODER line with the decoder netlist. Round-trips byte-identically.
std::string codec_to_text(const CodecBundle& bundle);

CodecBundle codec_from_text(std::string_view text);

} // namespace btn
