#include "btn/codec.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

#include "btn/netlist_io.hpp"

namespace btn {

std::string to_string(CodecMode mode) {
  switch (mode) {
  case CodecMode::perfect:
    return "perfect";
  case CodecMode::approx:
    return "approx";
  case CodecMode::approx_uncorrected:
    return "approx-uncorrected";
  }
  throw std::logic_error("unknown codec mode");
}

CodecMode codec_mode_from_string(std::string_view s) {
  if (s == "perfect")
    return CodecMode::perfect;
  if (s == "approx")
    return CodecMode::approx;
  if (s == "approx-uncorrected")
    return CodecMode::approx_uncorrected;
  throw std::runtime_error("codec: unknown mode '" + std::string(s) + "'");
}

namespace {

std::string_view take_line(std::string_view text, std::size_t& pos, const char* what) {
  if (pos >= text.size())
    throw std::runtime_error(std::string("codec: missing ") + what);
  std::size_t nl = text.find('\n', pos);
  if (nl == std::string_view::npos)
    throw std::runtime_error(std::string("codec: unterminated ") + what);
  std::string_view line = text.substr(pos, nl - pos);
  pos = nl + 1;
  return line;
}

// key=value field from a space-separated header.
std::string_view take_field(std::string_view& rest, std::string_view key) {
  if (rest.empty())
    throw std::runtime_error("codec: missing field '" + std::string(key) + "'");
  std::size_t sp = rest.find(' ');
  std::string_view field = sp == std::string_view::npos ? rest : rest.substr(0, sp);
  rest = sp == std::string_view::npos ? std::string_view{} : rest.substr(sp + 1);
  if (field.size() < key.size() + 1 || field.substr(0, key.size()) != key ||
      field[key.size()] != '=')
    throw std::runtime_error("codec: expected field '" + std::string(key) + "', got '" +
                             std::string(field) + "'");
  return field.substr(key.size() + 1);
}

std::size_t parse_size(std::string_view tok, const char* what) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size())
    throw std::runtime_error(std::string("codec: bad value for ") + what);
  return static_cast<std::size_t>(v);
}

} // namespace

std::string codec_to_text(const CodecBundle& bundle) {
  std::string out = "CODEC mode=" + to_string(bundle.mode);
  out += " n=" + std::to_string(bundle.n);
  out += " D=" + std::to_string(bundle.dim);
  out += " d=" + std::to_string(bundle.code_dim);
  out += " B=" + std::to_string(bundle.block_size);
  if (bundle.rare_pattern)
    out += " c=" + bundle.rare_pattern->to_string();
  if (bundle.mask)
    out += " a=" + bundle.mask->to_string();
  out += "\nENCODER\n";
  if (bundle.encoder)
    out += netlist_to_text(*bundle.encoder);
  out += "DECODER\n";
  out += netlist_to_text(bundle.decoder);
  return out;
}

CodecBundle codec_from_text(std::string_view text) {
  CodecBundle bundle;
  std::size_t pos = 0;
  {
    std::string_view header = take_line(text, pos, "CODEC header");
    if (header.substr(0, 6) != "CODEC ")
      throw std::runtime_error("codec: missing CODEC header");
    std::string_view rest = header.substr(6);
    bundle.mode = codec_mode_from_string(take_field(rest, "mode"));
    bundle.n = parse_size(take_field(rest, "n"), "n");
    bundle.dim = parse_size(take_field(rest, "D"), "D");
    bundle.code_dim = parse_size(take_field(rest, "d"), "d");
    bundle.block_size = parse_size(take_field(rest, "B"), "B");
    if (bundle.mode == CodecMode::approx) {
      bundle.rare_pattern = BitVec::from_string(take_field(rest, "c"));
      bundle.mask = BitVec::from_string(take_field(rest, "a"));
      if (bundle.rare_pattern->dim() != bundle.block_size ||
          bundle.mask->dim() != bundle.block_size)
        throw std::runtime_error("codec: c/a length does not match B");
    }
    if (!rest.empty())
      throw std::runtime_error("codec: trailing header fields '" + std::string(rest) + "'");
  }
  if (take_line(text, pos, "ENCODER line") != "ENCODER")
    throw std::runtime_error("codec: expected ENCODER line");
  if (pos < text.size() && text.substr(pos, 4) == "BTN ") {
    bundle.encoder = netlist_from_text(text, pos);
    validate_net(*bundle.encoder);
  }
  if (take_line(text, pos, "DECODER line") != "DECODER")
    throw std::runtime_error("codec: expected DECODER line");
  bundle.decoder = netlist_from_text(text, pos);
  validate_net(bundle.decoder);
  if (pos != text.size())
    throw std::runtime_error("codec: trailing content after decoder");
  if (bundle.n == 0 || bundle.dim == 0)
    throw std::runtime_error("codec: n and D must be positive");
  if (bundle.block_size < 2 || bundle.block_size > 32)
    throw std::runtime_error("codec: B must be in [2, 32]");
  std::size_t expected_d = 0;
  while ((std::size_t{1} << expected_d) < bundle.n)
    ++expected_d;
  if (bundle.code_dim != std::max<std::size_t>(expected_d, 1))
    throw std::runtime_error("codec: d must equal ceil(log2 n)");
  if (bundle.decoder.input_dim != bundle.code_dim)
    throw std::runtime_error("codec: decoder input dim does not match d");
  if (bundle.decoder.layers.back().size() != bundle.dim)
    throw std::runtime_error("codec: decoder output dim does not match D");
  if (bundle.encoder && (bundle.encoder->input_dim != bundle.dim ||
                         bundle.encoder->layers.back().size() != bundle.code_dim))
    throw std::runtime_error("codec: encoder dims do not match D/d");
  return bundle;
}

} // namespace btn
