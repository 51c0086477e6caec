#include "btn/netlist_io.hpp"

#include <charconv>
#include <stdexcept>

namespace btn {

namespace {

std::string_view next_line(std::string_view text, std::size_t& pos) {
  if (pos >= text.size())
    throw std::runtime_error("netlist: unexpected end of input");
  std::size_t nl = text.find('\n', pos);
  if (nl == std::string_view::npos)
    throw std::runtime_error("netlist: line without trailing newline");
  std::string_view line = text.substr(pos, nl - pos);
  pos = nl + 1;
  return line;
}

// Strict token scan: single spaces, no leading/trailing blanks.
class TokenScanner {
public:
  explicit TokenScanner(std::string_view line) : line_(line) {}

  std::string_view next() {
    if (pos_ > line_.size())
      throw std::runtime_error("netlist: missing token in line '" + std::string(line_) + "'");
    std::size_t sp = line_.find(' ', pos_);
    std::size_t end = sp == std::string_view::npos ? line_.size() : sp;
    if (end == pos_)
      throw std::runtime_error("netlist: empty token in line '" + std::string(line_) + "'");
    std::string_view tok = line_.substr(pos_, end - pos_);
    pos_ = end + 1;
    return tok;
  }

  bool done() const { return pos_ == line_.size() + 1 || (pos_ == 0 && line_.empty()); }

  void expect_done() const {
    if (!done())
      throw std::runtime_error("netlist: trailing content in line '" + std::string(line_) + "'");
  }

private:
  std::string_view line_;
  std::size_t pos_ = 0;
};

std::int64_t parse_int(std::string_view tok) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size())
    throw std::runtime_error("netlist: bad integer '" + std::string(tok) + "'");
  return v;
}

std::uint64_t parse_uint(std::string_view tok) {
  std::int64_t v = parse_int(tok);
  if (v < 0)
    throw std::runtime_error("netlist: expected nonnegative integer, got '" + std::string(tok) + "'");
  return static_cast<std::uint64_t>(v);
}

} // namespace

std::string netlist_to_text(const LayeredNet& net) {
  std::string out = "BTN 1 " + std::to_string(net.input_dim) + "\n";
  for (const Layer& layer : net.layers) {
    out += "LAYER " + std::to_string(layer.size()) + "\n";
    for (const ThresholdUnit& u : layer) {
      out += "UNIT " + std::to_string(u.theta);
      for (std::int64_t w : u.weights) {
        out += ' ';
        out += std::to_string(w);
      }
      out += '\n';
    }
  }
  return out;
}

LayeredNet netlist_from_text(std::string_view text, std::size_t& pos) {
  LayeredNet net;
  {
    TokenScanner header(next_line(text, pos));
    if (header.next() != "BTN")
      throw std::runtime_error("netlist: missing BTN header");
    if (header.next() != "1")
      throw std::runtime_error("netlist: unsupported format version");
    net.input_dim = parse_uint(header.next());
    header.expect_done();
    if (net.input_dim == 0)
      throw std::runtime_error("netlist: input_dim must be positive");
  }
  std::size_t prev_width = net.input_dim;
  while (pos < text.size() && text.substr(pos, 6) == "LAYER ") {
    TokenScanner head(next_line(text, pos));
    head.next(); // LAYER
    std::uint64_t count = parse_uint(head.next());
    head.expect_done();
    if (count == 0)
      throw std::runtime_error("netlist: LAYER with zero units");
    Layer layer;
    layer.reserve(count);
    for (std::uint64_t u = 0; u < count; ++u) {
      TokenScanner scan(next_line(text, pos));
      if (scan.next() != "UNIT")
        throw std::runtime_error("netlist: expected UNIT line");
      ThresholdUnit unit;
      unit.theta = parse_int(scan.next());
      unit.weights.reserve(prev_width);
      for (std::size_t w = 0; w < prev_width; ++w)
        unit.weights.push_back(parse_int(scan.next()));
      scan.expect_done();
      layer.push_back(std::move(unit));
    }
    prev_width = layer.size();
    net.layers.push_back(std::move(layer));
  }
  if (net.layers.empty())
    throw std::runtime_error("netlist: no layers");
  return net;
}

LayeredNet netlist_from_text(std::string_view text) {
  std::size_t pos = 0;
  LayeredNet net = netlist_from_text(text, pos);
  if (pos != text.size())
    throw std::runtime_error("netlist: trailing content after last layer");
  return net;
}

} // namespace btn
