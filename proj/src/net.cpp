#include "btn/net.hpp"

#include <map>
#include <stdexcept>
#include <string>

namespace btn {

namespace {

struct Activation {
  std::vector<std::uint8_t> bits;
  std::vector<std::uint32_t> active; // indices of set bits
};

void run_layer(const Layer& layer, const Activation& in, Activation& out) {
  out.bits.assign(layer.size(), 0);
  out.active.clear();
  for (std::size_t u = 0; u < layer.size(); ++u) {
    const ThresholdUnit& unit = layer[u];
    if (unit.weights.size() != in.bits.size())
      throw std::invalid_argument("eval_net: unit expects " +
                                  std::to_string(unit.weights.size()) + " inputs, layer has " +
                                  std::to_string(in.bits.size()));
    std::int64_t sum = 0;
    for (std::uint32_t i : in.active)
      sum += unit.weights[i];
    if (sum >= unit.theta) {
      out.bits[u] = 1;
      out.active.push_back(static_cast<std::uint32_t>(u));
    }
  }
}

Activation from_bitvec(const BitVec& v) {
  Activation a;
  a.bits = v.raw();
  for (std::size_t i = 0; i < a.bits.size(); ++i)
    if (a.bits[i])
      a.active.push_back(static_cast<std::uint32_t>(i));
  return a;
}

BitVec to_bitvec(const Activation& a) {
  BitVec v(a.bits.size());
  for (std::uint32_t i : a.active)
    v.set(i, 1);
  return v;
}

} // namespace

int eval_unit(const ThresholdUnit& unit, const BitVec& input) {
  if (unit.weights.size() != input.dim())
    throw std::invalid_argument("eval_unit: unit expects " +
                                std::to_string(unit.weights.size()) + " inputs, got " +
                                std::to_string(input.dim()));
  std::int64_t sum = 0;
  for (std::size_t i = 0; i < input.dim(); ++i)
    if (input[i])
      sum += unit.weights[i];
  return sum >= unit.theta ? 1 : 0;
}

BitVec eval_net(const LayeredNet& net, const BitVec& input) {
  if (input.dim() != net.input_dim)
    throw std::invalid_argument("eval_net: input dim " + std::to_string(input.dim()) +
                                " does not match net input dim " +
                                std::to_string(net.input_dim));
  Activation cur = from_bitvec(input);
  Activation next;
  for (const Layer& layer : net.layers) {
    run_layer(layer, cur, next);
    std::swap(cur, next);
  }
  return to_bitvec(cur);
}

std::vector<BitVec> eval_net_trace(const LayeredNet& net, const BitVec& input) {
  if (input.dim() != net.input_dim)
    throw std::invalid_argument("eval_net: input dim " + std::to_string(input.dim()) +
                                " does not match net input dim " +
                                std::to_string(net.input_dim));
  std::vector<BitVec> trace;
  trace.reserve(net.layers.size());
  Activation cur = from_bitvec(input);
  Activation next;
  for (const Layer& layer : net.layers) {
    run_layer(layer, cur, next);
    std::swap(cur, next);
    trace.push_back(to_bitvec(cur));
  }
  return trace;
}

struct CompiledNet::Scratch {
  std::vector<std::uint8_t> bits, next_bits;
  std::vector<std::uint32_t> active, next_active;
};

CompiledNet::CompiledNet(const LayeredNet& net) : net_(net) {
  validate_net(net);
  layers_.reserve(net.layers.size());
  widths_.reserve(net.layers.size());
  for (const Layer& layer : net.layers) {
    std::map<std::vector<std::int64_t>, std::size_t> classes;
    std::vector<WeightClass> compiled;
    for (std::size_t u = 0; u < layer.size(); ++u) {
      const ThresholdUnit& unit = layer[u];
      auto [it, inserted] = classes.emplace(unit.weights, compiled.size());
      if (inserted) {
        WeightClass c;
        c.dense = &unit.weights;
        for (std::size_t i = 0; i < unit.weights.size(); ++i)
          if (unit.weights[i] != 0)
            c.terms.push_back({static_cast<std::uint32_t>(i), unit.weights[i]});
        compiled.push_back(std::move(c));
      }
      compiled[it->second].members.push_back({static_cast<std::uint32_t>(u), unit.theta});
    }
    layers_.push_back(std::move(compiled));
    widths_.push_back(layer.size());
  }
}

void CompiledNet::run(const BitVec& input, Scratch& s, std::vector<BitVec>* trace) const {
  if (input.dim() != net_.input_dim)
    throw std::invalid_argument("eval: input dim " + std::to_string(input.dim()) +
                                " does not match net input dim " +
                                std::to_string(net_.input_dim));
  s.bits = input.raw();
  s.active.clear();
  for (std::size_t i = 0; i < s.bits.size(); ++i)
    if (s.bits[i])
      s.active.push_back(static_cast<std::uint32_t>(i));

  for (std::size_t l = 0; l < layers_.size(); ++l) {
    s.next_bits.assign(widths_[l], 0);
    s.next_active.clear();
    for (const WeightClass& c : layers_[l]) {
      std::int64_t sum = 0;
      if (c.terms.size() <= s.active.size()) {
        for (const SparseTerm& t : c.terms)
          if (s.bits[t.index])
            sum += t.weight;
      } else {
        const std::vector<std::int64_t>& w = *c.dense;
        for (std::uint32_t i : s.active)
          sum += w[i];
      }
      for (const Member& m : c.members)
        if (sum >= m.theta)
          s.next_bits[m.unit] = 1;
    }
    for (std::size_t u = 0; u < widths_[l]; ++u)
      if (s.next_bits[u])
        s.next_active.push_back(static_cast<std::uint32_t>(u));
    std::swap(s.bits, s.next_bits);
    std::swap(s.active, s.next_active);
    if (trace) {
      BitVec v(s.bits.size());
      for (std::uint32_t i : s.active)
        v.set(i, 1);
      trace->push_back(std::move(v));
    }
  }
}

BitVec CompiledNet::eval(const BitVec& input) const {
  Scratch s;
  run(input, s, nullptr);
  BitVec v(s.bits.size());
  for (std::uint32_t i : s.active)
    v.set(i, 1);
  return v;
}

std::vector<BitVec> CompiledNet::eval_trace(const BitVec& input) const {
  Scratch s;
  std::vector<BitVec> trace;
  trace.reserve(layers_.size());
  run(input, s, &trace);
  return trace;
}

NetMetrics metrics(const LayeredNet& net) {
  NetMetrics m;
  m.depth = net.layers.size();
  for (const Layer& layer : net.layers)
    m.size += layer.size();
  for (std::size_t i = 0; i + 1 < net.layers.size(); ++i)
    m.width = std::max(m.width, net.layers[i].size());
  return m;
}

void validate_net(const LayeredNet& net) {
  std::size_t prev = net.input_dim;
  for (std::size_t l = 0; l < net.layers.size(); ++l) {
    if (net.layers[l].empty())
      throw std::invalid_argument("net: layer " + std::to_string(l) + " has no units");
    for (const ThresholdUnit& u : net.layers[l])
      if (u.weights.size() != prev)
        throw std::invalid_argument("net: layer " + std::to_string(l) + " unit expects " +
                                    std::to_string(u.weights.size()) + " inputs, previous width is " +
                                    std::to_string(prev));
    prev = net.layers[l].size();
  }
}

ThresholdUnit make_equality_recognizer(std::uint64_t value, std::size_t dim) {
  if (dim == 0 || dim > 62)
    throw std::invalid_argument("equality recognizer: dim must be in [1, 62]");
  if ((value >> dim) != 0)
    throw std::invalid_argument("equality recognizer: value " + std::to_string(value) +
                                " out of range for " + std::to_string(dim) + " bits");
  return make_vector_recognizer(BitVec::from_int(value, dim));
}

ThresholdUnit make_vector_recognizer(const BitVec& v) {
  if (v.dim() == 0)
    throw std::invalid_argument("vector recognizer: empty vector");
  ThresholdUnit u;
  u.weights.resize(v.dim());
  u.theta = 0;
  for (std::size_t i = 0; i < v.dim(); ++i) {
    u.weights[i] = v[i] ? 1 : -1;
    u.theta += v[i];
  }
  return u;
}

} // namespace btn
