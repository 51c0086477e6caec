#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "btn/bounds.hpp"
#include "btn/codec.hpp"
#include "btn/codec_approx.hpp"
#include "btn/codec_perfect.hpp"
#include "btn/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw std::runtime_error("cannot open input file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Write-then-rename so a failed run never leaves a truncated output file.
void write_file_atomic(const std::string& path, const std::string& content) {
  std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out)
      throw std::runtime_error("cannot open output file '" + tmp.string() + "'");
    out << content;
    if (!out)
      throw std::runtime_error("write failed for '" + tmp.string() + "'");
  }
  std::filesystem::rename(tmp, target);
}

struct GenOptions {
  std::size_t n = 0;
  std::size_t dim = 0;
  std::uint64_t seed = 0;
  std::string adversarial; // block pattern bits; empty means uniform
  std::string out;
};

int run_gen(const GenOptions& opt) {
  btn::InstanceSpec spec;
  spec.n = opt.n;
  spec.dim = opt.dim;
  spec.seed = opt.seed;
  if (!opt.adversarial.empty()) {
    spec.dist = btn::Distribution::adversarial_pattern;
    spec.pattern = btn::BitVec::from_string(opt.adversarial);
  }
  write_file_atomic(opt.out, btn::vector_set_to_text(btn::gen_random_set(spec)));
  return kExitOk;
}

struct BuildOptions {
  std::string in;
  std::string out;
  std::string mode = "perfect";
  std::optional<std::size_t> block_size;
};

std::size_t default_block_size(const btn::VectorSet& x, bool approx) {
  std::size_t b = x.count() > x.dim() ? btn::optimal_block_size(x.count(), x.dim()) : 2;
  if (approx && b < 3)
    b = 3;
  return b;
}

int run_build(const BuildOptions& opt) {
  btn::VectorSet x = btn::vector_set_from_text(read_file(opt.in));
  btn::CodecMode mode = btn::codec_mode_from_string(opt.mode);
  bool approx = mode != btn::CodecMode::perfect;
  std::size_t block = opt.block_size ? *opt.block_size : default_block_size(x, approx);

  btn::CodecBundle bundle;
  switch (mode) {
  case btn::CodecMode::perfect:
    bundle = btn::build_perfect_decoder(x, block);
    break;
  case btn::CodecMode::approx:
    bundle = btn::build_approx_decoder(x, block);
    break;
  case btn::CodecMode::approx_uncorrected:
    bundle = btn::build_uncorrected_decoder(x, block);
    break;
  }
  write_file_atomic(opt.out, btn::codec_to_text(bundle));
  return kExitOk;
}

struct EvalOptions {
  std::string in;
  std::string bits;
  bool trace = false;
};

int run_eval(const EvalOptions& opt) {
  btn::CodecBundle bundle = btn::codec_from_text(read_file(opt.in));
  btn::BitVec input = btn::BitVec::from_string(opt.bits);

  const btn::LayeredNet* net = nullptr;
  btn::BitVec code;
  if (input.dim() == bundle.code_dim) {
    net = &bundle.decoder;
    code = input;
  } else if (input.dim() == bundle.dim) {
    if (!bundle.encoder)
      throw std::runtime_error("bundle has no encoder; pass a " +
                               std::to_string(bundle.code_dim) + "-bit code");
    if (opt.trace)
      for (const btn::BitVec& layer : btn::eval_net_trace(*bundle.encoder, input))
        std::cout << "encoder " << layer.to_string() << "\n";
    net = &bundle.decoder;
    code = btn::eval_net(*bundle.encoder, input);
  } else {
    throw std::runtime_error("input length " + std::to_string(input.dim()) +
                             " matches neither d=" + std::to_string(bundle.code_dim) +
                             " nor D=" + std::to_string(bundle.dim));
  }

  if (opt.trace) {
    std::vector<btn::BitVec> layers = btn::eval_net_trace(*net, code);
    for (const btn::BitVec& layer : layers)
      std::cout << "decoder " << layer.to_string() << "\n";
    std::cout << layers.back().to_string() << "\n";
  } else {
    std::cout << btn::eval_net(*net, code).to_string() << "\n";
  }
  return kExitOk;
}

struct VerifyOptions {
  std::string in;
  std::string vectors;
};

int run_verify(const VerifyOptions& opt) {
  btn::CodecBundle bundle = btn::codec_from_text(read_file(opt.in));
  btn::VectorSet x = btn::vector_set_from_text(read_file(opt.vectors));
  btn::ErrorReport report = bundle.mode == btn::CodecMode::perfect
                                ? btn::verify_perfect(bundle, x)
                                : btn::measure_error(bundle, x);
  std::cout << btn::render_error_report(report);
  return report.satisfied ? kExitOk : kExitViolation;
}

struct BoundsOptions {
  std::size_t n = 0;
  std::size_t dim = 0;
  std::optional<std::size_t> code_dim;
  std::optional<std::size_t> block_size;
};

int run_bounds(const BoundsOptions& opt) {
  std::size_t d = opt.code_dim ? *opt.code_dim : btn::code_dim(opt.n);
  std::size_t b = opt.block_size
                      ? *opt.block_size
                      : (opt.n > opt.dim ? btn::optimal_block_size(opt.n, opt.dim) : 2);
  std::cout << btn::render_bounds_report(btn::make_bounds_report(opt.n, opt.dim, d, b));
  return kExitOk;
}

struct ExportOptions {
  std::string in;
  std::string out;
};

int run_export(const ExportOptions& opt) {
  std::string text = read_file(opt.in);
  btn::CodecBundle bundle = btn::codec_from_text(text);
  std::string serialized = btn::codec_to_text(bundle);
  if (serialized != text)
    throw std::runtime_error("manifest did not round-trip byte-identically");
  write_file_atomic(opt.out, serialized);
  return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Boolean threshold network autoencoder toolkit"};
  app.require_subcommand(1);

  GenOptions gen;
  CLI::App* gen_cmd = app.add_subcommand("gen", "generate a vector-set file");
  gen_cmd->add_option("--n", gen.n, "number of vectors")->required();
  gen_cmd->add_option("--D", gen.dim, "vector dimension")->required();
  gen_cmd->add_option("--seed", gen.seed, "generator seed")->default_val(0);
  gen_cmd->add_option("--adversarial", gen.adversarial,
                      "tile this block pattern down every column instead of sampling");
  gen_cmd->add_option("--out", gen.out, "output vector-set file")->required();

  BuildOptions build;
  CLI::App* build_cmd = app.add_subcommand("build", "compile a vector set into a codec");
  build_cmd->add_option("--in", build.in, "input vector-set file")->required();
  build_cmd->add_option("--mode", build.mode, "perfect, approx, or approx-uncorrected")
      ->check(CLI::IsMember({"perfect", "approx", "approx-uncorrected"}));
  std::size_t build_b = 0;
  CLI::Option* build_b_opt = build_cmd->add_option("--B", build_b, "block size");
  build_cmd->add_option("--out", build.out, "output codec manifest")->required();

  EvalOptions eval;
  CLI::App* eval_cmd = app.add_subcommand("eval", "run a codec on a code or vector");
  eval_cmd->add_option("--in", eval.in, "codec manifest")->required();
  eval_cmd->add_option("bits", eval.bits, "d-bit code to decode, or D-bit vector to round-trip")
      ->required();
  eval_cmd->add_flag("--trace", eval.trace, "print every layer's activations");

  VerifyOptions verify;
  CLI::App* verify_cmd = app.add_subcommand("verify", "measure decode error over a vector set");
  verify_cmd->add_option("--in", verify.in, "codec manifest")->required();
  verify_cmd->add_option("--vectors", verify.vectors, "vector-set file")->required();

  BoundsOptions bounds;
  CLI::App* bounds_cmd = app.add_subcommand("bounds", "print the size/width bound report");
  bounds_cmd->add_option("--n", bounds.n, "number of vectors")->required();
  bounds_cmd->add_option("--D", bounds.dim, "vector dimension")->required();
  std::size_t bounds_d = 0, bounds_b = 0;
  CLI::Option* bounds_d_opt = bounds_cmd->add_option("--d", bounds_d, "code width");
  CLI::Option* bounds_b_opt = bounds_cmd->add_option("--B", bounds_b, "block size");

  ExportOptions exp;
  CLI::App* export_cmd = app.add_subcommand("export", "round-trip a codec manifest");
  export_cmd->add_option("--in", exp.in, "input manifest")->required();
  export_cmd->add_option("--out", exp.out, "output manifest")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*gen_cmd)
      return run_gen(gen);
    if (*build_cmd) {
      if (*build_b_opt)
        build.block_size = build_b;
      return run_build(build);
    }
    if (*eval_cmd)
      return run_eval(eval);
    if (*verify_cmd)
      return run_verify(verify);
    if (*bounds_cmd) {
      if (*bounds_d_opt)
        bounds.code_dim = bounds_d;
      if (*bounds_b_opt)
        bounds.block_size = bounds_b;
      return run_bounds(bounds);
    }
    if (*export_cmd)
      return run_export(exp);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
