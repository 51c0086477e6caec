#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <set>
#include <stdexcept>

#include "btn/codec_approx.hpp"
#include "btn/codec_perfect.hpp"
#include "btn/verify.hpp"
#include "example_nets.hpp"

using namespace btn;

TEST_CASE("generator is deterministic and distinct") {
  InstanceSpec spec;
  spec.n = 50;
  spec.dim = 9;
  spec.seed = 12345;
  VectorSet a = gen_random_set(spec);
  VectorSet b = gen_random_set(spec);
  CHECK(a.vectors == b.vectors);
  CHECK(a.is_distinct());
  spec.seed = 12346;
  CHECK(gen_random_set(spec).vectors != a.vectors);
}

TEST_CASE("generator output is pinned to splitmix64") {
  // First draw for D <= 64 consumes one word; bit j is word bit j.
  InstanceSpec spec;
  spec.n = 1;
  spec.dim = 8;
  spec.seed = 7;
  SplitMix64 rng{7};
  std::uint64_t word = rng.next();
  BitVec expect(8);
  for (std::size_t j = 0; j < 8; ++j)
    expect.set(j, (word >> j) & 1u);
  CHECK(gen_random_set(spec)[0] == expect);
}

TEST_CASE("full two-bit space comes out as a permutation") {
  InstanceSpec spec;
  spec.n = 4;
  spec.dim = 2;
  spec.seed = 3;
  VectorSet x = gen_random_set(spec);
  std::set<std::string> seen;
  for (const BitVec& v : x.vectors)
    seen.insert(v.to_string());
  CHECK(seen == std::set<std::string>{"00", "01", "10", "11"});
}

TEST_CASE("generator rejects infeasible and empty requests") {
  InstanceSpec spec;
  spec.n = 5;
  spec.dim = 2;
  CHECK_THROWS_AS(gen_random_set(spec), std::invalid_argument);
  spec.n = 0;
  CHECK_THROWS_AS(gen_random_set(spec), std::invalid_argument);
}

TEST_CASE("adversarial generator tiles the pattern down every column") {
  InstanceSpec spec;
  spec.n = 12;
  spec.dim = 5;
  spec.dist = Distribution::adversarial_pattern;
  spec.pattern = BitVec::from_string("011");
  VectorSet x = gen_random_set(spec);
  for (std::size_t j = 0; j < x.dim(); ++j)
    for (std::size_t i = 0; i < 4; ++i)
      CHECK(block_pattern(x, 3, j, i).to_string() == "011");
}

TEST_CASE("verify_perfect reports zero error for the reference codec") {
  ErrorReport report = verify_perfect(testing::reference_bundle(), testing::reference_vectors());
  CHECK(report.total == 0);
  CHECK(report.avg_num == 0);
  CHECK(report.satisfied);
}

TEST_CASE("verify_perfect detects a corrupted weight") {
  CodecBundle bundle = testing::reference_bundle();
  bundle.decoder.layers[0][2].weights[1] = -1; // g2 loses its z1 input
  ErrorReport report = verify_perfect(bundle, testing::reference_vectors());
  CHECK(report.total > 0);
  CHECK_FALSE(report.satisfied);
}

TEST_CASE("every single data-weight flip in a perfect decoder is caught") {
  InstanceSpec spec;
  spec.n = 16;
  spec.dim = 8;
  spec.seed = 404;
  VectorSet x = gen_random_set(spec);
  CodecBundle bundle = build_perfect_decoder(x, 4);
  const std::size_t gate_layer = bundle.decoder.layers.size() - 2;
  const std::size_t num_blocks = 4;
  std::size_t mutations = 0;
  for (std::size_t u = 0; u < bundle.decoder.layers[gate_layer].size(); ++u) {
    for (std::size_t i = 0; i < num_blocks; ++i) {
      CodecBundle mutated = bundle;
      std::int64_t& w = mutated.decoder.layers[gate_layer][u].weights[i];
      w = 1 - w;
      ++mutations;
      CHECK(verify_perfect(mutated, x).total > 0);
    }
  }
  CHECK(mutations == 8 * 4 * num_blocks);
}

TEST_CASE("measure_error carries the error bound as a reduced rational") {
  InstanceSpec spec;
  spec.n = 24;
  spec.dim = 24;
  spec.seed = 9;
  VectorSet x = gen_random_set(spec);
  CodecBundle bundle = build_approx_decoder(x, 3);
  ErrorReport report = measure_error(bundle, x);
  // D(1/(B*2^B) + 1/n) = 24*(1/24 + 1/24) = 2
  CHECK(report.bound_num == 2);
  CHECK(report.bound_den == 1);
  CHECK(report.satisfied);
  CHECK(report.avg_den != 0);
  CHECK(report.total == [&] {
    std::uint64_t t = 0;
    for (std::uint64_t d : report.per_vector)
      t += d;
    return t;
  }());
}

TEST_CASE("error report renders exact rationals") {
  ErrorReport report;
  report.per_vector = {0, 2, 1};
  report.total = 3;
  report.avg_num = 1;
  report.avg_den = 1;
  report.bound_num = 5;
  report.bound_den = 4;
  report.satisfied = true;
  CHECK(render_error_report(report) == "k 0 dist 0\n"
                                       "k 1 dist 2\n"
                                       "k 2 dist 1\n"
                                       "avg 1/1 bound 5/4 ok 1\n");
}

TEST_CASE("adversarial all-011 instance: corrected exact, uncorrected D/3") {
  InstanceSpec spec;
  spec.n = 12;
  spec.dim = 6;
  spec.dist = Distribution::adversarial_pattern;
  spec.pattern = BitVec::from_string("011");
  VectorSet x = gen_random_set(spec);

  CodecBundle corrected = build_approx_decoder(x, 3);
  CHECK(measure_error(corrected, x).total == 0);

  CodecBundle uncorrected = build_uncorrected_decoder(x, 3);
  ErrorReport report = measure_error(uncorrected, x);
  // Every block start takes D flipped bits: total = (n/3) * D.
  CHECK(report.total == 4 * 6);
  for (std::size_t k = 0; k < x.count(); ++k)
    CHECK(report.per_vector[k] == (k % 3 == 0 ? 6 : 0));
}

TEST_CASE("oracle equivalence accepts correct bundles") {
  InstanceSpec spec;
  spec.n = 32;
  spec.dim = 11;
  spec.seed = 31;
  VectorSet x = gen_random_set(spec);
  for (std::size_t block : {3, 4}) {
    CHECK(oracle_equivalence(build_approx_decoder(x, block), x).equivalent);
    CHECK(oracle_equivalence(build_uncorrected_decoder(x, block), x).equivalent);
  }
  // Single block: n = B.
  InstanceSpec tiny;
  tiny.n = 4;
  tiny.dim = 5;
  tiny.seed = 8;
  VectorSet t = gen_random_set(tiny);
  CHECK(oracle_equivalence(build_approx_decoder(t, 4), t).equivalent);
}

TEST_CASE("oracle equivalence locates a perturbed vote threshold") {
  // Columns carry every 3-bit pattern so that some vote sum hits 0 exactly.
  std::vector<BitVec> vectors;
  for (std::size_t k = 0; k < 3; ++k) {
    BitVec v(8);
    for (std::size_t j = 0; j < 8; ++j)
      v.set(j, (j >> (2 - k)) & 1u);
    vectors.push_back(std::move(v));
  }
  VectorSet probe = make_vector_set(std::move(vectors));
  CodecBundle bundle = build_approx_decoder(probe, 3);
  REQUIRE(oracle_equivalence(bundle, probe).equivalent);

  // Column 7 is the all-ones pattern; its h=0 vote sums to exactly zero at
  // residue 0, so raising the threshold flips the decoded bit there.
  const std::size_t vote_layer = bundle.decoder.layers.size() - 4;
  bundle.decoder.layers[vote_layer][7 * 2 + 0].theta = 1;
  OracleResult result = oracle_equivalence(bundle, probe);
  REQUIRE_FALSE(result.equivalent);
  CHECK(result.mismatch_k == 0);
  CHECK(result.mismatch_j == 7);
}

TEST_CASE("oracle equivalence rejects perfect bundles and foreign sets") {
  VectorSet x = testing::reference_vectors();
  CodecBundle perfect = build_perfect_decoder(x, 2);
  CHECK_THROWS_AS(oracle_equivalence(perfect, x), std::invalid_argument);

  InstanceSpec spec;
  spec.n = 12;
  spec.dim = 4;
  spec.seed = 2;
  VectorSet a = gen_random_set(spec);
  spec.seed = 3;
  VectorSet b = gen_random_set(spec);
  CodecBundle bundle = build_approx_decoder(a, 3);
  ErrorReport unused = measure_error(bundle, a);
  (void)unused;
  bool threw_or_unequal = false;
  try {
    threw_or_unequal = !oracle_equivalence(bundle, b).equivalent;
  } catch (const std::invalid_argument&) {
    threw_or_unequal = true;
  }
  CHECK(threw_or_unequal);
}

TEST_CASE("monte carlo stats are deterministic per seed base") {
  MonteCarloStats a = uncorrected_error_stats(48, 8, 3, 6, 900);
  MonteCarloStats b = uncorrected_error_stats(48, 8, 3, 6, 900);
  CHECK(a.runs == 6);
  CHECK(a.mean == b.mean);
  CHECK(a.std_error == b.std_error);
  CHECK(a.mean >= 0.0);
  CHECK(a.std_error >= 0.0);
  CHECK_THROWS_AS(uncorrected_error_stats(48, 8, 3, 1, 900), std::invalid_argument);
}

TEST_CASE("worker count respects BTN_THREADS") {
  CHECK(verify_workers(10) == 1); // small jobs stay sequential
  setenv("BTN_THREADS", "1", 1);
  CHECK(verify_workers(100000) == 1);
  unsetenv("BTN_THREADS");
  CHECK(verify_workers(100000) >= 1);
}

TEST_CASE("fan-out width does not change the measurement") {
  InstanceSpec spec;
  spec.n = 512;
  spec.dim = 12;
  spec.seed = 77;
  VectorSet x = gen_random_set(spec);
  CodecBundle bundle = build_approx_decoder(x, 4);
  setenv("BTN_THREADS", "1", 1);
  ErrorReport sequential = measure_error(bundle, x);
  unsetenv("BTN_THREADS");
  ErrorReport parallel = measure_error(bundle, x);
  CHECK(sequential.per_vector == parallel.per_vector);
  CHECK(sequential.avg_num == parallel.avg_num);
  CHECK(sequential.satisfied == parallel.satisfied);
}
