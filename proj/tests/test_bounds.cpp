#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "btn/bounds.hpp"
#include "btn/codec_perfect.hpp"

using namespace btn;

TEST_CASE("size lower bound formula") {
  CHECK(decoder_size_lower_bound(16, 13, 4) == doctest::Approx(4.0));
  CHECK(decoder_size_lower_bound(0, 13, 4) == 0.0);
  CHECK(decoder_size_lower_bound(25, 13, 4) == doctest::Approx(5.0));
  // d = (D-1)/3 exactly: the radicand collapses to 1.
  CHECK(decoder_size_lower_bound(49, 16, 5) == doctest::Approx(std::sqrt(49.0)));
  CHECK(decoder_size_lower_bound(10, 1, 3) == 0.0);
  CHECK_THROWS_AS(decoder_size_lower_bound(10, 5, 0), std::invalid_argument);
}

TEST_CASE("counting inequality is strict and exact") {
  CHECK(counting_inequality_holds(4, 16, 4, 13));       // 68 > 64
  CHECK_FALSE(counting_inequality_holds(0, 16, 4, 13)); // 0 > 64 fails
  // Boundary 3(N + dN^2) == n(D-1) must not pass.
  CHECK_FALSE(counting_inequality_holds(1, 3, 1, 3)); // 6 == 6
  CHECK(counting_inequality_holds(1, 3, 1, 2));       // 6 > 3
  // Large values stay exact.
  CHECK(counting_inequality_holds(1u << 20, 1u << 30, 30, 64));
}

TEST_CASE("size check against the lower bound compares squares") {
  CHECK(meets_size_lower_bound(4, 16, 13, 4));        // equality holds
  CHECK_FALSE(meets_size_lower_bound(3, 16, 13, 4));  // 3 < 4
  CHECK(meets_size_lower_bound(5, 16, 13, 4));
  CHECK(meets_size_lower_bound(0, 0, 13, 4));
}

TEST_CASE("width formulas") {
  CHECK(perfect_width_bound(99, 10, 3) == 36); // max(33+3, 30)
  CHECK(approx_width_bound(99, 10, 3) == 36);  // max(36, 21)
  CHECK(perfect_width_bound(64, 16, 4) == 64); // max(20, 64)
  CHECK(approx_width_bound(64, 16, 4) == 49);  // max(20, 49)
  CHECK_THROWS_AS(perfect_width_bound(99, 10, 1), std::invalid_argument);
  CHECK_THROWS_AS(approx_width_bound(99, 10, 2), std::invalid_argument);
}

TEST_CASE("approx width never exceeds perfect width for B >= 3") {
  // Strictly narrower exactly when the gate layer dominates the selector
  // layer; equal when the selector layer dominates both.
  for (std::size_t n : {16, 64, 256, 1024, 4096})
    for (std::size_t dim : {2, 4, 6, 16, 64})
      for (std::size_t block : {3, 4, 5, 8}) {
        std::uint64_t approx = approx_width_bound(n, dim, block);
        std::uint64_t perfect = perfect_width_bound(n, dim, block);
        CHECK(approx <= perfect);
        std::uint64_t selector = (n + block - 1) / block + block;
        if (selector < std::uint64_t{block} * dim && dim >= 2)
          CHECK(approx < perfect);
        if (selector > std::uint64_t{block} * dim)
          CHECK(approx == perfect);
      }
}

TEST_CASE("square-root block choice keeps width near sqrt(n*D)") {
  for (std::size_t n : {128, 512, 2048, 8192, 65536})
    for (std::size_t dim : {4, 16, 50}) {
      if (n <= dim)
        continue;
      std::size_t block = optimal_block_size(n, dim);
      double width = static_cast<double>(perfect_width_bound(n, dim, block));
      double root = std::sqrt(static_cast<double>(n) * static_cast<double>(dim));
      CHECK(width >= 0.5 * root);
      CHECK(width <= 4.0 * root);
    }
}

TEST_CASE("bounds report carries the closed forms") {
  BoundsReport r = make_bounds_report(16, 13, 4, 2);
  CHECK(r.lower_bound == doctest::Approx(4.0));
  CHECK(r.applicable); // 3*4 <= 12
  CHECK_FALSE(r.meaningful);
  CHECK(r.perfect_width == 26); // max(8+2, 26)
  CHECK_FALSE(r.approx_width.has_value());
  CHECK(r.perfect_size == 10 + 26 + 13);
  CHECK(r.counting_holds);

  std::string text = render_bounds_report(r);
  CHECK(text.find("lower_bound") != std::string::npos);
  CHECK(text.find("= 4\n") != std::string::npos);

  BoundsReport with_approx = make_bounds_report(99, 10, 7, 3);
  REQUIRE(with_approx.approx_width.has_value());
  CHECK(*with_approx.approx_width == 36);
}
