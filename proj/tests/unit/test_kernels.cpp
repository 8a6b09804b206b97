#include <random>
#include <vector>

#include <doctest.h>

#include "oracles.hpp"
#include "vtext/kernels.hpp"

using namespace vtext;
namespace k = vtext::kernels;

// The OpenMP kernels must agree bit for bit with the serial reference, for
// any worker count and any frame shape (including ones smaller than a chunk).
TEST_CASE("parallel kernels match the serial reference") {
  std::mt19937_64 rng(31);
  const int saved = k::worker_count();
  for (int workers : {1, 2, 3, 7}) {
    k::set_worker_count(workers);
    for (int trial = 0; trial < 12; ++trial) {
      const int w = 3 + static_cast<int>(rng() % 200);
      const int h = 3 + static_cast<int>(rng() % 150);
      const auto f = oracle::random_frame(rng, w, h, 1 + static_cast<int>(rng() % 256));
      const auto g = oracle::random_frame(rng, w, h);
      const std::size_t n = f.pixels.size();

      REQUIRE(k::histogram(f.pixels) == k::serial::histogram(f.pixels));

      std::vector<float> ms(n), mp(n);
      k::serial::sobel_magnitude(f.pixels, w, h, ms);
      k::sobel_magnitude(f.pixels, w, h, mp);
      REQUIRE(ms == mp);

      const float mx = k::serial::max_value(ms);
      REQUIRE(k::max_value(mp) == mx);

      std::vector<std::uint8_t> qs(n), qp(n);
      k::serial::quantize(ms, mx, qs);
      k::quantize(mp, mx, qp);
      REQUIRE(qs == qp);

      const int t = static_cast<int>(rng() % 256);
      std::vector<std::uint8_t> ts(n), tp(n), us(n), up(n);
      k::serial::threshold(qs, t, ts);
      k::threshold(qp, t, tp);
      REQUIRE(ts == tp);

      std::vector<std::uint8_t> gb(n);
      k::serial::threshold(g.pixels, 127, gb);
      k::serial::and_not(ts, gb, us);
      k::and_not(tp, gb, up);
      REQUIRE(us == up);
    }
  }
  k::set_worker_count(saved);
}

TEST_CASE("quantize maps the maximum to 255 and zero to zero") {
  const std::vector<float> v{0.0f, 0.5f, 1.0f, 2.0f};
  std::vector<std::uint8_t> q(v.size());
  k::serial::quantize(v, 2.0f, q);
  CHECK(q == std::vector<std::uint8_t>{0, 64, 128, 255});
  k::serial::quantize(std::vector<float>(4, 0.0f), 0.0f, q);
  CHECK(q == std::vector<std::uint8_t>(4, 0));
}
