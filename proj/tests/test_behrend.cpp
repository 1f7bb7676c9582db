#include <doctest.h>

#include <algorithm>

#include "ldt/behrend.hpp"
#include "ldt/rng.hpp"
#include "oracles.hpp"

using namespace ldt;
using namespace ldt::behrend;

namespace {

std::uint64_t naive_count(std::uint64_t x, std::uint64_t len, std::uint64_t r, const Params& P) {
  std::uint64_t c = 0;
  for (std::uint64_t y = x; y < x + len; ++y) c += oracle::behrend_member(y, r, P.base(), P.d, P.m);
  return c;
}

std::uint64_t power(std::uint64_t b, unsigned e) {
  std::uint64_t out = 1;
  while (e--) out *= b;
  return out;
}

}  // namespace

TEST_CASE("parameters") {
  const Params a = make_params(65536, 1, 1);
  CHECK(a.p == 4);
  CHECK(a.d == 2);
  CHECK(a.m == 4);
  CHECK(a.base() == 16);
  CHECK(a.digit_bits == 4);
  CHECK(a.r_max == 18);

  const Params b = make_params(256, 1, 1);
  CHECK(b.p == 4);
  CHECK(b.d == 2);
  CHECK(b.m == 4);

  CHECK_THROWS(make_params(3, 1, 1));

  // p is the smallest power of two strictly above gamma + delta.
  CHECK(make_params(4096, 1, 2).p == 4);
  CHECK(make_params(4096, 2, 2).p == 8);
  CHECK(make_params(4096, 2, 3).p == 8);
  CHECK(make_params(4096, 4, 3).p == 8);
  CHECK(make_params(4096, 4, 4).p == 16);

  for (std::uint64_t N : {4ULL, 16ULL, 100ULL, 256ULL, 1000ULL, 4096ULL, 65536ULL, 1ULL << 20, 2000001ULL}) {
    for (auto [g, d] : {std::pair{1, 1}, {1, 2}, {2, 3}, {5, 9}}) {
      if (N < std::bit_ceil(static_cast<std::uint64_t>(g + d + 1))) continue;
      const Params P = make_params(N, g, d);
      INFO(N, " ", g, " ", d);
      CHECK(P.p > static_cast<std::uint64_t>(g + d));
      CHECK(P.p / 2 <= static_cast<std::uint64_t>(g + d));
      CHECK(P.m == power(P.p, P.d - 1));
      CHECK(P.base() == P.p * P.m);
      CHECK(power(P.base(), P.d) <= N);
      CHECK(P.r_max == P.d * (P.m - 1) * (P.m - 1));
      // d = floor(sqrt(log_p N)): p^(d^2) <= N < p^((d+1)^2)
      CHECK(power(P.p, P.d * P.d) <= N);
      const unsigned e = (P.d + 1) * (P.d + 1);
      if (e * std::countr_zero(P.p) < 64) CHECK(power(P.p, e) > N);
    }
  }
}

TEST_CASE("membership") {
  const Params P = make_params(256, 1, 1);
  CHECK(q_membership(17, 2, P));
  for (std::uint64_t r = 0; r <= P.r_max; ++r) CHECK_FALSE(q_membership(5, r, P));
  CHECK(q_membership(0, 0, P));
  CHECK(q_membership(0, 0, make_params(65536, 2, 3)));
  CHECK_FALSE(q_membership(256, 1, P));
  for (std::uint64_t x = 0; x < 1024; ++x) {
    for (std::uint64_t r = 0; r <= P.r_max; ++r) {
      CHECK(q_membership(x, r, P) == oracle::behrend_member(x, r, P.base(), P.d, P.m));
    }
  }
}

TEST_CASE("range counts and sizes") {
  const Params P = make_params(256, 1, 1);
  CHECK(q_count_range(0, 4, 1, P) == 1);
  CHECK(q_count_range(0, 0, 0, P) == 1);
  CHECK(q_size(0, P) == 1);
  CHECK(q_size(1, P) == 2);
  CHECK(enumerate_q(1, P) == std::vector<std::uint64_t>{1, 16});
  std::uint64_t total = 0;
  for (std::uint64_t s : q_sizes(P)) total += s;
  CHECK(total == 16);
  const BestR best = best_r(P);
  CHECK(best.size == 2);
  CHECK(best.r == 1);

  const Params Q = make_params(65536, 1, 1);
  const BestR bq = best_r(Q);
  const auto sizes = q_sizes(Q);
  CHECK(bq.size == *std::max_element(sizes.begin(), sizes.end()));
  CHECK(bq.r == static_cast<std::uint64_t>(std::max_element(sizes.begin(), sizes.end()) - sizes.begin()));
  CHECK(bq.size * (Q.r_max + 1) >= power(Q.m, Q.d));
}

TEST_CASE("sets partition the digit lattice") {
  for (std::uint64_t N : {256ULL, 4096ULL, 65536ULL}) {
    for (auto [g, d] : {std::pair{1, 1}, {1, 2}, {2, 3}}) {
      const Params P = make_params(N, g, d);
      std::vector<int> seen(P.span(), 0);
      std::uint64_t total = 0;
      for (std::uint64_t r = 0; r <= P.r_max; ++r) {
        const auto q = enumerate_q(r, P);
        CHECK(std::is_sorted(q.begin(), q.end()));
        CHECK(q.size() == q_size(r, P));
        for (std::uint64_t x : q) {
          CHECK(q_membership(x, r, P));
          ++seen[x];
        }
        total += q.size();
      }
      CHECK(total == power(P.m, P.d));
      for (std::uint64_t x = 0; x < P.span(); ++x) {
        bool lattice = true;
        for (std::uint64_t y = x, i = 0; i < P.d; ++i, y /= P.base()) lattice = lattice && (y % P.base()) < P.m;
        CHECK(seen[x] == (lattice ? 1 : 0));
      }
    }
  }
}

TEST_CASE("carry DP and prefix counter agree with a naive scan") {
  Rng rng(99);
  for (std::uint64_t N : {256ULL, 4096ULL, 65536ULL, 1ULL << 20}) {
    for (auto [g, d] : {std::pair{1, 1}, {1, 2}, {2, 3}}) {
      const Params P = make_params(N, g, d);
      const PrefixCounter pc(P);
      for (int q = 0; q < 150; ++q) {
        const unsigned k = static_cast<unsigned>(rng.uniform(0, std::min<unsigned>(P.total_bits() + 1, 16)));
        const std::uint64_t x = static_cast<std::uint64_t>(rng.uniform(0, static_cast<Value>(P.span() + 64)));
        const std::uint64_t r = static_cast<std::uint64_t>(rng.uniform(0, static_cast<Value>(P.r_max)));
        const std::uint64_t expect = naive_count(x, std::uint64_t{1} << k, r, P);
        INFO(N, " x=", x, " k=", k, " r=", r);
        CHECK(q_count_range(x, k, r, P) == expect);
        CHECK(pc.count_range(x, k, r) == expect);
        CHECK(q_count_range_all(x, k, P)[r] == expect);
      }
      for (std::uint64_t r = 0; r <= P.r_max; ++r) CHECK(pc.size(r) == q_size(r, P));
    }
  }
}

TEST_CASE("counts beyond the lattice span are zero") {
  const Params P = make_params(65536, 1, 1);
  const PrefixCounter pc(P);
  for (std::uint64_t r = 0; r <= P.r_max; ++r) {
    CHECK(q_count_range(P.span(), 10, r, P) == 0);
    CHECK(q_count_range(0, 40, r, P) == q_size(r, P));
    CHECK(pc.count_range(0, 40, r) == q_size(r, P));
    CHECK(pc.count_below(P.span() * 3, r) == q_size(r, P));
  }
}

TEST_CASE("every Q_r is free") {
  for (std::uint64_t N : {16ULL, 64ULL, 256ULL, 1024ULL}) {
    for (auto [g, d] : {std::pair{1, 1}, {1, 2}, {2, 3}}) {
      const Params P = make_params(N, g, d);
      for (std::uint64_t r = 0; r <= P.r_max; ++r) {
        const auto q = enumerate_q(r, P);
        const std::vector<std::int64_t> S(q.begin(), q.end());
        CHECK_FALSE(oracle::has_violation(S, g, d));
      }
    }
  }
}
