#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "oracles/oracles.hpp"
#include "spdcl/error.hpp"
#include "spdcl/nucnorm.hpp"
#include "support/synthetic.hpp"

using namespace spdcl;
using spdcl::testing::random_matrix;

namespace {

EmbeddingMatrix make(std::size_t rows, std::size_t cols, std::vector<double> values) {
  return EmbeddingMatrix{"m", rows, cols, std::move(values)};
}

bool rel_close(double a, double b, double rel) {
  return std::fabs(a - b) <= rel * std::max({std::fabs(a), std::fabs(b), 1e-300});
}

}  // namespace

TEST_CASE("identity and diagonal spectra") {
  const auto id3 = make(3, 3, {1, 0, 0, 0, 1, 0, 0, 0, 1});
  const auto sv = singular_values(id3).values;
  REQUIRE(sv.size() == 3);
  for (double v : sv) CHECK(v == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(nuclear_norm(id3) == doctest::Approx(3.0).epsilon(1e-14));

  const auto diag = make(2, 2, {3, 0, 0, 4});
  const auto d = singular_values(diag).values;
  CHECK(d[0] == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(d[1] == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(nuclear_norm(diag) == doctest::Approx(7.0).epsilon(1e-14));

  CHECK(nuclear_norm(make(2, 2, {0, 1, 1, 0})) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(nuclear_norm(make(1, 1, {-2.5})) == doctest::Approx(2.5).epsilon(1e-15));
}

TEST_CASE("row vector norm is its euclidean length") {
  const auto v = make(1, 4, {1, 2, 2, 4});
  CHECK(nuclear_norm(v) == doctest::Approx(5.0).epsilon(1e-14));
  const auto col = make(4, 1, {1, 2, 2, 4});
  CHECK(nuclear_norm(col) == doctest::Approx(5.0).epsilon(1e-14));
}

TEST_CASE("rejects zero dimensions and non-finite values") {
  CHECK_THROWS_AS(nuclear_norm(make(0, 3, {})), Error);
  CHECK_THROWS_AS(nuclear_norm(make(2, 0, {})), Error);
  CHECK_THROWS_AS(nuclear_norm(make(2, 2, {1, 2, 3})), Error);
  CHECK_THROWS_AS(nuclear_norm(make(1, 2, {1, std::numeric_limits<double>::quiet_NaN()})), Error);
  CHECK_THROWS_AS(nuclear_norm(make(1, 2, {std::numeric_limits<double>::infinity(), 0})), Error);
}

TEST_CASE("spectrum is sorted and non-negative") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 50; ++i) {
    const auto e = random_matrix(rng, 1 + testing::uniform_index(rng, 9), 1 + testing::uniform_index(rng, 9));
    const auto sv = singular_values(e).values;
    CHECK(sv.size() == std::min(e.rows, e.cols));
    CHECK(std::is_sorted(sv.rbegin(), sv.rend()));
    CHECK(*std::min_element(sv.begin(), sv.end()) >= 0.0);
  }
}

TEST_CASE("100 random 4x3 matrices match the one-sided Jacobi oracle") {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 100; ++i) {
    const auto e = random_matrix(rng, 4, 3);
    const auto got = singular_values(e).values;
    const auto want = oracle::singular_values(e);
    REQUIRE(got.size() == want.size());
    for (std::size_t k = 0; k < got.size(); ++k)
      CHECK(std::fabs(got[k] - want[k]) <= 1e-8 * std::max(want[0], 1e-300));
    CHECK(rel_close(nuclear_norm(e), oracle::nuclear_norm(e), 1e-8));
  }
}

TEST_CASE("oracle basics and size limit") {
  CHECK(oracle::nuclear_norm(make(3, 3, {1, 0, 0, 0, 1, 0, 0, 0, 1})) ==
        doctest::Approx(3.0).epsilon(1e-14));
  CHECK(oracle::nuclear_norm(make(2, 2, {0, 1, 1, 0})) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK_THROWS(oracle::nuclear_norm(make(101, 100, std::vector<double>(10100, 0.0))));
}

TEST_CASE("rank-deficient and wide matrices") {
  // Outer product u v^T has one singular value |u||v|. The Gram route leaves
  // roundoff of order sqrt(eps) * |E| in the zero singular values.
  const std::vector<double> u{1, 2, 3, 4, 5}, v{2, -1, 0.5};
  std::vector<double> vals;
  for (double a : u)
    for (double b : v) vals.push_back(a * b);
  const auto tall = make(5, 3, vals);
  const double expected = std::sqrt(55.0) * std::sqrt(5.25);
  CHECK(nuclear_norm(tall) == doctest::Approx(expected).epsilon(1e-7));

  std::vector<double> tvals(15);
  for (std::size_t r = 0; r < 5; ++r)
    for (std::size_t c = 0; c < 3; ++c) tvals[c * 5 + r] = vals[r * 3 + c];
  CHECK(nuclear_norm(make(3, 5, tvals)) == doctest::Approx(expected).epsilon(1e-7));

  const auto zero = make(3, 4, std::vector<double>(12, 0.0));
  CHECK(nuclear_norm(zero) == 0.0);
}

TEST_CASE("scale homogeneity") {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 50; ++i) {
    auto e = random_matrix(rng, 2 + testing::uniform_index(rng, 12), 2 + testing::uniform_index(rng, 12));
    const double c = testing::uniform(rng, -5.0, 5.0);
    const double base = nuclear_norm(e);
    for (double& v : e.values) v *= c;
    CHECK(rel_close(nuclear_norm(e), std::fabs(c) * base, 1e-10));
  }
}

TEST_CASE("whole-row and whole-column permutations leave the norm unchanged") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 30; ++i) {
    const auto e = random_matrix(rng, 6, 4);
    std::vector<std::size_t> rp(6), cp(4);
    std::iota(rp.begin(), rp.end(), 0);
    std::iota(cp.begin(), cp.end(), 0);
    std::shuffle(rp.begin(), rp.end(), rng);
    std::shuffle(cp.begin(), cp.end(), rng);
    auto p = e;
    for (std::size_t r = 0; r < 6; ++r)
      for (std::size_t c = 0; c < 4; ++c) p.at(r, c) = e.at(rp[r], cp[c]);
    CHECK(rel_close(nuclear_norm(p), nuclear_norm(e), 1e-10));
  }
}

TEST_CASE("an element swap can change the norm") {
  const auto before = make(2, 2, {1, 0, 0, 1});
  const auto after = make(2, 2, {0, 1, 0, 1});
  CHECK(oracle::nuclear_norm(before) != doctest::Approx(oracle::nuclear_norm(after)));
  CHECK(nuclear_norm(before) != doctest::Approx(nuclear_norm(after)));
}

TEST_CASE("appending a row never decreases the norm") {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 50; ++i) {
    auto e = random_matrix(rng, 1 + testing::uniform_index(rng, 10), 1 + testing::uniform_index(rng, 10));
    const double before = nuclear_norm(e);
    for (std::size_t c = 0; c < e.cols; ++c) e.values.push_back(testing::uniform(rng, -1, 1));
    e.rows += 1;
    CHECK(nuclear_norm(e) >= before * (1 - 1e-12));
  }
}

TEST_CASE("spectral <= frobenius <= nuclear <= sqrt(rank) * frobenius") {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 50; ++i) {
    const auto e = random_matrix(rng, 1 + testing::uniform_index(rng, 10), 1 + testing::uniform_index(rng, 10));
    const auto sv = singular_values(e).values;
    const double fro = oracle::frobenius_norm(e);
    const double nuc = nuclear_norm(e);
    CHECK(oracle::spectral_norm(e) <= fro * (1 + 1e-12));
    CHECK(sv.front() <= fro * (1 + 1e-12));
    CHECK(fro <= nuc * (1 + 1e-12));
    CHECK(nuc <= std::sqrt(static_cast<double>(sv.size())) * fro * (1 + 1e-12));
    CHECK(sv.front() == doctest::Approx(oracle::spectral_norm(e)).epsilon(1e-6));
  }
}

TEST_CASE("triangle inequality") {
  std::mt19937_64 rng(10);
  for (int i = 0; i < 50; ++i) {
    const std::size_t r = 1 + testing::uniform_index(rng, 8), c = 1 + testing::uniform_index(rng, 8);
    const auto a = random_matrix(rng, r, c);
    const auto b = random_matrix(rng, r, c);
    auto sum = a;
    for (std::size_t k = 0; k < sum.values.size(); ++k) sum.values[k] += b.values[k];
    CHECK(nuclear_norm(sum) <= (nuclear_norm(a) + nuclear_norm(b)) * (1 + 1e-12));
  }
}

TEST_CASE("symmetric eigenvalues of a known matrix") {
  // [[2,1],[1,2]] has eigenvalues 1 and 3.
  auto eig = symmetric_eigenvalues({2, 1, 1, 2}, 2);
  std::sort(eig.begin(), eig.end());
  CHECK(eig[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(eig[1] == doctest::Approx(3.0).epsilon(1e-14));
  CHECK_THROWS_AS(symmetric_eigenvalues({1, 2, 3}, 2), Error);
}
