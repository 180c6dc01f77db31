#include "kdvlab/lattice_sets.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

using namespace kdvlab;

namespace {
constexpr double kPi = 3.14159265358979323846;

// brute-force oracle: plain double loop, filter, sort, dedup
std::vector<double> brute_n(double lmax, long long range, bool only_div3) {
  std::vector<double> vals;
  for (long long k = 1; k <= range; ++k)
    for (long long l = 1; l <= range; ++l) {
      if (only_div3 && (2 * k + l) % 3 != 0) continue;
      const double v = 2.0 * kPi * std::sqrt(double(k * k + k * l + l * l) / 3.0);
      if (v <= lmax) vals.push_back(v);
    }
  std::sort(vals.begin(), vals.end());
  std::vector<double> ded;
  for (double v : vals)
    if (ded.empty() || std::abs(v - ded.back()) > 1e-9 * std::max(1.0, v))
      ded.push_back(v);
  return ded;
}
}  // namespace

TEST_CASE("lattice: first members of N up to 10") {
  const auto rows = enum_lattice_set(SetTag::N, 10.0);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].value == doctest::Approx(2.0 * kPi).epsilon(1e-12));
  CHECK(rows[0].lattice->k == 1);
  CHECK(rows[0].lattice->l == 1);
  CHECK(rows[1].value == doctest::Approx(9.597724091862).epsilon(1e-9));
  CHECK(rows[1].lattice->k == 1);
  CHECK(rows[1].lattice->l == 2);
}

TEST_CASE("lattice: N3 keeps 2pi and drops the (1,2) member") {
  const auto rows = enum_lattice_set(SetTag::N3, 10.0);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].value == doctest::Approx(2.0 * kPi).epsilon(1e-12));
}

TEST_CASE("lattice: R starts at pi sqrt7 / 2 with witness (0,-1)") {
  const auto rows = enum_lattice_set(SetTag::R, 5.0);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].value == doctest::Approx(kPi * std::sqrt(7.0) / 2.0).epsilon(1e-12));
  // (-1, 0) and (0, -1) give the same value; the lexicographically first wins
  CHECK(rows[0].lattice->k == -1);
  CHECK(rows[0].lattice->l == 0);
}

TEST_CASE("lattice: enumeration up to 100 matches the brute-force oracle") {
  const auto got = enum_lattice_set(SetTag::N, 100.0);
  const auto want = brute_n(100.0, 200, false);
  REQUIRE(got.size() == want.size());
  for (std::size_t i = 0; i < got.size(); ++i)
    CHECK(got[i].value == doctest::Approx(want[i]).epsilon(1e-13));

  const auto got3 = enum_lattice_set(SetTag::N3, 100.0);
  const auto want3 = brute_n(100.0, 200, true);
  REQUIRE(got3.size() == want3.size());
  for (std::size_t i = 0; i < got3.size(); ++i)
    CHECK(got3[i].value == doctest::Approx(want3[i]).epsilon(1e-13));
}

TEST_CASE("lattice: N3 is a subset of N at identical values") {
  const auto n = enum_lattice_set(SetTag::N, 60.0);
  const auto n3 = enum_lattice_set(SetTag::N3, 60.0);
  for (const auto& c : n3) {
    const bool found = std::any_of(n.begin(), n.end(), [&](const CriticalLength& d) {
      return d.value == c.value;
    });
    CHECK(found);
  }
}

TEST_CASE("lattice: witness reproduces the value") {
  for (SetTag tag : {SetTag::N, SetTag::N3, SetTag::R}) {
    for (const auto& c : enum_lattice_set(tag, 40.0)) {
      CHECK(std::abs(length_from_witness(c) - c.value) <= 1e-12 * c.value);
    }
  }
}

TEST_CASE("lattice: membership tests") {
  const auto yes = member_lattice(2.0 * kPi, SetTag::N, 1e-9);
  REQUIRE(yes.member);
  CHECK(yes.witness->lattice->k == 1);
  CHECK(yes.witness->lattice->l == 1);

  CHECK_FALSE(member_lattice(7.0, SetTag::N, 1e-9).member);
  // the (1,2) member of N fails the divisibility filter
  CHECK_FALSE(member_lattice(2.0 * kPi * std::sqrt(7.0 / 3.0), SetTag::N3, 1e-9).member);
  CHECK(member_lattice(kPi * std::sqrt(7.0) / 2.0, SetTag::R, 1e-9).member);
}

TEST_CASE("lattice: minima of N and R") {
  const auto n = enum_lattice_set(SetTag::N, 40.0);
  CHECK(n.front().value == doctest::Approx(2.0 * kPi).epsilon(1e-13));
  const auto r = enum_lattice_set(SetTag::R, 40.0);
  CHECK(r.front().value == doctest::Approx(kPi * std::sqrt(7.0) / 2.0).epsilon(1e-13));
}
