#include "kdvlab/case_spec.hpp"
#include "kdvlab/criticality.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace kdvlab;

TEST_CASE("case table: fixed extra-condition mapping") {
  auto has = [](int id, TraceId t) {
    const auto& ex = case_spec(id).extra_conditions;
    return std::find(ex.begin(), ex.end(), t) != ex.end();
  };
  CHECK(case_spec(1).extra_conditions.size() == 1);
  CHECK(has(1, TraceId::ThetaXL));
  CHECK((has(4, TraceId::ThetaXL) && has(4, TraceId::UX0)));
  CHECK(has(2, TraceId::ThetaXXL));
  CHECK((has(5, TraceId::ThetaXXL) && has(5, TraceId::UXXL)));
  CHECK((has(6, TraceId::ThetaXL) && has(6, TraceId::UXXL)));
  CHECK((has(7, TraceId::ThetaXL) && has(7, TraceId::ThetaXXL)));
  CHECK((has(8, TraceId::ThetaXL) && has(8, TraceId::UXX0)));
  CHECK((has(9, TraceId::ThetaXL) && has(9, TraceId::ThetaXX0)));
  CHECK((has(10, TraceId::ThetaXXL) && has(10, TraceId::UXX0)));
  CHECK((has(11, TraceId::ThetaXXL) && has(11, TraceId::ThetaXX0)));
  CHECK(has(3, TraceId::ThetaXX0));
  CHECK((has(12, TraceId::ThetaXX0) && has(12, TraceId::UXXL)));
  CHECK_THROWS(case_spec(0));
  CHECK_THROWS(case_spec(13));
}

TEST_CASE("case table: critical sets per configuration") {
  for (int id : {1, 4, 6, 7, 8, 9}) {
    const auto s = case_critical_sets(id);
    REQUIRE(s.size() == 1);
    CHECK(s[0] == SetTag::N);
  }
  CHECK(case_critical_sets(5).empty());
  CHECK(case_critical_sets(10) == std::vector<SetTag>{SetTag::R});
  CHECK(case_critical_sets(11) == std::vector<SetTag>{SetTag::N3});
  CHECK(case_critical_sets(2) == std::vector<SetTag>{SetTag::N, SetTag::R});
  CHECK(case_critical_sets(3) ==
        std::vector<SetTag>{SetTag::N, SetTag::G, SetTag::Gprime});
  CHECK(case_critical_sets(12) == std::vector<SetTag>{SetTag::G, SetTag::Gprime});
}

TEST_CASE("criticality: dispatch against the table") {
  constexpr double kPi = 3.14159265358979323846;
  const CaseVerdict v1 = criticality(2.0 * kPi, 1, 1e-9);
  CHECK(v1.critical);
  CHECK(v1.nearest->set == SetTag::N);

  const CaseVerdict v5 = criticality(5.0, 5, 1e-9);
  CHECK_FALSE(v5.critical);
  CHECK_FALSE(v5.nearest.has_value());

  const CaseVerdict v10 = criticality(kPi * std::sqrt(7.0) / 2.0, 10, 1e-9);
  CHECK(v10.critical);
  CHECK(v10.nearest->set == SetTag::R);

  // case 10 has set R only: 2pi is not critical there
  CHECK_FALSE(criticality(2.0 * kPi, 10, 1e-9).critical);

  // cases 3 and 12 need a transcendental cache for a certified negative
  const CaseVerdict v3 = criticality(5.0, 3, 1e-9);
  CHECK_FALSE(v3.critical);
  CHECK(v3.incomplete_g_coverage);
}

TEST_CASE("criticality: consistency with enumeration") {
  for (int id : {1, 2, 10, 11}) {
    for (SetTag tag : case_critical_sets(id)) {
      if (tag == SetTag::G || tag == SetTag::Gprime) continue;
      for (const auto& c : enum_lattice_set(tag, 15.0)) {
        CHECK(criticality(c.value, id, 1e-9).critical);
      }
    }
  }
}
