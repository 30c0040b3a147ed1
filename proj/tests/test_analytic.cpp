// Copyright 2026 The ltwist Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <string>
#include <tuple>
#include <vector>

#include "analytic.hpp"
#include "doctest.h"
#include "fixtures.hpp"

using namespace ltwist;

namespace {

const Precision kPrec(192, -30);

struct Ref {
  const char* label;
  const char* omega_plus;
  const char* l1;
  int w;
};

const Ref kRefs[] = {
    {"11a1", "1.26920930427955342168879461675454730521949224183060866796714",
     "0.253841860855910684337758923350909461043898448366121733593427", 1},
    {"14a1", "1.98134195606688323416957167673700926524271404469132151720785",
     "0.330223659344480539028261946122834877540452340781886919534641", 1},
    {"34a1", "2.24783166315685177660337342588328553186829596063532268950667",
     "0.749277221052283925534457808627761843956098653545107563168890", 1},
    {"46a1", "1.32180822264794370277948656779279706203077810574400729017193",
     "0.660904111323971851389743283896398531015389052872003645085967", 1},
    {"37b1", "1.08852159290422917350430831153959482310514050430137779908660",
     "0.725681061936152782336205541026396548736760336200918532724398", 1},
    {"99c1", "1.36429229569125516173129498227929251555292560563391818613355",
     "1.36429229569125516173129498227929251555292560563391818613355", 1},
};

}  // namespace

TEST_CASE("real period and central value against reference decimals") {
  for (const auto& r : kRefs) {
    CAPTURE(r.label);
    auto& c = fixtures::ctx(r.label);
    CHECK(fixtures::rel_err(c.periods(kPrec).omega_plus, fixtures::dec(r.omega_plus)) < 1e-50);
    CHECK(fixtures::rel_err(c.l_value(kPrec), fixtures::dec(r.l1)) < 1e-29);
    CHECK(c.root_number(kPrec).w == r.w);
  }
}

TEST_CASE("rank one curve has sign -1 and vanishing value") {
  auto& c = fixtures::ctx("37a1");
  CHECK(c.root_number(kPrec).w == -1);
  CHECK(abs(c.l_value(kPrec)).to_double() < 1e-30);
}

TEST_CASE("c_inf uses the number of real components") {
  int seen[3] = {0, 0, 0};
  for (const char* label : {"11a1", "14a1", "34a1", "37a1", "46a1"}) {
    CAPTURE(label);
    auto& c = fixtures::ctx(label);
    const auto& pd = c.periods(kPrec);
    CHECK(pd.delta == (c.model().disc > 0 ? 2 : 1));
    CHECK(fixtures::rel_err(pd.c_inf, pd.omega_plus * Real(static_cast<long>(pd.delta), 192)) < 1e-50);
    ++seen[pd.delta];
  }
  CHECK(seen[1] > 0);
  CHECK(seen[2] > 0);
}

TEST_CASE("twisted central values against reference decimals") {
  const std::vector<std::tuple<const char*, std::int64_t, const char*>> refs = {
      {"11a1", 5, "2.83803828204429619496466743331636893942125624563603723223179"},
      {"11a1", -3, "1.68449633297547878675003601676338798160117772813901237406775"},
      {"11a1", -15, "0.753329661676458230430949660698690905342963961649433729470362"},
      {"14a1", -3, "1.53054544807834893757037970737020260021685671301767805945048"},
      {"14a1", 5, "2.65824918026277165889811837916361143752048408379988329143008"},
      {"34a1", 5, "2.01052176031805203612258081033610920470299238167269494187218"},
  };
  for (const auto& [label, M, ref] : refs) {
    CAPTURE(label);
    CAPTURE(M);
    auto tw = twisted_l_value(fixtures::ctx(label), M, kPrec, {true, true});
    CHECK(tw.w == 1);
    CHECK(fixtures::rel_err(tw.value, fixtures::dec(ref)) < 1e-28);
    REQUIRE(tw.cross_value.has_value());
    CHECK(fixtures::rel_err(*tw.cross_value, fixtures::dec(ref)) < 1e-28);
  }
  // vanishing twists: sign -1 (11a1, -7) and sign +1 with L = 0 (46a1, -3)
  CHECK(twisted_l_value(fixtures::ctx("11a1"), -7, kPrec).w == -1);
  auto z = twisted_l_value(fixtures::ctx("46a1"), -3, kPrec);
  CHECK(abs(z.value).to_double() < 1e-28);
}

TEST_CASE("standalone value of a twisted model") {
  int w = 0;
  auto v = standalone_l_value(fixtures::model(0, 0, 1, -93, 625), 99, kPrec, &w);
  CHECK(w == 1);
  CHECK(fixtures::rel_err(v, fixtures::dec("1.68449633297547878675003601676338798160117772813901237406775")) < 1e-28);
}

TEST_CASE("gauss sums of quadratic characters") {
  for (std::int64_t d : {3, 5, 7, 15, 21, 35, 105}) {
    CAPTURE(d);
    auto g = gauss_sum(d, kPrec);
    Real s = sqrt(Real(static_cast<long>(d), 192));
    if (d % 4 == 1) {
      CHECK(abs(g.re - s).to_double() < 1e-40);
      CHECK(abs(g.im).to_double() < 1e-40);
    } else {
      CHECK(abs(g.im - s).to_double() < 1e-40);
      CHECK(abs(g.re).to_double() < 1e-40);
    }
  }
}

TEST_CASE("series length grows with the conductor and the accuracy") {
  auto a = series_length(11.0, 1e-30);
  auto b = series_length(1100.0, 1e-30);
  auto c = series_length(11.0, 1e-60);
  CHECK(a > 0);
  CHECK(b > a);
  CHECK(c > a);
  CHECK(series_length(0.5, 1e-10) >= 1);
}

TEST_CASE("precision validation") {
  CHECK_THROWS(Precision(64, -30).validate());
  CHECK_NOTHROW(Precision(192, -30).validate());
}

TEST_CASE("values are stable when the working precision grows") {
  auto& c = fixtures::ctx("19a1");
  Real a = c.l_value(kPrec);
  Real b = c.l_value(kPrec.raised(64));
  CHECK(abs(a - b).to_double() < 1e-25);
  auto ta = twisted_l_value(c, -3, kPrec, {false, false});
  auto tb = twisted_l_value(c, -3, kPrec.raised(64), {false, false});
  CHECK(abs(ta.value - tb.value).to_double() < 1e-25);
}
