// Copyright 2026 The gibbslab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "gibbslab/checks.h"

#include <gtest/gtest.h>

#include <set>
#include <stdexcept>

using namespace gibbslab;

TEST(checks, battery_has_distinct_names) {
    const auto &battery = invariant_battery();
    EXPECT_GE(battery.size(), 30u);
    std::set<std::string> names;
    for (const auto &c : battery) {
        EXPECT_TRUE(names.insert(c.name).second) << c.name;
    }
    EXPECT_EQ(acceptance_criteria().size(), 12u);
}

TEST(checks, battery_passes) {
    CheckContext ctx;
    for (const auto &c : invariant_battery()) {
        CheckResult r = run_check(c, ctx);
        EXPECT_TRUE(r.passed) << r.name << ": value=" << r.value << " tol=" << r.tolerance << " " << r.detail;
        EXPECT_EQ(r.name, c.name);
    }
}

TEST(checks, weight_sign_fault_is_detected) {
    CheckContext ctx{Fault::kWeightSign};
    std::set<std::string> failed;
    for (const auto &c : invariant_battery()) {
        if (c.name.rfind("lindblad.", 0) == 0) {
            CheckResult r = run_check(c, ctx);
            if (!r.passed) {
                failed.insert(r.name);
            }
        }
    }
    EXPECT_TRUE(failed.count("lindblad.detailed_balance"));
    EXPECT_TRUE(failed.count("lindblad.fixed_point"));
    EXPECT_FALSE(failed.count("lindblad.oft_exact"));
}

TEST(checks, exceptions_become_failures) {
    NamedCheck thrower{"throws", [](const CheckContext &) -> CheckResult { throw std::runtime_error("boom"); }};
    CheckResult r = run_check(thrower, {});
    EXPECT_FALSE(r.passed);
    EXPECT_EQ(r.name, "throws");
    EXPECT_NE(r.detail.find("boom"), std::string::npos);
}
