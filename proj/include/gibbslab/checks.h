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
#ifndef GIBBSLAB_CHECKS_H
#define GIBBSLAB_CHECKS_H

#include <functional>
#include <string>
#include <vector>

#include "gibbslab/lindblad.h"

namespace gibbslab {

/// Deliberate defects for exercising the checks themselves.
enum class Fault {
    kNone,
    /// Davies generators use the reversed transition weights.
    kWeightSign,
};

struct CheckContext {
    Fault fault = Fault::kNone;
    WeightConvention convention() const {
        return fault == Fault::kWeightSign ? WeightConvention::kReversed : WeightConvention::kDetailedBalance;
    }
};

struct CheckResult {
    std::string name;
    bool passed = false;
    /// Worst measured quantity and the pinned threshold it was compared against.
    double value = 0;
    double tolerance = 0;
    std::string detail;
    double seconds = 0;
};

struct NamedCheck {
    std::string name;
    std::function<CheckResult(const CheckContext &)> run;
};

/// The twelve acceptance criteria, in order.
const std::vector<NamedCheck> &acceptance_criteria();
/// Fast per-module invariant checks at fixed seeds.
const std::vector<NamedCheck> &invariant_battery();

/// Runs one check, timing it and turning exceptions into failures.
CheckResult run_check(const NamedCheck &check, const CheckContext &ctx);

}  // namespace gibbslab

#endif
