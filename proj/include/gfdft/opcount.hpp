// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "gf.hpp"

namespace gfdft {

enum class AddStage { field, binary };

/// Operation tally under the prime-field convention: multiplications and
/// additions involving a constant 0 or 1 are never scheduled, everything
/// else counts regardless of runtime operand values.  Counts are
/// site-based, so two executions of the same plan always agree.
struct OpCounter {
    long long mults = 0;
    long long field_adds = 0;
    long long binary_stage_adds = 0;

    /// One scheduled multiplication site with the given constant factor.
    void count_mult_site(FieldElement constant) {
        if (constant.bits > 1)
            ++mults;
    }

    /// One scheduled addition of two generic field values.
    void count_add_site(AddStage stage) {
        if (stage == AddStage::field)
            ++field_adds;
        else
            ++binary_stage_adds;
    }

    long long total_adds() const { return field_adds + binary_stage_adds; }

    void reset() { *this = OpCounter{}; }
};

} // namespace gfdft
