#pragma once

#include <string>

#include "json.hpp"
#include "tcol/pseudo.hpp"
#include "tcol/relaxation.hpp"
#include "tcol/rounding.hpp"
#include "tcol/spectral.hpp"

namespace tcol {

using ordered_json = nlohmann::ordered_json;

// Stable snake_case keys, insertion-ordered: identical inputs serialize to
// identical bytes.
ordered_json report_to_json(const RoundingReport& rep);

ordered_json transcript_to_json(const ConditioningTranscript& tr);

ordered_json spectrum_summary_json(const Spectrum& s, int head_tail = 5);

ordered_json problem_to_json(const RelaxationProblem& p);

// Variable blocks, residuals and moment-matrix eigenvalue extremes.
ordered_json solution_to_json(const SdpDistribution& dist);

}  // namespace tcol
