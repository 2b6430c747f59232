#pragma once

#include "disprop/division.hpp"

namespace disprop::baseline {

/// Moving-knife fair division. Every demand must be exactly 1/n; the result has
/// exactly n - 1 cuts. Ties between agents reaching their share at the same
/// point go to the lowest index. PreconditionError for unequal demands.
Division sliding_knife_equal(const Instance& inst);

/// The same stopping rule applied with each agent's own demand as threshold.
///
/// Not a valid procedure for unequal demands: an agent with a tiny demand can
/// stop the knife early and leave a large-demand agent short. Exposed so the
/// failure can be demonstrated; callers wanting a guarantee use
/// sliding_knife_equal or common_denominator.
Division sliding_knife_rule(const Instance& inst);

/// Rational-demand reduction: with D the least common denominator of the
/// demands, agent i is split into D * alpha_i virtual agents of demand 1/D
/// (interleaved round robin), the equal-demand knife runs on the D virtual
/// agents, and same-owner neighbours are merged. At most D - 1 cuts.
/// PreconditionError unless the demands sum to exactly 1.
Division common_denominator(const Instance& inst);

}  // namespace disprop::baseline
