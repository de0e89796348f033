#pragma once

#include <string>

#include "spinq/frame_algebra.hpp"

namespace spinq {

// JSON chart format:
//   { "dim": n,
//     "coframe": ["e1", ...],
//     "orientation": [1, ..., n],
//     "structure": { "e1": [[coef-expr, [i, j]], ...], ... },
//     "generators": { "s": { "positive": true, "d": [[coef-expr, [i]], ...] }, ... } }
// Coefficient expressions use the prefix grammar of parse_scalar().
std::string algebra_to_json(const FrameAlgebra& alg);
std::shared_ptr<FrameAlgebra> algebra_from_json(const std::string& text);

// named forms serialized alongside a chart
std::string form_to_json(const Form& f);
Form form_from_json(const AlgebraPtr& alg, const std::string& text);

}  // namespace spinq
