#pragma once

#include <json.hpp>

#include "pseudoboson/affine_op.hpp"

namespace pseudoboson {

// JSON forms used inside reports: complex numbers as [re, im] pairs, the
// exponent as the 6-tuple (qxx, qyy, qxy, lx, ly, c), coefficients as
// [m, n, [re, im]] rows in map order.

nlohmann::ordered_json to_json(Complex v);
nlohmann::ordered_json to_json(const QuadExponent& e);
nlohmann::ordered_json to_json(const PolyGauss& f);
nlohmann::ordered_json to_json(const AffineOp& op);

}  // namespace pseudoboson
