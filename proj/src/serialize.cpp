#include "pseudoboson/serialize.hpp"

namespace pseudoboson {

using ordered_json = nlohmann::ordered_json;

ordered_json to_json(Complex v) { return ordered_json::array({v.real(), v.imag()}); }

ordered_json to_json(const QuadExponent& e) {
    return ordered_json::array(
        {to_json(e.qxx), to_json(e.qyy), to_json(e.qxy), to_json(e.lx), to_json(e.ly),
         to_json(e.c)});
}

ordered_json to_json(const PolyGauss& f) {
    ordered_json coeffs = ordered_json::array();
    for (const auto& [key, v] : f.coeffs())
        coeffs.push_back(ordered_json::array({key.first, key.second, to_json(v)}));
    ordered_json j;
    j["coeffs"] = std::move(coeffs);
    j["exponent"] = to_json(f.exponent());
    return j;
}

ordered_json to_json(const AffineOp& op) {
    return ordered_json::array(
        {to_json(op.c0), to_json(op.cx), to_json(op.cy), to_json(op.cdx), to_json(op.cdy)});
}

}  // namespace pseudoboson
