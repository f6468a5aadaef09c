#include "exoflex/tolerances.hpp"

#include <stdexcept>

namespace exoflex {

void Tolerances::apply(const std::map<std::string, double>& overrides) {
    for (const auto& [key, value] : overrides) {
        if (key == "geometry") geometry = value;
        else if (key == "roundtrip") roundtrip = value;
        else if (key == "oracle_sigmas") oracle_sigmas = value;
        else if (key == "clamp_band") clamp_band = value;
        else if (key == "area_endpoint") area_endpoint = value;
        else if (key == "spread_min") spread_min = value;
        else if (key == "degenerate_sin") degenerate_sin = value;
        else if (key == "fit_residual") fit_residual = value;
        else throw std::invalid_argument("unknown tolerance key: " + key);
    }
}

}  // namespace exoflex
