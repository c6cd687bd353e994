#pragma once

#include "json.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace dq::sw {

/// One axiom evaluation; refined_residual is NaN when no refinement was run.
struct AxiomReport {
    std::string kernel_id;
    std::string axiom;
    double residual = 0;
    std::string resolution;
    double refined_residual = std::numeric_limits<double>::quiet_NaN();

    nlohmann::json to_json() const
    {
        nlohmann::json j{{"kernel_id", kernel_id}, {"axiom", axiom}, {"residual", residual}, {"resolution", resolution}};
        j["refined_residual"] = std::isnan(refined_residual) ? nlohmann::json(nullptr) : nlohmann::json(refined_residual);
        return j;
    }
};

} // namespace dq::sw
