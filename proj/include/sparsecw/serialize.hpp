#pragma once

#include "json.hpp"
#include "sparsecw/optimality.hpp"
#include "sparsecw/solvers.hpp"

namespace sparsecw {

nlohmann::ordered_json certificate_json(const OptimalityCertificate& cert);
nlohmann::ordered_json trace_json(const SolverTrace& trace);

}  // namespace sparsecw
