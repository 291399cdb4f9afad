#pragma once

#include <string>
#include <vector>

#include "cqs/config.hpp"

namespace cqs::cli
{

/// Writes `dir/figNN.csv` for each requested id (3..17). `tensor` must cover the
/// largest basis size in the config. Returns the written paths.
std::vector<std::string> write_figures(const RunConfig &cfg, const CqsTensor &tensor, const std::vector<int> &ids,
                                       const std::string &dir);

}  // namespace cqs::cli
