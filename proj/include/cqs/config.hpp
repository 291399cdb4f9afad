#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cqs/contour.hpp"
#include "cqs/driven.hpp"

namespace cqs
{

/// Everything a CLI run depends on. Text form is sectioned `key = value`:
///
///   [physics]     E, q, Ze, b
///   [basis]       N (comma list)
///   [contour]     kind (c1|c2), phi, D, extent, scale, panels, nodes     -- tensor
///   [evaluation]  D (comma list), extent, scale, panels, nodes           -- point values
///   [quadrature]  radial, angular
///   [output]      dir, cache, figures (comma list)
///
/// `#` starts a comment. Unknown sections or keys are errors.
struct RunConfig
{
  double E = 0.735;
  double q = 0.24;
  double Ze = 1.6875;
  double b = 1.6875;
  std::vector<int> N = {16, 21, 26};

  ContourSpec contour{};
  std::vector<double> eval_D = {0.85, 15.0};
  double eval_extent = 1e6;
  double eval_scale = 1.0;
  int eval_panels = 96;
  int eval_nodes = 16;

  DrivenOptions quadrature{};

  std::string out_dir = "out";
  std::string cache_dir = "cache";
  std::vector<int> figures = {3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16, 17};

  void validate() const;

  TemkinPoetProblem problem(int n) const;
  /// Tensor contour with E filled in.
  ContourSpec tensor_contour() const;
  /// C2 point-evaluation contour at deformation D.
  ContourSpec eval_contour(double D) const;

  static RunConfig parse(const std::string &text);
  static RunConfig load(const std::string &path);
  std::string serialize() const;
  /// FNV-1a of serialize().
  std::uint64_t fingerprint() const;
};

std::vector<int> parse_int_list(const std::string &text);
std::vector<double> parse_double_list(const std::string &text);

}  // namespace cqs
