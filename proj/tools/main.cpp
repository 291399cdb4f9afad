// cqs: command-line front end for the CQS library.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "cqs/acceptance.hpp"
#include "cqs/error.hpp"
#include "figures.hpp"

namespace fs = std::filesystem;
using namespace cqs;

namespace
{

struct Overrides
{
  std::string config;
  std::optional<std::string> out;
  std::optional<std::string> n_basis;
  std::optional<std::string> contour;
  std::optional<double> phi;
  std::optional<double> deform_d;
  std::optional<int> nodes;
  std::optional<std::string> figures;
};

RunConfig resolve(const Overrides &o)
{
  RunConfig cfg = o.config.empty() ? RunConfig{} : RunConfig::load(o.config);
  if (o.out) cfg.out_dir = *o.out;
  if (o.n_basis) cfg.N = parse_int_list(*o.n_basis);
  if (o.contour)
  {
    if (*o.contour == "c1") cfg.contour.kind = ContourKind::rotated_line;
    else if (*o.contour == "c2") cfg.contour.kind = ContourKind::rational_deformation;
    else throw ConfigError("--contour must be c1 or c2");
  }
  if (o.phi) cfg.contour.phi = *o.phi;
  if (o.deform_d)
  {
    cfg.contour.D = *o.deform_d;
    cfg.eval_D.front() = *o.deform_d;
  }
  if (o.nodes) cfg.contour.nodes_per_panel = *o.nodes;
  if (o.figures) cfg.figures = parse_int_list(*o.figures);
  if (const char *dir = std::getenv("CQS_CACHE_DIR"); dir && *dir)
  {
    cfg.cache_dir = dir;
  }
  cfg.validate();
  return cfg;
}

int largest(const RunConfig &cfg) { return *std::max_element(cfg.N.begin(), cfg.N.end()); }

CqsTensor tensor_for(const RunConfig &cfg)
{
  const LaguerreBasisSpec s{cfg.b, 0, largest(cfg)};
  return cached_tensor(cfg.cache_dir, cfg.E, s, s, cfg.tensor_contour());
}

double seconds_since(std::chrono::steady_clock::time_point t0)
{
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int cmd_check_basis(const RunConfig &cfg)
{
  const int count = std::max(30, largest(cfg));
  const double orth = orthogonality_error({cfg.b, 0, count}, count);
  std::printf("orthogonality      n, m < %d   max error %.2e\n", count, orth);
  if (!(orth < 1e-10))
  {
    std::fprintf(stderr, "check-basis: orthogonality fails (%.2e >= 1e-10)\n", orth);
    return 1;
  }
  const auto momenta = sample_contour_momenta(cfg.E, cfg.eval_D.front());
  for (int n : cfg.N)
  {
    double worst = 0.0;
    for (cplx k : momenta)
    {
      worst = std::max(worst, resolvent_identity_error({cfg.b, 0, n}, k));
    }
    std::printf("resolvent identity N = %-4d   max |T G - I| %.2e\n", n, worst);
    if (!(worst < 1e-8))
    {
      std::fprintf(stderr, "check-basis: resolvent identity fails for N = %d (%.2e >= 1e-8)\n", n, worst);
      return 1;
    }
  }
  std::printf("all basis checks passed\n");
  return 0;
}

int cmd_solve(const RunConfig &cfg, bool modified)
{
  const auto t0 = std::chrono::steady_clock::now();
  const CqsTensor tensor = tensor_for(cfg);
  nlohmann::ordered_json out;
  out["kind"] = modified ? "modified" : "plain";
  out["E"] = cfg.E;
  out["q"] = cfg.q;
  out["Ze"] = cfg.Ze;
  out["b"] = cfg.b;
  out["contour"] = tensor.contour;
  out["tensor_seconds"] = seconds_since(t0);
  const PhaseField phase(cfg.E);
  for (int n : cfg.N)
  {
    const auto t1 = std::chrono::steady_clock::now();
    const auto p = cfg.problem(n);
    const auto sol = modified ? solve_modified(p, tensor, phase, cfg.quadrature) : solve_plain(p, tensor, cfg.quadrature);
    nlohmann::ordered_json row;
    row["N"] = n;
    row["amplitude"] = modified ? magnitude_A_modified(sol, p, pi / 4.0) : magnitude_A(sol, p, pi / 4.0);
    row["residual"] = sol.residual;
    row["rcond"] = sol.rcond;
    row["seconds"] = seconds_since(t1);
    out["solutions"].push_back(row);
  }
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_figures(const RunConfig &cfg)
{
  const CqsTensor tensor = tensor_for(cfg);
  for (const auto &path : cli::write_figures(cfg, tensor, cfg.figures, cfg.out_dir))
  {
    std::printf("%s\n", path.c_str());
  }
  return 0;
}

int cmd_cache_build(const RunConfig &cfg)
{
  const auto t0 = std::chrono::steady_clock::now();
  const CqsTensor t = tensor_for(cfg);
  std::printf("%s  N = %d  (%.1f s)\n", (fs::path(cfg.cache_dir) / tensor_cache_name(t)).c_str(), t.size(),
              seconds_since(t0));
  return 0;
}

int cmd_cache_inspect(const RunConfig &cfg)
{
  if (!fs::is_directory(cfg.cache_dir))
  {
    std::printf("cache directory %s does not exist\n", cfg.cache_dir.c_str());
    return 0;
  }
  for (const auto &entry : fs::directory_iterator(cfg.cache_dir))
  {
    if (entry.path().extension() != ".bin")
    {
      continue;
    }
    try
    {
      const CqsTensor t = load_tensor(entry.path().string());
      std::printf("%s  E = %g  b = %g  N = %d  rows = %d  %llu bytes\n  contour: %s\n",
                  entry.path().filename().c_str(), t.E, t.spec1.b, t.size(), t.rows,
                  static_cast<unsigned long long>(entry.file_size()), t.contour.c_str());
    }
    catch (const std::exception &e)
    {
      std::printf("%s  unreadable: %s\n", entry.path().filename().c_str(), e.what());
    }
  }
  return 0;
}

int cmd_cache_clear(const RunConfig &cfg)
{
  int removed = 0;
  if (fs::is_directory(cfg.cache_dir))
  {
    for (const auto &entry : fs::directory_iterator(cfg.cache_dir))
    {
      const auto name = entry.path().filename().string();
      if (entry.path().extension() == ".bin" && name.rfind("tensor-", 0) == 0)
      {
        fs::remove(entry.path());
        ++removed;
      }
    }
  }
  std::printf("removed %d cached tensor(s) from %s\n", removed, cfg.cache_dir.c_str());
  return 0;
}

int cmd_acceptance(const RunConfig &cfg)
{
  AcceptanceRun run(cfg, cfg.cache_dir);
  int failures = 0;
  for (const auto &r : run.all())
  {
    std::printf("[%s] criterion %d (%s): %s [%.1f s]\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(),
                r.detail.c_str(), r.seconds);
    failures += r.pass ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char **argv)
{
  CLI::App app{"Convoluted quasi-Sturmian basis and Temkin-Poet driven solver"};
  app.require_subcommand(1);
  app.fallthrough();

  Overrides o;
  app.add_option("--config", o.config, "Run configuration file")->check(CLI::ExistingFile);
  app.add_option("--out", o.out, "Output directory for datasets");
  app.add_option("--n-basis", o.n_basis, "Basis sizes, comma separated (e.g. 16,21,26)");
  app.add_option("--contour", o.contour, "Tensor contour: c1 (rotated line) or c2 (rational deformation)");
  app.add_option("--phi", o.phi, "C1 rotation angle in radians");
  app.add_option("--deform-d", o.deform_d, "C2 deformation strength D");
  app.add_option("--nodes", o.nodes, "Gauss-Legendre nodes per contour panel");
  app.add_option("--figures", o.figures, "Figure ids 3..17, comma separated");

  auto *check = app.add_subcommand("check-basis", "Orthogonality and resolvent-identity checks");
  auto *figures = app.add_subcommand("figures", "Write figure datasets as CSV");
  auto *solve = app.add_subcommand("solve", "Solve with the plain CQS basis");
  auto *solve_mod = app.add_subcommand("solve-modified", "Solve with the phase-modified basis");
  auto *accept = app.add_subcommand("acceptance", "Run the acceptance criteria");
  auto *cache = app.add_subcommand("tensor-cache", "Manage the tensor cache");
  cache->require_subcommand(1);
  auto *cache_build = cache->add_subcommand("build", "Build (or load) the tensor for the largest basis");
  auto *cache_inspect = cache->add_subcommand("inspect", "List cached tensors");
  auto *cache_clear = cache->add_subcommand("clear", "Delete cached tensors");

  CLI11_PARSE(app, argc, argv);

  try
  {
    const RunConfig cfg = resolve(o);
    if (*check) return cmd_check_basis(cfg);
    if (*figures) return cmd_figures(cfg);
    if (*solve) return cmd_solve(cfg, false);
    if (*solve_mod) return cmd_solve(cfg, true);
    if (*accept) return cmd_acceptance(cfg);
    if (*cache_build) return cmd_cache_build(cfg);
    if (*cache_inspect) return cmd_cache_inspect(cfg);
    if (*cache_clear) return cmd_cache_clear(cfg);
  }
  catch (const ConfigError &e)
  {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return 2;
  }
  catch (const std::exception &e)
  {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
