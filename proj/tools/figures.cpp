#include "figures.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

#include "cqs/error.hpp"

namespace cqs::cli
{

namespace
{

struct Curve
{
  std::string name;
  std::vector<cplx> values;
};

struct Table
{
  std::vector<double> rho;
  std::vector<Curve> curves;
};

std::vector<double> grid(double from, double to, double step)
{
  std::vector<double> out;
  for (int i = 0;; ++i)
  {
    const double x = from + i * step;
    if (x > to + 1e-9)
    {
      break;
    }
    out.push_back(x);
  }
  return out;
}

std::string label(double x)
{
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

HypersphericalPoint diagonal(double rho) { return HypersphericalPoint::from_polar(rho, pi / 4.0); }

/// Lazily computed pieces shared between figures of one run.
class Source
{
public:
  Source(const RunConfig &cfg, const CqsTensor &tensor) : cfg_(cfg), tensor_(tensor), phase_(cfg.E) {}

  const RunConfig &cfg() const { return cfg_; }
  const CqsTensor &tensor() const { return tensor_; }
  const PhaseField &phase() const { return phase_; }
  LaguerreBasisSpec spec(int n) const { return {cfg_.b, 0, n}; }

  const std::vector<ContourNode> &nodes(double D)
  {
    auto it = nodes_.find(D);
    if (it == nodes_.end())
    {
      it = nodes_.emplace(D, discretize(cfg_.eval_contour(D))).first;
    }
    return it->second;
  }

  /// All Q_{n1 n2} for the largest basis on the primary evaluation contour.
  const Eigen::MatrixXcd &q_full(double rho)
  {
    auto it = q_full_.find(rho);
    if (it == q_full_.end())
    {
      const int n = largest();
      const auto s = spec(n);
      it = q_full_.emplace(rho, cqs_eval_contour_all(s, s, n, diagonal(rho), nodes(cfg_.eval_D.front()))).first;
    }
    return it->second;
  }

  int largest() const { return *std::max_element(cfg_.N.begin(), cfg_.N.end()); }

  const std::vector<DrivenSolution> &solutions(bool modified)
  {
    auto &out = modified ? modified_ : plain_;
    if (out.empty())
    {
      for (int n : cfg_.N)
      {
        const auto p = cfg_.problem(n);
        out.push_back(modified ? solve_modified(p, tensor_, phase_, cfg_.quadrature)
                               : solve_plain(p, tensor_, cfg_.quadrature));
      }
    }
    return out;
  }

private:
  const RunConfig &cfg_;
  const CqsTensor &tensor_;
  PhaseField phase_;
  std::map<double, std::vector<ContourNode>> nodes_;
  std::map<double, Eigen::MatrixXcd> q_full_;
  std::vector<DrivenSolution> plain_;
  std::vector<DrivenSolution> modified_;
};

Table representations(Source &src)
{
  Table t;
  t.rho = grid(0.25, 10.0, 0.25);
  const int m = std::min(25, src.tensor().size());
  const auto s = src.spec(1);
  t.curves.push_back({"expansion_M" + std::to_string(m), {}});
  for (double d : src.cfg().eval_D)
  {
    t.curves.push_back({"contour_D" + label(d), {}});
  }
  for (double rho : t.rho)
  {
    t.curves[0].values.push_back(cqs_eval_expansion(src.tensor(), 0, 0, diagonal(rho), m));
    for (std::size_t i = 0; i < src.cfg().eval_D.size(); ++i)
    {
      const auto &nodes = src.nodes(src.cfg().eval_D[i]);
      t.curves[i + 1].values.push_back(cqs_eval_contour_all(s, s, 1, diagonal(rho), nodes)(0, 0));
    }
  }
  return t;
}

Table normalized(Source &src, double from, double to, double step, bool with_asymptote)
{
  Table t;
  t.rho = grid(from, to, step);
  const int count = 3;
  const auto s = src.spec(count);
  const double E = src.cfg().E;
  for (int n = 0; n < count; ++n)
  {
    t.curves.push_back({"Q" + std::to_string(n) + std::to_string(n), {}});
  }
  if (with_asymptote)
  {
    t.curves.push_back({"asymptotic", {}});
  }
  const auto &nodes = src.nodes(src.cfg().eval_D.front());
  for (double rho : t.rho)
  {
    const auto pt = diagonal(rho);
    const auto k1 = kinematics(s, pt.p1(E));
    const auto k2 = kinematics(s, pt.p2(E));
    const Eigen::MatrixXcd q = cqs_eval_contour_all(s, s, count, pt, nodes);
    for (int n = 0; n < count; ++n)
    {
      t.curves[n].values.push_back(q(n, n) / (b_normalizer(s, n, k1) * b_normalizer(s, n, k2)));
    }
    if (with_asymptote)
    {
      t.curves[count].values.push_back(cqs_asymptotic(s, s, 0, 0, pt, E) /
                                       (b_normalizer(s, 0, k1) * b_normalizer(s, 0, k2)));
    }
  }
  return t;
}

Table solutions(Source &src, bool modified, bool asymptotic)
{
  Table t;
  t.rho = grid(20.0, 60.0, 1.0);
  const auto &sols = src.solutions(modified);
  for (int n : src.cfg().N)
  {
    t.curves.push_back({"N" + std::to_string(n), {}});
  }
  for (double rho : t.rho)
  {
    const auto pt = diagonal(rho);
    for (std::size_t i = 0; i < sols.size(); ++i)
    {
      const int n = src.cfg().N[i];
      t.curves[i].values.push_back(asymptotic ? asymptotic_solution(sols[i], src.cfg().problem(n), pt)
                                              : solution_scaled(sols[i], src.q_full(rho).topLeftCorner(n, n), pt,
                                                                src.phase()));
    }
  }
  return t;
}

Table effective(Source &src)
{
  Table t;
  t.rho = grid(20.0, 100.0, 4.0);
  t.curves = {{"U00", {}}, {"U55", {}}, {"inv_r_max", {}}, {"asymptote", {}}};
  const auto &nodes = src.nodes(src.cfg().eval_D.front());
  for (double rho : t.rho)
  {
    const auto pt = diagonal(rho);
    const Eigen::MatrixXcd u = effective_potential(src.spec(6), 6, pt, nodes, src.phase());
    t.curves[0].values.push_back(u(0, 0));
    t.curves[1].values.push_back(u(5, 5));
    t.curves[2].values.push_back(1.0 / std::max(pt.r1, pt.r2));
    t.curves[3].values.push_back(effective_potential_asymptote(src.cfg().E, rho));
  }
  return t;
}

enum class Part
{
  real,
  imag,
  both,
};

void write_csv(const std::string &path, int id, const std::string &caption, const RunConfig &cfg, const Table &t,
               Part part)
{
  std::ofstream os(path);
  if (!os)
  {
    throw ConfigError("cannot write " + path);
  }
  char hash[24];
  std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(cfg.fingerprint()));
  os << "# figure " << id << ": " << caption << "\n";
  os << "# config fingerprint: " << hash << "\n";
  std::istringstream lines(cfg.serialize());
  for (std::string line; std::getline(lines, line);)
  {
    if (!line.empty())
    {
      os << "# config: " << line << "\n";
    }
  }
  os << "rho";
  for (const auto &c : t.curves)
  {
    if (part != Part::imag)
    {
      os << "," << c.name << "_re";
    }
    if (part != Part::real)
    {
      os << "," << c.name << "_im";
    }
  }
  os << "\n";
  char buf[40];
  for (std::size_t i = 0; i < t.rho.size(); ++i)
  {
    std::snprintf(buf, sizeof buf, "%.6f", t.rho[i]);
    os << buf;
    for (const auto &c : t.curves)
    {
      if (part != Part::imag)
      {
        std::snprintf(buf, sizeof buf, ",%.12e", c.values[i].real());
        os << buf;
      }
      if (part != Part::real)
      {
        std::snprintf(buf, sizeof buf, ",%.12e", c.values[i].imag());
        os << buf;
      }
    }
    os << "\n";
  }
}

struct FigurePair
{
  int re_id;
  int im_id;
  const char *what;
  std::function<Table(Source &)> make;
};

}  // namespace

std::vector<std::string> write_figures(const RunConfig &cfg, const CqsTensor &tensor, const std::vector<int> &ids,
                                       const std::string &dir)
{
  Source src(cfg, tensor);
  const std::vector<FigurePair> pairs = {
      {3, 4, "Q00 along the diagonal r1 = r2 = rho/sqrt(2): Laguerre expansion and contour integrals",
       representations},
      {5, 6, "Q_nn / (B_n(p1) B_n(p2)) along the diagonal",
       [](Source &s) { return normalized(s, 0.5, 30.0, 0.5, false); }},
      {7, 8, "Q_nn / (B_n(p1) B_n(p2)) and the large-rho form of Q00 along the diagonal",
       [](Source &s) { return normalized(s, 10.0, 60.0, 1.0, true); }},
      {9, 10, "plain solution phi rho^{5/2} along the diagonal, per basis size",
       [](Source &s) { return solutions(s, false, false); }},
      {11, 12, "large-rho form of the plain solution phi rho^{5/2} along the diagonal, per basis size",
       [](Source &s) { return solutions(s, false, true); }},
      {14, 15, "phase-modified solution phi~ rho^{5/2} along the diagonal, per basis size",
       [](Source &s) { return solutions(s, true, false); }},
      {16, 17, "large-rho form of the phase-modified solution along the diagonal, per basis size",
       [](Source &s) { return solutions(s, true, true); }},
  };
  const auto wanted = [&](int id) { return std::find(ids.begin(), ids.end(), id) != ids.end(); };
  const auto path_of = [&](int id) {
    char name[16];
    std::snprintf(name, sizeof name, "fig%02d.csv", id);
    return (std::filesystem::path(dir) / name).string();
  };

  std::filesystem::create_directories(dir);
  std::vector<std::string> written;
  for (const auto &p : pairs)
  {
    if (!wanted(p.re_id) && !wanted(p.im_id))
    {
      continue;
    }
    const Table t = p.make(src);
    if (wanted(p.re_id))
    {
      write_csv(path_of(p.re_id), p.re_id, std::string("real part of ") + p.what, cfg, t, Part::real);
      written.push_back(path_of(p.re_id));
    }
    if (wanted(p.im_id))
    {
      write_csv(path_of(p.im_id), p.im_id, std::string("imaginary part of ") + p.what, cfg, t, Part::imag);
      written.push_back(path_of(p.im_id));
    }
  }
  if (wanted(13))
  {
    write_csv(path_of(13), 13, "effective potentials U00 and U55 along the diagonal, with 1/r> and the large-rho form",
              cfg, effective(src), Part::both);
    written.push_back(path_of(13));
  }
  std::sort(written.begin(), written.end());
  return written;
}

}  // namespace cqs::cli
