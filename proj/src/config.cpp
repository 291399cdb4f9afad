#include "cqs/config.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "cqs/error.hpp"

namespace cqs
{

namespace
{

std::string trim(const std::string &s)
{
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos)
  {
    return {};
  }
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_list(const std::string &text)
{
  std::vector<std::string> items;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
  {
    item = trim(item);
    if (!item.empty())
    {
      items.push_back(item);
    }
  }
  return items;
}

double to_double(const std::string &key, const std::string &value)
{
  try
  {
    std::size_t used = 0;
    const double x = std::stod(value, &used);
    if (used == value.size())
    {
      return x;
    }
  }
  catch (const std::exception &)
  {
  }
  throw ConfigError("config: '" + key + "' expects a number, got '" + value + "'");
}

int to_int(const std::string &key, const std::string &value)
{
  try
  {
    std::size_t used = 0;
    const int x = std::stoi(value, &used);
    if (used == value.size())
    {
      return x;
    }
  }
  catch (const std::exception &)
  {
  }
  throw ConfigError("config: '" + key + "' expects an integer, got '" + value + "'");
}

std::string fmt(double x)
{
  // shortest text that reads back to the same double
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

template <class T>
std::string join(const std::vector<T> &v)
{
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i)
  {
    if (i > 0)
    {
      out += ", ";
    }
    if constexpr (std::is_floating_point_v<T>)
    {
      out += fmt(v[i]);
    }
    else
    {
      out += std::to_string(v[i]);
    }
  }
  return out;
}

}  // namespace

std::vector<int> parse_int_list(const std::string &text)
{
  std::vector<int> out;
  for (const auto &item : split_list(text))
  {
    out.push_back(to_int("list", item));
  }
  return out;
}

std::vector<double> parse_double_list(const std::string &text)
{
  std::vector<double> out;
  for (const auto &item : split_list(text))
  {
    out.push_back(to_double("list", item));
  }
  return out;
}

void RunConfig::validate() const
{
  if (!(E > 0.0) || !(q > 0.0) || !(Ze > 0.0))
  {
    throw ConfigError("config: E, q and Ze must be positive");
  }
  if (!(b > 0.0))
  {
    throw ConfigError("config: basis scale b must be positive");
  }
  if (N.empty())
  {
    throw ConfigError("config: basis list N is empty");
  }
  for (int n : N)
  {
    if (n < 1)
    {
      throw ConfigError("config: basis sizes must be positive");
    }
  }
  tensor_contour().validate();
  for (double d : eval_D)
  {
    eval_contour(d).validate();
  }
  if (quadrature.n_radial < 2 || quadrature.n_angular < 2)
  {
    throw ConfigError("config: quadrature orders must be at least 2");
  }
  for (int f : figures)
  {
    if (f < 3 || f > 17)
    {
      throw ConfigError("config: figure ids run from 3 to 17");
    }
  }
}

TemkinPoetProblem RunConfig::problem(int n) const
{
  TemkinPoetProblem p;
  p.E = E;
  p.q = q;
  p.Ze = Ze;
  p.b = b;
  p.N = n;
  return p;
}

ContourSpec RunConfig::tensor_contour() const
{
  ContourSpec c = contour;
  c.E = E;
  return c;
}

ContourSpec RunConfig::eval_contour(double D) const
{
  ContourSpec c;
  c.kind = ContourKind::rational_deformation;
  c.E = E;
  c.D = D;
  c.extent = eval_extent;
  c.scale = eval_scale;
  c.panels = eval_panels;
  c.nodes_per_panel = eval_nodes;
  return c;
}

RunConfig RunConfig::parse(const std::string &text)
{
  RunConfig c;
  std::stringstream ss(text);
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(ss, line))
  {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos)
    {
      line.erase(hash);
    }
    line = trim(line);
    if (line.empty())
    {
      continue;
    }
    if (line.front() == '[')
    {
      if (line.back() != ']')
      {
        throw ConfigError("config line " + std::to_string(lineno) + ": malformed section header");
      }
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
    {
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const std::string full = section + "." + key;

    if (full == "physics.E") c.E = to_double(full, value);
    else if (full == "physics.q") c.q = to_double(full, value);
    else if (full == "physics.Ze") c.Ze = to_double(full, value);
    else if (full == "physics.b") c.b = to_double(full, value);
    else if (full == "basis.N") c.N = parse_int_list(value);
    else if (full == "contour.kind")
    {
      if (value == "c1") c.contour.kind = ContourKind::rotated_line;
      else if (value == "c2") c.contour.kind = ContourKind::rational_deformation;
      else throw ConfigError("config: contour.kind must be c1 or c2");
    }
    else if (full == "contour.phi") c.contour.phi = to_double(full, value);
    else if (full == "contour.D") c.contour.D = to_double(full, value);
    else if (full == "contour.extent") c.contour.extent = to_double(full, value);
    else if (full == "contour.scale") c.contour.scale = to_double(full, value);
    else if (full == "contour.panels") c.contour.panels = to_int(full, value);
    else if (full == "contour.nodes") c.contour.nodes_per_panel = to_int(full, value);
    else if (full == "evaluation.D") c.eval_D = parse_double_list(value);
    else if (full == "evaluation.extent") c.eval_extent = to_double(full, value);
    else if (full == "evaluation.scale") c.eval_scale = to_double(full, value);
    else if (full == "evaluation.panels") c.eval_panels = to_int(full, value);
    else if (full == "evaluation.nodes") c.eval_nodes = to_int(full, value);
    else if (full == "quadrature.radial") c.quadrature.n_radial = to_int(full, value);
    else if (full == "quadrature.angular") c.quadrature.n_angular = to_int(full, value);
    else if (full == "output.dir") c.out_dir = value;
    else if (full == "output.cache") c.cache_dir = value;
    else if (full == "output.figures") c.figures = parse_int_list(value);
    else throw ConfigError("config line " + std::to_string(lineno) + ": unknown key '" + full + "'");
  }
  c.validate();
  return c;
}

RunConfig RunConfig::load(const std::string &path)
{
  std::ifstream in(path);
  if (!in)
  {
    throw ConfigError("config: cannot open " + path);
  }
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

std::string RunConfig::serialize() const
{
  std::ostringstream os;
  os << "[physics]\n"
     << "E = " << fmt(E) << "\n"
     << "q = " << fmt(q) << "\n"
     << "Ze = " << fmt(Ze) << "\n"
     << "b = " << fmt(b) << "\n\n"
     << "[basis]\n"
     << "N = " << join(N) << "\n\n"
     << "[contour]\n"
     << "kind = " << (contour.kind == ContourKind::rotated_line ? "c1" : "c2") << "\n"
     << "phi = " << fmt(contour.phi) << "\n"
     << "D = " << fmt(contour.D) << "\n"
     << "extent = " << fmt(contour.extent) << "\n"
     << "scale = " << fmt(contour.scale) << "\n"
     << "panels = " << contour.panels << "\n"
     << "nodes = " << contour.nodes_per_panel << "\n\n"
     << "[evaluation]\n"
     << "D = " << join(eval_D) << "\n"
     << "extent = " << fmt(eval_extent) << "\n"
     << "scale = " << fmt(eval_scale) << "\n"
     << "panels = " << eval_panels << "\n"
     << "nodes = " << eval_nodes << "\n\n"
     << "[quadrature]\n"
     << "radial = " << quadrature.n_radial << "\n"
     << "angular = " << quadrature.n_angular << "\n\n"
     << "[output]\n"
     << "dir = " << out_dir << "\n"
     << "cache = " << cache_dir << "\n"
     << "figures = " << join(figures) << "\n";
  return os.str();
}

std::uint64_t RunConfig::fingerprint() const
{
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (const unsigned char ch : serialize())
  {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  return h;
}

}  // namespace cqs
