#include <bit>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "cqs/cqs2p.hpp"
#include "cqs/error.hpp"

namespace cqs
{

namespace
{

constexpr const char *magic = "cqs-tensor 1";

std::string format_double(double x)
{
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string hex64(std::uint64_t v)
{
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

void put_le(std::ostream &os, double x)
{
  std::uint64_t bits = std::bit_cast<std::uint64_t>(x);
  char bytes[8];
  for (int i = 0; i < 8; ++i)
  {
    bytes[i] = static_cast<char>((bits >> (8 * i)) & 0xffu);
  }
  os.write(bytes, 8);
}

double get_le(std::istream &is)
{
  unsigned char bytes[8];
  is.read(reinterpret_cast<char *>(bytes), 8);
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i)
  {
    bits |= static_cast<std::uint64_t>(bytes[i]) << (8 * i);
  }
  return std::bit_cast<double>(bits);
}

}  // namespace

std::uint64_t tensor_fingerprint(double E, const LaguerreBasisSpec &spec1,
                                 const LaguerreBasisSpec &spec2, const std::string &contour)
{
  std::ostringstream key;
  key << "E=" << format_double(E) << ";b1=" << format_double(spec1.b) << ";l1=" << spec1.l
      << ";b2=" << format_double(spec2.b) << ";l2=" << spec2.l << ";N=" << spec1.N
      << ";contour=" << contour;
  std::uint64_t h = 1469598103934665603ull;
  for (const unsigned char ch : key.str())
  {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

std::string tensor_cache_name(double E, const LaguerreBasisSpec &spec1, const LaguerreBasisSpec &spec2,
                              const std::string &contour)
{
  return "tensor-N" + std::to_string(spec1.N) + "-" + hex64(tensor_fingerprint(E, spec1, spec2, contour)) +
         ".bin";
}

std::string tensor_cache_name(const CqsTensor &tensor)
{
  return tensor_cache_name(tensor.E, tensor.spec1, tensor.spec2, tensor.contour);
}

void save_tensor(const CqsTensor &t, const std::string &path)
{
  const std::string tmp = path + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os)
    {
      throw std::runtime_error("save_tensor: cannot open " + tmp);
    }
    os << magic << "\n";
    os << "E = " << format_double(t.E) << "\n";
    os << "N = " << t.spec1.N << "\n";
    os << "rows = " << t.rows << "\n";
    os << "b1 = " << format_double(t.spec1.b) << "\n";
    os << "l1 = " << t.spec1.l << "\n";
    os << "b2 = " << format_double(t.spec2.b) << "\n";
    os << "l2 = " << t.spec2.l << "\n";
    os << "contour = " << t.contour << "\n";
    os << "fingerprint = " << hex64(tensor_fingerprint(t.E, t.spec1, t.spec2, t.contour)) << "\n";
    os << "payload\n";
    for (Eigen::Index i = 0; i < t.entries.rows(); ++i)
    {
      for (Eigen::Index j = 0; j < t.entries.cols(); ++j)
      {
        put_le(os, t.entries(i, j).real());
        put_le(os, t.entries(i, j).imag());
      }
    }
    if (!os)
    {
      throw std::runtime_error("save_tensor: write failed for " + tmp);
    }
  }
  std::filesystem::rename(tmp, path);
}

CqsTensor load_tensor(const std::string &path)
{
  std::ifstream is(path, std::ios::binary);
  if (!is)
  {
    throw std::runtime_error("load_tensor: cannot open " + path);
  }
  std::string line;
  std::getline(is, line);
  if (line != magic)
  {
    throw std::runtime_error("load_tensor: " + path + " is not a tensor cache file");
  }
  std::map<std::string, std::string> header;
  while (std::getline(is, line) && line != "payload")
  {
    const auto eq = line.find(" = ");
    if (eq == std::string::npos)
    {
      throw std::runtime_error("load_tensor: malformed header line '" + line + "'");
    }
    header[line.substr(0, eq)] = line.substr(eq + 3);
  }
  if (line != "payload")
  {
    throw std::runtime_error("load_tensor: missing payload in " + path);
  }
  CqsTensor t;
  try
  {
    t.E = std::stod(header.at("E"));
    t.spec1 = {std::stod(header.at("b1")), std::stoi(header.at("l1")), std::stoi(header.at("N"))};
    t.spec2 = {std::stod(header.at("b2")), std::stoi(header.at("l2")), std::stoi(header.at("N"))};
    t.rows = std::stoi(header.at("rows"));
    t.contour = header.at("contour");
  }
  catch (const std::exception &e)
  {
    throw std::runtime_error("load_tensor: incomplete header in " + path + ": " + e.what());
  }
  if (header["fingerprint"] != hex64(tensor_fingerprint(t.E, t.spec1, t.spec2, t.contour)))
  {
    throw std::runtime_error("load_tensor: fingerprint mismatch in " + path);
  }
  const int n = t.spec1.N;
  t.entries.resize(static_cast<Eigen::Index>(t.rows) * t.rows, static_cast<Eigen::Index>(n) * n);
  for (Eigen::Index i = 0; i < t.entries.rows(); ++i)
  {
    for (Eigen::Index j = 0; j < t.entries.cols(); ++j)
    {
      const double re = get_le(is);
      const double im = get_le(is);
      t.entries(i, j) = cplx(re, im);
    }
  }
  if (!is)
  {
    throw std::runtime_error("load_tensor: truncated payload in " + path);
  }
  return t;
}

CqsTensor cached_tensor(const std::string &dir, double E, const LaguerreBasisSpec &spec1,
                        const LaguerreBasisSpec &spec2, const ContourSpec &contour)
{
  namespace fs = std::filesystem;
  const fs::path path = fs::path(dir) / tensor_cache_name(E, spec1, spec2, contour.canonical());
  if (fs::exists(path))
  {
    try
    {
      CqsTensor t = load_tensor(path.string());
      if (t.rows == spec1.N && t.contour == contour.canonical())
      {
        return t;
      }
    }
    catch (const std::runtime_error &)
    {
      // Unreadable or stale entry: rebuild below.
    }
  }
  CqsTensor t = build_tensor(E, spec1, spec2, contour);
  fs::create_directories(dir);
  save_tensor(t, path.string());
  return t;
}

}  // namespace cqs
