#include "walklis/walk_io.hpp"

#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace walklis {

namespace {

constexpr char kMagic[4] = {'W', 'L', 'K', 'S'};
constexpr std::uint32_t kVersion = 1;

template <typename T>
void put(std::ostream& out, T v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(v));
}

template <typename T>
T get(std::istream& in) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof(v));
  if (!in) throw std::runtime_error("walk file truncated");
  return v;
}

}  // namespace

void save_walk_binary(const Walk& walk, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out.write(kMagic, 4);
  put<std::uint32_t>(out, kVersion);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(walk.law.kind));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(walk.law.uniform_half_width));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(walk.dim()));
  put<std::uint64_t>(out, walk.seed);
  put<std::int64_t>(out, walk.steps);
  out.write(reinterpret_cast<const char*>(walk.values.data()),
            static_cast<std::streamsize>(walk.values.size() * sizeof(double)));
  if (!out) throw std::runtime_error("short write to " + path);
}

Walk load_walk_binary(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kMagic, 4) != 0) {
    throw std::runtime_error(path + ": not a walk file");
  }
  if (get<std::uint32_t>(in) != kVersion) throw std::runtime_error(path + ": unknown version");
  Walk w;
  w.law.kind = static_cast<LawKind>(get<std::uint32_t>(in));
  w.law.uniform_half_width = static_cast<int>(get<std::uint32_t>(in));
  w.law.dimension = static_cast<int>(get<std::uint32_t>(in));
  w.seed = get<std::uint64_t>(in);
  w.steps = get<std::int64_t>(in);
  if (w.law.dimension < 1 || w.steps < 0) throw std::runtime_error(path + ": bad header");
  w.values.resize(static_cast<std::size_t>(w.steps + 1) * w.law.dimension);
  in.read(reinterpret_cast<char*>(w.values.data()),
          static_cast<std::streamsize>(w.values.size() * sizeof(double)));
  if (!in) throw std::runtime_error(path + ": truncated body");
  return w;
}

void write_walk_csv(const Walk& walk, std::ostream& out) {
  out << "t";
  for (int c = 1; c <= walk.dim(); ++c) out << ",x" << c;
  out << "\n";
  std::ostringstream row;
  row.precision(17);
  for (std::int64_t t = 0; t <= walk.steps; ++t) {
    row.str("");
    row << t;
    for (int c = 0; c < walk.dim(); ++c) row << ',' << walk.at(t, c);
    out << row.str() << "\n";
  }
}

void save_walk_csv(const Walk& walk, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  write_walk_csv(walk, out);
  if (!out) throw std::runtime_error("short write to " + path);
}

void save_chain_csv(const std::vector<std::int64_t>& chain, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "index\n";
  for (auto i : chain) out << i << "\n";
  if (!out) throw std::runtime_error("short write to " + path);
}

std::vector<double> parse_sequence_file(const std::string& path, int dimension) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::vector<double> values;
  std::string line;
  std::int64_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream row(line);
    std::string token;
    while (row >> token) {
      try {
        std::size_t used = 0;
        const double v = std::stod(token, &used);
        if (used != token.size()) throw std::invalid_argument(token);
        values.push_back(v);
      } catch (const std::exception&) {
        throw std::runtime_error(path + ":" + std::to_string(lineno) + ": bad value '" + token +
                                 "'");
      }
    }
  }
  if (values.empty()) throw std::runtime_error(path + ": empty sequence");
  if (dimension > 1 && values.size() % static_cast<std::size_t>(dimension) != 0) {
    throw std::runtime_error(path + ": value count not a multiple of dimension");
  }
  return values;
}

}  // namespace walklis
