#include "phasespace/io.hpp"

#include <cstring>
#include <fstream>

namespace phasespace {

namespace {

constexpr char kMagic[8] = {'P', 'S', 'F', 'L', 'D', '0', '0', '1'};

std::ofstream open_out(const std::filesystem::path& path, bool binary) {
  std::ofstream os(path, binary ? std::ios::binary : std::ios::out);
  if (!os) throw std::runtime_error("cannot open for writing: " + path.string());
  return os;
}

template <typename T>
void put(std::ofstream& os, const T& v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
void get(std::ifstream& is, T& v) {
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
}

void write_header(std::ofstream& os, uint32_t kind, const GridSpec2D& g, double hbar) {
  os.write(kMagic, sizeof(kMagic));
  put(os, kind);
  put(os, static_cast<uint32_t>(g.x.size()));
  put(os, static_cast<uint32_t>(g.p.size()));
  put(os, g.x.min());
  put(os, g.x.max());
  put(os, g.p.min());
  put(os, g.p.max());
  put(os, hbar);
}

}  // namespace

void write_field_csv(const std::filesystem::path& path, const RealField2D& f) {
  std::ofstream os = open_out(path, false);
  os.precision(17);
  os << "x,p,value\n";
  for (int i = 0; i < f.nx(); ++i)
    for (int j = 0; j < f.np(); ++j)
      os << f.grid().x.point(i) << ',' << f.grid().p.point(j) << ',' << f.at(i, j) << '\n';
}

void write_field_csv(const std::filesystem::path& path, const Field2D& f) {
  std::ofstream os = open_out(path, false);
  os.precision(17);
  os << "x,p,re,im\n";
  for (int i = 0; i < f.nx(); ++i)
    for (int j = 0; j < f.np(); ++j)
      os << f.grid().x.point(i) << ',' << f.grid().p.point(j) << ','
         << f.at(i, j).real() << ',' << f.at(i, j).imag() << '\n';
}

void write_field_binary(const std::filesystem::path& path, const RealField2D& f,
                        double hbar) {
  std::ofstream os = open_out(path, true);
  write_header(os, 0, f.grid(), hbar);
  os.write(reinterpret_cast<const char*>(f.values().data()),
           static_cast<std::streamsize>(f.values().size() * sizeof(double)));
}

void write_field_binary(const std::filesystem::path& path, const Field2D& f,
                        double hbar) {
  std::ofstream os = open_out(path, true);
  write_header(os, 1, f.grid(), hbar);
  os.write(reinterpret_cast<const char*>(f.values().data()),
           static_cast<std::streamsize>(f.values().size() * 2 * sizeof(double)));
}

LoadedField read_field_binary(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open for reading: " + path.string());
  char magic[8];
  is.read(magic, sizeof(magic));
  if (std::memcmp(magic, kMagic, sizeof(magic)) != 0)
    throw std::runtime_error("read_field_binary: bad magic");
  uint32_t kind, nx, np;
  get(is, kind);
  get(is, nx);
  get(is, np);
  if (kind != 0) throw std::runtime_error("read_field_binary: only real fields supported");
  double x_min, x_max, p_min, p_max, hbar;
  get(is, x_min);
  get(is, x_max);
  get(is, p_min);
  get(is, p_max);
  get(is, hbar);
  GridSpec2D g{GridSpec1D(x_min, x_max, static_cast<int>(nx)),
               GridSpec1D(p_min, p_max, static_cast<int>(np))};
  std::vector<double> values(static_cast<size_t>(nx) * np);
  is.read(reinterpret_cast<char*>(values.data()),
          static_cast<std::streamsize>(values.size() * sizeof(double)));
  if (!is) throw std::runtime_error("read_field_binary: truncated payload");
  return LoadedField{RealField2D(g, std::move(values)), hbar};
}

void write_reports_json(const std::filesystem::path& path,
                        std::span<const InequalityReport> reports) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : reports) arr.push_back(r.to_json());
  std::ofstream os = open_out(path, false);
  os << arr.dump(2) << '\n';
}

void write_reports_csv(const std::filesystem::path& path,
                       std::span<const InequalityReport> reports) {
  std::ofstream os = open_out(path, false);
  os << InequalityReport::csv_header() << '\n';
  for (const auto& r : reports) os << r.csv_row() << '\n';
}

}  // namespace phasespace
