#include "kerrsol/snapshot_io.hpp"

#include <bit>
#include <cstdint>
#include <stdexcept>

namespace kerrsol {

static_assert(std::endian::native == std::endian::little,
              "the snapshot container is defined little-endian");

namespace {
constexpr char kMagic[8] = {'K', 'S', 'O', 'L', 'S', 'N', 'P', '1'};
constexpr std::streamoff kCountOffset = 8 + 4 + 8;

void write_u32(std::ostream& out, std::uint32_t v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(v));
}
void write_f64(std::ostream& out, double v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(v));
}
std::uint32_t read_u32(std::istream& in) {
  std::uint32_t v = 0;
  in.read(reinterpret_cast<char*>(&v), sizeof(v));
  return v;
}
double read_f64(std::istream& in) {
  double v = 0;
  in.read(reinterpret_cast<char*>(&v), sizeof(v));
  return v;
}

void write_cvec(std::ostream& out, const Eigen::VectorXcd& v) {
  out.write(reinterpret_cast<const char*>(v.data()),
            static_cast<std::streamsize>(v.size()) * sizeof(std::complex<double>));
}
void write_cmat(std::ostream& out, const Eigen::MatrixXcd& m) {
  out.write(reinterpret_cast<const char*>(m.data()),
            static_cast<std::streamsize>(m.size()) * sizeof(std::complex<double>));
}
void read_cvec(std::istream& in, Eigen::VectorXcd& v) {
  in.read(reinterpret_cast<char*>(v.data()),
          static_cast<std::streamsize>(v.size()) * sizeof(std::complex<double>));
}
void read_cmat(std::istream& in, Eigen::MatrixXcd& m) {
  in.read(reinterpret_cast<char*>(m.data()),
          static_cast<std::streamsize>(m.size()) * sizeof(std::complex<double>));
}
}  // namespace

SnapshotWriter::SnapshotWriter(const std::string& path, const GridSpec& grid)
    : out_(path, std::ios::binary), grid_(grid) {
  if (!out_) throw std::runtime_error("cannot open '" + path + "' for writing");
  out_.write(kMagic, sizeof(kMagic));
  write_u32(out_, static_cast<std::uint32_t>(grid.n_points()));
  write_f64(out_, grid.dx());
  write_u32(out_, 0);
}

SnapshotWriter::~SnapshotWriter() {
  try {
    close();
  } catch (...) {
  }
}

void SnapshotWriter::append(const GaussianFieldState& state) {
  if (closed_) throw std::runtime_error("snapshot writer already closed");
  if (state.grid.n_points() != grid_.n_points())
    throw std::invalid_argument("snapshot grid does not match the container header");
  write_f64(out_, state.time);
  write_cvec(out_, state.mean);
  write_cmat(out_, state.c_norm);
  write_cmat(out_, state.m_anom);
  ++count_;
}

void SnapshotWriter::close() {
  if (closed_) return;
  closed_ = true;
  out_.seekp(kCountOffset);
  write_u32(out_, static_cast<std::uint32_t>(count_));
  out_.flush();
  if (!out_) throw std::runtime_error("snapshot container write failed");
}

SnapshotReader::SnapshotReader(const std::string& path)
    : in_(path, std::ios::binary), grid_(8, 1.0) {
  if (!in_) throw std::runtime_error("cannot open '" + path + "' for reading");
  char magic[8];
  in_.read(magic, sizeof(magic));
  for (size_t i = 0; i < sizeof(magic); ++i)
    if (magic[i] != kMagic[i])
      throw std::runtime_error("'" + path + "' is not a snapshot container");
  const int n = static_cast<int>(read_u32(in_));
  const double dx = read_f64(in_);
  grid_ = GridSpec(n, dx);
  count_ = static_cast<int>(read_u32(in_));
  if (!in_) throw std::runtime_error("snapshot container header truncated");
}

std::optional<GaussianFieldState> SnapshotReader::next() {
  if (read_ >= count_) return std::nullopt;
  const int n = grid_.n_points();
  const double time = read_f64(in_);
  Eigen::VectorXcd mean(n);
  Eigen::MatrixXcd c(n, n), m(n, n);
  read_cvec(in_, mean);
  read_cmat(in_, c);
  read_cmat(in_, m);
  if (!in_) throw std::runtime_error("snapshot container truncated");
  ++read_;
  return GaussianFieldState(grid_, time, std::move(mean), std::move(c), std::move(m));
}

}  // namespace kerrsol
