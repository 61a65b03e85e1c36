#ifndef KERRSOL_SNAPSHOT_IO_HPP
#define KERRSOL_SNAPSHOT_IO_HPP

#include <fstream>
#include <optional>
#include <string>

#include "kerrsol/state.hpp"

namespace kerrsol {

// Snapshot container, little-endian binary:
//   bytes 0..7   magic "KSOLSNP1"
//   u32          n_points
//   f64          dx
//   u32          snapshot_count (patched on close)
// then per snapshot, all values f64 (re, im) pairs, matrices column-major:
//   time, mean[n], c_norm[n*n], m_anom[n*n]

class SnapshotWriter {
 public:
  SnapshotWriter(const std::string& path, const GridSpec& grid);
  ~SnapshotWriter();

  void append(const GaussianFieldState& state);
  /// Patches the snapshot count into the header; called by the destructor
  /// if not done explicitly.
  void close();

  int count() const { return count_; }

 private:
  std::ofstream out_;
  GridSpec grid_;
  int count_ = 0;
  bool closed_ = false;
};

class SnapshotReader {
 public:
  explicit SnapshotReader(const std::string& path);

  const GridSpec& grid() const { return grid_; }
  int count() const { return count_; }

  /// Next snapshot in file order, or nullopt past the end.
  std::optional<GaussianFieldState> next();

 private:
  std::ifstream in_;
  GridSpec grid_;
  int count_ = 0;
  int read_ = 0;
};

}  // namespace kerrsol

#endif
