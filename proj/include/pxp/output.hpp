#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pxp/fit.hpp"
#include "pxp/floquet.hpp"
#include "pxp/peaks.hpp"
#include "pxp/sweep.hpp"
#include "pxp/thermal.hpp"

namespace pxp {

/// Fixed 17-significant-digit rendering; "nan", "inf", "-inf" otherwise.
std::string format_number(double v);

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view bytes);
std::string hex64(std::uint64_t v);

struct SpectrumEntry {
  double omega_d;
  double h;
  OverlapProfile profile;
};

struct NrevSeries {
  double omega_d;
  std::vector<RevivalEstimate> profile;
};

struct PeakSeries {
  double omega_d;
  int n;
  std::vector<Peak> peaks;
};

// L,omega_d,h,m,quasi_energy,overlap_sq,state_label
std::string spectrum_csv(int sites, std::span<const SpectrumEntry> entries);
// L,state,omega_d,h,n,fidelity
std::string sweep_csv(const SweepResult& sweep);
// n,t,site,x,y,z,d_inst,d_avg   (site 0 is the chain average)
std::string thermalization_csv(const ThermalizationTrace& trace);
// L,state,omega_d,h,delta_eps,n_rev
std::string nrev_csv(int sites, const std::string& state, std::span<const NrevSeries> series);
// L,state,omega_d,n,h_peak,height,prominence,width
std::string peaks_csv(int sites, const std::string& state, std::span<const PeakSeries> series);

struct OutputFile {
  std::string name;
  std::uint64_t hash;
  std::size_t bytes;
};

/// Writes named files into one directory and remembers their hashes.
/// Throws IoError on any failure.
class OutputWriter {
 public:
  /// Creates the directory if needed and checks that it accepts files.
  explicit OutputWriter(std::filesystem::path dir);

  void write(const std::string& name, std::string_view content);
  const std::vector<OutputFile>& files() const { return files_; }
  const std::filesystem::path& dir() const { return dir_; }

 private:
  std::filesystem::path dir_;
  std::vector<OutputFile> files_;
};

/// gnuplot script plotting the CSVs a command wrote.
std::string gnuplot_script(const std::string& command, std::span<const OutputFile> files);

}  // namespace pxp
