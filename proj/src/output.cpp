#include "pxp/output.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "pxp/errors.hpp"

namespace pxp {

namespace fs = std::filesystem;

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string spectrum_csv(int sites, std::span<const SpectrumEntry> entries) {
  std::string out = "L,omega_d,h,m,quasi_energy,overlap_sq,state_label\n";
  for (const auto& e : entries) {
    const auto& p = e.profile;
    for (Eigen::Index m = 0; m < p.quasi_energies.size(); ++m) {
      out += std::to_string(sites) + ',' + format_number(e.omega_d) + ',' + format_number(e.h) + ',' +
             std::to_string(m) + ',' + format_number(p.quasi_energies[m]) + ',' +
             format_number(p.weights[m]) + ',' + p.label + '\n';
    }
  }
  return out;
}

std::string sweep_csv(const SweepResult& sweep) {
  std::string out = "L,state,omega_d,h,n,fidelity\n";
  const std::string prefix = std::to_string(sweep.grid.sites) + ',' + sweep.grid.state + ',';
  for (const auto& r : sweep.rows) {
    out += prefix + format_number(r.omega_d) + ',' + format_number(r.h) + ',' + std::to_string(r.n) +
           ',' + format_number(r.fidelity) + '\n';
  }
  return out;
}

std::string thermalization_csv(const ThermalizationTrace& trace) {
  std::string out = "n,t,site,x,y,z,d_inst,d_avg\n";
  auto row = [&](const ThermalizationRecord& r, int site, const BlochVector& b, double di,
                 double da) {
    out += std::to_string(r.n) + ',' + format_number(r.t) + ',' + std::to_string(site) + ',' +
           format_number(b.x) + ',' + format_number(b.y) + ',' + format_number(b.z) + ',' +
           format_number(di) + ',' + format_number(da) + '\n';
  };
  for (const auto& r : trace.records) {
    row(r, 0, r.chain, r.chain_d_inst, r.chain_d_avg);
    for (std::size_t j = 0; j < r.sites.size(); ++j) {
      row(r, static_cast<int>(j) + 1, r.sites[j], r.d_inst[j], r.d_avg[j]);
    }
  }
  return out;
}

std::string nrev_csv(int sites, const std::string& state, std::span<const NrevSeries> series) {
  std::string out = "L,state,omega_d,h,delta_eps,n_rev\n";
  const std::string prefix = std::to_string(sites) + ',' + state + ',';
  for (const auto& s : series) {
    for (const auto& e : s.profile) {
      out += prefix + format_number(s.omega_d) + ',' + format_number(e.h) + ',' +
             format_number(e.delta_eps) + ',' + format_number(e.n_rev) + '\n';
    }
  }
  return out;
}

std::string peaks_csv(int sites, const std::string& state, std::span<const PeakSeries> series) {
  std::string out = "L,state,omega_d,n,h_peak,height,prominence,width\n";
  const std::string prefix = std::to_string(sites) + ',' + state + ',';
  for (const auto& s : series) {
    for (const auto& p : s.peaks) {
      out += prefix + format_number(s.omega_d) + ',' + std::to_string(s.n) + ',' +
             format_number(p.h) + ',' + format_number(p.height) + ',' +
             format_number(p.prominence) + ',' + format_number(p.width) + '\n';
    }
  }
  return out;
}

OutputWriter::OutputWriter(fs::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec || !fs::is_directory(dir_)) {
    throw IoError("cannot create output directory '" + dir_.string() + "'");
  }
  const fs::path probe = dir_ / ".pxp-write-probe";
  {
    std::ofstream f(probe);
    if (!f) throw IoError("output directory '" + dir_.string() + "' is not writable");
  }
  fs::remove(probe, ec);
}

void OutputWriter::write(const std::string& name, std::string_view content) {
  const fs::path path = dir_ / name;
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open '" + path.string() + "' for writing");
  f.write(content.data(), static_cast<std::streamsize>(content.size()));
  f.close();
  if (!f) throw IoError("failed writing '" + path.string() + "'");
  files_.push_back({name, fnv1a64(content), content.size()});
}

std::string gnuplot_script(const std::string& command, std::span<const OutputFile> files) {
  std::string out = "# gnuplot script for '" + command + "'\n";
  out += "set datafile separator ','\nset key autotitle columnhead\n";
  for (const auto& f : files) {
    const std::string& n = f.name;
    if (n == "spectrum.csv") {
      out += "set terminal pngcairo size 900,600\nset output 'spectrum.png'\n"
             "set xlabel 'h'\nset ylabel 'quasi-energy'\n"
             "plot 'spectrum.csv' using 3:5:(0.2+2*$6) with points pt 7 ps variable notitle\n";
    } else if (n == "sweep.csv") {
      out += "set terminal pngcairo size 900,600\nset output 'sweep.png'\n"
             "set xlabel 'h'\nset ylabel 'n'\nset view map\n"
             "splot 'sweep.csv' using 4:5:6 with points pt 5 ps 0.6 palette notitle\n";
    } else if (n == "thermalization.csv") {
      out += "set terminal pngcairo size 900,600\nset output 'thermalization.png'\n"
             "set xlabel 'n'\nset ylabel 'Z (chain average)'\nunset view\n"
             "plot 'thermalization.csv' using 1:($3==0 ? $6 : 1/0) with lines title 'Z'\n";
    } else if (n == "nrev.csv") {
      out += "set terminal pngcairo size 900,600\nset output 'nrev.png'\n"
             "set xlabel 'h'\nset ylabel 'n_rev'\nunset view\n"
             "plot 'nrev.csv' using 4:6 with points pt 7 notitle\n";
    } else if (n == "peaks.csv") {
      out += "set terminal pngcairo size 900,600\nset output 'peaks.png'\n"
             "set xlabel 'n'\nset ylabel 'h_peak'\nunset view\n"
             "plot 'peaks.csv' using 4:5:($8/2) with yerrorbars notitle\n";
    }
  }
  return out;
}

}  // namespace pxp
