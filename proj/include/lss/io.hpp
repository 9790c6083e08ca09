// Apache License, Version 2.0, refer to LICENSE.txt

#ifndef LSS_IO_HPP
#define LSS_IO_HPP

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "lss/diagnostics.hpp"
#include "lss/latent_slice.hpp"
#include "lss/targets.hpp"

namespace lss::io {

//! Samples CSV: header "iter,y1,...,yd", doubles printed with %.17g so a
//! rerun with the same seed reproduces the file byte for byte.
void write_samples_csv(const std::filesystem::path& path,
                       const ChainOutput& chain);

//! Single-column variant for scalar chains (theta draws, predictive draws).
void write_series_csv(const std::filesystem::path& path,
                      const std::string& column_name,
                      const std::vector<double>& series);

//! Summary JSON: {experiment, seed, n, dim, wall_time_s, summaries: [...]}.
void write_summary_json(const std::filesystem::path& path,
                        const std::string& experiment, std::uint64_t seed,
                        std::size_t n, double wall_time_s,
                        const std::vector<diag::ChainSummary>& per_dimension);

//! Numeric table with a header row; the dataset freeze/reload format.
struct Table {
  std::vector<std::string> columns;
  std::size_t rows = 0;
  std::vector<double> data;  // row-major

  double at(std::size_t r, std::size_t c) const {
    return data[r * columns.size() + c];
  }
};

void write_table_csv(const std::filesystem::path& path, const Table& table);
Table read_table_csv(const std::filesystem::path& path);

// Dataset freeze/reload.  Column layouts:
//   plain series          x
//   gp                    x, y, f_true
//   state-space           y, x_true
//   spike-slab            y, x1..xp   (the coefficient truth is not part of
//                                      the inference problem and is left out)
Table table_from_series(const std::string& column, const std::vector<double>& xs);
std::vector<double> series_from_table(const Table& table);

Table table_from_gp(const targets::GpData& data);
targets::GpData gp_from_table(const Table& table, double noise_sd = 0.2);

Table table_from_state_space(const targets::StateSpaceData& data);
targets::StateSpaceData state_space_from_table(const Table& table,
                                               double rho = 0.8);

Table table_from_spike_slab(const targets::SpikeSlabData& data);
targets::SpikeSlabData spike_slab_from_table(const Table& table);

}  // namespace lss::io

#endif
