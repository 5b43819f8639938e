#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "ribbonlim/geometry.hpp"
#include "ribbonlim/surface.hpp"

namespace ribbonlim {

// Shortest decimal string that parses back to exactly the same double.
// Locale-independent; keeps reports compact and round-trip safe.
[[nodiscard]] std::string format_double(double v);

// Tabular report: `# key=value` comment lines (sorted by key when
// rendered), one column-name line, then numeric rows. LF endings always.
struct Table {
    std::vector<std::pair<std::string, std::string>> config;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

[[nodiscard]] std::string render_table(const Table& table);
void write_table(const std::filesystem::path& path, const Table& table);

// Sampled chart file: CSV with columns
//   t,D11,D21,D12,D22,kappa,Ao11,Ao12,Ao22
// (D listed column-wise: tangent first). Comment lines start with '#'.
[[nodiscard]] ReferenceChart read_chart_csv(const std::filesystem::path& path);

// Spontaneous-curvature table: CSV with columns t,Ao11,Ao12,Ao22.
[[nodiscard]] NaturalCurvature read_natural_csv(const std::filesystem::path& path);

// Profile samples: CSV with columns t,mu,tau.
struct ProfileSamples {
    std::vector<double> t, mu, tau;
};
[[nodiscard]] ProfileSamples read_profile_csv(const std::filesystem::path& path);

// Wavefront OBJ of a ruled mesh: one `v` line per vertex, row-major in t
// then s, then `f` triangles from each grid quad split along its shorter
// diagonal. Indices are 1-based per the format. config entries become
// sorted `# key=value` comment lines ahead of the geometry.
void write_obj(const std::filesystem::path& path, const RibbonMesh& mesh,
               const std::vector<std::pair<std::string, std::string>>& config = {});

}  // namespace ribbonlim
