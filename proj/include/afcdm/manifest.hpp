#pragma once
// Solution directory layout: a plain-text `manifest.txt` (key = value lines:
// family, shell configuration, grid, Killing pattern, provenance, recorded
// residual norms) plus one field file per coefficient under fields/.

#include <filesystem>
#include <map>
#include <string>

#include "afcdm/curvature.hpp"
#include "afcdm/generator.hpp"
#include "afcdm/smetric.hpp"

namespace afcdm {

struct Solution {
    SMetric metric;
    ScalarField psi, j1;
    std::array<ScalarField, 3> sources;
    std::map<std::string, std::string> provenance;  // free-form manifest entries
};

// writes manifest.txt + fields/*.<ext>; ext is "fld" (binary) or "csv"
void write_solution(const std::filesystem::path& dir, const Solution& sol,
                    const FieldEqResidualReport& residuals, const std::string& ext = "fld");

Solution read_solution(const std::filesystem::path& dir);

// recorded residual norms from a manifest (key -> value)
std::map<std::string, double> recorded_residuals(const std::filesystem::path& dir);

// flatten a residual report into manifest keys (residual.poisson.linf, ...)
std::map<std::string, double> residual_map(const FieldEqResidualReport& rep);

// losslessly convert between the binary and CSV layouts
void export_solution(const std::filesystem::path& dir, const std::string& format);

}  // namespace afcdm
