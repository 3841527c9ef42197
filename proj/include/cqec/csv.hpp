#pragma once

#include <string>
#include <vector>

#include "cqec/ensemble.hpp"
#include "cqec/trajectory.hpp"

namespace cqec {

extern const char* const kTrajectoryCsvHeader;

// Decimal text with 15 significant digits.
std::string format_number(double x);

void write_trajectory_csv(const std::string& path, const std::vector<Frame>& frames);
void write_ensemble_csv(const std::string& path, const EnsembleResult& r);
void write_baseline_csv(const std::string& path, double gamma, double t_max, int n_points);

struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    int column(const std::string& name) const;  // -1 when absent
    std::vector<double> col(const std::string& name) const;  // throws when absent
};

CsvTable read_csv(const std::string& path);

}  // namespace cqec
