#include "cqec/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "cqec/baselines.hpp"

namespace cqec {

const char* const kTrajectoryCsvHeader =
    "t,F_logical,F_q1,F_q2,F_q3,sZZI_R,sIZZ_R,sZIZ_R,sZZI_E,sIZZ_E,sZIZ_E,"
    "dQ1,dQ2,dQ3,lam1,lam2,lam3";

std::string format_number(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.15g", x);
    return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);  // binary keeps LF endings everywhere
    if (!out) throw std::runtime_error("cannot write file: " + path);
    return out;
}

void write_row(std::ofstream& out, const std::vector<double>& vals) {
    for (std::size_t i = 0; i < vals.size(); ++i) {
        if (i) out << ',';
        out << format_number(vals[i]);
    }
    out << '\n';
}

}  // namespace

void write_trajectory_csv(const std::string& path, const std::vector<Frame>& frames) {
    auto out = open_out(path);
    out << kTrajectoryCsvHeader << '\n';
    for (const auto& f : frames) {
        write_row(out, {f.t, f.f_logical, f.f_qubit[0], f.f_qubit[1], f.f_qubit[2],
                        f.synd_real[0], f.synd_real[1], f.synd_real[2], f.synd_est[0],
                        f.synd_est[1], f.synd_est[2], f.dq[0], f.dq[1], f.dq[2], f.lambdas[0],
                        f.lambdas[1], f.lambdas[2]});
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

void write_ensemble_csv(const std::string& path, const EnsembleResult& r) {
    auto out = open_out(path);
    out << "t,mean_fidelity,stderr\n";
    for (std::size_t i = 0; i < r.times.size(); ++i)
        write_row(out, {r.times[i], r.mean_fidelity[i], r.std_error[i]});
    if (!out) throw std::runtime_error("write failed: " + path);
}

void write_baseline_csv(const std::string& path, double gamma, double t_max, int n_points) {
    if (n_points < 2) throw std::invalid_argument("baseline grid needs >= 2 points");
    auto out = open_out(path);
    out << "t,F_DQEC,F1,F3\n";
    for (int i = 0; i < n_points; ++i) {
        const double t = t_max * static_cast<double>(i) / static_cast<double>(n_points - 1);
        write_row(out, {t, f_dqec_analytic(gamma, t), f_one_qubit(gamma, t),
                        f_three_qubit_uncorrected(gamma, t)});
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

int CsvTable::column(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
        if (columns[i] == name) return static_cast<int>(i);
    return -1;
}

std::vector<double> CsvTable::col(const std::string& name) const {
    const int idx = column(name);
    if (idx < 0) throw std::runtime_error("missing CSV column: " + name);
    std::vector<double> v;
    v.reserve(rows.size());
    for (const auto& r : rows) v.push_back(r[static_cast<std::size_t>(idx)]);
    return v;
}

CsvTable read_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read file: " + path);
    CsvTable table;
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty CSV: " + path);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream hs(line);
    std::string cell;
    while (std::getline(hs, cell, ',')) table.columns.push_back(cell);
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<double> row;
        row.reserve(table.columns.size());
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) {
            std::size_t pos = 0;
            const double v = std::stod(cell, &pos);
            if (pos != cell.size())
                throw std::runtime_error("bad CSV number '" + cell + "' in " + path);
            row.push_back(v);
        }
        if (row.size() != table.columns.size())
            throw std::runtime_error("ragged CSV row in " + path);
        table.rows.push_back(std::move(row));
    }
    return table;
}

}  // namespace cqec
