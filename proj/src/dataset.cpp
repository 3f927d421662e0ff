#include "hulc/dataset.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace hulc {

Dataset Dataset::univariate(std::vector<double> values, std::string name) {
    Dataset ds;
    ds.names.push_back(std::move(name));
    ds.cols.push_back(std::move(values));
    ds.sample_col = 0;
    return ds;
}

Dataset Dataset::xy(std::vector<double> x, std::vector<double> y) {
    if (x.size() != y.size()) {
        throw std::invalid_argument("x and y must have equal length");
    }
    Dataset ds;
    ds.names = {"x", "y"};
    ds.cols.push_back(std::move(x));
    ds.cols.push_back(std::move(y));
    ds.response = 1;
    ds.covariates = {0};
    ds.sample_col = 0;
    return ds;
}

void Dataset::validate() const {
    if (cols.empty() || cols[0].empty()) {
        throw std::invalid_argument("dataset must have at least one row");
    }
    const std::size_t n = cols[0].size();
    for (std::size_t k = 0; k < cols.size(); ++k) {
        if (cols[k].size() != n) {
            throw std::invalid_argument("ragged dataset: column " +
                                        std::to_string(k));
        }
        for (double v : cols[k]) {
            if (!std::isfinite(v)) {
                throw std::invalid_argument("non-finite value in column " +
                                            std::to_string(k));
            }
        }
    }
}

Dataset read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);

    Dataset ds;
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error(path + ": empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();

    std::stringstream header(line);
    std::string cell;
    while (std::getline(header, cell, ',')) {
        ds.names.push_back(cell);
        ds.cols.emplace_back();
    }
    if (ds.names.empty()) throw std::runtime_error(path + ": no columns");

    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::stringstream row(line);
        std::size_t k = 0;
        while (std::getline(row, cell, ',')) {
            if (k >= ds.cols.size()) {
                throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                         ": too many cells");
            }
            try {
                ds.cols[k].push_back(std::stod(cell));
            } catch (const std::exception&) {
                throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                         ": cannot parse '" + cell + "'");
            }
            ++k;
        }
        if (k != ds.cols.size()) {
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": too few cells");
        }
    }

    // Role convention: response is the column named "y", else the last
    // column when there are several; covariates are the remaining columns.
    ds.sample_col = 0;
    if (ds.n_cols() > 1) {
        ds.response = ds.n_cols() - 1;
        for (int k = 0; k < ds.n_cols(); ++k) {
            if (ds.names[k] == "y") ds.response = k;
        }
        for (int k = 0; k < ds.n_cols(); ++k) {
            if (k != ds.response) ds.covariates.push_back(k);
        }
    }
    ds.validate();
    return ds;
}

}  // namespace hulc
