#pragma once

#include <span>
#include <string>
#include <vector>

namespace hulc {

// Column-major numeric table with column roles. The unit of splitting and
// subsampling; estimators see it only through row-index slices.
struct Dataset {
    std::vector<std::string> names;
    std::vector<std::vector<double>> cols;

    int response = -1;            // response column for regression estimators
    std::vector<int> covariates;  // covariate columns, in design order
    int sample_col = 0;           // column carrying univariate samples

    int n_rows() const { return cols.empty() ? 0 : static_cast<int>(cols[0].size()); }
    int n_cols() const { return static_cast<int>(cols.size()); }

    const std::vector<double>& column(int k) const { return cols.at(k); }

    static Dataset univariate(std::vector<double> values,
                              std::string name = "x");

    // (x, y) pairs with x as the single covariate and y as the response.
    static Dataset xy(std::vector<double> x, std::vector<double> y);

    void validate() const;  // finite values, equal column lengths
};

// CSV with a header row, numeric cells. Roles are assigned by convention:
// a column named "y" (else the last column) is the response, everything
// else a covariate; the first column carries univariate samples.
Dataset read_csv(const std::string& path);

}  // namespace hulc
