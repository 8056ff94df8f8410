#pragma once

#include <functional>
#include <string>
#include <vector>

namespace bellnet {

struct SweepSpec {
    std::string variable;
    double start = 0.0;
    double stop = 0.0;
    double step = 1.0;

    std::vector<double> grid() const;
};

struct SweepTable {
    std::vector<std::string> header;   // variable name first, then value columns
    std::vector<std::vector<double>> rows;
    std::vector<std::string> errors;   // one per row, empty when the row succeeded

    bool has_errors() const;
    std::string to_csv() const;        // floats with 12 significant digits
};

/// Evaluate `task` on every grid point; rows appear in grid order, failures
/// land in the error column instead of aborting. Rows run concurrently up to
/// BELLNET_THREADS (default: hardware concurrency).
SweepTable run_sweep(const SweepSpec& spec, const std::vector<std::string>& columns,
                     const std::function<std::vector<double>(double)>& task);

int sweep_thread_cap();

}  // namespace bellnet
