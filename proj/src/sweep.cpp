#include "bellnet/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace bellnet {

std::vector<double> SweepSpec::grid() const {
    if (step <= 0.0) throw std::invalid_argument("sweep: step must be positive");
    if (start > stop) throw std::invalid_argument("sweep: start must not exceed stop");
    std::vector<double> values;
    const long count = std::lround((stop - start) / step);
    for (long k = 0; k <= count; ++k) {
        const double v = start + k * step;
        if (v <= stop + 1e-12) values.push_back(v);
    }
    return values;
}

bool SweepTable::has_errors() const {
    for (const std::string& e : errors)
        if (!e.empty()) return true;
    return false;
}

std::string SweepTable::to_csv() const {
    std::ostringstream out;
    const bool with_errors = has_errors();
    for (std::size_t c = 0; c < header.size(); ++c) out << (c ? "," : "") << header[c];
    if (with_errors) out << ",error";
    out << "\n";
    char buf[40];
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < header.size(); ++c) {
            if (c) out << ",";
            if (c < rows[r].size()) {
                std::snprintf(buf, sizeof buf, "%.12g", rows[r][c]);
                out << buf;
            }
        }
        if (with_errors) out << "," << errors[r];
        out << "\n";
    }
    return out.str();
}

int sweep_thread_cap() {
    if (const char* env = std::getenv("BELLNET_THREADS")) {
        const int cap = std::atoi(env);
        if (cap >= 1) return cap;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

SweepTable run_sweep(const SweepSpec& spec, const std::vector<std::string>& columns,
                     const std::function<std::vector<double>(double)>& task) {
    const std::vector<double> grid = spec.grid();
    SweepTable table;
    table.header.push_back(spec.variable);
    table.header.insert(table.header.end(), columns.begin(), columns.end());
    table.rows.assign(grid.size(), {});
    table.errors.assign(grid.size(), "");

    const int workers = std::min<int>(sweep_thread_cap(), static_cast<int>(grid.size()));
    std::atomic<std::size_t> next{0};
    auto work = [&]() {
        for (;;) {
            const std::size_t k = next.fetch_add(1);
            if (k >= grid.size()) return;
            table.rows[k].push_back(grid[k]);
            try {
                const std::vector<double> values = task(grid[k]);
                table.rows[k].insert(table.rows[k].end(), values.begin(), values.end());
            } catch (const std::exception& ex) {
                table.errors[k] = ex.what();
            }
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < workers; ++t) pool.emplace_back(work);
        for (std::thread& t : pool) t.join();
    }
    return table;
}

}  // namespace bellnet
