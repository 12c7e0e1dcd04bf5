#pragma once

// CSV output at full double precision (17 significant digits) so that
// regression files compare bit-exactly.

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "reidlab/errors.hpp"

namespace reidlab::csv {

inline std::string format_double(double v) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.17g", v);
    return buffer;
}

class Writer {
public:
    explicit Writer(const std::string& path, const std::string& header)
        : out_(path) {
        if (!out_) throw ConfigError("csv: cannot open " + path);
        out_ << header << "\n";
    }

    void row(const std::vector<double>& values) {
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (i > 0) out_ << ",";
            out_ << format_double(values[i]);
        }
        out_ << "\n";
    }

private:
    std::ofstream out_;
};

}  // namespace reidlab::csv
