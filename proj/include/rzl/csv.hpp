#pragma once

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "rzl/bigreal.hpp"
#include "rzl/errors.hpp"

namespace rzl {

// %.{digits}Rg rendering, locale-independent; the writer never formats
// through streams so sweep CSVs are byte-stable.
inline std::string csv_num(const BigReal& v, int digits = 17) {
    char* s = nullptr;
    if (mpfr_asprintf(&s, "%.*Rg", digits, v.raw()) < 0)
        throw numeric_error("csv_num: mpfr formatting failed");
    std::string out(s);
    mpfr_free_str(s);
    return out;
}

inline std::string csv_num(double v, int digits = 17) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

class CsvWriter {
  public:
    CsvWriter(const std::string& path, const std::string& header) : f_(path, std::ios::binary) {
        if (!f_)
            throw input_error("cannot open output file: " + path);
        f_ << header << '\n';
    }
    void row(const std::vector<std::string>& fields) {
        for (size_t i = 0; i < fields.size(); ++i) {
            if (i)
                f_ << ',';
            f_ << fields[i];
        }
        f_ << '\n';
        if (!f_)
            throw input_error("csv write failed");
    }

  private:
    std::ofstream f_;
};

} // namespace rzl
