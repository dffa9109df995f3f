#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace gaia::cli {

// 17 significant digits in scientific notation; -0 is written as +0.
std::string format_number(double x);

// RFC 4180 rows (CRLF line endings, quoting only where needed).
class CsvWriter {
public:
    explicit CsvWriter(std::ostream& out) : out_(out) {}
    void row(const std::vector<std::string>& fields);

private:
    std::ostream& out_;
};

}  // namespace gaia::cli
