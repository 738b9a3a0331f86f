#pragma once

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace revbench {

// RFC 4180 CSV writer: CRLF line endings, quoting only when needed.
class CsvWriter {
public:
    explicit CsvWriter(std::ostream& out) : out_(out) {}

    void row(const std::vector<std::string>& fields);

    static std::string escape(std::string_view field);

private:
    std::ostream& out_;
};

// Fixed-decimal formatting used for CSV cells so emitted tables are
// byte-stable across platforms. Empty optional -> empty cell.
std::string csv_num(double v, int decimals);

} // namespace revbench
