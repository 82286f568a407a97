#pragma once

#include <string>
#include <vector>

namespace newstraject::csv {

// RFC 4180 quoting: fields containing comma, quote, or newline get quoted,
// embedded quotes doubled.
std::string escape(const std::string& field);
std::string join_row(const std::vector<std::string>& fields);

// Parses a whole CSV document (handles quoted fields spanning lines and
// CRLF endings). Throws DataError with a 1-based row number on stray quotes.
std::vector<std::vector<std::string>> parse(const std::string& content);

}  // namespace newstraject::csv
