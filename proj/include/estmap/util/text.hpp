#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace estmap::text {

std::string_view trim(std::string_view s);
std::string to_lower_ascii(std::string_view s);

/// Splits on `sep`; keeps empty fields.
std::vector<std::string> split(std::string_view s, char sep);
/// Splits on `sep`, trims each piece and drops empty pieces.
std::vector<std::string> split_trimmed(std::string_view s, char sep);
std::string join(const std::vector<std::string>& parts, std::string_view sep);

/// Lookup key for names: UTF-8 Latin diacritics folded to ASCII, ASCII
/// lowercased, internal whitespace collapsed, ends trimmed.
std::string fold_key(std::string_view s);

/// Year convention for free-form dates: the first run of exactly four
/// consecutive digits.
std::optional<int> first_four_digit_run(std::string_view s);

std::optional<long long> parse_int(std::string_view s);
std::optional<double> parse_double(std::string_view s);

bool starts_with_ci(std::string_view s, std::string_view prefix);

}  // namespace estmap::text
