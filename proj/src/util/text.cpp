#include "estmap/util/text.hpp"

#include <cctype>
#include <charconv>
#include <cstdint>

namespace estmap::text {

namespace {

using namespace std::string_view_literals;

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

// ASCII base letters for U+00C0..U+017F; '\0' marks code points with no
// single-letter base (kept as-is).
constexpr std::string_view kLatin1Fold =
    "AAAAAAACEEEEIIII"   // C0-CF
    "DNOOOOO\0OUUUUY\0\0"  // D0-DF (D7 multiplication sign, DE thorn, DF sharp s)
    "aaaaaaaceeeeiiii"   // E0-EF
    "dnooooo\0ouuuuy\0y"  // F0-FF
    "AaAaAaCcCcCcCcDd"   // 100-10F
    "DdEeEeEeEeEeGgGg"   // 110-11F
    "GgGgHhHhIiIiIiIi"   // 120-12F
    "Ii\0\0JjKkkLlLlLlL"  // 130-13F
    "lLlNnNnNnnNnOoOo"   // 140-14F
    "OoOoRrRrRrSsSsSs"   // 150-15F
    "SsTtTtTtUuUuUuUu"   // 160-16F
    "UuUuWwYyYZzZzZzs"sv;  // 170-17F
static_assert(kLatin1Fold.size() == 0x180 - 0xC0);

}  // namespace

std::string_view trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && is_space(s[b])) ++b;
  while (e > b && is_space(s[e - 1])) --e;
  return s.substr(b, e - b);
}

std::string to_lower_ascii(std::string_view s) {
  std::string out(s);
  for (auto& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    auto pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.emplace_back(s.substr(start));
      return out;
    }
    out.emplace_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

std::vector<std::string> split_trimmed(std::string_view s, char sep) {
  std::vector<std::string> out;
  for (auto& piece : split(s, sep)) {
    auto t = trim(piece);
    if (!t.empty()) out.emplace_back(t);
  }
  return out;
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::string fold_key(std::string_view s) {
  std::string folded;
  folded.reserve(s.size());
  for (std::size_t i = 0; i < s.size();) {
    auto c = static_cast<unsigned char>(s[i]);
    if (c < 0x80) {
      folded += static_cast<char>(std::tolower(c));
      ++i;
      continue;
    }
    // Two-byte sequences cover U+0080..U+07FF, which includes the whole
    // folding table; anything longer is copied through untouched.
    if ((c & 0xE0) == 0xC0 && i + 1 < s.size()) {
      std::uint32_t cp = ((c & 0x1Fu) << 6) | (static_cast<unsigned char>(s[i + 1]) & 0x3Fu);
      if (cp >= 0xC0 && cp <= 0x17F && kLatin1Fold[cp - 0xC0] != '\0') {
        folded += static_cast<char>(std::tolower(static_cast<unsigned char>(kLatin1Fold[cp - 0xC0])));
        i += 2;
        continue;
      }
      if (cp == 0xDF) {  // sharp s
        folded += "ss";
        i += 2;
        continue;
      }
      folded.append(s.substr(i, 2));
      i += 2;
      continue;
    }
    folded += static_cast<char>(c);
    ++i;
  }

  std::string out;
  out.reserve(folded.size());
  bool pending_space = false;
  for (char c : folded) {
    if (is_space(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out += ' ';
    pending_space = false;
    out += c;
  }
  return out;
}

std::optional<int> first_four_digit_run(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size()) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
    if (j - i == 4) return std::stoi(std::string(s.substr(i, 4)));
    i = j;
  }
  return std::nullopt;
}

std::optional<long long> parse_int(std::string_view s) {
  s = trim(s);
  if (s.empty()) return std::nullopt;
  long long v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::optional<double> parse_double(std::string_view s) {
  s = trim(s);
  if (s.empty()) return std::nullopt;
  double v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

bool starts_with_ci(std::string_view s, std::string_view prefix) {
  if (s.size() < prefix.size()) return false;
  return to_lower_ascii(s.substr(0, prefix.size())) == to_lower_ascii(prefix);
}

}  // namespace estmap::text
