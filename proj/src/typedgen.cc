//
// Copyright 2026 The formattack Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "formattack/typedgen.h"

#include <array>
#include <cctype>
#include <chrono>
#include <cstdio>

#include "formattack/errors.h"

namespace formattack {
namespace {

constexpr std::array<const char*, 12> kMonthNames = {
    "January", "February", "March",     "April",   "May",      "June",
    "July",    "August",   "September", "October", "November", "December"};

constexpr std::string_view kTypoAlphabet =
    "abcdefghijklmnopqrstuvwxyz0123456789";

// Keys physically adjacent on a US QWERTY keyboard, lowercase only.
std::string_view QwertyNeighbors(char c) {
  switch (c) {
    case '1': return "2q";
    case '2': return "13qw";
    case '3': return "24we";
    case '4': return "35er";
    case '5': return "46rt";
    case '6': return "57ty";
    case '7': return "68yu";
    case '8': return "79ui";
    case '9': return "80io";
    case '0': return "9op";
    case 'q': return "12wa";
    case 'w': return "23qeas";
    case 'e': return "34wrsd";
    case 'r': return "45etdf";
    case 't': return "56ryfg";
    case 'y': return "67tugh";
    case 'u': return "78yihj";
    case 'i': return "89uojk";
    case 'o': return "90ipkl";
    case 'p': return "0ol";
    case 'a': return "qwsz";
    case 's': return "weadzx";
    case 'd': return "ersfxc";
    case 'f': return "rtdgcv";
    case 'g': return "tyfhvb";
    case 'h': return "yugjbn";
    case 'j': return "uihknm";
    case 'k': return "iojlm";
    case 'l': return "opk";
    case 'z': return "asx";
    case 'x': return "zsdc";
    case 'c': return "xdfv";
    case 'v': return "cfgb";
    case 'b': return "vghn";
    case 'n': return "bhjm";
    case 'm': return "njk";
    default: return "";
  }
}

std::string TwoDigits(int value) {
  char buf[8];
  std::snprintf(buf, sizeof(buf), "%02d", value % 100);
  return buf;
}

char RandomAlphabetChar(Rng& rng) {
  return kTypoAlphabet[rng.UniformInt(0, kTypoAlphabet.size() - 1)];
}

std::string ReplacementFor(const std::string& original, Rng& rng) {
  if (original.size() == 1) {
    const char c = original[0];
    const std::string_view adjacent = QwertyNeighbors(static_cast<char>(
        std::tolower(static_cast<unsigned char>(c))));
    if (!adjacent.empty()) {
      return std::string(1, adjacent[rng.UniformInt(0, adjacent.size() - 1)]);
    }
  }
  std::string replacement;
  do {
    replacement.assign(1, RandomAlphabetChar(rng));
  } while (replacement == original);
  return replacement;
}

}  // namespace

std::string FormatDate(const CalendarDate& date, DateFormat format) {
  const std::string yy = TwoDigits(date.year);
  const std::string mm = TwoDigits(static_cast<int>(date.month));
  const std::string dd = TwoDigits(static_cast<int>(date.day));
  const std::string month = kMonthNames[date.month - 1];
  switch (format) {
    case DateFormat::kMonthDayYear:
      return mm + "/" + dd + "/" + yy;
    case DateFormat::kYearMonthDay:
      return yy + "-" + mm + "-" + dd;
    case DateFormat::kDayMonthNameYear:
      return dd + "/" + month + "/" + yy;
    case DateFormat::kDayMonthAbbrevYear:
      return dd + "/" + month.substr(0, 3) + "/" + yy;
  }
  return {};
}

CalendarDate RandomDate(Rng& rng) {
  using namespace std::chrono;
  const sys_days first = year{2001} / January / 1;
  const sys_days last = year{2021} / December / 31;
  const int64_t offset = rng.UniformInt(0, (last - first).count());
  const year_month_day ymd{first + days{offset}};
  return {static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month()),
          static_cast<unsigned>(ymd.day())};
}

std::string GenDate(Rng& rng) {
  const CalendarDate date = RandomDate(rng);
  const auto format =
      static_cast<DateFormat>(rng.UniformInt(0, kDateFormatCount - 1));
  return FormatDate(date, format);
}

std::string GenNumber(Rng& rng) {
  const int length = static_cast<int>(rng.UniformInt(3, 12));
  std::string out;
  out.reserve(length);
  out += static_cast<char>('1' + rng.UniformInt(0, 8));
  for (int i = 1; i < length; ++i) {
    out += static_cast<char>('0' + rng.UniformInt(0, 9));
  }
  return out;
}

std::string FormatMoney(int64_t amount, bool dollar_sign) {
  std::string digits = std::to_string(amount);
  if (digits.size() < 3) digits.insert(0, 3 - digits.size(), '0');
  const std::string cents = digits.substr(digits.size() - 2);
  const std::string whole = digits.substr(0, digits.size() - 2);
  std::string grouped;
  for (size_t i = 0; i < whole.size(); ++i) {
    if (i > 0 && (whole.size() - i) % 3 == 0) grouped += ',';
    grouped += whole[i];
  }
  return (dollar_sign ? "$" : "") + grouped + "." + cents;
}

std::string GenMoney(Rng& rng, const MoneyOptions& options) {
  const int64_t amount = rng.UniformInt(options.min_amount, options.max_amount);
  const bool dollar = rng.Bernoulli(options.dollar_probability);
  return FormatMoney(amount, dollar);
}

std::optional<int64_t> ParseMoney(std::string_view text) {
  if (!text.empty() && text.front() == '$') text.remove_prefix(1);
  if (text.empty()) return std::nullopt;
  std::string_view whole = text;
  std::string_view cents;
  if (const size_t dot = text.find('.'); dot != std::string_view::npos) {
    whole = text.substr(0, dot);
    cents = text.substr(dot + 1);
    if (cents.size() != 2) return std::nullopt;
  }
  if (whole.empty()) return std::nullopt;
  std::string digits;
  size_t group_start = 0;
  bool first_group = true;
  for (size_t i = 0; i <= whole.size(); ++i) {
    if (i < whole.size() && whole[i] != ',') {
      if (!std::isdigit(static_cast<unsigned char>(whole[i]))) {
        return std::nullopt;
      }
      digits += whole[i];
      continue;
    }
    // End of a comma-separated group: the first holds 1-3 digits, the rest
    // exactly 3. Ungrouped text is a single unrestricted group.
    const size_t len = i - group_start;
    const bool grouped = whole.find(',') != std::string_view::npos;
    if (len == 0 || (grouped && (first_group ? len > 3 : len != 3))) {
      return std::nullopt;
    }
    first_group = false;
    group_start = i + 1;
  }
  for (char c : cents) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
  }
  if (digits.size() > 15) return std::nullopt;
  const int64_t units = std::stoll(digits);
  const int64_t hundredths = cents.empty() ? 0 : std::stoll(std::string(cents));
  return units * 100 + hundredths;
}

std::string GenValue(DataType type, Rng& rng, const MoneyOptions& money) {
  switch (type) {
    case DataType::kDate:
      return GenDate(rng);
    case DataType::kNumber:
      return GenNumber(rng);
    case DataType::kMoney:
      return GenMoney(rng, money);
    case DataType::kFreeText:
      break;
  }
  throw ConfigError("no value generator for free_text fields");
}

std::vector<std::string> SplitCodePoints(std::string_view text) {
  std::vector<std::string> out;
  size_t i = 0;
  while (i < text.size()) {
    const auto lead = static_cast<unsigned char>(text[i]);
    size_t len = 1;
    if (lead >= 0xF0 && lead < 0xF8) {
      len = 4;
    } else if (lead >= 0xE0) {
      len = lead < 0xF0 ? 3 : 1;
    } else if (lead >= 0xC0) {
      len = 2;
    }
    if (i + len > text.size()) len = 1;
    out.emplace_back(text.substr(i, len));
    i += len;
  }
  return out;
}

std::string ApplyTypo(std::string_view word, Rng& rng) {
  std::vector<std::string> chars = SplitCodePoints(word);
  std::vector<size_t> swappable;
  for (size_t i = 0; i + 1 < chars.size(); ++i) {
    if (chars[i] != chars[i + 1]) swappable.push_back(i);
  }
  enum class Edit { kSwap, kDelete, kInsert, kReplace };
  std::vector<Edit> edits;
  if (!swappable.empty()) edits.push_back(Edit::kSwap);
  if (chars.size() >= 2) edits.push_back(Edit::kDelete);
  edits.push_back(Edit::kInsert);
  if (!chars.empty()) edits.push_back(Edit::kReplace);

  switch (edits[rng.UniformInt(0, edits.size() - 1)]) {
    case Edit::kSwap: {
      const size_t i = swappable[rng.UniformInt(0, swappable.size() - 1)];
      std::swap(chars[i], chars[i + 1]);
      break;
    }
    case Edit::kDelete:
      chars.erase(chars.begin() + rng.UniformInt(0, chars.size() - 1));
      break;
    case Edit::kInsert: {
      const size_t pos = rng.UniformInt(0, chars.size());
      chars.insert(chars.begin() + pos, std::string(1, RandomAlphabetChar(rng)));
      break;
    }
    case Edit::kReplace: {
      const size_t pos = rng.UniformInt(0, chars.size() - 1);
      chars[pos] = ReplacementFor(chars[pos], rng);
      break;
    }
  }
  std::string out;
  for (const std::string& c : chars) out += c;
  return out;
}

}  // namespace formattack
