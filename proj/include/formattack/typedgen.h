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

#ifndef FORMATTACK_TYPEDGEN_H_
#define FORMATTACK_TYPEDGEN_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "formattack/document.h"
#include "formattack/rng.h"

namespace formattack {

// Date renderings used for generated values:
//   kMonthDayYear       03/07/14
//   kYearMonthDay       14-03-07
//   kDayMonthNameYear   07/March/14
//   kDayMonthAbbrevYear 07/Mar/14
enum class DateFormat {
  kMonthDayYear,
  kYearMonthDay,
  kDayMonthNameYear,
  kDayMonthAbbrevYear,
};

inline constexpr int kDateFormatCount = 4;

struct CalendarDate {
  int year = 2001;
  unsigned month = 1;
  unsigned day = 1;

  friend bool operator==(const CalendarDate&, const CalendarDate&) = default;
};

std::string FormatDate(const CalendarDate& date, DateFormat format);

// Uniform over every calendar day from 2001-01-01 to 2021-12-31.
CalendarDate RandomDate(Rng& rng);

// Random date in a uniformly chosen format.
std::string GenDate(Rng& rng);

// Digit string of uniform length 3..12 with a non-zero leading digit.
std::string GenNumber(Rng& rng);

struct MoneyOptions {
  int64_t min_amount = 1;
  int64_t max_amount = 10'000'000;
  double dollar_probability = 0.5;
};

// The last two digits of `amount` become the cents; amounts below 100 are
// zero-padded ("0.05"). The integer part is grouped with commas.
std::string FormatMoney(int64_t amount, bool dollar_sign);

std::string GenMoney(Rng& rng, const MoneyOptions& options = {});

// Inverse of FormatMoney. Also accepts ungrouped digits with or without a
// two-digit fraction ("1234", "1234.5" is rejected). Returns the amount in
// hundredths.
std::optional<int64_t> ParseMoney(std::string_view text);

// Generated value for a typed field. kFreeText has no generator and throws
// ConfigError.
std::string GenValue(DataType type, Rng& rng,
                     const MoneyOptions& money = {});

// Applies exactly one character edit: swap of two adjacent differing
// characters, deletion, insertion or replacement, chosen uniformly among the
// edits that can change the word. Works on UTF-8 code points. The result
// always differs from the input.
std::string ApplyTypo(std::string_view word, Rng& rng);

// Splits UTF-8 text into code point substrings. Invalid lead bytes are kept
// as single-byte pieces.
std::vector<std::string> SplitCodePoints(std::string_view text);

}  // namespace formattack

#endif  // FORMATTACK_TYPEDGEN_H_
