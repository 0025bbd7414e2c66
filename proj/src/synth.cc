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

#include "formattack/synth.h"

#include <array>
#include <cstdio>
#include <span>

#include "formattack/errors.h"
#include "formattack/extract.h"
#include "formattack/typedgen.h"

namespace formattack {
namespace {

constexpr double kCharWidth = 7.0;
constexpr double kWordHeight = 12.0;
constexpr double kLinePitch = 20.0;
constexpr double kSectionGap = 50.0;

template <size_t N>
const char* Pick(Rng& rng, const std::array<const char*, N>& pool) {
  return pool[static_cast<size_t>(rng.UniformInt(0, N - 1))];
}

std::vector<std::string> SplitSpaces(std::string_view text) {
  std::vector<std::string> out;
  size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && text[i] == ' ') ++i;
    const size_t start = i;
    while (i < text.size() && text[i] != ' ') ++i;
    if (i > start) out.emplace_back(text.substr(start, i - start));
  }
  return out;
}

double TextWidth(std::string_view text) {
  return kCharWidth * static_cast<double>(text.size()) +
         kCharWidth * static_cast<double>(SplitSpaces(text).size() - 1);
}

// Lays words out left to right, top to bottom; word order is reading order.
class PageBuilder {
 public:
  PageBuilder(std::string doc_id, double width) {
    doc_.doc_id = std::move(doc_id);
    doc_.page_width = width;
  }

  // Adds the words of `text` starting at x on the line at y.
  std::vector<int> Add(std::string_view text, double x, double y) {
    std::vector<int> indices;
    for (const std::string& token : SplitSpaces(text)) {
      const double w = kCharWidth * static_cast<double>(token.size());
      indices.push_back(static_cast<int>(doc_.words.size()));
      doc_.words.push_back({token, {x, y, x + w, y + kWordHeight}});
      x += w + kCharWidth;
    }
    return indices;
  }

  double Right(const std::vector<int>& indices) const {
    return doc_.words[indices.back()].box.x2;
  }

  void Annotate(std::string field, DataType type, std::vector<int> keys,
                std::vector<int> values) {
    FieldAnnotation ann{std::move(field), type, std::move(keys),
                        std::move(values), ""};
    ann.value_text = JoinWords(doc_, ann.value_indices);
    doc_.annotations.push_back(std::move(ann));
  }

  Document Finish(double min_height) {
    double bottom = 0.0;
    for (const Word& w : doc_.words) bottom = std::max(bottom, w.box.y2);
    doc_.page_height = std::max(min_height, bottom + 40.0);
    return std::move(doc_);
  }

 private:
  Document doc_;
};

std::string KeyText(const FieldConfig& field, Rng& rng) {
  std::string key = field.key_phrases[static_cast<size_t>(
      rng.UniformInt(0, static_cast<int64_t>(field.key_phrases.size()) - 1))];
  if (rng.Bernoulli(0.5)) key += ':';
  return key;
}

std::string InvoiceValue(const FieldConfig& field, Rng& rng,
                         const std::string& total) {
  if (field.name == "amount_due" || field.name == "total_amount") return total;
  if (field.name == "total_tax") {
    const int64_t cents = *ParseMoney(total);
    const auto tax =
        static_cast<int64_t>(static_cast<double>(cents) * rng.Uniform(0, 0.15));
    return FormatMoney(tax, total.front() == '$');
  }
  return GenValue(field.data_type, rng);
}

constexpr std::array<const char*, 12> kCompanyFirst = {
    "Acme",      "Northwind", "Globex", "Initech", "Umbrella", "Vandelay",
    "Sterling",  "Bluebird",  "Cyberdyne", "Hooli", "Oakridge", "Pinnacle"};
constexpr std::array<const char*, 8> kCompanySecond = {
    "Industries", "Trading",  "Supplies", "Logistics",
    "Solutions",  "Partners", "Labs",     "Services"};
constexpr std::array<const char*, 5> kCompanySuffix = {"LLC", "Inc.", "Ltd.",
                                                       "Co.", "Group"};
constexpr std::array<const char*, 8> kStreetName = {
    "Oak", "Maple", "Cedar", "Pine", "Elm", "Lake", "Hill", "Park"};
constexpr std::array<const char*, 5> kStreetKind = {"Street", "Avenue", "Road",
                                                    "Boulevard", "Lane"};
constexpr std::array<const char*, 6> kCity = {
    "Springfield,", "Riverside,", "Fairview,", "Madison,", "Georgetown,",
    "Clinton,"};
constexpr std::array<const char*, 6> kState = {"IL", "CA", "TX",
                                               "NY", "OH", "WA"};
constexpr std::array<const char*, 6> kPerson = {
    "Jordan Lee", "Sam Patel", "Alex Moreno", "Robin Chen", "Casey Novak",
    "Morgan Diaz"};
constexpr std::array<const char*, 12> kItem = {
    "Consulting hours", "Widget assembly", "Freight",      "Installation",
    "Support plan",     "Software license", "Maintenance", "Design work",
    "Printing",         "Cables",           "Hardware kit", "Training session"};

std::string Company(Rng& rng) {
  std::string name = std::string(Pick(rng, kCompanyFirst)) + " " +
                     Pick(rng, kCompanySecond);
  if (rng.Bernoulli(0.6)) name += std::string(" ") + Pick(rng, kCompanySuffix);
  return name;
}

std::string Street(Rng& rng) {
  return std::to_string(rng.UniformInt(10, 9999)) + " " +
         Pick(rng, kStreetName) + " " + Pick(rng, kStreetKind);
}

std::string CityLine(Rng& rng) {
  char zip[8];
  std::snprintf(zip, sizeof(zip), "%05d",
                static_cast<int>(rng.UniformInt(10000, 99999)));
  return std::string(Pick(rng, kCity)) + " " + Pick(rng, kState) + " " + zip;
}

constexpr std::array<const char*, 14> kShopWord = {
    "SANYU",   "KEDAI",    "MR",      "POPULAR", "GARDENIA", "SYARIKAT",
    "BOOK",    "HARDWARE", "MART",    "STORE",   "RESTORAN", "PERNIAGAAN",
    "UNIHAKKA", "STATIONERY"};
constexpr std::array<const char*, 4> kShopSuffix = {"SDN BHD", "ENTERPRISE",
                                                    "(M) SDN BHD", "TRADING"};
constexpr std::array<const char*, 6> kJalan = {"MERANTI", "BAKAWALI", "PUDU",
                                               "IPOH",    "TUN RAZAK", "SETIA"};
constexpr std::array<const char*, 5> kTown = {
    "KUALA LUMPUR", "PETALING JAYA", "JOHOR BAHRU", "SHAH ALAM", "KLANG"};
constexpr std::array<const char*, 10> kGoods = {
    "PEN",  "NOTEBOOK", "RICE",  "BREAD",  "COFFEE",
    "TEA",  "PAPER A4", "GLUE",  "BATTERY", "SOAP"};

}  // namespace

SynthTemplate ParseSynthTemplate(std::string_view name) {
  if (name == "invoice") return SynthTemplate::kInvoice;
  if (name == "receipt") return SynthTemplate::kReceipt;
  throw ConfigError("unknown template '" + std::string(name) +
                    "' (expected invoice or receipt)");
}

Document SynthInvoice(const std::string& doc_id, Rng& rng) {
  constexpr double kWidth = 850.0;
  PageBuilder page(doc_id, kWidth);
  double y = 40.0 + static_cast<double>(rng.UniformInt(0, 30));
  const double left = 50.0 + static_cast<double>(rng.UniformInt(0, 30));

  page.Add(Company(rng), left, y);
  page.Add("INVOICE", 650.0 + static_cast<double>(rng.UniformInt(0, 60)), y);
  page.Add(Street(rng), left, y += kLinePitch);
  page.Add(CityLine(rng), left, y += kLinePitch);

  y += kSectionGap;
  page.Add("Bill To:", left, y);
  page.Add(Pick(rng, kPerson), left, y += kLinePitch);
  page.Add(Street(rng), left, y += kLinePitch);
  page.Add(CityLine(rng), left, y += kLinePitch);

  // One key/value pair per line. Pairs are more than the baseline's
  // below-search radius apart so a key never reaches the next pair's value.
  y += kSectionGap;
  std::vector<FieldConfig> fields = InvoiceFields();
  rng.Shuffle(std::span<FieldConfig>(fields));
  const double key_x = left + static_cast<double>(rng.UniformInt(0, 220));
  const std::string total = GenMoney(rng);
  std::vector<std::pair<FieldConfig, std::pair<std::vector<int>, int>>> placed;
  for (const FieldConfig& field : fields) {
    const std::string key = KeyText(field, rng);
    const std::string value = InvoiceValue(field, rng, total);
    const std::vector<int> keys = page.Add(key, key_x, y);
    int value_index;
    if (rng.Bernoulli(0.75)) {
      const double x =
          page.Right(keys) + kCharWidth + static_cast<double>(rng.UniformInt(0, 60));
      value_index = page.Add(value, x, y).front();
    } else {
      value_index = page.Add(value, key_x, y += kLinePitch).front();
    }
    placed.push_back({field, {keys, value_index}});
    y += 46.0 + static_cast<double>(rng.UniformInt(0, 6));
  }

  y += kSectionGap - kLinePitch;
  const std::array<double, 4> cols = {left, 420.0, 520.0, 660.0};
  page.Add("Description", cols[0], y);
  page.Add("Qty", cols[1], y);
  page.Add("Unit Price", cols[2], y);
  page.Add("Amount", cols[3], y);
  const int items = static_cast<int>(rng.UniformInt(2, 5));
  int64_t subtotal = 0;
  for (int i = 0; i < items; ++i) {
    const int64_t qty = rng.UniformInt(1, 20);
    const int64_t price = rng.UniformInt(100, 500000);
    subtotal += qty * price;
    y += kLinePitch;
    page.Add(Pick(rng, kItem), cols[0], y);
    page.Add(std::to_string(qty), cols[1], y);
    page.Add(FormatMoney(price, false), cols[2], y);
    page.Add(FormatMoney(qty * price, false), cols[3], y);
  }
  y += kLinePitch + 4.0;
  page.Add("Subtotal", cols[2], y);
  page.Add(FormatMoney(subtotal, false), cols[3], y);

  y += kSectionGap;
  page.Add("Thank you for your business.", left, y);
  page.Add("Payment terms: Net 30", left, y + kLinePitch);

  for (const FieldConfig& field : InvoiceFields()) {
    for (const auto& [f, where] : placed) {
      if (f.name == field.name) {
        page.Annotate(field.name, field.data_type, where.first,
                      {where.second});
      }
    }
  }
  return page.Finish(1100.0);
}

Document SynthReceipt(const std::string& doc_id, Rng& rng) {
  constexpr double kWidth = 400.0;
  constexpr double kMoneyX = 220.0;
  PageBuilder page(doc_id, kWidth);
  auto centered = [&](std::string_view text) {
    const double x = (kWidth - TextWidth(text)) / 2.0 +
                     static_cast<double>(rng.UniformInt(-10, 10));
    return std::max(10.0, x);
  };
  double y = 20.0 + static_cast<double>(rng.UniformInt(0, 20));

  std::string company = Pick(rng, kShopWord);
  if (rng.Bernoulli(0.5)) company += std::string(" ") + Pick(rng, kShopWord);
  company += std::string(" ") + Pick(rng, kShopSuffix);
  const std::vector<int> company_words = page.Add(company, centered(company), y);

  const std::string street = "NO. " + std::to_string(rng.UniformInt(1, 99)) +
                             ", JALAN " + Pick(rng, kJalan) + ",";
  std::vector<int> address_words =
      page.Add(street, centered(street), y += kLinePitch);
  const std::string town =
      std::to_string(rng.UniformInt(10000, 99999)) + " " + Pick(rng, kTown);
  const std::vector<int> town_words =
      page.Add(town, centered(town), y += kLinePitch);
  address_words.insert(address_words.end(), town_words.begin(),
                       town_words.end());

  y += 30.0;
  page.Add("GST ID: 000" + std::to_string(rng.UniformInt(100000000, 999999999)),
           20.0, y);
  page.Add("TEL: 03-" + std::to_string(rng.UniformInt(10000000, 99999999)),
           20.0, y += kLinePitch);

  y += 30.0;
  std::vector<int> date_keys;
  double x = 20.0;
  if (!rng.Bernoulli(0.2)) {
    date_keys = page.Add(rng.Bernoulli(0.5) ? "Date:" : "Date", x, y);
    x = page.Right(date_keys) + kCharWidth +
        static_cast<double>(rng.UniformInt(0, 30));
  }
  const std::vector<int> date_words = page.Add(GenDate(rng), x, y);
  char time[8];
  std::snprintf(time, sizeof(time), "%02d:%02d",
                static_cast<int>(rng.UniformInt(8, 21)),
                static_cast<int>(rng.UniformInt(0, 59)));
  page.Add(time, page.Right(date_words) + 3 * kCharWidth, y);

  y += 30.0;
  const int items = static_cast<int>(rng.UniformInt(1, 5));
  int64_t total = 0;
  for (int i = 0; i < items; ++i) {
    const int64_t price = rng.UniformInt(50, 20000);
    total += price;
    page.Add(Pick(rng, kGoods), 20.0, y);
    page.Add(FormatMoney(price, false), kMoneyX, y);
    y += kLinePitch;
  }

  y += 10.0;
  constexpr std::array<const char*, 4> kTotalKeys = {"Total", "Grand Total",
                                                     "Total Amount", "Net Total"};
  std::vector<int> total_keys;
  if (!rng.Bernoulli(0.2)) {
    std::string key = Pick(rng, kTotalKeys);
    if (rng.Bernoulli(0.5)) key += ':';
    total_keys = page.Add(key, 20.0, y);
  }
  const std::vector<int> total_words =
      page.Add(FormatMoney(total, rng.Bernoulli(0.1)), kMoneyX, y);
  const int64_t gst = (total * 6 + 53) / 106;
  page.Add("GST 6%", 20.0, y += kLinePitch);
  page.Add(FormatMoney(gst, false), kMoneyX, y);
  const int64_t cash = (total / 1000 + 1) * 1000;
  page.Add("CASH", 20.0, y += kLinePitch);
  page.Add(FormatMoney(cash, false), kMoneyX, y);
  page.Add("CHANGE", 20.0, y += kLinePitch);
  page.Add(FormatMoney(cash - total, false), kMoneyX, y);

  y += 40.0;
  page.Add("THANK YOU", centered("THANK YOU"), y);
  page.Add("PLEASE COME AGAIN", centered("PLEASE COME AGAIN"), y + kLinePitch);

  page.Annotate("company", DataType::kFreeText, {}, company_words);
  page.Annotate("address", DataType::kFreeText, {}, address_words);
  page.Annotate("date", DataType::kDate, date_keys, date_words);
  page.Annotate("total", DataType::kMoney, total_keys, total_words);
  return page.Finish(0.0);
}

std::vector<Document> SynthCorpus(SynthTemplate kind, int n, uint64_t seed) {
  if (n < 0) throw ConfigError("document count must be non-negative");
  const char* prefix = kind == SynthTemplate::kInvoice ? "invoice" : "receipt";
  std::vector<Document> corpus;
  corpus.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    char id[32];
    std::snprintf(id, sizeof(id), "%s-%05d", prefix, i);
    Rng rng(Rng::DeriveSeed(seed, std::string("synth-") + prefix, id));
    Document doc = kind == SynthTemplate::kInvoice ? SynthInvoice(id, rng)
                                                   : SynthReceipt(id, rng);
    ValidateDocument(doc);
    corpus.push_back(std::move(doc));
  }
  return corpus;
}

}  // namespace formattack
