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

#ifndef FORMATTACK_SYNTH_H_
#define FORMATTACK_SYNTH_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "formattack/document.h"
#include "formattack/rng.h"

// Synthetic single-page forms with ground truth, for tests and demos.
namespace formattack {

enum class SynthTemplate { kInvoice, kReceipt };

SynthTemplate ParseSynthTemplate(std::string_view name);

// An invoice with the seven InvoiceFields(). Every field has a key phrase
// from its configured list; the value sits right of the key on the same line
// or directly below it. Header, bill-to block, a line-item table and a
// footer fill the background.
Document SynthInvoice(const std::string& doc_id, Rng& rng);

// A receipt with the four ReceiptFields(). Company (one line) and address
// (two lines) open the page without keys. Date and total carry keys on most
// receipts.
Document SynthReceipt(const std::string& doc_id, Rng& rng);

// `n` documents named "<template>-00000", ... Each document draws from its
// own substream of `seed`, so a prefix of a larger corpus is identical to a
// smaller one.
std::vector<Document> SynthCorpus(SynthTemplate kind, int n, uint64_t seed);

}  // namespace formattack

#endif  // FORMATTACK_SYNTH_H_
