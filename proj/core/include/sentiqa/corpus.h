// Copyright 2026 The sentiqa Authors
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

#ifndef SENTIQA_CORPUS_H_
#define SENTIQA_CORPUS_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sentiqa/labels.h"

namespace sentiqa {

// On-disk corpus flavour, which is also the provenance of each review.
enum class CorpusFormat { kAmazon, kSst, kCustom };

std::string_view format_name(CorpusFormat format);   // "amazon", "sst", "custom"
CorpusFormat parse_format(std::string_view name);    // case-insensitive

// Fine-grained SST sentence labels.
enum class SstFineLabel { kVeryPositive, kPositive, kNeutral, kNegative, kVeryNegative };

// "very positive", ..., "very negative".
std::string_view sst_fine_name(SstFineLabel fine);
// Accepts the lowercase names with a space or underscore, in any case.
// Throws Error(kParse) naming the value otherwise.
SstFineLabel parse_sst_fine(std::string_view name);

struct Review {
  std::string id;
  std::string text;
  SentimentLabel label = SentimentLabel::kNeutral;
  CorpusFormat source = CorpusFormat::kCustom;
  std::optional<int> raw_rating;             // amazon: 1-5 stars
  std::optional<SstFineLabel> fine_label;    // sst

  bool operator==(const Review&) const = default;
};

// 1,2 → NEGATIVE; 3 → NEUTRAL; 4,5 → POSITIVE. Throws Error(kInvalidRating).
SentimentLabel map_amazon_rating(int rating);
SentimentLabel map_sst_fine(SstFineLabel fine);

// Tab-separated records with a mandatory header:
//   amazon: id<TAB>rating<TAB>text
//   sst:    id<TAB>fine_label<TAB>text
//   custom: id<TAB>label<TAB>text
// In the text field, backslash, tab, CR and LF are written as \\, \t, \r, \n.
// Errors are LineError with the 1-based line number.
std::vector<Review> parse_corpus(std::istream& in, CorpusFormat format,
                                 const std::string& source_name);
std::vector<Review> load_corpus(const std::filesystem::path& path, CorpusFormat format);

void write_corpus(std::ostream& out, std::span<const Review> reviews, CorpusFormat format);
void save_corpus(const std::filesystem::path& path, std::span<const Review> reviews,
                 CorpusFormat format);

std::string escape_field(std::string_view raw);
std::string unescape_field(std::string_view escaped);

struct CorpusStats {
  std::size_t n_samples = 0;
  // Fractions in label axis order (positive, neutral, negative).
  std::array<double, kNumLabels> distribution{};
  // Mean whitespace-delimited token count.
  double avg_text_length = 0.0;
};

CorpusStats compute_stats(std::span<const Review> reviews);

// Review length (whitespace tokens) → number of reviews with that length.
std::map<std::size_t, std::size_t> length_histogram(std::span<const Review> reviews);

// Seeded choice of n distinct reviews, returned in their input order.
std::vector<Review> sample_subset(std::span<const Review> reviews, std::size_t n,
                                  std::uint64_t seed);

}  // namespace sentiqa

#endif  // SENTIQA_CORPUS_H_
