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

#include "sentiqa/corpus.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <numeric>
#include <unordered_set>

#include "sentiqa/error.h"
#include "sentiqa/lexicon.h"
#include "sentiqa/rng.h"
#include "sentiqa/text.h"

namespace sentiqa {
namespace {

std::string_view label_column(CorpusFormat format) {
  switch (format) {
    case CorpusFormat::kAmazon: return "rating";
    case CorpusFormat::kSst: return "fine_label";
    case CorpusFormat::kCustom: return "label";
  }
  return "";
}

std::string header_line(CorpusFormat format) {
  return "id\t" + std::string(label_column(format)) + "\ttext";
}

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (;;) {
    const auto tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

Review parse_record(std::string_view line, CorpusFormat format, const std::string& source,
                    std::size_t line_no) {
  const auto fields = split_tabs(line);
  if (fields.size() != 3) {
    throw LineError(ErrorCode::kParse, source, line_no,
                    "expected 3 tab-separated fields, got " + std::to_string(fields.size()));
  }
  Review review;
  review.source = format;
  review.id = std::string(trim(fields[0]));
  if (review.id.empty()) throw LineError(ErrorCode::kParse, source, line_no, "empty id");
  review.text = unescape_field(fields[2]);
  if (count_words(review.text) == 0) {
    throw LineError(ErrorCode::kParse, source, line_no, "text has no alphabetic token");
  }

  const std::string_view value = trim(fields[1]);
  try {
    switch (format) {
      case CorpusFormat::kAmazon: {
        int rating = 0;
        const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), rating);
        if (ec != std::errc() || ptr != value.data() + value.size()) {
          throw Error(ErrorCode::kParse, "rating '" + std::string(value) + "' is not an integer");
        }
        review.label = map_amazon_rating(rating);
        review.raw_rating = rating;
        break;
      }
      case CorpusFormat::kSst:
        review.fine_label = parse_sst_fine(value);
        review.label = map_sst_fine(*review.fine_label);
        break;
      case CorpusFormat::kCustom: {
        const auto label = label_from_name(text::to_upper(value));
        if (!label) {
          throw Error(ErrorCode::kParse, "unknown label '" + std::string(value) + "'");
        }
        review.label = *label;
        break;
      }
    }
  } catch (const LineError&) {
    throw;
  } catch (const Error& e) {
    throw LineError(e.code(), source, line_no, e.what());
  }
  return review;
}

}  // namespace

std::string_view format_name(CorpusFormat format) {
  switch (format) {
    case CorpusFormat::kAmazon: return "amazon";
    case CorpusFormat::kSst: return "sst";
    case CorpusFormat::kCustom: return "custom";
  }
  return "?";
}

CorpusFormat parse_format(std::string_view name) {
  const std::string lower = text::to_lower(name);
  for (CorpusFormat f : {CorpusFormat::kAmazon, CorpusFormat::kSst, CorpusFormat::kCustom}) {
    if (format_name(f) == lower) return f;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown corpus format '" + std::string(name) + "'");
}

std::string_view sst_fine_name(SstFineLabel fine) {
  switch (fine) {
    case SstFineLabel::kVeryPositive: return "very positive";
    case SstFineLabel::kPositive: return "positive";
    case SstFineLabel::kNeutral: return "neutral";
    case SstFineLabel::kNegative: return "negative";
    case SstFineLabel::kVeryNegative: return "very negative";
  }
  return "?";
}

SstFineLabel parse_sst_fine(std::string_view name) {
  std::string key = text::to_lower(trim(name));
  std::replace(key.begin(), key.end(), '_', ' ');
  for (SstFineLabel f : {SstFineLabel::kVeryPositive, SstFineLabel::kPositive,
                         SstFineLabel::kNeutral, SstFineLabel::kNegative,
                         SstFineLabel::kVeryNegative}) {
    if (sst_fine_name(f) == key) return f;
  }
  throw Error(ErrorCode::kParse, "unknown SST fine label '" + std::string(name) + "'");
}

SentimentLabel map_amazon_rating(int rating) {
  if (rating < 1 || rating > 5) {
    throw Error(ErrorCode::kInvalidRating,
                "rating " + std::to_string(rating) + " is outside 1-5");
  }
  if (rating <= 2) return SentimentLabel::kNegative;
  if (rating == 3) return SentimentLabel::kNeutral;
  return SentimentLabel::kPositive;
}

SentimentLabel map_sst_fine(SstFineLabel fine) {
  switch (fine) {
    case SstFineLabel::kVeryPositive:
    case SstFineLabel::kPositive:
      return SentimentLabel::kPositive;
    case SstFineLabel::kNeutral:
      return SentimentLabel::kNeutral;
    case SstFineLabel::kNegative:
    case SstFineLabel::kVeryNegative:
      return SentimentLabel::kNegative;
  }
  return SentimentLabel::kNeutral;
}

std::string escape_field(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  for (char c : raw) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '\t': out += "\\t"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::string unescape_field(std::string_view escaped) {
  std::string out;
  out.reserve(escaped.size());
  for (std::size_t i = 0; i < escaped.size(); ++i) {
    const char c = escaped[i];
    if (c != '\\' || i + 1 == escaped.size()) {
      out.push_back(c);
      continue;
    }
    switch (escaped[++i]) {
      case '\\': out.push_back('\\'); break;
      case 't': out.push_back('\t'); break;
      case 'n': out.push_back('\n'); break;
      case 'r': out.push_back('\r'); break;
      default:
        // Unknown escapes are kept as written.
        out.push_back('\\');
        out.push_back(escaped[i]);
    }
  }
  return out;
}

std::vector<Review> parse_corpus(std::istream& in, CorpusFormat format,
                                 const std::string& source_name) {
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  std::vector<Review> reviews;
  std::unordered_set<std::string> ids;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!have_header) {
      std::string_view header(line);
      if (header.starts_with("\xEF\xBB\xBF")) header.remove_prefix(3);
      if (header != header_line(format)) {
        throw LineError(ErrorCode::kParse, source_name, line_no,
                        "expected header '" + escape_field(header_line(format)) + "'");
      }
      have_header = true;
      continue;
    }
    if (line.empty()) continue;
    Review review = parse_record(line, format, source_name, line_no);
    if (!ids.insert(review.id).second) {
      throw LineError(ErrorCode::kDuplicateId, source_name, line_no,
                      "duplicate id '" + review.id + "'");
    }
    reviews.push_back(std::move(review));
  }
  if (reviews.empty()) {
    throw Error(ErrorCode::kEmptyInput, source_name + ": corpus contains no records");
  }
  return reviews;
}

std::vector<Review> load_corpus(const std::filesystem::path& path, CorpusFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open corpus " + path.string());
  return parse_corpus(in, format, path.string());
}

void write_corpus(std::ostream& out, std::span<const Review> reviews, CorpusFormat format) {
  out << header_line(format) << '\n';
  for (const Review& r : reviews) {
    if (r.id.empty() || r.id.find_first_of("\t\r\n") != std::string::npos) {
      throw Error(ErrorCode::kInvalidArgument, "review id '" + r.id + "' cannot be written");
    }
    out << r.id << '\t';
    switch (format) {
      case CorpusFormat::kAmazon:
        if (!r.raw_rating) {
          throw Error(ErrorCode::kInvalidArgument, "review " + r.id + " has no rating");
        }
        out << *r.raw_rating;
        break;
      case CorpusFormat::kSst:
        if (!r.fine_label) {
          throw Error(ErrorCode::kInvalidArgument, "review " + r.id + " has no fine label");
        }
        out << sst_fine_name(*r.fine_label);
        break;
      case CorpusFormat::kCustom:
        out << label_name(r.label);
        break;
    }
    out << '\t' << escape_field(r.text) << '\n';
  }
}

void save_corpus(const std::filesystem::path& path, std::span<const Review> reviews,
                 CorpusFormat format) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write corpus " + path.string());
  write_corpus(out, reviews, format);
  if (!out.flush()) throw Error(ErrorCode::kIo, "write failed for " + path.string());
}

CorpusStats compute_stats(std::span<const Review> reviews) {
  if (reviews.empty()) throw Error(ErrorCode::kEmptyInput, "cannot summarize an empty corpus");
  std::array<std::size_t, kNumLabels> counts{};
  std::size_t total_tokens = 0;
  for (const Review& r : reviews) {
    ++counts[index_of(r.label)];
    total_tokens += count_whitespace_tokens(r.text);
  }
  CorpusStats stats;
  stats.n_samples = reviews.size();
  const auto n = static_cast<double>(reviews.size());
  for (std::size_t i = 0; i < kNumLabels; ++i) {
    stats.distribution[i] = static_cast<double>(counts[i]) / n;
  }
  stats.avg_text_length = static_cast<double>(total_tokens) / n;
  return stats;
}

std::map<std::size_t, std::size_t> length_histogram(std::span<const Review> reviews) {
  std::map<std::size_t, std::size_t> histogram;
  for (const Review& r : reviews) ++histogram[count_whitespace_tokens(r.text)];
  return histogram;
}

std::vector<Review> sample_subset(std::span<const Review> reviews, std::size_t n,
                                  std::uint64_t seed) {
  if (n < 1 || n > reviews.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "sample size " + std::to_string(n) + " outside 1.." +
                    std::to_string(reviews.size()));
  }
  std::vector<std::size_t> order(reviews.size());
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.uniform(order.size() - i));
    std::swap(order[i], order[j]);
  }
  order.resize(n);
  std::sort(order.begin(), order.end());
  std::vector<Review> out;
  out.reserve(n);
  for (std::size_t idx : order) out.push_back(reviews[idx]);
  return out;
}

}  // namespace sentiqa
