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

#include "oracles.h"

#include <algorithm>
#include <cctype>

namespace oracle {

std::optional<std::u32string> decode_utf8(std::string_view s) {
  std::u32string out;
  std::size_t i = 0;
  while (i < s.size()) {
    const auto b0 = static_cast<unsigned char>(s[i]);
    std::size_t n = 0;
    char32_t cp = 0;
    if (b0 < 0x80) {
      n = 1;
      cp = b0;
    } else if ((b0 & 0xE0) == 0xC0) {
      n = 2;
      cp = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
      n = 3;
      cp = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
      n = 4;
      cp = b0 & 0x07;
    } else {
      return std::nullopt;
    }
    if (i + n > s.size()) return std::nullopt;
    for (std::size_t k = 1; k < n; ++k) {
      const auto b = static_cast<unsigned char>(s[i + k]);
      if ((b & 0xC0) != 0x80) return std::nullopt;
      cp = (cp << 6) | (b & 0x3F);
    }
    static constexpr char32_t kMin[] = {0, 0, 0x80, 0x800, 0x10000};
    if (cp < kMin[n] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return std::nullopt;
    out.push_back(cp);
    i += n;
  }
  return out;
}

std::size_t codepoints(std::string_view s) {
  const auto d = decode_utf8(s);
  return d ? d->size() : s.size();
}

std::size_t levenshtein(const std::u32string& a, const std::u32string& b) {
  std::vector<std::vector<std::size_t>> d(a.size() + 1, std::vector<std::size_t>(b.size() + 1));
  for (std::size_t i = 0; i <= a.size(); ++i) d[i][0] = i;
  for (std::size_t j = 0; j <= b.size(); ++j) d[0][j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t sub = d[i - 1][j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1, sub});
    }
  }
  return d[a.size()][b.size()];
}

std::size_t levenshtein(std::string_view a, std::string_view b) {
  return levenshtein(decode_utf8(a).value_or(U""), decode_utf8(b).value_or(U""));
}

bool has_ascii_letter(std::string_view s) {
  return std::any_of(s.begin(), s.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
  });
}

std::vector<std::string> split_on_spaces(std::string_view s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ' ') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

std::optional<std::vector<std::size_t>> differing_chunks(std::string_view a, std::string_view b) {
  const auto ca = split_on_spaces(a);
  const auto cb = split_on_spaces(b);
  if (ca.size() != cb.size()) return std::nullopt;
  std::vector<std::size_t> diff;
  for (std::size_t i = 0; i < ca.size(); ++i) {
    if (ca[i] != cb[i]) diff.push_back(i);
  }
  return diff;
}

Recount recount(const std::vector<Outcome>& outcomes) {
  Recount r;
  std::size_t ori = 0;
  std::size_t pert = 0;
  for (const Outcome& o : outcomes) {
    const bool before = o.baseline == o.gold;
    const int after_pred = o.perturbed < 0 ? o.baseline : o.perturbed;
    const bool after = after_pred == o.gold;
    if (before) ++ori;
    if (after) ++pert;
    if (o.perturbed >= 0 && before && !after) ++r.flips;
    if (o.perturbed >= 0 && !before && after) ++r.fixes;
  }
  const auto n = static_cast<double>(outcomes.size());
  r.ori_acc = static_cast<double>(ori) / n;
  r.pert_acc = static_cast<double>(pert) / n;
  r.asr = static_cast<double>(r.flips) / n;
  return r;
}

double ascii_valence_sum(std::string_view text, const std::map<std::string, double>& valence) {
  std::vector<std::string> runs;
  std::string cur;
  auto is_alpha = [](char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; };
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (is_alpha(c)) {
      cur.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    } else if (c == '\'' && !cur.empty() && i + 1 < text.size() && is_alpha(text[i + 1])) {
      cur.push_back(c);
    } else if (!cur.empty()) {
      runs.push_back(cur);
      cur.clear();
    }
  }
  if (!cur.empty()) runs.push_back(cur);

  auto negates = [](const std::string& w) {
    return w == "not" || w == "no" || w == "never" ||
           (w.size() >= 3 && w.compare(w.size() - 3, 3, "n't") == 0);
  };
  double sum = 0.0;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    bool negated = false;
    for (std::size_t back = 1; back <= 3 && back <= i; ++back) {
      if (negates(runs[i - back])) negated = true;
    }
    const auto it = valence.find(runs[i]);
    const double v = it == valence.end() ? 0.0 : it->second;
    sum += negated ? -v : v;
  }
  return sum;
}

int ascii_mock_label(std::string_view text, const std::map<std::string, double>& valence) {
  const double s = ascii_valence_sum(text, valence);
  if (s > 0.5) return 0;
  if (s < -0.5) return 2;
  return 1;
}

}  // namespace oracle
