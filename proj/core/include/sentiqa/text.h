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

#ifndef SENTIQA_TEXT_H_
#define SENTIQA_TEXT_H_

#include <cstddef>
#include <string>
#include <string_view>

// Unicode helpers shared by the tokenizer and the perturbation generators.
// Character classes and case mappings come from ICU.
namespace sentiqa::text {

// One decoded code point. Invalid bytes decode as single-byte units with
// valid == false and cp == U+FFFD.
struct CodePoint {
  char32_t cp;
  std::size_t offset;
  std::size_t length;
  bool valid;
};

CodePoint decode_at(std::string_view s, std::size_t offset);

std::u32string to_u32(std::string_view s);
std::string to_utf8(std::u32string_view s);
void append_utf8(std::string& out, char32_t cp);

std::size_t codepoint_count(std::string_view s);

// Unicode Alphabetic property.
bool is_letter(char32_t cp);
// Nonspacing, spacing and enclosing combining marks.
bool is_combining_mark(char32_t cp);
bool is_space(char32_t cp);
bool is_ascii_letter(char32_t cp);
bool is_uppercase(char32_t cp);
// ASCII apostrophe or U+2019.
bool is_apostrophe(char32_t cp);

char32_t to_lower(char32_t cp);
char32_t to_upper(char32_t cp);
std::string to_lower(std::string_view s);
std::string to_upper(std::string_view s);

// Canonical composition (NFC).
std::string nfc(std::string_view s);

}  // namespace sentiqa::text

#endif  // SENTIQA_TEXT_H_
