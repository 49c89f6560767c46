// sttopic/stopwords.h

// Copyright 2026  The sttopic Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef STTOPIC_STOPWORDS_H_
#define STTOPIC_STOPWORDS_H_

#include <span>
#include <string_view>

namespace sttopic {

/// Identifier of the bundled list. Saved with every vocabulary so a model
/// is never applied with a different list than it was fitted with.
inline constexpr std::string_view kStopwordListId = "english-179-v1";

/// The bundled English stopword list (179 entries, the common NLTK
/// English list). Entries containing apostrophes are matched after the
/// tokenizer strips punctuation, so "don't" also removes "dont".
std::span<const std::string_view> EnglishStopwords();

}  // namespace sttopic

#endif  // STTOPIC_STOPWORDS_H_
