// src/serialize.h

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

#ifndef STTOPIC_SRC_SERIALIZE_H_
#define STTOPIC_SRC_SERIALIZE_H_

// JSON conversions shared by the model file and the standalone vocabulary
// file.

#include "jsonl.h"
#include "sttopic/nmf.h"
#include "sttopic/textprep.h"

namespace sttopic::internal {

Json VocabularyToJsonValue(const Vocabulary &vocab);
Vocabulary VocabularyFromJsonValue(const Json &obj);

Json NmfConfigToJsonValue(const NmfConfig &cfg);
NmfConfig NmfConfigFromJsonValue(const Json &obj);

}  // namespace sttopic::internal

#endif  // STTOPIC_SRC_SERIALIZE_H_
