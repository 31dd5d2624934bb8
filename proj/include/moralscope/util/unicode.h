// Copyright 2026 The Moralscope Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MORALSCOPE_UTIL_UNICODE_H_
#define MORALSCOPE_UTIL_UNICODE_H_

#include <string>
#include <string_view>

namespace moralscope {

// NFC(lowercase(NFC(text))) using root-locale full case mapping. Invalid
// UTF-8 sequences are replaced with U+FFFD.
std::string NfcLower(std::string_view text);

bool IsValidUtf8(std::string_view text);

}  // namespace moralscope

#endif  // MORALSCOPE_UTIL_UNICODE_H_
