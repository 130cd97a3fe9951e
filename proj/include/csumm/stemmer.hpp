// Copyright 2026 The csumm Authors
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

#ifndef CSUMM_STEMMER_HPP_
#define CSUMM_STEMMER_HPP_

#include <string>

namespace csumm {

// Porter suffix-stripping stemmer over lowercase ASCII words. Inputs
// containing non-alphabetic characters or shorter than three letters are
// returned unchanged.
std::string porter_stem(const std::string& word);

}  // namespace csumm

#endif  // CSUMM_STEMMER_HPP_
