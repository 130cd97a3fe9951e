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

#include "csumm/stemmer.hpp"

#include <cctype>

namespace csumm {

namespace {

class Stemmer {
 public:
  explicit Stemmer(std::string word) : w_(std::move(word)) {}

  std::string run() {
    if (w_.size() < 3) return w_;
    step1a();
    step1b();
    step1c();
    step2();
    step3();
    step4();
    step5();
    return w_;
  }

 private:
  bool consonant(int i) const {
    switch (w_[i]) {
      case 'a': case 'e': case 'i': case 'o': case 'u':
        return false;
      case 'y':
        return i == 0 ? true : !consonant(i - 1);
      default:
        return true;
    }
  }

  // Number of VC sequences in w_[0..end].
  int measure(int end) const {
    int m = 0;
    int i = 0;
    while (i <= end && consonant(i)) ++i;
    while (i <= end) {
      while (i <= end && !consonant(i)) ++i;
      if (i > end) break;
      ++m;
      while (i <= end && consonant(i)) ++i;
    }
    return m;
  }

  bool has_vowel(int end) const {
    for (int i = 0; i <= end; ++i) {
      if (!consonant(i)) return true;
    }
    return false;
  }

  bool double_consonant(int i) const {
    return i >= 1 && w_[i] == w_[i - 1] && consonant(i);
  }

  bool cvc(int i) const {
    if (i < 2 || !consonant(i) || consonant(i - 1) || !consonant(i - 2)) {
      return false;
    }
    const char c = w_[i];
    return c != 'w' && c != 'x' && c != 'y';
  }

  bool ends(const char* suffix) const {
    const size_t len = std::char_traits<char>::length(suffix);
    if (len > w_.size()) return false;
    return w_.compare(w_.size() - len, len, suffix) == 0;
  }

  // Stem end index when `suffix` is removed.
  int stem_end(const char* suffix) const {
    return static_cast<int>(w_.size() -
                            std::char_traits<char>::length(suffix)) - 1;
  }

  void replace(const char* suffix, const char* with) {
    w_.resize(w_.size() - std::char_traits<char>::length(suffix));
    w_ += with;
  }

  bool rule(const char* suffix, const char* with, int min_measure) {
    if (!ends(suffix)) return false;
    if (measure(stem_end(suffix)) > min_measure) replace(suffix, with);
    return true;  // suffix matched; stop scanning the table either way
  }

  void step1a() {
    if (ends("sses")) {
      replace("sses", "ss");
    } else if (ends("ies")) {
      replace("ies", "i");
    } else if (!ends("ss") && ends("s")) {
      replace("s", "");
    }
  }

  void step1b() {
    if (ends("eed")) {
      if (measure(stem_end("eed")) > 0) replace("eed", "ee");
      return;
    }
    bool stripped = false;
    if (ends("ed") && has_vowel(stem_end("ed"))) {
      replace("ed", "");
      stripped = true;
    } else if (ends("ing") && has_vowel(stem_end("ing"))) {
      replace("ing", "");
      stripped = true;
    }
    if (!stripped) return;
    if (ends("at") || ends("bl") || ends("iz")) {
      w_ += 'e';
    } else if (double_consonant(static_cast<int>(w_.size()) - 1)) {
      const char c = w_.back();
      if (c != 'l' && c != 's' && c != 'z') w_.pop_back();
    } else if (measure(static_cast<int>(w_.size()) - 1) == 1 &&
               cvc(static_cast<int>(w_.size()) - 1)) {
      w_ += 'e';
    }
  }

  void step1c() {
    if (ends("y") && has_vowel(stem_end("y"))) w_.back() = 'i';
  }

  void step2() {
    static const std::pair<const char*, const char*> table[] = {
        {"ational", "ate"}, {"tional", "tion"}, {"enci", "ence"},
        {"anci", "ance"},   {"izer", "ize"},    {"abli", "able"},
        {"alli", "al"},     {"entli", "ent"},   {"eli", "e"},
        {"ousli", "ous"},   {"ization", "ize"}, {"ation", "ate"},
        {"ator", "ate"},    {"alism", "al"},    {"iveness", "ive"},
        {"fulness", "ful"}, {"ousness", "ous"}, {"aliti", "al"},
        {"iviti", "ive"},   {"biliti", "ble"},  {"logi", "log"},
    };
    for (const auto& [suffix, with] : table) {
      if (rule(suffix, with, 0)) return;
    }
  }

  void step3() {
    static const std::pair<const char*, const char*> table[] = {
        {"icate", "ic"}, {"ative", ""}, {"alize", "al"}, {"iciti", "ic"},
        {"ical", "ic"},  {"ful", ""},   {"ness", ""},
    };
    for (const auto& [suffix, with] : table) {
      if (rule(suffix, with, 0)) return;
    }
  }

  void step4() {
    static const char* table[] = {
        "al",  "ance", "ence", "er",  "ic",  "able", "ible", "ant", "ement",
        "ment", "ent", "ou",   "ism", "ate", "iti",  "ous",  "ive", "ize",
    };
    if (ends("ion")) {
      const int end = stem_end("ion");
      if (end >= 0 && (w_[end] == 's' || w_[end] == 't') &&
          measure(end) > 1) {
        replace("ion", "");
      }
      return;
    }
    for (const char* suffix : table) {
      if (ends(suffix)) {
        if (measure(stem_end(suffix)) > 1) replace(suffix, "");
        return;
      }
    }
  }

  void step5() {
    if (ends("e")) {
      const int end = stem_end("e");
      const int m = measure(end);
      if (m > 1 || (m == 1 && !cvc(end))) replace("e", "");
    }
    const int last = static_cast<int>(w_.size()) - 1;
    if (w_.size() >= 2 && w_[last] == 'l' && double_consonant(last) &&
        measure(last) > 1) {
      w_.pop_back();
    }
  }

  std::string w_;
};

}  // namespace

std::string porter_stem(const std::string& word) {
  if (word.size() < 3) return word;
  for (unsigned char c : word) {
    if (!std::islower(c)) return word;
  }
  return Stemmer(word).run();
}

}  // namespace csumm
