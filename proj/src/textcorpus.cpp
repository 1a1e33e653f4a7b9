#include "keyex/textcorpus.hpp"

#include <cctype>

namespace keyex {

namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }
bool is_upper(char c) { return std::isupper(static_cast<unsigned char>(c)) != 0; }
bool is_alnum(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }

char fold(char c) {
  unsigned char u = static_cast<unsigned char>(c);
  return (u >= 'A' && u <= 'Z') ? static_cast<char>(u + 32) : c;
}

bool iequals(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (fold(a[i]) != fold(b[i])) return false;
  }
  return true;
}

// True when the text ending at the '.' in position `dot` ends with one of the
// abbreviations, preceded by a word boundary.
bool at_abbreviation(const std::string& text, std::size_t dot,
                     const std::vector<std::string>& abbreviations) {
  for (const std::string& ab : abbreviations) {
    if (ab.empty() || ab.size() > dot + 1) continue;
    std::size_t begin = dot + 1 - ab.size();
    if (!iequals(std::string_view(text).substr(begin, ab.size()), ab)) continue;
    if (begin == 0 || !is_alnum(text[begin - 1])) return true;
  }
  return false;
}

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && is_space(s[b])) ++b;
  while (e > b && is_space(s[e - 1])) --e;
  return std::string(s.substr(b, e - b));
}

}  // namespace

const std::vector<std::string>& default_abbreviations() {
  static const std::vector<std::string> kAbbreviations = {"e.g.", "et al.",
                                                          "Fig.", "vs."};
  return kAbbreviations;
}

std::vector<Sentence> split_sentences(const std::string& text,
                                      const SplitOptions& options) {
  std::vector<Sentence> out;
  auto flush = [&](std::size_t begin, std::size_t end) {
    std::string piece = trim(std::string_view(text).substr(begin, end - begin));
    if (!piece.empty()) {
      out.push_back({static_cast<int>(out.size()) + 1, std::move(piece)});
    }
  };

  std::size_t start = 0;
  for (std::size_t p = 0; p < text.size(); ++p) {
    char c = text[p];
    if (c != '.' && c != '?' && c != '!') continue;

    std::size_t q = p + 1;
    if (q < text.size() && !is_space(text[q])) continue;
    std::size_t r = q;
    while (r < text.size() && is_space(text[r])) ++r;
    // A break needs either end of text or an uppercase sentence opener.
    if (r < text.size() && !is_upper(text[r])) continue;
    if (c == '.' && at_abbreviation(text, p, options.abbreviations)) continue;

    flush(start, p + 1);
    start = r;
    p = r - 1;  // resume scan at r
  }
  flush(start, text.size());
  return out;
}

Document load_document(const std::string& raw, const std::string& doc_id,
                       const LoadOptions& options) {
  std::string text = raw;
  if (text.rfind("\xEF\xBB\xBF", 0) == 0) text.erase(0, 3);

  if (!utf8_valid(text)) {
    throw ParseError("document '" + doc_id + "': input is not valid UTF-8");
  }
  if (trim(text).empty()) {
    throw ParseError("document '" + doc_id + "': empty document");
  }

  Document doc;
  doc.doc_id = doc_id;

  std::size_t body_start = 0;
  if (options.title_line) {
    std::size_t pos = 0;
    while (pos < text.size()) {
      std::size_t eol = text.find('\n', pos);
      if (eol == std::string::npos) eol = text.size();
      std::string line = trim(std::string_view(text).substr(pos, eol - pos));
      if (!line.empty()) {
        doc.sentences.push_back({1, std::move(line)});
        body_start = eol < text.size() ? eol + 1 : text.size();
        break;
      }
      pos = eol < text.size() ? eol + 1 : text.size();
    }
  }

  std::vector<Sentence> rest =
      split_sentences(text.substr(body_start), options.split);
  for (Sentence& s : rest) {
    s.index = static_cast<int>(doc.sentences.size()) + 1;
    doc.sentences.push_back(std::move(s));
  }
  return doc;
}

std::string stem_word(const std::string& word) {
  auto ends_with = [](const std::string& w, std::string_view suffix) {
    return w.size() >= suffix.size() &&
           std::string_view(w).substr(w.size() - suffix.size()) == suffix;
  };

  std::string w = word;
  // Applied to a fixpoint so that canonical forms are stable under
  // re-canonicalization.
  for (;;) {
    std::string next = w;
    if (ends_with(w, "ies")) {
      next = w.substr(0, w.size() - 3) + "y";
    } else if (ends_with(w, "sses")) {
      next = w.substr(0, w.size() - 2);
    } else if (ends_with(w, "es") && w.size() - 2 >= 3) {
      next = w.substr(0, w.size() - 2);
    } else if (ends_with(w, "s") && !ends_with(w, "ss") && !ends_with(w, "us") &&
               w.size() - 1 >= 3) {
      next = w.substr(0, w.size() - 1);
    }
    if (next == w) return w;
    w = std::move(next);
  }
}

CanonicalPhrase canonicalize(const std::string& surface, bool stem) {
  CanonicalPhrase out;
  out.display = surface;

  std::string folded;
  folded.reserve(surface.size());
  bool pending_space = false;
  for (char c : surface) {
    if (is_space(c)) {
      if (!folded.empty()) pending_space = true;
      continue;
    }
    if (pending_space) {
      folded.push_back(' ');
      pending_space = false;
    }
    folded.push_back(fold(c));
  }
  if (folded.empty()) {
    throw ContractError("invalid phrase: '" + surface + "' has no content");
  }

  if (!stem) {
    out.canonical = std::move(folded);
    return out;
  }

  std::string stemmed;
  std::size_t pos = 0;
  while (pos <= folded.size()) {
    std::size_t sp = folded.find(' ', pos);
    if (sp == std::string::npos) sp = folded.size();
    if (!stemmed.empty()) stemmed.push_back(' ');
    stemmed += stem_word(folded.substr(pos, sp - pos));
    pos = sp + 1;
  }
  out.canonical = std::move(stemmed);
  return out;
}

std::vector<CanonicalPhrase> load_author_keyphrases(const std::string& raw,
                                                    const std::string& doc_id,
                                                    bool stem) {
  (void)doc_id;
  std::vector<CanonicalPhrase> out;
  std::size_t pos = 0;
  while (pos <= raw.size()) {
    std::size_t eol = raw.find('\n', pos);
    if (eol == std::string::npos) eol = raw.size();
    std::string line = trim(std::string_view(raw).substr(pos, eol - pos));
    pos = eol + 1;
    if (line.empty()) continue;
    CanonicalPhrase phrase = canonicalize(line, stem);
    bool seen = false;
    for (const CanonicalPhrase& p : out) {
      if (p.canonical == phrase.canonical) {
        seen = true;
        break;
      }
    }
    if (!seen) out.push_back(std::move(phrase));
  }
  return out;
}

bool utf8_valid(std::string_view bytes) {
  std::size_t i = 0;
  while (i < bytes.size()) {
    unsigned char c = static_cast<unsigned char>(bytes[i]);
    if (c < 0x80) {
      ++i;
      continue;
    }
    int tail;
    unsigned int min_cp;
    if ((c & 0xE0) == 0xC0) {
      tail = 1;
      min_cp = 0x80;
    } else if ((c & 0xF0) == 0xE0) {
      tail = 2;
      min_cp = 0x800;
    } else if ((c & 0xF8) == 0xF0) {
      tail = 3;
      min_cp = 0x10000;
    } else {
      return false;
    }
    if (i + static_cast<std::size_t>(tail) >= bytes.size()) return false;
    unsigned int cp = c & (0x3Fu >> tail);
    for (int k = 1; k <= tail; ++k) {
      unsigned char cc = static_cast<unsigned char>(bytes[i + k]);
      if ((cc & 0xC0) != 0x80) return false;
      cp = (cp << 6) | (cc & 0x3Fu);
    }
    if (cp < min_cp || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
      return false;
    }
    i += static_cast<std::size_t>(tail) + 1;
  }
  return true;
}

}  // namespace keyex
