#include "keyex/tagging.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace keyex {

namespace {

bool is_punct_char(char c) {
  return std::ispunct(static_cast<unsigned char>(c)) != 0;
}

bool is_digit_char(char c) {
  return std::isdigit(static_cast<unsigned char>(c)) != 0;
}

std::string fold_ascii(const std::string& s) {
  std::string out = s;
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c + 32);
  }
  return out;
}

bool all_punct(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!is_punct_char(c)) return false;
  }
  return true;
}

// Numeric token: digits with optional . , % - separators.
bool numeric_like(const std::string& s) {
  bool digit_seen = false;
  for (char c : s) {
    if (is_digit_char(c)) {
      digit_seen = true;
    } else if (c != '.' && c != ',' && c != '%' && c != '-') {
      return false;
    }
  }
  return digit_seen;
}

std::string punct_tag(const std::string& s) {
  switch (s[0]) {
    case '.':
    case '!':
    case '?':
      return ".";
    case ',':
      return ",";
    case ';':
    case ':':
      return ":";
    case '(':
    case '[':
    case '{':
      return "(";
    case ')':
    case ']':
    case '}':
      return ")";
    case '"':
    case '\'':
      return "''";
    case '`':
      return "``";
    case '$':
      return "$";
    case '#':
      return "#";
    case '-':
      return ":";
    default:
      return "SYM";
  }
}

struct BuiltinEntry {
  const char* word;
  const char* tag;
};

constexpr BuiltinEntry kBuiltinWords[] = {
    // determiners and quantifiers
    {"the", "DT"}, {"a", "DT"}, {"an", "DT"}, {"this", "DT"}, {"these", "DT"},
    {"those", "DT"}, {"each", "DT"}, {"every", "DT"}, {"either", "DT"},
    {"neither", "DT"}, {"some", "DT"}, {"any", "DT"}, {"all", "DT"},
    {"no", "DT"}, {"another", "DT"}, {"both", "DT"},
    // conjunctions
    {"and", "CC"}, {"or", "CC"}, {"but", "CC"}, {"nor", "CC"},
    // prepositions and subordinators
    {"of", "IN"}, {"in", "IN"}, {"on", "IN"}, {"at", "IN"}, {"by", "IN"},
    {"for", "IN"}, {"with", "IN"}, {"from", "IN"}, {"into", "IN"},
    {"onto", "IN"}, {"over", "IN"}, {"under", "IN"}, {"between", "IN"},
    {"among", "IN"}, {"through", "IN"}, {"during", "IN"}, {"against", "IN"},
    {"without", "IN"}, {"within", "IN"}, {"across", "IN"}, {"toward", "IN"},
    {"towards", "IN"}, {"upon", "IN"}, {"after", "IN"}, {"before", "IN"},
    {"since", "IN"}, {"until", "IN"}, {"about", "IN"}, {"above", "IN"},
    {"below", "IN"}, {"near", "IN"}, {"per", "IN"}, {"via", "IN"},
    {"despite", "IN"}, {"because", "IN"}, {"if", "IN"}, {"while", "IN"},
    {"although", "IN"}, {"though", "IN"}, {"whether", "IN"}, {"as", "IN"},
    {"than", "IN"}, {"that", "IN"},
    {"to", "TO"},
    // modals
    {"will", "MD"}, {"would", "MD"}, {"can", "MD"}, {"could", "MD"},
    {"may", "MD"}, {"might", "MD"}, {"shall", "MD"}, {"should", "MD"},
    {"must", "MD"},
    // verbs
    {"be", "VB"}, {"is", "VBZ"}, {"are", "VBP"}, {"was", "VBD"},
    {"were", "VBD"}, {"been", "VBN"}, {"being", "VBG"}, {"am", "VBP"},
    {"do", "VBP"}, {"does", "VBZ"}, {"did", "VBD"}, {"done", "VBN"},
    {"have", "VBP"}, {"has", "VBZ"}, {"had", "VBD"}, {"having", "VBG"},
    {"uses", "VBZ"}, {"shows", "VBZ"}, {"describes", "VBZ"},
    {"presents", "VBZ"}, {"contains", "VBZ"}, {"includes", "VBZ"},
    {"provides", "VBZ"}, {"requires", "VBZ"}, {"remains", "VBZ"},
    {"becomes", "VBZ"}, {"appears", "VBZ"}, {"depends", "VBZ"},
    {"yields", "VBZ"}, {"governs", "VBZ"}, {"affects", "VBZ"},
    {"defines", "VBZ"}, {"supports", "VBZ"}, {"explains", "VBZ"},
    {"improves", "VBZ"}, {"reduces", "VBZ"}, {"increases", "VBZ"},
    // pronouns
    {"it", "PRP"}, {"he", "PRP"}, {"she", "PRP"}, {"they", "PRP"},
    {"we", "PRP"}, {"you", "PRP"}, {"i", "PRP"}, {"them", "PRP"},
    {"him", "PRP"}, {"us", "PRP"}, {"me", "PRP"},
    {"its", "PRP$"}, {"their", "PRP$"}, {"his", "PRP$"}, {"her", "PRP$"},
    {"our", "PRP$"}, {"your", "PRP$"}, {"my", "PRP$"},
    // wh-words
    {"which", "WDT"}, {"what", "WP"}, {"who", "WP"}, {"whom", "WP"},
    {"whose", "WP$"}, {"where", "WRB"}, {"when", "WRB"}, {"why", "WRB"},
    {"how", "WRB"},
    // adverbs and existential there
    {"not", "RB"}, {"also", "RB"}, {"very", "RB"}, {"often", "RB"},
    {"usually", "RB"}, {"however", "RB"}, {"moreover", "RB"}, {"then", "RB"},
    {"thus", "RB"}, {"therefore", "RB"}, {"here", "RB"}, {"there", "EX"},
    // adjectives the suffix rules cannot reach
    {"new", "JJ"}, {"good", "JJ"}, {"high", "JJ"}, {"low", "JJ"},
    {"large", "JJ"}, {"small", "JJ"}, {"important", "JJ"}, {"main", "JJ"},
    {"several", "JJ"}, {"many", "JJ"}, {"few", "JJ"}, {"other", "JJ"},
    {"same", "JJ"}, {"such", "JJ"}, {"different", "JJ"}, {"common", "JJ"},
    {"similar", "JJ"}, {"general", "JJ"}, {"simple", "JJ"}, {"complex", "JJ"},
    {"early", "JJ"}, {"late", "JJ"}, {"long", "JJ"}, {"short", "JJ"},
    {"first", "JJ"}, {"second", "JJ"}, {"third", "JJ"}, {"last", "JJ"},
    {"next", "JJ"}, {"previous", "JJ"}, {"major", "JJ"}, {"minor", "JJ"},
    {"single", "JJ"}, {"multiple", "JJ"}, {"various", "JJ"},
    {"certain", "JJ"}, {"possible", "JJ"}, {"likely", "JJ"},
    {"available", "JJ"}, {"necessary", "JJ"}, {"recent", "JJ"},
    {"current", "JJ"}, {"standard", "JJ"}, {"basic", "JJ"},
    {"specific", "JJ"}, {"particular", "JJ"}, {"total", "JJ"},
    {"overall", "JJ"}, {"initial", "JJ"}, {"final", "JJ"}, {"full", "JJ"},
    {"entire", "JJ"}, {"whole", "JJ"}, {"real", "JJ"}, {"true", "JJ"},
    {"significant", "JJ"}, {"relevant", "JJ"}, {"global", "JJ"},
    {"local", "JJ"}, {"internal", "JJ"}, {"external", "JJ"},
    {"modern", "JJ"}, {"due", "JJ"},
    {"more", "JJR"}, {"most", "JJS"}, {"less", "JJR"}, {"least", "JJS"},
    {"better", "JJR"}, {"best", "JJS"}, {"worse", "JJR"}, {"worst", "JJS"},
};

constexpr BuiltinEntry kBuiltinSuffixes[] = {
    {"tion", "NN"},  {"sion", "NN"},  {"ness", "NN"}, {"ment", "NN"},
    {"ity", "NN"},   {"ism", "NN"},   {"ance", "NN"}, {"ence", "NN"},
    {"ship", "NN"},  {"hood", "NN"},  {"ly", "RB"},   {"ing", "VBG"},
    {"ed", "VBD"},   {"ous", "JJ"},   {"ful", "JJ"},  {"ive", "JJ"},
    {"able", "JJ"},  {"ible", "JJ"},  {"ic", "JJ"},   {"al", "JJ"},
    {"est", "JJS"},  {"ies", "NNS"},  {"es", "NNS"},  {"s", "NNS"},
};

}  // namespace

const std::unordered_set<std::string>& tag_inventory() {
  static const std::unordered_set<std::string> kTags = {
      "CC",  "CD",  "DT",   "EX",   "FW",  "IN",  "JJ",  "JJR", "JJS",
      "LS",  "MD",  "NN",   "NNP",  "NNPS", "NNS", "PDT", "POS", "PRP",
      "PRP$", "RB", "RBR",  "RBS",  "RP",  "SYM", "TO",  "UH",  "VB",
      "VBD", "VBG", "VBN",  "VBP",  "VBZ", "WDT", "WP",  "WP$", "WRB",
      ".",   ",",   ":",    "(",    ")",   "''",  "``",  "$",   "#",
  };
  return kTags;
}

bool is_known_tag(const std::string& tag) {
  return tag_inventory().count(tag) > 0;
}

TaggedSentence parse_tagged(const std::string& line, const std::string& doc_id,
                            int sentence_index, UnknownTagPolicy policy) {
  TaggedSentence ts;
  ts.doc_id = doc_id;
  ts.sentence_index = sentence_index;

  std::istringstream in(line);
  std::string token;
  int position = 0;
  while (in >> token) {
    ++position;
    std::size_t slash = token.rfind('/');
    if (slash == std::string::npos || slash == 0 ||
        slash + 1 == token.size()) {
      throw ParseError("token " + std::to_string(position) + " ('" + token +
                       "') is not of the form surface/TAG");
    }
    TaggedToken tt;
    tt.surface = token.substr(0, slash);
    tt.tag = token.substr(slash + 1);
    if (policy == UnknownTagPolicy::reject && !is_known_tag(tt.tag)) {
      throw ParseError("token " + std::to_string(position) + " ('" + token +
                       "') carries unknown tag '" + tt.tag + "'");
    }
    ts.tokens.push_back(std::move(tt));
  }
  return ts;
}

std::string format_tagged(const TaggedSentence& ts) {
  std::string out;
  for (const TaggedToken& t : ts.tokens) {
    if (!out.empty()) out.push_back(' ');
    out += t.surface;
    out.push_back('/');
    out += t.tag;
  }
  return out;
}

std::vector<std::string> tokenize(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string chunk;
  while (in >> chunk) {
    std::size_t begin = 0;
    std::size_t end = chunk.size();
    while (begin < end && is_punct_char(chunk[begin])) ++begin;
    while (end > begin && is_punct_char(chunk[end - 1])) --end;
    if (begin == chunk.size()) {  // punctuation-only chunk
      begin = 0;
      end = 0;
    }
    for (std::size_t i = 0; i < begin; ++i) out.push_back(chunk.substr(i, 1));
    if (end > begin) out.push_back(chunk.substr(begin, end - begin));
    for (std::size_t i = end; i < chunk.size(); ++i) {
      out.push_back(chunk.substr(i, 1));
    }
  }
  return out;
}

const std::string& TagLexicon::lookup(const std::string& surface) const {
  std::string folded = fold_ascii(surface);
  auto it = word_tags.find(folded);
  if (it != word_tags.end()) return it->second;
  // Capitalization beats the suffix rules: an unknown capitalized word is
  // taken as a proper noun, not as whatever its ending suggests.
  char first = surface.empty() ? '\0' : surface[0];
  if (first >= 'A' && first <= 'Z') return unknown_capitalized;
  for (const auto& [suffix, tag] : suffix_rules) {
    if (folded.size() > suffix.size() &&
        folded.compare(folded.size() - suffix.size(), suffix.size(), suffix) ==
            0) {
      return tag;
    }
  }
  return unknown_lower;
}

const TagLexicon& TagLexicon::builtin() {
  static const TagLexicon kLexicon = [] {
    TagLexicon lex;
    for (const BuiltinEntry& e : kBuiltinWords) {
      lex.word_tags.emplace(e.word, e.tag);
    }
    for (const BuiltinEntry& e : kBuiltinSuffixes) {
      lex.suffix_rules.emplace_back(e.word, e.tag);
    }
    return lex;
  }();
  return kLexicon;
}

TagLexicon TagLexicon::parse(const std::string& text,
                             const std::string& origin) {
  TagLexicon lex;
  enum class Section { words, suffixes, defaults } section = Section::words;

  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    std::string body = line.substr(first);
    while (!body.empty() && (body.back() == ' ' || body.back() == '\t')) {
      body.pop_back();
    }
    if (body == "[suffixes]") {
      section = Section::suffixes;
      continue;
    }
    if (body == "[defaults]") {
      section = Section::defaults;
      continue;
    }
    std::size_t tab = body.find('\t');
    if (tab == std::string::npos || tab == 0 || tab + 1 == body.size()) {
      throw ParseError(origin + ":" + std::to_string(line_no) +
                       ": expected 'entry<TAB>tag'");
    }
    std::string key = body.substr(0, tab);
    std::string tag = body.substr(tab + 1);
    if (section != Section::defaults && !is_known_tag(tag)) {
      throw ParseError(origin + ":" + std::to_string(line_no) +
                       ": unknown tag '" + tag + "'");
    }
    switch (section) {
      case Section::words:
        lex.word_tags[fold_ascii(key)] = tag;
        break;
      case Section::suffixes:
        lex.suffix_rules.emplace_back(fold_ascii(key), tag);
        break;
      case Section::defaults:
        if (key == "lower") {
          lex.unknown_lower = tag;
        } else if (key == "capitalized") {
          lex.unknown_capitalized = tag;
        } else {
          throw ParseError(origin + ":" + std::to_string(line_no) +
                           ": unknown default '" + key + "'");
        }
        break;
    }
  }
  return lex;
}

TagLexicon TagLexicon::from_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open lexicon file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), path);
}

TaggedSentence tag_sentence(const Sentence& sentence, const TagLexicon& lexicon,
                            const std::string& doc_id) {
  TaggedSentence ts;
  ts.doc_id = doc_id;
  ts.sentence_index = sentence.index;
  for (const std::string& token : tokenize(sentence.text)) {
    TaggedToken tt;
    tt.surface = token;
    if (all_punct(token)) {
      tt.tag = punct_tag(token);
    } else if (numeric_like(token)) {
      tt.tag = "CD";
    } else {
      tt.tag = lexicon.lookup(token);
    }
    ts.tokens.push_back(std::move(tt));
  }
  return ts;
}

}  // namespace keyex
